#include "ltvobs/trace.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ltvobs/errors.hpp"

namespace ltvobs {

std::vector<std::string> csv_header(std::size_t n) {
    std::vector<std::string> h;
    h.push_back("t");
    for (std::size_t i = 1; i <= n; ++i) h.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) h.push_back("y" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) h.push_back("xhat" + std::to_string(i));
    for (const char* name : {"theta", "theta_hat", "theta_err", "omega_hat", "k_hat", "a1_hat",
                             "a2_hat", "Delta", "P", "w", "w_c", "v_floor_active", "tc_reached"})
        h.push_back(name);
    return h;
}

namespace {

void append_number(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    line += buf;
}

}  // namespace

void write_csv(const std::vector<TraceRecord>& records, std::ostream& os) {
    const std::size_t n = records.empty() ? 2 : records.front().x.size();
    const auto header = csv_header(n);
    std::string line;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) line += ',';
        line += header[i];
    }
    line += '\n';
    os << line;

    for (const TraceRecord& r : records) {
        line.clear();
        append_number(line, r.t);
        auto push_vec = [&](const Vec& v) {
            for (std::size_t i = 0; i < n; ++i) {
                line += ',';
                append_number(line, i < v.size() ? v[i] : 0.0);
            }
        };
        push_vec(r.x);
        push_vec(r.y);
        push_vec(r.x_hat);
        for (double v : {r.theta, r.theta_hat, r.theta_err, r.omega_hat, r.k_hat, r.a1_hat,
                         r.a2_hat, r.Delta, r.P, r.w, r.w_c}) {
            line += ',';
            append_number(line, v);
        }
        line += r.v_floor_active ? ",1" : ",0";
        line += r.tc_reached ? ",1" : ",0";
        line += '\n';
        os << line;
    }
}

void write_csv(const std::vector<TraceRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    write_csv(records, out);
    if (!out) throw IoError("write failed: " + path);
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return columns[i];
    throw OutOfRangeError("no such column: " + name);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty csv: " + path);
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) table.names.push_back(cell);
    }
    table.columns.assign(table.names.size(), {});
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string cell;
        std::size_t i = 0;
        while (std::getline(ls, cell, ',')) {
            if (i >= table.columns.size()) throw IoError("ragged csv row in " + path);
            table.columns[i].push_back(std::stod(cell));
            ++i;
        }
        if (i != table.columns.size()) throw IoError("short csv row in " + path);
    }
    return table;
}

}  // namespace ltvobs
