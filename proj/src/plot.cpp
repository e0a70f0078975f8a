#include "ltvobs/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "ltvobs/errors.hpp"

namespace ltvobs {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_svg_chart(const std::string& path, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, const std::vector<PlotSeries>& series) {
    const double W = 860, H = 520;
    const double ml = 70, mr = 20, mt = 40, mb = 50;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (!(xmin < xmax)) { xmin -= 1.0; xmax += 1.0; }
    if (!(ymin < ymax)) { ymin -= 1.0; ymax += 1.0; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16' font-family='sans-serif'>"
        << title << "</text>\n";

    // frame and ticks
    out << "<rect x='" << ml << "' y='" << mt << "' width='" << W - ml - mr << "' height='"
        << H - mt - mb << "' fill='none' stroke='#444'/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double xv = xmin + (xmax - xmin) * i / nticks;
        const double yv = ymin + (ymax - ymin) * i / nticks;
        out << "<line x1='" << px(xv) << "' y1='" << H - mb << "' x2='" << px(xv) << "' y2='"
            << H - mb + 5 << "' stroke='#444'/>\n";
        out << "<text x='" << px(xv) << "' y='" << H - mb + 20
            << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << fmt(xv)
            << "</text>\n";
        out << "<line x1='" << ml - 5 << "' y1='" << py(yv) << "' x2='" << ml << "' y2='" << py(yv)
            << "' stroke='#444'/>\n";
        out << "<text x='" << ml - 8 << "' y='" << py(yv) + 4
            << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << fmt(yv)
            << "</text>\n";
    }
    if (ymin < 0.0 && ymax > 0.0)
        out << "<line x1='" << ml << "' y1='" << py(0.0) << "' x2='" << W - mr << "' y2='" << py(0.0)
            << "' stroke='#bbb' stroke-dasharray='4 4'/>\n";
    out << "<text x='" << W / 2 << "' y='" << H - 12
        << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << xlabel << "</text>\n";
    out << "<text x='16' y='" << H / 2
        << "' text-anchor='middle' font-size='13' font-family='sans-serif' transform='rotate(-90 16 "
        << H / 2 << ")'>" << ylabel << "</text>\n";

    // polylines, decimated to keep files small
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const std::size_t stride = std::max<std::size_t>(1, s.x.size() / 4000);
        out << "<polyline fill='none' stroke='" << kPalette[si % 6] << "' stroke-width='1.3' points='";
        for (std::size_t i = 0; i < s.x.size(); i += stride)
            out << fmt(px(s.x[i])) << ',' << fmt(py(s.y[i])) << ' ';
        if (!s.x.empty()) out << fmt(px(s.x.back())) << ',' << fmt(py(s.y.back()));
        out << "'/>\n";
    }

    // legend
    for (std::size_t si = 0; si < series.size(); ++si) {
        const double lx = W - mr - 170, ly = mt + 16 + 18 * static_cast<double>(si);
        out << "<line x1='" << lx << "' y1='" << ly << "' x2='" << lx + 24 << "' y2='" << ly
            << "' stroke='" << kPalette[si % 6] << "' stroke-width='2'/>\n";
        out << "<text x='" << lx + 30 << "' y='" << ly + 4
            << "' font-size='12' font-family='sans-serif'>" << series[si].name << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace ltvobs
