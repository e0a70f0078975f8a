#include "ltvobs/mathkit.hpp"

#include <algorithm>
#include <cmath>

namespace ltvobs {

Mat::Mat(std::size_t r, std::size_t c, std::initializer_list<double> entries)
    : rows(r), cols(c), a(entries) {
    if (a.size() != r * c) throw DimensionError("matrix initializer size does not match rows*cols");
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

namespace {

void require_same_shape(const Mat& m, const Mat& n) {
    if (m.rows != n.rows || m.cols != n.cols) throw DimensionError("matrix shape mismatch");
}

void require_same_size(const Vec& v, const Vec& w) {
    if (v.size() != w.size()) throw DimensionError("vector size mismatch");
}

}  // namespace

Mat operator+(const Mat& m, const Mat& n) {
    require_same_shape(m, n);
    Mat out = m;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += n.a[i];
    return out;
}

Mat operator-(const Mat& m, const Mat& n) {
    require_same_shape(m, n);
    Mat out = m;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] -= n.a[i];
    return out;
}

Mat operator*(const Mat& m, const Mat& n) {
    if (m.cols != n.rows) throw DimensionError("matrix product shape mismatch");
    Mat out(m.rows, n.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t k = 0; k < m.cols; ++k) {
            const double mik = m(i, k);
            for (std::size_t j = 0; j < n.cols; ++j) out(i, j) += mik * n(k, j);
        }
    return out;
}

Mat operator*(double s, const Mat& m) {
    Mat out = m;
    for (double& e : out.a) e *= s;
    return out;
}

Vec operator*(const Mat& m, const Vec& v) {
    if (m.cols != v.size()) throw DimensionError("matrix-vector shape mismatch");
    Vec out(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

Vec operator+(const Vec& v, const Vec& w) {
    require_same_size(v, w);
    Vec out = v;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w[i];
    return out;
}

Vec operator-(const Vec& v, const Vec& w) {
    require_same_size(v, w);
    Vec out = v;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= w[i];
    return out;
}

Vec operator*(double s, const Vec& v) {
    Vec out = v;
    for (double& e : out) e *= s;
    return out;
}

double dot(const Vec& v, const Vec& w) {
    require_same_size(v, w);
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i];
    return s;
}

double norm_inf(const Vec& v) {
    double s = 0.0;
    for (double e : v) s = std::max(s, std::abs(e));
    return s;
}

double norm_inf(const Mat& m) {
    double s = 0.0;
    for (double e : m.a) s = std::max(s, std::abs(e));
    return s;
}

bool all_finite(const Vec& v) {
    for (double e : v)
        if (!std::isfinite(e)) return false;
    return true;
}

bool all_finite(const Mat& m) {
    for (double e : m.a)
        if (!std::isfinite(e)) return false;
    return true;
}

namespace {

Mat minor_of(const Mat& m, std::size_t row, std::size_t col) {
    Mat out(m.rows - 1, m.cols - 1);
    std::size_t r = 0;
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (i == row) continue;
        std::size_t c = 0;
        for (std::size_t j = 0; j < m.cols; ++j) {
            if (j == col) continue;
            out(r, c) = m(i, j);
            ++c;
        }
        ++r;
    }
    return out;
}

}  // namespace

double det(const Mat& m) {
    if (!m.square()) throw DimensionError("determinant requires a square matrix");
    switch (m.rows) {
        case 0:
            return 1.0;
        case 1:
            return m(0, 0);
        case 2:
            return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        case 3:
            return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        default: {
            // cofactor expansion along the first row
            double s = 0.0;
            double sign = 1.0;
            for (std::size_t j = 0; j < m.cols; ++j) {
                s += sign * m(0, j) * det(minor_of(m, 0, j));
                sign = -sign;
            }
            return s;
        }
    }
}

Mat adjugate(const Mat& m) {
    if (!m.square()) throw DimensionError("adjugate requires a square matrix");
    const std::size_t n = m.rows;
    if (n == 0) return m;
    if (n == 1) {
        Mat out(1, 1);
        out(0, 0) = 1.0;
        return out;
    }
    if (n == 2) {
        Mat out(2, 2);
        out(0, 0) = m(1, 1);
        out(0, 1) = -m(0, 1);
        out(1, 0) = -m(1, 0);
        out(1, 1) = m(0, 0);
        return out;
    }
    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
            out(j, i) = sign * det(minor_of(m, i, j));  // transposed cofactor
        }
    return out;
}

int stable_substeps(double rate_times_h) {
    const double z = std::abs(rate_times_h);
    if (!(z > 0.5)) return 1;  // nan falls through to 1 as well
    return static_cast<int>(std::min(std::ceil(z / 0.5), 1.0e6));
}

}  // namespace ltvobs
