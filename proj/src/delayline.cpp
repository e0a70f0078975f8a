#include "ltvobs/delayline.hpp"

#include <cmath>
#include <string>

namespace ltvobs {

namespace {
constexpr double kGridTol = 1e-9;
}

DelayLine::DelayLine(double step, double retention_span) : step_(step), span_(retention_span) {
    if (!(step > 0.0)) throw DimensionError("delay line step must be positive");
    if (!(retention_span >= 0.0)) throw DimensionError("delay line span must be non-negative");
}

void DelayLine::push(double t, Vec v) {
    if (samples_.empty()) {
        origin_ = t;
        base_ = 0;
        samples_.push_back(std::move(v));
        return;
    }
    const double expected = origin_ + static_cast<double>(base_ + samples_.size()) * step_;
    if (std::abs(t - expected) > kGridTol)
        throw GridAlignmentError("push at t=" + std::to_string(t) + " is off the grid (expected t=" +
                                 std::to_string(expected) + ")");
    samples_.push_back(std::move(v));
    // keep one extra step beyond the span so the oldest needed point survives
    while (static_cast<double>(samples_.size() - 1) * step_ > span_ + 0.5 * step_) {
        samples_.pop_front();
        ++base_;
    }
}

double DelayLine::earliest() const {
    if (samples_.empty()) throw OutOfRangeError("delay line is empty");
    return origin_ + static_cast<double>(base_) * step_;
}

double DelayLine::latest() const {
    if (samples_.empty()) throw OutOfRangeError("delay line is empty");
    return origin_ + static_cast<double>(base_ + samples_.size() - 1) * step_;
}

bool DelayLine::covers(double t) const {
    if (samples_.empty()) return false;
    return t >= earliest() - kGridTol && t <= latest() + kGridTol;
}

Vec DelayLine::sample(double t) const {
    if (samples_.empty()) throw OutOfRangeError("delay line is empty");
    const double t0 = earliest();
    const double t1 = latest();
    if (t < t0 - kGridTol || t > t1 + kGridTol)
        throw OutOfRangeError("sample at t=" + std::to_string(t) + " is outside the stored span [" +
                              std::to_string(t0) + ", " + std::to_string(t1) + "]");

    const double pos = (t - t0) / step_;
    const auto nearest = static_cast<std::size_t>(std::llround(pos));
    if (nearest < samples_.size() && std::abs(t - (t0 + static_cast<double>(nearest) * step_)) <= kGridTol)
        return samples_[nearest];

    auto lo = static_cast<std::size_t>(std::floor(pos));
    if (lo + 1 >= samples_.size()) lo = samples_.size() - 2;
    const double tl = t0 + static_cast<double>(lo) * step_;
    const double w = (t - tl) / step_;
    const Vec& a = samples_[lo];
    const Vec& b = samples_[lo + 1];
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + w * (b[i] - a[i]);
    return out;
}

}  // namespace ltvobs
