#pragma once

#include <deque>

#include "ltvobs/mathkit.hpp"

namespace ltvobs {

/// Uniform-grid history of a vector signal. Lookups between grid points use
/// linear interpolation; queries exactly on a grid point return the stored
/// sample unchanged. Samples older than the retention span fall off the
/// front.
class DelayLine {
public:
    DelayLine() = default;  // unusable until assigned from a real line
    DelayLine(double step, double retention_span);

    void push(double t, Vec v);
    Vec sample(double t) const;

    bool empty() const { return samples_.empty(); }
    std::size_t size() const { return samples_.size(); }
    double earliest() const;
    double latest() const;
    bool covers(double t) const;
    double step() const { return step_; }

private:
    double step_ = 0.0;
    double span_ = 0.0;
    double origin_ = 0.0;
    std::size_t base_ = 0;  // grid index of samples_.front() relative to origin
    std::deque<Vec> samples_;
};

}  // namespace ltvobs
