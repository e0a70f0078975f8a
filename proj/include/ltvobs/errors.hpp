#pragma once

#include <stdexcept>
#include <string>

namespace ltvobs {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridAlignmentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Delayed measurement requested before one exists; callers hold/freeze.
struct NotAvailableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RealizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A simulated quantity went non-finite; carries the simulation time.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& quantity, double t)
        : std::runtime_error(quantity + " diverged at t=" + std::to_string(t)),
          quantity_(quantity),
          t_(t) {}

    const std::string& quantity() const { return quantity_; }
    double time() const { return t_; }

private:
    std::string quantity_;
    double t_;
};

}  // namespace ltvobs
