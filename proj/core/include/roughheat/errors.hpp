#pragma once

#include <stdexcept>
#include <string>

namespace roughheat {

// Raised when a numerical routine cannot reach its requested tolerance.
// Carries the best estimate computed so far and its error estimate.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double best_estimate, double err_estimate)
        : std::runtime_error(what), best_(best_estimate), err_(err_estimate) {}

    double best_estimate() const { return best_; }
    double err_estimate() const { return err_; }

private:
    double best_;
    double err_;
};

// Raised for invalid run configurations (bad parameters, unsupported modes,
// stability violations). Maps to CLI exit code 2.
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace roughheat
