#pragma once

#include <cstddef>
#include <string>

#include "fcir/errors.hpp"

namespace fcir {

/// Hurst index of a fractional Brownian motion, restricted to (0, 1).
class HurstParameter {
public:
    explicit HurstParameter(double value) : value_(value) {
        if (!(value > 0.0 && value < 1.0)) {
            throw ParameterError("Hurst parameter must lie in the open interval (0,1), got " +
                                 std::to_string(value));
        }
    }

    double value() const noexcept { return value_; }

    friend bool operator==(const HurstParameter&, const HurstParameter&) = default;

private:
    double value_;
};

/// Uniform time grid t_i = i * dt on [0, t_end], i = 0..n_steps.
class TimeGrid {
public:
    TimeGrid(double t_end, std::size_t n_steps) : t_end_(t_end), n_steps_(n_steps) {
        if (!(t_end > 0.0)) {
            throw ParameterError("time grid end must be positive, got " + std::to_string(t_end));
        }
        if (n_steps == 0) {
            throw ParameterError("time grid needs at least one step");
        }
        dt_ = t_end / static_cast<double>(n_steps);
    }

    /// Grid over [0, t_end] with step closest to `dt`; throws unless t_end/dt is
    /// an integer to within 1e-9 relative.
    static TimeGrid from_step(double t_end, double dt);

    double t_end() const noexcept { return t_end_; }
    std::size_t n_steps() const noexcept { return n_steps_; }
    std::size_t size() const noexcept { return n_steps_ + 1; }
    double dt() const noexcept { return dt_; }
    double time(std::size_t i) const noexcept { return static_cast<double>(i) * dt_; }

    friend bool operator==(const TimeGrid& lhs, const TimeGrid& rhs) noexcept {
        return lhs.n_steps_ == rhs.n_steps_ && lhs.t_end_ == rhs.t_end_;
    }

private:
    double t_end_;
    std::size_t n_steps_;
    double dt_;
};

}  // namespace fcir
