#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fcir/fgn.hpp"
#include "fcir/grid.hpp"

namespace fcir {

/*!
 * Parameters of dY = (k/Y - aY)/2 dt + sigma/2 dB^H, Y_0 = y0 > 0, and of the
 * fractional CIR process X = Y^2 up to the first zero of Y.
 */
struct SimConfig {
    double a;
    double k;
    double sigma;
    HurstParameter hurst;
    double y0;
    TimeGrid grid;

    /// Same parameters with the initial condition given as x0 = y0^2.
    static SimConfig from_x0(double a, double k, double sigma, HurstParameter hurst, double x0, TimeGrid grid);

    double x0() const noexcept { return y0 * y0; }

    /// Throws ParameterError unless sigma > 0, y0 > 0 and all fields are finite.
    void validate() const;
};

struct TrajectoryResult {
    std::vector<double> y;
    std::vector<double> x;
    std::optional<std::size_t> tau_index;
    std::optional<double> tau;
    // Steps where |(k/y - a y) dt / 2| exceeded the previous value y.
    std::size_t overshoot_steps = 0;

    bool absorbed() const noexcept { return tau_index.has_value(); }
};

/*!
 * Euler scheme for Y with absorption at zero:
 *
 *   Y_n = Y_{n-1} + (k / Y_{n-1} - a Y_{n-1}) dt / 2 + sigma/2 (B_n - B_{n-1})   if Y_{n-1} > 0
 *   Y_n = 0                                                                     otherwise
 *
 * The first index whose value comes out <= 0 is the absorption index; that
 * value and all later ones are stored as 0. `x` is filled with y^2.
 */
TrajectoryResult simulate_y(const SimConfig& config, const FbmPath& noise);

/// Same trajectory as simulate_y; provided for call sites that consume X.
TrajectoryResult simulate_x(const SimConfig& config, const FbmPath& noise);

std::optional<double> first_zero_hitting(const TrajectoryResult& result);

/// Grid time of the first value <= 0 in a raw sequence of Y values.
std::optional<double> first_zero_hitting(std::span<const double> y, const TimeGrid& grid);

/// Index of absorption if a path was absorbed, or grid size otherwise;
/// convenient for ordering comparisons with "never" as +infinity.
std::size_t absorption_index_or_end(const TrajectoryResult& result);

/// Zero path on the given grid.
FbmPath zero_noise(const TimeGrid& grid, HurstParameter hurst);

}  // namespace fcir
