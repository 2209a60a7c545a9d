#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "fcir/fgn.hpp"
#include "fcir/grid.hpp"
#include "fcir/sde.hpp"

namespace fcir {

struct StieltjesSum {
    double value;
    std::size_t n_intervals;
    double mesh;
};

/// sum_{i=1..n} (f_i + f_{i-1})/2 * (g_i - g_{i-1}) over the grid.
StieltjesSum stratonovich_sum(std::span<const double> integrand, std::span<const double> integrator,
                              const TimeGrid& grid);

/// Last grid index at which the simulated path is still alive
/// (one before absorption, or n_steps).
std::size_t residual_window_end(const TrajectoryResult& result, const TimeGrid& grid);

/*!
 * |X_m - X_0 - int_0^{t_m} (k - a X_s) ds - sigma * S(sqrt X, B^H)| on the
 * simulation grid, with the drift integral by the trapezoid rule and S the
 * midpoint Stieltjes sum. t_m is T, or the last grid time before absorption.
 */
double sde_residual(const SimConfig& config, const FbmPath& noise);
double sde_residual(const SimConfig& config, const FbmPath& noise, const TrajectoryResult& result);

/*!
 * Exact finite-partition expansion of X_m - X_0 for the Euler path.
 *
 * With d_i the scheme's drift increment (k/Y_{i-1} - a Y_{i-1}) dt and
 * D_i = d_1 + ... + d_i, one has Y_i = Y_0 + D_i/2 + sigma B_i / 2, so
 * X_i - X_{i-1} factors as a difference of squares. Expanding gives
 *
 *   [0] sum Y_0 d_i
 *   [1] 1/4 sum (D_i + D_{i-1}) d_i
 *   [2] sigma/4 sum (B_i + B_{i-1}) d_i
 *   [3] sigma Y_0 sum (B_i - B_{i-1})
 *   [4] sigma^2/4 sum (B_i - B_{i-1})(B_i + B_{i-1})
 *   [5] sigma/4 sum (D_i + D_{i-1})(B_i - B_{i-1})
 *
 * Terms 0-2 approximate the drift integral and 3-5 the Stratonovich integral.
 */
struct DecompositionTerms {
    std::array<double, 6> terms{};
    double x_start = 0.0;
    double x_end = 0.0;
    std::size_t window_end = 0;

    double reconstructed() const noexcept;
    double error() const noexcept;
};

DecompositionTerms theorem1_decomposition(const SimConfig& config, const FbmPath& noise);

/// Absolute error of the decomposition above; roundoff-sized for every path.
double theorem1_decomposition_check(const SimConfig& config, const FbmPath& noise);

}  // namespace fcir
