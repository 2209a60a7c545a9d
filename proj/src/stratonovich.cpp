#include "fcir/stratonovich.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace fcir {

namespace {

void check_compatible(const SimConfig& config, const FbmPath& noise) {
    if (!(noise.grid == config.grid) || noise.values.size() != config.grid.size()) {
        throw ParameterError("noise path grid does not match config grid");
    }
}

}  // namespace

StieltjesSum stratonovich_sum(std::span<const double> integrand, std::span<const double> integrator,
                              const TimeGrid& grid) {
    if (integrand.size() != grid.size() || integrator.size() != grid.size()) {
        throw ParameterError("Stieltjes sum needs arrays of length " + std::to_string(grid.size()) +
                             ", got integrand " + std::to_string(integrand.size()) + " and integrator " +
                             std::to_string(integrator.size()));
    }
    double value = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        value += 0.5 * (integrand[i] + integrand[i - 1]) * (integrator[i] - integrator[i - 1]);
    }
    return StieltjesSum{value, grid.n_steps(), grid.dt()};
}

std::size_t residual_window_end(const TrajectoryResult& result, const TimeGrid& grid) {
    if (result.tau_index) return *result.tau_index - 1;
    return grid.n_steps();
}

double sde_residual(const SimConfig& config, const FbmPath& noise) {
    return sde_residual(config, noise, simulate_x(config, noise));
}

double sde_residual(const SimConfig& config, const FbmPath& noise, const TrajectoryResult& result) {
    check_compatible(config, noise);
    const std::size_t m = residual_window_end(result, config.grid);
    if (m == 0) return 0.0;

    const double dt = config.grid.dt();
    const auto& x = result.x;
    const auto& b = noise.values;

    double drift_integral = 0.0;
    double strat = 0.0;
    double root_prev = std::sqrt(x[0]);
    for (std::size_t i = 1; i <= m; ++i) {
        drift_integral += 0.5 * dt * ((config.k - config.a * x[i]) + (config.k - config.a * x[i - 1]));
        const double root = std::sqrt(x[i]);
        strat += 0.5 * (root + root_prev) * (b[i] - b[i - 1]);
        root_prev = root;
    }
    return std::abs(x[m] - x[0] - drift_integral - config.sigma * strat);
}

double DecompositionTerms::reconstructed() const noexcept {
    return x_start + std::accumulate(terms.begin(), terms.end(), 0.0);
}

double DecompositionTerms::error() const noexcept {
    return std::abs(reconstructed() - x_end);
}

DecompositionTerms theorem1_decomposition(const SimConfig& config, const FbmPath& noise) {
    check_compatible(config, noise);
    const TrajectoryResult result = simulate_y(config, noise);
    const std::size_t m = residual_window_end(result, config.grid);

    const double dt = config.grid.dt();
    const double sigma = config.sigma;
    const double y0 = config.y0;
    const auto& y = result.y;
    const auto& b = noise.values;

    DecompositionTerms out;
    out.x_start = result.x[0];
    out.x_end = result.x[m];
    out.window_end = m;

    auto& t = out.terms;
    double acc_prev = 0.0;  // D_{i-1}
    for (std::size_t i = 1; i <= m; ++i) {
        const double d = (config.k / y[i - 1] - config.a * y[i - 1]) * dt;
        const double acc = acc_prev + d;
        const double db = b[i] - b[i - 1];
        const double bsum = b[i] + b[i - 1];
        const double dsum = acc + acc_prev;
        t[0] += y0 * d;
        t[1] += 0.25 * dsum * d;
        t[2] += 0.25 * sigma * bsum * d;
        t[3] += sigma * y0 * db;
        t[4] += 0.25 * sigma * sigma * db * bsum;
        t[5] += 0.25 * sigma * dsum * db;
        acc_prev = acc;
    }
    return out;
}

double theorem1_decomposition_check(const SimConfig& config, const FbmPath& noise) {
    return theorem1_decomposition(config, noise).error();
}

}  // namespace fcir
