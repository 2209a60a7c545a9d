#include "fcir/sde.hpp"

#include <cmath>
#include <string>

namespace fcir {

SimConfig SimConfig::from_x0(double a, double k, double sigma, HurstParameter hurst, double x0, TimeGrid grid) {
    if (!(x0 > 0.0)) {
        throw ParameterError("x0 must be positive, got " + std::to_string(x0));
    }
    return SimConfig{a, k, sigma, hurst, std::sqrt(x0), grid};
}

void SimConfig::validate() const {
    if (!std::isfinite(a)) throw ParameterError("a must be finite");
    if (!std::isfinite(k)) throw ParameterError("k must be finite");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("sigma must be positive, got " + std::to_string(sigma));
    }
    if (!(y0 > 0.0) || !std::isfinite(y0)) {
        throw ParameterError("initial value must be positive, got y0=" + std::to_string(y0));
    }
}

TrajectoryResult simulate_y(const SimConfig& config, const FbmPath& noise) {
    config.validate();
    if (!(noise.grid == config.grid) || noise.values.size() != config.grid.size()) {
        throw ParameterError("noise path grid (" + std::to_string(noise.grid.n_steps()) + " steps on [0," +
                             std::to_string(noise.grid.t_end()) + "]) does not match config grid (" +
                             std::to_string(config.grid.n_steps()) + " steps on [0," +
                             std::to_string(config.grid.t_end()) + "])");
    }

    const std::size_t size = config.grid.size();
    const double dt = config.grid.dt();
    const double half_sigma = 0.5 * config.sigma;
    const auto& b = noise.values;

    TrajectoryResult out;
    out.y.assign(size, 0.0);
    out.x.assign(size, 0.0);
    out.y[0] = config.y0;

    for (std::size_t n = 1; n < size; ++n) {
        const double prev = out.y[n - 1];
        const double drift = 0.5 * (config.k / prev - config.a * prev) * dt;
        if (std::abs(drift) > prev) ++out.overshoot_steps;
        const double next = prev + drift + half_sigma * (b[n] - b[n - 1]);
        if (next <= 0.0) {
            out.tau_index = n;
            out.tau = config.grid.time(n);
            break;
        }
        out.y[n] = next;
    }

    const std::size_t alive = out.tau_index.value_or(size);
    for (std::size_t i = 0; i < alive; ++i) out.x[i] = out.y[i] * out.y[i];
    return out;
}

TrajectoryResult simulate_x(const SimConfig& config, const FbmPath& noise) {
    return simulate_y(config, noise);
}

std::optional<double> first_zero_hitting(const TrajectoryResult& result) {
    return result.tau;
}

std::optional<double> first_zero_hitting(std::span<const double> y, const TimeGrid& grid) {
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] <= 0.0) return grid.time(i);
    }
    return std::nullopt;
}

std::size_t absorption_index_or_end(const TrajectoryResult& result) {
    return result.tau_index.value_or(result.y.size());
}

FbmPath zero_noise(const TimeGrid& grid, HurstParameter hurst) {
    return FbmPath{grid, hurst, std::vector<double>(grid.size(), 0.0)};
}

}  // namespace fcir
