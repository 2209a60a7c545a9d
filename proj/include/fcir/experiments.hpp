#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fcir/fgn.hpp"
#include "fcir/sde.hpp"

namespace fcir {

struct RunOptions {
    FbmBackend backend = FbmBackend::fft;
    unsigned workers = 0;  // 0 = hardware concurrency
};

/// Monte Carlo estimate of P(tau <= T) with a Wilson 95% interval.
struct HitProbSummary {
    SimConfig config;
    std::size_t n_paths = 0;
    std::size_t n_hits = 0;
    double fraction = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;
    std::size_t overshoot_steps = 0;

    double survival() const noexcept { return 1.0 - fraction; }
};

HitProbSummary make_summary(const SimConfig& config, std::size_t n_paths, std::size_t n_hits,
                            std::uint64_t seed, std::size_t overshoot_steps = 0);

/// Path i uses noise generated from stream_seed(seed, i).
HitProbSummary estimate_hitting_probability(const SimConfig& config, std::size_t n_paths, std::uint64_t seed,
                                            const RunOptions& options = {});

/// Same estimate, restricted to k > 0 and H > 1/2 where paths are expected
/// never to reach zero.
HitProbSummary positivity_check(const SimConfig& config, std::size_t n_paths, std::uint64_t seed,
                                const RunOptions& options = {});

struct ComparisonReport {
    double k1 = 0.0;
    double k2 = 0.0;
    std::size_t n_paths = 0;
    // Grid points where Y^{(k1)} > Y^{(k2)} while both paths are alive.
    std::size_t n_order_violations = 0;
    // Paths where the smaller-k process outlives the larger-k one.
    std::size_t n_tau_violations = 0;
    // Largest Y^{(k1)} - Y^{(k2)} over order violations (0 when none).
    double max_violation = 0.0;
};

/// Runs both drifts on identical noise per path index and counts ordering
/// violations. Requires k1 < k2.
ComparisonReport comparison_experiment(const SimConfig& base, double k1, double k2, std::size_t n_paths,
                                       std::uint64_t seed, const RunOptions& options = {});

struct KSweepResult {
    std::vector<HitProbSummary> summaries;  // one per k, in input order
    // Paths that hit zero for some k but survive for a smaller k.
    std::size_t n_pathwise_violations = 0;
};

/// Hit probabilities for each k on shared noise. ks must be positive and
/// strictly increasing.
KSweepResult k_sweep(const SimConfig& base, const std::vector<double>& ks, std::size_t n_paths,
                     std::uint64_t seed, const RunOptions& options = {});

/// Hit probabilities over a Hurst x sigma grid, row-major in (hurst, sigma).
std::vector<HitProbSummary> hurst_sigma_grid(const SimConfig& base, const std::vector<double>& hursts,
                                             const std::vector<double>& sigmas, std::size_t n_paths,
                                             std::uint64_t seed, const RunOptions& options = {});

struct ResidualRow {
    double dt = 0.0;
    double median_residual = 0.0;
    double q90_residual = 0.0;
    std::size_t n_paths = 0;
};

/*!
 * SDE residual statistics at several step sizes. Each path's noise is drawn
 * once on the finest grid and restricted to the coarser ones, so every row
 * sees the same fBm trajectories. Each dt must divide T and be an integer
 * multiple of the smallest dt. Rows follow the order of `dts`.
 */
std::vector<ResidualRow> residual_study(const SimConfig& base, const std::vector<double>& dts,
                                        std::size_t n_paths, std::uint64_t seed, const RunOptions& options = {});

/// Copy of `base` with a different drift numerator.
SimConfig with_k(const SimConfig& base, double k);

}  // namespace fcir
