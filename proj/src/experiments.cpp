#include "fcir/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fcir/parallel.hpp"
#include "fcir/seeding.hpp"
#include "fcir/stats.hpp"
#include "fcir/stratonovich.hpp"

namespace fcir {

namespace {

void require_paths(std::size_t n_paths) {
    if (n_paths == 0) throw ParameterError("number of paths must be at least 1");
}

}  // namespace

SimConfig with_k(const SimConfig& base, double k) {
    SimConfig c = base;
    c.k = k;
    return c;
}

HitProbSummary make_summary(const SimConfig& config, std::size_t n_paths, std::size_t n_hits,
                            std::uint64_t seed, std::size_t overshoot_steps) {
    const auto ci = stats::wilson_interval(n_hits, n_paths);
    HitProbSummary s{config};
    s.n_paths = n_paths;
    s.n_hits = n_hits;
    s.fraction = static_cast<double>(n_hits) / static_cast<double>(n_paths);
    s.ci_low = ci.low;
    s.ci_high = ci.high;
    s.seed = seed;
    s.overshoot_steps = overshoot_steps;
    return s;
}

HitProbSummary estimate_hitting_probability(const SimConfig& config, std::size_t n_paths, std::uint64_t seed,
                                            const RunOptions& options) {
    config.validate();
    require_paths(n_paths);
    const auto generator = make_fbm_generator(options.backend, config.grid, config.hurst);

    std::vector<std::uint8_t> hit(n_paths, 0);
    std::vector<std::size_t> overshoots(n_paths, 0);
    parallel_for(n_paths, options.workers, [&](std::size_t i) {
        const FbmPath noise = generator->sample(stream_seed(seed, i));
        const TrajectoryResult r = simulate_y(config, noise);
        hit[i] = r.absorbed() ? 1 : 0;
        overshoots[i] = r.overshoot_steps;
    });

    const auto n_hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), std::uint8_t{1}));
    const auto n_over = std::accumulate(overshoots.begin(), overshoots.end(), std::size_t{0});
    return make_summary(config, n_paths, n_hits, seed, n_over);
}

HitProbSummary positivity_check(const SimConfig& config, std::size_t n_paths, std::uint64_t seed,
                                const RunOptions& options) {
    if (!(config.k > 0.0) || !(config.hurst.value() > 0.5)) {
        throw ParameterError("positivity check requires k > 0 and H > 1/2 (got k=" + std::to_string(config.k) +
                             ", H=" + std::to_string(config.hurst.value()) +
                             "); use estimate_hitting_probability for other regimes");
    }
    return estimate_hitting_probability(config, n_paths, seed, options);
}

ComparisonReport comparison_experiment(const SimConfig& base, double k1, double k2, std::size_t n_paths,
                                       std::uint64_t seed, const RunOptions& options) {
    if (!(k1 < k2)) {
        throw ParameterError("comparison requires k1 < k2 (got k1=" + std::to_string(k1) +
                             ", k2=" + std::to_string(k2) + ")");
    }
    base.validate();
    require_paths(n_paths);
    const SimConfig low = with_k(base, k1);
    const SimConfig high = with_k(base, k2);
    const auto generator = make_fbm_generator(options.backend, base.grid, base.hurst);

    struct PathOutcome {
        std::size_t order_violations = 0;
        bool tau_violation = false;
        double max_violation = 0.0;
    };
    std::vector<PathOutcome> outcomes(n_paths);

    parallel_for(n_paths, options.workers, [&](std::size_t i) {
        const FbmPath noise = generator->sample(stream_seed(seed, i));
        const TrajectoryResult r1 = simulate_y(low, noise);
        const TrajectoryResult r2 = simulate_y(high, noise);
        const std::size_t end1 = absorption_index_or_end(r1);
        const std::size_t end2 = absorption_index_or_end(r2);

        PathOutcome& o = outcomes[i];
        const std::size_t both_alive = std::min(end1, end2);
        for (std::size_t j = 0; j < both_alive; ++j) {
            const double gap = r1.y[j] - r2.y[j];
            if (gap > 0.0) {
                ++o.order_violations;
                o.max_violation = std::max(o.max_violation, gap);
            }
        }
        o.tau_violation = end1 > end2;
    });

    ComparisonReport report;
    report.k1 = k1;
    report.k2 = k2;
    report.n_paths = n_paths;
    for (const auto& o : outcomes) {
        report.n_order_violations += o.order_violations;
        report.n_tau_violations += o.tau_violation ? 1 : 0;
        report.max_violation = std::max(report.max_violation, o.max_violation);
    }
    return report;
}

KSweepResult k_sweep(const SimConfig& base, const std::vector<double>& ks, std::size_t n_paths,
                     std::uint64_t seed, const RunOptions& options) {
    if (ks.empty()) throw ParameterError("k sweep needs at least one k");
    for (std::size_t j = 0; j < ks.size(); ++j) {
        if (!(ks[j] > 0.0)) throw ParameterError("k sweep values must be positive");
        if (j > 0 && !(ks[j] > ks[j - 1])) throw ParameterError("k sweep values must be strictly increasing");
    }
    base.validate();
    require_paths(n_paths);
    const auto generator = make_fbm_generator(options.backend, base.grid, base.hurst);

    std::vector<SimConfig> configs;
    configs.reserve(ks.size());
    for (double k : ks) configs.push_back(with_k(base, k));

    const std::size_t nk = ks.size();
    std::vector<std::uint8_t> hit(n_paths * nk, 0);
    std::vector<std::size_t> overshoots(n_paths * nk, 0);
    parallel_for(n_paths, options.workers, [&](std::size_t i) {
        const FbmPath noise = generator->sample(stream_seed(seed, i));
        for (std::size_t j = 0; j < nk; ++j) {
            const TrajectoryResult r = simulate_y(configs[j], noise);
            hit[i * nk + j] = r.absorbed() ? 1 : 0;
            overshoots[i * nk + j] = r.overshoot_steps;
        }
    });

    KSweepResult out;
    for (std::size_t j = 0; j < nk; ++j) {
        std::size_t n_hits = 0;
        std::size_t n_over = 0;
        for (std::size_t i = 0; i < n_paths; ++i) {
            n_hits += hit[i * nk + j];
            n_over += overshoots[i * nk + j];
        }
        out.summaries.push_back(make_summary(configs[j], n_paths, n_hits, seed, n_over));
    }
    for (std::size_t i = 0; i < n_paths; ++i) {
        for (std::size_t j = 1; j < nk; ++j) {
            if (hit[i * nk + j] > hit[i * nk + j - 1]) {
                ++out.n_pathwise_violations;
                break;
            }
        }
    }
    return out;
}

std::vector<HitProbSummary> hurst_sigma_grid(const SimConfig& base, const std::vector<double>& hursts,
                                             const std::vector<double>& sigmas, std::size_t n_paths,
                                             std::uint64_t seed, const RunOptions& options) {
    std::vector<HitProbSummary> out;
    out.reserve(hursts.size() * sigmas.size());
    for (double h : hursts) {
        for (double s : sigmas) {
            SimConfig c = base;
            c.hurst = HurstParameter(h);
            c.sigma = s;
            out.push_back(estimate_hitting_probability(c, n_paths, seed, options));
        }
    }
    return out;
}

std::vector<ResidualRow> residual_study(const SimConfig& base, const std::vector<double>& dts,
                                        std::size_t n_paths, std::uint64_t seed, const RunOptions& options) {
    if (dts.empty()) throw ParameterError("residual study needs at least one dt");
    base.validate();
    require_paths(n_paths);

    const double t_end = base.grid.t_end();
    const double finest = *std::min_element(dts.begin(), dts.end());
    const TimeGrid fine_grid = TimeGrid::from_step(t_end, finest);

    std::vector<std::size_t> strides;
    for (double dt : dts) {
        const TimeGrid g = TimeGrid::from_step(t_end, dt);
        if (fine_grid.n_steps() % g.n_steps() != 0) {
            throw ParameterError("dt=" + std::to_string(dt) + " is not an integer multiple of the finest dt=" +
                                 std::to_string(finest));
        }
        strides.push_back(fine_grid.n_steps() / g.n_steps());
    }

    const auto generator = make_fbm_generator(options.backend, fine_grid, base.hurst);
    const std::size_t nd = dts.size();
    std::vector<double> residuals(n_paths * nd, 0.0);
    parallel_for(n_paths, options.workers, [&](std::size_t i) {
        const FbmPath fine = generator->sample(stream_seed(seed, i));
        for (std::size_t j = 0; j < nd; ++j) {
            const FbmPath noise = subsample(fine, strides[j]);
            SimConfig c = base;
            c.grid = noise.grid;
            residuals[i * nd + j] = sde_residual(c, noise);
        }
    });

    std::vector<ResidualRow> rows;
    for (std::size_t j = 0; j < nd; ++j) {
        std::vector<double> col(n_paths);
        for (std::size_t i = 0; i < n_paths; ++i) col[i] = residuals[i * nd + j];
        rows.push_back(ResidualRow{dts[j], stats::median(col), stats::quantile(col, 0.9), n_paths});
    }
    return rows;
}

}  // namespace fcir
