#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "fcir/appendix.hpp"
#include "fcir/csv.hpp"
#include "fcir/experiments.hpp"
#include "fcir/parallel.hpp"
#include "fcir/seeding.hpp"

namespace fcir::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model parameters shared by the simulation subcommands. Each one can come
/// from a flag or from the JSON file given by --config; flags win.
struct ModelFlags {
    double a = 0.0;
    double k = 0.0;
    double sigma = 0.0;
    double hurst = 0.0;
    double x0 = 0.0;
    double t_end = kAppendixT;
    double dt = kAppendixDt;
    std::size_t paths = kAppendixPaths;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string backend = "fft";
    std::string config_path;

    std::map<std::string, CLI::Option*> options;

    void add_to(CLI::App& app, bool with_k) {
        options["a"] = app.add_option("--a", a, "mean-reversion speed");
        if (with_k) options["k"] = app.add_option("--k", k, "drift numerator");
        options["sigma"] = app.add_option("--sigma", sigma, "volatility (> 0)");
        options["hurst"] = app.add_option("--hurst", hurst, "Hurst parameter in (0,1)");
        options["x0"] = app.add_option("--x0", x0, "initial value X_0 = Y_0^2 (> 0)");
        options["t-end"] = app.add_option("--t-end", t_end, "time horizon T")->capture_default_str();
        options["dt"] = app.add_option("--dt", dt, "Euler step")->capture_default_str();
        options["paths"] = app.add_option("--paths", paths, "number of sample paths")->capture_default_str();
        options["seed"] = app.add_option("--seed", seed, "experiment seed")->capture_default_str();
        app.add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
        app.add_option("--fbm-backend", backend, "fBm generator: fft or reference")->capture_default_str();
        app.add_option("--config", config_path, "JSON file with parameters named like the flags");
    }

    template <class T>
    T resolve(const json& file, const std::string& name, T& flag_value, bool required) const {
        const auto it = options.find(name);
        if (it != options.end() && it->second->count() > 0) return flag_value;
        if (file.contains(name)) {
            try {
                flag_value = file.at(name).get<T>();
            } catch (const json::exception&) {
                throw ParameterError("config field '" + name + "' has the wrong type");
            }
            return flag_value;
        }
        if (required) throw ParameterError("missing required parameter --" + name);
        return flag_value;
    }

    json load_file() const {
        if (config_path.empty()) return json::object();
        std::ifstream in(config_path);
        if (!in) throw IoError("cannot read config file '" + config_path + "'");
        try {
            json j = json::parse(in);
            if (!j.is_object()) throw ParameterError("config file must hold a JSON object");
            return j;
        } catch (const json::parse_error& e) {
            throw ParameterError("config file '" + config_path + "' is not valid JSON: " + e.what());
        }
    }

    /// Fills every field from flags/file and returns the simulation config.
    SimConfig finalize(bool k_required) {
        const json file = load_file();
        resolve(file, "a", a, true);
        if (k_required) resolve(file, "k", k, true);
        resolve(file, "sigma", sigma, true);
        resolve(file, "hurst", hurst, true);
        resolve(file, "x0", x0, true);
        resolve(file, "t-end", t_end, false);
        resolve(file, "dt", dt, false);
        resolve(file, "paths", paths, false);
        resolve(file, "seed", seed, false);
        if (paths == 0) throw ParameterError("--paths must be at least 1");

        SimConfig config = SimConfig::from_x0(a, k, sigma, HurstParameter(hurst), x0, TimeGrid::from_step(t_end, dt));
        config.validate();
        check_backend(config.grid);
        return config;
    }

    RunOptions run_options() const { return RunOptions{parse_fbm_backend(backend), workers}; }

    void check_backend(const TimeGrid& grid) const {
        if (parse_fbm_backend(backend) == FbmBackend::reference && grid.n_steps() > kReferenceMaxSteps) {
            throw ParameterError("--fbm-backend reference supports at most " + std::to_string(kReferenceMaxSteps) +
                                 " steps; this grid has " + std::to_string(grid.n_steps()));
        }
    }
};

void write_output(const std::string& path, const std::function<void(std::ostream&)>& body) {
    if (path.empty()) throw ParameterError("--out is required");
    try {
        csv::write_file_atomically(path, body);
    } catch (const std::ios_base::failure& e) {
        throw IoError(e.what());
    }
}

void require_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

// --- subcommands ------------------------------------------------------------

int run_simulate(ModelFlags& flags, const std::string& out_path, std::ostream& out) {
    const SimConfig config = flags.finalize(true);
    const auto generator = make_fbm_generator(parse_fbm_backend(flags.backend), config.grid, config.hurst);

    std::vector<TrajectoryResult> results(flags.paths);
    parallel_for(flags.paths, flags.workers, [&](std::size_t i) {
        results[i] = simulate_x(config, generator->sample(stream_seed(flags.seed, i)));
    });

    write_output(out_path, [&](std::ostream& os) {
        os << csv::kTrajectoryHeader << '\n';
        for (std::size_t i = 0; i < results.size(); ++i) csv::write_trajectory_rows(os, i, config.grid, results[i]);
    });
    const auto hits = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.absorbed(); });
    out << "simulate: wrote " << flags.paths << " paths x " << config.grid.size() << " points to " << out_path
        << " (" << hits << " absorbed)\n";
    return kSuccess;
}

int run_hitprob(ModelFlags& flags, const std::string& label, const std::string& out_path, std::ostream& out) {
    const SimConfig config = flags.finalize(true);
    if (out_path.empty()) throw ParameterError("--out is required");
    const HitProbSummary s = estimate_hitting_probability(config, flags.paths, flags.seed, flags.run_options());
    write_output(out_path, [&](std::ostream& os) { csv::write_summaries(os, {{label, s}}); });
    out << "hitprob: " << label << " fraction=" << csv::format_number(s.fraction) << " (" << s.n_hits << "/"
        << s.n_paths << "), 95% CI [" << csv::format_number(s.ci_low) << ", " << csv::format_number(s.ci_high)
        << "]\n";
    return kSuccess;
}

int run_sweep(ModelFlags& flags, const std::vector<double>& ks, const std::string& out_path, std::ostream& out) {
    const SimConfig base = flags.finalize(false);
    if (out_path.empty()) throw ParameterError("--out is required");
    const KSweepResult sweep = k_sweep(base, ks, flags.paths, flags.seed, flags.run_options());
    std::vector<csv::LabeledSummary> rows;
    for (const auto& s : sweep.summaries) rows.push_back({"k=" + csv::format_number(s.config.k), s});
    write_output(out_path, [&](std::ostream& os) { csv::write_summaries(os, rows); });
    out << "sweep: " << rows.size() << " k values, pathwise monotonicity violations="
        << sweep.n_pathwise_violations << '\n';
    return kSuccess;
}

int run_compare(ModelFlags& flags, double k1, double k2, const std::string& out_path, std::ostream& out) {
    if (!(k1 < k2)) {
        throw ParameterError("--k1 must be smaller than --k2 (got k1=" + csv::format_number(k1) +
                             ", k2=" + csv::format_number(k2) + ")");
    }
    flags.k = k1;
    const SimConfig base = flags.finalize(false);
    if (out_path.empty()) throw ParameterError("--out is required");
    const ComparisonReport r = comparison_experiment(base, k1, k2, flags.paths, flags.seed, flags.run_options());
    write_output(out_path, [&](std::ostream& os) { csv::write_comparison(os, {r}); });
    out << "compare: order violations=" << r.n_order_violations << ", tau violations=" << r.n_tau_violations
        << ", max violation=" << csv::format_number(r.max_violation) << '\n';
    return kSuccess;
}

int run_residual(ModelFlags& flags, const std::vector<double>& dts, const std::string& out_path,
                 std::ostream& out) {
    if (dts.empty()) throw ParameterError("--dts needs at least one step size");
    flags.dt = *std::min_element(dts.begin(), dts.end());
    const SimConfig base = flags.finalize(true);
    if (out_path.empty()) throw ParameterError("--out is required");
    const auto rows = residual_study(base, dts, flags.paths, flags.seed, flags.run_options());
    write_output(out_path, [&](std::ostream& os) { csv::write_residuals(os, rows); });
    out << "residual:";
    for (const auto& r : rows) out << " dt=" << csv::format_number(r.dt) << " median=" << csv::format_number(r.median_residual);
    out << '\n';
    return kSuccess;
}

struct ReproFlags {
    std::string out_dir = "appendix-repro";
    std::size_t paths = kAppendixPaths;
    std::uint64_t seed = 1;
    std::size_t dump_paths = 10;
    unsigned workers = 0;
    std::string backend = "fft";
};

int run_repro_appendix(const ReproFlags& flags, std::ostream& out) {
    if (flags.paths == 0) throw ParameterError("--paths must be at least 1");
    const FbmBackend backend = parse_fbm_backend(flags.backend);
    if (backend == FbmBackend::reference) {
        throw ParameterError("--fbm-backend reference supports at most " + std::to_string(kReferenceMaxSteps) +
                             " steps; the published grid has 10000");
    }
    const fs::path dir(flags.out_dir);
    require_out_dir(dir);
    const RunOptions options{backend, flags.workers};

    std::vector<csv::LabeledSummary> rows;
    std::vector<bool> passed;
    for (const auto& c : appendix_cases()) {
        const SimConfig config = appendix_config(c);
        const HitProbSummary s = estimate_hitting_probability(config, flags.paths, flags.seed, options);
        rows.push_back({c.label, s});
        passed.push_back(c.expected.met_by(s));
        out << c.label << ": fraction=" << csv::format_number(s.fraction) << " (" << s.n_hits << "/" << s.n_paths
            << "), published " << c.expected.describe() << " -> " << (passed.back() ? "PASS" : "FAIL") << '\n';

        if (flags.dump_paths > 0) {
            const std::size_t n_dump = std::min(flags.dump_paths, flags.paths);
            const auto generator = make_fbm_generator(backend, config.grid, config.hurst);
            std::vector<TrajectoryResult> results(n_dump);
            parallel_for(n_dump, flags.workers, [&](std::size_t i) {
                results[i] = simulate_x(config, generator->sample(stream_seed(flags.seed, i)));
            });
            write_output((dir / (c.label + "_paths.csv")).string(), [&](std::ostream& os) {
                os << csv::kTrajectoryHeader << '\n';
                for (std::size_t i = 0; i < n_dump; ++i) csv::write_trajectory_rows(os, i, config.grid, results[i]);
            });
        }
    }

    write_output((dir / "summary.csv").string(), [&](std::ostream& os) { csv::write_summaries(os, rows); });
    write_output((dir / "manifest.csv").string(), [&](std::ostream& os) {
        os << csv::kSummaryHeader << ",published,pass\n";
        const auto& cases = appendix_cases();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::ostringstream row;
            csv::write_summary_row(row, rows[i].label, rows[i].summary);
            std::string line = row.str();
            line.pop_back();
            os << line << ',' << cases[i].expected.describe() << ',' << (passed[i] ? "true" : "false") << '\n';
        }
    });

    const auto n_pass = std::count(passed.begin(), passed.end(), true);
    out << "repro-appendix: " << n_pass << "/" << passed.size() << " configurations within tolerance; manifest at "
        << (dir / "manifest.csv").string() << '\n';
    return n_pass == static_cast<long>(passed.size()) ? kSuccess : kToleranceFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fractional Cox-Ingersoll-Ross simulator"};
    app.require_subcommand(1);

    std::string out_path;
    std::string label = "run";

    ModelFlags simulate_flags;
    auto* simulate = app.add_subcommand("simulate", "dump simulated (Y, X) trajectories as CSV");
    simulate_flags.add_to(*simulate, true);
    simulate->add_option("--out", out_path, "trajectory CSV path")->required();

    ModelFlags hitprob_flags;
    auto* hitprob = app.add_subcommand("hitprob", "estimate P(tau <= T)");
    hitprob_flags.add_to(*hitprob, true);
    hitprob->add_option("--out", out_path, "summary CSV path")->required();
    hitprob->add_option("--label", label, "row label")->capture_default_str();

    ModelFlags sweep_flags;
    std::vector<double> ks;
    auto* sweep = app.add_subcommand("sweep", "hit probability over k on shared noise");
    sweep_flags.add_to(*sweep, false);
    sweep->add_option("--ks", ks, "comma-separated increasing k values")->delimiter(',')->required();
    sweep->add_option("--out", out_path, "summary CSV path")->required();

    ModelFlags compare_flags;
    double k1 = 0.0;
    double k2 = 0.0;
    auto* compare = app.add_subcommand("compare", "pathwise ordering test for k1 < k2 on shared noise");
    compare_flags.add_to(*compare, false);
    compare->add_option("--k1", k1, "smaller drift numerator")->required();
    compare->add_option("--k2", k2, "larger drift numerator")->required();
    compare->add_option("--out", out_path, "comparison CSV path")->required();

    ModelFlags residual_flags;
    std::vector<double> dts;
    auto* residual = app.add_subcommand("residual", "SDE residual of the Stratonovich form under refinement");
    residual_flags.add_to(*residual, true);
    residual->add_option("--dts", dts, "comma-separated step sizes")->delimiter(',')->required();
    residual->add_option("--out", out_path, "residual CSV path")->required();

    ReproFlags repro_flags;
    auto* repro = app.add_subcommand("repro-appendix", "rerun all published configurations and compare");
    repro->add_option("--out-dir", repro_flags.out_dir, "output directory")->capture_default_str();
    repro->add_option("--paths", repro_flags.paths, "paths per configuration")->capture_default_str();
    repro->add_option("--seed", repro_flags.seed, "experiment seed")->capture_default_str();
    repro->add_option("--dump-paths", repro_flags.dump_paths, "trajectories to write per configuration")
        ->capture_default_str();
    repro->add_option("--workers", repro_flags.workers, "worker threads (0 = all cores)")->capture_default_str();
    repro->add_option("--fbm-backend", repro_flags.backend, "fBm generator")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kValidation;
    }

    try {
        if (*simulate) return run_simulate(simulate_flags, out_path, out);
        if (*hitprob) return run_hitprob(hitprob_flags, label, out_path, out);
        if (*sweep) return run_sweep(sweep_flags, ks, out_path, out);
        if (*compare) return run_compare(compare_flags, k1, k2, out_path, out);
        if (*residual) return run_residual(residual_flags, dts, out_path, out);
        if (*repro) return run_repro_appendix(repro_flags, out);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}

}  // namespace fcir::cli
