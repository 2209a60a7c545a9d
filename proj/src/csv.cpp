#include "fcir/csv.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <system_error>

namespace fcir::csv {

std::string format_number(double value) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

void write_trajectory_rows(std::ostream& out, std::size_t path_id, const TimeGrid& grid,
                           const TrajectoryResult& result) {
    const std::string id = std::to_string(path_id);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << id << ',' << format_number(grid.time(i)) << ',' << format_number(result.y[i]) << ','
            << format_number(result.x[i]) << '\n';
    }
}

void write_summary_row(std::ostream& out, const std::string& label, const HitProbSummary& s) {
    const auto& c = s.config;
    out << label << ',' << format_number(c.a) << ',' << format_number(c.k) << ',' << format_number(c.sigma) << ','
        << format_number(c.hurst.value()) << ',' << format_number(c.x0()) << ',' << format_number(c.grid.t_end())
        << ',' << format_number(c.grid.dt()) << ',' << s.n_paths << ',' << s.n_hits << ','
        << format_number(s.fraction) << ',' << format_number(s.ci_low) << ',' << format_number(s.ci_high) << ','
        << s.seed << '\n';
}

void write_summaries(std::ostream& out, const std::vector<LabeledSummary>& rows) {
    out << kSummaryHeader << '\n';
    for (const auto& r : rows) write_summary_row(out, r.label, r.summary);
}

void write_comparison(std::ostream& out, const std::vector<ComparisonReport>& rows) {
    out << kComparisonHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.k1) << ',' << format_number(r.k2) << ',' << r.n_paths << ',' << r.n_order_violations
            << ',' << r.n_tau_violations << ',' << format_number(r.max_violation) << '\n';
    }
}

void write_residuals(std::ostream& out, const std::vector<ResidualRow>& rows) {
    out << kResidualHeader << '\n';
    for (const auto& r : rows) {
        out << format_number(r.dt) << ',' << format_number(r.median_residual) << ','
            << format_number(r.q90_residual) << ',' << r.n_paths << '\n';
    }
}

void write_file_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    namespace fs = std::filesystem;
    const fs::path tmp = path.string() + ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::ios_base::failure("cannot open '" + tmp.string() + "' for writing");
        }
        try {
            body(out);
            out.flush();
            if (!out) throw std::ios_base::failure("write to '" + tmp.string() + "' failed");
        } catch (...) {
            out.close();
            std::error_code ec;
            fs::remove(tmp, ec);
            throw;
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::ios_base::failure("cannot move output into place at '" + path.string() + "'");
    }
}

}  // namespace fcir::csv
