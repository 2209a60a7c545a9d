#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "fcir/experiments.hpp"
#include "fcir/sde.hpp"

namespace fcir::csv {

/// Shortest round-trip decimal representation ('.' separator, no locale).
std::string format_number(double value);

inline constexpr const char* kTrajectoryHeader = "path_id,t,y,x";
inline constexpr const char* kSummaryHeader =
    "label,a,k,sigma,H,x0,T,dt,n_paths,n_hits,fraction,ci_low,ci_high,seed";
inline constexpr const char* kComparisonHeader = "k1,k2,n_paths,n_order_violations,n_tau_violations,max_violation";
inline constexpr const char* kResidualHeader = "dt,median_residual,q90_residual,n_paths";

/// One row per grid point; absorbed points are written as zeros.
void write_trajectory_rows(std::ostream& out, std::size_t path_id, const TimeGrid& grid,
                           const TrajectoryResult& result);

struct LabeledSummary {
    std::string label;
    HitProbSummary summary;
};

void write_summary_row(std::ostream& out, const std::string& label, const HitProbSummary& s);
void write_summaries(std::ostream& out, const std::vector<LabeledSummary>& rows);
void write_comparison(std::ostream& out, const std::vector<ComparisonReport>& rows);
void write_residuals(std::ostream& out, const std::vector<ResidualRow>& rows);

/*!
 * Writes a file through a sibling temporary and renames it into place, so a
 * failure never leaves a partial file at `path`. Throws std::ios_base::failure
 * on I/O errors.
 */
void write_file_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body);

}  // namespace fcir::csv
