#pragma once

#include <string>
#include <vector>

#include "fcir/experiments.hpp"

namespace fcir {

// Published zero-hitting outcome of one simulated configuration.
struct HitExpectation {
    enum class Kind {
        approximately,  // |fraction - value| <= tolerance
        at_most,        // fraction <= value
        none,           // no hits at all
    };
    Kind kind;
    double value;
    double tolerance;

    bool met_by(const HitProbSummary& summary) const noexcept;
    std::string describe() const;
};

struct AppendixCase {
    std::string label;
    double a;
    double k;
    double sigma;
    double hurst;
    HitExpectation expected;
};

/// The eight published configurations (x0 = 1, T = 10, dt = 1e-3), labelled
/// as in the original figure set.
const std::vector<AppendixCase>& appendix_cases();

inline constexpr double kAppendixT = 10.0;
inline constexpr double kAppendixDt = 1e-3;
inline constexpr double kAppendixX0 = 1.0;
inline constexpr std::size_t kAppendixPaths = 10000;

SimConfig appendix_config(const AppendixCase& c, double x0 = kAppendixX0, double t_end = kAppendixT,
                          double dt = kAppendixDt);

}  // namespace fcir
