#include "fcir/appendix.hpp"

#include <cmath>

#include "fcir/csv.hpp"

namespace fcir {

bool HitExpectation::met_by(const HitProbSummary& summary) const noexcept {
    switch (kind) {
        case Kind::approximately:
            return std::abs(summary.fraction - value) <= tolerance;
        case Kind::at_most:
            return summary.fraction <= value;
        case Kind::none:
            return summary.n_hits == 0;
    }
    return false;
}

std::string HitExpectation::describe() const {
    switch (kind) {
        case Kind::approximately:
            return csv::format_number(value) + "+-" + csv::format_number(tolerance);
        case Kind::at_most:
            return "<=" + csv::format_number(value);
        case Kind::none:
            return "0 hits";
    }
    return {};
}

const std::vector<AppendixCase>& appendix_cases() {
    using K = HitExpectation::Kind;
    // "Less than 1%" is checked at <= 2%; quoted percentages at +-3 points.
    static const std::vector<AppendixCase> cases = {
        {"fig1", 1.0, 1.0, 1.0, 0.6, {K::none, 0.0, 0.0}},
        {"fig2", 1.0, 1.0, 1.0, 0.8, {K::none, 0.0, 0.0}},
        {"fig5", 1.0, 0.5, 1.0, 0.4, {K::approximately, 0.17, 0.03}},
        {"fig6", 1.0, 1.0, 1.0, 0.4, {K::at_most, 0.02, 0.0}},
        {"fig7", 1.0, 1.0, 2.0, 0.4, {K::approximately, 0.86, 0.03}},
        {"fig8", 1.0, 3.0, 2.0, 0.4, {K::at_most, 0.02, 0.0}},
        {"fig9", 1.0, 1.0, 1.0, 0.2, {K::approximately, 0.43, 0.03}},
        {"fig10", 1.0, 3.0, 1.0, 0.2, {K::at_most, 0.02, 0.0}},
    };
    return cases;
}

SimConfig appendix_config(const AppendixCase& c, double x0, double t_end, double dt) {
    return SimConfig::from_x0(c.a, c.k, c.sigma, HurstParameter(c.hurst), x0, TimeGrid::from_step(t_end, dt));
}

}  // namespace fcir
