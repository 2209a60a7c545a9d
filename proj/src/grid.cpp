#include "fcir/grid.hpp"

#include <cmath>

namespace fcir {

TimeGrid TimeGrid::from_step(double t_end, double dt) {
    if (!(dt > 0.0)) {
        throw ParameterError("time step must be positive, got " + std::to_string(dt));
    }
    if (!(t_end > 0.0)) {
        throw ParameterError("time grid end must be positive, got " + std::to_string(t_end));
    }
    const double ratio = t_end / dt;
    const double steps = std::round(ratio);
    if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * ratio) {
        throw ParameterError("t_end / dt must be a positive integer (t_end=" + std::to_string(t_end) +
                             ", dt=" + std::to_string(dt) + ")");
    }
    return TimeGrid(t_end, static_cast<std::size_t>(steps));
}

}  // namespace fcir
