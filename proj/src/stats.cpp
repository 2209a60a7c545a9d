#include "fcir/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fcir/errors.hpp"

namespace fcir::stats {

Interval wilson_interval(std::size_t successes, std::size_t trials, double z) {
    if (trials == 0) throw ParameterError("Wilson interval needs at least one trial");
    if (successes > trials) throw ParameterError("more successes than trials");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return Interval{std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    // The alternating series converges slowly for tiny lambda where P ~ 1.
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> first, std::vector<double> second) {
    if (first.empty() || second.empty()) throw ParameterError("KS test needs two non-empty samples");
    std::sort(first.begin(), first.end());
    std::sort(second.begin(), second.end());
    const double n1 = static_cast<double>(first.size());
    const double n2 = static_cast<double>(second.size());

    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < first.size() && j < second.size()) {
        const double v = std::min(first[i], second[j]);
        while (i < first.size() && first[i] <= v) ++i;
        while (j < second.size() && second[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    const double ne = std::sqrt(n1 * n2 / (n1 + n2));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return KsResult{d, kolmogorov_survival(lambda)};
}

double mean(std::span<const double> values) {
    if (values.empty()) throw ParameterError("mean of an empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
    if (values.size() < 2) throw ParameterError("variance needs at least two values");
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return ss / static_cast<double>(values.size() - 1);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ParameterError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile level must lie in [0,1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace fcir::stats
