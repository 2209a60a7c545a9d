#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fcir::stats {

inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
    double low;
    double high;
};

/// Wilson score interval for a binomial proportion; clamped so that
/// 0 <= low <= successes/trials <= high <= 1.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95);

struct KsResult {
    double statistic;  // sup |F1 - F2|
    double p_value;    // asymptotic Kolmogorov distribution
};

KsResult ks_two_sample(std::vector<double> first, std::vector<double> second);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

double mean(std::span<const double> values);
/// Unbiased sample variance.
double variance(std::span<const double> values);

/// Linear-interpolation quantile (type 7) of the values; q in [0, 1].
double quantile(std::vector<double> values, double q);
inline double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

}  // namespace fcir::stats
