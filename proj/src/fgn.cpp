#include "fcir/fgn.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "fcir/seeding.hpp"

namespace fcir {

namespace {

// The FFTW planner is not reentrant; execution with new arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
        if (data == nullptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* data;
};

void cumulative_sum_from_zero(const std::vector<double>& increments, std::vector<double>& values) {
    values.assign(increments.size() + 1, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < increments.size(); ++i) {
        acc += increments[i];
        values[i + 1] = acc;
    }
}

}  // namespace

double fbm_covariance(double s, double t, HurstParameter hurst) {
    const double two_h = 2.0 * hurst.value();
    return 0.5 * (std::pow(s, two_h) + std::pow(t, two_h) - std::pow(std::abs(t - s), two_h));
}

double fgn_autocovariance(std::size_t lag, HurstParameter hurst) {
    const double two_h = 2.0 * hurst.value();
    if (lag == 0) return 1.0;
    const double k = static_cast<double>(lag);
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(k - 1.0, two_h));
}

FbmBackend parse_fbm_backend(std::string_view name) {
    if (name == "fft") return FbmBackend::fft;
    if (name == "reference") return FbmBackend::reference;
    throw ParameterError("unknown fBm backend '" + std::string(name) + "' (expected 'fft' or 'reference')");
}

std::string_view to_string(FbmBackend backend) {
    return backend == FbmBackend::fft ? "fft" : "reference";
}

//---------------------------------------------------------------------------//
// Dense reference
//---------------------------------------------------------------------------//

CholeskyFbmGenerator::CholeskyFbmGenerator(TimeGrid grid, HurstParameter hurst)
    : FbmGenerator(grid, hurst) {
    const std::size_t n = grid.n_steps();
    if (n > kReferenceMaxSteps) {
        throw ParameterError("reference fBm backend is limited to " + std::to_string(kReferenceMaxSteps) +
                             " steps, got " + std::to_string(n));
    }
    std::vector<double> gamma(n);
    for (std::size_t k = 0; k < n; ++k) gamma[k] = fgn_autocovariance(k, hurst);

    // Row i of the packed lower triangle starts at i*(i+1)/2.
    lower_.assign(n * (n + 1) / 2, 0.0);
    auto at = [this](std::size_t i, std::size_t j) -> double& { return lower_[i * (i + 1) / 2 + j]; };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = gamma[i - j];
            const double* row_i = &lower_[i * (i + 1) / 2];
            const double* row_j = &lower_[j * (j + 1) / 2];
            for (std::size_t p = 0; p < j; ++p) sum -= row_i[p] * row_j[p];
            if (i == j) {
                if (!(sum > 0.0)) {
                    throw NumericalError("fGn covariance matrix is not positive definite for n=" +
                                         std::to_string(n) + " (pivot " + std::to_string(i) + ")");
                }
                at(i, i) = std::sqrt(sum);
            } else {
                at(i, j) = sum / at(j, j);
            }
        }
    }
}

FbmPath CholeskyFbmGenerator::sample(std::uint64_t seed) const {
    const std::size_t n = grid().n_steps();
    Engine engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> z(n);
    for (auto& v : z) v = normal(engine);

    const double scale = std::pow(grid().dt(), hurst().value());
    std::vector<double> increments(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = &lower_[i * (i + 1) / 2];
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += row[j] * z[j];
        increments[i] = scale * acc;
    }
    FbmPath path{grid(), hurst(), {}};
    cumulative_sum_from_zero(increments, path.values);
    return path;
}

//---------------------------------------------------------------------------//
// Circulant embedding
//---------------------------------------------------------------------------//

CirculantFbmGenerator::CirculantFbmGenerator(TimeGrid grid, HurstParameter hurst)
    : FbmGenerator(grid, hurst), embed_size_(2 * grid.n_steps()), plan_(nullptr) {
    const std::size_t n = grid.n_steps();
    const std::size_t m = embed_size_;

    // First row of the circulant: gamma(0..n), then gamma(n-1..1).
    FftwBuffer row(m);
    FftwBuffer eig(m);
    for (std::size_t j = 0; j <= n; ++j) {
        row.data[j][0] = fgn_autocovariance(j, hurst);
        row.data[j][1] = 0.0;
    }
    for (std::size_t j = n + 1; j < m; ++j) {
        row.data[j][0] = fgn_autocovariance(m - j, hurst);
        row.data[j][1] = 0.0;
    }

    {
        std::lock_guard lock(planner_mutex());
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(m), row.data, eig.data, FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(p);
        fftw_destroy_plan(p);
    }

    double max_eig = 0.0;
    for (std::size_t j = 0; j < m; ++j) max_eig = std::max(max_eig, eig.data[j][0]);

    sqrt_eig_.resize(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
        double lambda = eig.data[j][0];
        if (lambda < 0.0) {
            if (-lambda > 1e-12 * max_eig) {
                throw NumericalError("circulant embedding has a negative eigenvalue " + std::to_string(lambda) +
                                     " (n=" + std::to_string(n) + ", H=" + std::to_string(hurst.value()) +
                                     "); use the reference backend");
            }
            lambda = 0.0;
        }
        sqrt_eig_[j] = std::sqrt(lambda * inv_m);
    }

    // Planning with FFTW_ESTIMATE does not touch the arrays' contents.
    FftwBuffer in(m);
    FftwBuffer out(m);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(m), in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
}

CirculantFbmGenerator::~CirculantFbmGenerator() {
    if (plan_ != nullptr) {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
}

FbmPath CirculantFbmGenerator::sample(std::uint64_t seed) const {
    const std::size_t n = grid().n_steps();
    const std::size_t m = embed_size_;

    Engine engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    FftwBuffer in(m);
    FftwBuffer out(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double re = normal(engine);
        const double im = normal(engine);
        in.data[j][0] = sqrt_eig_[j] * re;
        in.data[j][1] = sqrt_eig_[j] * im;
    }
    fftw_execute_dft(static_cast<fftw_plan>(plan_), in.data, out.data);

    // Real and imaginary parts are independent fGn samples; the real part is used.
    const double scale = std::pow(grid().dt(), hurst().value());
    std::vector<double> increments(n);
    for (std::size_t i = 0; i < n; ++i) increments[i] = scale * out.data[i][0];

    FbmPath path{grid(), hurst(), {}};
    cumulative_sum_from_zero(increments, path.values);
    return path;
}

std::unique_ptr<FbmGenerator> make_fbm_generator(FbmBackend backend, TimeGrid grid, HurstParameter hurst) {
    if (backend == FbmBackend::reference) return std::make_unique<CholeskyFbmGenerator>(grid, hurst);
    return std::make_unique<CirculantFbmGenerator>(grid, hurst);
}

FbmPath sample_fbm_reference(TimeGrid grid, HurstParameter hurst, std::uint64_t seed) {
    return CholeskyFbmGenerator(grid, hurst).sample(seed);
}

FbmPath sample_fbm_fft(TimeGrid grid, HurstParameter hurst, std::uint64_t seed) {
    return CirculantFbmGenerator(grid, hurst).sample(seed);
}

FbmPath subsample(const FbmPath& path, std::size_t stride) {
    const std::size_t n = path.grid.n_steps();
    if (stride == 0 || n % stride != 0) {
        throw ParameterError("subsample stride " + std::to_string(stride) + " does not divide " +
                             std::to_string(n) + " steps");
    }
    FbmPath out{TimeGrid(path.grid.t_end(), n / stride), path.hurst, {}};
    out.values.reserve(n / stride + 1);
    for (std::size_t i = 0; i <= n; i += stride) out.values.push_back(path.values[i]);
    return out;
}

//---------------------------------------------------------------------------//
// Hoelder constant
//---------------------------------------------------------------------------//

HolderEstimate estimate_holder_constant(const FbmPath& path, double delta) {
    const double h = path.hurst.value();
    if (!(delta > 0.0 && delta < h)) {
        throw ParameterError("Hoelder delta must lie in (0, H) = (0, " + std::to_string(h) + "), got " +
                             std::to_string(delta));
    }
    const auto& b = path.values;
    if (b.size() < 2 || b.size() != path.grid.size()) {
        throw ParameterError("Hoelder estimate needs a path with at least two points matching its grid");
    }
    const std::size_t n = path.grid.n_steps();
    const double exponent = h - delta;
    const double dt = path.grid.dt();

    // inv_den[lag] = (lag*dt)^{-(H-delta)}
    auto inv_den = [&](std::size_t lag) { return std::pow(static_cast<double>(lag) * dt, -exponent); };

    double best = 0.0;
    if (n <= kReferenceMaxSteps) {
        std::vector<double> weights(n + 1);
        for (std::size_t lag = 1; lag <= n; ++lag) weights[lag] = inv_den(lag);
        for (std::size_t s = 0; s < n; ++s) {
            const double bs = b[s];
            for (std::size_t t = s + 1; t <= n; ++t) {
                best = std::max(best, std::abs(b[t] - bs) * weights[t - s]);
            }
        }
    } else {
        for (std::size_t lag = 1; lag <= n; lag *= 2) {
            const double w = inv_den(lag);
            for (std::size_t s = 0; s + lag <= n; ++s) {
                best = std::max(best, std::abs(b[s + lag] - b[s]) * w);
            }
        }
    }
    return HolderEstimate{delta, best};
}

}  // namespace fcir
