#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "fcir/grid.hpp"

namespace fcir {

/// A fractional Brownian motion trajectory sampled on a uniform grid.
struct FbmPath {
    TimeGrid grid;
    HurstParameter hurst;
    std::vector<double> values;  // values[i] = B^H(t_i), values[0] == 0
};

struct HolderEstimate {
    double delta;
    double constant;
};

/// Cov(B^H_s, B^H_t) = (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
double fbm_covariance(double s, double t, HurstParameter hurst);

/// Autocovariance of unit-step fractional Gaussian noise at integer lag.
double fgn_autocovariance(std::size_t lag, HurstParameter hurst);

enum class FbmBackend { reference, fft };

FbmBackend parse_fbm_backend(std::string_view name);
std::string_view to_string(FbmBackend backend);

/// Largest grid the dense reference backend accepts.
inline constexpr std::size_t kReferenceMaxSteps = 2048;

/*!
 * Sampler of fBm paths for a fixed (grid, H).
 *
 * Construction does the expensive setup (factorization or eigenvalues);
 * sample() is const and may be called concurrently. A sample is a pure
 * function of the seed.
 */
class FbmGenerator {
public:
    virtual ~FbmGenerator() = default;

    virtual FbmPath sample(std::uint64_t seed) const = 0;
    virtual FbmBackend backend() const noexcept = 0;

    const TimeGrid& grid() const noexcept { return grid_; }
    HurstParameter hurst() const noexcept { return hurst_; }

protected:
    FbmGenerator(TimeGrid grid, HurstParameter hurst) : grid_(grid), hurst_(hurst) {}

private:
    TimeGrid grid_;
    HurstParameter hurst_;
};

/// Dense Cholesky factor of the increment covariance. O(n^2) memory, O(n^2)
/// per sample; intended as the correctness oracle.
class CholeskyFbmGenerator final : public FbmGenerator {
public:
    CholeskyFbmGenerator(TimeGrid grid, HurstParameter hurst);

    FbmPath sample(std::uint64_t seed) const override;
    FbmBackend backend() const noexcept override { return FbmBackend::reference; }

private:
    std::vector<double> lower_;  // row-major packed lower triangle
};

/// Circulant embedding of fractional Gaussian noise (Davies-Harte).
/// O(n log n) per sample.
class CirculantFbmGenerator final : public FbmGenerator {
public:
    CirculantFbmGenerator(TimeGrid grid, HurstParameter hurst);
    ~CirculantFbmGenerator() override;

    CirculantFbmGenerator(const CirculantFbmGenerator&) = delete;
    CirculantFbmGenerator& operator=(const CirculantFbmGenerator&) = delete;

    FbmPath sample(std::uint64_t seed) const override;
    FbmBackend backend() const noexcept override { return FbmBackend::fft; }

    /// sqrt(lambda_j / m) for the embedding of size m = 2n.
    const std::vector<double>& scaled_sqrt_eigenvalues() const noexcept { return sqrt_eig_; }

private:
    std::size_t embed_size_;
    std::vector<double> sqrt_eig_;
    void* plan_;  // fftw_plan, kept opaque to keep fftw3.h out of the header
};

std::unique_ptr<FbmGenerator> make_fbm_generator(FbmBackend backend, TimeGrid grid, HurstParameter hurst);

FbmPath sample_fbm_reference(TimeGrid grid, HurstParameter hurst, std::uint64_t seed);
FbmPath sample_fbm_fft(TimeGrid grid, HurstParameter hurst, std::uint64_t seed);

/// Restriction of a path to every `stride`-th grid point.
FbmPath subsample(const FbmPath& path, std::size_t stride);

/*!
 * Empirical Hoelder constant max |B_t - B_s| / (t - s)^{H - delta} over grid
 * pairs s < t. All pairs are scanned for grids up to kReferenceMaxSteps steps;
 * above that only pairs whose lag is a power of two are used.
 */
HolderEstimate estimate_holder_constant(const FbmPath& path, double delta);

}  // namespace fcir
