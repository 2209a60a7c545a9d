#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fcir/seeding.hpp"
#include "fcir/stats.hpp"
#include "fcir/stratonovich.hpp"

using namespace fcir;

namespace {

std::vector<double> random_path(std::mt19937_64& rng, std::size_t size) {
    std::normal_distribution<double> normal;
    std::vector<double> v(size);
    for (auto& x : v) x = normal(rng);
    return v;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("stratonovich_sum telescoping identities") {
    const TimeGrid grid(1.0, 257);
    std::mt19937_64 rng(1);
    std::vector<double> g = random_path(rng, grid.size());
    g[0] = 0.0;

    const auto self = stratonovich_sum(g, g, grid);
    CHECK(self.value == doctest::Approx(0.5 * g.back() * g.back()).epsilon(1e-12));
    CHECK(self.n_intervals == 257);
    CHECK(self.mesh == doctest::Approx(1.0 / 257));

    const std::vector<double> ones(grid.size(), 1.0);
    CHECK(stratonovich_sum(ones, g, grid).value == doctest::Approx(g.back() - g.front()).epsilon(1e-12));

    std::vector<double> t(grid.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = grid.time(i);
    CHECK(stratonovich_sum(t, t, grid).value == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("stratonovich_sum(g, g) = (g_n^2 - g_0^2)/2 for arbitrary partitions and starts") {
    std::mt19937_64 rng(2);
    for (std::size_t n : {1u, 2u, 10u, 999u}) {
        const TimeGrid grid(3.0, n);
        const auto g = random_path(rng, grid.size());
        const double expected = 0.5 * (g.back() * g.back() - g.front() * g.front());
        CHECK(stratonovich_sum(g, g, grid).value == doctest::Approx(expected).epsilon(1e-11));
    }
}

TEST_CASE("stratonovich_sum is bilinear") {
    std::mt19937_64 rng(3);
    const TimeGrid grid(1.0, 100);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f1 = random_path(rng, grid.size());
        const auto f2 = random_path(rng, grid.size());
        const auto g1 = random_path(rng, grid.size());
        const auto g2 = random_path(rng, grid.size());
        const double alpha = 1.7;
        const double beta = -0.4;
        std::vector<double> f(grid.size());
        std::vector<double> g(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            f[i] = alpha * f1[i] + beta * f2[i];
            g[i] = alpha * g1[i] + beta * g2[i];
        }
        const double lhs_f = stratonovich_sum(f, g1, grid).value;
        const double rhs_f = alpha * stratonovich_sum(f1, g1, grid).value + beta * stratonovich_sum(f2, g1, grid).value;
        CHECK(lhs_f == doctest::Approx(rhs_f).epsilon(1e-10));
        const double lhs_g = stratonovich_sum(f1, g, grid).value;
        const double rhs_g = alpha * stratonovich_sum(f1, g1, grid).value + beta * stratonovich_sum(f1, g2, grid).value;
        CHECK(lhs_g == doctest::Approx(rhs_g).epsilon(1e-10));
    }
}

TEST_CASE("stratonovich_sum rejects mismatched lengths") {
    const TimeGrid grid(1.0, 4);
    const std::vector<double> five(5, 1.0);
    const std::vector<double> four(4, 1.0);
    CHECK_THROWS_AS(stratonovich_sum(five, four, grid), ParameterError);
    CHECK_THROWS_AS(stratonovich_sum(four, five, grid), ParameterError);
}

TEST_CASE("sigma * S(Y, B) equals sigma * S(sqrt X, B) before absorption") {
    const SimConfig c{1.0, 1.0, 1.0, HurstParameter(0.3), 1.0, TimeGrid(2.0, 2000)};
    const FbmPath noise = sample_fbm_fft(c.grid, c.hurst, 8);
    const auto r = simulate_x(c, noise);
    const std::size_t m = residual_window_end(r, c.grid);
    const TimeGrid window(c.grid.time(m), m);
    std::vector<double> root(m + 1);
    for (std::size_t i = 0; i <= m; ++i) root[i] = std::sqrt(r.x[i]);
    const std::span<const double> y(r.y.data(), m + 1);
    const std::span<const double> b(noise.values.data(), m + 1);
    CHECK(c.sigma * stratonovich_sum(y, b, window).value == c.sigma * stratonovich_sum(root, b, window).value);
}

TEST_CASE("sde_residual vanishes for constant X and shrinks without noise") {
    const TimeGrid grid(1.0, 100);
    const SimConfig constant{0.0, 0.0, 1.0, HurstParameter(0.6), 1.3, grid};
    CHECK(sde_residual(constant, zero_noise(grid, constant.hurst)) == 0.0);

    double previous = 1e300;
    for (std::size_t n : {100u, 200u, 400u, 800u}) {
        const SimConfig c{0.0, 1.0, 1.0, HurstParameter(0.6), 1.0, TimeGrid(1.0, n)};
        const double res = sde_residual(c, zero_noise(c.grid, c.hurst));
        CHECK(res < previous);
        previous = res;
    }
    CHECK(previous < 1e-3);
}

TEST_CASE("sde_residual median decreases under refinement at H = 0.7") {
    const SimConfig fine{1.0, 1.0, 1.0, HurstParameter(0.7), 1.0, TimeGrid::from_step(1.0, 1e-3)};
    CirculantFbmGenerator gen(fine.grid, fine.hurst);
    std::vector<std::vector<double>> residuals(3);
    for (std::size_t i = 0; i < 100; ++i) {
        const FbmPath path = gen.sample(stream_seed(51, i));
        const std::size_t strides[] = {4, 2, 1};
        for (std::size_t j = 0; j < 3; ++j) {
            const FbmPath noise = subsample(path, strides[j]);
            SimConfig c = fine;
            c.grid = noise.grid;
            residuals[j].push_back(sde_residual(c, noise));
        }
    }
    const double m4 = stats::median(residuals[0]);
    const double m2 = stats::median(residuals[1]);
    const double m1 = stats::median(residuals[2]);
    CHECK(m2 < m4);
    CHECK(m1 < m2);
}

TEST_CASE("absorbed paths are truncated one point before absorption") {
    const SimConfig c{0.0, 0.0, 1.0, HurstParameter(0.5), 1.0, TimeGrid(1.0, 6)};
    FbmPath noise = zero_noise(c.grid, c.hurst);
    noise.values = {0.0, -1.0, -3.0, -3.0, -3.0, -3.0, -3.0};
    const auto r = simulate_x(c, noise);
    CHECK(residual_window_end(r, c.grid) == 1);
    // One step, no drift: X_1 - X_0 = (Y_1 + Y_0)(Y_1 - Y_0) = sigma * S(sqrt X, B) exactly.
    CHECK(sde_residual(c, noise) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("six-term decomposition reproduces X exactly up to roundoff") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const SimConfig c{-0.5 + 2.0 * u(rng),
                          0.1 + 3.0 * u(rng),
                          0.2 + 2.0 * u(rng),
                          HurstParameter(0.15 + 0.75 * u(rng)),
                          0.3 + 1.5 * u(rng),
                          TimeGrid(1.0 + 4.0 * u(rng), 50 + static_cast<std::size_t>(2000 * u(rng)))};
        const FbmPath noise = sample_fbm_fft(c.grid, c.hurst, rng());
        const auto d = theorem1_decomposition(c, noise);
        const auto r = simulate_x(c, noise);
        CHECK(d.error() < 1e-9 * std::max(max_abs(r.x), 1e-300));
        CHECK(theorem1_decomposition_check(c, noise) == d.error());
    }
}

TEST_CASE("decomposition: zero noise keeps only drift terms; one step by hand") {
    const SimConfig c{1.0, 2.0, 1.0, HurstParameter(0.4), 1.0, TimeGrid(1.0, 200)};
    const auto d = theorem1_decomposition(c, zero_noise(c.grid, c.hurst));
    CHECK(d.terms[2] == 0.0);
    CHECK(d.terms[3] == 0.0);
    CHECK(d.terms[4] == 0.0);
    CHECK(d.terms[5] == 0.0);
    CHECK(d.error() < 1e-12);

    const SimConfig one{0.7, 1.5, 0.9, HurstParameter(0.6), 1.2, TimeGrid(0.5, 1)};
    FbmPath noise = zero_noise(one.grid, one.hurst);
    noise.values = {0.0, 0.3};
    const auto r = simulate_x(one, noise);
    const double y0 = r.y[0];
    const double y1 = r.y[1];
    CHECK(r.x[1] - r.x[0] == doctest::Approx((y1 + y0) * (y1 - y0)).epsilon(1e-14));
    CHECK(theorem1_decomposition_check(one, noise) < 1e-14);
}
