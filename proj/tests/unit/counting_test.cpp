#include <doctest.h>

#include <cmath>
#include <vector>

#include "tailsim/counting.hpp"
#include "tailsim/random.hpp"
#include "tailsim/stats.hpp"

using namespace tailsim;

TEST_CASE("deterministic counts") {
    RandomStream rng(1);
    CHECK(sample_count(CountingModel::deterministic(2.0), 10.0, rng) == 20);
    CHECK(sample_count(CountingModel::deterministic(0.5), 3.0, rng) == 1);
    CHECK_THROWS_AS((void)sample_count(CountingModel::deterministic(1.0), 0.0, rng),
                    std::domain_error);
    CHECK_THROWS_AS((void)sample_count(CountingModel::poisson(1.0), -1.0, rng),
                    std::domain_error);
}

TEST_CASE("poisson counts have the right mean") {
    auto m = CountingModel::poisson(1.0);
    RandomStream rng(2024);
    const double t = 1e4;
    std::vector<double> ratio;
    for (int i = 0; i < 10000; ++i)
        ratio.push_back(static_cast<double>(sample_count(m, t, rng)) / t);
    CHECK(sample_moments(std::span<const double>(ratio)).mean ==
          doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("poisson sampler matches its pmf mean across regimes") {
    // exercise both the inversion path (mean < 10) and the rejection path
    for (double mean : {0.5, 3.0, 9.9, 10.1, 57.0, 4000.0}) {
        RandomStream rng(static_cast<std::uint64_t>(mean * 100) + 7);
        double acc = 0.0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) acc += static_cast<double>(draw_poisson(mean, rng));
        double se = std::sqrt(mean / n);
        CHECK(std::fabs(acc / n - mean) < 5.0 * se);
    }
}

TEST_CASE("mixed poisson ratio converges to the gamma mixing law") {
    auto m = CountingModel::mixed_poisson(2.0, 2.0);
    const double t = 1e4;
    RandomStream rng(31337);
    std::vector<double> ratio;
    const int n = 10000;
    for (int i = 0; i < n; ++i)
        ratio.push_back(static_cast<double>(sample_count(m, t, rng)) / t);
    auto mom = sample_moments(std::span<const double>(ratio));
    CHECK(mom.mean == doctest::Approx(1.0).epsilon(0.03));
    CHECK(mom.variance == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("mixed poisson ratio vs direct gamma draws (two-sample KS)") {
    auto m = CountingModel::mixed_poisson(2.0, 2.0);
    const double t = 1e4;
    RandomStream rng(555);
    const int n = 100000;
    std::vector<double> ratio, direct;
    ratio.reserve(n);
    direct.reserve(n);
    for (int i = 0; i < n; ++i)
        ratio.push_back(static_cast<double>(sample_count(m, t, rng)) / t);
    for (int i = 0; i < n; ++i) direct.push_back(draw_gamma(2.0, 2.0, rng));
    auto ks = ks_two_sample(EmpiricalSample::from(ratio), EmpiricalSample::from(direct));
    CHECK(ks.statistic <= 0.01);
}

TEST_CASE("mixing variable Z") {
    RandomStream rng(808);
    CHECK(sample_mixing_Z(CountingModel::poisson(3.0), rng) == 3.0);
    CHECK(sample_mixing_Z(CountingModel::deterministic(0.5), rng) == 0.5);

    auto m = CountingModel::mixed_poisson(2.0, 2.0);
    std::vector<double> z;
    const int n = 1000000;
    z.reserve(n);
    for (int i = 0; i < n; ++i) z.push_back(sample_mixing_Z(m, rng));
    auto mom = sample_moments(std::span<const double>(z));
    CHECK(std::fabs(mom.mean - 1.0) < 0.005);
    CHECK(std::fabs(mom.variance - 0.5) < 0.01);
}

TEST_CASE("coupled draw exposes the Z that drove the count") {
    auto m = CountingModel::mixed_poisson(2.0, 2.0);
    const double t = 1e5;
    RandomStream rng(99);
    // N(t)/t must track the coupled Z closely at large t
    for (int i = 0; i < 200; ++i) {
        CountDraw cd = sample_count_with_mixing(m, t, rng);
        CHECK(cd.z > 0.0);
        double se = std::sqrt(cd.z / t);
        CHECK(std::fabs(static_cast<double>(cd.n) / t - cd.z) < 6.0 * se + 1e-9);
    }
}

TEST_CASE("counts are nondecreasing in t for deterministic models") {
    auto m = CountingModel::deterministic(1.7);
    RandomStream rng(3);
    std::int64_t prev = 0;
    for (double t = 1.0; t < 50.0; t += 0.7) {
        std::int64_t n = sample_count(m, t, rng);
        CHECK(n >= prev);
        prev = n;
    }
}
