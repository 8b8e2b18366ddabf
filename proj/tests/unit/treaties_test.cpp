#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tailsim/counting.hpp"
#include "tailsim/marginals.hpp"
#include "tailsim/stats.hpp"
#include "tailsim/treaties.hpp"

using namespace tailsim;

TEST_CASE("preset coefficient schemes") {
    auto lcr3 = TreatySpec::lcr(3);
    CHECK(lcr3.coeffs == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(lcr3.c == 3.0);

    auto eco3 = TreatySpec::ecomor(3);
    CHECK(eco3.coeffs == std::vector<double>{1.0, 1.0, -2.0});
    CHECK(eco3.c == 0.0);

    auto eco2 = TreatySpec::ecomor(2);
    CHECK(eco2.coeffs == std::vector<double>{1.0, -1.0});
    CHECK(eco2.c == 0.0);

    CHECK_THROWS_AS(TreatySpec::lcr(0), std::invalid_argument);
    CHECK_THROWS_AS(TreatySpec::ecomor(1), std::invalid_argument);
}

TEST_CASE("top order statistics") {
    std::vector<double> s{3, 1, 4, 1, 5};
    auto os = top_order_statistics(s, 2);
    CHECK(os.values == std::vector<double>{5, 4});
    CHECK(os.n == 5);

    std::vector<double> one{7};
    CHECK(top_order_statistics(one, 1).values == std::vector<double>{7});

    CHECK_THROWS_AS((void)top_order_statistics(one, 2), InsufficientSampleError);
    CHECK_THROWS_AS((void)top_order_statistics(std::vector<double>{}, 1),
                    InsufficientSampleError);
}

TEST_CASE("partial selection matches a full sort, streaming matches both") {
    RandomStream rng(11);
    auto sample = sample_marginal(MarginalModel::exponential(), rng, 100000);

    auto sorted = sample;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    for (std::size_t m : {1u, 3u, 10u}) {
        auto os = top_order_statistics(sample, m);
        TopKSelector sel(m);
        for (double x : sample) sel.push(x);
        auto st = sel.finish();
        for (std::size_t j = 0; j < m; ++j) {
            CHECK(os.values[j] == sorted[j]);
            CHECK(st.values[j] == sorted[j]);
        }
        CHECK(st.n == sample.size());
    }
}

TEST_CASE("treaty evaluation") {
    OrderStats stats{{5, 3, 1}, 3};
    CHECK(treaty_value(stats, TreatySpec::ecomor(3)) == 6.0);
    CHECK(treaty_value(stats, TreatySpec::lcr(2)) == 8.0);

    OrderStats constant{{2.5, 2.5, 2.5, 2.5}, 4};
    CHECK(treaty_value(constant, TreatySpec::ecomor(4)) == 0.0);

    OrderStats small{{5}, 1};
    CHECK_THROWS_AS((void)treaty_value(small, TreatySpec::lcr(2)), InsufficientSampleError);
}

TEST_CASE("normalization") {
    CHECK(normalize_treaty(6.0, 1.0, std::log(100.0), 0.0) == 6.0);
    CHECK(normalize_treaty(10.0, 2.0, 3.0, 2.0) == 2.0);
    CHECK(normalize_treaty(3.0 * 2.0, 5.0, 3.0, 2.0) == 0.0);
    CHECK_THROWS_AS((void)normalize_treaty(1.0, 0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("shift covariance and scale equivariance") {
    RandomStream rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        auto sample = sample_marginal(MarginalModel::exponential(), rng, 50);
        auto os = top_order_statistics(sample, 4);
        auto spec = rep % 2 == 0 ? TreatySpec::lcr(4) : TreatySpec::ecomor(4);
        double base = treaty_value(os, spec);

        double d = 2.75, s = 3.5;
        OrderStats shifted = os, scaled = os;
        for (double& v : shifted.values) v += d;
        for (double& v : scaled.values) v *= s;
        CHECK(treaty_value(shifted, spec) == doctest::Approx(base + spec.c * d).epsilon(1e-12));
        CHECK(treaty_value(scaled, spec) == doctest::Approx(s * base).epsilon(1e-12));
    }
}

TEST_CASE("ECOMOR with exponential claims is exactly Gamma(p-1,1)") {
    // Renyi representation: exact at any finite sample size >= p.
    auto counting = CountingModel::poisson(1.0);
    auto claims = MarginalModel::exponential();
    auto spec = TreatySpec::ecomor(3);
    const double t = 100.0;
    const int reps = 100000;

    RandomStream rng(616);
    std::vector<double> vals;
    vals.reserve(reps);
    for (int r = 0; r < reps; ++r) {
        std::int64_t n = sample_count(counting, t, rng);
        if (n < 3) continue;
        TopKSelector sel(3);
        for (std::int64_t i = 0; i < n; ++i) sel.push(sample_marginal_one(claims, rng));
        vals.push_back(treaty_value(sel.finish(), spec));
    }
    // Gamma(2,1) cdf
    auto cdf_gamma21 = [](double x) {
        return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x) * (1.0 + x);
    };
    auto ks = ks_one_sample(EmpiricalSample::from(std::move(vals)), cdf_gamma21);
    CHECK(ks.statistic < ks.critical_99);
}
