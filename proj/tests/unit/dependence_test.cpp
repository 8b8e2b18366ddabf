#include <doctest.h>

#include <cmath>
#include <vector>

#include "tailsim/dependence.hpp"
#include "tailsim/stats.hpp"

using namespace tailsim;

TEST_CASE("copula cdf closed forms") {
    auto ind = DependenceModel::independence();
    CHECK(copula_cdf(ind, 0.3, 0.5) == doctest::Approx(0.15).epsilon(1e-12));

    auto gh1 = DependenceModel::gumbel_hougaard(1.0);
    CHECK(std::fabs(copula_cdf(gh1, 0.3, 0.5) - 0.15) < 1e-12);

    auto gh2 = DependenceModel::gumbel_hougaard(2.0);
    double e = std::exp(-1.0);
    CHECK(copula_cdf(gh2, e, e) ==
          doctest::Approx(std::exp(-std::sqrt(2.0))).epsilon(1e-12));

    CHECK_THROWS_AS((void)copula_cdf(ind, -0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)copula_cdf(ind, 0.1, 1.5), std::domain_error);
}

TEST_CASE("copula boundary conditions") {
    const DependenceModel deps[] = {
        DependenceModel::independence(),
        DependenceModel::gumbel_hougaard(2.5),
        DependenceModel::gaussian(0.7),
    };
    for (const auto& d : deps) {
        for (double u : {0.0, 0.2, 0.8, 1.0}) {
            CHECK(copula_cdf(d, u, 0.0) == 0.0);
            CHECK(copula_cdf(d, 0.0, u) == 0.0);
            CHECK(copula_cdf(d, u, 1.0) == doctest::Approx(u).epsilon(1e-12));
            CHECK(copula_cdf(d, 1.0, u) == doctest::Approx(u).epsilon(1e-12));
        }
    }
}

TEST_CASE("gaussian copula cdf matches the closed form at the median") {
    // C(1/2,1/2) = 1/4 + asin(rho)/(2 pi)
    for (double rho : {-0.95, -0.5, 0.0, 0.3, 0.8, 0.99}) {
        auto d = DependenceModel::gaussian(rho);
        double expected = 0.25 + std::asin(rho) / (2.0 * 3.14159265358979323846);
        CHECK(copula_cdf(d, 0.5, 0.5) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("copula cdf is 2-increasing on a grid") {
    const DependenceModel deps[] = {
        DependenceModel::independence(),
        DependenceModel::gumbel_hougaard(2.0),
        DependenceModel::gaussian(0.8),
        DependenceModel::gaussian(-0.6),
    };
    for (const auto& d : deps) {
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                double u1 = i / 10.0, u2 = (i + 1) / 10.0;
                double v1 = j / 10.0, v2 = (j + 1) / 10.0;
                double vol = copula_cdf(d, u2, v2) - copula_cdf(d, u1, v2) -
                             copula_cdf(d, u2, v1) + copula_cdf(d, u1, v1);
                CHECK(vol >= -1e-12);
            }
        }
    }
}

namespace {

double empirical_copula(const std::vector<std::pair<double, double>>& uv, double u, double v) {
    std::size_t c = 0;
    for (const auto& [a, b] : uv)
        if (a <= u && b <= v) ++c;
    return static_cast<double>(c) / static_cast<double>(uv.size());
}

std::vector<std::pair<double, double>> draw_pairs(const DependenceModel& d, std::size_t n,
                                                  std::uint64_t seed) {
    RandomStream rng(seed);
    std::vector<std::pair<double, double>> uv;
    uv.reserve(n);
    for (std::size_t i = 0; i < n; ++i) uv.push_back(sample_copula(d, rng));
    return uv;
}

}  // namespace

TEST_CASE("copula samplers match their cdf") {
    const std::size_t n = 100000;

    auto gauss = DependenceModel::gaussian(0.8);
    auto uvg = draw_pairs(gauss, n, 4242);
    CHECK(std::fabs(empirical_copula(uvg, 0.5, 0.5) - copula_cdf(gauss, 0.5, 0.5)) < 0.01);

    auto gh = DependenceModel::gumbel_hougaard(2.0);
    auto uvh = draw_pairs(gh, n, 4343);
    double e = std::exp(-1.0);
    CHECK(std::fabs(empirical_copula(uvh, e, e) - copula_cdf(gh, e, e)) < 0.01);
}

TEST_CASE("independent pairs are uncorrelated") {
    BivariateClaimModel m{MarginalModel::exponential(), MarginalModel::exponential(),
                          DependenceModel::independence()};
    RandomStream rng(99);
    const std::size_t n = 100000;
    std::vector<double> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [x, y] = sample_claim_pair(m, rng);
        xs.push_back(x);
        ys.push_back(y);
    }
    CHECK(std::fabs(pearson_corr(xs, ys)) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("claim pairs keep their marginals (KS)") {
    BivariateClaimModel m{MarginalModel::pareto(2.0), MarginalModel::exponential(),
                          DependenceModel::gumbel_hougaard(2.0)};
    RandomStream rng(1717);
    const std::size_t n = 100000;
    std::vector<double> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [x, y] = sample_claim_pair(m, rng);
        xs.push_back(x);
        ys.push_back(y);
    }
    auto ksx = ks_one_sample(EmpiricalSample::from(xs),
                             [&](double x) { return cdf(m.marginal_x, x); });
    auto ksy = ks_one_sample(EmpiricalSample::from(ys),
                             [&](double y) { return cdf(m.marginal_y, y); });
    CHECK(ksx.statistic < ksx.critical_99);
    CHECK(ksy.statistic < ksy.critical_99);
}

TEST_CASE("sampling is deterministic given the stream") {
    BivariateClaimModel m{MarginalModel::pareto(2.0), MarginalModel::exponential(),
                          DependenceModel::gaussian(0.5)};
    RandomStream a(5), b(5);
    auto p1 = sample_claim_pair(m, a);
    auto p2 = sample_claim_pair(m, b);
    CHECK(p1.first == p2.first);
    CHECK(p1.second == p2.second);
}
