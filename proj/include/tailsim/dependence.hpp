#pragma once

// Copulas coupling the two claim-size marginals. Independence and the
// Gaussian family lead to a product limit law; Gumbel-Hougaard with
// theta > 1 is asymptotically dependent.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "tailsim/marginals.hpp"
#include "tailsim/math.hpp"
#include "tailsim/random.hpp"

namespace tailsim {

enum class CopulaKind { Independence, GumbelHougaard, Gaussian };

struct DependenceModel {
    CopulaKind kind = CopulaKind::Independence;
    double theta = 1.0;  // GumbelHougaard, >= 1
    double rho = 0.0;    // Gaussian, in (-1,1)

    static DependenceModel independence() { return {CopulaKind::Independence, 1.0, 0.0}; }
    static DependenceModel gumbel_hougaard(double theta) {
        if (!(theta >= 1.0)) throw std::invalid_argument("GumbelHougaard: theta must be >= 1");
        return {CopulaKind::GumbelHougaard, theta, 0.0};
    }
    static DependenceModel gaussian(double rho) {
        if (!(rho > -1.0 && rho < 1.0))
            throw std::invalid_argument("GaussianCopula: rho must be in (-1,1)");
        return {CopulaKind::Gaussian, 1.0, rho};
    }

    // True when the bivariate extreme limit H factorizes as H1*H2.
    bool asymptotically_independent() const {
        return kind != CopulaKind::GumbelHougaard || theta == 1.0;
    }
};

inline double copula_cdf(const DependenceModel& dep, double u, double v) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        throw std::domain_error("copula_cdf: (u,v) must lie in the unit square");
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    switch (dep.kind) {
        case CopulaKind::Independence:
            return u * v;
        case CopulaKind::GumbelHougaard: {
            double lu = -std::log(u), lv = -std::log(v);
            double s = std::pow(std::pow(lu, dep.theta) + std::pow(lv, dep.theta),
                                1.0 / dep.theta);
            return std::exp(-s);
        }
        case CopulaKind::Gaussian:
            return bvn_cdf(normal_quantile(u), normal_quantile(v), dep.rho);
    }
    return 0.0;
}

// One (U,V) pair from the copula.
//  Independence: two fresh uniforms.
//  GumbelHougaard: Marshall-Olkin frailty construction; V positive
//    1/theta-stable, U_i = exp(-(E_i/V)^{1/theta}).
//  Gaussian: correlated standard normals mapped through the normal cdf.
inline std::pair<double, double> sample_copula(const DependenceModel& dep, RandomStream& rng) {
    switch (dep.kind) {
        case CopulaKind::Independence:
            return {rng.uniform(), rng.uniform()};
        case CopulaKind::GumbelHougaard: {
            if (dep.theta == 1.0) return {rng.uniform(), rng.uniform()};
            double inv_theta = 1.0 / dep.theta;
            double frailty = draw_positive_stable(inv_theta, rng);
            double e1 = draw_exponential(rng);
            double e2 = draw_exponential(rng);
            return {std::exp(-std::pow(e1 / frailty, inv_theta)),
                    std::exp(-std::pow(e2 / frailty, inv_theta))};
        }
        case CopulaKind::Gaussian: {
            double z1 = draw_standard_normal(rng);
            double z2 = dep.rho * z1 + std::sqrt(1.0 - dep.rho * dep.rho) *
                                           draw_standard_normal(rng);
            return {normal_cdf(z1), normal_cdf(z2)};
        }
    }
    return {rng.uniform(), rng.uniform()};
}

struct BivariateClaimModel {
    MarginalModel marginal_x;
    MarginalModel marginal_y;
    DependenceModel dependence;
};

inline std::pair<double, double> sample_claim_pair(const BivariateClaimModel& m,
                                                   RandomStream& rng) {
    auto [u, v] = sample_copula(m.dependence, rng);
    return {quantile(m.marginal_x, u), quantile(m.marginal_y, v)};
}

}  // namespace tailsim
