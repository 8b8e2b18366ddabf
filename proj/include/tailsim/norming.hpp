#pragma once

// Normalizing constants a(t) > 0, b(t) and the limit exponents per
// max-domain of attraction:
//   Frechet: a = F^-(1-1/t),          b = 0,            gamma = 1/alpha
//   Weibull: a = omega - F^-(1-1/t),  b = omega,        gamma = -1/alpha
//   Gumbel:  a = mean excess at b,    b = F^-(1-1/t),   gamma = 0, delta flag set

#include <cmath>
#include <stdexcept>

#include "tailsim/marginals.hpp"
#include "tailsim/math.hpp"

namespace tailsim {

struct MarginalNorming {
    double a;      // scale, > 0
    double b;      // location
    double gamma;  // power applied to Z in the limit
    int delta;     // 1 iff Gumbel-class (the limit picks up c * ln Z)
};

struct NormingConstants {
    double a1, a2;
    double b1, b2;
    double gamma1, gamma2;
    int delta1, delta2;
    double t;
};

// Mean excess e(u) = int_u^omega [1-F(s)] ds / [1-F(u)], closed form.
// Only Gumbel-class families have one here.
inline double mean_excess(const MarginalModel& m, double u) {
    if (cdf(m, u) >= 1.0) throw std::domain_error("mean_excess: F(u) must be < 1");
    switch (m.family) {
        case Family::Exponential:
            return u >= 0.0 ? 1.0 : 1.0 - u;
        case Family::ExpTailEquivalent:
            // Tail is flat at 1 up to the shift, exactly exponential after.
            return u >= m.shift ? 1.0 : (m.shift - u) + std::exp(-m.shift);
        case Family::Pareto:
        case Family::BoundedPower:
            throw std::domain_error("mean_excess: model is not Gumbel-class");
    }
    return 1.0;
}

// Quadrature route for the same integral: adaptive Simpson on the tail with
// the substitution s = u + w/(1-w) mapping [u, inf) to [0,1).
inline double mean_excess_quadrature(const MarginalModel& m, double u) {
    double fu = cdf(m, u);
    if (fu >= 1.0) throw std::domain_error("mean_excess_quadrature: F(u) must be < 1");
    if (classify_mda(m).kind != MdaClass::Kind::Gumbel)
        throw std::domain_error("mean_excess_quadrature: model is not Gumbel-class");
    // Normalizing by the tail mass inside the integral keeps the integrand
    // O(1), so the absolute quadrature tolerance stays meaningful far out
    // in the tail.
    double tail = 1.0 - fu;
    auto integrand = [&](double w) {
        if (w >= 1.0) return 0.0;
        double s = u + w / (1.0 - w);
        double jac = 1.0 / ((1.0 - w) * (1.0 - w));
        return (1.0 - cdf(m, s)) / tail * jac;
    };
    return integrate(integrand, 0.0, 1.0, 1e-12);
}

// F^-(1 - 1/t) written in terms of t so the closed forms stay exact;
// quantile(m, 1 - 1/t) loses ~t*eps relative accuracy to cancellation.
inline double tail_quantile(const MarginalModel& m, double t) {
    if (!(t > 1.0)) throw std::domain_error("tail_quantile: t must be > 1");
    switch (m.family) {
        case Family::Pareto:
            return std::pow(t, 1.0 / m.alpha);
        case Family::BoundedPower:
            return m.omega - std::pow(t, -1.0 / m.alpha);
        case Family::Exponential:
            return std::log(t);
        case Family::ExpTailEquivalent:
            return std::fmax(m.shift, std::log(t));
    }
    return 0.0;
}

inline MarginalNorming norming_constants(const MarginalModel& m, double t) {
    if (!(t > 1.0)) throw std::domain_error("norming_constants: t must be > 1");
    MdaClass mda = classify_mda(m);
    double q = tail_quantile(m, t);
    switch (mda.kind) {
        case MdaClass::Kind::Frechet:
            return {q, 0.0, 1.0 / mda.alpha, 0};
        case MdaClass::Kind::Weibull:
            return {mda.omega - q, mda.omega, -1.0 / mda.alpha, 0};
        case MdaClass::Kind::Gumbel:
            return {mean_excess(m, q), q, 0.0, 1};
    }
    return {1.0, 0.0, 0.0, 0};
}

inline NormingConstants norming_constants(const MarginalModel& m1, const MarginalModel& m2,
                                          double t) {
    MarginalNorming n1 = norming_constants(m1, t);
    MarginalNorming n2 = norming_constants(m2, t);
    return {n1.a, n2.a, n1.b, n2.b, n1.gamma, n2.gamma, n1.delta, n2.delta, t};
}

}  // namespace tailsim
