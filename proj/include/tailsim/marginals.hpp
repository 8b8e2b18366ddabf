#pragma once

// Univariate claim-size families. All four have closed-form cdfs and
// generalized inverses so every downstream check has an exact oracle.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "tailsim/random.hpp"

namespace tailsim {

enum class Family {
    Pareto,             // F(x) = 1 - x^{-alpha}, x >= 1
    BoundedPower,       // F(x) = 1 - (omega - x)^alpha on [omega-1, omega]
    Exponential,        // unit rate
    ExpTailEquivalent,  // F(x) = 1 - e^{-x} for x >= shift, 0 below
};

struct MarginalModel {
    Family family = Family::Exponential;
    double alpha = 0.0;  // Pareto, BoundedPower
    double omega = 0.0;  // BoundedPower upper endpoint
    double shift = 0.0;  // ExpTailEquivalent

    static MarginalModel pareto(double alpha) {
        if (!(alpha > 0.0)) throw std::invalid_argument("Pareto: alpha must be > 0");
        return {Family::Pareto, alpha, 0.0, 0.0};
    }
    static MarginalModel bounded_power(double alpha, double omega) {
        if (!(alpha > 0.0)) throw std::invalid_argument("BoundedPower: alpha must be > 0");
        return {Family::BoundedPower, alpha, omega, 0.0};
    }
    static MarginalModel exponential() { return {Family::Exponential, 0.0, 0.0, 0.0}; }
    static MarginalModel exp_tail_equivalent(double shift) {
        if (!(shift >= 0.0)) throw std::invalid_argument("ExpTailEquivalent: shift must be >= 0");
        return {Family::ExpTailEquivalent, 0.0, 0.0, shift};
    }
};

struct MdaClass {
    enum class Kind { Frechet, Weibull, Gumbel };
    Kind kind = Kind::Gumbel;
    double alpha = 0.0;  // Frechet, Weibull
    double omega = 0.0;  // Weibull upper endpoint
};

inline double cdf(const MarginalModel& m, double x) {
    switch (m.family) {
        case Family::Pareto:
            if (x <= 1.0) return 0.0;
            return 1.0 - std::pow(x, -m.alpha);
        case Family::BoundedPower:
            if (x <= m.omega - 1.0) return 0.0;
            if (x >= m.omega) return 1.0;
            return 1.0 - std::pow(m.omega - x, m.alpha);
        case Family::Exponential:
            if (x <= 0.0) return 0.0;
            return -std::expm1(-x);
        case Family::ExpTailEquivalent:
            if (x < m.shift) return 0.0;
            return -std::expm1(-x);
    }
    return 0.0;
}

// Generalized inverse F^-(u) = inf{x : F(x) > u}.
inline double quantile(const MarginalModel& m, double u) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("quantile: u must be in (0,1)");
    switch (m.family) {
        case Family::Pareto:
            if (m.alpha == 1.0) return 1.0 / (1.0 - u);
            return std::pow(1.0 - u, -1.0 / m.alpha);
        case Family::BoundedPower:
            return m.omega - std::pow(1.0 - u, 1.0 / m.alpha);
        case Family::Exponential:
            return -std::log1p(-u);
        case Family::ExpTailEquivalent:
            return std::fmax(m.shift, -std::log1p(-u));
    }
    return 0.0;
}

inline double sample_marginal_one(const MarginalModel& m, RandomStream& rng) {
    return quantile(m, rng.uniform());
}

inline std::vector<double> sample_marginal(const MarginalModel& m, RandomStream& rng,
                                           std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample_marginal_one(m, rng));
    return out;
}

inline MdaClass classify_mda(const MarginalModel& m) {
    switch (m.family) {
        case Family::Pareto:
            return {MdaClass::Kind::Frechet, m.alpha, 0.0};
        case Family::BoundedPower:
            return {MdaClass::Kind::Weibull, m.alpha, m.omega};
        case Family::Exponential:
        case Family::ExpTailEquivalent:
            return {MdaClass::Kind::Gumbel, 0.0, 0.0};
    }
    return {MdaClass::Kind::Gumbel, 0.0, 0.0};
}

// Upper endpoint of the support (+inf for unbounded families).
inline double upper_endpoint(const MarginalModel& m) {
    return m.family == Family::BoundedPower ? m.omega
                                            : std::numeric_limits<double>::infinity();
}

}  // namespace tailsim
