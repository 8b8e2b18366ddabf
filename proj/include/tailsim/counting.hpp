#pragma once

// Claim-count processes with N(t)/t converging in distribution to an almost
// surely positive limit Z. Mixed Poisson conditions on a Gamma intensity per
// replicate, which makes Z nondegenerate and observable.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "tailsim/random.hpp"

namespace tailsim {

enum class CountingKind { Deterministic, HomogeneousPoisson, MixedPoisson };

struct CountingModel {
    CountingKind kind = CountingKind::HomogeneousPoisson;
    double lambda = 1.0;       // Deterministic, HomogeneousPoisson
    double gamma_shape = 1.0;  // MixedPoisson
    double gamma_rate = 1.0;   // MixedPoisson

    static CountingModel deterministic(double lambda) {
        if (!(lambda > 0.0)) throw std::invalid_argument("Deterministic: lambda must be > 0");
        return {CountingKind::Deterministic, lambda, 1.0, 1.0};
    }
    static CountingModel poisson(double lambda) {
        if (!(lambda > 0.0))
            throw std::invalid_argument("HomogeneousPoisson: lambda must be > 0");
        return {CountingKind::HomogeneousPoisson, lambda, 1.0, 1.0};
    }
    static CountingModel mixed_poisson(double shape, double rate) {
        if (!(shape > 0.0 && rate > 0.0))
            throw std::invalid_argument("MixedPoisson: Gamma shape and rate must be > 0");
        return {CountingKind::MixedPoisson, 0.0, shape, rate};
    }
};

struct CountDraw {
    std::int64_t n;  // N(t)
    double z;        // realized limit variable for this replicate
};

// Coupled draw: the Z returned here is the same realization that drove N(t),
// so finite-horizon and limit quantities are comparable pathwise.
inline CountDraw sample_count_with_mixing(const CountingModel& m, double t, RandomStream& rng) {
    if (!(t > 0.0)) throw std::domain_error("sample_count: t must be > 0");
    switch (m.kind) {
        case CountingKind::Deterministic:
            return {static_cast<std::int64_t>(std::floor(m.lambda * t)), m.lambda};
        case CountingKind::HomogeneousPoisson:
            return {draw_poisson(m.lambda * t, rng), m.lambda};
        case CountingKind::MixedPoisson: {
            double z = draw_gamma(m.gamma_shape, m.gamma_rate, rng);
            return {draw_poisson(z * t, rng), z};
        }
    }
    return {0, 0.0};
}

inline std::int64_t sample_count(const CountingModel& m, double t, RandomStream& rng) {
    return sample_count_with_mixing(m, t, rng).n;
}

inline double sample_mixing_Z(const CountingModel& m, RandomStream& rng) {
    switch (m.kind) {
        case CountingKind::Deterministic:
        case CountingKind::HomogeneousPoisson:
            return m.lambda;
        case CountingKind::MixedPoisson:
            return draw_gamma(m.gamma_shape, m.gamma_rate, rng);
    }
    return 0.0;
}

}  // namespace tailsim
