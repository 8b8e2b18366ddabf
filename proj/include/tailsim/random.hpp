#pragma once

// Random streams and the scalar samplers built on them.
//
// Every consumer owns its stream; parallel work derives one stream per
// (tag, index pair) from the master seed with a splitmix64-style hash, so
// results never depend on scheduling.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "tailsim/math.hpp"

namespace tailsim {

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0,1); never returns 0 or 1.
    double uniform() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Domain-separation tags for the streams used inside one experiment.
enum class StreamTag : std::uint64_t {
    Counting = 0x636f756e74ull,
    Claims = 0x636c61696dull,
    Limit = 0x6c696d6974ull,
    Aux = 0x617578ull,
};

// Counter-based derivation: the derived seed is a hash of
// (master, tag, a, b). Used as (horizon index, replicate index) for finite-t
// work and (block index, 0) for limit draws.
inline RandomStream derive_stream(std::uint64_t master, StreamTag tag, std::uint64_t a = 0,
                                  std::uint64_t b = 0) {
    std::uint64_t h = mix64(master ^ mix64(static_cast<std::uint64_t>(tag)));
    h = mix64(h ^ mix64(a + 0x632BE59BD9B4E019ull));
    h = mix64(h ^ mix64(b + 0xD1B54A32D192ED03ull));
    return RandomStream(h);
}

inline double draw_exponential(RandomStream& rng) { return -std::log(rng.uniform()); }

inline double draw_standard_normal(RandomStream& rng) { return normal_quantile(rng.uniform()); }

// Marsaglia-Tsang squeeze; shape < 1 handled by the usual boost.
inline double draw_gamma(double shape, double rate, RandomStream& rng) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::domain_error("draw_gamma: shape and rate must be positive");
    if (shape < 1.0) {
        double g = draw_gamma(shape + 1.0, 1.0, rng);
        return g * std::pow(rng.uniform(), 1.0 / shape) / rate;
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = draw_standard_normal(rng);
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = rng.uniform();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

// Poisson draw: sequential inversion below mean 10 (bit-exact across
// platforms), Hormann's PTRS transformed rejection above.
inline std::int64_t draw_poisson(double mean, RandomStream& rng) {
    if (!(mean >= 0.0)) throw std::domain_error("draw_poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 10.0) {
        double u = rng.uniform();
        double p = std::exp(-mean);
        double cum = p;
        std::int64_t k = 0;
        while (u > cum && k < 1000) {
            ++k;
            p *= mean / static_cast<double>(k);
            cum += p;
        }
        return k;
    }
    double b = 0.931 + 2.53 * std::sqrt(mean);
    double a = -0.059 + 0.02483 * b;
    double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double v_r = 0.9277 - 3.6224 / (b - 2.0);
    double log_mean = std::log(mean);
    for (;;) {
        double u = rng.uniform() - 0.5;
        double v = rng.uniform();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_mean - mean - std::lgamma(k + 1.0))
            return static_cast<std::int64_t>(kf);
    }
}

// Positive alpha-stable with Laplace transform exp(-s^alpha), alpha in (0,1).
// Kanter's construction via Zolotarev's function.
inline double draw_positive_stable(double alpha, RandomStream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("draw_positive_stable: alpha must be in (0,1)");
    constexpr double pi = 3.141592653589793238462643383279;
    double w = pi * rng.uniform();
    double e = draw_exponential(rng);
    double a = std::pow(std::sin(alpha * w), alpha / (1.0 - alpha)) * std::sin((1.0 - alpha) * w) /
               std::pow(std::sin(w), 1.0 / (1.0 - alpha));
    return std::pow(a / e, (1.0 - alpha) / alpha);
}

}  // namespace tailsim
