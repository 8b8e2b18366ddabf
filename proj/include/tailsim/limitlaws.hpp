#pragma once

// The limiting objects: H-extremal variates, their stochastic
// representations, and the treaty limit laws.
//
// Three independently coded Gumbel-variate constructions are kept on
// purpose: the Poisson-arrival reference (-ln Gamma_j), the spacings route
// (E_j/j increments above an exact -ln Gamma(m,1) floor), and the truncated
// series route. The series uses the corrected component representation
//   X_j  =d  E_j/j + sum_{l>j} (E_l - 1)/l + K_j,
// whose leading divisor restores consistency with the treaty series under a
// unit coefficient vector; the uncorrected moments are exposed
// side by side for comparison.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tailsim/counting.hpp"
#include "tailsim/dependence.hpp"
#include "tailsim/marginals.hpp"
#include "tailsim/math.hpp"
#include "tailsim/random.hpp"
#include "tailsim/treaties.hpp"

namespace tailsim {

struct ExtremalVariate {
    std::vector<double> values;  // strictly decreasing
    MdaClass law;
};

struct ArrivalTimes {
    std::vector<double> gammas;  // strictly increasing cumulative exponentials
};

// K_i = K - sum_{l=1}^i 1/l (ascending summation); K_0 is Euler-Mascheroni.
inline double harmonic_K(int i) {
    if (i < 0) throw std::domain_error("harmonic_K: i must be >= 0");
    return euler_gamma - harmonic(i);
}

inline ArrivalTimes sample_arrival_times(std::size_t m, RandomStream& rng) {
    ArrivalTimes at;
    at.gammas.reserve(m);
    double g = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        g += draw_exponential(rng);
        at.gammas.push_back(g);
    }
    return at;
}

// Reference sampler: X_j = -ln Gamma_j with Gamma_j the arrival times of a
// unit Poisson process. Exact for every m, no truncation.
inline ExtremalVariate sample_gumbel_extremal(std::size_t m, RandomStream& rng) {
    if (m == 0) throw std::invalid_argument("sample_gumbel_extremal: m must be >= 1");
    ArrivalTimes at = sample_arrival_times(m, rng);
    ExtremalVariate v;
    v.law = {MdaClass::Kind::Gumbel, 0.0, 0.0};
    v.values.reserve(m);
    for (double g : at.gammas) v.values.push_back(-std::log(g));
    return v;
}

// Monotone marginal transform of a Gumbel variate to the Frechet or Weibull
// standard law; ordering is preserved.
inline ExtremalVariate transform_extremal(const ExtremalVariate& g, const MdaClass& target) {
    if (g.law.kind != MdaClass::Kind::Gumbel)
        throw std::invalid_argument("transform_extremal: input must be a Gumbel variate");
    ExtremalVariate out;
    out.law = target;
    out.values.reserve(g.values.size());
    switch (target.kind) {
        case MdaClass::Kind::Frechet:
            for (double x : g.values) out.values.push_back(std::exp(x / target.alpha));
            break;
        case MdaClass::Kind::Weibull:
            for (double x : g.values) out.values.push_back(-std::exp(-x / target.alpha));
            break;
        case MdaClass::Kind::Gumbel:
            out.values = g.values;
            break;
    }
    return out;
}

// ln h_m(x) for the Gumbel limit: -e^{-x_m} - sum_i x_i on the strictly
// decreasing cone.
inline double extremal_log_density(std::span<const double> x) {
    if (x.empty()) throw std::domain_error("extremal_log_density: empty vector");
    double sum = x[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] < x[i - 1]))
            throw std::domain_error("extremal_log_density: components must be strictly decreasing");
        sum += x[i];
    }
    return -std::exp(-x.back()) - sum;
}

// Spacings route: the lowest component is an exact -ln Gamma(m,1) draw, then
// independent increments E_j/j are stacked on top.
inline ExtremalVariate sample_spacings_representation(std::size_t m, RandomStream& rng) {
    if (m == 0) throw std::invalid_argument("sample_spacings_representation: m must be >= 1");
    ExtremalVariate v;
    v.law = {MdaClass::Kind::Gumbel, 0.0, 0.0};
    v.values.assign(m, 0.0);
    v.values[m - 1] = -std::log(draw_gamma(static_cast<double>(m), 1.0, rng));
    for (std::size_t j = m - 1; j-- > 0;)
        v.values[j] = v.values[j + 1] + draw_exponential(rng) / static_cast<double>(j + 1);
    return v;
}

// Truncated series route for the joint components (corrected form).
// Truncation tail has mean zero and variance sum_{l>L} 1/l^2 < 1/L.
inline std::vector<double> sample_series_components(std::size_t m, std::size_t L,
                                                    RandomStream& rng) {
    if (m == 0) throw std::invalid_argument("sample_series_components: m must be >= 1");
    if (L < m) throw std::invalid_argument("sample_series_components: L must be >= m");
    std::vector<double> lead(m);
    for (std::size_t j = 0; j < m; ++j) lead[j] = draw_exponential(rng);
    double tail = 0.0;  // sum_{l=m+1}^{L} (E_l - 1)/l
    for (std::size_t l = m + 1; l <= L; ++l)
        tail += (draw_exponential(rng) - 1.0) / static_cast<double>(l);
    std::vector<double> x(m);
    // Walk upward so each component adds the (E_l - 1)/l terms below it.
    double partial = tail;
    for (std::size_t j = m; j-- > 0;) {
        x[j] = lead[j] / static_cast<double>(j + 1) + partial + harmonic_K(static_cast<int>(j + 1));
        partial += (lead[j] - 1.0) / static_cast<double>(j + 1);
    }
    return x;
}

struct TreatyLimitSpec {
    TreatySpec spec1;
    TreatySpec spec2;
    double gamma1 = 0.0, gamma2 = 0.0;
    int delta1 = 0, delta2 = 0;
    CountingModel mixing;          // source of Z
    std::vector<double> kbar1, kbar2;  // kbar_l = (sum_{j<=l} k_j)/l
    double Kp = 0.0, Kq = 0.0;
};

inline std::vector<double> cumulative_mean_coeffs(const TreatySpec& spec) {
    std::vector<double> kbar(spec.depth());
    double run = 0.0;
    for (std::size_t l = 0; l < spec.depth(); ++l) {
        run += spec.coeffs[l];
        kbar[l] = run / static_cast<double>(l + 1);
    }
    return kbar;
}

inline TreatyLimitSpec make_treaty_limit_spec(TreatySpec spec1, TreatySpec spec2, double gamma1,
                                              double gamma2, int delta1, int delta2,
                                              CountingModel mixing) {
    TreatyLimitSpec s;
    s.kbar1 = cumulative_mean_coeffs(spec1);
    s.kbar2 = cumulative_mean_coeffs(spec2);
    s.Kp = harmonic_K(static_cast<int>(spec1.depth()));
    s.Kq = harmonic_K(static_cast<int>(spec2.depth()));
    s.spec1 = std::move(spec1);
    s.spec2 = std::move(spec2);
    s.gamma1 = gamma1;
    s.gamma2 = gamma2;
    s.delta1 = delta1;
    s.delta2 = delta2;
    s.mixing = mixing;
    return s;
}

// Build the limit spec for a concrete claim/counting model. Rejects claim
// models whose limit H is not a product law: only independent coordinate
// variates are sampled here.
inline TreatyLimitSpec make_treaty_limit_spec(const BivariateClaimModel& claims,
                                              const CountingModel& counting, TreatySpec spec1,
                                              TreatySpec spec2) {
    if (!claims.dependence.asymptotically_independent())
        throw std::invalid_argument(
            "make_treaty_limit_spec: limit H is not a product law for this dependence model");
    MdaClass m1 = classify_mda(claims.marginal_x);
    MdaClass m2 = classify_mda(claims.marginal_y);
    auto gamma_of = [](const MdaClass& m) {
        switch (m.kind) {
            case MdaClass::Kind::Frechet: return 1.0 / m.alpha;
            case MdaClass::Kind::Weibull: return -1.0 / m.alpha;
            case MdaClass::Kind::Gumbel: return 0.0;
        }
        return 0.0;
    };
    return make_treaty_limit_spec(std::move(spec1), std::move(spec2), gamma_of(m1), gamma_of(m2),
                                  m1.kind == MdaClass::Kind::Gumbel ? 1 : 0,
                                  m2.kind == MdaClass::Kind::Gumbel ? 1 : 0, counting);
}

namespace detail {

inline MdaClass coordinate_law(double gamma, int delta) {
    if (delta == 1) return {MdaClass::Kind::Gumbel, 0.0, 0.0};
    if (gamma > 0.0) return {MdaClass::Kind::Frechet, 1.0 / gamma, 0.0};
    if (gamma < 0.0) return {MdaClass::Kind::Weibull, -1.0 / gamma, 0.0};
    return {MdaClass::Kind::Gumbel, 0.0, 0.0};
}

inline double limit_coordinate(const TreatySpec& spec, double gamma, int delta, double z,
                               RandomStream& rng) {
    ExtremalVariate g = sample_gumbel_extremal(spec.depth(), rng);
    ExtremalVariate v = transform_extremal(g, coordinate_law(gamma, delta));
    double s = 0.0;
    for (std::size_t j = 0; j < spec.depth(); ++j) s += spec.coeffs[j] * v.values[j];
    return std::pow(z, gamma) * s + spec.c * static_cast<double>(delta) * std::log(z);
}

}  // namespace detail

// One draw of the joint treaty limit: a single shared Z, independent
// coordinate variates (product H only).
inline std::pair<double, double> sample_treaty_limit(const TreatyLimitSpec& spec,
                                                     RandomStream& rng) {
    double z = sample_mixing_Z(spec.mixing, rng);
    double s1 = detail::limit_coordinate(spec.spec1, spec.gamma1, spec.delta1, z, rng);
    double s2 = detail::limit_coordinate(spec.spec2, spec.gamma2, spec.delta2, z, rng);
    return {s1, s2};
}

// One draw of the Gumbel/Gumbel series representation, truncated at L terms.
inline std::pair<double, double> sample_treaty_limit_series(const TreatyLimitSpec& spec, std::size_t L,
                                                     RandomStream& rng) {
    if (spec.delta1 != 1 || spec.delta2 != 1)
        throw std::invalid_argument("sample_treaty_limit_series: both marginals must be Gumbel-class");
    if (L < spec.spec1.depth() || L < spec.spec2.depth())
        throw std::invalid_argument("sample_treaty_limit_series: L must be >= treaty depth");
    double z = sample_mixing_Z(spec.mixing, rng);
    double lnz = std::log(z);
    auto coordinate = [&](const TreatySpec& ts, const std::vector<double>& kbar, double Kp) {
        std::size_t p = ts.depth();
        double head = 0.0;
        for (std::size_t l = 0; l < p; ++l) head += kbar[l] * draw_exponential(rng);
        double tail = 0.0;
        for (std::size_t l = p + 1; l <= L; ++l)
            tail += (draw_exponential(rng) - 1.0) / static_cast<double>(l);
        return head + ts.c * (tail + lnz + Kp);
    };
    double s1 = coordinate(spec.spec1, spec.kbar1, spec.Kp);
    double s2 = coordinate(spec.spec2, spec.kbar2, spec.Kq);
    return {s1, s2};
}

// Corrected mean/variance of the i-th Gumbel extremal component:
// (-psi(i), psi'(i)) expressed through harmonic sums.
inline std::pair<double, double> extremal_moments(int i) {
    if (i < 1) throw std::domain_error("extremal_moments: i must be >= 1");
    double mean = euler_gamma - harmonic(i - 1);
    double var = pi_sq_over_6;
    for (int l = 1; l < i; ++l) var -= 1.0 / (static_cast<double>(l) * l);
    return {mean, var};
}

// The uncorrected values (1 + K_i, 1 + sum_{l>i} 1/l^2); they agree
// with extremal_moments only at i = 1.
inline std::pair<double, double> extremal_moments_uncorrected(int i) {
    if (i < 1) throw std::domain_error("extremal_moments_uncorrected: i must be >= 1");
    double mean = 1.0 + harmonic_K(i);
    double var = pi_sq_over_6 + 1.0;
    for (int l = 1; l <= i; ++l) var -= 1.0 / (static_cast<double>(l) * l);
    return {mean, var};
}

}  // namespace tailsim
