#pragma once

// Scalar numerics shared across the library: normal cdf/quantile, the
// bivariate normal cdf (Genz's method), adaptive Simpson quadrature and a
// few constants.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>

namespace tailsim {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double pi_sq_over_6 = 1.6449340668482264364724151666460252;

// H_n = sum_{l=1}^n 1/l, summed in ascending order.
inline double harmonic(int n) {
    double h = 0.0;
    for (int l = 1; l <= n; ++l) h += 1.0 / l;
    return h;
}

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.70710678118654752440084436210485);
}

inline double normal_pdf(double x) {
    return 0.39894228040143267793994605993438 * std::exp(-0.5 * x * x);
}

// Acklam's rational approximation plus one Halley step; absolute error is
// at the double rounding level over (0,1).
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must be in (0,1)");

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Halley refinement against erfc.
    double e = normal_cdf(x) - p;
    double u = e / normal_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

namespace detail {

template <class F>
double simpson_recurse(const F& f, double a, double fa, double b, double fb, double m, double fm,
                       double whole, double tol, int depth);

}  // namespace detail

// Adaptive Simpson on [a,b] with absolute tolerance tol.
template <class F>
double integrate(const F& f, double a, double b, double tol = 1e-12, int max_depth = 48) {
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// P(X > dh, Y > dk) for a standard bivariate normal pair with correlation r.
// Moderate correlations use the Drezner-Wesolowsky Gauss-Legendre scheme;
// |r| >= 0.925 integrates the exact conditional form
//   int_h^inf phi(x) Phi((r x - k)/sqrt(1-r^2)) dx
// adaptively, which avoids the delicate expansion near |r| = 1.
inline double bvn_upper(double dh, double dk, double r) {
    static constexpr double w[3][10] = {
        {0.1713244923791705, 0.3607615730481384, 0.4679139345726904, 0, 0, 0, 0, 0, 0, 0},
        {0.04717533638651177, 0.1069393259953183, 0.1600783285433464, 0.2031674267230659,
         0.2334925365383547, 0.2491470458134029, 0, 0, 0, 0},
        {0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
         0.1019301198172404, 0.1181945319615184, 0.1316886384491766, 0.1420961093183821,
         0.1491729864726037, 0.1527533871307259}};
    static constexpr double xg[3][10] = {
        {-0.9324695142031522, -0.6612093864662647, -0.2386191860831969, 0, 0, 0, 0, 0, 0, 0},
        {-0.9815606342467191, -0.9041172563704750, -0.7699026741943050, -0.5873179542866171,
         -0.3678314989981802, -0.1252334085114692, 0, 0, 0, 0},
        {-0.9931285991850949, -0.9639719272779138, -0.9122344282513259, -0.8391169718222188,
         -0.7463319064601508, -0.6360536807265150, -0.5108670019508271, -0.3737060887154196,
         -0.2277858511416451, -0.07652652113349733}};
    constexpr double twopi = 6.283185307179586476925286766559;

    int ng, lg;
    double ar = std::fabs(r);
    if (ar < 0.3) {
        ng = 0; lg = 3;
    } else if (ar < 0.75) {
        ng = 1; lg = 6;
    } else {
        ng = 2; lg = 10;
    }

    double h = dh, k = dk, hk = h * k, bvn = 0.0;
    if (ar < 0.925) {
        if (ar > 0.0) {
            double hs = 0.5 * (h * h + k * k);
            double asr = std::asin(r);
            for (int i = 0; i < lg; ++i) {
                for (int is = -1; is <= 1; is += 2) {
                    double sn = std::sin(asr * (is * xg[ng][i] + 1.0) * 0.5);
                    bvn += w[ng][i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn = bvn * asr / (2.0 * twopi);
        }
        bvn += normal_cdf(-h) * normal_cdf(-k);
    } else if (ar >= 1.0) {
        if (r > 0.0) return normal_cdf(-std::fmax(h, k));
        return k < -h ? normal_cdf(-k) - normal_cdf(h) : 0.0;
    } else {
        double s = std::sqrt(1.0 - r * r);
        double lo = std::fmax(h, -9.5), hi = 9.5;
        if (lo >= hi) return 0.0;
        bvn = integrate(
            [&](double x) { return normal_pdf(x) * normal_cdf((r * x - k) / s); }, lo, hi,
            1e-14, 60);
    }
    return bvn;
}

// P(X <= x, Y <= y).
inline double bvn_cdf(double x, double y, double r) {
    return bvn_upper(-x, -y, r);
}

namespace detail {

template <class F>
double simpson_recurse(const F& f, double a, double fa, double b, double fb, double m, double fm,
                       double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

}  // namespace tailsim
