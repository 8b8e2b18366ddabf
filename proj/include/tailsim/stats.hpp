#pragma once

// Empirical-distribution utilities: ECDF-based Kolmogorov-Smirnov distances,
// streaming moments with compensated accumulation, Pearson correlation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tailsim {

struct EmpiricalSample {
    std::vector<double> values;  // ascending

    static EmpiricalSample from(std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return {std::move(v)};
    }
    std::size_t size() const { return values.size(); }
};

struct KsResult {
    double statistic;
    double critical_99;
    bool pass() const { return statistic < critical_99; }
};

// Sup-norm distance between two ECDFs via a merge scan.
// 99% critical value: 1.628 * sqrt((n+m)/(n*m)).
inline KsResult ks_two_sample(const EmpiricalSample& a, const EmpiricalSample& b) {
    if (a.values.empty() || b.values.empty())
        throw std::invalid_argument("ks_two_sample: samples must be nonempty");
    const auto& x = a.values;
    const auto& y = b.values;
    double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        double t = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= t) ++i;
        while (j < y.size() && y[j] <= t) ++j;
        d = std::fmax(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    return {d, 1.628 * std::sqrt((n + m) / (n * m))};
}

// One-sample KS against a nondecreasing cdf. 99% critical value 1.628/sqrt(n).
inline KsResult ks_one_sample(const EmpiricalSample& a,
                              const std::function<double(double)>& cdf) {
    if (a.values.empty()) throw std::invalid_argument("ks_one_sample: sample must be nonempty");
    double n = static_cast<double>(a.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double f = cdf(a.values[i]);
        d = std::fmax(d, std::fabs(static_cast<double>(i + 1) / n - f));
        d = std::fmax(d, std::fabs(static_cast<double>(i) / n - f));
    }
    return {d, 1.628 / std::sqrt(n)};
}

struct Moments {
    double mean;
    double variance;  // unbiased
    double std_error; // of the mean
};

// One-pass Welford update with Neumaier-compensated accumulators.
inline Moments sample_moments(std::span<const double> v) {
    if (v.size() < 2) throw std::invalid_argument("sample_moments: need n >= 2");
    double mean = 0.0, mean_c = 0.0;
    double m2 = 0.0, m2_c = 0.0;
    double n = 0.0;
    for (double x : v) {
        n += 1.0;
        double d = x - (mean + mean_c);
        double dm = d / n;
        // compensated mean += dm
        double t = mean + dm;
        mean_c += std::fabs(mean) >= std::fabs(dm) ? (mean - t) + dm : (dm - t) + mean;
        mean = t;
        double inc = d * (x - (mean + mean_c));
        double t2 = m2 + inc;
        m2_c += std::fabs(m2) >= std::fabs(inc) ? (m2 - t2) + inc : (inc - t2) + m2;
        m2 = t2;
    }
    double mu = mean + mean_c;
    double var = (m2 + m2_c) / (n - 1.0);
    if (var < 0.0) var = 0.0;
    return {mu, var, std::sqrt(var / n)};
}

inline Moments sample_moments(const EmpiricalSample& a) {
    return sample_moments(std::span<const double>(a.values));
}

inline double pearson_corr(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("pearson_corr: need equal lengths >= 2");
    double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::invalid_argument("pearson_corr: degenerate variance");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace tailsim
