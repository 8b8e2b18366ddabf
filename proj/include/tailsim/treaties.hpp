#pragma once

// Generalized linear largest-claims treaties: coefficient schemes, top-m
// order statistics (partial selection plus a streaming selector), treaty
// evaluation and normalization.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

namespace tailsim {

struct InsufficientSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TreatySpec {
    std::vector<double> coeffs;  // k_1..k_p applied to descending order stats
    double c = 0.0;              // sum of coeffs

    static TreatySpec from_coeffs(std::vector<double> k) {
        if (k.empty()) throw std::invalid_argument("TreatySpec: coefficients must be nonempty");
        double c = std::accumulate(k.begin(), k.end(), 0.0);
        return {std::move(k), c};
    }
    // Largest Claim Reinsurance: pay the sum of the p largest claims.
    static TreatySpec lcr(int p) {
        if (p < 1) throw std::invalid_argument("LCR: p must be >= 1");
        return from_coeffs(std::vector<double>(static_cast<std::size_t>(p), 1.0));
    }
    // ECOMOR: excess of the top p-1 claims over the p-th largest; c = 0.
    static TreatySpec ecomor(int p) {
        if (p < 2) throw std::invalid_argument("ECOMOR: p must be >= 2");
        std::vector<double> k(static_cast<std::size_t>(p), 1.0);
        k.back() = -static_cast<double>(p - 1);
        return from_coeffs(std::move(k));
    }

    std::size_t depth() const { return coeffs.size(); }
};

struct OrderStats {
    std::vector<double> values;  // descending
    std::size_t n = 0;           // size of the sample they came from
};

// The m largest values in descending order via partial selection,
// O(n + m log m).
inline OrderStats top_order_statistics(std::span<const double> sample, std::size_t m) {
    if (m == 0 || sample.empty() || m > sample.size())
        throw InsufficientSampleError("top_order_statistics: need 1 <= m <= sample size");
    std::vector<double> work(sample.begin(), sample.end());
    std::nth_element(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(m - 1), work.end(),
                     std::greater<>());
    work.resize(m);
    std::sort(work.begin(), work.end(), std::greater<>());
    return {std::move(work), sample.size()};
}

// Streaming top-m selector; min-heap of the current m largest. Produces the
// same values as top_order_statistics without materializing the sample.
class TopKSelector {
  public:
    explicit TopKSelector(std::size_t m) : m_(m) {
        if (m == 0) throw std::invalid_argument("TopKSelector: m must be >= 1");
    }

    void push(double x) {
        ++n_;
        if (heap_.size() < m_) {
            heap_.push(x);
        } else if (x > heap_.top()) {
            heap_.pop();
            heap_.push(x);
        }
    }

    std::size_t count() const { return n_; }

    OrderStats finish() {
        if (heap_.size() < m_)
            throw InsufficientSampleError("TopKSelector: fewer samples than m");
        std::vector<double> v;
        v.resize(heap_.size());
        for (std::size_t i = heap_.size(); i-- > 0;) {
            v[i] = heap_.top();
            heap_.pop();
        }
        return {std::move(v), n_};
    }

  private:
    std::size_t m_;
    std::size_t n_ = 0;
    std::priority_queue<double, std::vector<double>, std::greater<>> heap_;
};

inline double treaty_value(const OrderStats& stats, const TreatySpec& spec) {
    if (stats.values.size() < spec.depth())
        throw InsufficientSampleError("treaty_value: not enough order statistics");
    double s = 0.0;
    for (std::size_t j = 0; j < spec.depth(); ++j) s += spec.coeffs[j] * stats.values[j];
    return s;
}

// (s - b*c)/a, the Proposition-2 normalization.
inline double normalize_treaty(double s, double a, double b, double c) {
    if (!(a > 0.0)) throw std::invalid_argument("normalize_treaty: a must be > 0");
    return (s - b * c) / a;
}

}  // namespace tailsim
