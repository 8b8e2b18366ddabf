#pragma once

// Experiment configuration: a flat dotted-key text format,
//   counting.kind = "poisson"
//   horizons = [100, 1000]
// parsed into a validated ExperimentConfig.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tailsim/counting.hpp"
#include "tailsim/dependence.hpp"
#include "tailsim/marginals.hpp"
#include "tailsim/treaties.hpp"

namespace tailsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    BivariateClaimModel claims;
    CountingModel counting;
    TreatySpec treaty1, treaty2;
    std::vector<double> horizons;
    std::int64_t replicates = 1;
    std::int64_t limit_draws = 0;
    std::uint64_t seed = 0;
    std::int64_t truncation_L = 100000;
    std::string out = "report.csv";
};

namespace detail {

struct RawValue {
    enum class Kind { String, Number, List } kind;
    std::string str;
    double num = 0.0;
    std::vector<double> list;
    int line = 0;
};

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config parse error at line " + std::to_string(line) +
                          ": not a number: '" + s + "'");
    }
}

class RawConfig {
  public:
    explicit RawConfig(const std::string& text) {
        int line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string line =
                text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
            pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
            ++line_no;
            // strip comment outside quotes
            bool in_q = false;
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (line[i] == '"') in_q = !in_q;
                if (line[i] == '#' && !in_q) {
                    line.resize(i);
                    break;
                }
            }
            line = trim(line);
            if (line.empty()) continue;
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config parse error at line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key.empty() || val.empty())
                throw ConfigError("config parse error at line " + std::to_string(line_no) +
                                  ": empty key or value");
            if (values_.count(key))
                throw ConfigError("config parse error at line " + std::to_string(line_no) +
                                  ": duplicate key '" + key + "'");
            RawValue rv;
            rv.line = line_no;
            if (val.front() == '"') {
                if (val.size() < 2 || val.back() != '"')
                    throw ConfigError("config parse error at line " + std::to_string(line_no) +
                                      ": unterminated string");
                rv.kind = RawValue::Kind::String;
                rv.str = val.substr(1, val.size() - 2);
            } else if (val.front() == '[') {
                if (val.back() != ']')
                    throw ConfigError("config parse error at line " + std::to_string(line_no) +
                                      ": unterminated list");
                rv.kind = RawValue::Kind::List;
                std::string body = trim(val.substr(1, val.size() - 2));
                std::size_t p = 0;
                while (p < body.size()) {
                    std::size_t comma = body.find(',', p);
                    std::string item = trim(
                        body.substr(p, comma == std::string::npos ? std::string::npos : comma - p));
                    if (!item.empty()) rv.list.push_back(parse_number(item, line_no));
                    p = comma == std::string::npos ? body.size() : comma + 1;
                }
            } else {
                rv.kind = RawValue::Kind::Number;
                rv.str = val;
                rv.num = parse_number(val, line_no);
            }
            values_[key] = rv;
        }
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_string(const std::string& key) {
        const RawValue& rv = require(key);
        if (rv.kind != RawValue::Kind::String)
            throw ConfigError("config key '" + key + "' must be a quoted string");
        return rv.str;
    }
    double get_number(const std::string& key) {
        const RawValue& rv = require(key);
        if (rv.kind != RawValue::Kind::Number)
            throw ConfigError("config key '" + key + "' must be a number");
        return rv.num;
    }
    double get_number_or(const std::string& key, double dflt) {
        return has(key) ? get_number(key) : dflt;
    }
    std::uint64_t get_u64(const std::string& key) {
        const RawValue& rv = require(key);
        if (rv.kind != RawValue::Kind::Number)
            throw ConfigError("config key '" + key + "' must be a number");
        try {
            return std::stoull(rv.str);
        } catch (...) {
            throw ConfigError("config key '" + key + "' must be a nonnegative integer");
        }
    }
    std::vector<double> get_list(const std::string& key) {
        const RawValue& rv = require(key);
        if (rv.kind != RawValue::Kind::List)
            throw ConfigError("config key '" + key + "' must be a [list]");
        return rv.list;
    }

    void check_consumed() const {
        for (const auto& [k, v] : values_)
            if (!consumed_.count(k))
                throw ConfigError("unknown config key '" + k + "' at line " +
                                  std::to_string(v.line));
    }

  private:
    const RawValue& require(const std::string& key) {
        auto it = values_.find(key);
        if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
        consumed_.insert(key);
        return it->second;
    }

    std::map<std::string, RawValue> values_;
    std::set<std::string> consumed_;
};

inline MarginalModel parse_marginal(RawConfig& raw, const std::string& prefix) {
    std::string family = raw.get_string(prefix + ".family");
    if (family == "pareto") return MarginalModel::pareto(raw.get_number(prefix + ".alpha"));
    if (family == "bounded_power")
        return MarginalModel::bounded_power(raw.get_number(prefix + ".alpha"),
                                            raw.get_number(prefix + ".omega"));
    if (family == "exponential") return MarginalModel::exponential();
    if (family == "exp_tail")
        return MarginalModel::exp_tail_equivalent(raw.get_number_or(prefix + ".shift", 0.0));
    throw ConfigError("config key '" + prefix + ".family' has unknown family '" + family + "'");
}

inline DependenceModel parse_dependence(RawConfig& raw) {
    if (!raw.has("dependence.kind")) return DependenceModel::independence();
    std::string kind = raw.get_string("dependence.kind");
    if (kind == "independence") return DependenceModel::independence();
    if (kind == "gumbel_hougaard")
        return DependenceModel::gumbel_hougaard(raw.get_number("dependence.theta"));
    if (kind == "gaussian") return DependenceModel::gaussian(raw.get_number("dependence.rho"));
    throw ConfigError("config key 'dependence.kind' has unknown kind '" + kind + "'");
}

inline CountingModel parse_counting(RawConfig& raw) {
    std::string kind = raw.get_string("counting.kind");
    if (kind == "deterministic")
        return CountingModel::deterministic(raw.get_number("counting.lambda"));
    if (kind == "poisson") return CountingModel::poisson(raw.get_number("counting.lambda"));
    if (kind == "mixed_poisson")
        return CountingModel::mixed_poisson(raw.get_number("counting.gamma_shape"),
                                            raw.get_number("counting.gamma_rate"));
    throw ConfigError("config key 'counting.kind' has unknown kind '" + kind + "'");
}

inline TreatySpec parse_treaty(RawConfig& raw, const std::string& prefix) {
    bool has_scheme = raw.has(prefix + ".scheme");
    bool has_coeffs = raw.has(prefix + ".coeffs");
    if (has_scheme == has_coeffs)
        throw ConfigError("config: exactly one of '" + prefix + ".scheme' and '" + prefix +
                          ".coeffs' must be given");
    if (has_coeffs) {
        try {
            return TreatySpec::from_coeffs(raw.get_list(prefix + ".coeffs"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError("config key '" + prefix + ".coeffs': " + e.what());
        }
    }
    std::string scheme = raw.get_string(prefix + ".scheme");
    double pd = raw.get_number(prefix + ".p");
    int p = static_cast<int>(pd);
    if (pd != p) throw ConfigError("config key '" + prefix + ".p' must be an integer");
    try {
        if (scheme == "lcr") return TreatySpec::lcr(p);
        if (scheme == "ecomor") return TreatySpec::ecomor(p);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config key '" + prefix + ".p': " + e.what());
    }
    throw ConfigError("config key '" + prefix + ".scheme' has unknown scheme '" + scheme + "'");
}

}  // namespace detail

inline ExperimentConfig parse_config(const std::string& text) {
    detail::RawConfig raw(text);
    ExperimentConfig cfg;
    try {
        cfg.claims.marginal_x = detail::parse_marginal(raw, "marginal_x");
        cfg.claims.marginal_y = detail::parse_marginal(raw, "marginal_y");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.claims.dependence = detail::parse_dependence(raw);
    cfg.counting = detail::parse_counting(raw);
    cfg.treaty1 = detail::parse_treaty(raw, "treaty1");
    cfg.treaty2 = detail::parse_treaty(raw, "treaty2");

    cfg.horizons = raw.get_list("horizons");
    if (cfg.horizons.empty()) throw ConfigError("config key 'horizons' must be nonempty");
    double prev = 0.0;
    for (double t : cfg.horizons) {
        if (!(t > 0.0)) throw ConfigError("config key 'horizons' must be positive");
        if (!(t > prev)) throw ConfigError("config key 'horizons' must be strictly ascending");
        prev = t;
    }

    double reps = raw.get_number("replicates");
    if (!(reps >= 1.0)) throw ConfigError("config key 'replicates' must be >= 1");
    cfg.replicates = static_cast<std::int64_t>(reps);

    double ld = raw.get_number_or("limit_draws", 0.0);
    if (ld < 0.0) throw ConfigError("config key 'limit_draws' must be >= 0");
    cfg.limit_draws = static_cast<std::int64_t>(ld);

    cfg.seed = raw.has("seed") ? raw.get_u64("seed") : 0;

    double L = raw.get_number_or("truncation_L", 100000.0);
    std::int64_t maxdepth =
        static_cast<std::int64_t>(std::max(cfg.treaty1.depth(), cfg.treaty2.depth()));
    if (L < static_cast<double>(maxdepth))
        throw ConfigError("config key 'truncation_L' must be >= the treaty depth");
    cfg.truncation_L = static_cast<std::int64_t>(L);

    if (raw.has("out")) cfg.out = raw.get_string("out");

    raw.check_consumed();
    return cfg;
}

}  // namespace tailsim
