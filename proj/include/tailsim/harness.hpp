#pragma once

// Experiment runner: wires claims, counting, norming, treaties and the limit
// samplers into convergence experiments, with deterministic parallel seeding
// and CSV reports.
//
// Every replicate derives its streams from (master seed, horizon index,
// replicate index) under distinct domain tags; limit draws derive one stream
// per fixed-size block. Output is therefore identical for any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tailsim/config.hpp"
#include "tailsim/counting.hpp"
#include "tailsim/dependence.hpp"
#include "tailsim/limitlaws.hpp"
#include "tailsim/norming.hpp"
#include "tailsim/random.hpp"
#include "tailsim/stats.hpp"
#include "tailsim/treaties.hpp"

namespace tailsim {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReportRow {
    bool is_limit = false;
    double t = 0.0;  // horizon; meaningless when is_limit
    std::int64_t replicate = 0;
    std::optional<std::int64_t> n;
    std::optional<double> z;
    std::optional<double> s1, s2, s1_norm, s2_norm;
    bool censored = false;
};

struct HorizonSummary {
    double t = 0.0;
    std::int64_t replicates = 0;
    std::int64_t censored = 0;
    double censor_rate = 0.0;
    std::optional<double> ks_s1, ks_crit_s1, ks_s2, ks_crit_s2;  // vs limit sample
    std::optional<double> mean_s1, var_s1, mean_s2, var_s2;      // of normalized values
    std::optional<double> corr;
};

struct ExperimentResult {
    std::vector<ReportRow> rows;  // finite-t rows first, then limit rows
    std::vector<HorizonSummary> summaries;
};

namespace detail {

// Run fn(i) for i in [0, total) on `threads` workers, in fixed-size chunks.
// fn must write only to its own slot(s).
template <class Fn>
void parallel_for(std::int64_t total, int threads, Fn fn) {
    if (threads < 1) threads = 1;
    constexpr std::int64_t chunk = 256;
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t begin = next.fetch_add(chunk);
            if (begin >= total) return;
            std::int64_t end = std::min(begin + chunk, total);
            for (std::int64_t i = begin; i < end; ++i) fn(i);
        }
    };
    if (threads == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace detail

inline std::vector<ReportRow> simulate_rows(const ExperimentConfig& cfg, int threads) {
    const std::size_t p = cfg.treaty1.depth(), q = cfg.treaty2.depth();
    const std::int64_t need = static_cast<std::int64_t>(std::max(p, q));
    const std::int64_t H = static_cast<std::int64_t>(cfg.horizons.size());
    const std::int64_t R = cfg.replicates;

    std::vector<MarginalNorming> nx(cfg.horizons.size()), ny(cfg.horizons.size());
    for (std::size_t h = 0; h < cfg.horizons.size(); ++h) {
        nx[h] = norming_constants(cfg.claims.marginal_x, cfg.horizons[h]);
        ny[h] = norming_constants(cfg.claims.marginal_y, cfg.horizons[h]);
    }

    std::vector<ReportRow> rows(static_cast<std::size_t>(H * R));
    detail::parallel_for(H * R, threads, [&](std::int64_t i) {
        std::int64_t h = i / R, r = i % R;
        double t = cfg.horizons[static_cast<std::size_t>(h)];
        RandomStream cnt = derive_stream(cfg.seed, StreamTag::Counting,
                                         static_cast<std::uint64_t>(h),
                                         static_cast<std::uint64_t>(r));
        RandomStream clm = derive_stream(cfg.seed, StreamTag::Claims,
                                         static_cast<std::uint64_t>(h),
                                         static_cast<std::uint64_t>(r));
        CountDraw cd = sample_count_with_mixing(cfg.counting, t, cnt);
        ReportRow row;
        row.t = t;
        row.replicate = r;
        row.n = cd.n;
        row.z = cd.z;
        if (cd.n < need) {
            row.censored = true;
        } else {
            TopKSelector sx(p), sy(q);
            for (std::int64_t k = 0; k < cd.n; ++k) {
                auto [x, y] = sample_claim_pair(cfg.claims, clm);
                sx.push(x);
                sy.push(y);
            }
            double s1 = treaty_value(sx.finish(), cfg.treaty1);
            double s2 = treaty_value(sy.finish(), cfg.treaty2);
            const MarginalNorming& n1 = nx[static_cast<std::size_t>(h)];
            const MarginalNorming& n2 = ny[static_cast<std::size_t>(h)];
            row.s1 = s1;
            row.s2 = s2;
            row.s1_norm = normalize_treaty(s1, n1.a, n1.b, cfg.treaty1.c);
            row.s2_norm = normalize_treaty(s2, n2.a, n2.b, cfg.treaty2.c);
        }
        rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    return rows;
}

// n draws from the treaty limit law (the series representation in the
// Gumbel/Gumbel case, the extremal-variate construction otherwise).
inline std::vector<std::pair<double, double>> draw_limit_sample(const ExperimentConfig& cfg,
                                                                std::int64_t n, int threads) {
    TreatyLimitSpec spec =
        make_treaty_limit_spec(cfg.claims, cfg.counting, cfg.treaty1, cfg.treaty2);
    bool use_series = spec.delta1 == 1 && spec.delta2 == 1;
    std::size_t L = static_cast<std::size_t>(cfg.truncation_L);

    std::vector<std::pair<double, double>> out(static_cast<std::size_t>(n));
    constexpr std::int64_t block = 1024;
    std::int64_t blocks = (n + block - 1) / block;
    detail::parallel_for(blocks, threads, [&](std::int64_t b) {
        RandomStream rng =
            derive_stream(cfg.seed, StreamTag::Limit, static_cast<std::uint64_t>(b));
        std::int64_t end = std::min((b + 1) * block, n);
        for (std::int64_t i = b * block; i < end; ++i) {
            out[static_cast<std::size_t>(i)] =
                use_series ? sample_treaty_limit_series(spec, L, rng) : sample_treaty_limit(spec, rng);
        }
    });
    return out;
}

inline ExperimentResult run_convergence_experiment(const ExperimentConfig& cfg, int threads) {
    ExperimentResult res;
    res.rows = simulate_rows(cfg, threads);

    std::vector<std::pair<double, double>> limit;
    if (cfg.limit_draws > 0) limit = draw_limit_sample(cfg, cfg.limit_draws, threads);

    std::vector<double> lim1, lim2;
    lim1.reserve(limit.size());
    lim2.reserve(limit.size());
    for (auto& [a, b] : limit) {
        lim1.push_back(a);
        lim2.push_back(b);
    }
    EmpiricalSample elim1, elim2;
    if (!limit.empty()) {
        elim1 = EmpiricalSample::from(lim1);
        elim2 = EmpiricalSample::from(lim2);
    }

    const std::int64_t R = cfg.replicates;
    for (std::size_t h = 0; h < cfg.horizons.size(); ++h) {
        HorizonSummary s;
        s.t = cfg.horizons[h];
        s.replicates = R;
        std::vector<double> v1, v2;
        v1.reserve(static_cast<std::size_t>(R));
        v2.reserve(static_cast<std::size_t>(R));
        for (std::int64_t r = 0; r < R; ++r) {
            const ReportRow& row = res.rows[h * static_cast<std::size_t>(R) +
                                            static_cast<std::size_t>(r)];
            if (row.censored) {
                ++s.censored;
            } else {
                v1.push_back(*row.s1_norm);
                v2.push_back(*row.s2_norm);
            }
        }
        s.censor_rate = static_cast<double>(s.censored) / static_cast<double>(R);
        if (v1.size() >= 2) {
            Moments m1 = sample_moments(std::span<const double>(v1));
            Moments m2 = sample_moments(std::span<const double>(v2));
            s.mean_s1 = m1.mean;
            s.var_s1 = m1.variance;
            s.mean_s2 = m2.mean;
            s.var_s2 = m2.variance;
            try {
                s.corr = pearson_corr(v1, v2);
            } catch (const std::invalid_argument&) {
                // degenerate variance; leave empty
            }
            if (!limit.empty()) {
                KsResult k1 = ks_two_sample(EmpiricalSample::from(v1), elim1);
                KsResult k2 = ks_two_sample(EmpiricalSample::from(v2), elim2);
                s.ks_s1 = k1.statistic;
                s.ks_crit_s1 = k1.critical_99;
                s.ks_s2 = k2.statistic;
                s.ks_crit_s2 = k2.critical_99;
            }
        }
        res.summaries.push_back(std::move(s));
    }

    // Append limit draws as rows keyed "limit".
    for (std::size_t i = 0; i < limit.size(); ++i) {
        ReportRow row;
        row.is_limit = true;
        row.replicate = static_cast<std::int64_t>(i);
        row.s1_norm = limit[i].first;
        row.s2_norm = limit[i].second;
        res.rows.push_back(std::move(row));
    }
    return res;
}

// ---- CSV serialization -----------------------------------------------------

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr const char* report_csv_header =
    "t,replicate,N,Z,S1,S2,S1_norm,S2_norm,censored";

inline std::string serialize_row(const ReportRow& r) {
    auto opt = [](const std::optional<double>& v) { return v ? fmt_g17(*v) : std::string(); };
    std::string line = r.is_limit ? "limit" : fmt_g17(r.t);
    line += ',';
    line += std::to_string(r.replicate);
    line += ',';
    line += r.n ? std::to_string(*r.n) : std::string();
    line += ',';
    line += opt(r.z);
    line += ',';
    line += opt(r.s1);
    line += ',';
    line += opt(r.s2);
    line += ',';
    line += opt(r.s1_norm);
    line += ',';
    line += opt(r.s2_norm);
    line += ',';
    line += r.censored ? "true" : "false";
    return line;
}

inline void write_rows_csv(const std::vector<ReportRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << report_csv_header << '\n';
    for (const auto& r : rows) out << serialize_row(r) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline void write_summary_csv(const std::vector<HorizonSummary>& summaries,
                              const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    auto opt = [](const std::optional<double>& v) { return v ? fmt_g17(*v) : std::string(); };
    out << "t,replicates,censored,censor_rate,ks_s1,ks_crit_s1,ks_s2,ks_crit_s2,"
           "mean_s1_norm,var_s1_norm,mean_s2_norm,var_s2_norm,corr_s1_s2\n";
    for (const auto& s : summaries) {
        out << fmt_g17(s.t) << ',' << s.replicates << ',' << s.censored << ','
            << fmt_g17(s.censor_rate) << ',' << opt(s.ks_s1) << ',' << opt(s.ks_crit_s1) << ','
            << opt(s.ks_s2) << ',' << opt(s.ks_crit_s2) << ',' << opt(s.mean_s1) << ','
            << opt(s.var_s1) << ',' << opt(s.mean_s2) << ',' << opt(s.var_s2) << ','
            << opt(s.corr) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

// Rows to `path`, summary (when present) to `path`.summary.csv.
inline void write_csv(const std::vector<ReportRow>& rows,
                      const std::vector<HorizonSummary>& summaries, const std::string& path) {
    write_rows_csv(rows, path);
    if (!summaries.empty()) write_summary_csv(summaries, path + ".summary.csv");
}

// Inverse of write_rows_csv, used for round-trip checks and downstream tools.
inline std::vector<ReportRow> parse_report_csv(const std::string& text) {
    std::vector<ReportRow> rows;
    std::size_t pos = 0;
    bool first = true;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line =
            text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        if (line.empty()) continue;
        if (first) {
            first = false;
            if (line != report_csv_header)
                throw IoError("report CSV: unexpected header '" + line + "'");
            continue;
        }
        std::vector<std::string> f;
        std::size_t p2 = 0;
        for (int k = 0; k < 9; ++k) {
            std::size_t comma = line.find(',', p2);
            if (k < 8 && comma == std::string::npos)
                throw IoError("report CSV: expected 9 fields: '" + line + "'");
            f.push_back(line.substr(p2, comma == std::string::npos ? std::string::npos
                                                                   : comma - p2));
            p2 = comma == std::string::npos ? line.size() : comma + 1;
        }
        ReportRow r;
        if (f[0] == "limit") {
            r.is_limit = true;
        } else {
            r.t = std::stod(f[0]);
        }
        r.replicate = std::stoll(f[1]);
        if (!f[2].empty()) r.n = std::stoll(f[2]);
        auto optd = [](const std::string& s) {
            return s.empty() ? std::optional<double>() : std::optional<double>(std::stod(s));
        };
        r.z = optd(f[3]);
        r.s1 = optd(f[4]);
        r.s2 = optd(f[5]);
        r.s1_norm = optd(f[6]);
        r.s2_norm = optd(f[7]);
        r.censored = f[8] == "true";
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace tailsim
