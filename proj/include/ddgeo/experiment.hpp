#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "ddgeo/curve.hpp"
#include "ddgeo/distances.hpp"
#include "ddgeo/errors.hpp"
#include "ddgeo/parse.hpp"
#include "ddgeo/subsets.hpp"

namespace ddgeo {

using json = nlohmann::ordered_json;

enum class SamplingMode { UniformRandom, ArithmeticProgression, UserFile };
enum class BackendKind { Exact, Float };

struct ExperimentConfig {
    std::string curve_spec;
    std::vector<std::size_t> n_list;  // strictly increasing
    SamplingMode sampling = SamplingMode::UniformRandom;
    std::string params_file;  // for SamplingMode::UserFile
    std::uint64_t seed = 1;
    BackendKind backend = BackendKind::Exact;
    int digits = kDefaultQuantDigits;
    double pi_const = 4.0;
    int trials = 20;
    std::size_t classify_samples = 200;
    int workers = 1;
    bool timing = false;  // measured wall time breaks byte-reproducibility
};

struct ExperimentRow {
    std::size_t n = 0;
    std::int64_t distinct = 0;
    std::int64_t energy_offdiag = 0;
    std::int64_t isosceles = 0;
    BigInt cs_num = 0;
    BigInt cs_den = 1;
    std::size_t subset_size = 0;
    std::int64_t wall_time_ms = 0;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root mean square in log space
    bool valid = false;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    SlopeFit distinct_fit;
    SlopeFit subset_fit;
    std::string classification;
};

namespace detail {

// Denominator bound for uniform rational parameter sampling.
inline constexpr std::uint64_t kSampleGrid = 1000000;

// n distinct parameters in the curve's sampling window. The stream depends
// only on the seed, so exact and float backends see the same rationals.
inline std::vector<Rational> sample_parameters(const ParamCurve& curve, std::size_t n,
                                               SamplingMode mode, std::uint64_t seed,
                                               const std::vector<Rational>& file_values) {
    const auto [lo, hi] = sampling_window(curve);
    std::vector<Rational> out;
    out.reserve(n);
    switch (mode) {
        case SamplingMode::UniformRandom: {
            Rng rng(seed);
            std::set<std::uint64_t> used;
            while (used.size() < n) used.insert(1 + rng.below(kSampleGrid - 1));
            // Draw order does not matter downstream; keep them sorted.
            for (std::uint64_t j : used)
                out.push_back(lo + (hi - lo) * Rational(BigInt(j), BigInt(kSampleGrid)));
            break;
        }
        case SamplingMode::ArithmeticProgression: {
            for (std::size_t k = 1; k <= n; ++k)
                out.push_back(lo + (hi - lo) * Rational(BigInt(k), BigInt(n + 1)));
            break;
        }
        case SamplingMode::UserFile: {
            if (file_values.size() < n)
                throw TooSmall("parameter file holds fewer values than requested n");
            out.assign(file_values.begin(), file_values.begin() + static_cast<long>(n));
            break;
        }
    }
    return out;
}

template <class S>
ExperimentRow run_row(const ParamCurve& curve, const std::vector<Rational>& rational_params,
                      const ExperimentConfig& cfg, std::uint64_t row_seed) {
    const auto t0 = std::chrono::steady_clock::now();
    ParamSet<S> set(curve, to_backend<S>(rational_params));
    const auto h = build_histogram(set.points(), cfg.digits);
    ExperimentRow row;
    row.n = set.size();
    row.distinct = distinct_count(h);
    row.energy_offdiag = energy_q(h, EnergyMode::OffDiagonal);
    row.isosceles = isosceles_triples(set.points(), cfg.digits);
    const Rational cs = cs_lower_bound(h);
    row.cs_num = cs.num();
    row.cs_den = cs.den();
    row.subset_size =
        randomized_subset(set, cfg.pi_const, cfg.trials, row_seed, cfg.digits).subset.size();
    if (cfg.timing) {
        const auto t1 = std::chrono::steady_clock::now();
        row.wall_time_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    }
    return row;
}

inline SlopeFit fit_loglog(const std::vector<double>& ns, const std::vector<double>& ys) {
    SlopeFit fit;
    if (ns.size() < 2) return fit;
    std::vector<double> xs, ls;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        xs.push_back(std::log(ns[i]));
        ls.push_back(std::log(std::max(1.0, ys[i])));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ls[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ls[i];
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0.0) return fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ls[i] - (fit.slope * xs[i] + fit.intercept);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / m);
    fit.valid = true;
    return fit;
}

}  // namespace detail

// Runs every size in the config, in parallel when workers > 1. Row seeds are
// derived from (seed, row index), so output is identical for any worker
// count.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.n_list.empty()) throw TooSmall("experiment needs at least one size");
    for (std::size_t i = 1; i < cfg.n_list.size(); ++i)
        if (cfg.n_list[i] <= cfg.n_list[i - 1])
            throw InvalidScalar("n-list must be strictly increasing");
    if (cfg.workers < 1) throw InvalidScalar("workers must be positive");

    const ParamCurve curve = parse_curve_spec(cfg.curve_spec);
    std::vector<Rational> file_values;
    if (cfg.sampling == SamplingMode::UserFile) {
        std::ifstream in(cfg.params_file);
        if (!in) throw Error("cannot open parameter file " + cfg.params_file);
        file_values = parse_reals_file(in);
    }

    Rng root(cfg.seed);
    ExperimentResult result;
    result.rows.resize(cfg.n_list.size());

    const auto classify_report =
        cfg.backend == BackendKind::Exact
            ? classify_curve<Rational>(curve, cfg.classify_samples, root.derive(0xc1a55).next())
            : classify_curve<double>(curve, cfg.classify_samples, root.derive(0xc1a55).next());
    result.classification = classify_report.verdict == CurveVerdict::DegenerateCandidate
                                ? "DegenerateCandidate"
                                : "General";

    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= cfg.n_list.size()) return;
            try {
                const std::uint64_t row_seed = root.derive(i + 1).next();
                const auto params = detail::sample_parameters(curve, cfg.n_list[i], cfg.sampling,
                                                              row_seed, file_values);
                result.rows[i] =
                    cfg.backend == BackendKind::Exact
                        ? detail::run_row<Rational>(curve, params, cfg, row_seed)
                        : detail::run_row<double>(curve, params, cfg, row_seed);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                cursor.store(cfg.n_list.size());
                return;
            }
        }
    };
    if (cfg.workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> ns, distincts, subsets;
    for (const auto& row : result.rows) {
        ns.push_back(static_cast<double>(row.n));
        distincts.push_back(static_cast<double>(row.distinct));
        subsets.push_back(static_cast<double>(row.subset_size));
    }
    result.distinct_fit = detail::fit_loglog(ns, distincts);
    result.subset_fit = detail::fit_loglog(ns, subsets);
    return result;
}

inline void write_experiment_csv(const ExperimentResult& result, std::ostream& os) {
    os << "n,distinct,energy_offdiag,isosceles,cs_bound_num,cs_bound_den,subset_size,"
          "wall_time_ms\n";
    for (const auto& row : result.rows) {
        os << row.n << ',' << row.distinct << ',' << row.energy_offdiag << ',' << row.isosceles
           << ',' << row.cs_num.str() << ',' << row.cs_den.str() << ',' << row.subset_size << ','
           << row.wall_time_ms << '\n';
    }
}

inline json experiment_summary_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
    json out;
    out["spec"] = cfg.curve_spec;
    out["backend"] = cfg.backend == BackendKind::Exact ? "exact" : "float";
    out["seed"] = cfg.seed;
    out["sampling"] = cfg.sampling == SamplingMode::UniformRandom ? "uniform"
                      : cfg.sampling == SamplingMode::ArithmeticProgression ? "progression"
                                                                            : "file";
    out["pi_const"] = cfg.pi_const;
    out["trials"] = cfg.trials;
    out["classification"] = result.classification;
    json sizes = json::array();
    for (const auto& row : result.rows) sizes.push_back(row.n);
    out["n_list"] = sizes;
    out["rows"] = result.rows.size();
    auto fit_json = [](const SlopeFit& fit) {
        json f;
        f["valid"] = fit.valid;
        f["slope"] = fit.slope;
        f["intercept"] = fit.intercept;
        f["residual"] = fit.residual;
        return f;
    };
    out["distinct_fit"] = fit_json(result.distinct_fit);
    out["subset_fit"] = fit_json(result.subset_fit);
    return out;
}

}  // namespace ddgeo
