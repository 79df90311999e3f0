// ddgeo command-line surface: classify, distances, sidon, subset, bounds,
// experiment. Exit codes: 0 success, 2 usage error, 1 runtime error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ddgeo/curve.hpp"
#include "ddgeo/distances.hpp"
#include "ddgeo/experiment.hpp"
#include "ddgeo/parse.hpp"
#include "ddgeo/sidon.hpp"
#include "ddgeo/subsets.hpp"

namespace {

using ddgeo::json;

void emit(const json& doc, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw ddgeo::Error("cannot open output file " + out_path);
        out << doc.dump(2) << "\n";
    }
}

std::vector<ddgeo::Rational> read_reals(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ddgeo::Error("cannot open input file " + path);
    return ddgeo::parse_reals_file(in);
}

json witnesses_json(const ddgeo::ClassificationReport& report) {
    json list = json::array();
    for (const auto& w : report.witnesses) {
        json item;
        item["x"] = w.x;
        item["xp"] = w.xp;
        item["y"] = w.y;
        item["yp"] = w.yp;
        item["det"] = w.det;
        list.push_back(std::move(item));
    }
    return list;
}

int cmd_classify(const std::string& spec, std::size_t samples, std::uint64_t seed,
                 const std::string& backend, double det_tol, const std::string& out) {
    const ddgeo::ParamCurve curve = ddgeo::parse_curve_spec(spec);
    const auto report = backend == "float"
                            ? ddgeo::classify_curve<double>(curve, samples, seed, det_tol)
                            : ddgeo::classify_curve<ddgeo::Rational>(curve, samples, seed);
    json doc;
    doc["spec"] = ddgeo::format_curve_spec(curve);
    doc["backend"] = report.backend;
    doc["samples"] = report.samples;
    doc["verdict"] = report.verdict == ddgeo::CurveVerdict::DegenerateCandidate
                         ? "DegenerateCandidate"
                         : "General";
    doc["nonzero_count"] = report.nonzero_count;
    doc["witnesses"] = witnesses_json(report);
    emit(doc, out);
    return 0;
}

template <class S>
json distances_report(const ddgeo::PointSet<S>& points, int digits) {
    const auto h = ddgeo::build_histogram(points, digits);
    json doc;
    doc["n"] = points.size();
    doc["dim"] = points.empty() ? 0 : points[0].size();
    doc["distinct"] = ddgeo::distinct_count(h);
    doc["energy_full"] = ddgeo::energy_q(h, ddgeo::EnergyMode::OrderedFull);
    doc["energy_offdiag"] = ddgeo::energy_q(h, ddgeo::EnergyMode::OffDiagonal);
    doc["isosceles"] = ddgeo::isosceles_triples(points, digits);
    const ddgeo::Rational cs = ddgeo::cs_lower_bound(h);
    doc["cs_bound_num"] = cs.num().str();
    doc["cs_bound_den"] = cs.den().str();
    return doc;
}

int cmd_distances(const std::string& input, const std::string& backend, int digits,
                  const std::string& out) {
    std::ifstream in(input);
    if (!in) throw ddgeo::Error("cannot open input file " + input);
    const auto points = ddgeo::parse_points_csv(in);
    if (points.size() < 2) throw ddgeo::TooSmall("need at least two points");
    json doc;
    if (backend == "float") {
        ddgeo::PointSet<double> fpoints;
        for (const auto& p : points) {
            std::vector<double> q;
            for (const auto& c : p) q.push_back(c.to_double());
            fpoints.push_back(std::move(q));
        }
        doc = distances_report(fpoints, digits);
    } else {
        doc = distances_report(points, digits);
    }
    emit(doc, out);
    return 0;
}

json sidon_json(const std::vector<ddgeo::Rational>& input,
                const ddgeo::SidonCertificate<ddgeo::Rational>& cert) {
    json doc;
    doc["input_size"] = input.size();
    doc["subset_size"] = cert.subset.size();
    json subset = json::array();
    for (const auto& v : cert.subset) subset.push_back(v.str());
    doc["subset"] = std::move(subset);
    doc["engine"] = cert.engine;
    doc["certified"] = cert.checked;
    return doc;
}

int cmd_sidon(const std::string& input, const std::string& mode, std::uint64_t singer_p,
              const std::string& out) {
    if (singer_p != 0) {
        const auto cert = ddgeo::singer_sidon(singer_p);
        json doc;
        doc["input_size"] = 0;
        doc["subset_size"] = cert.subset.size();
        json subset = json::array();
        for (const auto& v : cert.subset) subset.push_back(v.str());
        doc["subset"] = std::move(subset);
        doc["engine"] = cert.engine;
        doc["certified"] = cert.checked;
        emit(doc, out);
        return 0;
    }
    const auto reals = read_reals(input);
    ddgeo::SidonCertificate<ddgeo::Rational> cert;
    if (mode == "check") {
        cert.subset = reals;
        cert.checked = ddgeo::is_sidon(reals);
        cert.engine = "check";
    } else if (mode == "greedy") {
        cert = ddgeo::greedy_sidon(reals);
    } else if (mode == "exact") {
        cert = ddgeo::max_sidon_oracle(reals);
    } else {
        cert = ddgeo::real_sidon_subset(reals);
    }
    emit(sidon_json(reals, cert), out);
    return 0;
}

template <class S>
json subset_json(const ddgeo::SubsetResult<S>& result) {
    json doc;
    doc["route"] = ddgeo::route_name(result.route);
    doc["n"] = result.input_size;
    doc["subset_size"] = result.subset.size();
    json params = json::array();
    for (const auto& t : result.subset) {
        if constexpr (std::is_same_v<S, ddgeo::Rational>) {
            params.push_back(t.str());
        } else {
            params.push_back(t);
        }
    }
    doc["subset_params"] = std::move(params);
    doc["trials"] = result.trials;
    doc["pi"] = result.pi_used;
    doc["deletions_Q"] = result.deletions_q;
    doc["deletions_S"] = result.deletions_s;
    doc["certified"] = result.certified;
    return doc;
}

template <class S>
json run_subset(const ddgeo::ParamCurve& curve, const std::vector<ddgeo::Rational>& params,
                const std::string& route, double pi_const, int trials, std::uint64_t seed,
                int digits) {
    ddgeo::ParamSet<S> set(curve, ddgeo::to_backend<S>(params));
    if (route == "oracle") return subset_json(ddgeo::exhaustive_subset_oracle(set, digits));
    if (route == "sidon") return subset_json(ddgeo::sidon_route_subset(set, digits));
    if (route == "randomized")
        return subset_json(ddgeo::randomized_subset(set, pi_const, trials, seed, digits));
    // auto: the degenerate route when a closed form exists, else randomized
    if (ddgeo::closed_form_phi(curve))
        return subset_json(ddgeo::sidon_route_subset(set, digits));
    return subset_json(ddgeo::randomized_subset(set, pi_const, trials, seed, digits));
}

int cmd_subset(const std::string& spec, const std::string& input, std::size_t n,
               const std::string& route, double pi_const, int trials, std::uint64_t seed,
               const std::string& backend, int digits, const std::string& out) {
    const ddgeo::ParamCurve curve = ddgeo::parse_curve_spec(spec);
    std::vector<ddgeo::Rational> params;
    if (!input.empty()) {
        params = read_reals(input);
    } else {
        if (n < 2) throw ddgeo::TooSmall("need --n >= 2 or --input");
        params = ddgeo::detail::sample_parameters(curve, n, ddgeo::SamplingMode::UniformRandom,
                                                  seed, {});
    }
    json doc = backend == "float"
                   ? run_subset<double>(curve, params, route, pi_const, trials, seed, digits)
                   : run_subset<ddgeo::Rational>(curve, params, route, pi_const, trials, seed,
                                                 digits);
    emit(doc, out);
    return 0;
}

int cmd_bounds(int d, std::uint64_t t, const std::string& format, const std::string& out) {
    const ddgeo::Rational exponent = ddgeo::bound_exponent(d);
    if (format == "json") {
        json doc;
        doc["d"] = d;
        doc["exponent_num"] = exponent.num().str();
        doc["exponent_den"] = exponent.den().str();
        if (t >= 2) {
            doc["t"] = t;
            doc["H"] = ddgeo::recursion_bound(ddgeo::BigInt(t), d).str();
        }
        emit(doc, out);
        return 0;
    }
    std::ostringstream os;
    os << exponent.str() << "\n";
    if (t >= 2)
        os << "H(" << t << "," << d << ") = " << ddgeo::recursion_bound(ddgeo::BigInt(t), d).str()
           << "\n";
    if (out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out);
        if (!f) throw ddgeo::Error("cannot open output file " + out);
        f << os.str();
    }
    return 0;
}

int cmd_experiment(const ddgeo::ExperimentConfig& cfg, const std::string& out_prefix,
                   const std::string& format) {
    const auto result = ddgeo::run_experiment(cfg);
    const json summary = ddgeo::experiment_summary_json(cfg, result);
    if (!out_prefix.empty()) {
        std::ofstream csv(out_prefix + ".csv");
        if (!csv) throw ddgeo::Error("cannot open " + out_prefix + ".csv");
        ddgeo::write_experiment_csv(result, csv);
        std::ofstream js(out_prefix + ".json");
        if (!js) throw ddgeo::Error("cannot open " + out_prefix + ".json");
        js << summary.dump(2) << "\n";
    }
    if (format == "csv") {
        ddgeo::write_experiment_csv(result, std::cout);
    } else {
        std::cout << summary.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distinct-distance geometry toolkit"};
    app.require_subcommand(1);

    std::string spec, input, out, backend = "exact", route = "auto", mode = "pipeline";
    std::string format = "json", sampling = "uniform", n_list_text, out_prefix;
    std::size_t samples = 200, n = 0;
    std::uint64_t seed = 1, singer_p = 0, bound_t = 0;
    int digits = ddgeo::kDefaultQuantDigits, trials = 20, dim = 1, workers = 1;
    double pi_const = 4.0, det_tol = 1e-9;
    bool timing = false;

    auto* classify = app.add_subcommand("classify", "degeneracy dichotomy of a curve");
    classify->add_option("--spec", spec, "curve spec")->required();
    classify->add_option("--samples", samples, "determinant sample count");
    classify->add_option("--seed", seed, "rng seed");
    classify->add_option("--backend", backend, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    classify->add_option("--det-tol", det_tol, "float-backend zero tolerance");
    classify->add_option("--out", out, "output file (default stdout)");

    auto* distances = app.add_subcommand("distances", "distance statistics of a point file");
    distances->add_option("--input", input, "points CSV (dim=D header)")->required();
    distances->add_option("--backend", backend, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    distances->add_option("--digits", digits, "quantization digits (float backend)");
    distances->add_option("--out", out, "output file (default stdout)");

    auto* sidon = app.add_subcommand("sidon", "Sidon subset extraction from a reals file");
    sidon->add_option("--input", input, "one scalar per line, # comments");
    sidon->add_option("--mode", mode, "check|greedy|exact|pipeline")
        ->check(CLI::IsMember({"check", "greedy", "exact", "pipeline"}));
    sidon->add_option("--singer", singer_p, "emit the Singer set for prime p instead");
    sidon->add_option("--out", out, "output file (default stdout)");

    auto* subset = app.add_subcommand("subset", "distinct-distance subset of curve parameters");
    subset->add_option("--spec", spec, "curve spec")->required();
    subset->add_option("--input", input, "parameter file (one scalar per line)");
    subset->add_option("--n", n, "sample this many parameters instead of --input");
    subset->add_option("--route", route, "auto|randomized|sidon|oracle")
        ->check(CLI::IsMember({"auto", "randomized", "sidon", "oracle"}));
    subset->add_option("--pi-const", pi_const, "C in pi = C * n^{-5/9}");
    subset->add_option("--trials", trials, "randomized trials");
    subset->add_option("--seed", seed, "rng seed");
    subset->add_option("--backend", backend, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    subset->add_option("--digits", digits, "quantization digits (float backend)");
    subset->add_option("--out", out, "output file (default stdout)");

    auto* bounds = app.add_subcommand("bounds", "distinct-distance subset exponent calculator");
    bounds->add_option("--d", dim, "variety dimension")->required();
    bounds->add_option("--t", bound_t, "also print the recursion bound H(t,d)");
    bounds->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    bounds->add_option("--out", out, "output file (default stdout)");

    auto* experiment = app.add_subcommand("experiment", "seeded sweep over point-set sizes");
    experiment->add_option("--spec", spec, "curve spec")->required();
    experiment->add_option("--n-list", n_list_text, "comma-separated strictly increasing sizes")
        ->required();
    experiment->add_option("--sampling", sampling, "uniform|progression|file")
        ->check(CLI::IsMember({"uniform", "progression", "file"}));
    experiment->add_option("--input", input, "parameter file for --sampling file");
    experiment->add_option("--seed", seed, "rng seed");
    experiment->add_option("--backend", backend, "exact|float")
        ->check(CLI::IsMember({"exact", "float"}));
    experiment->add_option("--digits", digits, "quantization digits (float backend)");
    experiment->add_option("--pi-const", pi_const, "C in pi = C * n^{-5/9}");
    experiment->add_option("--trials", trials, "randomized-subset trials per row");
    experiment->add_option("--samples", samples, "classification sample count");
    experiment->add_option("--workers", workers, "parallel row workers");
    experiment->add_flag("--timing", timing, "record wall time (breaks byte reproducibility)");
    experiment->add_option("--out", out_prefix, "output prefix for .csv and .json files");
    experiment->add_option("--format", format, "csv|json echoed to stdout")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classify->parsed())
            return cmd_classify(spec, samples, seed, backend, det_tol, out);
        if (distances->parsed()) return cmd_distances(input, backend, digits, out);
        if (sidon->parsed()) {
            if (singer_p == 0 && input.empty())
                throw ddgeo::Error("sidon needs --input or --singer");
            return cmd_sidon(input, mode, singer_p, out);
        }
        if (subset->parsed())
            return cmd_subset(spec, input, n, route, pi_const, trials, seed, backend, digits,
                              out);
        if (bounds->parsed()) return cmd_bounds(dim, bound_t, format, out);
        if (experiment->parsed()) {
            ddgeo::ExperimentConfig cfg;
            cfg.curve_spec = spec;
            std::stringstream ss(n_list_text);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) cfg.n_list.push_back(std::stoul(item));
            cfg.sampling = sampling == "progression" ? ddgeo::SamplingMode::ArithmeticProgression
                           : sampling == "file"      ? ddgeo::SamplingMode::UserFile
                                                     : ddgeo::SamplingMode::UniformRandom;
            cfg.params_file = input;
            cfg.seed = seed;
            cfg.backend =
                backend == "float" ? ddgeo::BackendKind::Float : ddgeo::BackendKind::Exact;
            cfg.digits = digits;
            cfg.pi_const = pi_const;
            cfg.trials = trials;
            cfg.classify_samples = samples;
            cfg.workers = workers;
            cfg.timing = timing;
            return cmd_experiment(cfg, out_prefix, format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
