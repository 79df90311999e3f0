#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "ddgeo/experiment.hpp"
#include "ddgeo/parse.hpp"
#include "ddgeo/rng.hpp"

using namespace ddgeo;

TEST_CASE("curve grammar: canonical examples") {
    const auto para = parse_curve_spec("poly:(t, t^2)");
    CHECK(para.family() == CurveFamily::Polynomial);
    CHECK(para.dimension() == 2);
    CHECK(eval_point(para, Rational(3)) == std::vector<Rational>{Rational(3), Rational(9)});

    const auto tor = parse_curve_spec("torus:a=[1,1];lambda=[1,2]");
    CHECK(tor.family() == CurveFamily::Torus);
    CHECK(tor.dimension() == 4);

    const auto line = parse_curve_spec("line:base=(0,0);dir=(1,1)");
    CHECK(line.family() == CurveFamily::Line);

    const auto circ = parse_curve_spec("circle:r=3/2");
    CHECK(circ.circle_data().radius == Rational(3, 2));
}

TEST_CASE("curve grammar is whitespace-insensitive") {
    const auto a = parse_curve_spec("line: base = ( 0 , 1/2 ) ; dir = ( 1 , -2 )");
    const auto b = parse_curve_spec("line:base=(0,1/2);dir=(1,-2)");
    CHECK(a == b);
    const auto p = parse_curve_spec("poly:( t^2 - 1/2*t + 3 , t )");
    CHECK(p == parse_curve_spec("poly:(t^2-1/2*t+3,t)"));
}

TEST_CASE("curve grammar rejects bad input with byte offsets") {
    CHECK_THROWS_AS(parse_curve_spec("spiral:r=1"), ParseError);
    CHECK_THROWS_AS(parse_curve_spec("line:base=(0,0);dir=(0,0)"), ParseError);
    CHECK_THROWS_AS(parse_curve_spec("line:base=(0,0);dir=(1)"), ParseError);
    CHECK_THROWS_AS(parse_curve_spec("torus:a=[1];lambda=[1,2]"), ParseError);
    CHECK_THROWS_AS(parse_curve_spec("circle:r=0"), ParseError);
    CHECK_THROWS_AS(parse_curve_spec("circle:r=1 trailing"), ParseError);
    try {
        parse_curve_spec("poly:(t,)");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset >= 7);
    }
}

TEST_CASE("format/parse round trip on random curves") {
    Rng rng(113);
    auto random_rational = [&](bool nonzero) {
        for (;;) {
            Rational r(BigInt(static_cast<long long>(rng.below(41)) - 20),
                       BigInt(1 + rng.below(6)));
            if (!nonzero || !r.is_zero()) return r;
        }
    };
    for (int rep = 0; rep < 100; ++rep) {
        ParamCurve curve = ParamCurve::rational_circle(Rational(1));
        switch (rng.below(4)) {
            case 0: {
                const std::size_t dim = 1 + rng.below(3);
                std::vector<Rational> base, dir;
                for (std::size_t i = 0; i < dim; ++i) base.push_back(random_rational(false));
                for (std::size_t i = 0; i + 1 < dim; ++i) dir.push_back(random_rational(false));
                dir.push_back(random_rational(true));
                curve = ParamCurve::line(base, dir);
                break;
            }
            case 1: {
                const std::size_t dim = 1 + rng.below(3);
                std::vector<Poly> coords;
                for (std::size_t i = 0; i < dim; ++i) {
                    std::vector<Rational> coeffs;
                    const std::size_t deg = rng.below(4);
                    for (std::size_t d = 0; d <= deg; ++d)
                        coeffs.push_back(random_rational(d == deg));
                    coords.push_back(Poly(coeffs));
                }
                curve = ParamCurve::polynomial(coords);
                break;
            }
            case 2:
                curve = ParamCurve::rational_circle(random_rational(true).abs() + Rational(1, 7));
                break;
            default: {
                const std::size_t k = 1 + rng.below(2);
                std::vector<Rational> amps;
                std::vector<unsigned> freqs;
                for (std::size_t i = 0; i < k; ++i) {
                    amps.push_back(random_rational(true));
                    freqs.push_back(1 + static_cast<unsigned>(rng.below(6)));
                }
                curve = ParamCurve::torus(amps, freqs);
                break;
            }
        }
        CHECK(parse_curve_spec(format_curve_spec(curve)) == curve);
    }
}

TEST_CASE("points CSV round trip") {
    std::istringstream in(
        "dim=2\n"
        "0, 0\n"
        "1/2, 0.25   # a comment\n"
        "\n"
        "-1, 3\n");
    const auto pts = parse_points_csv(in);
    REQUIRE(pts.size() == 3);
    CHECK(pts[1] == std::vector<Rational>{Rational(1, 2), Rational(1, 4)});
    CHECK(pts[2] == std::vector<Rational>{Rational(-1), Rational(3)});

    std::istringstream bad("dim=2\n1,2,3\n");
    CHECK_THROWS_AS(parse_points_csv(bad), ParseError);
    std::istringstream nohdr("1,2\n");
    CHECK_THROWS_AS(parse_points_csv(nohdr), ParseError);
}

TEST_CASE("reals file parsing") {
    std::istringstream in(
        "# header comment\n"
        "1/3\n"
        "0.5\n"
        " 7 \n"
        "-2.25  # trailing\n");
    const auto vals = parse_reals_file(in);
    REQUIRE(vals.size() == 4);
    CHECK(vals[0] == Rational(1, 3));
    CHECK(vals[1] == Rational(1, 2));
    CHECK(vals[2] == Rational(7));
    CHECK(vals[3] == Rational(-9, 4));
}

TEST_CASE("experiment rows satisfy the row invariants") {
    ExperimentConfig cfg;
    cfg.curve_spec = "poly:(t,t^2)";
    cfg.n_list = {8, 12, 16};
    cfg.seed = 7;
    cfg.trials = 5;
    const auto result = run_experiment(cfg);
    REQUIRE(result.rows.size() == 3);
    CHECK(result.classification == "General");
    for (const auto& row : result.rows) {
        CHECK(Rational(row.cs_num, row.cs_den) <= Rational(BigInt(row.distinct)));
        CHECK(row.subset_size <= row.n);
        CHECK(row.wall_time_ms == 0);  // timing off by default
    }
    CHECK(result.distinct_fit.valid);
}

TEST_CASE("experiment with arithmetic progression on a line") {
    ExperimentConfig cfg;
    cfg.curve_spec = "line:base=(0,0);dir=(1,0)";
    cfg.n_list = {50};
    cfg.sampling = SamplingMode::ArithmeticProgression;
    cfg.trials = 3;
    const auto result = run_experiment(cfg);
    CHECK(result.rows[0].distinct == 49);
    CHECK(result.classification == "DegenerateCandidate");
}

TEST_CASE("experiment output is byte-identical across worker counts") {
    ExperimentConfig cfg;
    cfg.curve_spec = "torus:a=[1,1];lambda=[1,2]";
    cfg.n_list = {6, 9, 12, 15};
    cfg.seed = 99;
    cfg.trials = 4;
    cfg.classify_samples = 40;

    cfg.workers = 1;
    const auto seq = run_experiment(cfg);
    cfg.workers = 4;
    const auto par = run_experiment(cfg);

    std::ostringstream a, b;
    write_experiment_csv(seq, a);
    write_experiment_csv(par, b);
    CHECK(a.str() == b.str());
    CHECK(experiment_summary_json(cfg, seq) == experiment_summary_json(cfg, par));
    CHECK(a.str().substr(0, a.str().find('\n')) ==
          "n,distinct,energy_offdiag,isosceles,cs_bound_num,cs_bound_den,subset_size,"
          "wall_time_ms");
}

TEST_CASE("experiment reads user parameter files") {
    const std::string path = "tmp_params_test.txt";
    {
        std::ofstream out(path);
        out << "# params\n";
        for (int i = 1; i <= 10; ++i) out << i << "/17\n";
    }
    ExperimentConfig cfg;
    cfg.curve_spec = "poly:(t,t^3)";
    cfg.n_list = {8};
    cfg.sampling = SamplingMode::UserFile;
    cfg.params_file = path;
    cfg.trials = 3;
    const auto result = run_experiment(cfg);
    CHECK(result.rows[0].n == 8);

    cfg.n_list = {11};
    CHECK_THROWS_AS(run_experiment(cfg), TooSmall);
}

TEST_CASE("experiment validates its config") {
    ExperimentConfig cfg;
    cfg.curve_spec = "poly:(t,t^2)";
    cfg.n_list = {10, 10};
    CHECK_THROWS_AS(run_experiment(cfg), InvalidScalar);
    cfg.n_list = {};
    CHECK_THROWS_AS(run_experiment(cfg), TooSmall);
}
