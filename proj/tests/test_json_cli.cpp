#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "freelie/json_io.hpp"

#include "test_support.hpp"

using namespace freelie;
using io::json;
using testsupport::Rng;

namespace {

using RS = GradedSeries<Rational>;

struct TempDir {
	std::filesystem::path dir;
	TempDir()
	{
		dir = std::filesystem::temp_directory_path() /
		      ("freelie_test_" + std::to_string(::getpid()));
		std::filesystem::create_directories(dir);
	}
	~TempDir() { std::filesystem::remove_all(dir); }

	std::string write(const std::string &name, const json &j) const
	{
		auto p = (dir / name).string();
		std::ofstream(p) << j.dump();
		return p;
	}

	std::string path(const std::string &name) const { return (dir / name).string(); }
};

int run_cli(const std::string &args)
{
	std::string cmd = std::string(FREELIE_CLI_PATH) + " " + args + " >/dev/null 2>&1";
	int status = std::system(cmd.c_str());
	REQUIRE(status != -1);
	return WEXITSTATUS(status);
}

json lie_doc(int n, int maxdeg, std::initializer_list<std::pair<std::vector<int>, Rational>> cs)
{
	LieSeries::CoordMap coords;
	for (const auto &[w, c] : cs)
		coords.emplace(Word(n, w), c);
	return io::to_json(LieSeries(n, maxdeg, std::move(coords)));
}

} // namespace

TEST_CASE("rational json round trip, including big integers")
{
	auto q = make_rational(-3, 7);
	CHECK(io::rational_from_json(io::to_json(q)) == q);

	mpz_class big = 1;
	for (int i = 0; i < 25; ++i)
		big *= 10;
	Rational huge(big + 1, 3);
	huge.canonicalize();
	json j = io::to_json(huge);
	CHECK(j["num"].is_string()); // exceeds int64
	CHECK(io::rational_from_json(j) == huge);

	CHECK(io::rational_from_json(json(5)) == 5);
	CHECK_THROWS_AS(io::rational_from_json(json{{"num", 1}, {"den", 0}}), ParseError);

	CHECK(io::parse_rational_string("-5/10") == make_rational(-1, 2));
	CHECK(io::parse_rational_string("7") == 7);
	CHECK_THROWS_AS(io::parse_rational_string("x/y"), ParseError);
}

TEST_CASE("series json round trip")
{
	Rng rng(107);
	for (int trial = 0; trial < 20; ++trial)
	{
		auto x = testsupport::random_series(rng, 2 + trial % 2, 4);
		auto back = io::series_from_json(io::to_json(x));
		REQUIRE(std::holds_alternative<RS>(back));
		CHECK(std::get<RS>(back) == x);
	}

	auto f = to_float(testsupport::random_series(rng, 2, 3));
	auto back = io::series_from_json(io::to_json(f));
	REQUIRE(std::holds_alternative<GradedSeries<double>>(back));
	CHECK(std::get<GradedSeries<double>>(back) == f);
}

TEST_CASE("series json rejects malformed documents")
{
	json good = io::to_json(RS::generator(2, 3, 1));

	json dup = good;
	dup["terms"].push_back(dup["terms"][0]);
	CHECK_THROWS_AS(io::series_from_json(dup), ParseError);

	json unordered = good;
	unordered["terms"].push_back(
	    json{{"word", json::array({1, 1})}, {"num", 1}, {"den", 1}});
	unordered["terms"].push_back(json{{"word", json::array({1})}, {"num", 2}, {"den", 1}});
	CHECK_THROWS_AS(io::series_from_json(unordered), ParseError);

	json badletter = good;
	badletter["terms"][0]["word"] = json::array({9});
	CHECK_THROWS_AS(io::series_from_json(badletter), ParseError);

	json badkind = good;
	badkind["scalar"] = "decimal";
	CHECK_THROWS_AS(io::series_from_json(badkind), ParseError);

	json toodeep = good;
	toodeep["maxdeg"] = 0;
	CHECK_THROWS_AS(io::series_from_json(toodeep), ParseError);
}

TEST_CASE("lie series json round trip and validation")
{
	Rng rng(109);
	for (int trial = 0; trial < 10; ++trial)
	{
		auto L = testsupport::random_lie(rng, 2, 5);
		CHECK(io::lie_series_from_json(io::to_json(L)) == L);
	}

	json bad = lie_doc(2, 3, {{{1, 2}, Rational(1)}});
	bad["coords"][0]["lyndon"] = json::array({2, 1});
	CHECK_THROWS_AS(io::lie_series_from_json(bad), ParseError);
}

TEST_CASE("path json round trips")
{
	int N = 4;
	LieSeries v1(2, N, {{Word(2, {1}), Rational(1)}});
	LieSeries v2(2, N, {{Word(2, {2}), make_rational(1, 3)}});
	PiecewiseConstPath pc({Rational(0), make_rational(1, 3), Rational(1)}, {v1, v2});
	auto pc_doc = io::to_json(pc);
	auto pc_back = io::pc_path_from_json(pc_doc);
	CHECK(pc_back.breakpoints() == pc.breakpoints());
	CHECK(pc_back.values().size() == 2);
	CHECK(pc_back.values()[1] == v2);

	auto g = exp(expand(v1)) * exp(expand(v2));
	auto poly = log_derivative_path(g);
	auto poly_doc = io::to_json(poly);
	auto poly_back = io::poly_path_from_json(poly_doc);
	REQUIRE(poly_back.t_coeffs().size() == poly.t_coeffs().size());
	for (size_t i = 0; i < poly.t_coeffs().size(); ++i)
		CHECK(poly_back.t_coeffs()[i] == poly.t_coeffs()[i]);

	// dispatch
	CHECK(std::holds_alternative<PiecewiseConstPath>(io::path_from_json(pc_doc)));
	CHECK(std::holds_alternative<PolyPath>(io::path_from_json(poly_doc)));
	CHECK_THROWS_AS(io::path_from_json(json::object()), ParseError);
}

TEST_CASE("matrix target json")
{
	auto t = heisenberg_target();
	auto doc = io::to_json(t);
	auto back = io::target_from_json(doc);
	REQUIRE(std::holds_alternative<MatrixTarget<Rational>>(back));
	CHECK(std::get<MatrixTarget<Rational>>(back).mats[0] == t.mats[0]);

	json floaty{{"n", 1},
	            {"dim", 2},
	            {"scalar", "float"},
	            {"mats", json::array({json::array({json::array({0.0, 0.5}),
	                                               json::array({0.0, 0.0})})})}};
	CHECK(std::holds_alternative<MatrixTarget<double>>(io::target_from_json(floaty)));

	json mixed = doc;
	mixed["mats"][0][0][1] = 0.25; // non-integer entry in rational mode
	CHECK_THROWS_AS(io::target_from_json(mixed), ParseError);
}

TEST_CASE("cli: bch")
{
	TempDir tmp;
	auto x = tmp.write("x.json", lie_doc(2, 2, {{{1}, Rational(1)}}));
	auto y = tmp.write("y.json", lie_doc(2, 2, {{{2}, Rational(1)}}));
	auto out = tmp.path("z.json");

	CHECK(run_cli("bch " + x + " " + y + " --maxdeg 2 --out " + out) == 0);
	auto z = io::lie_series_from_json(io::load_json_file(out));
	CHECK(z.coordinate(Word(2, {1})) == 1);
	CHECK(z.coordinate(Word(2, {2})) == 1);
	CHECK(z.coordinate(Word(2, {1, 2})) == make_rational(1, 2));

	// y = 0 echoes x
	auto zero = tmp.write("zero.json", lie_doc(2, 2, {}));
	CHECK(run_cli("bch " + x + " " + zero + " --out " + out) == 0);
	auto echo = io::lie_series_from_json(io::load_json_file(out));
	CHECK(echo.coordinate(Word(2, {1})) == 1);
	CHECK(echo.coords().size() == 1);

	// degree-1 truncation keeps only the generators
	CHECK(run_cli("bch " + x + " " + y + " --maxdeg 1 --out " + out) == 0);
	auto z1 = io::lie_series_from_json(io::load_json_file(out));
	CHECK(z1.coords().size() == 2);

	// float mode is a precondition violation for bch
	CHECK(run_cli("bch " + x + " " + y + " --scalar float --out " + out) == 3);

	// malformed input file
	auto broken = tmp.path("broken.json");
	std::ofstream(broken) << "{ not json";
	CHECK(run_cli("bch " + broken + " " + y + " --out " + out) == 2);

	// alphabet mismatch between the operands
	auto y3 = tmp.write("y3.json", lie_doc(3, 2, {{{2}, Rational(1)}}));
	CHECK(run_cli("bch " + x + " " + y3 + " --out " + out) == 3);
}

TEST_CASE("cli: certify")
{
	TempDir tmp;
	auto out = tmp.path("cert.json");

	auto grouplike = tmp.write("g.json", io::to_json(exp(RS::generator(2, 4, 1))));
	CHECK(run_cli("certify " + grouplike + " --mode grouplike --out " + out) == 0);
	CHECK(io::load_json_file(out)["verdict"] == true);

	auto not_grouplike =
	    tmp.write("ng.json", io::to_json(RS::one(2, 3) + RS::generator(2, 3, 1)));
	CHECK(run_cli("certify " + not_grouplike + " --mode grouplike --out " + out) == 1);
	auto cert = io::load_json_file(out);
	CHECK(cert["verdict"] == false);
	CHECK(cert["violations"][0]["alpha"] == json::array({1}));
	CHECK(cert["violations"][0]["beta"] == json::array({1}));
	CHECK(cert["violations"][0]["defect"]["num"] == 1);

	auto primitive = tmp.write(
	    "p.json",
	    io::to_json(lie_bracket(RS::generator(2, 2, 1), RS::generator(2, 2, 2))));
	CHECK(run_cli("certify " + primitive + " --mode primitive --out " + out) == 0);

	// tolerance is rejected in rational mode
	CHECK(run_cli("certify " + grouplike + " --mode grouplike --tolerance 1e-9") == 3);
}

TEST_CASE("cli: ordexp")
{
	TempDir tmp;
	auto out = tmp.path("E.json");

	json pc = io::to_json(PiecewiseConstPath(
	    {Rational(0), Rational(1)}, {LieSeries(2, 4, {{Word(2, {1}), Rational(1)}})}));
	auto pcfile = tmp.write("pc.json", pc);

	CHECK(run_cli("ordexp " + pcfile + " --t 1 --out " + out) == 0);
	auto doc = io::load_json_file(out);
	CHECK(doc["certificate"]["verdict"] == true);
	auto E = io::series_from_json(doc["result"]);
	CHECK(std::get<RS>(E) == exp(RS::generator(2, 4, 1)));

	CHECK(run_cli("ordexp " + pcfile + " --t 0 --out " + out) == 0);
	CHECK(std::get<RS>(io::series_from_json(io::load_json_file(out)["result"])) ==
	      RS::one(2, 4));

	// float mode runs the grid solver and certifies within tolerance
	CHECK(run_cli("ordexp " + pcfile + " --t 1 --scalar float --steps 128 --tolerance 1e-9 " +
	              "--out " + out) == 0);
	auto fdoc = io::load_json_file(out);
	CHECK(fdoc["steps"] == 128);
	CHECK(fdoc["certificate"]["verdict"] == true);

	CHECK(run_cli("ordexp " + pcfile + " --t 2 --out " + out) == 3); // outside [0,1]
}

TEST_CASE("cli: eval")
{
	TempDir tmp;
	auto out = tmp.path("report.json");
	auto target = tmp.write("target.json", io::to_json(heisenberg_target()));

	// exp-form input: a Lie series evaluates as exp(z) with the defect field
	auto zfile = tmp.write("z.json", lie_doc(2, 2, {{{1}, Rational(1)}}));
	CHECK(run_cli("eval " + zfile + " " + target + " --out " + out) == 0);
	auto rep = io::load_json_file(out);
	CHECK(rep["nilpotent_exact"] == true);
	CHECK(rep["tail"] == "nilpotent-exact");
	CHECK(rep["exp_vs_matrix_exp_defect"] == 0.0);
	CHECK(rep["value"] == json::array({json::array({1, 1, 0}), json::array({0, 1, 0}),
	                                   json::array({0, 0, 1})}));

	// plain series input: the identity evaluates to the identity matrix
	auto one = tmp.write("one.json", io::to_json(RS::one(2, 2)));
	CHECK(run_cli("eval " + one + " " + target + " --out " + out) == 0);
	CHECK(io::load_json_file(out)["value"][0][0] == 1);

	// non-nilpotent target gets the truncation flag
	json rot{{"n", 1}, {"dim", 2},
	         {"mats", json::array({json::array({json::array({0, -1}),
	                                            json::array({1, 0})})})}};
	auto rotfile = tmp.write("rot.json", rot);
	auto g1 = tmp.write("g1.json", io::to_json(RS::generator(1, 3, 1)));
	CHECK(run_cli("eval " + g1 + " " + rotfile + " --out " + out) == 0);
	CHECK(io::load_json_file(out)["nilpotent_exact"] == false);
	CHECK(io::load_json_file(out)["tail"] == "truncation-only, no tail certificate");

	// dimension/alphabet mismatch
	auto g3 = tmp.write("g3.json", io::to_json(RS::generator(3, 2, 1)));
	CHECK(run_cli("eval " + g3 + " " + target + " --out " + out) == 3);
}

TEST_CASE("cli: norms and counterexample")
{
	TempDir tmp;
	auto out = tmp.path("o.json");

	auto s = tmp.write("s.json",
	                   io::to_json(RS::generator(2, 2, 1) + RS::generator(2, 2, 2)));
	CHECK(run_cli("norms " + s + " --xi 2 --xi 1/2 --out " + out) == 0);
	auto doc = io::load_json_file(out);
	CHECK(doc["norms"][0]["norm"]["num"] == 4);
	CHECK(doc["norms"][1]["norm"]["num"] == 1);

	auto target = tmp.write("t.json", io::to_json(heisenberg_target()));
	CHECK(run_cli("norms " + s + " --xi 1 --target " + target + " --out " + out) == 0);
	CHECK(io::load_json_file(out)["min_xi"]["num"] == 1);

	CHECK(run_cli("counterexample --t 1 --maxdeg 6 --out " + out) == 0);
	auto table = io::load_json_file(out);
	REQUIRE(table["rows"].size() == 3);
	// m=1: true coefficients are +-t^2/2, prediction is -t^2/2
	CHECK(table["rows"][0]["coeff_12"]["num"] == 1);
	CHECK(table["rows"][0]["coeff_12"]["den"] == 2);
	CHECK(table["rows"][0]["match_12"] == false);
	CHECK(table["rows"][0]["match_21"] == true); // coeff_21 = -1/2 happens to agree
	// m=2: computed -1/12 against predicted -1/4
	CHECK(table["rows"][1]["coeff_12"]["num"] == -1);
	CHECK(table["rows"][1]["coeff_12"]["den"] == 12);
	CHECK(table["rows"][1]["predicted"]["num"] == -1);
	CHECK(table["rows"][1]["predicted"]["den"] == 4);
	CHECK(table["rows"][1]["match_12"] == false);

	CHECK(run_cli("counterexample --t 1 --maxdeg 1") == 3);
}

TEST_CASE("cli: unknown flags and missing subcommand are command-line parse errors")
{
	CHECK(run_cli("certify") == 2);
	CHECK(run_cli("frobnicate x.json") == 2);
}
