// freelie: batch JSON front end for truncated free Lie group computations.
//
// Exit codes: 0 success / verdict true, 1 verdict false, 2 parse error,
// 3 precondition violation, 4 internal self-check failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freelie/json_io.hpp"

using namespace freelie;
using io::json;

namespace {

struct CommonOpts {
	std::string out = "-";
	std::string scalar = "rational";
	double tolerance = 1e-6;
	bool tolerance_set = false;
	std::optional<int> n;
	std::optional<int> maxdeg;
};

void add_common(CLI::App *cmd, CommonOpts &o, bool with_scalar = true)
{
	cmd->add_option("--out", o.out, "output file (default: stdout)");
	if (with_scalar)
		cmd->add_option("--scalar", o.scalar, "coefficient kind: rational|float")
		    ->check(CLI::IsMember({"rational", "float"}));
	cmd->add_option("--n", o.n, "expected alphabet size (validated against inputs)");
	cmd->add_option("--maxdeg", o.maxdeg, "truncation degree");
	auto *tol = cmd->add_option("--tolerance", o.tolerance,
	                            "certificate tolerance (float mode only)");
	tol->each([&o](const std::string &) { o.tolerance_set = true; });
}

void require_rational_mode(const CommonOpts &o, const char *cmd)
{
	if (o.scalar != "rational")
		throw PreconditionError(std::string(cmd) + ": requires exact rational scalars");
	if (o.tolerance_set)
		throw PreconditionError("--tolerance applies to float mode only");
}

void check_alphabet(const CommonOpts &o, int n, const char *what)
{
	if (o.n && *o.n != n)
		throw PreconditionError(std::string(what) + ": alphabet size " + std::to_string(n) +
		                        " does not match --n " + std::to_string(*o.n));
}

CertifyOptions certify_options(const CommonOpts &o, bool exact)
{
	CertifyOptions opts;
	if (!exact)
		opts.tolerance = o.tolerance;
	else if (o.tolerance_set)
		throw PreconditionError("--tolerance applies to float mode only");
	return opts;
}

int cmd_bch(const std::string &xfile, const std::string &yfile, const CommonOpts &o)
{
	require_rational_mode(o, "bch");
	LieSeries x = io::lie_series_from_json(io::load_json_file(xfile));
	LieSeries y = io::lie_series_from_json(io::load_json_file(yfile));
	check_alphabet(o, x.alphabet_size(), "bch");
	int N = o.maxdeg ? *o.maxdeg : std::min(x.maxdeg(), y.maxdeg());

	auto lift = [N](const LieSeries &s) {
		LieSeries::CoordMap coords;
		for (const auto &[w, c] : s.coords())
			if (w.degree() <= N)
				coords.emplace(w, c);
		return LieSeries(s.alphabet_size(), N, std::move(coords));
	};
	LieSeries z = bch(lift(x), lift(y));
	io::write_json(io::to_json(z), o.out);
	return 0;
}

int cmd_certify(const std::string &file, const std::string &mode, const CommonOpts &o)
{
	auto any = io::series_from_json(io::load_json_file(file));
	json out;
	bool verdict = false;
	std::visit(
	    [&](const auto &s) {
		    check_alphabet(o, s.alphabet_size(), "certify");
		    using R = typename std::decay_t<decltype(s)>::TermMap::mapped_type;
		    auto opts = certify_options(o, scalar_traits<R>::exact);
		    Certificate<R> cert;
		    if (mode == "primitive")
			    cert = is_primitive(s, opts);
		    else
			    cert = is_grouplike(s, opts);
		    verdict = cert.verdict;
		    out = io::to_json(cert);
	    },
	    any);
	io::write_json(out, o.out);
	return verdict ? 0 : 1;
}

int cmd_coproduct(const std::string &file, const CommonOpts &o)
{
	auto any = io::series_from_json(io::load_json_file(file));
	json out;
	std::visit(
	    [&](const auto &s) {
		    check_alphabet(o, s.alphabet_size(), "coproduct");
		    out = io::to_json(coproduct(s));
	    },
	    any);
	io::write_json(out, o.out);
	return 0;
}

int cmd_ordexp(const std::string &file, const std::string &tstr, int steps, const CommonOpts &o)
{
	auto path = io::path_from_json(io::load_json_file(file));
	Rational t = io::parse_rational_string(tstr);
	json out;
	bool verdict = true;

	if (o.scalar == "rational")
	{
		if (o.tolerance_set)
			throw PreconditionError("--tolerance applies to float mode only");
		GradedSeries<Rational> E = std::visit(
		    [&](const auto &p) {
			    check_alphabet(o, p.alphabet_size(), "ordexp");
			    using P = std::decay_t<decltype(p)>;
			    if constexpr (std::is_same_v<P, PiecewiseConstPath>)
				    return ordered_exp_pc(p, t);
			    else
				    return ordered_exp_poly(p, t);
		    },
		    path);
		auto cert = is_grouplike(E);
		verdict = cert.verdict;
		out = json{{"result", io::to_json(E)}, {"certificate", io::to_json(cert)}};
	}
	else
	{
		auto sampler = std::visit([](const auto &p) { return float_sampler(p); }, path);
		std::visit([&](const auto &p) { check_alphabet(o, p.alphabet_size(), "ordexp"); }, path);
		GradedSeries<double> E = volterra_solve(sampler, t.get_d(), steps);
		CertifyOptions opts;
		opts.tolerance = o.tolerance;
		auto cert = is_grouplike(E, opts);
		verdict = cert.verdict;
		out = json{{"result", io::to_json(E)},
		           {"certificate", io::to_json(cert)},
		           {"steps", steps}};
	}
	io::write_json(out, o.out);
	return verdict ? 0 : 1;
}

template <class R>
json eval_with_report(const GradedSeries<R> &g, const MatrixTarget<R> &target,
                      const GradedSeries<R> *lie_arg, const CommonOpts &o)
{
	EvalReport<R> rep = eval_series(g, target);
	json out = io::to_json(rep);
	if (lie_arg)
	{
		if constexpr (scalar_traits<R>::exact)
			out["exp_vs_matrix_exp_defect"] = exp_vs_matrix_exp(*lie_arg, target);
		else
		{
			CertifyOptions opts;
			opts.tolerance = o.tolerance;
			out["exp_vs_matrix_exp_defect"] = exp_vs_matrix_exp(*lie_arg, target, opts);
		}
	}
	return out;
}

int cmd_eval(const std::string &sfile, const std::string &tfile, const CommonOpts &o)
{
	json sj = io::load_json_file(sfile);
	auto anytarget = io::target_from_json(io::load_json_file(tfile));

	// an exp-form input (a Lie series file) evaluates as exp(z) and the
	// report additionally compares against the matrix exponential
	std::optional<GradedSeries<Rational>> lie_expanded;
	io::AnySeries any = [&]() -> io::AnySeries {
		if (sj.contains("coords"))
		{
			LieSeries z = io::lie_series_from_json(sj);
			lie_expanded = expand(z);
			return exp(*lie_expanded);
		}
		return io::series_from_json(sj);
	}();

	std::visit([&](const auto &s) { check_alphabet(o, s.alphabet_size(), "eval"); }, any);

	json out;
	if (std::holds_alternative<GradedSeries<Rational>>(any) &&
	    std::holds_alternative<MatrixTarget<Rational>>(anytarget))
	{
		const auto &g = std::get<GradedSeries<Rational>>(any);
		const auto &tgt = std::get<MatrixTarget<Rational>>(anytarget);
		out = eval_with_report(g, tgt, lie_expanded ? &*lie_expanded : nullptr, o);
	}
	else
	{
		// mixed kinds evaluate in float
		GradedSeries<double> g = std::holds_alternative<GradedSeries<double>>(any)
		                             ? std::get<GradedSeries<double>>(any)
		                             : to_float(std::get<GradedSeries<Rational>>(any));
		MatrixTarget<double> tgt = [&] {
			if (std::holds_alternative<MatrixTarget<double>>(anytarget))
				return std::get<MatrixTarget<double>>(anytarget);
			const auto &rt = std::get<MatrixTarget<Rational>>(anytarget);
			std::vector<Matrix<double>> ms;
			for (const auto &m : rt.mats)
				ms.push_back(to_float(m));
			return MatrixTarget<double>(rt.n, std::move(ms), rt.norm_kind);
		}();
		std::optional<GradedSeries<double>> liefloat;
		if (lie_expanded)
			liefloat = to_float(*lie_expanded);
		out = eval_with_report(g, tgt, liefloat ? &*liefloat : nullptr, o);
	}
	io::write_json(out, o.out);
	return 0;
}

int cmd_norms(const std::string &sfile, const std::vector<std::string> &xis,
              const std::string &tfile, const CommonOpts &o)
{
	auto any = io::series_from_json(io::load_json_file(sfile));
	json rows = json::array();
	for (const auto &xs : xis)
	{
		Rational xi = io::parse_rational_string(xs);
		std::visit(
		    [&](const auto &s) {
			    using R = typename std::decay_t<decltype(s)>::TermMap::mapped_type;
			    if constexpr (scalar_traits<R>::exact)
				    rows.push_back(json{{"xi", io::to_json(xi)},
				                        {"norm", io::to_json(xi_norm(s, xi))}});
			    else
				    rows.push_back(json{{"xi", xi.get_d()}, {"norm", xi_norm(s, xi.get_d())}});
		    },
		    any);
	}
	json out{{"norms", rows}};
	if (!tfile.empty())
	{
		auto anytarget = io::target_from_json(io::load_json_file(tfile));
		std::visit(
		    [&](const auto &t) {
			    using R = std::decay_t<decltype(min_xi(t))>;
			    if constexpr (scalar_traits<R>::exact)
				    out["min_xi"] = io::to_json(min_xi(t));
			    else
				    out["min_xi"] = min_xi(t);
		    },
		    anytarget);
	}
	io::write_json(out, o.out);
	return 0;
}

int cmd_counterexample(const std::string &tstr, int maxdeg, const CommonOpts &o)
{
	if (maxdeg < 2)
		throw PreconditionError("counterexample: needs --maxdeg >= 2");
	Rational t = io::parse_rational_string(tstr);
	GradedSeries<Rational> z = log_product_series(t, maxdeg);

	json rows = json::array();
	for (int m = 1; 2 * m <= maxdeg; ++m)
	{
		std::vector<int> w12, w21;
		for (int i = 0; i < m; ++i)
		{
			w12.push_back(1);
			w12.push_back(2);
			w21.push_back(2);
			w21.push_back(1);
		}
		Rational c12 = z.coefficient(Word(2, w12));
		Rational c21 = z.coefficient(Word(2, w21));
		Rational predicted = -scalar_pow(t, 2 * m) / Rational(2 * m);
		rows.push_back(json{{"m", m},
		                    {"coeff_12", io::to_json(c12)},
		                    {"coeff_21", io::to_json(c21)},
		                    {"sum", io::to_json(Rational(c12 + c21))},
		                    {"predicted", io::to_json(predicted)},
		                    {"match_12", c12 == predicted},
		                    {"match_21", c21 == predicted}});
	}
	io::write_json(json{{"t", io::to_json(t)}, {"maxdeg", maxdeg}, {"rows", rows}}, o.out);
	return 0;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"truncated free Lie group toolkit"};
	app.require_subcommand(1);

	CommonOpts o;
	std::string xfile, yfile, sfile, tfile, mode = "grouplike", tstr = "1";
	std::vector<std::string> xis;
	std::string norm_target;
	int steps = 1024;
	int cx_maxdeg = 8;

	auto *bch_cmd = app.add_subcommand("bch", "Campbell-Hausdorff composition of two Lie series");
	bch_cmd->add_option("x", xfile, "first Lie series file")->required();
	bch_cmd->add_option("y", yfile, "second Lie series file")->required();
	add_common(bch_cmd, o);

	auto *certify_cmd = app.add_subcommand("certify", "primitive / group-like certification");
	certify_cmd->add_option("series", sfile, "series file")->required();
	certify_cmd->add_option("--mode", mode, "primitive|grouplike")
	    ->check(CLI::IsMember({"primitive", "grouplike"}));
	add_common(certify_cmd, o);

	auto *coproduct_cmd = app.add_subcommand("coproduct", "coproduct of a series");
	coproduct_cmd->add_option("series", sfile, "series file")->required();
	add_common(coproduct_cmd, o);

	auto *ordexp_cmd = app.add_subcommand("ordexp", "ordered exponential of a path");
	ordexp_cmd->add_option("path", sfile, "path file")->required();
	ordexp_cmd->add_option("--t", tstr, "evaluation time (rational, e.g. 1/2)");
	ordexp_cmd->add_option("--steps", steps, "grid steps for float mode");
	add_common(ordexp_cmd, o);

	auto *eval_cmd = app.add_subcommand("eval", "evaluate a series at a matrix tuple");
	eval_cmd->add_option("series", sfile, "series or Lie series file")->required();
	eval_cmd->add_option("target", tfile, "matrix target file")->required();
	add_common(eval_cmd, o);

	auto *norms_cmd = app.add_subcommand("norms", "weighted norms of a series");
	norms_cmd->add_option("series", sfile, "series file")->required();
	norms_cmd->add_option("--xi", xis, "dilation parameters (rational)")->required();
	norms_cmd->add_option("--target", norm_target, "also report min admissible xi of a target");
	add_common(norms_cmd, o);

	auto *cx_cmd = app.add_subcommand("counterexample",
	                                  "alternating-word coefficients of ln(exp(t w1) exp(t w2)) "
	                                  "against the -t^{2m}/(2m) prediction");
	cx_cmd->add_option("--t", tstr, "curve parameter (rational)");
	cx_cmd->add_option("--maxdeg", cx_maxdeg, "truncation degree (>= 2)");
	cx_cmd->add_option("--out", o.out, "output file (default: stdout)");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError &e)
	{
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}

	try
	{
		if (bch_cmd->parsed())
			return cmd_bch(xfile, yfile, o);
		if (certify_cmd->parsed())
			return cmd_certify(sfile, mode, o);
		if (coproduct_cmd->parsed())
			return cmd_coproduct(sfile, o);
		if (ordexp_cmd->parsed())
			return cmd_ordexp(sfile, tstr, steps, o);
		if (eval_cmd->parsed())
			return cmd_eval(sfile, tfile, o);
		if (norms_cmd->parsed())
			return cmd_norms(sfile, xis, norm_target, o);
		if (cx_cmd->parsed())
			return cmd_counterexample(tstr, cx_maxdeg, o);
	}
	catch (const ParseError &e)
	{
		std::cerr << "parse error: " << e.what() << "\n";
		return 2;
	}
	catch (const CertificationError &e)
	{
		std::cerr << "precondition violation: " << e.what() << "\n";
		for (const auto &v : e.violation_summaries)
			std::cerr << "  " << v << "\n";
		return 3;
	}
	catch (const PreconditionError &e)
	{
		std::cerr << "precondition violation: " << e.what() << "\n";
		return 3;
	}
	catch (const InternalError &e)
	{
		std::cerr << "internal self-check failure: " << e.what() << "\n";
		return 4;
	}
	catch (const Error &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return 4;
	}
	return 0;
}
