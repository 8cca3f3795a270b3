#ifndef FREELIE_JSON_IO_HPP
#define FREELIE_JSON_IO_HPP

#include <string>
#include <variant>

#include <json.hpp>

#include "freelie/evalmap.hpp"
#include "freelie/hopf.hpp"
#include "freelie/lie.hpp"
#include "freelie/ordexp.hpp"
#include "freelie/series.hpp"

namespace freelie::io {

using nlohmann::json;

// Rationals serialize as {"num": ..., "den": ...}. Values that fit a 64-bit
// integer are emitted as JSON numbers, anything larger as decimal strings;
// both forms are accepted on input, so round-trips are always exact.
json to_json(const Rational &q);
Rational rational_from_json(const json &j);

// "p", "-p" or "p/q"
Rational parse_rational_string(const std::string &s);

json to_json(const Word &w);
Word word_from_json(const json &j, int n);

json to_json(const GradedSeries<Rational> &s);
json to_json(const GradedSeries<double> &s);

using AnySeries = std::variant<GradedSeries<Rational>, GradedSeries<double>>;
AnySeries series_from_json(const json &j);

json to_json(const LieSeries &s);
LieSeries lie_series_from_json(const json &j);

json to_json(const PiecewiseConstPath &p);
PiecewiseConstPath pc_path_from_json(const json &j);

json to_json(const PolyPath &p);
PolyPath poly_path_from_json(const json &j);

using AnyPath = std::variant<PiecewiseConstPath, PolyPath>;
AnyPath path_from_json(const json &j); // dispatches on "breakpoints"/"degree_polys"

json to_json(const MatrixTarget<Rational> &t);
json to_json(const MatrixTarget<double> &t);

using AnyTarget = std::variant<MatrixTarget<Rational>, MatrixTarget<double>>;
AnyTarget target_from_json(const json &j);

json to_json(const Matrix<Rational> &m);
json to_json(const Matrix<double> &m);

json load_json_file(const std::string &path);
void write_json(const json &j, const std::string &out_path); // "-" = stdout

// --- templated emitters -----------------------------------------------------

namespace detail {

template <class R> json coefficient_fields(const R &c)
{
	if constexpr (scalar_traits<R>::exact)
		return to_json(c);
	else
		return json{{"value", c}};
}

} // namespace detail

template <class R> json to_json(const Certificate<R> &cert)
{
	json violations = json::array();
	for (const auto &v : cert.violations)
		violations.push_back(json{{"alpha", to_json(v.alpha)},
		                          {"beta", to_json(v.beta)},
		                          {"defect", detail::coefficient_fields(v.defect)}});
	return json{{"verdict", cert.verdict}, {"violations", violations}};
}

template <class R> json to_json(const TensorSeries<R> &t)
{
	json terms = json::array();
	for (const auto &[k, c] : t.terms())
	{
		json entry = detail::coefficient_fields(c);
		entry["left"] = to_json(k.first);
		entry["right"] = to_json(k.second);
		terms.push_back(entry);
	}
	return json{{"n", t.alphabet_size()},
	            {"maxdeg", t.maxdeg()},
	            {"scalar", scalar_traits<R>::kind_name()},
	            {"terms", terms}};
}

template <class R> json to_json(const EvalReport<R> &rep)
{
	return json{{"value", to_json(rep.value)},
	            {"scalar", scalar_traits<R>::kind_name()},
	            {"trunc_degree", rep.trunc_degree},
	            {"nilpotent_exact", rep.nilpotent_exact},
	            {"tail", rep.tail_note}};
}

} // namespace freelie::io

#endif
