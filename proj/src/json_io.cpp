#include "freelie/json_io.hpp"

#include <fstream>
#include <iostream>

namespace freelie::io {

namespace {

json integer_to_json(const mpz_class &z)
{
	if (z.fits_slong_p())
		return json(z.get_si());
	return json(z.get_str());
}

mpz_class integer_from_json(const json &j, const char *what)
{
	if (j.is_number_integer())
		return mpz_class(j.get<long>());
	if (j.is_string())
	{
		try
		{
			return mpz_class(j.get<std::string>());
		}
		catch (const std::invalid_argument &)
		{
			throw ParseError(std::string(what) + ": malformed integer string");
		}
	}
	throw ParseError(std::string(what) + ": expected integer or decimal string");
}

int small_int(const json &j, const char *what)
{
	if (!j.is_number_integer())
		throw ParseError(std::string(what) + ": expected an integer");
	return j.get<int>();
}

const json &field(const json &j, const char *name)
{
	auto it = j.find(name);
	if (it == j.end())
		throw ParseError(std::string("missing field \"") + name + "\"");
	return *it;
}

} // namespace

json to_json(const Rational &q)
{
	return json{{"num", integer_to_json(q.get_num())}, {"den", integer_to_json(q.get_den())}};
}

Rational rational_from_json(const json &j)
{
	if (j.is_number_integer())
		return Rational(j.get<long>());
	if (!j.is_object())
		throw ParseError("rational: expected {\"num\",\"den\"} or an integer");
	mpz_class num = integer_from_json(field(j, "num"), "num");
	mpz_class den = j.contains("den") ? integer_from_json(field(j, "den"), "den") : mpz_class(1);
	if (sgn(den) == 0)
		throw ParseError("rational: zero denominator");
	Rational q(num, den);
	q.canonicalize();
	return q;
}

Rational parse_rational_string(const std::string &s)
{
	auto slash = s.find('/');
	try
	{
		if (slash == std::string::npos)
			return Rational(mpz_class{s});
		mpz_class num(s.substr(0, slash));
		mpz_class den(s.substr(slash + 1));
		if (sgn(den) == 0)
			throw ParseError("rational: zero denominator");
		Rational q(num, den);
		q.canonicalize();
		return q;
	}
	catch (const std::invalid_argument &)
	{
		throw ParseError("malformed rational \"" + s + "\"");
	}
}

json to_json(const Word &w)
{
	return json(w.letters());
}

Word word_from_json(const json &j, int n)
{
	if (!j.is_array())
		throw ParseError("word: expected an array of letters");
	std::vector<int> letters;
	for (const auto &l : j)
		letters.push_back(small_int(l, "letter"));
	try
	{
		return Word(n, std::move(letters));
	}
	catch (const PreconditionError &e)
	{
		throw ParseError(e.what());
	}
}

namespace {

template <class R> json series_to_json(const GradedSeries<R> &s)
{
	json terms = json::array();
	for (const auto &[w, c] : s.terms())
	{
		json entry = detail::coefficient_fields(c);
		entry["word"] = to_json(w);
		terms.push_back(entry);
	}
	return json{{"n", s.alphabet_size()},
	            {"maxdeg", s.maxdeg()},
	            {"scalar", scalar_traits<R>::kind_name()},
	            {"terms", terms}};
}

template <class R, class CoefFn>
GradedSeries<R> series_terms_from_json(const json &j, CoefFn coef)
{
	int n = small_int(field(j, "n"), "n");
	int maxdeg = small_int(field(j, "maxdeg"), "maxdeg");
	const json &terms = field(j, "terms");
	if (!terms.is_array())
		throw ParseError("series: \"terms\" must be an array");
	typename GradedSeries<R>::TermMap acc;
	const Word *prev = nullptr;
	WordLess less;
	for (const auto &entry : terms)
	{
		Word w = word_from_json(field(entry, "word"), n);
		auto [it, fresh] = acc.emplace(std::move(w), coef(entry));
		if (!fresh)
			throw ParseError("series: duplicate word " + it->first.str());
		if (prev && !less(*prev, it->first))
			throw ParseError("series: terms not in canonical (degree, lex) order");
		prev = &it->first;
	}
	try
	{
		return GradedSeries<R>(n, maxdeg, std::move(acc));
	}
	catch (const PreconditionError &e)
	{
		throw ParseError(e.what());
	}
}

} // namespace

json to_json(const GradedSeries<Rational> &s) { return series_to_json(s); }
json to_json(const GradedSeries<double> &s) { return series_to_json(s); }

AnySeries series_from_json(const json &j)
{
	if (!j.is_object())
		throw ParseError("series: expected a JSON object");
	if (j.contains("coords") && !j.contains("terms"))
		throw ParseError("series: this looks like a Lie series document (\"coords\"); "
		                 "expected a graded series with \"terms\"");
	std::string kind = field(j, "scalar").get<std::string>();
	if (kind == "rational")
		return series_terms_from_json<Rational>(
		    j, [](const json &e) { return rational_from_json(e); });
	if (kind == "float")
		return series_terms_from_json<double>(j, [](const json &e) {
			const json &v = field(e, "value");
			if (!v.is_number())
				throw ParseError("series: float term needs numeric \"value\"");
			return v.get<double>();
		});
	throw ParseError("series: unknown scalar kind \"" + kind + "\"");
}

json to_json(const LieSeries &s)
{
	json coords = json::array();
	for (const auto &[w, c] : s.coords())
	{
		json entry = to_json(c);
		entry["lyndon"] = to_json(w);
		coords.push_back(entry);
	}
	return json{{"n", s.alphabet_size()}, {"maxdeg", s.maxdeg()}, {"coords", coords}};
}

LieSeries lie_series_from_json(const json &j)
{
	if (!j.is_object())
		throw ParseError("lie series: expected a JSON object");
	int n = small_int(field(j, "n"), "n");
	int maxdeg = small_int(field(j, "maxdeg"), "maxdeg");
	const json &coords = field(j, "coords");
	if (!coords.is_array())
		throw ParseError("lie series: \"coords\" must be an array");
	LieSeries::CoordMap acc;
	for (const auto &entry : coords)
	{
		Word w = word_from_json(field(entry, "lyndon"), n);
		auto [it, fresh] = acc.emplace(std::move(w), rational_from_json(entry));
		if (!fresh)
			throw ParseError("lie series: duplicate Lyndon word " + it->first.str());
	}
	try
	{
		return LieSeries(n, maxdeg, std::move(acc));
	}
	catch (const PreconditionError &e)
	{
		throw ParseError(e.what());
	}
}

json to_json(const PiecewiseConstPath &p)
{
	json bps = json::array();
	for (const auto &b : p.breakpoints())
		bps.push_back(to_json(b));
	json vals = json::array();
	for (const auto &v : p.values())
		vals.push_back(to_json(v));
	return json{{"breakpoints", bps}, {"values", vals}};
}

PiecewiseConstPath pc_path_from_json(const json &j)
{
	const json &bps = field(j, "breakpoints");
	const json &vals = field(j, "values");
	if (!bps.is_array() || !vals.is_array())
		throw ParseError("pc path: \"breakpoints\" and \"values\" must be arrays");
	std::vector<Rational> breakpoints;
	for (const auto &b : bps)
		breakpoints.push_back(rational_from_json(b));
	std::vector<LieSeries> values;
	for (const auto &v : vals)
		values.push_back(lie_series_from_json(v));
	try
	{
		return PiecewiseConstPath(std::move(breakpoints), std::move(values));
	}
	catch (const PreconditionError &e)
	{
		throw ParseError(e.what());
	}
}

json to_json(const PolyPath &p)
{
	// regroup by homogeneous degree: entry j lists the t-polynomial of the
	// degree-j component
	json polys = json::array();
	for (int deg = 1; deg <= p.maxdeg(); ++deg)
	{
		json tcoeffs = json::array();
		int last_nonzero = -1;
		for (size_t tp = 0; tp < p.t_coeffs().size(); ++tp)
		{
			auto slice = homogeneous_component(p.t_coeffs()[tp], deg);
			tcoeffs.push_back(to_json(slice));
			if (!slice.is_zero())
				last_nonzero = static_cast<int>(tp);
		}
		if (last_nonzero < 0)
			continue;
		while (static_cast<int>(tcoeffs.size()) > last_nonzero + 1)
			tcoeffs.erase(tcoeffs.size() - 1);
		polys.push_back(json{{"j", deg}, {"t_coeffs", tcoeffs}});
	}
	return json{{"n", p.alphabet_size()}, {"maxdeg", p.maxdeg()}, {"degree_polys", polys}};
}

PolyPath poly_path_from_json(const json &j)
{
	int n = small_int(field(j, "n"), "n");
	int maxdeg = small_int(field(j, "maxdeg"), "maxdeg");
	const json &polys = field(j, "degree_polys");
	if (!polys.is_array())
		throw ParseError("poly path: \"degree_polys\" must be an array");
	std::vector<GradedSeries<Rational>> t_coeffs;
	for (const auto &entry : polys)
	{
		int deg = small_int(field(entry, "j"), "j");
		if (deg < 1 || deg > maxdeg)
			throw ParseError("poly path: degree out of range");
		const json &tc = field(entry, "t_coeffs");
		if (!tc.is_array())
			throw ParseError("poly path: \"t_coeffs\" must be an array");
		for (size_t tp = 0; tp < tc.size(); ++tp)
		{
			auto any = series_from_json(tc[tp]);
			auto *s = std::get_if<GradedSeries<Rational>>(&any);
			if (!s)
				throw ParseError("poly path: coefficients must be rational series");
			for (const auto &[w, c] : s->terms())
				if (w.degree() != deg)
					throw ParseError("poly path: coefficient of degree slot " +
					                 std::to_string(deg) + " contains degree " +
					                 std::to_string(w.degree()));
			while (t_coeffs.size() <= tp)
				t_coeffs.push_back(GradedSeries<Rational>(n, maxdeg));
			t_coeffs[tp] = t_coeffs[tp] + regrade(*s, maxdeg);
		}
	}
	if (t_coeffs.empty())
		t_coeffs.push_back(GradedSeries<Rational>(n, maxdeg));
	try
	{
		return PolyPath(n, maxdeg, std::move(t_coeffs));
	}
	catch (const PreconditionError &e)
	{
		throw ParseError(e.what());
	}
}

AnyPath path_from_json(const json &j)
{
	if (!j.is_object())
		throw ParseError("path: expected a JSON object");
	if (j.contains("breakpoints"))
		return pc_path_from_json(j);
	if (j.contains("degree_polys"))
		return poly_path_from_json(j);
	throw ParseError("path: expected \"breakpoints\" (piecewise-constant) or "
	                 "\"degree_polys\" (polynomial)");
}

namespace {

template <class R> json matrix_to_json(const Matrix<R> &m)
{
	json rows = json::array();
	for (int i = 0; i < m.dim(); ++i)
	{
		json row = json::array();
		for (int j = 0; j < m.dim(); ++j)
		{
			if constexpr (scalar_traits<R>::exact)
			{
				const Rational &q = m(i, j);
				if (q.get_den() == 1 && q.get_num().fits_slong_p())
					row.push_back(q.get_num().get_si());
				else
					row.push_back(to_json(q));
			}
			else
				row.push_back(m(i, j));
		}
		rows.push_back(row);
	}
	return rows;
}

template <class R> json target_to_json(const MatrixTarget<R> &t)
{
	json mats = json::array();
	for (const auto &m : t.mats)
		mats.push_back(matrix_to_json(m));
	return json{{"n", t.n},
	            {"dim", t.dim},
	            {"mats", mats},
	            {"norm", t.norm_kind},
	            {"scalar", scalar_traits<R>::kind_name()}};
}

template <class R, class EntryFn> Matrix<R> matrix_from_json(const json &j, EntryFn entry)
{
	if (!j.is_array() || j.empty())
		throw ParseError("matrix: expected a non-empty array of rows");
	int d = static_cast<int>(j.size());
	Matrix<R> m(d);
	for (int i = 0; i < d; ++i)
	{
		const json &row = j[i];
		if (!row.is_array() || static_cast<int>(row.size()) != d)
			throw ParseError("matrix: rows must all have the matrix dimension");
		for (int k = 0; k < d; ++k)
			m(i, k) = entry(row[k]);
	}
	return m;
}

} // namespace

json to_json(const Matrix<Rational> &m) { return matrix_to_json(m); }
json to_json(const Matrix<double> &m) { return matrix_to_json(m); }

json to_json(const MatrixTarget<Rational> &t) { return target_to_json(t); }
json to_json(const MatrixTarget<double> &t) { return target_to_json(t); }

AnyTarget target_from_json(const json &j)
{
	if (!j.is_object())
		throw ParseError("matrix target: expected a JSON object");
	int n = small_int(field(j, "n"), "n");
	const json &mats = field(j, "mats");
	if (!mats.is_array() || mats.empty())
		throw ParseError("matrix target: \"mats\" must be a non-empty array");
	std::string norm = j.contains("norm") ? field(j, "norm").get<std::string>() : "max-row-sum";
	std::string kind = j.contains("scalar") ? field(j, "scalar").get<std::string>() : "rational";

	try
	{
		if (kind == "rational")
		{
			std::vector<Matrix<Rational>> ms;
			for (const auto &mj : mats)
				ms.push_back(matrix_from_json<Rational>(mj, [](const json &e) {
					if (e.is_number_float())
						throw ParseError("matrix target: non-integer entry in rational "
						                 "mode; use {\"num\",\"den\"} or \"scalar\":\"float\"");
					return rational_from_json(e);
				}));
			return MatrixTarget<Rational>(n, std::move(ms), norm);
		}
		if (kind == "float")
		{
			std::vector<Matrix<double>> ms;
			for (const auto &mj : mats)
				ms.push_back(matrix_from_json<double>(mj, [](const json &e) {
					if (e.is_number())
						return e.get<double>();
					return rational_from_json(e).get_d();
				}));
			return MatrixTarget<double>(n, std::move(ms), norm);
		}
	}
	catch (const PreconditionError &e)
	{
		throw ParseError(e.what());
	}
	throw ParseError("matrix target: unknown scalar kind \"" + kind + "\"");
}

json load_json_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ParseError("cannot open \"" + path + "\"");
	try
	{
		return json::parse(in);
	}
	catch (const json::parse_error &e)
	{
		throw ParseError("invalid JSON in \"" + path + "\": " + e.what());
	}
}

void write_json(const json &j, const std::string &out_path)
{
	if (out_path.empty() || out_path == "-")
	{
		std::cout << j.dump(2) << "\n";
		return;
	}
	std::ofstream out(out_path);
	if (!out)
		throw Error("cannot write \"" + out_path + "\"");
	out << j.dump(2) << "\n";
}

} // namespace freelie::io
