#ifndef FREELIE_LIE_HPP
#define FREELIE_LIE_HPP

#include <map>
#include <utility>

#include "freelie/hopf.hpp"
#include "freelie/series.hpp"

namespace freelie {

// xy - yx, truncated at the shared degree
template <class R>
GradedSeries<R> lie_bracket(const GradedSeries<R> &x, const GradedSeries<R> &y)
{
	detail::require_compatible(x, y, "lie_bracket");
	return x * y - y * x;
}

/// A free Lie algebra element in coordinates on the Lyndon bracket basis.
/// Exact rationals only: primitivity certification has no meaningful float
/// analogue, so coordinates never leave the rational world.
class LieSeries {
public:
	using CoordMap = std::map<Word, Rational, WordLess>;

	LieSeries(int n, int maxdeg) : n_(n), maxdeg_(maxdeg)
	{
		if (n_ < 1 || maxdeg_ < 0)
			throw PreconditionError("lie series: bad parameters");
	}

	LieSeries(int n, int maxdeg, CoordMap coords) : LieSeries(n, maxdeg)
	{
		for (auto it = coords.begin(); it != coords.end();)
		{
			if (it->first.alphabet_size() != n_)
				throw PreconditionError("lie series: coordinate over wrong alphabet");
			if (it->first.degree() > maxdeg_)
				throw PreconditionError("lie series: coordinate degree exceeds bound");
			if (!is_lyndon(it->first))
				throw PreconditionError("lie series: key " + it->first.str() + " is not a Lyndon word");
			if (sgn(it->second) == 0)
				it = coords.erase(it);
			else
				++it;
		}
		coords_ = std::move(coords);
	}

	int alphabet_size() const { return n_; }
	int maxdeg() const { return maxdeg_; }
	const CoordMap &coords() const { return coords_; }
	bool is_zero() const { return coords_.empty(); }

	Rational coordinate(const Word &w) const
	{
		auto it = coords_.find(w);
		return it == coords_.end() ? Rational(0) : it->second;
	}

	bool operator==(const LieSeries &o) const
	{
		return n_ == o.n_ && maxdeg_ == o.maxdeg_ && coords_ == o.coords_;
	}

	LieSeries operator-() const
	{
		CoordMap neg;
		for (const auto &[w, c] : coords_)
			neg.emplace(w, Rational(-c));
		return LieSeries(n_, maxdeg_, std::move(neg));
	}

private:
	int n_;
	int maxdeg_;
	CoordMap coords_;
};

// Standard right bracketing of a Lyndon word: letters map to generators,
// otherwise w = u v with v the longest proper Lyndon suffix and the result is
// [bracketing(u), bracketing(v)] expanded associatively.
inline GradedSeries<Rational> lyndon_bracketing(const Word &w, int maxdeg)
{
	if (!is_lyndon(w))
		throw PreconditionError("lyndon_bracketing: " + w.str() + " is not a Lyndon word");
	int n = w.alphabet_size();
	if (w.degree() == 1)
		return GradedSeries<Rational>::generator(n, maxdeg, w.letters()[0]);
	const auto &ls = w.letters();
	for (int i = 1; i < w.degree(); ++i)
	{
		Word v(n, std::vector<int>(ls.begin() + i, ls.end()));
		if (is_lyndon(v))
		{
			Word u(n, std::vector<int>(ls.begin(), ls.begin() + i));
			return lie_bracket(lyndon_bracketing(u, maxdeg), lyndon_bracketing(v, maxdeg));
		}
	}
	throw InternalError("lyndon_bracketing: no Lyndon suffix found"); // unreachable
}

inline GradedSeries<Rational> lyndon_bracketing(const Word &w)
{
	return lyndon_bracketing(w, w.degree());
}

// associative image sum_w coords[w] * bracketing(w)
inline GradedSeries<Rational> expand(const LieSeries &z)
{
	GradedSeries<Rational> r(z.alphabet_size(), z.maxdeg());
	for (const auto &[w, c] : z.coords())
		r = r + c * lyndon_bracketing(w, z.maxdeg());
	return r;
}

// Inverse of the basis expansion on certified primitive elements. The
// bracketing of a Lyndon word equals that word plus lex-larger words of the
// same degree, so a degreewise forward elimination in (degree, lex) order
// recovers the coordinates exactly.
inline LieSeries project_to_lyndon(const GradedSeries<Rational> &z)
{
	auto cert = is_primitive(z);
	if (!cert.verdict)
		throw CertificationError("project_to_lyndon: input is not primitive", cert.summaries());

	int n = z.alphabet_size();
	int N = z.maxdeg();
	LieSeries::CoordMap coords;
	GradedSeries<Rational> rest = z;
	for (const Word &ell : lyndon_words(n, N))
	{
		Rational c = rest.coefficient(ell);
		if (sgn(c) != 0)
		{
			coords.emplace(ell, c);
			rest = rest - c * lyndon_bracketing(ell, N);
		}
	}
	if (!rest.is_zero())
		throw InternalError("project_to_lyndon: residue after elimination of a primitive element");
	return LieSeries(n, N, std::move(coords));
}

// Campbell-Hausdorff composition, computed associatively as
// ln(exp(X) exp(Y)) and certified primitive before projection.
inline LieSeries bch(const LieSeries &x, const LieSeries &y)
{
	if (x.alphabet_size() != y.alphabet_size() || x.maxdeg() != y.maxdeg())
		throw PreconditionError("bch: operands must share alphabet and degree");
	GradedSeries<Rational> z = ln(exp(expand(x)) * exp(expand(y)));
	auto cert = is_primitive(z);
	if (!cert.verdict)
		throw InternalError("bch: primitivity self-check failed");
	return project_to_lyndon(z);
}

// ln(exp(t w1) exp(t w2)) over the two-letter alphabet
inline GradedSeries<Rational> log_product_series(const Rational &t, int maxdeg)
{
	if (maxdeg < 2)
		throw PreconditionError("log_product_series: needs maxdeg >= 2");
	auto g1 = t * GradedSeries<Rational>::generator(2, maxdeg, 1);
	auto g2 = t * GradedSeries<Rational>::generator(2, maxdeg, 2);
	return ln(exp(g1) * exp(g2));
}

} // namespace freelie

#endif
