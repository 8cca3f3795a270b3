#ifndef FREELIE_SERIES_HPP
#define FREELIE_SERIES_HPP

#include <map>
#include <utility>

#include "freelie/scalar.hpp"
#include "freelie/word.hpp"

namespace freelie {

/// A noncommutative series in n generators, truncated at a fixed degree.
///
/// Stored sparsely as word -> coefficient with zero coefficients dropped and
/// keys in canonical (degree, lex) order. The truncation degree is part of the
/// value: binary operations truncate to the minimum of the two operands, so
/// information never silently improves.
template <class R> class GradedSeries {
public:
	using TermMap = std::map<Word, R, WordLess>;

	GradedSeries(int n, int maxdeg) : n_(n), maxdeg_(maxdeg)
	{
		if (n_ < 1)
			throw PreconditionError("series: alphabet size must be >= 1");
		if (maxdeg_ < 0)
			throw PreconditionError("series: truncation degree must be >= 0");
	}

	GradedSeries(int n, int maxdeg, TermMap terms) : GradedSeries(n, maxdeg)
	{
		for (auto it = terms.begin(); it != terms.end();)
		{
			if (it->first.alphabet_size() != n_)
				throw PreconditionError("series: term over wrong alphabet");
			if (it->first.degree() > maxdeg_)
				throw PreconditionError("series: term degree exceeds truncation degree");
			if (scalar_traits<R>::is_zero(it->second))
				it = terms.erase(it);
			else
				++it;
		}
		terms_ = std::move(terms);
	}

	static GradedSeries one(int n, int maxdeg)
	{
		GradedSeries s(n, maxdeg);
		s.terms_.emplace(Word::empty(n), R(1));
		return s;
	}

	static GradedSeries generator(int n, int maxdeg, int j)
	{
		if (maxdeg < 1)
			throw PreconditionError("series: generator needs maxdeg >= 1");
		GradedSeries s(n, maxdeg);
		s.terms_.emplace(Word::letter(n, j), R(1));
		return s;
	}

	int alphabet_size() const { return n_; }
	int maxdeg() const { return maxdeg_; }
	const TermMap &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	R coefficient(const Word &w) const
	{
		auto it = terms_.find(w);
		return it == terms_.end() ? R(0) : it->second;
	}

	R constant_term() const { return coefficient(Word::empty(n_)); }

	bool operator==(const GradedSeries &o) const
	{
		return n_ == o.n_ && maxdeg_ == o.maxdeg_ && terms_ == o.terms_;
	}

private:
	int n_;
	int maxdeg_;
	TermMap terms_;
};

namespace detail {

template <class R>
void require_compatible(const GradedSeries<R> &a, const GradedSeries<R> &b, const char *op)
{
	if (a.alphabet_size() != b.alphabet_size())
		throw PreconditionError(std::string(op) + ": alphabet mismatch");
}

} // namespace detail

template <class R>
GradedSeries<R> operator+(const GradedSeries<R> &a, const GradedSeries<R> &b)
{
	detail::require_compatible(a, b, "add");
	int N = std::min(a.maxdeg(), b.maxdeg());
	typename GradedSeries<R>::TermMap acc;
	for (const auto &[w, c] : a.terms())
	{
		if (w.degree() > N)
			break;
		acc[w] = c;
	}
	for (const auto &[w, c] : b.terms())
	{
		if (w.degree() > N)
			break;
		auto [it, fresh] = acc.emplace(w, c);
		if (!fresh)
			it->second = it->second + c;
	}
	return GradedSeries<R>(a.alphabet_size(), N, std::move(acc));
}

template <class R> GradedSeries<R> operator-(const GradedSeries<R> &a)
{
	typename GradedSeries<R>::TermMap acc;
	for (const auto &[w, c] : a.terms())
		acc.emplace(w, R(-c));
	return GradedSeries<R>(a.alphabet_size(), a.maxdeg(), std::move(acc));
}

template <class R>
GradedSeries<R> operator-(const GradedSeries<R> &a, const GradedSeries<R> &b)
{
	return a + (-b);
}

// Concatenation product. For each output word this accumulates the sum over
// its splits, c_w = sum_{w = uv} c_u(a) c_v(b), by walking stored term pairs;
// the (degree, lex) key order lets both loops stop early at the truncation.
template <class R>
GradedSeries<R> operator*(const GradedSeries<R> &a, const GradedSeries<R> &b)
{
	detail::require_compatible(a, b, "mul");
	int N = std::min(a.maxdeg(), b.maxdeg());
	typename GradedSeries<R>::TermMap acc;
	for (const auto &[wa, ca] : a.terms())
	{
		if (wa.degree() > N)
			break;
		for (const auto &[wb, cb] : b.terms())
		{
			if (wa.degree() + wb.degree() > N)
				break;
			R prod = ca * cb;
			if (scalar_traits<R>::is_zero(prod))
				continue;
			Word w = concat(wa, wb);
			auto [it, fresh] = acc.emplace(std::move(w), prod);
			if (!fresh)
				it->second = it->second + prod;
		}
	}
	return GradedSeries<R>(a.alphabet_size(), N, std::move(acc));
}

template <class R> GradedSeries<R> operator*(const R &s, const GradedSeries<R> &a)
{
	typename GradedSeries<R>::TermMap acc;
	for (const auto &[w, c] : a.terms())
		acc.emplace(w, R(s * c));
	return GradedSeries<R>(a.alphabet_size(), a.maxdeg(), std::move(acc));
}

template <class R> GradedSeries<R> operator*(const GradedSeries<R> &a, const R &s)
{
	return s * a;
}

// sum_{m<=N} x^m / m!, defined on series with zero constant term
template <class R> GradedSeries<R> exp(const GradedSeries<R> &x)
{
	if (!scalar_traits<R>::is_zero(x.constant_term()))
		throw PreconditionError("exp: nonzero constant term");
	int N = x.maxdeg();
	auto r = GradedSeries<R>::one(x.alphabet_size(), N);
	auto term = GradedSeries<R>::one(x.alphabet_size(), N);
	for (int m = 1; m <= N && !term.is_zero(); ++m)
	{
		term = term * x;
		term = R(R(1) / R(m)) * term;
		r = r + term;
	}
	return r;
}

// sum_{m<=N} (-1)^{m-1} (g-1)^m / m, defined on series with constant term 1
template <class R> GradedSeries<R> ln(const GradedSeries<R> &g)
{
	if (!scalar_traits<R>::is_zero(R(g.constant_term() - R(1))))
		throw PreconditionError("ln: constant term is not 1");
	int N = g.maxdeg();
	GradedSeries<R> y = g - GradedSeries<R>::one(g.alphabet_size(), N);
	GradedSeries<R> r(g.alphabet_size(), N);
	auto power = GradedSeries<R>::one(g.alphabet_size(), N);
	for (int m = 1; m <= N && !power.is_zero(); ++m)
	{
		power = power * y;
		R coef = R(1) / R(m);
		if (m % 2 == 0)
			coef = -coef;
		r = r + coef * power;
	}
	return r;
}

// grading dilation: scales the degree-j component by xi^j; xi = 0 projects
// onto the constant term
template <class R> GradedSeries<R> m_xi(const GradedSeries<R> &x, const R &xi)
{
	if (xi < R(0))
		throw PreconditionError("m_xi: negative dilation parameter");
	typename GradedSeries<R>::TermMap acc;
	for (const auto &[w, c] : x.terms())
	{
		R scaled = c * scalar_pow(xi, w.degree());
		if (!scalar_traits<R>::is_zero(scaled))
			acc.emplace(w, scaled);
	}
	return GradedSeries<R>(x.alphabet_size(), x.maxdeg(), std::move(acc));
}

// the sign-reversal anti-automorphism: word w contributes (-1)^{|w|} times the
// coefficient of the reversed word
template <class R> GradedSeries<R> circ(const GradedSeries<R> &x)
{
	typename GradedSeries<R>::TermMap acc;
	for (const auto &[w, c] : x.terms())
	{
		std::vector<int> rev(w.letters().rbegin(), w.letters().rend());
		R v = (w.degree() % 2 == 0) ? c : R(-c);
		acc.emplace(Word(w.alphabet_size(), std::move(rev)), v);
	}
	return GradedSeries<R>(x.alphabet_size(), x.maxdeg(), std::move(acc));
}

// weighted l1 norm sum_w xi^{|w|} |c_w| of the stored truncation
template <class R> R xi_norm(const GradedSeries<R> &x, const R &xi)
{
	if (!(xi > R(0)))
		throw PreconditionError("xi_norm: requires xi > 0");
	R s(0);
	for (const auto &[w, c] : x.terms())
		s = s + scalar_pow(xi, w.degree()) * scalar_traits<R>::abs(c);
	return s;
}

template <class R> GradedSeries<R> homogeneous_component(const GradedSeries<R> &x, int j)
{
	if (j < 0 || j > x.maxdeg())
		throw PreconditionError("homogeneous_component: degree out of range");
	typename GradedSeries<R>::TermMap acc;
	for (const auto &[w, c] : x.terms())
		if (w.degree() == j)
			acc.emplace(w, c);
	return GradedSeries<R>(x.alphabet_size(), x.maxdeg(), std::move(acc));
}

// Re-truncates to the given degree. Raising the degree asserts that the
// dropped tail was genuinely zero (exact polynomial data, e.g. CLI inputs).
template <class R> GradedSeries<R> regrade(const GradedSeries<R> &x, int maxdeg)
{
	typename GradedSeries<R>::TermMap acc;
	for (const auto &[w, c] : x.terms())
		if (w.degree() <= maxdeg)
			acc.emplace(w, c);
	return GradedSeries<R>(x.alphabet_size(), maxdeg, std::move(acc));
}

inline GradedSeries<double> to_float(const GradedSeries<Rational> &x)
{
	GradedSeries<double>::TermMap acc;
	for (const auto &[w, c] : x.terms())
		acc.emplace(w, c.get_d());
	return GradedSeries<double>(x.alphabet_size(), x.maxdeg(), std::move(acc));
}

} // namespace freelie

#endif
