#ifndef FREELIE_HOPF_HPP
#define FREELIE_HOPF_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "freelie/series.hpp"

namespace freelie {

/// Sparse element of the tensor square, bounded by total degree. Keys are
/// (left word, right word) pairs in canonical order; multiplication acts
/// factorwise: (a (x) b)(a' (x) b') = aa' (x) bb'.
template <class R> class TensorSeries {
public:
	struct KeyLess {
		bool operator()(const std::pair<Word, Word> &x, const std::pair<Word, Word> &y) const
		{
			WordLess less;
			if (less(x.first, y.first))
				return true;
			if (less(y.first, x.first))
				return false;
			return less(x.second, y.second);
		}
	};
	using TermMap = std::map<std::pair<Word, Word>, R, KeyLess>;

	TensorSeries(int n, int maxdeg) : n_(n), maxdeg_(maxdeg)
	{
		if (n_ < 1 || maxdeg_ < 0)
			throw PreconditionError("tensor series: bad parameters");
	}

	TensorSeries(int n, int maxdeg, TermMap terms) : TensorSeries(n, maxdeg)
	{
		for (auto it = terms.begin(); it != terms.end();)
		{
			const auto &[l, r] = it->first;
			if (l.alphabet_size() != n_ || r.alphabet_size() != n_)
				throw PreconditionError("tensor series: term over wrong alphabet");
			if (l.degree() + r.degree() > maxdeg_)
				throw PreconditionError("tensor series: total degree exceeds bound");
			if (scalar_traits<R>::is_zero(it->second))
				it = terms.erase(it);
			else
				++it;
		}
		terms_ = std::move(terms);
	}

	int alphabet_size() const { return n_; }
	int maxdeg() const { return maxdeg_; }
	const TermMap &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }

	R coefficient(const Word &l, const Word &r) const
	{
		auto it = terms_.find({l, r});
		return it == terms_.end() ? R(0) : it->second;
	}

	bool operator==(const TensorSeries &o) const
	{
		return n_ == o.n_ && maxdeg_ == o.maxdeg_ && terms_ == o.terms_;
	}

private:
	int n_;
	int maxdeg_;
	TermMap terms_;
};

template <class R>
TensorSeries<R> operator+(const TensorSeries<R> &a, const TensorSeries<R> &b)
{
	if (a.alphabet_size() != b.alphabet_size())
		throw PreconditionError("tensor add: alphabet mismatch");
	int N = std::min(a.maxdeg(), b.maxdeg());
	typename TensorSeries<R>::TermMap acc;
	for (const auto &[k, c] : a.terms())
		if (k.first.degree() + k.second.degree() <= N)
			acc.emplace(k, c);
	for (const auto &[k, c] : b.terms())
	{
		if (k.first.degree() + k.second.degree() > N)
			continue;
		auto [it, fresh] = acc.emplace(k, c);
		if (!fresh)
			it->second = it->second + c;
	}
	return TensorSeries<R>(a.alphabet_size(), N, std::move(acc));
}

template <class R> TensorSeries<R> operator-(const TensorSeries<R> &a)
{
	typename TensorSeries<R>::TermMap acc;
	for (const auto &[k, c] : a.terms())
		acc.emplace(k, R(-c));
	return TensorSeries<R>(a.alphabet_size(), a.maxdeg(), std::move(acc));
}

template <class R>
TensorSeries<R> operator-(const TensorSeries<R> &a, const TensorSeries<R> &b)
{
	return a + (-b);
}

template <class R>
TensorSeries<R> operator*(const TensorSeries<R> &a, const TensorSeries<R> &b)
{
	if (a.alphabet_size() != b.alphabet_size())
		throw PreconditionError("tensor mul: alphabet mismatch");
	int N = std::min(a.maxdeg(), b.maxdeg());
	typename TensorSeries<R>::TermMap acc;
	for (const auto &[ka, ca] : a.terms())
	{
		int da = ka.first.degree() + ka.second.degree();
		if (da > N)
			continue;
		for (const auto &[kb, cb] : b.terms())
		{
			if (da + kb.first.degree() + kb.second.degree() > N)
				continue;
			R prod = ca * cb;
			if (scalar_traits<R>::is_zero(prod))
				continue;
			std::pair<Word, Word> k{concat(ka.first, kb.first), concat(ka.second, kb.second)};
			auto [it, fresh] = acc.emplace(std::move(k), prod);
			if (!fresh)
				it->second = it->second + prod;
		}
	}
	return TensorSeries<R>(a.alphabet_size(), N, std::move(acc));
}

// x (x) y, truncated by total degree
template <class R>
TensorSeries<R> tensor_product(const GradedSeries<R> &x, const GradedSeries<R> &y)
{
	if (x.alphabet_size() != y.alphabet_size())
		throw PreconditionError("tensor_product: alphabet mismatch");
	int N = std::min(x.maxdeg(), y.maxdeg());
	typename TensorSeries<R>::TermMap acc;
	for (const auto &[wx, cx] : x.terms())
	{
		if (wx.degree() > N)
			break;
		for (const auto &[wy, cy] : y.terms())
		{
			if (wx.degree() + wy.degree() > N)
				break;
			R prod = cx * cy;
			if (!scalar_traits<R>::is_zero(prod))
				acc.emplace(std::pair<Word, Word>{wx, wy}, prod);
		}
	}
	return TensorSeries<R>(x.alphabet_size(), N, std::move(acc));
}

// The coproduct: each stored word is split over all subsets of its positions,
// Delta(w) = sum_I w|I (x) w|complement(I).
template <class R> TensorSeries<R> coproduct(const GradedSeries<R> &x)
{
	typename TensorSeries<R>::TermMap acc;
	int n = x.alphabet_size();
	for (const auto &[w, c] : x.terms())
	{
		const auto &ls = w.letters();
		int k = w.degree();
		for (unsigned long mask = 0; mask < (1ul << k); ++mask)
		{
			std::vector<int> left, right;
			left.reserve(k);
			right.reserve(k);
			for (int i = 0; i < k; ++i)
				((mask >> i) & 1 ? left : right).push_back(ls[i]);
			std::pair<Word, Word> key{Word(n, std::move(left)), Word(n, std::move(right))};
			auto [it, fresh] = acc.emplace(std::move(key), c);
			if (!fresh)
				it->second = it->second + c;
		}
	}
	return TensorSeries<R>(n, x.maxdeg(), std::move(acc));
}

/// Machine-checkable outcome of a certification sweep. verdict is true iff no
/// violation was found; the stored list is capped, so it may be a prefix of
/// the full violation set when the verdict is false.
template <class R> struct Certificate {
	struct Violation {
		Word alpha;
		Word beta;
		R defect;
	};

	bool verdict = true;
	std::vector<Violation> violations;

	std::vector<std::string> summaries() const
	{
		std::vector<std::string> out;
		for (const auto &v : violations)
			out.push_back("alpha=" + v.alpha.str() + " beta=" + v.beta.str() +
			              " defect=" + scalar_traits<R>::to_string(v.defect));
		return out;
	}
};

struct CertifyOptions {
	std::size_t max_violations = 16;
	// |defect| <= tolerance counts as satisfied; keep 0 for exact scalars
	double tolerance = 0.0;
};

namespace detail {

template <class R> bool within_tolerance(const R &defect, const CertifyOptions &opts)
{
	if constexpr (scalar_traits<R>::exact)
		return scalar_traits<R>::is_zero(defect);
	else
		return scalar_traits<R>::to_double(scalar_traits<R>::abs(defect)) <= opts.tolerance;
}

template <class R>
void record(Certificate<R> &cert, const Word &a, const Word &b, const R &defect,
            const CertifyOptions &opts)
{
	cert.verdict = false;
	if (cert.violations.size() < opts.max_violations)
		cert.violations.push_back({a, b, defect});
}

} // namespace detail

// Friedrichs criterion: z lies in the free Lie algebra iff
// Delta(z) = z (x) 1 + 1 (x) z up to the truncation degree.
template <class R>
Certificate<R> is_primitive(const GradedSeries<R> &z, const CertifyOptions &opts = {})
{
	int n = z.alphabet_size();
	TensorSeries<R> residual = coproduct(z);
	typename TensorSeries<R>::TermMap prim;
	Word eps = Word::empty(n);
	for (const auto &[w, c] : z.terms())
	{
		prim[{w, eps}] = prim[{w, eps}] + c;
		prim[{eps, w}] = prim[{eps, w}] + c;
	}
	residual = residual - TensorSeries<R>(n, z.maxdeg(), std::move(prim));

	Certificate<R> cert;
	for (const auto &[k, c] : residual.terms())
		if (!detail::within_tolerance(c, opts))
			detail::record(cert, k.first, k.second, c, opts);
	return cert;
}

// One equation of the shuffle system: c_alpha c_beta - sum over all
// interleavings mu of c_mu. Zero iff that equation holds for g.
template <class R>
R shuffle_defect(const GradedSeries<R> &g, const Word &alpha, const Word &beta)
{
	if (alpha.degree() + beta.degree() > g.maxdeg())
		throw PreconditionError("shuffle_defect: degree overflow");
	R rhs(0);
	for (const Word &mu : shuffles(alpha, beta))
		rhs = rhs + g.coefficient(mu);
	return R(g.coefficient(alpha) * g.coefficient(beta) - rhs);
}

// Ree criterion in quadratic-system form: g is group-like iff its constant
// term is 1 and every shuffle equation holds. The sweep runs over all word
// pairs (alpha, beta) with alpha <= beta in canonical order; equations with an
// empty word reduce to the constant-term check and are skipped.
template <class R>
Certificate<R> is_grouplike(const GradedSeries<R> &g, const CertifyOptions &opts = {})
{
	Certificate<R> cert;
	int n = g.alphabet_size();
	int N = g.maxdeg();

	R unit_defect = R(g.constant_term() - R(1));
	if (!detail::within_tolerance(unit_defect, opts))
		detail::record(cert, Word::empty(n), Word::empty(n), unit_defect, opts);

	WordLess less;
	for (int da = 1; 2 * da <= N; ++da)
	{
		for (const Word &alpha : all_words(n, da))
			for (int db = da; da + db <= N; ++db)
				for (const Word &beta : all_words(n, db))
				{
					if (da == db && less(beta, alpha))
						continue;
					R defect = shuffle_defect(g, alpha, beta);
					if (!detail::within_tolerance(defect, opts))
						detail::record(cert, alpha, beta, defect, opts);
				}
	}
	return cert;
}

// Direct form of the same criterion: materializes both sides of
// Delta g = g (x) g. Kept deliberately separate from the shuffle sweep so the
// two routes can be compared against each other.
template <class R> bool is_grouplike_direct(const GradedSeries<R> &g)
{
	if (!scalar_traits<R>::is_zero(R(g.constant_term() - R(1))))
		return false;
	return coproduct(g) == tensor_product(g, g);
}

} // namespace freelie

#endif
