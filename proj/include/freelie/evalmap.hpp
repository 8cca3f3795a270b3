#ifndef FREELIE_EVALMAP_HPP
#define FREELIE_EVALMAP_HPP

#include <cmath>
#include <string>
#include <vector>

#include "freelie/hopf.hpp"
#include "freelie/lie.hpp"
#include "freelie/series.hpp"

namespace freelie {

/// Dense square matrix, sized for desk-scale targets.
template <class R> class Matrix {
public:
	explicit Matrix(int d) : d_(d), a_(d * d, R(0))
	{
		if (d < 1)
			throw PreconditionError("matrix: dimension must be >= 1");
	}

	static Matrix identity(int d)
	{
		Matrix m(d);
		for (int i = 0; i < d; ++i)
			m(i, i) = R(1);
		return m;
	}

	int dim() const { return d_; }
	R &operator()(int i, int j) { return a_[i * d_ + j]; }
	const R &operator()(int i, int j) const { return a_[i * d_ + j]; }

	bool operator==(const Matrix &o) const { return d_ == o.d_ && a_ == o.a_; }

	bool is_zero() const
	{
		for (const auto &v : a_)
			if (!scalar_traits<R>::is_zero(v))
				return false;
		return true;
	}

	Matrix operator+(const Matrix &o) const
	{
		check_dim(o);
		Matrix r(d_);
		for (size_t i = 0; i < a_.size(); ++i)
			r.a_[i] = a_[i] + o.a_[i];
		return r;
	}

	Matrix operator-(const Matrix &o) const
	{
		check_dim(o);
		Matrix r(d_);
		for (size_t i = 0; i < a_.size(); ++i)
			r.a_[i] = a_[i] - o.a_[i];
		return r;
	}

	Matrix operator*(const Matrix &o) const
	{
		check_dim(o);
		Matrix r(d_);
		for (int i = 0; i < d_; ++i)
			for (int k = 0; k < d_; ++k)
			{
				const R &aik = (*this)(i, k);
				if (scalar_traits<R>::is_zero(aik))
					continue;
				for (int j = 0; j < d_; ++j)
					r(i, j) = r(i, j) + aik * o(k, j);
			}
		return r;
	}

	Matrix scaled(const R &s) const
	{
		Matrix r(d_);
		for (size_t i = 0; i < a_.size(); ++i)
			r.a_[i] = s * a_[i];
		return r;
	}

	// operator norm induced by the max norm: max row sum of absolute values
	R max_row_sum() const
	{
		R best(0);
		for (int i = 0; i < d_; ++i)
		{
			R s(0);
			for (int j = 0; j < d_; ++j)
				s = s + scalar_traits<R>::abs((*this)(i, j));
			if (s > best)
				best = s;
		}
		return best;
	}

private:
	void check_dim(const Matrix &o) const
	{
		if (d_ != o.d_)
			throw PreconditionError("matrix: dimension mismatch");
	}

	int d_;
	std::vector<R> a_;
};

inline Matrix<double> to_float(const Matrix<Rational> &m)
{
	Matrix<double> r(m.dim());
	for (int i = 0; i < m.dim(); ++i)
		for (int j = 0; j < m.dim(); ++j)
			r(i, j) = m(i, j).get_d();
	return r;
}

/// The codomain data of the evaluation homomorphism: n square matrices with a
/// chosen operator norm (max-row-sum is the only kind for now).
template <class R> struct MatrixTarget {
	int n = 0;
	int dim = 0;
	std::vector<Matrix<R>> mats;
	std::string norm_kind = "max-row-sum";

	MatrixTarget(int n_, std::vector<Matrix<R>> mats_, std::string norm = "max-row-sum")
	    : n(n_), mats(std::move(mats_)), norm_kind(std::move(norm))
	{
		if (n < 1 || mats.size() != static_cast<size_t>(n))
			throw PreconditionError("matrix target: need one matrix per generator");
		dim = mats[0].dim();
		for (const auto &m : mats)
			if (m.dim() != dim)
				throw PreconditionError("matrix target: dimension mismatch");
		if (norm_kind != "max-row-sum")
			throw PreconditionError("matrix target: unsupported norm kind");
	}
};

// smallest dilation parameter for which the evaluation is norm-controlled:
// the largest operator norm among the target matrices
template <class R> R min_xi(const MatrixTarget<R> &target)
{
	R best(0);
	for (const auto &m : target.mats)
	{
		R v = m.max_row_sum();
		if (v > best)
			best = v;
	}
	return best;
}

// Checks that every product of exactly `length` target matrices vanishes
// (which forces all longer products to vanish too). Zero partial products
// prune the search.
template <class R> bool products_vanish(const MatrixTarget<R> &target, int length)
{
	struct Walker {
		const MatrixTarget<R> &t;
		int want;
		bool rec(const Matrix<R> &acc, int len)
		{
			if (acc.is_zero())
				return true;
			if (len == want)
				return false; // nonzero product of full length
			for (const auto &b : t.mats)
				if (!rec(acc * b, len + 1))
					return false;
			return true;
		}
	} walker{target, length};
	for (const auto &b : target.mats)
		if (!walker.rec(b, 1))
			return false;
	return true;
}

/// Result of evaluating a series at a matrix tuple. nilpotent_exact reports a
/// verified fact: all products of length maxdeg+1 vanish, so the truncation
/// dropped nothing.
template <class R> struct EvalReport {
	Matrix<R> value;
	int trunc_degree = 0;
	bool nilpotent_exact = false;
	// "nilpotent-exact" or "truncation-only, no tail certificate"
	std::string tail_note;
};

// substitution of the target matrices for the generators:
// sum_{|w| <= N} c_w B_{w_1} ... B_{w_k}
template <class R>
EvalReport<R> eval_series(const GradedSeries<R> &x, const MatrixTarget<R> &target)
{
	if (x.alphabet_size() != target.n)
		throw PreconditionError("eval_series: alphabet size does not match target");
	Matrix<R> acc(target.dim);
	for (const auto &[w, c] : x.terms())
	{
		Matrix<R> prod = Matrix<R>::identity(target.dim);
		for (int l : w.letters())
			prod = prod * target.mats[l - 1];
		acc = acc + prod.scaled(c);
	}
	EvalReport<R> rep{acc, x.maxdeg(), products_vanish(target, x.maxdeg() + 1), ""};
	rep.tail_note = rep.nilpotent_exact ? "nilpotent-exact" : "truncation-only, no tail certificate";
	return rep;
}

// Scaling-and-squaring exponential with a Taylor core; the argument is scaled
// below 1/2, where 24 terms leave a remainder far under 1e-10 even for
// norms up to 10 before scaling.
inline Matrix<double> matrix_exp(const Matrix<double> &a)
{
	double norm = a.max_row_sum();
	int squarings = 0;
	double scale = 1.0;
	while (norm * scale > 0.5)
	{
		scale /= 2.0;
		++squarings;
	}
	Matrix<double> b = a.scaled(scale);
	Matrix<double> r = Matrix<double>::identity(a.dim());
	Matrix<double> term = Matrix<double>::identity(a.dim());
	for (int k = 1; k <= 24; ++k)
	{
		term = (term * b).scaled(1.0 / k);
		r = r + term;
	}
	for (int s = 0; s < squarings; ++s)
		r = r * r;
	return r;
}

// Exact exponential of a nilpotent rational matrix: the series terminates at
// the nilpotency index. Throws if the matrix is not nilpotent.
inline Matrix<Rational> matrix_exp_nilpotent(const Matrix<Rational> &a)
{
	Matrix<Rational> r = Matrix<Rational>::identity(a.dim());
	Matrix<Rational> term = Matrix<Rational>::identity(a.dim());
	for (int k = 1; k <= a.dim(); ++k)
	{
		term = (term * a).scaled(Rational(1, k));
		if (term.is_zero())
			return r + term;
		r = r + term;
	}
	throw PreconditionError("matrix_exp_nilpotent: matrix is not nilpotent");
}

namespace detail {

template <class R> double opnorm_as_double(const Matrix<R> &m)
{
	return scalar_traits<R>::to_double(m.max_row_sum());
}

} // namespace detail

// operator-norm distance between evaluating a product and multiplying the
// evaluations; zero (up to roundoff) whenever the target is nilpotent of
// index <= maxdeg+1
template <class R>
double homomorphism_defect(const GradedSeries<R> &g, const GradedSeries<R> &h,
                           const MatrixTarget<R> &target, const CertifyOptions &opts = {})
{
	auto cg = is_grouplike(g, opts);
	if (!cg.verdict)
		throw CertificationError("homomorphism_defect: first factor is not group-like",
		                         cg.summaries());
	auto ch = is_grouplike(h, opts);
	if (!ch.verdict)
		throw CertificationError("homomorphism_defect: second factor is not group-like",
		                         ch.summaries());
	Matrix<R> lhs = eval_series(g * h, target).value;
	Matrix<R> rhs = eval_series(g, target).value * eval_series(h, target).value;
	return detail::opnorm_as_double(lhs - rhs);
}

// operator-norm distance between evaluating exp(z) in the series world and
// exponentiating the evaluated matrix
inline double exp_vs_matrix_exp(const GradedSeries<Rational> &z,
                                const MatrixTarget<Rational> &target)
{
	auto cert = is_primitive(z);
	if (!cert.verdict)
		throw CertificationError("exp_vs_matrix_exp: input is not primitive", cert.summaries());
	Matrix<Rational> lhs = eval_series(exp(z), target).value;
	Matrix<Rational> zval = eval_series(z, target).value;
	if (products_vanish(target, target.dim))
	{
		// nilpotent target: both sides computable exactly
		Matrix<Rational> rhs = matrix_exp_nilpotent(zval);
		return detail::opnorm_as_double(lhs - rhs);
	}
	Matrix<double> rhs = matrix_exp(to_float(zval));
	return (to_float(lhs) - rhs).max_row_sum();
}

inline double exp_vs_matrix_exp(const GradedSeries<double> &z, const MatrixTarget<double> &target,
                                const CertifyOptions &opts = {})
{
	auto cert = is_primitive(z, opts);
	if (!cert.verdict)
		throw CertificationError("exp_vs_matrix_exp: input is not primitive", cert.summaries());
	Matrix<double> lhs = eval_series(exp(z), target).value;
	Matrix<double> rhs = matrix_exp(eval_series(z, target).value);
	return (lhs - rhs).max_row_sum();
}

// Solves eval(exp(z)) = U on the canonical two-generator nilpotent target
// (B1 = E12, B2 = E23 in dimension 3) for a 3x3 unit upper-triangular U:
// z = a w1 + b w2 + (c - ab/2) [w1, w2] with a = U12, b = U23, c = U13.
inline LieSeries heisenberg_preimage(const Matrix<Rational> &U)
{
	if (U.dim() != 3)
		throw PreconditionError("heisenberg_preimage: expected a 3x3 matrix");
	for (int i = 0; i < 3; ++i)
		if (U(i, i) != 1)
			throw PreconditionError("heisenberg_preimage: diagonal must be 1");
	for (int i = 0; i < 3; ++i)
		for (int j = 0; j < i; ++j)
			if (sgn(U(i, j)) != 0)
				throw PreconditionError("heisenberg_preimage: matrix must be upper triangular");

	Rational a = U(0, 1), b = U(1, 2), c = U(0, 2);
	LieSeries::CoordMap coords;
	coords.emplace(Word::letter(2, 1), a);
	coords.emplace(Word::letter(2, 2), b);
	coords.emplace(Word(2, {1, 2}), Rational(c - a * b / 2));
	return LieSeries(2, 2, std::move(coords));
}

// the canonical target used by the preimage construction
inline MatrixTarget<Rational> heisenberg_target()
{
	Matrix<Rational> b1(3), b2(3);
	b1(0, 1) = 1;
	b2(1, 2) = 1;
	return MatrixTarget<Rational>(2, {b1, b2});
}

} // namespace freelie

#endif
