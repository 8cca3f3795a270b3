#ifndef FREELIE_ORDEXP_HPP
#define FREELIE_ORDEXP_HPP

#include <functional>
#include <vector>

#include "freelie/hopf.hpp"
#include "freelie/lie.hpp"
#include "freelie/series.hpp"

namespace freelie {

// Polynomial in the time variable whose coefficients are series; index p
// holds the coefficient of t^p. Shared helper for the exact path machinery.
template <class R> struct SeriesPoly {
	std::vector<GradedSeries<R>> t_coeffs;

	static SeriesPoly zero() { return {}; }

	int t_degree() const { return static_cast<int>(t_coeffs.size()) - 1; }

	GradedSeries<R> eval(const R &t, int n, int maxdeg) const
	{
		GradedSeries<R> r(n, maxdeg);
		R tp(1);
		for (const auto &c : t_coeffs)
		{
			r = r + tp * c;
			tp = tp * t;
		}
		return r;
	}

	SeriesPoly &operator+=(const SeriesPoly &o)
	{
		for (size_t p = 0; p < o.t_coeffs.size(); ++p)
		{
			if (p < t_coeffs.size())
				t_coeffs[p] = t_coeffs[p] + o.t_coeffs[p];
			else
				t_coeffs.push_back(o.t_coeffs[p]);
		}
		return *this;
	}

	SeriesPoly operator*(const SeriesPoly &o) const
	{
		SeriesPoly r;
		for (size_t p = 0; p < t_coeffs.size(); ++p)
			for (size_t q = 0; q < o.t_coeffs.size(); ++q)
			{
				auto prod = t_coeffs[p] * o.t_coeffs[q];
				while (r.t_coeffs.size() <= p + q)
					r.t_coeffs.push_back(GradedSeries<R>(prod.alphabet_size(), prod.maxdeg()));
				r.t_coeffs[p + q] = r.t_coeffs[p + q] + prod;
			}
		return r;
	}

	// antiderivative with zero constant: t^p -> t^{p+1}/(p+1)
	SeriesPoly integrate(int n, int maxdeg) const
	{
		SeriesPoly r;
		r.t_coeffs.push_back(GradedSeries<R>(n, maxdeg));
		for (size_t p = 0; p < t_coeffs.size(); ++p)
			r.t_coeffs.push_back(R(R(1) / R(static_cast<int>(p) + 1)) * t_coeffs[p]);
		return r;
	}

	// slice every t-coefficient to its degree-j homogeneous part
	SeriesPoly homogeneous(int j) const
	{
		SeriesPoly r;
		for (const auto &c : t_coeffs)
			r.t_coeffs.push_back(homogeneous_component(c, j));
		return r;
	}

	void drop_zero_tail()
	{
		while (!t_coeffs.empty() && t_coeffs.back().is_zero())
			t_coeffs.pop_back();
	}
};

/// Lie-algebra-valued step function on [0,1]: value i applies on
/// [breakpoints[i], breakpoints[i+1]).
class PiecewiseConstPath {
public:
	PiecewiseConstPath(std::vector<Rational> breakpoints, std::vector<LieSeries> values)
	    : breakpoints_(std::move(breakpoints)), values_(std::move(values))
	{
		if (values_.empty() || breakpoints_.size() != values_.size() + 1)
			throw PreconditionError("pc path: need k+1 breakpoints for k values");
		if (breakpoints_.front() != 0 || breakpoints_.back() != 1)
			throw PreconditionError("pc path: breakpoints must run from 0 to 1");
		for (size_t i = 0; i + 1 < breakpoints_.size(); ++i)
			if (!(breakpoints_[i] < breakpoints_[i + 1]))
				throw PreconditionError("pc path: breakpoints must increase strictly");
		for (const auto &v : values_)
			if (v.alphabet_size() != values_[0].alphabet_size() ||
			    v.maxdeg() != values_[0].maxdeg())
				throw PreconditionError("pc path: values must share alphabet and degree");
	}

	int alphabet_size() const { return values_[0].alphabet_size(); }
	int maxdeg() const { return values_[0].maxdeg(); }
	const std::vector<Rational> &breakpoints() const { return breakpoints_; }
	const std::vector<LieSeries> &values() const { return values_; }

	const LieSeries &value_at(const Rational &t) const
	{
		if (t < 0 || t > 1)
			throw PreconditionError("pc path: time outside [0,1]");
		for (size_t i = 0; i + 1 < breakpoints_.size(); ++i)
			if (t < breakpoints_[i + 1])
				return values_[i];
		return values_.back(); // t == 1
	}

private:
	std::vector<Rational> breakpoints_;
	std::vector<LieSeries> values_;
};

/// Polynomial-in-t path in the free Lie algebra. Every t-coefficient must be
/// primitive (certified at construction); a polynomial that is primitive for
/// all t has primitive coefficients, so this check is coefficientwise.
class PolyPath {
public:
	PolyPath(int n, int maxdeg, std::vector<GradedSeries<Rational>> t_coeffs)
	    : n_(n), maxdeg_(maxdeg), t_coeffs_(std::move(t_coeffs))
	{
		for (size_t p = 0; p < t_coeffs_.size(); ++p)
		{
			const auto &c = t_coeffs_[p];
			if (c.alphabet_size() != n_ || c.maxdeg() != maxdeg_)
				throw PreconditionError("poly path: coefficient shape mismatch");
			auto cert = is_primitive(c);
			if (!cert.verdict)
				throw CertificationError("poly path: coefficient of t^" + std::to_string(p) +
				                             " is not primitive",
				                         cert.summaries());
		}
	}

	int alphabet_size() const { return n_; }
	int maxdeg() const { return maxdeg_; }
	const std::vector<GradedSeries<Rational>> &t_coeffs() const { return t_coeffs_; }

	GradedSeries<Rational> value_at(const Rational &t) const
	{
		SeriesPoly<Rational> p{t_coeffs_};
		return p.eval(t, n_, maxdeg_);
	}

	static PolyPath constant(const LieSeries &v)
	{
		return PolyPath(v.alphabet_size(), v.maxdeg(), {expand(v)});
	}

private:
	int n_;
	int maxdeg_;
	std::vector<GradedSeries<Rational>> t_coeffs_;
};

// Closed-form ordered exponential of a step path: the product of the piece
// exponentials exp((t_i - t_{i-1}) gamma_i) up to time t.
inline GradedSeries<Rational> ordered_exp_pc(const PiecewiseConstPath &path, const Rational &t)
{
	if (t < 0 || t > 1)
		throw PreconditionError("ordered_exp_pc: time outside [0,1]");
	int n = path.alphabet_size();
	int N = path.maxdeg();
	auto E = GradedSeries<Rational>::one(n, N);
	const auto &bp = path.breakpoints();
	for (size_t i = 0; i + 1 < bp.size(); ++i)
	{
		if (t <= bp[i])
			break;
		Rational dt = std::min(t, bp[i + 1]) - bp[i];
		E = E * exp(dt * expand(path.values()[i]));
	}
	return E;
}

// Degree-by-degree exact integration of E' = E gamma, E(0) = 1: the degree-j
// component satisfies (E^[j])' = sum_{i+k=j, k>=1} E^[i] gamma^[k], whose right
// side only involves lower degrees, so each step is one polynomial integration.
inline GradedSeries<Rational> ordered_exp_poly(const PolyPath &path, const Rational &t)
{
	if (t < 0)
		throw PreconditionError("ordered_exp_poly: negative time");
	int n = path.alphabet_size();
	int N = path.maxdeg();
	SeriesPoly<Rational> gamma{path.t_coeffs()};

	SeriesPoly<Rational> E;
	E.t_coeffs.push_back(GradedSeries<Rational>::one(n, N));
	for (int j = 1; j <= N; ++j)
	{
		SeriesPoly<Rational> rhs;
		for (int i = 0; i < j; ++i)
		{
			auto term = E.homogeneous(i) * gamma.homogeneous(j - i);
			term.drop_zero_tail();
			rhs += term;
		}
		rhs.drop_zero_tail();
		E += rhs.integrate(n, N);
	}
	return E.eval(t, n, N);
}

// Left-point product integration of the Volterra equation in float mode: on
// each step the propagator is the Picard fixed point for the frozen sample,
// i.e. the truncated exponential series of h*gamma(left endpoint).
inline GradedSeries<double>
volterra_solve(const std::function<GradedSeries<double>(double)> &path, double t, int steps)
{
	if (steps < 1)
		throw PreconditionError("volterra_solve: steps must be >= 1");
	if (t < 0)
		throw PreconditionError("volterra_solve: negative time");

	GradedSeries<double> first = path(0.0);
	int n = first.alphabet_size();
	int N = first.maxdeg();
	auto E = GradedSeries<double>::one(n, N);
	double h = t / steps;
	for (int m = 0; m < steps; ++m)
	{
		GradedSeries<double> y = h * path(m * h);
		// Picard iteration on the step, run to its fixed point: term m of the
		// truncated exponential series dies once its valuation exceeds N
		auto P = GradedSeries<double>::one(n, N);
		auto term = GradedSeries<double>::one(n, N);
		for (int k = 1; k <= N && !term.is_zero(); ++k)
		{
			term = term * y;
			term = (1.0 / k) * term;
			P = P + term;
		}
		E = E * P;
	}
	return E;
}

inline std::function<GradedSeries<double>(double)> float_sampler(const PiecewiseConstPath &path)
{
	return [path](double t) {
		Rational tr(t);
		if (tr > 1)
			tr = 1;
		if (tr < 0)
			tr = 0;
		return to_float(expand(path.value_at(tr)));
	};
}

inline std::function<GradedSeries<double>(double)> float_sampler(const PolyPath &path)
{
	std::vector<GradedSeries<double>> coeffs;
	for (const auto &c : path.t_coeffs())
		coeffs.push_back(to_float(c));
	int n = path.alphabet_size(), N = path.maxdeg();
	return [coeffs, n, N](double t) {
		SeriesPoly<double> p{coeffs};
		return p.eval(t, n, N);
	};
}

// The logarithmic derivative path of a certified group-like element g:
// gamma(t) = (M_t g)^{-1} d/dt (M_t g), where (M_t g)^[j] = t^j g^[j]. Each
// t-coefficient is a primitive element; the ordered exponential of gamma
// reproduces M_t g, hence g itself at t = 1.
inline PolyPath log_derivative_path(const GradedSeries<Rational> &g)
{
	auto cert = is_grouplike(g);
	if (!cert.verdict)
		throw CertificationError("log_derivative_path: input is not group-like", cert.summaries());

	int n = g.alphabet_size();
	int N = g.maxdeg();

	// M(t): t^j coefficient is g^[j]; derivative shifts down and scales
	SeriesPoly<Rational> M, D;
	for (int j = 0; j <= N; ++j)
		M.t_coeffs.push_back(homogeneous_component(g, j));
	for (int j = 1; j <= N; ++j)
		D.t_coeffs.push_back(Rational(j) * homogeneous_component(g, j));
	M.drop_zero_tail();
	D.drop_zero_tail();

	// geometric series for M^{-1}; u = M - 1 has valuation >= 1 in both the
	// generators and t, so N terms suffice
	SeriesPoly<Rational> u = M;
	u.t_coeffs[0] = u.t_coeffs[0] - GradedSeries<Rational>::one(n, N);
	u.drop_zero_tail();
	SeriesPoly<Rational> inv, upow;
	inv.t_coeffs.push_back(GradedSeries<Rational>::one(n, N));
	upow.t_coeffs.push_back(GradedSeries<Rational>::one(n, N));
	for (int k = 1; k <= N && !upow.t_coeffs.empty(); ++k)
	{
		upow = upow * u;
		upow.drop_zero_tail();
		if (upow.t_coeffs.empty())
			break;
		SeriesPoly<Rational> signed_pow = upow;
		if (k % 2 == 1)
			for (auto &c : signed_pow.t_coeffs)
				c = Rational(-1) * c;
		inv += signed_pow;
	}

	SeriesPoly<Rational> gamma = inv * D;
	gamma.drop_zero_tail();
	std::vector<GradedSeries<Rational>> coeffs = gamma.t_coeffs;
	if (coeffs.empty())
		coeffs.push_back(GradedSeries<Rational>(n, N));
	return PolyPath(n, N, std::move(coeffs));
}

} // namespace freelie

#endif
