#ifndef FREELIE_SCALAR_HPP
#define FREELIE_SCALAR_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "freelie/error.hpp"

namespace freelie {

// Exact scalar: arbitrary-precision rational, kept canonical (lowest terms,
// positive denominator) by GMP.
using Rational = mpq_class;

// Builds a canonical rational, rejecting a zero denominator.
inline Rational make_rational(long num, long den = 1)
{
	if (den == 0)
		throw PreconditionError("rational with zero denominator");
	Rational q(num, den);
	q.canonicalize();
	return q;
}

// Uniform interface over the two coefficient kinds (exact rational / double).
template <class R> struct scalar_traits;

template <> struct scalar_traits<Rational> {
	static constexpr bool exact = true;
	static const char *kind_name() { return "rational"; }
	static Rational abs(const Rational &v) { return v < 0 ? Rational(-v) : v; }
	static bool is_zero(const Rational &v) { return sgn(v) == 0; }
	static double to_double(const Rational &v) { return v.get_d(); }
	static std::string to_string(const Rational &v) { return v.get_str(); }
};

template <> struct scalar_traits<double> {
	static constexpr bool exact = false;
	static const char *kind_name() { return "float"; }
	static double abs(double v) { return std::fabs(v); }
	static bool is_zero(double v) { return v == 0.0; }
	static double to_double(double v) { return v; }
	static std::string to_string(double v) { return std::to_string(v); }
};

// base^e for e >= 0 by repeated multiplication; exponents here are small.
template <class R> R scalar_pow(const R &base, int e)
{
	R r(1);
	for (int i = 0; i < e; ++i)
		r = r * base;
	return r;
}

} // namespace freelie

#endif
