// Deterministic random inputs shared across the test suites.
#ifndef FREELIE_TESTS_SUPPORT_HPP
#define FREELIE_TESTS_SUPPORT_HPP

#include <random>

#include "freelie/lie.hpp"
#include "freelie/series.hpp"

namespace testsupport {

using namespace freelie;

using Rng = std::mt19937_64;

inline Rational random_rational(Rng &rng, int max_abs_num = 9, int max_den = 9)
{
	std::uniform_int_distribution<int> num(-max_abs_num, max_abs_num);
	std::uniform_int_distribution<int> den(1, max_den);
	return make_rational(num(rng), den(rng));
}

// sparse series with the given number of attempted terms (collisions merge)
inline GradedSeries<Rational> random_series(Rng &rng, int n, int maxdeg, int terms = 10,
                                            bool with_constant = true)
{
	std::uniform_int_distribution<int> deg(with_constant ? 0 : 1, maxdeg);
	std::uniform_int_distribution<int> letter(1, n);
	GradedSeries<Rational>::TermMap acc;
	for (int i = 0; i < terms; ++i)
	{
		int d = deg(rng);
		std::vector<int> ls(d);
		for (auto &l : ls)
			l = letter(rng);
		acc[Word(n, ls)] += random_rational(rng);
	}
	return GradedSeries<Rational>(n, maxdeg, std::move(acc));
}

// random element of the free Lie algebra in Lyndon coordinates
inline LieSeries random_lie(Rng &rng, int n, int maxdeg, int terms = 6)
{
	auto basis = lyndon_words(n, maxdeg);
	std::uniform_int_distribution<size_t> pick(0, basis.size() - 1);
	LieSeries::CoordMap coords;
	for (int i = 0; i < terms; ++i)
		coords[basis[pick(rng)]] += random_rational(rng, 5, 5);
	return LieSeries(n, maxdeg, std::move(coords));
}

// exp of a random Lie element, optionally times a second one
inline GradedSeries<Rational> random_grouplike(Rng &rng, int n, int maxdeg, bool product = false)
{
	auto g = exp(expand(random_lie(rng, n, maxdeg)));
	if (product)
		g = g * exp(expand(random_lie(rng, n, maxdeg)));
	return g;
}

// exact rank of a family of sparse coefficient vectors, by elimination on the
// smallest leading word
inline int rank_of(std::vector<std::map<Word, Rational, WordLess>> rows)
{
	int rank = 0;
	while (!rows.empty())
	{
		size_t best = 0;
		bool any = false;
		for (size_t i = 0; i < rows.size(); ++i)
		{
			if (rows[i].empty())
				continue;
			if (!any || WordLess{}(rows[i].begin()->first, rows[best].begin()->first))
			{
				best = i;
				any = true;
			}
		}
		if (!any)
			break;
		auto pivot_row = rows[best];
		rows.erase(rows.begin() + best);
		++rank;
		Word pw = pivot_row.begin()->first;
		Rational pc = pivot_row.begin()->second;
		for (auto &row : rows)
		{
			auto it = row.find(pw);
			if (it == row.end())
				continue;
			Rational f = it->second / pc;
			for (const auto &[w, c] : pivot_row)
			{
				row[w] -= f * c;
				if (sgn(row[w]) == 0)
					row.erase(w);
			}
		}
	}
	return rank;
}

} // namespace testsupport

#endif
