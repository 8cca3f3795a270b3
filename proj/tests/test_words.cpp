#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "freelie/word.hpp"

#include "oracle.hpp"

using namespace freelie;

namespace {

long binomial(int n, int k)
{
	long r = 1;
	for (int i = 1; i <= k; ++i)
		r = r * (n - k + i) / i;
	return r;
}

std::multiset<std::vector<int>> as_multiset(const std::vector<Word> &ws)
{
	std::multiset<std::vector<int>> s;
	for (const auto &w : ws)
		s.insert(w.letters());
	return s;
}

} // namespace

TEST_CASE("word construction validates letters")
{
	CHECK_THROWS_AS(Word(2, {1, 3}), PreconditionError);
	CHECK_THROWS_AS(Word(0, {}), PreconditionError);
	CHECK(Word(2, {1, 2, 1}).degree() == 3);
	CHECK(Word::empty(3).degree() == 0);
}

TEST_CASE("concat")
{
	CHECK(concat(Word(3, {1, 2}), Word(3, {3})) == Word(3, {1, 2, 3}));
	CHECK(concat(Word(1, {1}), Word::empty(1)) == Word(1, {1}));
	CHECK(concat(Word(2, {2, 2}), Word(2, {1})) == Word(2, {2, 2, 1}));
	CHECK_THROWS_AS(concat(Word(2, {1}), Word(3, {1})), PreconditionError);
}

TEST_CASE("subword")
{
	CHECK(subword(Word(2, {1, 2, 1}), {1, 3}) == Word(2, {1, 1}));
	CHECK(subword(Word(2, {1, 2}), {}) == Word::empty(2));
	CHECK(subword(Word(3, {3, 1, 2}), {2}) == Word(3, {1}));
	CHECK_THROWS_AS(subword(Word(2, {1, 2}), {3}), PreconditionError);
	CHECK_THROWS_AS(subword(Word(2, {1, 2}), {2, 1}), PreconditionError);
}

TEST_CASE("shuffles: small cases")
{
	auto s1 = as_multiset(shuffles(Word(2, {1}), Word(2, {2})));
	CHECK(s1 == std::multiset<std::vector<int>>{{1, 2}, {2, 1}});

	auto s2 = as_multiset(shuffles(Word(1, {1}), Word(1, {1})));
	CHECK(s2 == std::multiset<std::vector<int>>{{1, 1}, {1, 1}});

	auto s3 = as_multiset(shuffles(Word(3, {1, 2}), Word(3, {3})));
	CHECK(s3 == std::multiset<std::vector<int>>{{1, 2, 3}, {1, 3, 2}, {3, 1, 2}});
}

TEST_CASE("shuffles: count, symmetry and subword round-trip, exhaustive small")
{
	for (int n = 1; n <= 3; ++n)
		for (int da = 0; da <= 8; ++da)
			for (int db = 0; da + db <= 8; ++db)
				for (const Word &a : all_words(n, da))
					for (const Word &b : all_words(n, db))
					{
						auto sh = shuffles(a, b);
						if (static_cast<long>(sh.size()) != binomial(da + db, da))
						{
							CAPTURE(a.str());
							CAPTURE(b.str());
							REQUIRE(false);
						}
					}
	CHECK(true); // sweep completed without a count mismatch

	// symmetry and round-trip on a denser sample
	for (int n = 2; n <= 3; ++n)
		for (const Word &a : all_words(n, 3))
			for (const Word &b : all_words(n, 2))
			{
				CHECK(as_multiset(shuffles(a, b)) == as_multiset(shuffles(b, a)));
			}
}

TEST_CASE("shuffles emit subwords that reassemble the operands")
{
	Word a(2, {1, 2, 1}), b(2, {2, 1});
	// the recursive enumeration tracks subsets implicitly; rebuild them here
	// by checking that some increasing position set recovers a and its
	// complement recovers b, for every emitted shuffle
	for (const Word &mu : shuffles(a, b))
	{
		int k = mu.degree();
		bool found = false;
		for (unsigned long mask = 0; mask < (1ul << k) && !found; ++mask)
		{
			if (__builtin_popcountl(mask) != a.degree())
				continue;
			std::vector<int> inside, outside;
			for (int i = 0; i < k; ++i)
				((mask >> i) & 1 ? inside : outside).push_back(i + 1);
			found = subword(mu, inside) == a && subword(mu, outside) == b;
		}
		CHECK(found);
	}
}

TEST_CASE("is_lyndon")
{
	CHECK(is_lyndon(Word(2, {1, 2})));
	CHECK_FALSE(is_lyndon(Word(2, {2, 1})));
	CHECK_FALSE(is_lyndon(Word(2, {1, 1})));
	CHECK(is_lyndon(Word(2, {1})));
	CHECK(is_lyndon(Word(2, {1, 1, 2, 1, 2})));
	CHECK_THROWS_AS(is_lyndon(Word::empty(2)), PreconditionError);
}

TEST_CASE("lyndon_words: enumeration and Witt counts")
{
	auto l2 = lyndon_words(2, 2);
	REQUIRE(l2.size() == 3);
	CHECK(l2[0] == Word(2, {1}));
	CHECK(l2[1] == Word(2, {2}));
	CHECK(l2[2] == Word(2, {1, 2}));

	auto l3 = lyndon_words(2, 3);
	REQUIRE(l3.size() == 5);
	CHECK(l3[3] == Word(2, {1, 1, 2}));
	CHECK(l3[4] == Word(2, {1, 2, 2}));

	auto l1 = lyndon_words(1, 3);
	REQUIRE(l1.size() == 1);
	CHECK(l1[0] == Word(1, {1}));

	for (int n = 1; n <= 3; ++n)
	{
		auto all = lyndon_words(n, 8);
		std::map<int, long> per_degree;
		for (const auto &w : all)
		{
			CHECK(is_lyndon(w));
			per_degree[w.degree()]++;
		}
		for (int d = 1; d <= 8; ++d)
			CHECK(per_degree[d] == oracle::witt_count(n, d));
	}
}

TEST_CASE("lyndon_words are sorted by degree then lex")
{
	auto all = lyndon_words(3, 5);
	WordLess less;
	for (size_t i = 0; i + 1 < all.size(); ++i)
		CHECK(less(all[i], all[i + 1]));
}
