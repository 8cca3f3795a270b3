#ifndef FREELIE_WORD_HPP
#define FREELIE_WORD_HPP

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "freelie/error.hpp"

namespace freelie {

/// A monomial index: a finite sequence of letters from {1..n}. Immutable.
///
/// The canonical ordering used everywhere (map keys, serialized output,
/// certificate sweeps) is degree first, then lexicographic.
class Word {
public:
	Word(int n, std::vector<int> letters);

	// the empty word over {1..n}
	static Word empty(int n) { return Word(n, {}); }
	// the one-letter word (j)
	static Word letter(int n, int j) { return Word(n, {j}); }

	int alphabet_size() const { return n_; }
	int degree() const { return static_cast<int>(letters_.size()); }
	const std::vector<int> &letters() const { return letters_; }

	bool operator==(const Word &o) const
	{
		return n_ == o.n_ && letters_ == o.letters_;
	}

	std::string str() const; // e.g. "(1,2,1)"

private:
	int n_;
	std::vector<int> letters_;
};

// Canonical (degree, lex) comparison. Alphabet size is not part of the key;
// containers never mix alphabets because series operations check n up front.
struct WordLess {
	bool operator()(const Word &a, const Word &b) const
	{
		if (a.degree() != b.degree())
			return a.degree() < b.degree();
		return a.letters() < b.letters();
	}
};

// letters(a) followed by letters(b); degrees add
Word concat(const Word &a, const Word &b);

// The letters of w at the given 1-based positions, in increasing position
// order. Positions must be strictly increasing and within [1, degree].
Word subword(const Word &w, const std::vector<int> &positions);

// All interleavings of a and b as a multiset: one word per |a|-element subset
// I of {1..|a|+|b|}, so the result has exactly C(|a|+|b|,|a|) entries
// (duplicates included).
std::vector<Word> shuffles(const Word &a, const Word &b);

// true iff w is strictly smaller than every proper cyclic rotation
bool is_lyndon(const Word &w);

// All Lyndon words of degree <= maxdeg over {1..n}, sorted by (degree, lex).
std::vector<Word> lyndon_words(int n, int maxdeg);

// All words of the given exact degree over {1..n}, in lex order.
std::vector<Word> all_words(int n, int degree);

} // namespace freelie

#endif
