#include "freelie/word.hpp"

#include <algorithm>

namespace freelie {

Word::Word(int n, std::vector<int> letters) : n_(n), letters_(std::move(letters))
{
	if (n_ < 1)
		throw PreconditionError("alphabet size must be >= 1");
	for (int l : letters_)
		if (l < 1 || l > n_)
			throw PreconditionError("letter " + std::to_string(l) +
			                        " outside alphabet {1.." + std::to_string(n_) + "}");
}

std::string Word::str() const
{
	std::string s = "(";
	for (size_t i = 0; i < letters_.size(); ++i)
	{
		if (i)
			s += ',';
		s += std::to_string(letters_[i]);
	}
	s += ')';
	return s;
}

Word concat(const Word &a, const Word &b)
{
	if (a.alphabet_size() != b.alphabet_size())
		throw PreconditionError("concat: alphabet mismatch");
	std::vector<int> ls = a.letters();
	ls.insert(ls.end(), b.letters().begin(), b.letters().end());
	return Word(a.alphabet_size(), std::move(ls));
}

Word subword(const Word &w, const std::vector<int> &positions)
{
	std::vector<int> ls;
	ls.reserve(positions.size());
	int prev = 0;
	for (int p : positions)
	{
		if (p <= prev)
			throw PreconditionError("subword: positions must be strictly increasing");
		if (p < 1 || p > w.degree())
			throw PreconditionError("subword: position " + std::to_string(p) + " out of range");
		ls.push_back(w.letters()[p - 1]);
		prev = p;
	}
	return Word(w.alphabet_size(), std::move(ls));
}

namespace {

void interleave(const std::vector<int> &a, size_t ia, const std::vector<int> &b, size_t ib,
                std::vector<int> &cur, int n, std::vector<Word> &out)
{
	if (ia == a.size() && ib == b.size())
	{
		out.push_back(Word(n, cur));
		return;
	}
	if (ia < a.size())
	{
		cur.push_back(a[ia]);
		interleave(a, ia + 1, b, ib, cur, n, out);
		cur.pop_back();
	}
	if (ib < b.size())
	{
		cur.push_back(b[ib]);
		interleave(a, ia, b, ib + 1, cur, n, out);
		cur.pop_back();
	}
}

} // namespace

std::vector<Word> shuffles(const Word &a, const Word &b)
{
	if (a.alphabet_size() != b.alphabet_size())
		throw PreconditionError("shuffles: alphabet mismatch");
	std::vector<Word> out;
	std::vector<int> cur;
	cur.reserve(a.degree() + b.degree());
	interleave(a.letters(), 0, b.letters(), 0, cur, a.alphabet_size(), out);
	return out;
}

bool is_lyndon(const Word &w)
{
	const auto &ls = w.letters();
	const int k = w.degree();
	if (k == 0)
		throw PreconditionError("is_lyndon: empty word");
	// compare w with each proper rotation
	for (int r = 1; r < k; ++r)
	{
		bool smaller = false;
		for (int i = 0; i < k; ++i)
		{
			int x = ls[i];
			int y = ls[(i + r) % k];
			if (x != y)
			{
				smaller = x < y;
				break;
			}
		}
		if (!smaller)
			return false;
	}
	return true;
}

std::vector<Word> lyndon_words(int n, int maxdeg)
{
	if (n < 1 || maxdeg < 1)
		throw PreconditionError("lyndon_words: need n >= 1 and maxdeg >= 1");
	// Duval's generation; emits Lyndon words in lex order, bucketed by degree
	std::vector<std::vector<Word>> buckets(maxdeg + 1);
	std::vector<int> w{1};
	while (!w.empty())
	{
		buckets[w.size()].push_back(Word(n, w));
		size_t m = w.size();
		while (w.size() < static_cast<size_t>(maxdeg))
			w.push_back(w[w.size() % m]);
		while (!w.empty() && w.back() == n)
			w.pop_back();
		if (!w.empty())
			++w.back();
	}
	std::vector<Word> out;
	for (auto &bucket : buckets)
		out.insert(out.end(), bucket.begin(), bucket.end());
	return out;
}

std::vector<Word> all_words(int n, int degree)
{
	std::vector<Word> out;
	std::vector<int> cur(degree, 1);
	if (degree == 0)
	{
		out.push_back(Word::empty(n));
		return out;
	}
	for (;;)
	{
		out.push_back(Word(n, cur));
		int i = degree - 1;
		while (i >= 0 && cur[i] == n)
			cur[i--] = 1;
		if (i < 0)
			break;
		++cur[i];
	}
	return out;
}

} // namespace freelie
