#include "sgt/freegroup.h"

#include "sgt/exactalg.h"

#include <algorithm>
#include <cstdlib>

namespace sgt {

Word reduce(std::span<const Letter> raw)
{
	Word w;
	auto &out = w.runs_;
	for (const Letter &l : raw) {
		if (l.gen < 1)
			throw DomainError("reduce: generator index must be positive");
		if (l.exp == 0)
			continue;
		if (!out.empty() && out.back().gen == l.gen) {
			out.back().exp += l.exp;
			if (out.back().exp == 0)
				out.pop_back();
		} else {
			out.push_back(l);
		}
	}
	return w;
}

Word Word::generator(int gen, std::int64_t exp)
{
	const Letter l{gen, exp};
	return reduce(std::span<const Letter>(&l, 1));
}

std::int64_t Word::length() const
{
	std::int64_t n = 0;
	for (const Letter &l : runs_)
		n += std::llabs(l.exp);
	return n;
}

int Word::max_generator() const
{
	int m = 0;
	for (const Letter &l : runs_)
		m = std::max(m, l.gen);
	return m;
}

Word Word::operator*(const Word &rhs) const
{
	std::vector<Letter> raw = runs_;
	raw.insert(raw.end(), rhs.runs_.begin(), rhs.runs_.end());
	return reduce(raw);
}

Word Word::inverse() const
{
	std::vector<Letter> raw(runs_.rbegin(), runs_.rend());
	for (Letter &l : raw)
		l.exp = -l.exp;
	return reduce(raw);
}

Word Word::pow(std::int64_t n) const
{
	Word base = n < 0 ? inverse() : *this;
	Word out;
	for (std::int64_t i = 0; i < std::llabs(n); ++i)
		out = out * base;
	return out;
}

Word commutator(const Word &a, const Word &b) { return a * b * a.inverse() * b.inverse(); }

Word parse_word(std::string_view text, std::string_view alphabet)
{
	std::vector<Letter> raw;
	for (char c : text) {
		if (c == ' ' || c == '1')
			continue;
		const bool inv = c >= 'A' && c <= 'Z';
		const char lower = inv ? static_cast<char>(c - 'A' + 'a') : c;
		const auto pos = alphabet.find(lower);
		if (pos == std::string_view::npos)
			throw ParseError(std::string("parse_word: unknown letter '") + c + "'");
		raw.push_back({static_cast<int>(pos) + 1, inv ? -1 : 1});
	}
	return reduce(raw);
}

std::string to_string(const Word &w, std::string_view alphabet)
{
	if (w.empty())
		return "1";
	std::string s;
	for (const Letter &l : w.letters()) {
		if (l.gen > static_cast<int>(alphabet.size()))
			throw DomainError("to_string: generator outside the alphabet");
		char c = alphabet[static_cast<std::size_t>(l.gen - 1)];
		if (l.exp < 0)
			c = static_cast<char>(c - 'a' + 'A');
		s.append(static_cast<std::size_t>(std::llabs(l.exp)), c);
	}
	return s;
}

std::vector<std::int64_t> abelianize(const Word &w, int rank)
{
	std::vector<std::int64_t> v(static_cast<std::size_t>(std::max(rank, 0)), 0);
	for (const Letter &l : w.letters()) {
		if (l.gen > rank)
			throw DomainError("abelianize: generator index exceeds rank");
		v[static_cast<std::size_t>(l.gen - 1)] += l.exp;
	}
	return v;
}

CurvePresentation::CurvePresentation(int g, int r) : genus(g), cusps(r)
{
	if (g < 0 || r < 0)
		throw DomainError("CurvePresentation: genus and cusp count must be nonnegative");
}

Word CurvePresentation::relator() const
{
	Word rel;
	for (int i = 1; i <= genus; ++i)
		rel = rel * commutator(Word::generator(i), Word::generator(genus + i));
	for (int j = 1; j <= cusps; ++j)
		rel = rel * Word::generator(2 * genus + j);
	return rel;
}

AbelianInvariants presentation_abelianization(const CurvePresentation &p)
{
	const int n = p.generator_count();
	AbelianInvariants out;
	if (n == 0)
		return out;
	const auto row = abelianize(p.relator(), n);
	IntMatrix R(1, static_cast<std::size_t>(n));
	for (int j = 0; j < n; ++j)
		R(0, static_cast<std::size_t>(j)) = static_cast<long>(row[static_cast<std::size_t>(j)]);
	const SNFResult s = smith_normal_form(R);
	const auto factors = s.invariant_factors();
	out.free_rank = n - static_cast<int>(factors.size());
	for (const Int &d : factors)
		if (d != 1)
			out.torsion.push_back(d);
	return out;
}

std::vector<std::vector<std::int64_t>> inertia_abelian_images(const CurvePresentation &p)
{
	if (p.cusps < 1)
		return {};
	const std::size_t dim = static_cast<std::size_t>(2 * p.genus + p.cusps - 1);
	std::vector<std::vector<std::int64_t>> images;
	for (int j = 0; j + 1 < p.cusps; ++j) {
		std::vector<std::int64_t> v(dim, 0);
		v[static_cast<std::size_t>(2 * p.genus + j)] = 1;
		images.push_back(std::move(v));
	}
	std::vector<std::int64_t> last(dim, 0);
	for (int j = 0; j + 1 < p.cusps; ++j)
		last[static_cast<std::size_t>(2 * p.genus + j)] = -1;
	images.push_back(std::move(last));
	return images;
}

bool inertia_abelian_independence(const CurvePresentation &p)
{
	if (p.cusps < 2)
		throw DomainError("inertia_abelian_independence: needs at least two cusps");
	const auto images = inertia_abelian_images(p);
	const std::size_t dim = images.front().size();
	auto is_zero = [](const std::vector<std::int64_t> &v) {
		return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
	};
	for (std::size_t i = 0; i < images.size(); ++i)
		for (std::size_t j = i + 1; j < images.size(); ++j) {
			if (is_zero(images[i]) || is_zero(images[j]))
				continue;
			// ⟨v⟩ ∩ ⟨w⟩ = 0 in a free abelian group iff v, w are independent.
			IntMatrix B(dim, 2);
			for (std::size_t k = 0; k < dim; ++k) {
				B(k, 0) = static_cast<long>(images[i][k]);
				B(k, 1) = static_cast<long>(images[j][k]);
			}
			if (smith_normal_form(B).rank() < 2)
				return false;
		}
	return true;
}

} // namespace sgt
