#pragma once

// Words in a free group of finite rank, abelianization, and the standard
// presentation of the fundamental group of a genus-g curve with r punctures.

#include "sgt/common.h"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sgt {

/// One run x_gen^exp. Generators are numbered from 1.
struct Letter {
	int gen;
	std::int64_t exp;

	bool operator==(const Letter &) const = default;
};

/// A freely reduced word stored in run-length form: adjacent runs use
/// different generators and no exponent is zero.
class Word {
  public:
	Word() = default;

	static Word generator(int gen, std::int64_t exp = 1);

	const std::vector<Letter> &letters() const { return runs_; }
	bool empty() const { return runs_.empty(); }
	/// Length in the free-group sense (sum of |exponents|).
	std::int64_t length() const;
	int max_generator() const;

	Word operator*(const Word &rhs) const;
	Word inverse() const;
	Word pow(std::int64_t n) const;

	bool operator==(const Word &) const = default;

  private:
	friend Word reduce(std::span<const Letter> raw);
	std::vector<Letter> runs_;
};

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> raw);

/// [a, b] = a b a⁻¹ b⁻¹
Word commutator(const Word &a, const Word &b);

/// Letters of the text syntax, in generator order. Lowercase is the
/// generator, uppercase its inverse; with this alphabet `xyXY` is [x1, x2].
inline constexpr std::string_view kDefaultAlphabet = "xyzwabcdefghijklmnopqrstuv";

Word parse_word(std::string_view text, std::string_view alphabet = kDefaultAlphabet);
std::string to_string(const Word &w, std::string_view alphabet = kDefaultAlphabet);

/// Exponent-sum vector of w in ℤ^rank.
std::vector<std::int64_t> abelianize(const Word &w, int rank);

/// Surface-with-punctures presentation: generators α_1..α_g, β_1..β_g,
/// σ_1..σ_r (numbered 1..2g+r in that order) and one relator
/// [α_1,β_1]···[α_g,β_g]·σ_1···σ_r.
struct CurvePresentation {
	int genus = 0;
	int cusps = 0;

	CurvePresentation(int g, int r);

	int generator_count() const { return 2 * genus + cusps; }
	bool hyperbolic() const { return 2 - 2 * genus - cusps < 0; }
	Word relator() const;
};

/// ℤ^free_rank ⊕ ⊕ ℤ/t for t in torsion (each t > 1).
struct AbelianInvariants {
	int free_rank = 0;
	std::vector<Int> torsion;
};

AbelianInvariants presentation_abelianization(const CurvePresentation &p);

/// Images of σ_1..σ_r in the abelianization ℤ^{2g} ⊕ ℤ^{r-1}, using σ_r = −(σ_1+…+σ_{r−1}).
std::vector<std::vector<std::int64_t>> inertia_abelian_images(const CurvePresentation &p);

/// Whether the cyclic subgroups generated by the abelianized inertia
/// generators pairwise intersect trivially. Requires r ≥ 2.
bool inertia_abelian_independence(const CurvePresentation &p);

} // namespace sgt
