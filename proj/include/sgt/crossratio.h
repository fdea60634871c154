#pragma once

// The projective line over k: points, Möbius maps, cross-ratios and Frobenius twists,
// together with the decision procedures that compare cross-ratios up to units and twists.

#include "sgt/fieldarith.h"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sgt {

/// [a : b] normalized to b = 1, or [1 : 0] for ∞.
class ProjPoint {
  public:
	ProjPoint(const FieldElem &a, const FieldElem &b);
	explicit ProjPoint(const FieldElem &x) : ProjPoint(x, FieldElem::one(x.field())) {}
	static ProjPoint infinity(const FieldDesc &f);

	const FieldElem &a() const { return a_; }
	const FieldElem &b() const { return b_; }
	const FieldDesc &field() const { return a_.field(); }
	bool is_infinity() const { return b_.is_zero(); }
	/// The affine coordinate; not defined at ∞.
	const FieldElem &value() const;

	bool operator==(const ProjPoint &) const = default;
	bool operator<(const ProjPoint &rhs) const;

  private:
	FieldElem a_, b_;
};

std::string to_string(const ProjPoint &x);
/// "inf" or a field element.
ProjPoint parse_proj_point(const std::string &text, const FieldDesc &f);

/// x ↦ (m00 x + m01)/(m10 x + m11), scaled so the first nonzero entry is 1.
class MobiusMap {
  public:
	MobiusMap(const FieldElem &m00, const FieldElem &m01, const FieldElem &m10, const FieldElem &m11);
	static MobiusMap identity(const FieldDesc &f);

	const FieldElem &operator()(int i, int j) const { return m_[static_cast<std::size_t>(2 * i + j)]; }
	const FieldDesc &field() const { return m_[0].field(); }

	ProjPoint apply(const ProjPoint &x) const;
	/// this ∘ rhs
	MobiusMap compose(const MobiusMap &rhs) const;
	MobiusMap inverse() const;
	/// Entrywise pⁿ-th power (the map conjugated by Frobenius).
	MobiusMap twisted(std::int64_t n) const;

	bool operator==(const MobiusMap &) const = default;

  private:
	std::array<FieldElem, 4> m_;
};

std::string to_string(const MobiusMap &f);

struct CuspSet {
	FieldDesc field;
	std::vector<ProjPoint> points;

	CuspSet(FieldDesc f, std::vector<ProjPoint> pts);
	std::size_t size() const { return points.size(); }
};

ProjPoint mobius_apply(const MobiusMap &f, const ProjPoint &x);

/// λ = [x₄,x₁][x₃,x₂] / ([x₄,x₂][x₃,x₁]) with [x,y] = a_x b_y − a_y b_x; sends (x₁,x₂,x₃) to (0,∞,1).
FieldElem cross_ratio(const ProjPoint &x1, const ProjPoint &x2, const ProjPoint &x3, const ProjPoint &x4);

/// The unique f with f(p_i) = q_i.
MobiusMap mobius_from_triples(const std::array<ProjPoint, 3> &p, const std::array<ProjPoint, 3> &q);

ProjPoint twist_point(const ProjPoint &x, std::int64_t n);
CuspSet twist_set(const CuspSet &E, std::int64_t n);

enum class Char0Verdict { Equal, RhoPair, HypothesisFails };
std::string to_string(Char0Verdict v);

/// Compares ⟨λ₁⟩,⟨λ₂⟩ and ⟨1−λ₁⟩,⟨1−λ₂⟩; throws InternalError if both agree yet
/// λ₁ ≠ λ₂ and {λ₁,λ₂} ≠ {ρ,ρ⁻¹}.
Char0Verdict decide_lambda_char0(const FieldElem &l1, const FieldElem &l2);

/// The unique n with λ₂ = λ₁^{pⁿ}, or nullopt when the subgroup hypotheses fail.
std::optional<std::int64_t> decide_lambda_charp(const FieldElem &l1, const FieldElem &l2);

/// All (X₂,Y₂) in the box, both nonzero, with (p^{X₁}−1)(p^{Y₁}−1) = (p^{X₂}−1)(p^{Y₂}−1).
std::vector<std::pair<std::int64_t, std::int64_t>> lemma235_solve(std::int64_t p, std::int64_t X1, std::int64_t Y1,
                                                                  std::int64_t bound);

enum class Lemma236Case { CaseA, CaseB, HypothesisFails };
std::string to_string(Lemma236Case c);

struct Lemma236Exponents {
	std::int64_t A1, A2, B1, B2, C1, C2;
};

/// Checks λ₁^{p^{A₁}−1} = λ₂^{p^{A₂}−1}, (λ₁−1)^{p^{B₁}−1} = (λ₂−1)^{p^{B₂}−1} and
/// (λ₁/(λ₁−1))^{p^{C₁}−1} = (λ₂/(λ₂−1))^{p^{C₂}−1}, negative exponents read after a common
/// pᵂ-th power. CaseA is preferred when both cases hold.
Lemma236Case lemma236_decide(const FieldElem &l1, const FieldElem &l2, const Lemma236Exponents &e);

/// Every 4-subset of E has a non-constant cross-ratio.
bool condition_star_check(const CuspSet &E);

} // namespace sgt
