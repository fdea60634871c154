#pragma once

// Abelianized Fox calculus in ℤ[ℤʳ], the Magnus embedding of the free
// metabelian group, relation-module membership, and the centralizer tests
// built on top of them.

#include "sgt/common.h"
#include "sgt/exactalg.h"
#include "sgt/freegroup.h"
#include "sgt/groupring.h"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sgt {

using Exponent = std::vector<std::int64_t>;

/// Laurent polynomial in r commuting variables with integer coefficients.
class LaurentElem {
  public:
	explicit LaurentElem(int rank = 0);

	static LaurentElem constant(int rank, const Int &c);
	static LaurentElem monomial(const Exponent &e, const Int &c = 1);

	int rank() const { return rank_; }
	const std::map<Exponent, Int> &terms() const { return terms_; }
	bool is_zero() const { return terms_.empty(); }
	Int coeff(const Exponent &e) const;
	/// Sum of coefficients.
	Int augmentation() const;

	LaurentElem operator+(const LaurentElem &rhs) const;
	LaurentElem operator-(const LaurentElem &rhs) const;
	LaurentElem operator-() const;
	LaurentElem operator*(const LaurentElem &rhs) const;
	LaurentElem shifted(const Exponent &e) const; // multiply by a monomial
	bool operator==(const LaurentElem &rhs) const = default;

  private:
	void check_rank(const LaurentElem &rhs) const;
	void add_term(const Exponent &e, const Int &c);

	int rank_;
	std::map<Exponent, Int> terms_;
};

/// x̄_i − 1 (i counted from 1).
LaurentElem generator_minus_one(int rank, int i);

std::string to_string(const LaurentElem &a, std::string_view alphabet = kDefaultAlphabet);

/// ∂w/∂x_i mapped to ℤ[ℤʳ].
LaurentElem fox_derivative(const Word &w, int i, int rank);
std::vector<LaurentElem> fox_gradient(const Word &w, int rank);

/// (w̄ − 1) == Σ_i ∂w/∂x_i · (x̄_i − 1).
bool fundamental_identity_check(const Word &w, int rank);

/// Σ_i a_i (x̄_i − 1) == 0.
bool bl_kernel_check(const std::vector<LaurentElem> &a);

/// Image of a free-group element in the Magnus representation of the free
/// metabelian group: abelian part plus abelianized Fox derivatives.
struct MetabelianElem {
	Exponent ab;
	std::vector<LaurentElem> deriv;

	static MetabelianElem identity(int rank);
	static MetabelianElem embed(const Word &w, int rank);

	int rank() const { return static_cast<int>(ab.size()); }
	bool satisfies_identity() const;
	bool operator==(const MetabelianElem &) const = default;
};

MetabelianElem magnus_mul(const MetabelianElem &u, const MetabelianElem &v);

// ---- truncated relation module ------------------------------------------

/// Element of ((ℤ/M)[(ℤ/N)ʳ])ʳ.
using GroupRingVector = std::vector<GroupRingElem>;

/// Σ a_i (x_i − 1) in (ℤ/M)[(ℤ/N)ʳ].
GroupRingElem relation_map(const GroupRingVector &a);

/// Reduction of a ℤ[ℤʳ] vector to level (N, M).
GroupRingVector truncate(const std::vector<LaurentElem> &a, std::int64_t N, std::int64_t M);

/// Generators of R ∩ ker(x_1ⁿ − 1) where R = ker(relation_map) at level (N, M).
std::vector<GroupRingVector> metabelian_centralizer_kernel(int r, std::int64_t n, std::int64_t N, std::int64_t M);

/// Componentwise transition of a vector to group level N_low.
GroupRingVector transition(const GroupRingVector &a, std::int64_t N_low);

/// Whether a lies in k·R at its level, i.e. a = k·b with relation_map(b) = 0.
bool in_scaled_relation_module(const GroupRingVector &a, std::int64_t k);

/// Every kernel generator at level (k·N_low, M) transitions into k·R at level (N_low, M).
bool centralizer_transition_check(int r, std::int64_t n, std::int64_t N_low, std::int64_t k, std::int64_t M);

// ---- block-triangular witness --------------------------------------------

/// Finite quotient G of the free group of rank r given by a permutation
/// image of each generator. Permutations act on {0..degree-1}.
struct PermQuotient {
	int degree = 1;
	std::vector<std::vector<int>> images;

	/// Regular representation of ⊕ ℤ/N_i with generator j sent to element images[j].
	static PermQuotient abelian(const std::vector<std::int64_t> &moduli, const std::vector<Exponent> &images);
	/// Trivial group on r generators.
	static PermQuotient trivial(int r);

	int rank() const { return static_cast<int>(images.size()); }
	std::vector<int> evaluate(const Word &w) const;
	/// Order of the generated permutation group.
	std::size_t order() const;
};

/// Builds ψ into block upper-triangular matrices over ℤ/ℓᵏ with
/// x ↦ (ρ(x) ρ(x); 0 ρ(x)) and x_i ↦ (ρ(x_i) 0; 0 1), then reports whether the
/// (1,2) blocks of ψ(y)ψ(x^{αg}) and ψ(x^{αg})ψ(y) agree.
bool prop115_witness(const PermQuotient &G, int x_index, const Word &y, std::int64_t alpha, std::int64_t ell,
                     int k);

} // namespace sgt
