#pragma once

// Decision procedures on finitely generated subgroups of k^×: cyclic-subgroup
// equality, p-power twisting, power inclusions and Kummer classes modulo n-th powers.

#include "sgt/common.h"
#include "sgt/fieldarith.h"

#include <cstdint>
#include <optional>
#include <vector>

namespace sgt {

struct MultSubgroup {
	FieldDesc field;
	std::vector<FieldElem> generators;

	MultSubgroup(FieldDesc f, std::vector<FieldElem> gens);
};

/// ⟨a⟩ = ⟨b⟩ in k^×.
bool cyclic_equal(const FieldElem &a, const FieldElem &b);

struct PPowerResult {
	enum class Kind { Unique, None, All };
	Kind kind = Kind::None;
	std::int64_t sigma = 0; // meaningful for Unique

	static PPowerResult unique(std::int64_t s) { return {Kind::Unique, s}; }
	static PPowerResult none() { return {Kind::None, 0}; }
	static PPowerResult all() { return {Kind::All, 0}; }
	bool operator==(const PPowerResult &) const = default;
};

/// σ with ⟨a⟩^{p^σ} = ⟨b⟩ (negative σ meaning ⟨a⟩ = ⟨b⟩^{p^{-σ}}). Torsion a yields All
/// when ⟨a⟩ = ⟨b⟩. In 𝔽_p(t) the candidate comes from heights and is confirmed by
/// exact comparison with a Frobenius image; elsewhere exponent vectors are used.
PPowerResult solve_p_power(const FieldElem &a, const FieldElem &b, std::int64_t p);

/// Same contract, always decided on exponent vectors and torsion indices.
PPowerResult solve_p_power_by_exponents(const FieldElem &a, const FieldElem &b, std::int64_t p);

/// Least N prime to every element of T with Γ1^N ⊆ Γ2, or nullopt if none exists.
std::optional<Int> subgroup_power_inclusion(const MultSubgroup &g1, const MultSubgroup &g2,
                                            const std::vector<std::int64_t> &T);

struct KummerInvariant {
	std::int64_t n;
	FieldElem lam;
};

/// ⟨lam₁⟩k^{×n} = ⟨lam₂⟩k^{×n}. Rejects 4 | n over ℚ and ℚ(ρ) and p | n over 𝔽_p(t).
bool kummer_equal(const KummerInvariant &k1, const KummerInvariant &k2);

/// Class of a in k^×/k^{×n}: torsion index mod gcd(n, w) followed by exponents mod n
/// over the given support (which must contain every irreducible of a).
std::vector<std::int64_t> kummer_class(const FieldElem &a, std::int64_t n, const std::vector<FieldElem> &support);

struct SubgroupLattice {
	std::vector<FieldElem> support;        // canonical irreducibles, ascending
	std::vector<std::vector<Int>> basis;   // Hermite basis of the free image
	Int torsion_order = 1;                 // |Γ ∩ μ(k)|
};

SubgroupLattice exponent_vector_of_subgroup(const MultSubgroup &g);

} // namespace sgt
