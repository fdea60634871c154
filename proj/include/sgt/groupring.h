#pragma once

// Finite truncations (ℤ/M)[A] of completed group rings, A = ⊕ ℤ/N_i finite abelian,
// and the annihilator / transition analysis that models regularity of x^n − 1
// in the inverse limit.

#include "sgt/common.h"
#include "sgt/exactalg.h"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sgt {

class AbelianShape {
  public:
	explicit AbelianShape(std::vector<std::int64_t> moduli);
	static AbelianShape cyclic(std::int64_t n) { return AbelianShape({n}); }

	const std::vector<std::int64_t> &moduli() const { return moduli_; }
	std::size_t rank() const { return moduli_.size(); }
	std::size_t order() const { return order_; }
	bool is_cyclic() const { return moduli_.size() == 1; }

	/// Mixed-radix index of a group element (components reduced first).
	std::size_t index(const std::vector<std::int64_t> &elem) const;
	std::vector<std::int64_t> element(std::size_t index) const;
	/// Index of a + b.
	std::size_t add(std::size_t a, std::size_t b) const;
	std::size_t negate(std::size_t a) const;

	bool operator==(const AbelianShape &) const = default;

  private:
	std::vector<std::int64_t> moduli_;
	std::size_t order_ = 1;
};

/// Element of (ℤ/M)[A], stored densely over the elements of A.
class GroupRingElem {
  public:
	GroupRingElem(AbelianShape shape, std::int64_t modulus);

	static GroupRingElem zero(const AbelianShape &shape, std::int64_t modulus);
	static GroupRingElem one(const AbelianShape &shape, std::int64_t modulus);
	static GroupRingElem monomial(const AbelianShape &shape, std::int64_t modulus,
	                              const std::vector<std::int64_t> &exponent, std::int64_t coeff = 1);
	/// x_i^n − 1 where x_i generates the i-th cyclic factor.
	static GroupRingElem power_minus_one(const AbelianShape &shape, std::int64_t modulus, std::size_t gen,
	                                     std::int64_t n);
	static GroupRingElem from_coefficients(const AbelianShape &shape, std::int64_t modulus, ModVector coeffs);

	const AbelianShape &shape() const { return shape_; }
	std::int64_t modulus() const { return modulus_; }
	const ModVector &coefficients() const { return coeffs_; }
	std::int64_t coeff(const std::vector<std::int64_t> &g) const { return coeffs_[shape_.index(g)]; }
	bool is_zero() const;

	GroupRingElem operator+(const GroupRingElem &rhs) const;
	GroupRingElem operator-(const GroupRingElem &rhs) const;
	GroupRingElem operator-() const;
	GroupRingElem operator*(const GroupRingElem &rhs) const;
	GroupRingElem scaled(std::int64_t k) const;
	bool operator==(const GroupRingElem &rhs) const;

  private:
	void check_compatible(const GroupRingElem &rhs) const;

	AbelianShape shape_;
	std::int64_t modulus_;
	ModVector coeffs_;
};

GroupRingElem grmul(const GroupRingElem &a, const GroupRingElem &b);

/// Sum of coefficients mod M.
std::int64_t augment(const GroupRingElem &a);

/// Matrix of y ↦ a·y in the group-element basis.
ModMatrix multiplication_matrix(const GroupRingElem &a);

/// ℤ/M-module generators of {y : a·y = 0}.
std::vector<GroupRingElem> annihilator_basis(const GroupRingElem &a);

/// Projection (ℤ/M)[ℤ/(kM')] → (ℤ/M)[ℤ/M'].
GroupRingElem transition(const GroupRingElem &a, std::int64_t target_order);

/// Componentwise projection ⊕ ℤ/N_i → ⊕ ℤ/N'_i with N'_i | N_i.
GroupRingElem transition(const GroupRingElem &a, const AbelianShape &target);

/// The prime class C: either all primes or all primes other than p.
class PrimeClass {
  public:
	static PrimeClass all() { return PrimeClass(0); }
	static PrimeClass all_except(std::int64_t p);

	std::int64_t excluded() const { return excluded_; }
	/// n ∈ ℕ(C): no prime factor of n lies outside C.
	bool contains(std::int64_t n) const;
	/// Largest divisor of n lying in ℕ(C).
	std::int64_t c_part(std::int64_t n) const;

  private:
	explicit PrimeClass(std::int64_t p) : excluded_(p) {}
	std::int64_t excluded_;
};

/// Finite-level regularity shadow: every annihilator generator of x^n − 1 in
/// (ℤ/M)[ℤ/(k·M')] maps under transition into k·(ℤ/M)[ℤ/M'].
/// Requires the C-part of n to divide M' and k ∈ ℕ(C).
bool limit_regularity_check(std::int64_t n, std::int64_t M, std::int64_t M_prime, std::int64_t k,
                            const PrimeClass &C = PrimeClass::all());

/// A γ for ℤ/N (N with at least two distinct prime factors) that is ≡ 0 modulo
/// the prime power of the largest prime of N and ≡ 1 modulo the rest; nullopt
/// when N is a prime power.
std::optional<std::int64_t> split_exponent(std::int64_t N);

GroupRingElem parse_group_ring_elem(std::string_view text, const AbelianShape &shape, std::int64_t modulus);
std::string to_string(const GroupRingElem &a);

} // namespace sgt
