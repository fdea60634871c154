#pragma once

// Exact arithmetic in ℚ, ℚ(ρ) (ρ a primitive 6th root of unity, ρ² = ρ − 1)
// and 𝔽_p(t), with unique factorization into canonical irreducibles.

#include "sgt/common.h"
#include "sgt/polyfp.h"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace sgt {

enum class FieldKind { Q, QRho, FpT };

struct FieldDesc {
	FieldKind kind = FieldKind::Q;
	std::int64_t p = 0; // characteristic, FpT only

	static FieldDesc rationals() { return {FieldKind::Q, 0}; }
	static FieldDesc eisenstein() { return {FieldKind::QRho, 0}; }
	static FieldDesc function_field(std::int64_t p);

	bool char_zero() const { return kind != FieldKind::FpT; }
	/// Order w of the group of roots of unity: 2, 6 or p − 1.
	std::int64_t roots_of_unity() const;

	bool operator==(const FieldDesc &) const = default;
};

/// "Q", "QRho" or "FpT:p".
std::string to_string(const FieldDesc &f);
FieldDesc parse_field_desc(std::string_view text);

/// a + bρ
struct QRhoVal {
	Rat a, b;
	bool operator==(const QRhoVal &) const = default;
};

/// num/den with gcd 1 and den monic.
struct RatFunc {
	FpPoly num, den;
	bool operator==(const RatFunc &) const = default;
};

class FieldElem {
  public:
	FieldElem() : FieldElem(FieldDesc::rationals(), Rat(0)) {}
	FieldElem(const FieldDesc &field, const Rat &q); // the image of q (FpT: reduced mod p)
	FieldElem(const FieldDesc &field, long n) : FieldElem(field, Rat(n)) {}

	static FieldElem zero(const FieldDesc &f) { return FieldElem(f, 0L); }
	static FieldElem one(const FieldDesc &f) { return FieldElem(f, 1L); }
	static FieldElem rho();
	static FieldElem qrho(const Rat &a, const Rat &b);
	static FieldElem t(std::int64_t p);
	static FieldElem ratfunc(const FpPoly &num, const FpPoly &den);

	const FieldDesc &field() const { return field_; }
	const Rat &as_rational() const;
	const QRhoVal &as_qrho() const;
	const RatFunc &as_ratfunc() const;

	bool is_zero() const;
	bool is_one() const;

	FieldElem operator+(const FieldElem &rhs) const;
	FieldElem operator-(const FieldElem &rhs) const;
	FieldElem operator-() const;
	FieldElem operator*(const FieldElem &rhs) const;
	FieldElem operator/(const FieldElem &rhs) const;
	FieldElem inverse() const;
	FieldElem pow(std::int64_t e) const;

	bool operator==(const FieldElem &rhs) const { return field_ == rhs.field_ && v_ == rhs.v_; }
	/// Total order on canonical forms (for use as a map key).
	bool operator<(const FieldElem &rhs) const;

  private:
	FieldElem(const FieldDesc &f, std::variant<Rat, QRhoVal, RatFunc> v) : field_(f), v_(std::move(v)) {}
	void check(const FieldElem &rhs) const;

	FieldDesc field_;
	std::variant<Rat, QRhoVal, RatFunc> v_;
};

std::string to_string(const FieldElem &a);
FieldElem parse_field_elem(std::string_view text, const FieldDesc &field);

/// a^{pⁿ} for a ∈ 𝔽_p(t), computed as a(t^{pⁿ}).
FieldElem frobenius(const FieldElem &a, std::int64_t n);

/// Multiplicative order, or nullopt when a has infinite order.
std::optional<std::int64_t> torsion_order(const FieldElem &a);

/// a ∈ 𝔽_p (FpT only).
bool is_constant(const FieldElem &a);

/// max(deg num, deg den) for a ∈ 𝔽_p(t); a^{pⁿ} has height pⁿ·height(a).
int height(const FieldElem &a);

/// Fixed generator of the roots of unity: −1, ρ, or the least primitive root mod p.
FieldElem torsion_generator(const FieldDesc &f);

/// j ∈ [0, w) with ζ = g^j for the fixed generator g. ζ must be a root of unity.
std::int64_t torsion_index(const FieldElem &zeta);

/// torsion · Π π^e with canonical irreducibles π.
struct ExponentVector {
	FieldElem torsion;
	std::map<FieldElem, Int> factors;

	FieldElem recompose() const;
};

ExponentVector factorize(const FieldElem &a);

} // namespace sgt
