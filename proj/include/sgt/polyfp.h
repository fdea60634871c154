#pragma once

// Dense univariate polynomials over 𝔽_p and their factorization into monic
// irreducibles (square-free, distinct-degree, then equal-degree splitting).

#include "sgt/common.h"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sgt {

class FpPoly {
  public:
	explicit FpPoly(std::int64_t p = 2);
	FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs); // low degree first

	static FpPoly constant(std::int64_t p, std::int64_t c);
	static FpPoly monomial(std::int64_t p, std::size_t deg, std::int64_t c = 1);

	std::int64_t prime() const { return p_; }
	/// −1 for the zero polynomial.
	int degree() const { return static_cast<int>(c_.size()) - 1; }
	const std::vector<std::int64_t> &coeffs() const { return c_; }
	std::int64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
	std::int64_t lead() const { return c_.empty() ? 0 : c_.back(); }
	bool is_zero() const { return c_.empty(); }
	bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
	bool is_constant() const { return c_.size() <= 1; }

	FpPoly operator+(const FpPoly &rhs) const;
	FpPoly operator-(const FpPoly &rhs) const;
	FpPoly operator-() const;
	FpPoly operator*(const FpPoly &rhs) const;
	FpPoly scaled(std::int64_t c) const;
	/// Exact quotient and remainder; the divisor must be nonzero.
	std::pair<FpPoly, FpPoly> divmod(const FpPoly &d) const;
	FpPoly operator/(const FpPoly &d) const { return divmod(d).first; }
	FpPoly operator%(const FpPoly &d) const { return divmod(d).second; }

	FpPoly monic() const;
	FpPoly derivative() const;
	/// f(t^q).
	FpPoly substitute_power(std::size_t q) const;

	bool operator==(const FpPoly &rhs) const = default;
	/// Degree first, then coefficients from the top.
	bool operator<(const FpPoly &rhs) const;

  private:
	void trim();
	void check(const FpPoly &rhs) const;

	std::int64_t p_;
	std::vector<std::int64_t> c_;
};

std::int64_t inv_mod_p(std::int64_t a, std::int64_t p);
std::int64_t pow_mod_p(std::int64_t a, const Int &e, std::int64_t p);

/// Monic gcd (zero if both inputs are zero).
FpPoly gcd(const FpPoly &a, const FpPoly &b);
FpPoly powmod(const FpPoly &base, const Int &e, const FpPoly &mod);

/// g with g^p = f, for f whose derivative vanishes.
FpPoly pth_root(const FpPoly &f);

/// Square-free decomposition of a monic f: pairs (g_i, i) with g_i square-free.
std::vector<std::pair<FpPoly, unsigned>> squarefree_factorization(const FpPoly &f);

struct FpFactorization {
	std::int64_t unit = 1;                             // leading coefficient
	std::vector<std::pair<FpPoly, unsigned>> factors; // monic irreducibles, ascending
};

/// Complete factorization of a nonzero polynomial.
FpFactorization factor(const FpPoly &f);

bool is_irreducible(const FpPoly &f);

std::string to_string(const FpPoly &f, const std::string &var = "t");

} // namespace sgt
