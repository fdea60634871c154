#pragma once

// Exact integer and ℤ/M linear algebra used throughout the toolkit.

#include "sgt/common.h"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sgt {

/// Dense matrix of arbitrary-precision integers. Both dimensions are at least 1.
class IntMatrix {
  public:
	IntMatrix(std::size_t rows, std::size_t cols);
	IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
	static IntMatrix identity(std::size_t n);
	static IntMatrix from_rows(const std::vector<std::vector<Int>> &rows);

	std::size_t rows() const { return rows_; }
	std::size_t cols() const { return cols_; }

	Int &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
	const Int &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

	IntMatrix operator*(const IntMatrix &rhs) const;
	std::vector<Int> operator*(const std::vector<Int> &v) const;
	bool operator==(const IntMatrix &rhs) const;

	IntMatrix transpose() const;
	std::vector<Int> row(std::size_t i) const;
	std::vector<Int> col(std::size_t j) const;
	bool is_zero() const;

	void swap_rows(std::size_t a, std::size_t b);
	void swap_cols(std::size_t a, std::size_t b);
	/// row[dst] += factor * row[src]
	void add_row(std::size_t dst, std::size_t src, const Int &factor);
	void add_col(std::size_t dst, std::size_t src, const Int &factor);
	void negate_row(std::size_t i);

	/// Exact determinant (fraction-free Bareiss); square matrices only.
	Int determinant() const;

  private:
	std::size_t rows_;
	std::size_t cols_;
	std::vector<Int> data_;
};

struct SNFResult {
	IntMatrix U;
	IntMatrix D;
	IntMatrix V;

	/// Number of nonzero invariant factors.
	std::size_t rank() const;
	std::vector<Int> invariant_factors() const;
};

/// Smith normal form with U·A·V = D, U and V unimodular, d_1 | d_2 | ... .
/// Pivots are the entry of least absolute value, ties broken by row then column.
SNFResult smith_normal_form(const IntMatrix &A);

/// Row-style Hermite normal form of the lattice spanned by the rows of A.
/// Zero rows are dropped; pivots are positive and entries above a pivot lie in [0, pivot).
std::vector<std::vector<Int>> hermite_normal_form(const std::vector<std::vector<Int>> &rows, std::size_t width);

/// Integer solution c of B·c = x, if one exists.
std::optional<std::vector<Int>> solve_integer(const IntMatrix &B, const std::vector<Int> &x);

/// Least d > 0 with d·x in the column lattice of B, or nullopt when x is not in its ℚ-span.
std::optional<Int> lattice_order(const IntMatrix &B, const std::vector<Int> &x);

struct IntFactorization {
	int sign = 1;
	std::vector<std::pair<Int, unsigned>> factors; // ascending primes

	Int recompose() const;
};

/// Trial division followed by Brent-Pollard rho with fixed seeds.
IntFactorization factor_integer(const Int &n);
bool is_prime(const Int &n);
bool is_prime(std::uint64_t n);

// ---- linear algebra over ℤ/M --------------------------------------------

using ModVector = std::vector<std::int64_t>;
using ModMatrix = std::vector<ModVector>; // row-major, entries in [0, M)

/// Generators of {v : A·v ≡ 0 (mod M)} as a ℤ/M-module. `cols` is needed when A has no rows.
std::vector<ModVector> kernel_mod_m(const ModMatrix &A, std::size_t cols, std::int64_t M);

/// Some v with A·v ≡ b (mod M), or nullopt.
std::optional<ModVector> solve_mod_m(const ModMatrix &A, std::size_t cols, const ModVector &b, std::int64_t M);

ModVector mat_vec_mod(const ModMatrix &A, const ModVector &v, std::int64_t M);

} // namespace sgt
