#include "sgt/exactalg.h"

#include <algorithm>
#include <numeric>

namespace sgt {

// ---- IntMatrix ----------------------------------------------------------

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0))
{
	if (rows == 0 || cols == 0)
		throw DomainError("IntMatrix: dimensions must be positive");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : IntMatrix(rows.size(), rows.size() ? rows.begin()->size() : 0)
{
	std::size_t i = 0;
	for (const auto &r : rows) {
		if (r.size() != cols_)
			throw DomainError("IntMatrix: ragged initializer");
		std::size_t j = 0;
		for (long v : r)
			(*this)(i, j++) = v;
		++i;
	}
}

IntMatrix IntMatrix::identity(std::size_t n)
{
	IntMatrix I(n, n);
	for (std::size_t i = 0; i < n; ++i)
		I(i, i) = 1;
	return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>> &rows)
{
	if (rows.empty())
		throw DomainError("IntMatrix: no rows");
	IntMatrix A(rows.size(), rows.front().size());
	for (std::size_t i = 0; i < rows.size(); ++i) {
		if (rows[i].size() != A.cols_)
			throw DomainError("IntMatrix: ragged rows");
		for (std::size_t j = 0; j < A.cols_; ++j)
			A(i, j) = rows[i][j];
	}
	return A;
}

IntMatrix IntMatrix::operator*(const IntMatrix &rhs) const
{
	if (cols_ != rhs.rows_)
		throw MismatchError("IntMatrix: dimension mismatch in product");
	IntMatrix out(rows_, rhs.cols_);
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t k = 0; k < cols_; ++k) {
			const Int &a = (*this)(i, k);
			if (a == 0)
				continue;
			for (std::size_t j = 0; j < rhs.cols_; ++j)
				out(i, j) += a * rhs(k, j);
		}
	return out;
}

std::vector<Int> IntMatrix::operator*(const std::vector<Int> &v) const
{
	if (v.size() != cols_)
		throw MismatchError("IntMatrix: dimension mismatch in matrix-vector product");
	std::vector<Int> out(rows_, Int(0));
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = 0; j < cols_; ++j)
			out[i] += (*this)(i, j) * v[j];
	return out;
}

bool IntMatrix::operator==(const IntMatrix &rhs) const
{
	return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

IntMatrix IntMatrix::transpose() const
{
	IntMatrix T(cols_, rows_);
	for (std::size_t i = 0; i < rows_; ++i)
		for (std::size_t j = 0; j < cols_; ++j)
			T(j, i) = (*this)(i, j);
	return T;
}

std::vector<Int> IntMatrix::row(std::size_t i) const
{
	return {data_.begin() + static_cast<long>(i * cols_), data_.begin() + static_cast<long>((i + 1) * cols_)};
}

std::vector<Int> IntMatrix::col(std::size_t j) const
{
	std::vector<Int> c(rows_);
	for (std::size_t i = 0; i < rows_; ++i)
		c[i] = (*this)(i, j);
	return c;
}

bool IntMatrix::is_zero() const
{
	return std::all_of(data_.begin(), data_.end(), [](const Int &x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
	if (a == b)
		return;
	for (std::size_t j = 0; j < cols_; ++j)
		std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
	if (a == b)
		return;
	for (std::size_t i = 0; i < rows_; ++i)
		std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Int &factor)
{
	if (factor == 0)
		return;
	for (std::size_t j = 0; j < cols_; ++j)
		(*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int &factor)
{
	if (factor == 0)
		return;
	for (std::size_t i = 0; i < rows_; ++i)
		(*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i)
{
	for (std::size_t j = 0; j < cols_; ++j)
		(*this)(i, j) = -(*this)(i, j);
}

Int IntMatrix::determinant() const
{
	if (rows_ != cols_)
		throw MismatchError("determinant of non-square matrix");
	IntMatrix M = *this;
	const std::size_t n = rows_;
	Int sign = 1;
	Int prev = 1;
	for (std::size_t k = 0; k + 1 < n; ++k) {
		if (M(k, k) == 0) {
			std::size_t s = k + 1;
			while (s < n && M(s, k) == 0)
				++s;
			if (s == n)
				return 0;
			M.swap_rows(k, s);
			sign = -sign;
		}
		for (std::size_t i = k + 1; i < n; ++i)
			for (std::size_t j = k + 1; j < n; ++j) {
				Int v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
				mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
				M(i, j) = v;
			}
		prev = M(k, k);
	}
	return sign * M(n - 1, n - 1);
}

// ---- Smith / Hermite ----------------------------------------------------

std::size_t SNFResult::rank() const
{
	std::size_t r = 0;
	const std::size_t k = std::min(D.rows(), D.cols());
	while (r < k && D(r, r) != 0)
		++r;
	return r;
}

std::vector<Int> SNFResult::invariant_factors() const
{
	std::vector<Int> out;
	for (std::size_t i = 0; i < rank(); ++i)
		out.push_back(D(i, i));
	return out;
}

namespace {

bool find_pivot(const IntMatrix &D, std::size_t t, std::size_t &pi, std::size_t &pj)
{
	bool found = false;
	Int best;
	for (std::size_t i = t; i < D.rows(); ++i)
		for (std::size_t j = t; j < D.cols(); ++j) {
			const Int &v = D(i, j);
			if (v == 0)
				continue;
			Int a = abs(v);
			if (!found || a < best) {
				found = true;
				best = a;
				pi = i;
				pj = j;
			}
		}
	return found;
}

} // namespace

SNFResult smith_normal_form(const IntMatrix &A)
{
	const std::size_t m = A.rows();
	const std::size_t n = A.cols();
	SNFResult res{IntMatrix::identity(m), A, IntMatrix::identity(n)};
	IntMatrix &D = res.D;
	IntMatrix &U = res.U;
	IntMatrix &V = res.V;

	for (std::size_t t = 0; t < std::min(m, n); ++t) {
		bool any = true;
		for (;;) {
			std::size_t pi = 0, pj = 0;
			if (!find_pivot(D, t, pi, pj)) {
				any = false;
				break;
			}
			D.swap_rows(t, pi);
			U.swap_rows(t, pi);
			D.swap_cols(t, pj);
			V.swap_cols(t, pj);

			bool clean = true;
			for (std::size_t i = t + 1; i < m; ++i) {
				if (D(i, t) == 0)
					continue;
				Int q = D(i, t) / D(t, t);
				D.add_row(i, t, -q);
				U.add_row(i, t, -q);
				if (D(i, t) != 0)
					clean = false;
			}
			for (std::size_t j = t + 1; j < n; ++j) {
				if (D(t, j) == 0)
					continue;
				Int q = D(t, j) / D(t, t);
				D.add_col(j, t, -q);
				V.add_col(j, t, -q);
				if (D(t, j) != 0)
					clean = false;
			}
			if (!clean)
				continue;

			bool divisible = true;
			for (std::size_t i = t + 1; i < m && divisible; ++i)
				for (std::size_t j = t + 1; j < n; ++j)
					if (D(i, j) % D(t, t) != 0) {
						D.add_row(t, i, 1);
						U.add_row(t, i, 1);
						divisible = false;
						break;
					}
			if (divisible)
				break;
		}
		if (!any)
			break;
		if (D(t, t) < 0) {
			D.negate_row(t);
			U.negate_row(t);
		}
	}
	return res;
}

std::vector<std::vector<Int>> hermite_normal_form(const std::vector<std::vector<Int>> &rows_in, std::size_t width)
{
	std::vector<std::vector<Int>> rows = rows_in;
	for (const auto &r : rows)
		if (r.size() != width)
			throw MismatchError("hermite_normal_form: ragged rows");

	std::size_t pr = 0;
	for (std::size_t c = 0; c < width && pr < rows.size(); ++c) {
		for (;;) {
			std::size_t best = rows.size();
			for (std::size_t r = pr; r < rows.size(); ++r)
				if (rows[r][c] != 0 && (best == rows.size() || abs(rows[r][c]) < abs(rows[best][c])))
					best = r;
			if (best == rows.size())
				break;
			std::swap(rows[pr], rows[best]);
			bool done = true;
			for (std::size_t r = pr + 1; r < rows.size(); ++r) {
				if (rows[r][c] == 0)
					continue;
				Int q = rows[r][c] / rows[pr][c];
				for (std::size_t j = c; j < width; ++j)
					rows[r][j] -= q * rows[pr][j];
				if (rows[r][c] != 0)
					done = false;
			}
			if (done)
				break;
		}
		if (rows[pr][c] == 0)
			continue;
		if (rows[pr][c] < 0)
			for (auto &v : rows[pr])
				v = -v;
		for (std::size_t r = 0; r < pr; ++r) {
			Int q;
			mpz_fdiv_q(q.get_mpz_t(), rows[r][c].get_mpz_t(), rows[pr][c].get_mpz_t());
			if (q != 0)
				for (std::size_t j = c; j < width; ++j)
					rows[r][j] -= q * rows[pr][j];
		}
		++pr;
	}
	rows.resize(pr);
	return rows;
}

std::optional<std::vector<Int>> solve_integer(const IntMatrix &B, const std::vector<Int> &x)
{
	if (x.size() != B.rows())
		throw MismatchError("solve_integer: dimension mismatch");
	const SNFResult s = smith_normal_form(B);
	const std::vector<Int> y = s.U * x;
	const std::size_t r = s.rank();
	std::vector<Int> z(B.cols(), Int(0));
	for (std::size_t i = 0; i < y.size(); ++i) {
		if (i < r) {
			if (y[i] % s.D(i, i) != 0)
				return std::nullopt;
			z[i] = y[i] / s.D(i, i);
		} else if (y[i] != 0) {
			return std::nullopt;
		}
	}
	return s.V * z;
}

std::optional<Int> lattice_order(const IntMatrix &B, const std::vector<Int> &x)
{
	if (x.size() != B.rows())
		throw MismatchError("lattice_order: dimension mismatch");
	const SNFResult s = smith_normal_form(B);
	const std::vector<Int> y = s.U * x;
	const std::size_t r = s.rank();
	Int order = 1;
	for (std::size_t i = 0; i < y.size(); ++i) {
		if (i < r) {
			Int g = gcd(s.D(i, i), y[i]);
			Int need = s.D(i, i) / g;
			order = lcm(order, need);
		} else if (y[i] != 0) {
			return std::nullopt;
		}
	}
	return order;
}

// ---- integer factorization ---------------------------------------------

Int IntFactorization::recompose() const
{
	Int v = sign;
	for (const auto &[p, e] : factors)
		for (unsigned i = 0; i < e; ++i)
			v *= p;
	return v;
}

bool is_prime(const Int &n)
{
	if (n < 2)
		return false;
	return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

bool is_prime(std::uint64_t n)
{
	Int v;
	mpz_set_ui(v.get_mpz_t(), n);
	return is_prime(v);
}

namespace {

Int pollard_brent(const Int &n)
{
	if (n % 2 == 0)
		return 2;
	for (unsigned long c = 1;; ++c) {
		Int y = 2, x, q = 1, g = 1, ys;
		const unsigned long m = 128;
		unsigned long r = 1;
		auto f = [&](const Int &v) {
			Int w = v * v + c;
			return Int(w % n);
		};
		do {
			x = y;
			for (unsigned long i = 0; i < r; ++i)
				y = f(y);
			unsigned long k = 0;
			do {
				ys = y;
				for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
					y = f(y);
					q = (q * abs(x - y)) % n;
				}
				g = gcd(q, n);
				k += m;
			} while (k < r && g == 1);
			r *= 2;
		} while (g == 1);
		if (g == n) {
			do {
				ys = f(ys);
				g = gcd(Int(abs(x - ys)), n);
			} while (g == 1);
		}
		if (g != n)
			return g;
	}
}

void factor_rec(const Int &n, std::vector<Int> &out)
{
	if (n == 1)
		return;
	if (is_prime(n)) {
		out.push_back(n);
		return;
	}
	Int d = pollard_brent(n);
	factor_rec(d, out);
	factor_rec(Int(n / d), out);
}

} // namespace

IntFactorization factor_integer(const Int &n_in)
{
	if (n_in == 0)
		throw DomainError("factor_integer: zero has no factorization");
	IntFactorization res;
	res.sign = n_in < 0 ? -1 : 1;
	Int n = abs(n_in);
	std::vector<Int> primes;
	for (unsigned long p = 2; p < 1000 && p * p <= n; p += (p == 2 ? 1 : 2))
		while (n % p == 0) {
			primes.emplace_back(p);
			n /= p;
		}
	factor_rec(n, primes);
	std::sort(primes.begin(), primes.end());
	for (const Int &p : primes) {
		if (!res.factors.empty() && res.factors.back().first == p)
			++res.factors.back().second;
		else
			res.factors.emplace_back(p, 1u);
	}
	return res;
}

// ---- ℤ/M ----------------------------------------------------------------

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t inv_mod(std::int64_t a, std::int64_t m)
{
	std::int64_t t = 0, nt = 1, r = m, nr = mod_floor(a, m);
	while (nr != 0) {
		std::int64_t q = r / nr;
		std::tie(t, nt) = std::make_pair(nt, t - q * nt);
		std::tie(r, nr) = std::make_pair(nr, r - q * nr);
	}
	if (r != 1)
		throw DomainError("inv_mod: not invertible");
	return mod_floor(t, m);
}

struct ModDiag {
	ModMatrix D, U, V;
};

ModMatrix identity_mod(std::size_t n)
{
	ModMatrix I(n, ModVector(n, 0));
	for (std::size_t i = 0; i < n; ++i)
		I[i][i] = 1;
	return I;
}

void row_axpy(ModMatrix &A, std::size_t dst, std::size_t src, std::int64_t q, std::int64_t M)
{
	for (std::size_t j = 0; j < A[dst].size(); ++j)
		A[dst][j] = mod_floor(A[dst][j] - q * A[src][j], M);
}

void col_axpy(ModMatrix &A, std::size_t dst, std::size_t src, std::int64_t q, std::int64_t M)
{
	for (auto &row : A)
		row[dst] = mod_floor(row[dst] - q * row[src], M);
}

void swap_cols(ModMatrix &A, std::size_t a, std::size_t b)
{
	if (a != b)
		for (auto &row : A)
			std::swap(row[a], row[b]);
}

// Diagonalizes A over ℤ/M with U·A·V = D (mod M); U, V invertible mod M.
ModDiag diagonalize_mod(const ModMatrix &A, std::size_t n, std::int64_t M)
{
	const std::size_t m = A.size();
	ModDiag res{A, identity_mod(m), identity_mod(n)};
	for (auto &row : res.D) {
		if (row.size() != n)
			throw MismatchError("kernel_mod_m: ragged matrix");
		for (auto &v : row)
			v = mod_floor(v, M);
	}
	ModMatrix &D = res.D;
	for (std::size_t t = 0; t < std::min(m, n); ++t) {
		for (;;) {
			std::size_t pi = m, pj = n;
			for (std::size_t i = t; i < m; ++i)
				for (std::size_t j = t; j < n; ++j)
					if (D[i][j] != 0 && (pi == m || D[i][j] < D[pi][pj])) {
						pi = i;
						pj = j;
					}
			if (pi == m)
				return res;
			std::swap(D[t], D[pi]);
			std::swap(res.U[t], res.U[pi]);
			swap_cols(D, t, pj);
			swap_cols(res.V, t, pj);
			bool clean = true;
			for (std::size_t i = t + 1; i < m; ++i) {
				if (D[i][t] == 0)
					continue;
				std::int64_t q = D[i][t] / D[t][t];
				row_axpy(D, i, t, q, M);
				row_axpy(res.U, i, t, q, M);
				if (D[i][t] != 0)
					clean = false;
			}
			for (std::size_t j = t + 1; j < n; ++j) {
				if (D[t][j] == 0)
					continue;
				std::int64_t q = D[t][j] / D[t][t];
				col_axpy(D, j, t, q, M);
				col_axpy(res.V, j, t, q, M);
				if (D[t][j] != 0)
					clean = false;
			}
			if (clean)
				break;
		}
	}
	return res;
}

} // namespace

ModVector mat_vec_mod(const ModMatrix &A, const ModVector &v, std::int64_t M)
{
	ModVector out(A.size(), 0);
	for (std::size_t i = 0; i < A.size(); ++i) {
		if (A[i].size() != v.size())
			throw MismatchError("mat_vec_mod: dimension mismatch");
		std::int64_t acc = 0;
		for (std::size_t j = 0; j < v.size(); ++j)
			acc = mod_floor(acc + mod_floor(A[i][j], M) * mod_floor(v[j], M), M);
		out[i] = acc;
	}
	return out;
}

std::vector<ModVector> kernel_mod_m(const ModMatrix &A, std::size_t cols, std::int64_t M)
{
	if (M < 2)
		throw DomainError("kernel_mod_m: modulus must be at least 2");
	const ModDiag d = diagonalize_mod(A, cols, M);
	std::vector<ModVector> gens;
	for (std::size_t j = 0; j < cols; ++j) {
		std::int64_t dj = j < A.size() ? d.D[j][j] : 0;
		std::int64_t mult = M / gcd64(dj, M);
		ModVector v(cols);
		bool nonzero = false;
		for (std::size_t i = 0; i < cols; ++i) {
			v[i] = mod_floor(d.V[i][j] * mult, M);
			nonzero = nonzero || v[i] != 0;
		}
		if (nonzero)
			gens.push_back(std::move(v));
	}
	return gens;
}

std::optional<ModVector> solve_mod_m(const ModMatrix &A, std::size_t cols, const ModVector &b, std::int64_t M)
{
	if (M < 2)
		throw DomainError("solve_mod_m: modulus must be at least 2");
	if (b.size() != A.size())
		throw MismatchError("solve_mod_m: right-hand side has wrong length");
	const ModDiag d = diagonalize_mod(A, cols, M);
	const ModVector ub = mat_vec_mod(d.U, b, M);
	ModVector u(cols, 0);
	for (std::size_t i = 0; i < ub.size(); ++i) {
		std::int64_t di = (i < cols) ? d.D[i][i] : 0;
		std::int64_t g = gcd64(di, M);
		if (ub[i] % g != 0)
			return std::nullopt;
		if (i < cols && di != 0) {
			std::int64_t Mg = M / g;
			if (Mg == 1) {
				u[i] = 0;
			} else {
				u[i] = mod_floor((ub[i] / g) % Mg * inv_mod(di / g, Mg), Mg);
			}
		}
	}
	return mat_vec_mod(d.V, u, M);
}

} // namespace sgt
