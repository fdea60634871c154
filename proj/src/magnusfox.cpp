#include "sgt/magnusfox.h"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace sgt {

// ---- LaurentElem ----------------------------------------------------------

LaurentElem::LaurentElem(int rank) : rank_(rank)
{
	if (rank < 0)
		throw DomainError("LaurentElem: negative rank");
}

LaurentElem LaurentElem::constant(int rank, const Int &c)
{
	LaurentElem out(rank);
	out.add_term(Exponent(static_cast<std::size_t>(rank), 0), c);
	return out;
}

LaurentElem LaurentElem::monomial(const Exponent &e, const Int &c)
{
	LaurentElem out(static_cast<int>(e.size()));
	out.add_term(e, c);
	return out;
}

Int LaurentElem::coeff(const Exponent &e) const
{
	auto it = terms_.find(e);
	return it == terms_.end() ? Int(0) : it->second;
}

Int LaurentElem::augmentation() const
{
	Int s = 0;
	for (const auto &[e, c] : terms_)
		s += c;
	return s;
}

void LaurentElem::check_rank(const LaurentElem &rhs) const
{
	if (rank_ != rhs.rank_)
		throw MismatchError("LaurentElem: rank mismatch");
}

void LaurentElem::add_term(const Exponent &e, const Int &c)
{
	if (c == 0)
		return;
	auto [it, inserted] = terms_.try_emplace(e, c);
	if (!inserted) {
		it->second += c;
		if (it->second == 0)
			terms_.erase(it);
	}
}

LaurentElem LaurentElem::operator+(const LaurentElem &rhs) const
{
	check_rank(rhs);
	LaurentElem out = *this;
	for (const auto &[e, c] : rhs.terms_)
		out.add_term(e, c);
	return out;
}

LaurentElem LaurentElem::operator-(const LaurentElem &rhs) const { return *this + (-rhs); }

LaurentElem LaurentElem::operator-() const
{
	LaurentElem out = *this;
	for (auto &[e, c] : out.terms_)
		c = -c;
	return out;
}

LaurentElem LaurentElem::operator*(const LaurentElem &rhs) const
{
	check_rank(rhs);
	LaurentElem out(rank_);
	for (const auto &[e1, c1] : terms_)
		for (const auto &[e2, c2] : rhs.terms_) {
			Exponent e = e1;
			for (std::size_t i = 0; i < e.size(); ++i)
				e[i] += e2[i];
			out.add_term(e, c1 * c2);
		}
	return out;
}

LaurentElem LaurentElem::shifted(const Exponent &s) const
{
	if (static_cast<int>(s.size()) != rank_)
		throw MismatchError("LaurentElem: shift has wrong rank");
	LaurentElem out(rank_);
	for (const auto &[e, c] : terms_) {
		Exponent f = e;
		for (std::size_t i = 0; i < f.size(); ++i)
			f[i] += s[i];
		out.terms_.emplace(std::move(f), c);
	}
	return out;
}

LaurentElem generator_minus_one(int rank, int i)
{
	if (i < 1 || i > rank)
		throw DomainError("generator index out of range");
	Exponent e(static_cast<std::size_t>(rank), 0);
	e[static_cast<std::size_t>(i - 1)] = 1;
	return LaurentElem::monomial(e) - LaurentElem::constant(rank, 1);
}

std::string to_string(const LaurentElem &a, std::string_view alphabet)
{
	if (a.is_zero())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (const auto &[e, c] : a.terms()) {
		const bool unit = std::all_of(e.begin(), e.end(), [](std::int64_t v) { return v == 0; });
		Int mag = abs(c);
		if (first)
			os << (c < 0 ? "-" : "");
		else
			os << (c < 0 ? " - " : " + ");
		first = false;
		if (mag != 1 || unit)
			os << mag.get_str();
		for (std::size_t i = 0; i < e.size(); ++i) {
			if (e[i] == 0)
				continue;
			os << alphabet[i];
			if (e[i] != 1)
				os << '^' << (e[i] < 0 ? "(" + std::to_string(e[i]) + ")" : std::to_string(e[i]));
		}
	}
	return os.str();
}

// ---- Fox calculus ---------------------------------------------------------

LaurentElem fox_derivative(const Word &w, int i, int rank)
{
	if (i < 1 || i > rank)
		throw DomainError("fox_derivative: generator index out of range");
	if (w.max_generator() > rank)
		throw DomainError("fox_derivative: word uses a generator beyond the rank");
	const auto gi = static_cast<std::size_t>(i - 1);
	LaurentElem out(rank);
	Exponent prefix(static_cast<std::size_t>(rank), 0);
	for (const Letter &l : w.letters()) {
		const auto g = static_cast<std::size_t>(l.gen - 1);
		if (g == gi) {
			Exponent e = prefix;
			if (l.exp > 0) {
				for (std::int64_t k = 0; k < l.exp; ++k, ++e[gi])
					out = out + LaurentElem::monomial(e);
			} else {
				for (std::int64_t k = 1; k <= -l.exp; ++k) {
					e[gi] = prefix[gi] - k;
					out = out - LaurentElem::monomial(e);
				}
			}
		}
		prefix[g] += l.exp;
	}
	return out;
}

std::vector<LaurentElem> fox_gradient(const Word &w, int rank)
{
	std::vector<LaurentElem> out;
	for (int i = 1; i <= rank; ++i)
		out.push_back(fox_derivative(w, i, rank));
	return out;
}

static LaurentElem relation_sum(const std::vector<LaurentElem> &a)
{
	const int rank = static_cast<int>(a.size());
	LaurentElem s(rank);
	for (int i = 0; i < rank; ++i) {
		if (a[static_cast<std::size_t>(i)].rank() != rank)
			throw MismatchError("relation vector entries must have rank equal to its length");
		s = s + a[static_cast<std::size_t>(i)] * generator_minus_one(rank, i + 1);
	}
	return s;
}

bool fundamental_identity_check(const Word &w, int rank)
{
	const LaurentElem lhs = LaurentElem::monomial(abelianize(w, rank)) - LaurentElem::constant(rank, 1);
	return lhs == relation_sum(fox_gradient(w, rank));
}

bool bl_kernel_check(const std::vector<LaurentElem> &a) { return relation_sum(a).is_zero(); }

// ---- Magnus representation ------------------------------------------------

MetabelianElem MetabelianElem::identity(int rank)
{
	return {Exponent(static_cast<std::size_t>(rank), 0),
	        std::vector<LaurentElem>(static_cast<std::size_t>(rank), LaurentElem(rank))};
}

MetabelianElem MetabelianElem::embed(const Word &w, int rank) { return {abelianize(w, rank), fox_gradient(w, rank)}; }

bool MetabelianElem::satisfies_identity() const
{
	const LaurentElem lhs = LaurentElem::monomial(ab) - LaurentElem::constant(rank(), 1);
	return lhs == relation_sum(deriv);
}

MetabelianElem magnus_mul(const MetabelianElem &u, const MetabelianElem &v)
{
	if (u.rank() != v.rank())
		throw MismatchError("magnus_mul: rank mismatch");
	MetabelianElem out = u;
	for (std::size_t i = 0; i < out.ab.size(); ++i) {
		out.ab[i] += v.ab[i];
		out.deriv[i] = out.deriv[i] + v.deriv[i].shifted(u.ab);
	}
	return out;
}

// ---- truncated relation module ---------------------------------------------

namespace {

AbelianShape torus(int r, std::int64_t N) { return AbelianShape(std::vector<std::int64_t>(static_cast<std::size_t>(r), N)); }

/// Columns indexed by (component i, group element g) ↦ i·|A| + g.
ModMatrix relation_matrix(const AbelianShape &A, int r, std::int64_t M)
{
	const std::size_t n = A.order();
	ModMatrix F(n, ModVector(static_cast<std::size_t>(r) * n, 0));
	for (int i = 0; i < r; ++i) {
		Exponent e(static_cast<std::size_t>(r), 0);
		e[static_cast<std::size_t>(i)] = 1;
		const std::size_t shift = A.index(e);
		for (std::size_t g = 0; g < n; ++g) {
			const std::size_t col = static_cast<std::size_t>(i) * n + g;
			F[A.add(g, shift)][col] = (F[A.add(g, shift)][col] + 1) % M;
			F[g][col] = mod_floor(F[g][col] - 1, M);
		}
	}
	return F;
}

GroupRingVector split(const AbelianShape &A, int r, std::int64_t M, const ModVector &v)
{
	GroupRingVector out;
	const std::size_t n = A.order();
	for (int i = 0; i < r; ++i)
		out.push_back(GroupRingElem::from_coefficients(
		    A, M, ModVector(v.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * n),
		                    v.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i + 1) * n))));
	return out;
}

} // namespace

GroupRingElem relation_map(const GroupRingVector &a)
{
	if (a.empty())
		throw DomainError("relation_map: empty vector");
	const AbelianShape &A = a.front().shape();
	const std::int64_t M = a.front().modulus();
	if (A.rank() != a.size())
		throw MismatchError("relation_map: vector length must equal the group rank");
	GroupRingElem s = GroupRingElem::zero(A, M);
	for (std::size_t i = 0; i < a.size(); ++i)
		s = s + a[i] * GroupRingElem::power_minus_one(A, M, i, 1);
	return s;
}

GroupRingVector truncate(const std::vector<LaurentElem> &a, std::int64_t N, std::int64_t M)
{
	const int r = static_cast<int>(a.size());
	const AbelianShape A = torus(r, N);
	GroupRingVector out;
	for (const LaurentElem &x : a) {
		ModVector c(A.order(), 0);
		for (const auto &[e, v] : x.terms()) {
			Int red = v % M;
			auto &slot = c[A.index(e)];
			slot = mod_floor(slot + red.get_si(), M);
		}
		out.push_back(GroupRingElem::from_coefficients(A, M, std::move(c)));
	}
	return out;
}

std::vector<GroupRingVector> metabelian_centralizer_kernel(int r, std::int64_t n, std::int64_t N, std::int64_t M)
{
	if (r < 2)
		throw DomainError("metabelian_centralizer_kernel: rank must be at least 2");
	if (n == 0 || N < 1 || M < 2)
		throw DomainError("metabelian_centralizer_kernel: parameters out of range");
	const AbelianShape A = torus(r, N);
	const std::size_t sz = A.order();
	ModMatrix S = relation_matrix(A, r, M);
	const ModMatrix T = multiplication_matrix(GroupRingElem::power_minus_one(A, M, 0, n));
	for (int i = 0; i < r; ++i)
		for (std::size_t row = 0; row < sz; ++row) {
			ModVector line(static_cast<std::size_t>(r) * sz, 0);
			std::copy(T[row].begin(), T[row].end(),
			          line.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(i) * sz));
			S.push_back(std::move(line));
		}
	std::vector<GroupRingVector> out;
	for (const ModVector &v : kernel_mod_m(S, static_cast<std::size_t>(r) * sz, M))
		out.push_back(split(A, r, M, v));
	return out;
}

GroupRingVector transition(const GroupRingVector &a, std::int64_t N_low)
{
	GroupRingVector out;
	for (const GroupRingElem &x : a)
		out.push_back(transition(x, torus(static_cast<int>(x.shape().rank()), N_low)));
	return out;
}

bool in_scaled_relation_module(const GroupRingVector &a, std::int64_t k)
{
	if (a.empty())
		throw DomainError("in_scaled_relation_module: empty vector");
	const AbelianShape &A = a.front().shape();
	const std::int64_t M = a.front().modulus();
	const int r = static_cast<int>(a.size());
	const std::size_t sz = A.order();
	const std::size_t cols = static_cast<std::size_t>(r) * sz;
	ModMatrix S = relation_matrix(A, r, M);
	ModVector rhs(sz, 0);
	for (std::size_t c = 0; c < cols; ++c) {
		ModVector line(cols, 0);
		line[c] = mod_floor(k, M);
		S.push_back(std::move(line));
	}
	for (const GroupRingElem &x : a)
		rhs.insert(rhs.end(), x.coefficients().begin(), x.coefficients().end());
	return solve_mod_m(S, cols, rhs, M).has_value();
}

bool centralizer_transition_check(int r, std::int64_t n, std::int64_t N_low, std::int64_t k, std::int64_t M)
{
	if (k < 1 || N_low < 1)
		throw DomainError("centralizer_transition_check: parameters out of range");
	for (const GroupRingVector &v : metabelian_centralizer_kernel(r, n, k * N_low, M))
		if (!in_scaled_relation_module(transition(v, N_low), k))
			return false;
	return true;
}

// ---- permutation quotients ------------------------------------------------

namespace {

using Perm = std::vector<int>;

Perm compose(const Perm &a, const Perm &b) // a ∘ b
{
	Perm out(b.size());
	for (std::size_t i = 0; i < b.size(); ++i)
		out[i] = a[static_cast<std::size_t>(b[i])];
	return out;
}

Perm invert(const Perm &a)
{
	Perm out(a.size());
	for (std::size_t i = 0; i < a.size(); ++i)
		out[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
	return out;
}

Perm identity_perm(int n)
{
	Perm p(static_cast<std::size_t>(n));
	for (int i = 0; i < n; ++i)
		p[static_cast<std::size_t>(i)] = i;
	return p;
}

Perm perm_pow(const Perm &p, std::int64_t e)
{
	Perm base = e < 0 ? invert(p) : p;
	Perm out = identity_perm(static_cast<int>(p.size()));
	for (std::int64_t i = 0; i < std::llabs(e); ++i)
		out = compose(out, base);
	return out;
}

} // namespace

PermQuotient PermQuotient::abelian(const std::vector<std::int64_t> &moduli, const std::vector<Exponent> &images)
{
	const AbelianShape A(moduli);
	PermQuotient G;
	G.degree = static_cast<int>(A.order());
	for (const Exponent &img : images) {
		const std::size_t shift = A.index(img);
		Perm p(A.order());
		for (std::size_t g = 0; g < A.order(); ++g)
			p[g] = static_cast<int>(A.add(g, shift));
		G.images.push_back(std::move(p));
	}
	return G;
}

PermQuotient PermQuotient::trivial(int r)
{
	PermQuotient G;
	G.images.assign(static_cast<std::size_t>(r), Perm{0});
	return G;
}

std::vector<int> PermQuotient::evaluate(const Word &w) const
{
	if (w.max_generator() > rank())
		throw DomainError("PermQuotient: word uses a generator beyond the rank");
	Perm out = identity_perm(degree);
	for (const Letter &l : w.letters())
		out = compose(out, perm_pow(images[static_cast<std::size_t>(l.gen - 1)], l.exp));
	return out;
}

std::size_t PermQuotient::order() const
{
	std::set<Perm> seen{identity_perm(degree)};
	std::vector<Perm> frontier{identity_perm(degree)};
	while (!frontier.empty()) {
		std::vector<Perm> next;
		for (const Perm &p : frontier)
			for (const Perm &g : images) {
				Perm q = compose(p, g);
				if (seen.insert(q).second)
					next.push_back(std::move(q));
			}
		frontier = std::move(next);
	}
	return seen.size();
}

// ---- block-triangular witness ---------------------------------------------

namespace {

struct ModMat {
	std::size_t n;
	std::int64_t m;
	std::vector<std::int64_t> a;

	ModMat(std::size_t n_, std::int64_t m_) : n(n_), m(m_), a(n_ * n_, 0) {}
	std::int64_t &at(std::size_t i, std::size_t j) { return a[i * n + j]; }
	std::int64_t at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

	static ModMat identity(std::size_t n, std::int64_t m)
	{
		ModMat out(n, m);
		for (std::size_t i = 0; i < n; ++i)
			out.at(i, i) = 1 % m;
		return out;
	}

	ModMat operator*(const ModMat &b) const
	{
		ModMat out(n, m);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t k = 0; k < n; ++k) {
				const std::int64_t x = at(i, k);
				if (x == 0)
					continue;
				for (std::size_t j = 0; j < n; ++j)
					out.at(i, j) = (out.at(i, j) + x * b.at(k, j)) % m;
			}
		return out;
	}
};

ModMat mat_pow(ModMat base, std::int64_t e)
{
	ModMat out = ModMat::identity(base.n, base.m);
	while (e > 0) {
		if (e & 1)
			out = out * base;
		base = base * base;
		e >>= 1;
	}
	return out;
}

/// Writes the permutation matrix of p (P e_i = e_{p(i)}) with a sign into a block.
void put_perm(ModMat &M, std::size_t row0, std::size_t col0, const Perm &p, std::int64_t sign)
{
	for (std::size_t i = 0; i < p.size(); ++i)
		M.at(row0 + static_cast<std::size_t>(p[i]), col0 + i) = mod_floor(sign, M.m);
}

} // namespace

bool prop115_witness(const PermQuotient &G, int x_index, const Word &y, std::int64_t alpha, std::int64_t ell, int k)
{
	if (x_index < 1 || x_index > G.rank())
		throw DomainError("prop115_witness: x index out of range");
	if (alpha == 0)
		throw DomainError("prop115_witness: alpha must be nonzero");
	if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell)))
		throw DomainError("prop115_witness: ell must be prime");
	if (k < 1)
		throw DomainError("prop115_witness: precision must be positive");
	if (y.max_generator() > G.rank())
		throw DomainError("prop115_witness: y uses a generator beyond the rank");

	const auto &rx = G.images[static_cast<std::size_t>(x_index - 1)];
	const Perm ry = G.evaluate(y);
	const Perm rxa = perm_pow(rx, alpha);
	if (compose(ry, rxa) != compose(rxa, ry))
		throw DomainError("prop115_witness: y does not commute with x^alpha in G");

	const std::int64_t g = static_cast<std::int64_t>(G.order());
	const std::int64_t ag = alpha * g;
	int v = 0;
	for (std::int64_t t = std::llabs(ag); t % ell == 0; t /= ell)
		++v;
	if (v >= k)
		throw DomainError("prop115_witness: precision too small for alpha*|G|");
	std::int64_t modulus = 1;
	for (int i = 0; i < k; ++i)
		modulus *= ell;

	const std::size_t s = static_cast<std::size_t>(G.degree);
	auto gen_matrix = [&](int gen, bool inverse) {
		const Perm &p = G.images[static_cast<std::size_t>(gen - 1)];
		const Perm q = inverse ? invert(p) : p;
		ModMat out(2 * s, modulus);
		put_perm(out, 0, 0, q, 1);
		if (gen == x_index) {
			put_perm(out, 0, s, q, inverse ? -1 : 1);
			put_perm(out, s, s, q, 1);
		} else {
			for (std::size_t i = 0; i < s; ++i)
				out.at(s + i, s + i) = 1;
		}
		return out;
	};
	auto psi = [&](const Word &w) {
		ModMat out = ModMat::identity(2 * s, modulus);
		for (const Letter &l : w.letters())
			out = out * mat_pow(gen_matrix(l.gen, l.exp < 0), std::llabs(l.exp));
		return out;
	};

	const ModMat Y = psi(y);
	const ModMat X = mat_pow(gen_matrix(x_index, ag < 0), std::llabs(ag));
	const ModMat YX = Y * X;
	const ModMat XY = X * Y;
	for (std::size_t i = 0; i < s; ++i)
		for (std::size_t j = s; j < 2 * s; ++j)
			if (YX.at(i, j) != XY.at(i, j))
				return false;
	return true;
}

} // namespace sgt
