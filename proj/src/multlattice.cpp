#include "sgt/multlattice.h"

#include "sgt/exactalg.h"

#include <algorithm>
#include <numeric>
#include <set>

namespace sgt {

MultSubgroup::MultSubgroup(FieldDesc f, std::vector<FieldElem> gens) : field(f), generators(std::move(gens))
{
	if (generators.empty())
		throw DomainError("MultSubgroup: at least one generator is required");
	for (const auto &g : generators) {
		if (!(g.field() == field))
			throw MismatchError("MultSubgroup: generator from another field");
		if (g.is_zero())
			throw DomainError("MultSubgroup: zero generator");
	}
}

namespace {

void require_nonzero(const FieldElem &a, const char *who)
{
	if (a.is_zero())
		throw DomainError(std::string(who) + ": zero input");
}

struct Coordinates {
	std::vector<FieldElem> support;
	std::int64_t w = 2;
	std::vector<Int> free(const ExponentVector &ev) const
	{
		std::vector<Int> out(support.size(), 0);
		for (const auto &[pi, e] : ev.factors) {
			auto it = std::lower_bound(support.begin(), support.end(), pi);
			out[static_cast<std::size_t>(it - support.begin())] = e;
		}
		return out;
	}
};

Coordinates joint_support(const std::vector<ExponentVector> &evs, const FieldDesc &f)
{
	std::set<FieldElem> s;
	for (const auto &ev : evs)
		for (const auto &[pi, e] : ev.factors)
			s.insert(pi);
	Coordinates c;
	c.support.assign(s.begin(), s.end());
	c.w = f.roots_of_unity();
	return c;
}

Int pow_int(std::int64_t p, std::int64_t e)
{
	Int r;
	mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
	return r;
}

/// σ ≥ 0 with q = p^σ, or −1.
std::int64_t log_p(Int q, std::int64_t p)
{
	if (q <= 0)
		return -1;
	std::int64_t s = 0;
	while (q % p == 0) {
		q /= p;
		++s;
	}
	return q == 1 ? s : -1;
}

void check_prime(std::int64_t p)
{
	if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
		throw DomainError("solve_p_power: p must be prime");
}

} // namespace

bool cyclic_equal(const FieldElem &a, const FieldElem &b)
{
	require_nonzero(a, "cyclic_equal");
	require_nonzero(b, "cyclic_equal");
	if (!(a.field() == b.field()))
		throw MismatchError("cyclic_equal: field mismatch");
	const auto oa = torsion_order(a);
	const auto ob = torsion_order(b);
	if (oa && ob)
		return *oa == *ob;
	if (oa || ob)
		return false;
	return b == a || b == a.inverse();
}

PPowerResult solve_p_power(const FieldElem &a, const FieldElem &b, std::int64_t p)
{
	require_nonzero(a, "solve_p_power");
	require_nonzero(b, "solve_p_power");
	check_prime(p);
	if (!(a.field() == b.field()))
		throw MismatchError("solve_p_power: field mismatch");
	if (a.field().kind != FieldKind::FpT || a.field().p != p)
		return solve_p_power_by_exponents(a, b, p);
	if (is_constant(a))
		return cyclic_equal(a, b) ? PPowerResult::all() : PPowerResult::none();
	if (is_constant(b))
		return PPowerResult::none();
	const int ha = height(a), hb = height(b);
	const bool up = hb >= ha;
	const int hi = up ? hb : ha, lo = up ? ha : hb;
	if (hi % lo != 0)
		return PPowerResult::none();
	const std::int64_t s = log_p(Int(hi / lo), p);
	if (s < 0)
		return PPowerResult::none();
	const FieldElem &base = up ? a : b;
	const FieldElem &target = up ? b : a;
	const FieldElem img = frobenius(base, s);
	if (target == img || target == img.inverse())
		return PPowerResult::unique(up ? s : -s);
	return PPowerResult::none();
}

PPowerResult solve_p_power_by_exponents(const FieldElem &a, const FieldElem &b, std::int64_t p)
{
	require_nonzero(a, "solve_p_power");
	require_nonzero(b, "solve_p_power");
	check_prime(p);
	if (!(a.field() == b.field()))
		throw MismatchError("solve_p_power: field mismatch");
	const ExponentVector ea = factorize(a), eb = factorize(b);
	if (ea.factors.empty())
		return cyclic_equal(a, b) ? PPowerResult::all() : PPowerResult::none();
	if (eb.factors.empty())
		return PPowerResult::none();
	const Coordinates c = joint_support({ea, eb}, a.field());
	const auto va = c.free(ea), vb = c.free(eb);
	std::size_t i0 = 0;
	while (va[i0] == 0)
		++i0;
	Rat r(vb[i0], va[i0]);
	r.canonicalize();
	for (std::size_t i = 0; i < va.size(); ++i)
		if (Rat(va[i]) * r != Rat(vb[i]))
			return PPowerResult::none();
	const int sign = r < 0 ? -1 : 1;
	const Rat ar = abs(r);
	std::int64_t sigma;
	if (ar.get_den() == 1)
		sigma = log_p(ar.get_num(), p);
	else if (ar.get_num() == 1)
		sigma = log_p(ar.get_den(), p);
	else
		return PPowerResult::none();
	if (sigma < 0)
		return PPowerResult::none();
	const bool up = ar.get_den() == 1;
	const std::int64_t ja = torsion_index(ea.torsion), jb = torsion_index(eb.torsion);
	const Int mult = sign * pow_int(p, sigma);
	const Int w = c.w;
	// up: ζ_b = ζ_a^{±p^σ}; otherwise ζ_a = ζ_b^{±p^{|σ|}}
	const Int lhs = up ? Int(jb) : Int(ja);
	const Int rhs = up ? Int(ja) * mult : Int(jb) * mult;
	Int diff = lhs - rhs;
	diff %= w;
	if (diff != 0)
		return PPowerResult::none();
	return PPowerResult::unique(up ? sigma : -sigma);
}

std::optional<Int> subgroup_power_inclusion(const MultSubgroup &g1, const MultSubgroup &g2,
                                            const std::vector<std::int64_t> &T)
{
	if (!(g1.field == g2.field))
		throw MismatchError("subgroup_power_inclusion: field mismatch");
	if (T.empty())
		throw DomainError("subgroup_power_inclusion: T must be nonempty");
	for (auto ell : T)
		if (ell < 2 || !is_prime(static_cast<std::uint64_t>(ell)))
			throw DomainError("subgroup_power_inclusion: T must consist of primes");
	std::vector<ExponentVector> e1, e2, all;
	for (const auto &g : g1.generators)
		e1.push_back(factorize(g));
	for (const auto &g : g2.generators)
		e2.push_back(factorize(g));
	all = e1;
	all.insert(all.end(), e2.begin(), e2.end());
	const Coordinates c = joint_support(all, g1.field);
	const std::size_t dim = c.support.size() + 1;
	auto vec = [&](const ExponentVector &ev) {
		auto v = c.free(ev);
		v.push_back(torsion_index(ev.torsion));
		return v;
	};
	IntMatrix B(dim, e2.size() + 1);
	for (std::size_t j = 0; j < e2.size(); ++j) {
		const auto v = vec(e2[j]);
		for (std::size_t i = 0; i < dim; ++i)
			B(i, j) = v[i];
	}
	B(dim - 1, e2.size()) = c.w;
	Int N = 1;
	for (const auto &ev : e1) {
		const auto d = lattice_order(B, vec(ev));
		if (!d)
			return std::nullopt;
		mpz_lcm(N.get_mpz_t(), N.get_mpz_t(), d->get_mpz_t());
	}
	for (auto ell : T)
		if (N % ell == 0)
			return std::nullopt;
	return N;
}

std::vector<std::int64_t> kummer_class(const FieldElem &a, std::int64_t n, const std::vector<FieldElem> &support)
{
	require_nonzero(a, "kummer_class");
	if (n < 1)
		throw DomainError("kummer_class: n must be positive");
	const ExponentVector ev = factorize(a);
	const std::int64_t w = a.field().roots_of_unity();
	std::vector<std::int64_t> out;
	out.push_back(torsion_index(ev.torsion) % std::gcd(n, w));
	for (const auto &pi : support) {
		auto it = ev.factors.find(pi);
		out.push_back(it == ev.factors.end() ? 0 : mod_floor(Int(it->second % n).get_si(), n));
	}
	for (const auto &[pi, e] : ev.factors)
		if (!std::binary_search(support.begin(), support.end(), pi))
			throw DomainError("kummer_class: support does not cover the element");
	return out;
}

bool kummer_equal(const KummerInvariant &k1, const KummerInvariant &k2)
{
	if (!(k1.lam.field() == k2.lam.field()))
		throw MismatchError("kummer_equal: field mismatch");
	if (k1.n != k2.n)
		throw MismatchError("kummer_equal: invariants with different n");
	const std::int64_t n = k1.n;
	if (n < 1)
		throw DomainError("kummer_equal: n must be positive");
	require_nonzero(k1.lam, "kummer_equal");
	require_nonzero(k2.lam, "kummer_equal");
	const FieldDesc &f = k1.lam.field();
	if (f.char_zero() && n % 4 == 0)
		throw DomainError("kummer_equal: 4 | n while the field lacks a primitive 4th root of unity");
	if (!f.char_zero() && n % f.p == 0)
		throw DomainError("kummer_equal: n divisible by the characteristic");
	const Coordinates c = joint_support({factorize(k1.lam), factorize(k2.lam)}, f);
	const auto ca = kummer_class(k1.lam, n, c.support);
	const auto cb = kummer_class(k2.lam, n, c.support);
	const std::int64_t g = std::gcd(n, c.w);
	auto reaches = [&](const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y) {
		for (std::int64_t m = 0; m < n; ++m) {
			bool ok = mod_floor(m * x[0], g) == y[0];
			for (std::size_t i = 1; ok && i < x.size(); ++i)
				ok = mod_floor(m * x[i], n) == y[i];
			if (ok)
				return true;
		}
		return false;
	};
	return reaches(ca, cb) && reaches(cb, ca);
}

SubgroupLattice exponent_vector_of_subgroup(const MultSubgroup &g)
{
	std::vector<ExponentVector> evs;
	for (const auto &x : g.generators)
		evs.push_back(factorize(x));
	const Coordinates c = joint_support(evs, g.field);
	SubgroupLattice out;
	out.support = c.support;
	std::vector<std::vector<Int>> rows;
	for (const auto &ev : evs)
		rows.push_back(c.free(ev));
	std::vector<std::int64_t> tors;
	for (const auto &ev : evs)
		tors.push_back(torsion_index(ev.torsion));
	Int acc = c.w;
	if (c.support.empty()) {
		for (auto j : tors)
			mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), Int(j).get_mpz_t());
	} else {
		out.basis = hermite_normal_form(rows, c.support.size());
		const SNFResult snf = smith_normal_form(IntMatrix::from_rows(rows));
		for (std::size_t i = snf.rank(); i < rows.size(); ++i) {
			Int j = 0;
			for (std::size_t k = 0; k < rows.size(); ++k)
				j += snf.U(i, k) * tors[k];
			mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), j.get_mpz_t());
		}
	}
	out.torsion_order = Int(c.w) / acc;
	return out;
}

} // namespace sgt
