#include "sgt/exactalg.h"
#include "sgt/multlattice.h"

#include "testutil.h"

#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

using namespace sgt;
using namespace sgt::testutil;

namespace {

const FieldDesc Q = FieldDesc::rationals();
const FieldDesc E = FieldDesc::eisenstein();

FieldElem q(long n, long d = 1) { return FieldElem(Q, Rat(n, d)); }

FieldElem fp(std::int64_t p, std::vector<std::int64_t> num, std::vector<std::int64_t> den = {1})
{
	return FieldElem::ratfunc(FpPoly(p, std::move(num)), FpPoly(p, std::move(den)));
}

FieldElem pow_big(const FieldElem &a, const Int &e)
{
	return a.pow(e.get_si());
}

// ⟨a⟩ = ⟨b⟩ decided on exponent vectors and torsion indices.
bool cyclic_equal_oracle(const FieldElem &a, const FieldElem &b)
{
	const auto ea = factorize(a), eb = factorize(b);
	const std::int64_t w = a.field().roots_of_unity();
	const std::int64_t ja = torsion_index(ea.torsion), jb = torsion_index(eb.torsion);
	if (ea.factors.empty() || eb.factors.empty()) {
		if (!ea.factors.empty() || !eb.factors.empty())
			return false;
		return std::gcd(ja, w) == std::gcd(jb, w);
	}
	for (int s : {1, -1}) {
		bool ok = ea.factors.size() == eb.factors.size() && mod_floor(jb - s * ja, w) == 0;
		for (const auto &[pi, e] : ea.factors) {
			auto it = eb.factors.find(pi);
			ok = ok && it != eb.factors.end() && it->second == s * e;
		}
		if (ok)
			return true;
	}
	return false;
}

bool is_nth_power_q(const Rat &x, std::int64_t n)
{
	Int num = x.get_num(), den = x.get_den();
	if (num < 0) {
		if (n % 2 == 0)
			return false;
		num = -num;
	}
	Int r;
	return mpz_root(r.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(n)) != 0 &&
	       mpz_root(r.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(n)) != 0;
}

bool is_nth_power_fpt(const FieldElem &x, std::int64_t n)
{
	const RatFunc &rf = x.as_ratfunc();
	const std::int64_t p = x.field().p;
	for (const FpPoly *f : {&rf.num, &rf.den})
		for (const auto &[g, mult] : squarefree_factorization(*f))
			if (mult % n != 0)
				return false;
	const std::int64_t u = rf.num.lead();
	for (std::int64_t c = 1; c < p; ++c)
		if (pow_mod_p(c, n, p) == u)
			return true;
	return false;
}

bool is_nth_power(const FieldElem &x, std::int64_t n)
{
	return x.field().kind == FieldKind::Q ? is_nth_power_q(x.as_rational(), n) : is_nth_power_fpt(x, n);
}

// ⟨a⟩k^{×n} = ⟨b⟩k^{×n} by searching the powers of each side for a quotient that is an n-th power.
bool kummer_oracle(const FieldElem &a, const FieldElem &b, std::int64_t n)
{
	auto reaches = [&](const FieldElem &x, const FieldElem &y) {
		for (std::int64_t m = 0; m < n; ++m)
			if (is_nth_power(x.pow(m) / y, n))
				return true;
		return false;
	};
	return reaches(a, b) && reaches(b, a);
}

} // namespace

TEST_CASE("cyclic_equal examples")
{
	CHECK(cyclic_equal(q(4), q(1, 4)));
	CHECK_FALSE(cyclic_equal(q(2), q(4)));
	CHECK(cyclic_equal(FieldElem::rho(), FieldElem::rho().inverse()));
	CHECK_FALSE(cyclic_equal(FieldElem::rho(), FieldElem::rho().pow(2)));
	CHECK(cyclic_equal(q(-1), q(-1)));
	CHECK_FALSE(cyclic_equal(q(-1), q(2)));
	CHECK_FALSE(cyclic_equal(q(2), q(-2)));
	CHECK_THROWS_AS(cyclic_equal(q(0), q(2)), DomainError);
}

TEST_CASE("cyclic_equal agrees with the exponent-vector oracle")
{
	std::mt19937_64 rng(11);
	for (const FieldDesc &f : {Q, E, FieldDesc::function_field(2), FieldDesc::function_field(5)}) {
		const FieldElem zeta = torsion_generator(f);
		for (int it = 0; it < 150; ++it) {
			const FieldElem a = random_small_elem(rng, f);
			const FieldElem c = random_small_elem(rng, f);
			const std::int64_t k = static_cast<std::int64_t>(rng() % 6);
			const std::vector<FieldElem> bs{a, a.inverse(), a * zeta.pow(k), a.inverse() * zeta.pow(k), a * a, c,
			                                zeta.pow(k)};
			for (const auto &b : bs) {
				CHECK(cyclic_equal(a, b) == cyclic_equal_oracle(a, b));
				CHECK(cyclic_equal(a, b) == cyclic_equal(b, a));
			}
			CHECK(cyclic_equal(a, a.inverse()));
		}
	}
}

TEST_CASE("solve_p_power examples")
{
	const FieldElem t = FieldElem::t(3);
	CHECK(solve_p_power(t, t.pow(9), 3) == PPowerResult::unique(2));
	CHECK(solve_p_power(t, t.pow(-3), 3) == PPowerResult::unique(1));
	CHECK(solve_p_power(t, t.pow(2), 3) == PPowerResult::none());
	CHECK(solve_p_power(t.pow(9), t, 3) == PPowerResult::unique(-2));
	CHECK(solve_p_power(FieldElem(t.field(), 2L), FieldElem(t.field(), 2L).inverse(), 3) == PPowerResult::all());
	CHECK(solve_p_power(FieldElem(t.field(), 2L), t, 3) == PPowerResult::none());
	CHECK(solve_p_power(q(2), q(1, 8), 3) == PPowerResult::unique(1));
	CHECK(solve_p_power(q(2), q(1, 8), 2) == PPowerResult::none());
	CHECK(solve_p_power(q(-1), q(-1), 2) == PPowerResult::all());
	CHECK_THROWS_AS(solve_p_power(t, t, 4), DomainError);
	for (const auto &[a, b, p] : std::vector<std::tuple<FieldElem, FieldElem, std::int64_t>>{
	         {t, t.pow(9), 3}, {t, t.pow(-3), 3}, {t, t.pow(2), 3}, {t.pow(9), t, 3}})
		CHECK(solve_p_power(a, b, p) == solve_p_power_by_exponents(a, b, p));
}

TEST_CASE("solve_p_power round trips")
{
	std::mt19937_64 rng(12);
	struct Case {
		FieldDesc f;
		std::int64_t p;
	};
	const std::vector<Case> cases{{FieldDesc::function_field(2), 2}, {FieldDesc::function_field(3), 3},
	                              {FieldDesc::function_field(5), 5}, {Q, 2}, {Q, 3}};
	int done = 0;
	for (int it = 0; it < 500; ++it) {
		const Case &c = cases[static_cast<std::size_t>(it) % cases.size()];
		FieldElem a = random_small_elem(rng, c.f);
		if (torsion_order(a))
			continue;
		const std::int64_t sigma = static_cast<std::int64_t>(rng() % 7) - 3;
		const int s = rng() % 2 ? 1 : -1;
		const bool twisted = rng() % 4 == 0;
		const FieldElem zeta = torsion_generator(c.f).pow(static_cast<std::int64_t>(rng() % 5));
		Int pp;
		mpz_ui_pow_ui(pp.get_mpz_t(), static_cast<unsigned long>(c.p), static_cast<unsigned long>(std::abs(sigma)));
		FieldElem b = a;
		if (sigma >= 0) {
			b = pow_big(a, pp * s);
		} else {
			b = a;
			a = pow_big(b, pp * s);
		}
		if (twisted)
			b = b * zeta;
		const PPowerResult fast = solve_p_power(a, b, c.p);
		const PPowerResult slow = solve_p_power_by_exponents(a, b, c.p);
		CHECK(fast == slow);
		if (!twisted || zeta.is_one())
			CHECK(fast == PPowerResult::unique(sigma));
		if (fast.kind == PPowerResult::Kind::Unique) {
			// vec(b) = ±p^σ vec(a) exactly, torsion included
			Int m;
			mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(c.p), static_cast<unsigned long>(std::abs(fast.sigma)));
			const bool ok = fast.sigma >= 0 ? (b == pow_big(a, m) || b == pow_big(a, -m))
			                                : (a == pow_big(b, m) || a == pow_big(b, -m));
			CHECK(ok);
		}
		++done;
	}
	CHECK(done > 350);
}

TEST_CASE("subgroup_power_inclusion examples")
{
	CHECK(subgroup_power_inclusion(MultSubgroup(Q, {q(4)}), MultSubgroup(Q, {q(2)}), {3}) == Int(1));
	CHECK(subgroup_power_inclusion(MultSubgroup(Q, {q(2)}), MultSubgroup(Q, {q(8)}), {2}) == Int(3));
	for (std::int64_t ell : {2, 3, 5, 7})
		CHECK_FALSE(subgroup_power_inclusion(MultSubgroup(Q, {q(2)}), MultSubgroup(Q, {q(3)}), {ell}));
	CHECK_FALSE(subgroup_power_inclusion(MultSubgroup(Q, {q(2)}), MultSubgroup(Q, {q(8)}), {3}));
	CHECK(subgroup_power_inclusion(MultSubgroup(Q, {q(-2)}), MultSubgroup(Q, {q(2)}), {3}) == Int(2));
	CHECK_THROWS_AS(subgroup_power_inclusion(MultSubgroup(Q, {q(2)}), MultSubgroup(E, {FieldElem::rho()}), {3}),
	                MismatchError);
}

TEST_CASE("subgroup_power_inclusion matches a brute-force search")
{
	const std::vector<long> pool{2, 3, -1, -2, 4, 6, 9, -8, 12, 18, 27, -3};
	std::mt19937_64 rng(13);
	auto pick = [&] { return q(pool[rng() % pool.size()]); };
	for (int it = 0; it < 120; ++it) {
		const std::vector<FieldElem> g1{pick(), pick()};
		const std::vector<FieldElem> g2 = rng() % 2 ? std::vector<FieldElem>{pick()} : std::vector<FieldElem>{pick(), pick()};
		const std::vector<std::int64_t> T{rng() % 2 ? 2 : 3};
		std::set<FieldElem> members;
		const int box = 60;
		if (g2.size() == 1)
			for (int c = -box; c <= box; ++c)
				members.insert(g2[0].pow(c));
		else
			for (int c1 = -box; c1 <= box; ++c1)
				for (int c2 = -box; c2 <= box; ++c2)
					members.insert(g2[0].pow(c1) * g2[1].pow(c2));
		std::optional<Int> brute;
		for (int N = 1; N <= 20 && !brute; ++N) {
			if (N % T[0] == 0)
				continue;
			bool ok = true;
			for (const auto &g : g1)
				ok = ok && members.count(g.pow(N)) > 0;
			if (ok)
				brute = N;
		}
		const auto got = subgroup_power_inclusion(MultSubgroup(Q, g1), MultSubgroup(Q, g2), T);
		if (brute)
			CHECK(got == brute);
		else
			CHECK((!got || *got > 20));
	}
}

TEST_CASE("kummer_equal examples and preconditions")
{
	CHECK(kummer_equal({3, q(2)}, {3, q(16)}));
	CHECK_FALSE(kummer_equal({2, q(2)}, {2, q(4)}));
	CHECK(kummer_equal({5, q(7, 3)}, {5, q(7, 3)}));
	CHECK(kummer_equal({6, FieldElem::rho()}, {6, FieldElem::rho()}));
	CHECK_THROWS_AS(kummer_equal({4, q(2)}, {4, q(2)}), DomainError);
	CHECK_THROWS_AS(kummer_equal({8, FieldElem::rho()}, {8, FieldElem::rho()}), DomainError);
	CHECK_THROWS_AS(kummer_equal({3, FieldElem::t(3)}, {3, FieldElem::t(3)}), DomainError);
	CHECK_THROWS_AS(kummer_equal({3, q(2)}, {5, q(2)}), MismatchError);
	CHECK(kummer_equal({4, FieldElem::t(3)}, {4, FieldElem::t(3).pow(5)}));
	CHECK_FALSE(kummer_equal({4, FieldElem::t(3)}, {4, FieldElem::t(3).pow(2)}));
}

TEST_CASE("kummer_equal agrees with n-th power search")
{
	std::mt19937_64 rng(14);
	for (const FieldDesc &f : {Q, FieldDesc::function_field(5), FieldDesc::function_field(7)}) {
		for (std::int64_t n = 1; n <= 9; ++n) {
			if (f.char_zero() && n % 4 == 0)
				continue;
			if (!f.char_zero() && n % f.p == 0)
				continue;
			for (int it = 0; it < 25; ++it) {
				const FieldElem a = random_small_elem(rng, f);
				const FieldElem c = random_small_elem(rng, f);
				const FieldElem zeta = torsion_generator(f).pow(static_cast<std::int64_t>(rng() % 6));
				const std::int64_t m = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n)) + 1;
				const std::vector<FieldElem> bs{a.pow(m) * c.pow(n), a.pow(m) * zeta, c, a.pow(m) * c.pow(n) * zeta};
				for (const auto &b : bs) {
					const bool got = kummer_equal({n, a}, {n, b});
					CHECK(got == kummer_oracle(a, b, n));
					CHECK(got == kummer_equal({n, b}, {n, a}));
				}
			}
		}
	}
}

TEST_CASE("Kummer agreement on all small prime powers forces mutual power inclusion")
{
	std::mt19937_64 rng(15);
	struct Case {
		FieldDesc f;
		std::vector<std::int64_t> T;
	};
	const std::vector<Case> cases{{Q, {3, 5, 7, 11}}, {FieldDesc::function_field(5), {2, 3, 7, 11}}};
	int positives = 0;
	for (const Case &c : cases) {
		for (int it = 0; it < 60; ++it) {
			const FieldElem a = random_small_elem(rng, c.f);
			if (torsion_order(a))
				continue;
			std::int64_t u = 1;
			for (std::int64_t ell : {13, 17, 2, 3})
				if (rng() % 2 && std::find(c.T.begin(), c.T.end(), ell) == c.T.end())
					u *= ell;
			if (rng() % 2)
				u = -u;
			const FieldElem zeta = torsion_generator(c.f).pow(static_cast<std::int64_t>(rng() % 4));
			const FieldElem noise = rng() % 3 == 0 ? random_small_elem(rng, c.f) : FieldElem::one(c.f);
			const FieldElem b = a.pow(u) * zeta * noise;
			bool all_equal = true;
			for (std::int64_t ell : c.T)
				for (std::int64_t n = ell, e = 1; e <= 3; ++e, n *= ell)
					all_equal = all_equal && kummer_equal({n, a}, {n, b});
			if (!all_equal)
				continue;
			++positives;
			const MultSubgroup ga(c.f, {a}), gb(c.f, {b});
			const auto n12 = subgroup_power_inclusion(ga, gb, c.T);
			const auto n21 = subgroup_power_inclusion(gb, ga, c.T);
			REQUIRE(n12);
			REQUIRE(n21);
			for (std::int64_t ell : c.T) {
				CHECK(*n12 % ell != 0);
				CHECK(*n21 % ell != 0);
			}
		}
	}
	CHECK(positives > 20);
}

TEST_CASE("exponent_vector_of_subgroup")
{
	{
		const auto L = exponent_vector_of_subgroup(MultSubgroup(Q, {q(2), q(3)}));
		CHECK(L.support == std::vector<FieldElem>{q(2), q(3)});
		CHECK(L.basis == std::vector<std::vector<Int>>{{1, 0}, {0, 1}});
		CHECK(L.torsion_order == 1);
	}
	{
		const auto L = exponent_vector_of_subgroup(MultSubgroup(Q, {q(4)}));
		CHECK(L.support == std::vector<FieldElem>{q(2)});
		CHECK(L.basis == std::vector<std::vector<Int>>{{2}});
	}
	{
		const FieldDesc f2 = FieldDesc::function_field(2);
		const FieldElem t = FieldElem::t(2);
		const auto L = exponent_vector_of_subgroup(MultSubgroup(f2, {t, t * (t + FieldElem::one(f2))}));
		CHECK(L.support == std::vector<FieldElem>{t, t + FieldElem::one(f2)});
		CHECK(L.basis == std::vector<std::vector<Int>>{{1, 0}, {0, 1}});
	}
	CHECK(exponent_vector_of_subgroup(MultSubgroup(Q, {q(-1)})).torsion_order == 2);
	CHECK(exponent_vector_of_subgroup(MultSubgroup(Q, {q(-4), q(8)})).torsion_order == 2);
	CHECK(exponent_vector_of_subgroup(MultSubgroup(Q, {q(4), q(-8)})).torsion_order == 1);
	CHECK(exponent_vector_of_subgroup(MultSubgroup(E, {FieldElem::rho().pow(2), FieldElem(E, -1L)}))
	          .torsion_order == 6);
}

TEST_CASE("torsion order of a subgroup matches enumeration")
{
	std::mt19937_64 rng(16);
	for (const FieldDesc &f : {Q, E, FieldDesc::function_field(7)}) {
		const FieldElem zeta = torsion_generator(f);
		for (int it = 0; it < 30; ++it) {
			const FieldElem x = random_small_elem(rng, f), y = random_small_elem(rng, f);
			std::vector<FieldElem> gens;
			for (int k = 0; k < 3; ++k) {
				const long ex = static_cast<long>(rng() % 3) - 1, ey = static_cast<long>(rng() % 3) - 1;
				gens.push_back(x.pow(ex) * y.pow(ey) * zeta.pow(static_cast<std::int64_t>(rng() % 6)));
			}
			std::set<FieldElem> roots;
			// a kernel basis of a 3×2 matrix with entries in {−1,0,1} has entries of size ≤ 2
			for (int c0 = -4; c0 <= 4; ++c0)
				for (int c1 = -4; c1 <= 4; ++c1)
					for (int c2 = -4; c2 <= 4; ++c2) {
						const FieldElem g = gens[0].pow(c0) * gens[1].pow(c1) * gens[2].pow(c2);
						if (torsion_order(g))
							roots.insert(g);
					}
			for (bool grew = true; grew;) {
				grew = false;
				for (const auto &r1 : std::vector<FieldElem>(roots.begin(), roots.end()))
					for (const auto &r2 : std::vector<FieldElem>(roots.begin(), roots.end()))
						grew = roots.insert(r1 * r2).second || grew;
			}
			CHECK(exponent_vector_of_subgroup(MultSubgroup(f, gens)).torsion_order == Int(roots.size()));
		}
	}
}
