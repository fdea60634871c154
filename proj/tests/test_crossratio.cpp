#include "sgt/crossratio.h"

#include "testutil.h"

#include <doctest.h>

#include <random>

using namespace sgt;
using namespace sgt::testutil;

namespace {

const FieldDesc Q = FieldDesc::rationals();
const FieldDesc E = FieldDesc::eisenstein();

ProjPoint pt(const FieldElem &x) { return ProjPoint(x); }
ProjPoint qp(long n, long d = 1) { return ProjPoint(FieldElem(Q, Rat(n, d))); }
ProjPoint inf(const FieldDesc &f) { return ProjPoint::infinity(f); }

ProjPoint random_point(std::mt19937_64 &rng, const FieldDesc &f)
{
	if (rng() % 8 == 0)
		return inf(f);
	if (rng() % 8 == 0)
		return ProjPoint(FieldElem::zero(f));
	return ProjPoint(random_small_elem(rng, f));
}

MobiusMap random_mobius(std::mt19937_64 &rng, const FieldDesc &f)
{
	for (;;) {
		const FieldElem a = random_small_elem(rng, f), b = random_small_elem(rng, f);
		const FieldElem c = rng() % 3 ? random_small_elem(rng, f) : FieldElem::zero(f);
		const FieldElem d = random_small_elem(rng, f);
		if (!(a * d - b * c).is_zero())
			return MobiusMap(a, b, c, d);
	}
}

std::vector<ProjPoint> distinct_points(std::mt19937_64 &rng, const FieldDesc &f, std::size_t n)
{
	std::vector<ProjPoint> out;
	while (out.size() < n) {
		const ProjPoint x = random_point(rng, f);
		if (std::find(out.begin(), out.end(), x) == out.end())
			out.push_back(x);
	}
	return out;
}

const std::vector<FieldDesc> kFields{Q, E, FieldDesc::function_field(2), FieldDesc::function_field(3),
                                     FieldDesc::function_field(5)};

} // namespace

TEST_CASE("cross_ratio examples")
{
	const FieldElem lam(Q, Rat(7, 3)), mu(Q, Rat(-5, 2));
	CHECK(cross_ratio(qp(0), inf(Q), qp(1), pt(lam)) == lam);
	CHECK(cross_ratio(qp(1), inf(Q), pt(lam), pt(mu)) == (mu - FieldElem(Q, 1L)) / (lam - FieldElem(Q, 1L)));
	std::mt19937_64 rng(21);
	for (const auto &f : kFields)
		for (int it = 0; it < 40; ++it) {
			const auto x = distinct_points(rng, f, 4);
			const FieldElem l = cross_ratio(x[0], x[1], x[2], x[3]);
			CHECK(cross_ratio(x[2], x[1], x[0], x[3]) == FieldElem::one(f) - l);
			CHECK_FALSE(l.is_zero());
			CHECK_FALSE(l.is_one());
		}
	CHECK_THROWS_AS(cross_ratio(qp(0), qp(0), qp(1), qp(2)), DomainError);
}

TEST_CASE("mobius examples")
{
	CHECK(mobius_from_triples({qp(0), inf(Q), qp(1)}, {qp(0), inf(Q), qp(1)}) == MobiusMap::identity(Q));
	const MobiusMap f = mobius_from_triples({qp(1), qp(0), inf(Q)}, {qp(0), inf(Q), qp(1)});
	const FieldElem one = FieldElem::one(Q), zero = FieldElem::zero(Q);
	CHECK(f == MobiusMap(one, -one, one, zero));
	CHECK(mobius_apply(f, qp(1)) == qp(0));
	CHECK(mobius_apply(MobiusMap(zero, one, one, zero), inf(Q)) == qp(0));
	CHECK(mobius_apply(MobiusMap::identity(Q), qp(5, 7)) == qp(5, 7));
	CHECK_THROWS_AS(MobiusMap(one, one, one, one), DomainError);
	CHECK_THROWS_AS(mobius_from_triples({qp(1), qp(1), inf(Q)}, {qp(0), inf(Q), qp(1)}), DomainError);
	CHECK(MobiusMap(FieldElem(Q, 2L), zero, zero, FieldElem(Q, 2L)) == MobiusMap::identity(Q));
}

TEST_CASE("mobius_from_triples maps triples and forms a group")
{
	std::mt19937_64 rng(22);
	for (const auto &f : kFields)
		for (int it = 0; it < 60; ++it) {
			const auto p = distinct_points(rng, f, 3), q = distinct_points(rng, f, 3);
			const MobiusMap g = mobius_from_triples({p[0], p[1], p[2]}, {q[0], q[1], q[2]});
			for (int i = 0; i < 3; ++i)
				CHECK(g.apply(p[static_cast<std::size_t>(i)]) == q[static_cast<std::size_t>(i)]);
			CHECK(g.compose(g.inverse()) == MobiusMap::identity(f));
			CHECK(g.inverse().compose(g) == MobiusMap::identity(f));
			const MobiusMap h = random_mobius(rng, f);
			const ProjPoint x = random_point(rng, f);
			CHECK(g.compose(h).apply(x) == g.apply(h.apply(x)));
		}
}

TEST_CASE("cross-ratio is Mobius invariant")
{
	std::mt19937_64 rng(23);
	for (const auto &f : kFields)
		for (int it = 0; it < 200; ++it) {
			const auto x = distinct_points(rng, f, 4);
			const MobiusMap g = random_mobius(rng, f);
			CHECK(cross_ratio(g.apply(x[0]), g.apply(x[1]), g.apply(x[2]), g.apply(x[3])) ==
			      cross_ratio(x[0], x[1], x[2], x[3]));
		}
}

TEST_CASE("twist_set")
{
	const FieldDesc f2 = FieldDesc::function_field(2);
	const FieldElem t = FieldElem::t(2), one = FieldElem::one(f2);
	const CuspSet E1(f2, {pt(FieldElem::zero(f2)), inf(f2), pt(one), pt(t)});
	CHECK(twist_set(E1, 1).points == std::vector<ProjPoint>{pt(FieldElem::zero(f2)), inf(f2), pt(one), pt(t * t)});
	CHECK(twist_set(E1, 0).points == E1.points);
	const CuspSet E2(f2, {pt(FieldElem::zero(f2)), inf(f2), pt(one), pt(t + one)});
	CHECK(twist_set(E2, 1).points.back() == pt(t * t + one));
	CHECK_THROWS_AS(twist_set(CuspSet(Q, {qp(0), qp(1), inf(Q)}), 1), DomainError);

	std::mt19937_64 rng(24);
	for (std::int64_t p : {2, 3, 5}) {
		const FieldDesc f = FieldDesc::function_field(p);
		for (int it = 0; it < 40; ++it) {
			const CuspSet S(f, distinct_points(rng, f, 4));
			const std::int64_t n = static_cast<std::int64_t>(rng() % 3);
			const CuspSet T = twist_set(S, n);
			CHECK(cross_ratio(T.points[0], T.points[1], T.points[2], T.points[3]) ==
			      frobenius(cross_ratio(S.points[0], S.points[1], S.points[2], S.points[3]), n));
		}
	}
}

TEST_CASE("decide_lambda_char0 examples")
{
	const FieldElem r = FieldElem::rho();
	CHECK(decide_lambda_char0(FieldElem(Q, Rat(5, 3)), FieldElem(Q, Rat(5, 3))) == Char0Verdict::Equal);
	CHECK(decide_lambda_char0(r, r.inverse()) == Char0Verdict::RhoPair);
	CHECK(decide_lambda_char0(r.inverse(), r) == Char0Verdict::RhoPair);
	CHECK(FieldElem::one(E) - r == r.inverse());
	CHECK(decide_lambda_char0(FieldElem(Q, 2L), FieldElem(Q, 3L)) == Char0Verdict::HypothesisFails);
	CHECK_THROWS_AS(decide_lambda_char0(FieldElem(Q, 1L), FieldElem(Q, 3L)), DomainError);
	CHECK_THROWS_AS(decide_lambda_char0(FieldElem(Q, 0L), FieldElem(Q, 3L)), DomainError);
}

TEST_CASE("decide_lambda_char0 is consistent on honest instances")
{
	std::mt19937_64 rng(25);
	int seen = 0;
	for (const auto &f : {Q, E}) {
		const FieldElem zeta = torsion_generator(f);
		const std::int64_t w = f.roots_of_unity();
		for (int it = 0; it < 500; ++it) {
			FieldElem l = random_small_elem(rng, f);
			if (l.is_one())
				continue;
			CHECK(decide_lambda_char0(l, l) == Char0Verdict::Equal);
			const FieldElem cands[] = {l.inverse(), FieldElem::one(f) - l, l * zeta.pow(static_cast<std::int64_t>(rng() % 6))};
			for (const auto &m : cands)
				if (!m.is_one() && !m.is_zero())
					CHECK_NOTHROW(decide_lambda_char0(l, m));
			++seen;
		}
		for (std::int64_t i = 1; i < w; ++i)
			for (std::int64_t j = 1; j < w; ++j) {
				const FieldElem a = zeta.pow(i), b = zeta.pow(j);
				if (a.is_one() || b.is_one())
					continue;
				const Char0Verdict v = decide_lambda_char0(a, b);
				if (a == b)
					CHECK(v == Char0Verdict::Equal);
				else if (v != Char0Verdict::HypothesisFails)
					CHECK(v == Char0Verdict::RhoPair);
			}
	}
	CHECK(seen > 900);
}

TEST_CASE("decide_lambda_charp")
{
	const FieldDesc f2 = FieldDesc::function_field(2);
	const FieldElem t = FieldElem::t(2);
	CHECK(decide_lambda_charp(t, t * t) == 1);
	CHECK(decide_lambda_charp(t, t) == 0);
	CHECK_FALSE(decide_lambda_charp(t, t + FieldElem::one(f2)));
	CHECK(decide_lambda_charp(t * t, t) == -1);
	CHECK_THROWS_AS(decide_lambda_charp(FieldElem::one(f2), t), DomainError);

	std::mt19937_64 rng(26);
	for (std::int64_t p : {2, 3, 5}) {
		const FieldDesc f = FieldDesc::function_field(p);
		for (int it = 0; it < 60; ++it) {
			const FieldElem l = random_small_elem(rng, f);
			if (is_constant(l))
				continue;
			const std::int64_t n = static_cast<std::int64_t>(rng() % 5);
			const FieldElem m = frobenius(l, n);
			CHECK(decide_lambda_charp(l, m) == n);
			if (n > 0)
				CHECK(decide_lambda_charp(m, l) == -n);
			// λ ↦ λ^{−pⁿ} preserves ⟨λ⟩ but not ⟨1−λ⟩
			CHECK_FALSE(decide_lambda_charp(l, m.inverse()));
		}
	}
}

TEST_CASE("lemma235_solve")
{
	using V = std::vector<std::pair<std::int64_t, std::int64_t>>;
	CHECK(lemma235_solve(2, 1, 3, 6) == V{{1, 3}, {3, 1}});
	CHECK(lemma235_solve(2, 1, -1, 6) == V{{-1, 1}, {1, -1}});
	CHECK(lemma235_solve(3, 2, 2, 6) == V{{2, 2}});
	for (std::int64_t p : {2, 3, 5, 7})
		for (std::int64_t x = -6; x <= 6; ++x)
			for (std::int64_t y = -6; y <= 6; ++y) {
				if (x == 0 || y == 0)
					continue;
				V expected{{x, y}};
				if (x != y)
					expected.emplace_back(y, x);
				std::sort(expected.begin(), expected.end());
				CHECK(lemma235_solve(p, x, y, 6) == expected);
			}
	CHECK_THROWS_AS(lemma235_solve(2, 0, 1, 6), DomainError);
}

TEST_CASE("lemma236_decide")
{
	const FieldDesc f3 = FieldDesc::function_field(3);
	const FieldElem t = FieldElem::t(3), one = FieldElem::one(f3);
	CHECK(lemma236_decide(t, t, {1, 1, 1, 1, 1, 1}) == Lemma236Case::CaseA);
	CHECK(lemma236_decide(t, t, {-2, -2, -2, -2, -2, -2}) == Lemma236Case::CaseA);
	CHECK(lemma236_decide(t, t + one, {1, 1, 2, 2, 0, 0}) == Lemma236Case::HypothesisFails);
	CHECK(lemma236_decide(t, t * t * t, {2, 1, 2, 1, 2, 1}) == Lemma236Case::HypothesisFails);
	CHECK(lemma236_decide(t, t, {0, 0, 0, 0, 0, 0}) == Lemma236Case::CaseA);
	CHECK_THROWS_AS(lemma236_decide(t, t, {1, 1, 2, 1, 1, 1}), DomainError);
	CHECK_THROWS_AS(lemma236_decide(one + one, t, {1, 1, 1, 1, 1, 1}), DomainError);

	// the three equalities evaluated directly for nonnegative exponents
	std::mt19937_64 rng(27);
	for (std::int64_t p : {2, 3}) {
		const FieldDesc f = FieldDesc::function_field(p);
		const FieldElem u = FieldElem::one(f);
		for (int it = 0; it < 80; ++it) {
			const FieldElem l1 = random_small_elem(rng, f);
			if (is_constant(l1) || (l1 - u).is_zero())
				continue;
			const std::int64_t n = static_cast<std::int64_t>(rng() % 3);
			const FieldElem l2 = rng() % 2 ? frobenius(l1, n) : random_small_elem(rng, f);
			if (l2.is_zero() || l2.is_one())
				continue;
			const std::int64_t d = static_cast<std::int64_t>(rng() % 3) - 1;
			const std::int64_t A2 = static_cast<std::int64_t>(rng() % 3), B2 = rng() % 2 ? A2 : static_cast<std::int64_t>(rng() % 3);
			const std::int64_t C2 = rng() % 2 ? A2 : static_cast<std::int64_t>(rng() % 3);
			const Lemma236Exponents e{std::max<std::int64_t>(A2 + d, 0), 0, 0, 0, 0, 0};
			const std::int64_t D = e.A1 - A2;
			const Lemma236Exponents ex{A2 + D, A2, B2 + D, B2, C2 + D, C2};
			if (ex.B1 < 0 || ex.C1 < 0)
				continue;
			auto pw = [&](std::int64_t k) {
				std::int64_t r = 1;
				while (k--)
					r *= p;
				return r - 1;
			};
			const bool direct = l1.pow(pw(ex.A1)) == l2.pow(pw(ex.A2)) &&
			                    (l1 - u).pow(pw(ex.B1)) == (l2 - u).pow(pw(ex.B2)) &&
			                    (l1 / (l1 - u)).pow(pw(ex.C1)) == (l2 / (l2 - u)).pow(pw(ex.C2));
			const Lemma236Case c = lemma236_decide(l1, l2, ex);
			CHECK((c != Lemma236Case::HypothesisFails) == direct);
		}
	}
}

TEST_CASE("condition_star_check")
{
	const FieldDesc f5 = FieldDesc::function_field(5);
	const FieldElem t = FieldElem::t(5);
	auto c = [&](long v) { return pt(FieldElem(f5, v)); };
	CHECK(condition_star_check(CuspSet(f5, {c(0), inf(f5), c(1), pt(t)})));
	CHECK_FALSE(condition_star_check(CuspSet(f5, {c(0), inf(f5), c(1), c(2)})));
	CHECK(condition_star_check(CuspSet(f5, {c(0), inf(f5), c(1)})));
	CHECK_FALSE(condition_star_check(CuspSet(f5, {c(0), inf(f5), c(1), pt(t), c(3)})));
	CHECK(condition_star_check(CuspSet(f5, {c(0), inf(f5), c(1), pt(t), pt(t * t)})));
	CHECK_THROWS_AS(CuspSet(f5, {c(0), c(0), c(1)}), DomainError);
}
