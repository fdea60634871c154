#include "sgt/exactalg.h"
#include "sgt/fieldarith.h"

#include "testutil.h"

#include <doctest.h>

#include <random>
#include <set>

using namespace sgt;
using namespace sgt::testutil;

namespace {

FpPoly poly_from_code(std::int64_t p, std::size_t deg, std::size_t code)
{
	std::vector<std::int64_t> c(deg + 1, 0);
	for (std::size_t i = 0; i < deg; ++i) {
		c[i] = static_cast<std::int64_t>(code % static_cast<std::size_t>(p));
		code /= static_cast<std::size_t>(p);
	}
	c[deg] = 1;
	return FpPoly(p, c);
}

std::size_t ipow(std::size_t b, std::size_t e)
{
	std::size_t r = 1;
	while (e--)
		r *= b;
	return r;
}

int moebius(int n)
{
	int m = 1;
	for (int q = 2; q * q <= n; ++q)
		if (n % q == 0) {
			n /= q;
			if (n % q == 0)
				return 0;
			m = -m;
		}
	return n > 1 ? -m : m;
}

// Irreducibility by trial division over every monic polynomial of degree ≤ deg/2.
bool irreducible_by_trial(const FpPoly &f)
{
	const std::int64_t p = f.prime();
	for (std::size_t d = 1; 2 * d <= static_cast<std::size_t>(f.degree()); ++d)
		for (std::size_t code = 0; code < ipow(static_cast<std::size_t>(p), d); ++code)
			if ((f % poly_from_code(p, d, code)).is_zero())
				return false;
	return true;
}

const std::vector<FieldDesc> kFields{FieldDesc::rationals(), FieldDesc::eisenstein(), FieldDesc::function_field(2),
                                     FieldDesc::function_field(3), FieldDesc::function_field(5),
                                     FieldDesc::function_field(7)};

} // namespace

TEST_CASE("polynomial arithmetic over F_p")
{
	const FpPoly a(5, {1, 2, 3}), b(5, {4, 0, 1});
	const auto [q, r] = (a * b + FpPoly(5, {1, 1})).divmod(b);
	CHECK(q == a);
	CHECK(r == FpPoly(5, {1, 1}));
	CHECK(gcd(a * b, b * FpPoly(5, {1, 1})) == b.monic());
	CHECK(FpPoly(2, {1, 1}).substitute_power(2) == FpPoly(2, {1, 0, 1}));
	CHECK(to_string(FpPoly(5, {1, 0, 2})) == "2*t^2+1");
	CHECK(inv_mod_p(3, 7) == 5);
	CHECK_THROWS_AS(a.divmod(FpPoly(5)), DomainError);
}

TEST_CASE("irreducible counts match the necklace formula")
{
	for (auto [p, maxdeg] : {std::pair<std::int64_t, int>{2, 8}, {3, 5}, {5, 3}}) {
		for (int n = 1; n <= maxdeg; ++n) {
			long expected = 0;
			for (int d = 1; d <= n; ++d)
				if (n % d == 0)
					expected += moebius(d) * static_cast<long>(ipow(static_cast<std::size_t>(p), static_cast<std::size_t>(n / d)));
			expected /= n;
			long count = 0;
			for (std::size_t code = 0; code < ipow(static_cast<std::size_t>(p), static_cast<std::size_t>(n)); ++code)
				if (is_irreducible(poly_from_code(p, static_cast<std::size_t>(n), code)))
					++count;
			CHECK_MESSAGE(count == expected, "p=", p, " n=", n);
		}
	}
}

TEST_CASE("polynomial factorization round trips")
{
	std::mt19937_64 rng(51);
	for (std::int64_t p : {2, 3, 5, 7, 101}) {
		for (int t = 0; t < 80; ++t) {
			FpPoly f = random_poly(rng, p, 9);
			if (f.is_zero())
				continue;
			if (t % 4 == 0)
				f = f * f.substitute_power(static_cast<std::size_t>(p)); // force p-th power content
			const FpFactorization fz = factor(f);
			FpPoly prod = FpPoly::constant(p, fz.unit);
			for (const auto &[g, e] : fz.factors) {
				CHECK(g.lead() == 1);
				if (g.degree() <= 6 && p <= 7)
					CHECK(irreducible_by_trial(g));
				for (unsigned i = 0; i < e; ++i)
					prod = prod * g;
			}
			CHECK(prod == f);
			for (std::size_t i = 1; i < fz.factors.size(); ++i)
				CHECK(fz.factors[i - 1].first < fz.factors[i].first);
		}
	}
}

TEST_CASE("field arithmetic examples")
{
	const FieldDesc Q = FieldDesc::rationals();
	CHECK(FieldElem(Q, Rat(1, 2)) + FieldElem(Q, Rat(1, 3)) == FieldElem(Q, Rat(5, 6)));
	const FieldElem rho = FieldElem::rho();
	CHECK(rho * rho == rho - FieldElem::one(rho.field()));
	const FieldElem t = FieldElem::t(2);
	const FieldElem one2 = FieldElem::one(t.field());
	CHECK((t / (t + one2)) * ((t + one2) / t) == one2);
	CHECK_THROWS_AS(t + rho, MismatchError);
	CHECK_THROWS_AS(FieldElem::one(Q) / FieldElem::zero(Q), DomainError);
	CHECK(FieldElem::one(rho.field()) - rho == rho.inverse());
	CHECK(rho.pow(6).is_one());
}

TEST_CASE("factorization examples")
{
	const FieldDesc Q = FieldDesc::rationals();
	const ExponentVector v = factorize(FieldElem(Q, 12L));
	CHECK(v.torsion.is_one());
	CHECK(v.factors.size() == 2);
	CHECK(v.factors.at(FieldElem(Q, 2L)) == 2);
	CHECK(v.factors.at(FieldElem(Q, 3L)) == 1);

	const FieldDesc F2 = FieldDesc::function_field(2);
	const FieldElem t = FieldElem::t(2);
	const ExponentVector w = factorize(t * t + t);
	CHECK(w.torsion.is_one());
	CHECK(w.factors.size() == 2);
	CHECK(w.factors.at(t) == 1);
	CHECK(w.factors.at(t + FieldElem::one(F2)) == 1);

	const FieldDesc E = FieldDesc::eisenstein();
	const FieldElem rho = FieldElem::rho();
	const ExponentVector three = factorize(FieldElem(E, 3L));
	const FieldElem pi3 = FieldElem::one(E) - rho * rho;
	REQUIRE(three.factors.size() == 1);
	CHECK(three.factors.at(pi3) == 2);
	CHECK(three.torsion == rho);
	CHECK(three.recompose() == FieldElem(E, 3L));

	CHECK_THROWS_AS(factorize(FieldElem::zero(Q)), DomainError);
}

TEST_CASE("factorization round trips and canonical irreducibles")
{
	std::mt19937_64 rng(52);
	for (const FieldDesc &f : kFields) {
		std::set<FieldElem> primes;
		for (int i = 0; i < 500; ++i) {
			const FieldElem a = random_elem(rng, f);
			const ExponentVector v = factorize(a);
			REQUIRE(v.recompose() == a);
			REQUIRE(torsion_order(v.torsion).has_value());
			for (const auto &[pi, e] : v.factors) {
				CHECK(e != 0);
				CHECK_FALSE(torsion_order(pi).has_value());
				primes.insert(pi);
			}
		}
		// no two canonical irreducibles differ by a root of unity
		const std::int64_t w = f.roots_of_unity();
		const FieldElem g = torsion_generator(f);
		std::set<FieldElem> seen;
		for (const FieldElem &pi : primes) {
			FieldElem u = FieldElem::one(f);
			for (std::int64_t j = 0; j < w; ++j) {
				const FieldElem assoc = pi * u;
				CHECK((j == 0 || !primes.count(assoc)));
				u = u * g;
			}
		}
	}
}

TEST_CASE("Eisenstein primes are primary and have prime or prime-square norm")
{
	std::mt19937_64 rng(53);
	for (int i = 0; i < 300; ++i) {
		const FieldElem a = random_elem(rng, FieldDesc::eisenstein());
		for (const auto &[pi, e] : factorize(a).factors) {
			const auto &[x, y] = pi.as_qrho();
			REQUIRE(x.get_den() == 1);
			REQUIRE(y.get_den() == 1);
			const Int n = x.get_num() * x.get_num() + x.get_num() * y.get_num() + y.get_num() * y.get_num();
			if (n == 3) {
				CHECK(pi == FieldElem::qrho(2, -1));
				continue;
			}
			CHECK(((x.get_num() % 3) + 3) % 3 == 2);
			CHECK(y.get_num() % 3 == 0);
			Int root;
			const bool square = mpz_perfect_square_p(n.get_mpz_t());
			if (square) {
				root = sqrt(n);
				CHECK(y == 0);
				CHECK(is_prime(root));
				CHECK(root % 3 == 2);
			} else {
				CHECK(is_prime(n));
				CHECK(n % 3 == 1);
			}
		}
	}
}

TEST_CASE("frobenius")
{
	const FieldElem t2 = FieldElem::t(2);
	const FieldElem one2 = FieldElem::one(t2.field());
	CHECK(frobenius(t2 + one2, 1) == t2 * t2 + one2);
	CHECK(frobenius(t2 / (t2 + one2), 0) == t2 / (t2 + one2));
	const FieldElem t3 = FieldElem::t(3);
	CHECK(frobenius(t3, 2) == t3.pow(9));
	CHECK_THROWS_AS(frobenius(FieldElem::rho(), 1), DomainError);

	std::mt19937_64 rng(54);
	for (std::int64_t p : {2, 3, 5}) {
		const FieldDesc f = FieldDesc::function_field(p);
		for (int i = 0; i < 40; ++i) {
			const FieldElem a = random_elem(rng, f), b = random_elem(rng, f);
			const std::int64_t n = static_cast<std::int64_t>(rng() % 3);
			CHECK(frobenius(a * b, n) == frobenius(a, n) * frobenius(b, n));
			CHECK(frobenius(a + b, n) == frobenius(a, n) + frobenius(b, n));
			std::int64_t q = 1;
			for (int k = 0; k < n; ++k)
				q *= p;
			CHECK(frobenius(a, n) == a.pow(q));
			CHECK(height(frobenius(a, n)) == q * height(a));
		}
	}
}

TEST_CASE("torsion and constants")
{
	CHECK(torsion_order(FieldElem::rho()) == 6);
	CHECK(torsion_order(FieldElem(FieldDesc::rationals(), -1L)) == 2);
	CHECK_FALSE(torsion_order(FieldElem::t(2)));
	CHECK(torsion_order(FieldElem(FieldDesc::function_field(7), 2L)) == 3);
	CHECK_THROWS_AS(torsion_order(FieldElem::zero(FieldDesc::rationals())), DomainError);

	const FieldDesc F5 = FieldDesc::function_field(5);
	const FieldElem t = FieldElem::t(5);
	CHECK(is_constant(FieldElem(F5, 2L)));
	CHECK_FALSE(is_constant(t));
	CHECK(is_constant((t + FieldElem::one(F5)) / (t + FieldElem::one(F5))));
	CHECK_THROWS_AS(is_constant(FieldElem::rho()), DomainError);

	for (const FieldDesc &f : kFields) {
		const FieldElem g = torsion_generator(f);
		CHECK(torsion_order(g) == f.roots_of_unity());
		for (std::int64_t j = 0; j < f.roots_of_unity(); ++j)
			CHECK(torsion_index(g.pow(j)) == j);
	}
}

TEST_CASE("field element text round trip")
{
	std::mt19937_64 rng(55);
	for (const FieldDesc &f : kFields)
		for (int i = 0; i < 100; ++i) {
			const FieldElem a = random_elem(rng, f);
			CHECK(parse_field_elem(to_string(a), f) == a);
		}
	CHECK(to_string(FieldElem::qrho(Rat(1, 2), Rat(-3, 4))) == "1/2-3/4*rho");
	CHECK(parse_field_elem("1 - rho", FieldDesc::eisenstein()) == FieldElem::rho().inverse());
	CHECK(parse_field_elem("(t^2+1)/(t+1)", FieldDesc::function_field(2)) == FieldElem::t(2) + FieldElem::one(FieldDesc::function_field(2)));
	CHECK(parse_field_elem("7", FieldDesc::function_field(5)) == FieldElem(FieldDesc::function_field(5), 2L));
	CHECK_THROWS_AS(parse_field_elem("1/0", FieldDesc::rationals()), ParseError);
	CHECK_THROWS_AS(parse_field_elem("t", FieldDesc::rationals()), ParseError);
	CHECK(to_string(parse_field_desc("FpT:5")) == "FpT:5");
	CHECK_THROWS_AS(parse_field_desc("FpT:4"), ParseError);
	CHECK_THROWS_AS(parse_field_desc("R"), ParseError);
}
