#include "sgt/fieldarith.h"

#include "sgt/exactalg.h"
#include "sgt/expr.h"

#include <sstream>

namespace sgt {

// ---- FieldDesc --------------------------------------------------------------

FieldDesc FieldDesc::function_field(std::int64_t p)
{
	if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime(static_cast<std::uint64_t>(p)))
		throw DomainError("FpT: p must be a prime below 2^31");
	return {FieldKind::FpT, p};
}

std::int64_t FieldDesc::roots_of_unity() const
{
	switch (kind) {
	case FieldKind::Q:
		return 2;
	case FieldKind::QRho:
		return 6;
	case FieldKind::FpT:
		return p - 1;
	}
	return 0;
}

std::string to_string(const FieldDesc &f)
{
	switch (f.kind) {
	case FieldKind::Q:
		return "Q";
	case FieldKind::QRho:
		return "QRho";
	case FieldKind::FpT:
		return "FpT:" + std::to_string(f.p);
	}
	return "?";
}

FieldDesc parse_field_desc(std::string_view text)
{
	if (text == "Q")
		return FieldDesc::rationals();
	if (text == "QRho")
		return FieldDesc::eisenstein();
	if (text.substr(0, 4) == "FpT:") {
		const std::string digits(text.substr(4));
		if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 12)
			throw ParseError("field: bad characteristic in '" + std::string(text) + "'");
		try {
			return FieldDesc::function_field(std::stoll(digits));
		} catch (const DomainError &e) {
			throw ParseError(std::string("field: ") + e.what());
		}
	}
	throw ParseError("field: expected Q, QRho or FpT:<p>, got '" + std::string(text) + "'");
}

// ---- helpers ------------------------------------------------------------------

namespace {

QRhoVal qmul(const QRhoVal &x, const QRhoVal &y)
{
	return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
}

Rat qnorm(const QRhoVal &x) { return x.a * x.a + x.a * x.b + x.b * x.b; }

QRhoVal qconj(const QRhoVal &x) { return {x.a + x.b, -x.b}; }

RatFunc canonical(FpPoly num, FpPoly den)
{
	if (den.is_zero())
		throw DomainError("division by zero in F_p(t)");
	if (num.is_zero())
		return {num, FpPoly::constant(den.prime(), 1)};
	const FpPoly g = gcd(num, den);
	if (!g.is_one()) {
		num = num / g;
		den = den / g;
	}
	const std::int64_t inv = inv_mod_p(den.lead(), den.prime());
	return {num.scaled(inv), den.scaled(inv)};
}

} // namespace

// ---- FieldElem ------------------------------------------------------------------

FieldElem::FieldElem(const FieldDesc &field, const Rat &q_in) : field_(field)
{
	Rat q = q_in;
	q.canonicalize();
	switch (field.kind) {
	case FieldKind::Q:
		v_ = q;
		break;
	case FieldKind::QRho:
		v_ = QRhoVal{q, Rat(0)};
		break;
	case FieldKind::FpT: {
		const Int p = field.p;
		const Int n = ((q.get_num() % p) + p) % p;
		const Int d = ((q.get_den() % p) + p) % p;
		v_ = canonical(FpPoly::constant(field.p, n.get_si()), FpPoly::constant(field.p, d.get_si()));
		break;
	}
	}
}

FieldElem FieldElem::rho() { return FieldElem(FieldDesc::eisenstein(), QRhoVal{Rat(0), Rat(1)}); }

FieldElem FieldElem::qrho(const Rat &a, const Rat &b)
{
	Rat x = a, y = b;
	x.canonicalize();
	y.canonicalize();
	return FieldElem(FieldDesc::eisenstein(), QRhoVal{x, y});
}

FieldElem FieldElem::t(std::int64_t p)
{
	const FieldDesc f = FieldDesc::function_field(p);
	return FieldElem(f, RatFunc{FpPoly::monomial(p, 1), FpPoly::constant(p, 1)});
}

FieldElem FieldElem::ratfunc(const FpPoly &num, const FpPoly &den)
{
	if (num.prime() != den.prime())
		throw MismatchError("ratfunc: characteristics differ");
	return FieldElem(FieldDesc::function_field(num.prime()), canonical(num, den));
}

const Rat &FieldElem::as_rational() const
{
	if (field_.kind != FieldKind::Q)
		throw MismatchError("element is not in Q");
	return std::get<Rat>(v_);
}

const QRhoVal &FieldElem::as_qrho() const
{
	if (field_.kind != FieldKind::QRho)
		throw MismatchError("element is not in Q(rho)");
	return std::get<QRhoVal>(v_);
}

const RatFunc &FieldElem::as_ratfunc() const
{
	if (field_.kind != FieldKind::FpT)
		throw MismatchError("element is not in F_p(t)");
	return std::get<RatFunc>(v_);
}

bool FieldElem::is_zero() const
{
	switch (field_.kind) {
	case FieldKind::Q:
		return std::get<Rat>(v_) == 0;
	case FieldKind::QRho:
		return std::get<QRhoVal>(v_).a == 0 && std::get<QRhoVal>(v_).b == 0;
	case FieldKind::FpT:
		return std::get<RatFunc>(v_).num.is_zero();
	}
	return false;
}

bool FieldElem::is_one() const { return *this == one(field_); }

void FieldElem::check(const FieldElem &rhs) const
{
	if (!(field_ == rhs.field_))
		throw MismatchError("field elements live in different fields");
}

FieldElem FieldElem::operator+(const FieldElem &rhs) const
{
	check(rhs);
	switch (field_.kind) {
	case FieldKind::Q:
		return FieldElem(field_, Rat(std::get<Rat>(v_) + std::get<Rat>(rhs.v_)));
	case FieldKind::QRho: {
		const auto &x = std::get<QRhoVal>(v_), &y = std::get<QRhoVal>(rhs.v_);
		return FieldElem(field_, QRhoVal{x.a + y.a, x.b + y.b});
	}
	case FieldKind::FpT: {
		const auto &x = std::get<RatFunc>(v_), &y = std::get<RatFunc>(rhs.v_);
		if (x.den == y.den)
			return FieldElem(field_, canonical(x.num + y.num, x.den));
		return FieldElem(field_, canonical(x.num * y.den + y.num * x.den, x.den * y.den));
	}
	}
	return *this;
}

FieldElem FieldElem::operator-() const
{
	switch (field_.kind) {
	case FieldKind::Q:
		return FieldElem(field_, Rat(-std::get<Rat>(v_)));
	case FieldKind::QRho: {
		const auto &x = std::get<QRhoVal>(v_);
		return FieldElem(field_, QRhoVal{-x.a, -x.b});
	}
	case FieldKind::FpT: {
		const auto &x = std::get<RatFunc>(v_);
		return FieldElem(field_, RatFunc{-x.num, x.den});
	}
	}
	return *this;
}

FieldElem FieldElem::operator-(const FieldElem &rhs) const { return *this + (-rhs); }

FieldElem FieldElem::operator*(const FieldElem &rhs) const
{
	check(rhs);
	switch (field_.kind) {
	case FieldKind::Q:
		return FieldElem(field_, Rat(std::get<Rat>(v_) * std::get<Rat>(rhs.v_)));
	case FieldKind::QRho:
		return FieldElem(field_, qmul(std::get<QRhoVal>(v_), std::get<QRhoVal>(rhs.v_)));
	case FieldKind::FpT: {
		const auto &x = std::get<RatFunc>(v_), &y = std::get<RatFunc>(rhs.v_);
		// cross-cancel first to keep intermediate degrees small
		const FpPoly g1 = gcd(x.num, y.den), g2 = gcd(y.num, x.den);
		return FieldElem(field_, canonical((x.num / g1) * (y.num / g2), (x.den / g2) * (y.den / g1)));
	}
	}
	return *this;
}

FieldElem FieldElem::inverse() const
{
	if (is_zero())
		throw DomainError("division by zero");
	switch (field_.kind) {
	case FieldKind::Q:
		return FieldElem(field_, Rat(1 / std::get<Rat>(v_)));
	case FieldKind::QRho: {
		const auto &x = std::get<QRhoVal>(v_);
		const Rat n = qnorm(x);
		const QRhoVal c = qconj(x);
		return FieldElem(field_, QRhoVal{Rat(c.a / n), Rat(c.b / n)});
	}
	case FieldKind::FpT: {
		const auto &x = std::get<RatFunc>(v_);
		return FieldElem(field_, canonical(x.den, x.num));
	}
	}
	return *this;
}

FieldElem FieldElem::operator/(const FieldElem &rhs) const
{
	check(rhs);
	return *this * rhs.inverse();
}

FieldElem FieldElem::pow(std::int64_t e) const
{
	FieldElem base = e < 0 ? inverse() : *this;
	std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
	FieldElem out = one(field_);
	while (k > 0) {
		if (k & 1)
			out = out * base;
		k >>= 1;
		if (k > 0)
			base = base * base;
	}
	return out;
}

bool FieldElem::operator<(const FieldElem &rhs) const
{
	check(rhs);
	switch (field_.kind) {
	case FieldKind::Q:
		return std::get<Rat>(v_) < std::get<Rat>(rhs.v_);
	case FieldKind::QRho: {
		const auto &x = std::get<QRhoVal>(v_), &y = std::get<QRhoVal>(rhs.v_);
		if (x.a != y.a)
			return x.a < y.a;
		return x.b < y.b;
	}
	case FieldKind::FpT: {
		const auto &x = std::get<RatFunc>(v_), &y = std::get<RatFunc>(rhs.v_);
		if (!(x.num == y.num))
			return x.num < y.num;
		return x.den < y.den;
	}
	}
	return false;
}

// ---- text -----------------------------------------------------------------------

std::string to_string(const FieldElem &a)
{
	switch (a.field().kind) {
	case FieldKind::Q:
		return a.as_rational().get_str();
	case FieldKind::QRho: {
		const auto &[x, y] = a.as_qrho();
		if (y == 0)
			return x.get_str();
		std::string b = y == 1 ? "rho" : y == -1 ? "-rho" : y.get_str() + "*rho";
		if (x == 0)
			return b;
		return x.get_str() + (y > 0 ? "+" : "") + b;
	}
	case FieldKind::FpT: {
		const auto &r = a.as_ratfunc();
		if (r.den.is_one())
			return to_string(r.num);
		return "(" + to_string(r.num) + ")/(" + to_string(r.den) + ")";
	}
	}
	return "?";
}

FieldElem parse_field_elem(std::string_view text, const FieldDesc &field)
{
	ExprRing<FieldElem> ring;
	if (field.kind == FieldKind::QRho)
		ring.names = {"rho"};
	if (field.kind == FieldKind::FpT)
		ring.names = {"t"};
	ring.variable = [&](const std::string &name) {
		return name == "rho" ? FieldElem::rho() : FieldElem::t(field.p);
	};
	ring.constant = [&](const Int &c) { return FieldElem(field, Rat(c)); };
	ring.divide = [&](const FieldElem &a, const FieldElem &b) {
		if (b.is_zero())
			throw ParseError("expression '" + std::string(text) + "': division by zero");
		return a / b;
	};
	ring.power = [&](const FieldElem &b, std::int64_t e) {
		if (e < 0 && b.is_zero())
			throw ParseError("expression '" + std::string(text) + "': zero to a negative power");
		return b.pow(e);
	};
	return parse_expression(text, ring);
}

// ---- Frobenius, torsion, constants -----------------------------------------------

FieldElem frobenius(const FieldElem &a, std::int64_t n)
{
	if (a.field().kind != FieldKind::FpT)
		throw DomainError("frobenius: field must be F_p(t)");
	if (n < 0)
		throw DomainError("frobenius: exponent must be nonnegative");
	const std::int64_t p = a.field().p;
	std::size_t q = 1;
	for (std::int64_t i = 0; i < n; ++i) {
		q *= static_cast<std::size_t>(p);
		if (q > (std::size_t{1} << 40))
			throw DomainError("frobenius: twist too large");
	}
	if (static_cast<std::size_t>(std::max(height(a), 1)) * q > 50'000'000)
		throw DomainError("frobenius: result degree too large");
	const auto &r = a.as_ratfunc();
	return FieldElem::ratfunc(r.num.substitute_power(q), r.den.substitute_power(q));
}

int height(const FieldElem &a)
{
	const auto &r = a.as_ratfunc();
	return std::max(r.num.degree(), r.den.degree());
}

bool is_constant(const FieldElem &a)
{
	if (a.field().kind != FieldKind::FpT)
		throw DomainError("is_constant: field must be F_p(t)");
	return height(a) <= 0;
}

namespace {

std::int64_t order_mod_p(std::int64_t c, std::int64_t p)
{
	std::int64_t order = p - 1;
	for (const auto &[q, e] : factor_integer(Int(p - 1)).factors) {
		const std::int64_t qq = q.get_si();
		while (order % qq == 0 && pow_mod_p(c, order / qq, p) == 1)
			order /= qq;
	}
	return order;
}

std::int64_t constant_value(const FieldElem &a) { return a.as_ratfunc().num.coeff(0); }

} // namespace

std::optional<std::int64_t> torsion_order(const FieldElem &a)
{
	if (a.is_zero())
		throw DomainError("torsion_order: zero has no multiplicative order");
	switch (a.field().kind) {
	case FieldKind::Q:
		if (a.as_rational() == 1)
			return 1;
		if (a.as_rational() == -1)
			return 2;
		return std::nullopt;
	case FieldKind::QRho:
		for (std::int64_t k : {1, 2, 3, 6})
			if (a.pow(k).is_one())
				return k;
		return std::nullopt;
	case FieldKind::FpT:
		if (!is_constant(a))
			return std::nullopt;
		return order_mod_p(constant_value(a), a.field().p);
	}
	return std::nullopt;
}

FieldElem torsion_generator(const FieldDesc &f)
{
	switch (f.kind) {
	case FieldKind::Q:
		return FieldElem(f, -1L);
	case FieldKind::QRho:
		return FieldElem::rho();
	case FieldKind::FpT:
		for (std::int64_t g = 1; g < f.p; ++g)
			if (order_mod_p(g, f.p) == f.p - 1)
				return FieldElem(f, Rat(g));
	}
	throw InternalError("torsion_generator: no generator found");
}

std::int64_t torsion_index(const FieldElem &zeta)
{
	const FieldDesc &f = zeta.field();
	const FieldElem g = torsion_generator(f);
	FieldElem cur = FieldElem::one(f);
	for (std::int64_t j = 0; j < f.roots_of_unity(); ++j) {
		if (cur == zeta)
			return j;
		cur = cur * g;
	}
	throw DomainError("torsion_index: element is not a root of unity");
}

// ---- factorization ---------------------------------------------------------------

namespace {

struct EInt {
	Int a, b;
	bool operator<(const EInt &o) const { return a != o.a ? a < o.a : b < o.b; }
	bool operator==(const EInt &o) const { return a == o.a && b == o.b; }
};

EInt emul(const EInt &x, const EInt &y) { return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b}; }
Int enorm(const EInt &x) { return x.a * x.a + x.a * x.b + x.b * x.b; }
EInt econj(const EInt &x) { return {x.a + x.b, -x.b}; }

std::optional<EInt> ediv(const EInt &x, const EInt &y)
{
	const EInt num = emul(x, econj(y));
	const Int n = enorm(y);
	if (num.a % n != 0 || num.b % n != 0)
		return std::nullopt;
	return EInt{num.a / n, num.b / n};
}

const EInt kRho{0, 1};

Int mod3(const Int &v) { return ((v % 3) + 3) % 3; }

EInt primary_associate(const EInt &pi)
{
	EInt u = pi;
	std::optional<EInt> found;
	for (int j = 0; j < 6; ++j) {
		if (mod3(u.a) == 2 && mod3(u.b) == 0) {
			if (found)
				throw InternalError("primary_associate: not unique");
			found = u;
		}
		u = emul(u, kRho);
	}
	if (!found)
		throw InternalError("primary_associate: none found");
	return *found;
}

/// The Eisenstein primes above a rational prime q (one or two, canonical).
std::vector<EInt> primes_above(const Int &q)
{
	if (q == 3)
		return {EInt{2, -1}};
	if (mod3(q) == 2)
		return {EInt{q, 0}};
	// a² + ab + b² = q  ⇔  (2a + b)² + 3b² = 4q
	for (Int b = 1; 3 * b * b <= 4 * q; ++b) {
		const Int rest = 4 * q - 3 * b * b;
		if (!mpz_perfect_square_p(rest.get_mpz_t()))
			continue;
		const Int s = sqrt(rest);
		if ((s - b) % 2 != 0)
			continue;
		const EInt pi = primary_associate(EInt{(s - b) / 2, b});
		const EInt pibar = primary_associate(econj(pi));
		return pi < pibar ? std::vector<EInt>{pi, pibar} : std::vector<EInt>{pibar, pi};
	}
	throw InternalError("primes_above: no element of norm q");
}

void factor_eint(EInt x, std::map<EInt, long> &exps, long sign, EInt &unit)
{
	for (const auto &[q, e] : factor_integer(enorm(x)).factors)
		for (const EInt &pi : primes_above(q))
			while (auto y = ediv(x, pi)) {
				x = *y;
				exps[pi] += sign;
			}
	if (enorm(x) != 1)
		throw InternalError("factor_eint: leftover non-unit");
	unit = sign > 0 ? emul(unit, x) : *ediv(unit, x);
}

} // namespace

ExponentVector factorize(const FieldElem &a)
{
	if (a.is_zero())
		throw DomainError("factorize: zero has no factorization");
	const FieldDesc &f = a.field();
	ExponentVector out;
	switch (f.kind) {
	case FieldKind::Q: {
		const Rat &q = a.as_rational();
		out.torsion = FieldElem(f, Rat(sgn(q)));
		for (const auto &[pr, e] : factor_integer(abs(q.get_num())).factors)
			out.factors[FieldElem(f, Rat(pr))] += e;
		for (const auto &[pr, e] : factor_integer(q.get_den()).factors)
			out.factors[FieldElem(f, Rat(pr))] -= e;
		break;
	}
	case FieldKind::QRho: {
		const auto &[x, y] = a.as_qrho();
		Int d;
		mpz_lcm(d.get_mpz_t(), x.get_den().get_mpz_t(), y.get_den().get_mpz_t());
		const EInt alpha{Int(x * d), Int(y * d)};
		std::map<EInt, long> exps;
		EInt unit{1, 0};
		factor_eint(alpha, exps, +1, unit);
		factor_eint(EInt{d, 0}, exps, -1, unit);
		out.torsion = FieldElem::qrho(Rat(unit.a), Rat(unit.b));
		for (const auto &[pi, e] : exps)
			if (e != 0)
				out.factors[FieldElem::qrho(Rat(pi.a), Rat(pi.b))] = e;
		break;
	}
	case FieldKind::FpT: {
		const auto &r = a.as_ratfunc();
		const std::int64_t p = f.p;
		const FpFactorization fn = factor(r.num), fd = factor(r.den);
		out.torsion = FieldElem(f, Rat(fn.unit));
		const FpPoly one = FpPoly::constant(p, 1);
		for (const auto &[g, e] : fn.factors)
			out.factors[FieldElem::ratfunc(g, one)] += e;
		for (const auto &[g, e] : fd.factors)
			out.factors[FieldElem::ratfunc(g, one)] -= e;
		break;
	}
	}
	return out;
}

FieldElem ExponentVector::recompose() const
{
	FieldElem out = torsion;
	for (const auto &[pi, e] : factors) {
		if (!e.fits_slong_p())
			throw DomainError("recompose: exponent too large");
		out = out * pi.pow(e.get_si());
	}
	return out;
}

} // namespace sgt
