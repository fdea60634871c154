#include "sgt/crossratio.h"

#include "sgt/exactalg.h"
#include "sgt/multlattice.h"

#include <algorithm>
#include <set>

namespace sgt {

namespace {

FieldElem bracket(const ProjPoint &x, const ProjPoint &y) { return x.a() * y.b() - y.a() * x.b(); }

void same_field(const FieldDesc &a, const FieldDesc &b, const char *who)
{
	if (!(a == b))
		throw MismatchError(std::string(who) + ": field mismatch");
}

void require_fpt(const FieldDesc &f, const char *who)
{
	if (f.kind != FieldKind::FpT)
		throw DomainError(std::string(who) + ": requires a field of the form F_p(t)");
}

Int pow_int(std::int64_t p, std::int64_t e)
{
	Int r;
	mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
	return r;
}

Rat pow_rat(std::int64_t p, std::int64_t e)
{
	return e >= 0 ? Rat(pow_int(p, e)) : Rat(1) / Rat(pow_int(p, -e));
}

} // namespace

ProjPoint::ProjPoint(const FieldElem &a, const FieldElem &b) : a_(a), b_(b)
{
	same_field(a.field(), b.field(), "ProjPoint");
	if (b.is_zero()) {
		if (a.is_zero())
			throw DomainError("ProjPoint: [0 : 0] is not a point");
		a_ = FieldElem::one(a.field());
		return;
	}
	a_ = a / b;
	b_ = FieldElem::one(a.field());
}

ProjPoint ProjPoint::infinity(const FieldDesc &f) { return ProjPoint(FieldElem::one(f), FieldElem::zero(f)); }

const FieldElem &ProjPoint::value() const
{
	if (is_infinity())
		throw DomainError("ProjPoint: infinity has no affine coordinate");
	return a_;
}

bool ProjPoint::operator<(const ProjPoint &rhs) const
{
	if (is_infinity() != rhs.is_infinity())
		return rhs.is_infinity();
	return a_ < rhs.a_;
}

std::string to_string(const ProjPoint &x) { return x.is_infinity() ? "inf" : to_string(x.a()); }

ProjPoint parse_proj_point(const std::string &text, const FieldDesc &f)
{
	if (text == "inf" || text == "∞")
		return ProjPoint::infinity(f);
	return ProjPoint(parse_field_elem(text, f));
}

MobiusMap::MobiusMap(const FieldElem &m00, const FieldElem &m01, const FieldElem &m10, const FieldElem &m11)
    : m_{m00, m01, m10, m11}
{
	for (const auto &x : m_)
		same_field(x.field(), m00.field(), "MobiusMap");
	if ((m00 * m11 - m01 * m10).is_zero())
		throw DomainError("MobiusMap: singular matrix");
	const FieldElem lead = *std::find_if(m_.begin(), m_.end(), [](const FieldElem &x) { return !x.is_zero(); });
	if (!lead.is_one()) {
		const FieldElem inv = lead.inverse();
		for (auto &x : m_)
			x = x * inv;
	}
}

MobiusMap MobiusMap::identity(const FieldDesc &f)
{
	return MobiusMap(FieldElem::one(f), FieldElem::zero(f), FieldElem::zero(f), FieldElem::one(f));
}

ProjPoint MobiusMap::apply(const ProjPoint &x) const
{
	same_field(field(), x.field(), "mobius_apply");
	return ProjPoint(m_[0] * x.a() + m_[1] * x.b(), m_[2] * x.a() + m_[3] * x.b());
}

MobiusMap MobiusMap::compose(const MobiusMap &g) const
{
	same_field(field(), g.field(), "MobiusMap::compose");
	const auto &f = *this;
	return MobiusMap(f(0, 0) * g(0, 0) + f(0, 1) * g(1, 0), f(0, 0) * g(0, 1) + f(0, 1) * g(1, 1),
	                 f(1, 0) * g(0, 0) + f(1, 1) * g(1, 0), f(1, 0) * g(0, 1) + f(1, 1) * g(1, 1));
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(m_[3], -m_[1], -m_[2], m_[0]); }

MobiusMap MobiusMap::twisted(std::int64_t n) const
{
	require_fpt(field(), "MobiusMap::twisted");
	return MobiusMap(frobenius(m_[0], n), frobenius(m_[1], n), frobenius(m_[2], n), frobenius(m_[3], n));
}

std::string to_string(const MobiusMap &f)
{
	return "[[" + to_string(f(0, 0)) + ", " + to_string(f(0, 1)) + "], [" + to_string(f(1, 0)) + ", " +
	       to_string(f(1, 1)) + "]]";
}

CuspSet::CuspSet(FieldDesc f, std::vector<ProjPoint> pts) : field(f), points(std::move(pts))
{
	if (points.size() < 3)
		throw DomainError("CuspSet: at least three points are required");
	std::set<ProjPoint> seen;
	for (const auto &x : points) {
		same_field(x.field(), field, "CuspSet");
		if (!seen.insert(x).second)
			throw DomainError("CuspSet: repeated point " + to_string(x));
	}
}

ProjPoint mobius_apply(const MobiusMap &f, const ProjPoint &x) { return f.apply(x); }

FieldElem cross_ratio(const ProjPoint &x1, const ProjPoint &x2, const ProjPoint &x3, const ProjPoint &x4)
{
	const std::array<const ProjPoint *, 4> xs{&x1, &x2, &x3, &x4};
	for (std::size_t i = 0; i < 4; ++i) {
		same_field(xs[i]->field(), x1.field(), "cross_ratio");
		for (std::size_t j = i + 1; j < 4; ++j)
			if (*xs[i] == *xs[j])
				throw DomainError("cross_ratio: coincident points");
	}
	return bracket(x4, x1) * bracket(x3, x2) / (bracket(x4, x2) * bracket(x3, x1));
}

namespace {

/// Matrix of x ↦ cross_ratio(p1, p2, p3, x).
MobiusMap normalizer(const std::array<ProjPoint, 3> &p)
{
	if (p[0] == p[1] || p[0] == p[2] || p[1] == p[2])
		throw DomainError("mobius_from_triples: degenerate triple");
	const FieldElem s = bracket(p[2], p[1]), u = bracket(p[2], p[0]);
	return MobiusMap(s * p[0].b(), -(s * p[0].a()), u * p[1].b(), -(u * p[1].a()));
}

} // namespace

MobiusMap mobius_from_triples(const std::array<ProjPoint, 3> &p, const std::array<ProjPoint, 3> &q)
{
	for (std::size_t i = 0; i < 3; ++i) {
		same_field(p[i].field(), p[0].field(), "mobius_from_triples");
		same_field(q[i].field(), p[0].field(), "mobius_from_triples");
	}
	return normalizer(q).inverse().compose(normalizer(p));
}

ProjPoint twist_point(const ProjPoint &x, std::int64_t n)
{
	require_fpt(x.field(), "twist_point");
	if (n < 0)
		throw DomainError("twist_point: the exponent must be nonnegative");
	if (x.is_infinity())
		return x;
	return ProjPoint(frobenius(x.value(), n));
}

CuspSet twist_set(const CuspSet &E, std::int64_t n)
{
	require_fpt(E.field, "twist_set");
	std::vector<ProjPoint> out;
	out.reserve(E.size());
	for (const auto &x : E.points)
		out.push_back(twist_point(x, n));
	return CuspSet(E.field, std::move(out));
}

std::string to_string(Char0Verdict v)
{
	switch (v) {
	case Char0Verdict::Equal:
		return "Equal";
	case Char0Verdict::RhoPair:
		return "RhoPair";
	case Char0Verdict::HypothesisFails:
		return "HypothesisFails";
	}
	return "?";
}

Char0Verdict decide_lambda_char0(const FieldElem &l1, const FieldElem &l2)
{
	same_field(l1.field(), l2.field(), "decide_lambda_char0");
	if (!l1.field().char_zero())
		throw DomainError("decide_lambda_char0: requires characteristic zero");
	for (const auto *l : {&l1, &l2})
		if (l->is_zero() || l->is_one())
			throw DomainError("decide_lambda_char0: lambda must avoid 0 and 1");
	const FieldElem one = FieldElem::one(l1.field());
	if (!cyclic_equal(l1, l2) || !cyclic_equal(one - l1, one - l2))
		return Char0Verdict::HypothesisFails;
	if (l1 == l2)
		return Char0Verdict::Equal;
	if (l1.field().kind == FieldKind::QRho) {
		const FieldElem r = FieldElem::rho(), ri = r.inverse();
		if ((l1 == r && l2 == ri) || (l1 == ri && l2 == r))
			return Char0Verdict::RhoPair;
	}
	throw InternalError("decide_lambda_char0: subgroup hypotheses hold for " + to_string(l1) + " and " + to_string(l2) +
	                    " but neither conclusion does");
}

std::optional<std::int64_t> decide_lambda_charp(const FieldElem &l1, const FieldElem &l2)
{
	same_field(l1.field(), l2.field(), "decide_lambda_charp");
	require_fpt(l1.field(), "decide_lambda_charp");
	if (is_constant(l1))
		throw DomainError("decide_lambda_charp: lambda_1 must be non-constant");
	if (l2.is_zero() || l2.is_one())
		throw DomainError("decide_lambda_charp: lambda_2 must avoid 0 and 1");
	const std::int64_t p = l1.field().p;
	const FieldElem one = FieldElem::one(l1.field());
	const PPowerResult u = solve_p_power(l1, l2, p);
	if (u.kind != PPowerResult::Kind::Unique)
		return std::nullopt;
	const PPowerResult v = solve_p_power(one - l1, one - l2, p);
	if (v.kind != PPowerResult::Kind::Unique)
		return std::nullopt;
	for (std::int64_t n : {u.sigma, v.sigma}) {
		if (n >= 0 ? l2 == frobenius(l1, n) : l1 == frobenius(l2, -n))
			return n;
	}
	throw InternalError("decide_lambda_charp: subgroup hypotheses hold for " + to_string(l1) + " and " +
	                    to_string(l2) + " but no Frobenius power matches");
}

std::vector<std::pair<std::int64_t, std::int64_t>> lemma235_solve(std::int64_t p, std::int64_t X1, std::int64_t Y1,
                                                                  std::int64_t bound)
{
	if (p < 2 || !is_prime(Int(p)))
		throw DomainError("lemma235_solve: p must be prime");
	if (X1 == 0 || Y1 == 0)
		throw DomainError("lemma235_solve: X1 and Y1 must be nonzero");
	if (bound < 1)
		throw DomainError("lemma235_solve: bound must be positive");
	const Rat target = (pow_rat(p, X1) - 1) * (pow_rat(p, Y1) - 1);
	std::vector<Rat> table(static_cast<std::size_t>(2 * bound + 1));
	for (std::int64_t x = -bound; x <= bound; ++x)
		table[static_cast<std::size_t>(x + bound)] = pow_rat(p, x) - 1;
	std::vector<std::pair<std::int64_t, std::int64_t>> out;
	for (std::int64_t x = -bound; x <= bound; ++x)
		for (std::int64_t y = -bound; y <= bound; ++y)
			if (x != 0 && y != 0 &&
			    table[static_cast<std::size_t>(x + bound)] * table[static_cast<std::size_t>(y + bound)] == target)
				out.emplace_back(x, y);
	return out;
}

std::string to_string(Lemma236Case c)
{
	switch (c) {
	case Lemma236Case::CaseA:
		return "CaseA";
	case Lemma236Case::CaseB:
		return "CaseB";
	case Lemma236Case::HypothesisFails:
		return "HypothesisFails";
	}
	return "?";
}

namespace {

/// x^{p^A − 1} = y^{p^B − 1}, both sides raised to p^W so that exponents are integers.
bool twisted_power_equal(const FieldElem &x, std::int64_t A, const FieldElem &y, std::int64_t B)
{
	const std::int64_t p = x.field().p;
	const std::int64_t W = std::max<std::int64_t>({0, -A, -B});
	const Int base = pow_int(p, W);
	const Int e = pow_int(p, A + W) - base, f = pow_int(p, B + W) - base;
	const ExponentVector ex = factorize(x), ey = factorize(y);
	std::set<FieldElem> support;
	for (const auto &[pi, k] : ex.factors)
		support.insert(pi);
	for (const auto &[pi, k] : ey.factors)
		support.insert(pi);
	for (const auto &pi : support) {
		const auto ix = ex.factors.find(pi), iy = ey.factors.find(pi);
		const Int vx = ix == ex.factors.end() ? Int(0) : ix->second;
		const Int vy = iy == ey.factors.end() ? Int(0) : iy->second;
		if (e * vx != f * vy)
			return false;
	}
	const std::int64_t w = x.field().roots_of_unity();
	Int diff = e * torsion_index(ex.torsion) - f * torsion_index(ey.torsion);
	diff %= w;
	return diff == 0;
}

} // namespace

Lemma236Case lemma236_decide(const FieldElem &l1, const FieldElem &l2, const Lemma236Exponents &e)
{
	same_field(l1.field(), l2.field(), "lemma236_decide");
	require_fpt(l1.field(), "lemma236_decide");
	if (is_constant(l1))
		throw DomainError("lemma236_decide: lambda_1 must be non-constant");
	if (l2.is_zero() || l2.is_one())
		throw DomainError("lemma236_decide: lambda_2 must avoid 0 and 1");
	if (e.A1 - e.A2 != e.B1 - e.B2 || e.B1 - e.B2 != e.C1 - e.C2)
		throw DomainError("lemma236_decide: A1-A2, B1-B2 and C1-C2 must agree");
	const FieldElem one = FieldElem::one(l1.field());
	const FieldElem m1 = l1 - one, m2 = l2 - one;
	const bool holds = twisted_power_equal(l1, e.A1, l2, e.A2) && twisted_power_equal(m1, e.B1, m2, e.B2) &&
	                   twisted_power_equal(l1 / m1, e.C1, l2 / m2, e.C2);
	if (!holds)
		return Lemma236Case::HypothesisFails;
	if (e.A1 == e.A2)
		return Lemma236Case::CaseA;
	if (e.A1 == e.B1 && e.B1 == e.C1 && e.A2 == e.B2 && e.B2 == e.C2)
		return Lemma236Case::CaseB;
	throw InternalError("lemma236_decide: the three equalities hold but neither case does");
}

bool condition_star_check(const CuspSet &E)
{
	require_fpt(E.field, "condition_star_check");
	const auto &P = E.points;
	const std::size_t n = P.size();
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			for (std::size_t k = j + 1; k < n; ++k)
				for (std::size_t l = k + 1; l < n; ++l)
					if (is_constant(cross_ratio(P[i], P[j], P[k], P[l])))
						return false;
	return true;
}

} // namespace sgt
