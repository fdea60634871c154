#include "sgt/reconstruct.h"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace sgt {

using json = nlohmann::ordered_json;

Scenario::Scenario(CuspSet e1, CuspSet e2, std::vector<std::size_t> p, std::optional<ScenarioSecret> sec)
    : field(e1.field), E1(std::move(e1)), E2(std::move(e2)), phi(std::move(p)), secret(std::move(sec))
{
	if (!(E2.field == field))
		throw MismatchError("Scenario: E1 and E2 live over different fields");
	if (E1.size() != E2.size() || phi.size() != E1.size())
		throw DomainError("Scenario: E1, E2 and phi must have the same size");
	std::vector<bool> hit(phi.size(), false);
	for (auto j : phi) {
		if (j >= phi.size() || hit[j])
			throw DomainError("Scenario: phi is not a permutation");
		hit[j] = true;
	}
	if (!secret)
		return;
	if (!(secret->g.field() == field))
		throw MismatchError("Scenario: secret map over another field");
	if (secret->twist < 0 || (field.char_zero() && secret->twist != 0))
		throw DomainError("Scenario: invalid secret twist");
	for (std::size_t i = 0; i < phi.size(); ++i) {
		const ProjPoint x = field.char_zero() ? E1.points[i] : twist_point(E1.points[i], secret->twist);
		if (!(secret->g.apply(x) == E2.points[phi[i]]))
			throw DomainError("Scenario: secret does not carry E1 onto E2 along phi");
	}
}

Scenario scenario_from_secret(const CuspSet &E1, const MobiusMap &g, std::int64_t twist, std::mt19937_64 *shuffle)
{
	if (E1.field.char_zero() && twist != 0)
		throw DomainError("scenario_from_secret: twists exist only in positive characteristic");
	if (twist < 0)
		throw DomainError("scenario_from_secret: the twist must be nonnegative");
	const std::size_t n = E1.size();
	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), 0);
	if (shuffle)
		std::shuffle(order.begin(), order.end(), *shuffle);
	std::vector<ProjPoint> image(n, E1.points[0]);
	std::vector<std::size_t> phi(n);
	for (std::size_t i = 0; i < n; ++i) {
		const ProjPoint x = E1.field.char_zero() ? E1.points[i] : twist_point(E1.points[i], twist);
		image[order[i]] = g.apply(x);
		phi[i] = order[i];
	}
	return Scenario(E1, CuspSet(E1.field, std::move(image)), std::move(phi), ScenarioSecret{g, twist});
}

namespace {

long uniform(std::mt19937_64 &rng, long lo, long hi)
{
	return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

FpPoly random_poly(std::mt19937_64 &rng, std::int64_t p, int deg)
{
	std::vector<std::int64_t> c(static_cast<std::size_t>(deg) + 1);
	for (auto &x : c)
		x = uniform(rng, 0, p - 1);
	return FpPoly(p, std::move(c));
}

FieldElem random_elem(std::mt19937_64 &rng, const FieldDesc &f)
{
	switch (f.kind) {
	case FieldKind::Q:
		return FieldElem(f, Rat(uniform(rng, -30, 30), uniform(rng, 1, 12)));
	case FieldKind::QRho:
		return FieldElem::qrho(Rat(uniform(rng, -9, 9), uniform(rng, 1, 4)), Rat(uniform(rng, -9, 9), uniform(rng, 1, 4)));
	case FieldKind::FpT:
		break;
	}
	// low height keeps twisted images cheap
	const std::int64_t p = f.p;
	for (;;) {
		FpPoly num = random_poly(rng, p, static_cast<int>(uniform(rng, 1, 2)));
		FpPoly den = FpPoly::constant(p, 1);
		if (rng() % 4 == 0) {
			num = random_poly(rng, p, 1);
			den = random_poly(rng, p, 1);
		}
		if (num.is_zero() || den.is_zero())
			continue;
		return FieldElem::ratfunc(num, den);
	}
}

ProjPoint random_point(std::mt19937_64 &rng, const FieldDesc &f)
{
	if (f.kind == FieldKind::FpT && rng() % 6 == 0) {
		const long c = uniform(rng, 0, f.p);
		return c == f.p ? ProjPoint::infinity(f) : ProjPoint(FieldElem(f, c));
	}
	if (rng() % 10 == 0)
		return ProjPoint::infinity(f);
	return ProjPoint(random_elem(rng, f));
}

MobiusMap random_mobius(std::mt19937_64 &rng, const FieldDesc &f)
{
	auto entry = [&] {
		if (f.kind != FieldKind::FpT)
			return random_elem(rng, f);
		return FieldElem::ratfunc(random_poly(rng, f.p, static_cast<int>(uniform(rng, 0, 1))), FpPoly::constant(f.p, 1));
	};
	for (;;) {
		const FieldElem a = entry(), b = entry(), c = entry(), d = entry();
		if (!(a * d - b * c).is_zero())
			return MobiusMap(a, b, c, d);
	}
}

bool has_nonconstant(const CuspSet &E)
{
	return std::any_of(E.points.begin(), E.points.end(),
	                   [](const ProjPoint &x) { return !x.is_infinity() && !is_constant(x.value()); });
}

std::array<ProjPoint, 3> triple(const std::vector<ProjPoint> &pts, const std::vector<std::size_t> &idx)
{
	return {pts[idx[0]], pts[idx[1]], pts[idx[2]]};
}

std::vector<ProjPoint> phi_images(const Scenario &s)
{
	std::vector<ProjPoint> out;
	out.reserve(s.phi.size());
	for (auto j : s.phi)
		out.push_back(s.E2.points[j]);
	return out;
}

/// f(twist(E1[i], w1)) = twist(E2[phi[i]], w2) for every i.
bool dagger_holds(const Scenario &s, std::int64_t w1, std::int64_t w2, const MobiusMap &f)
{
	for (std::size_t i = 0; i < s.phi.size(); ++i) {
		const ProjPoint &x = s.E1.points[i], &y = s.E2.points[s.phi[i]];
		const ProjPoint x1 = w1 == 0 ? x : twist_point(x, w1);
		const ProjPoint y2 = w2 == 0 ? y : twist_point(y, w2);
		if (!(f.apply(x1) == y2))
			return false;
	}
	return true;
}

std::int64_t exact_log(std::int64_t q, std::int64_t p)
{
	std::int64_t s = 0;
	while (q % p == 0) {
		q /= p;
		++s;
	}
	return q == 1 ? s : -1;
}

const std::vector<std::size_t> kBase{0, 1, 2};

} // namespace

Scenario generate_scenario(const FieldDesc &field, std::size_t size, std::uint64_t seed, std::int64_t twist)
{
	if (size < 3)
		throw DomainError("generate_scenario: size must be at least 3");
	if (twist < 0 || (field.char_zero() && twist != 0))
		throw DomainError("generate_scenario: the twist must be 0 in characteristic 0 and nonnegative otherwise");
	std::mt19937_64 rng(seed);
	for (int attempt = 0; attempt < 2000; ++attempt) {
		std::vector<ProjPoint> pts;
		for (int guard = 0; pts.size() < size && guard < 1000; ++guard) {
			const ProjPoint x = random_point(rng, field);
			if (std::find(pts.begin(), pts.end(), x) == pts.end())
				pts.push_back(x);
		}
		if (pts.size() < size)
			continue;
		const CuspSet E1(field, std::move(pts));
		if (!field.char_zero() && (!has_nonconstant(E1) || !condition_star_check(E1)))
			continue;
		return scenario_from_secret(E1, random_mobius(rng, field), twist, &rng);
	}
	throw DomainError("generate_scenario: resampling budget exhausted");
}

ReconstructionResult reconstruct_char0(const Scenario &s)
{
	if (!s.field.char_zero())
		throw DomainError("reconstruct_char0: requires characteristic zero");
	const auto Q = phi_images(s);
	const FieldDesc &k = s.field;
	const std::array<ProjPoint, 3> std3{ProjPoint(FieldElem::zero(k)), ProjPoint::infinity(k), ProjPoint(FieldElem::one(k))};
	const MobiusMap N1 = mobius_from_triples(triple(s.E1.points, kBase), std3);
	const MobiusMap N2 = mobius_from_triples(triple(Q, kBase), std3);
	bool ambiguous = false;
	for (std::size_t j = 3; j < s.E1.size(); ++j) {
		const FieldElem l1 = N1.apply(s.E1.points[j]).value(), l2 = N2.apply(Q[j]).value();
		switch (decide_lambda_char0(l1, l2)) {
		case Char0Verdict::Equal:
			break;
		case Char0Verdict::RhoPair:
			ambiguous = true;
			break;
		case Char0Verdict::HypothesisFails:
			throw ReconstructionError("no isomorphism compatible with phi: cross-ratios at point " + std::to_string(j) +
			                          " generate different subgroups");
		}
	}
	ReconstructionResult r{0, 0, N2.inverse().compose(N1), ambiguous};
	if (!ambiguous && !dagger_holds(s, 0, 0, r.f))
		throw InternalError("reconstruct_char0: assembled map does not respect phi");
	return r;
}

ReconstructionResult reconstruct_charp(const Scenario &s)
{
	if (s.field.kind != FieldKind::FpT)
		throw DomainError("reconstruct_charp: requires a field F_p(t)");
	if (!condition_star_check(s.E1))
		throw DomainError("reconstruct_charp: E1 violates condition (*)");
	const auto Q = phi_images(s);
	if (s.E1.size() == 3)
		return {0, 0, mobius_from_triples(triple(s.E1.points, kBase), triple(Q, kBase)), false};
	const FieldDesc &k = s.field;
	const FieldElem one = FieldElem::one(k);
	const std::array<ProjPoint, 3> std3{ProjPoint(FieldElem::zero(k)), ProjPoint::infinity(k), ProjPoint(one)};
	const MobiusMap N1 = mobius_from_triples(triple(s.E1.points, kBase), std3);
	const MobiusMap N2 = mobius_from_triples(triple(Q, kBase), std3);

	auto decide = [&](const FieldElem &a, const FieldElem &b, const std::string &what) {
		const auto n = decide_lambda_charp(a, b);
		if (!n)
			throw ReconstructionError("no isomorphism compatible with phi: " + what +
			                          " is not a Frobenius power up to inversion");
		return *n;
	};

	// Exponent of each T_x = {0, ∞, 1, x}
	std::vector<FieldElem> lam1, lam2;
	std::vector<std::int64_t> nx;
	for (std::size_t j = 3; j < s.E1.size(); ++j) {
		lam1.push_back(N1.apply(s.E1.points[j]).value());
		lam2.push_back(N2.apply(Q[j]).value());
		nx.push_back(decide(lam1.back(), lam2.back(), "cross-ratio at point " + std::to_string(j)));
	}

	// Consistency over each T_x ∪ T_y
	for (std::size_t a = 0; a < nx.size(); ++a)
		for (std::size_t b = a + 1; b < nx.size(); ++b) {
			const FieldElem &l1 = lam1[a], &l2 = lam2[a], &m1 = lam1[b], &m2 = lam2[b];
			const std::string tag = "pair (" + std::to_string(a + 3) + ", " + std::to_string(b + 3) + ")";
			const std::int64_t sigma = decide(m1 / l1, m2 / l2, "ratio for " + tag);
			const std::int64_t tau = decide((m1 - one) / (l1 - one), (m2 - one) / (l2 - one), "shifted ratio for " + tag);
			const std::int64_t zeta = decide(m1 * (l1 - one) / ((m1 - one) * l1), m2 * (l2 - one) / ((m2 - one) * l2),
			                                 "mixed ratio for " + tag);
			const std::int64_t nl = nx[a], nm = nx[b];
			const Lemma236Case c =
			    lemma236_decide(l1, m1, {nl - sigma, nm - sigma, nl - tau, nm - tau, nl - zeta, nm - zeta});
			if (c == Lemma236Case::HypothesisFails)
				throw InternalError("reconstruct_charp: derived power identities fail for " + tag);
			if (nl != nm)
				throw ReconstructionError("no isomorphism compatible with phi: twist exponents " + std::to_string(nl) +
				                          " and " + std::to_string(nm) + " disagree on " + tag);
		}

	// Steps 3 and 4: a common twist, so every f_x is the map fixed by the base triple
	const std::int64_t n = nx.front();
	for (auto m : nx)
		if (m != n)
			throw ReconstructionError("no isomorphism compatible with phi: twist exponents disagree");
	const std::int64_t w1 = std::max<std::int64_t>(n, 0), w2 = std::max<std::int64_t>(-n, 0);
	const MobiusMap f = N2.twisted(w2).inverse().compose(N1.twisted(w1));
	if (!dagger_holds(s, w1, w2, f))
		throw InternalError("reconstruct_charp: glued map does not respect phi");
	return {w1, w2, f, false};
}

ReconstructionResult reconstruct(const Scenario &s)
{
	return s.field.char_zero() ? reconstruct_char0(s) : reconstruct_charp(s);
}

bool verify_reconstruction(const Scenario &s, const ReconstructionResult &r)
{
	if (!(r.f.field() == s.field) || r.w1 < 0 || r.w2 < 0)
		return false;
	if (s.field.char_zero() && (r.w1 != 0 || r.w2 != 0))
		return false;
	return dagger_holds(s, r.w1, r.w2, r.f);
}

bool phi_is_induced(const Scenario &s)
{
	const auto Q = phi_images(s);
	if (s.field.char_zero() || s.E1.size() == 3)
		return dagger_holds(s, 0, 0, mobius_from_triples(triple(s.E1.points, kBase), triple(Q, kBase)));
	const FieldElem l = cross_ratio(s.E1.points[0], s.E1.points[1], s.E1.points[2], s.E1.points[3]);
	const FieldElem m = cross_ratio(Q[0], Q[1], Q[2], Q[3]);
	if (is_constant(l))
		throw DomainError("phi_is_induced: the first four points of E1 have a constant cross-ratio");
	const std::int64_t hl = height(l), hm = height(m);
	const std::int64_t hi = std::max(hl, hm), lo = std::min(hl, hm);
	if (lo == 0 || hi % lo != 0)
		return false;
	const std::int64_t e = exact_log(hi / lo, s.field.p);
	if (e < 0)
		return false;
	const std::int64_t w1 = hm >= hl ? e : 0, w2 = hm >= hl ? 0 : e;
	std::array<ProjPoint, 3> p = triple(s.E1.points, kBase), q = triple(Q, kBase);
	for (auto &x : p)
		x = twist_point(x, w1);
	for (auto &y : q)
		y = twist_point(y, w2);
	return dagger_holds(s, w1, w2, mobius_from_triples(p, q));
}

Scenario corrupt_phi(const Scenario &s, std::mt19937_64 &rng)
{
	if (s.E1.size() < 4)
		throw DomainError("corrupt_phi: every bijection of three points is induced");
	std::vector<std::size_t> phi = s.phi;
	for (int attempt = 0; attempt < 1000; ++attempt) {
		std::shuffle(phi.begin(), phi.end(), rng);
		Scenario out(s.E1, s.E2, phi);
		if (!phi_is_induced(out))
			return out;
	}
	throw DomainError("corrupt_phi: every tried bijection is induced");
}

// ---- JSON ------------------------------------------------------------------

namespace {

json field_json(const FieldDesc &f)
{
	json j;
	j["kind"] = f.kind == FieldKind::Q ? "Q" : f.kind == FieldKind::QRho ? "QRho" : "FpT";
	if (f.kind == FieldKind::FpT)
		j["p"] = f.p;
	return j;
}

json point_json(const ProjPoint &x)
{
	if (x.is_infinity())
		return "inf";
	const FieldElem &v = x.value();
	switch (v.field().kind) {
	case FieldKind::Q:
		return {{"num", v.as_rational().get_num().get_str()}, {"den", v.as_rational().get_den().get_str()}};
	case FieldKind::QRho:
		return {{"num", to_string(v)}, {"den", "1"}};
	case FieldKind::FpT:
		break;
	}
	return {{"num", to_string(v.as_ratfunc().num)}, {"den", to_string(v.as_ratfunc().den)}};
}

json mobius_json(const MobiusMap &f)
{
	return json::array({json::array({to_string(f(0, 0)), to_string(f(0, 1))}),
	                    json::array({to_string(f(1, 0)), to_string(f(1, 1))})});
}

[[noreturn]] void fail(const std::string &where, const std::string &what)
{
	throw ParseError(where + ": " + what);
}

const json &member(const json &j, const char *key, const std::string &where)
{
	if (!j.is_object() || !j.contains(key))
		fail(where, std::string("missing field \"") + key + "\"");
	return j.at(key);
}

std::string as_text(const json &j, const std::string &where)
{
	if (j.is_string())
		return j.get<std::string>();
	if (j.is_number_integer())
		return std::to_string(j.get<long long>());
	fail(where, "expected a string");
}

FieldElem elem_from(const json &j, const FieldDesc &f, const std::string &where)
{
	try {
		return parse_field_elem(as_text(j, where), f);
	} catch (const ParseError &e) {
		fail(where, e.what());
	}
}

FieldDesc field_from(const json &j, const std::string &where)
{
	try {
		if (j.is_string())
			return parse_field_desc(j.get<std::string>());
		const std::string kind = as_text(member(j, "kind", where), where + ".kind");
		if (kind == "FpT") {
			const json &p = member(j, "p", where);
			if (!p.is_number_integer())
				fail(where + ".p", "expected an integer");
			return parse_field_desc("FpT:" + std::to_string(p.get<long long>()));
		}
		return parse_field_desc(kind);
	} catch (const ParseError &e) {
		if (std::string(e.what()).rfind(where, 0) == 0)
			throw;
		fail(where, e.what());
	} catch (const DomainError &e) {
		fail(where, e.what());
	}
}

ProjPoint point_from(const json &j, const FieldDesc &f, const std::string &where)
{
	if (j.is_string()) {
		if (j.get<std::string>() == "inf")
			return ProjPoint::infinity(f);
		return ProjPoint(elem_from(j, f, where));
	}
	const FieldElem num = elem_from(member(j, "num", where), f, where + ".num");
	const FieldElem den = elem_from(member(j, "den", where), f, where + ".den");
	if (den.is_zero())
		fail(where + ".den", "zero denominator");
	return ProjPoint(num / den);
}

CuspSet cusps_from(const json &j, const FieldDesc &f, const std::string &where)
{
	if (!j.is_array())
		fail(where, "expected an array of points");
	std::vector<ProjPoint> pts;
	for (std::size_t i = 0; i < j.size(); ++i)
		pts.push_back(point_from(j[i], f, where + "[" + std::to_string(i) + "]"));
	try {
		return CuspSet(f, std::move(pts));
	} catch (const DomainError &e) {
		fail(where, e.what());
	}
}

MobiusMap mobius_from(const json &j, const FieldDesc &f, const std::string &where)
{
	if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 || j[1].size() != 2)
		fail(where, "expected a 2x2 array");
	try {
		return MobiusMap(elem_from(j[0][0], f, where + "[0][0]"), elem_from(j[0][1], f, where + "[0][1]"),
		                 elem_from(j[1][0], f, where + "[1][0]"), elem_from(j[1][1], f, where + "[1][1]"));
	} catch (const DomainError &e) {
		fail(where, e.what());
	}
}

} // namespace

std::string scenario_to_json(const Scenario &s, int indent)
{
	json j;
	j["field"] = field_json(s.field);
	for (const char *key : {"E1", "E2"}) {
		json arr = json::array();
		for (const auto &x : (key[1] == '1' ? s.E1 : s.E2).points)
			arr.push_back(point_json(x));
		j[key] = arr;
	}
	j["phi"] = s.phi;
	if (s.secret)
		j["secret"] = {{"g", mobius_json(s.secret->g)}, {"twist", s.secret->twist}};
	else
		j["secret"] = nullptr;
	return j.dump(indent);
}

Scenario scenario_from_json(const std::string &text)
{
	json j;
	try {
		j = json::parse(text);
	} catch (const json::parse_error &e) {
		throw ParseError(std::string("scenario: malformed JSON: ") + e.what());
	}
	const FieldDesc f = field_from(member(j, "field", "scenario"), "scenario.field");
	CuspSet E1 = cusps_from(member(j, "E1", "scenario"), f, "scenario.E1");
	CuspSet E2 = cusps_from(member(j, "E2", "scenario"), f, "scenario.E2");
	const json &jp = member(j, "phi", "scenario");
	if (!jp.is_array())
		fail("scenario.phi", "expected an array of indices");
	std::vector<std::size_t> phi;
	for (std::size_t i = 0; i < jp.size(); ++i) {
		if (!jp[i].is_number_integer() || jp[i].get<long long>() < 0)
			fail("scenario.phi[" + std::to_string(i) + "]", "expected a nonnegative integer");
		phi.push_back(jp[i].get<std::size_t>());
	}
	std::optional<ScenarioSecret> secret;
	if (j.contains("secret") && !j["secret"].is_null()) {
		const json &js = j["secret"];
		const MobiusMap g = mobius_from(member(js, "g", "scenario.secret"), f, "scenario.secret.g");
		const json &jt = member(js, "twist", "scenario.secret");
		if (!jt.is_number_integer())
			fail("scenario.secret.twist", "expected an integer");
		secret = ScenarioSecret{g, jt.get<std::int64_t>()};
	}
	try {
		return Scenario(std::move(E1), std::move(E2), std::move(phi), std::move(secret));
	} catch (const DomainError &e) {
		throw ParseError(std::string("scenario: ") + e.what());
	} catch (const MismatchError &e) {
		throw ParseError(std::string("scenario: ") + e.what());
	}
}

CuspSet cusp_set_from_json(const std::string &text, const std::optional<FieldDesc> &field)
{
	json j;
	try {
		j = json::parse(text);
	} catch (const json::parse_error &e) {
		throw ParseError(std::string("points: malformed JSON: ") + e.what());
	}
	if (j.is_array()) {
		if (!field)
			fail("points", "a bare point array needs a field");
		return cusps_from(j, *field, "points");
	}
	const FieldDesc f = field_from(member(j, "field", "points"), "points.field");
	if (field && !(*field == f))
		fail("points.field", "disagrees with the requested field");
	return cusps_from(member(j, "points", "points"), f, "points.points");
}

std::string result_to_json(const ReconstructionResult &r, int indent)
{
	json j;
	j["w1"] = r.w1;
	j["w2"] = r.w2;
	j["f"] = mobius_json(r.f);
	if (r.rho_ambiguity)
		j["ambiguity"] = "RhoPair";
	else
		j["ambiguity"] = nullptr;
	return j.dump(indent);
}

} // namespace sgt
