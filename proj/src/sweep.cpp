#include "sgt/sweep.h"

#include "sgt/crossratio.h"
#include "sgt/freegroup.h"
#include "sgt/groupring.h"
#include "sgt/magnusfox.h"
#include "sgt/reconstruct.h"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace sgt {

namespace {

using Params = std::map<std::string, std::int64_t>;

struct Tally {
	SweepSummary s;
	void record(bool ok, const std::function<std::string()> &describe)
	{
		++s.cases;
		if (ok)
			return;
		++s.failures;
		if (!s.first_counterexample)
			s.first_counterexample = describe();
	}
};

Rat pow_rat(std::int64_t p, std::int64_t e)
{
	Int r;
	mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
	return e >= 0 ? Rat(r) : Rat(1) / Rat(r);
}

std::vector<std::int64_t> primes_or(std::int64_t p, std::vector<std::int64_t> all)
{
	return p == 0 ? all : std::vector<std::int64_t>{p};
}

void sweep_lemma235(const Params &P, Tally &t)
{
	const std::int64_t b = P.at("bound");
	for (std::int64_t p : primes_or(P.at("p"), {2, 3, 5, 7})) {
		std::vector<Rat> v(static_cast<std::size_t>(2 * b + 1));
		for (std::int64_t x = -b; x <= b; ++x)
			v[static_cast<std::size_t>(x + b)] = pow_rat(p, x) - 1;
		auto at = [&](std::int64_t x) { return v[static_cast<std::size_t>(x + b)]; };
		for (std::int64_t x1 = -b; x1 <= b; ++x1)
			for (std::int64_t y1 = -b; y1 <= b; ++y1)
				for (std::int64_t x2 = -b; x2 <= b; ++x2)
					for (std::int64_t y2 = -b; y2 <= b; ++y2) {
						if (x1 == 0 || y1 == 0 || x2 == 0 || y2 == 0)
							continue;
						const bool eq = at(x1) * at(y1) == at(x2) * at(y2);
						const bool same = (x1 == x2 && y1 == y2) || (x1 == y2 && y1 == x2);
						t.record(eq == same, [&] {
							std::ostringstream os;
							os << "p=" << p << " (X1,Y1)=(" << x1 << "," << y1 << ") (X2,Y2)=(" << x2 << "," << y2 << ")";
							return os.str();
						});
					}
	}
}

void sweep_limit_regularity(const Params &P, Tally &t)
{
	for (std::int64_t n = 1; n <= P.at("n"); ++n)
		for (std::int64_t M = 2; M <= P.at("M"); ++M)
			for (std::int64_t Mp = n; Mp <= P.at("Mp"); Mp += n)
				for (std::int64_t k = 1; k <= P.at("k"); ++k)
					t.record(limit_regularity_check(n, M, Mp, k), [&] {
						std::ostringstream os;
						os << "n=" << n << " M=" << M << " M'=" << Mp << " k=" << k;
						return os.str();
					});
}

void sweep_biprime(const Params &P, Tally &t)
{
	for (std::int64_t N = 2; N <= P.at("N"); ++N) {
		const auto g = split_exponent(N);
		if (!g)
			continue;
		const auto ann = annihilator_basis(GroupRingElem::power_minus_one(AbelianShape::cyclic(N), N, 0, *g));
		const bool nonzero = std::any_of(ann.begin(), ann.end(), [](const GroupRingElem &y) { return !y.is_zero(); });
		t.record(nonzero, [&] { return "N=" + std::to_string(N) + " gamma=" + std::to_string(*g); });
	}
}

void sweep_fox(const Params &P, Tally &t)
{
	std::mt19937_64 rng(static_cast<std::uint64_t>(P.at("seed")));
	const int max_rank = static_cast<int>(P.at("rank"));
	const int max_len = static_cast<int>(P.at("length"));
	for (std::int64_t i = 0; i < P.at("words"); ++i) {
		const int rank = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_rank));
		std::vector<Letter> raw;
		const int len = static_cast<int>(rng() % static_cast<std::uint64_t>(max_len + 1));
		for (int j = 0; j < len; ++j)
			raw.push_back({1 + static_cast<int>(rng() % static_cast<std::uint64_t>(rank)), (rng() & 1) ? 1 : -1});
		const Word w = reduce(raw);
		const auto ab = abelianize(w, rank);
		const bool trivial = std::all_of(ab.begin(), ab.end(), [](std::int64_t v) { return v == 0; });
		const bool ok = fundamental_identity_check(w, rank) && bl_kernel_check(fox_gradient(w, rank)) == trivial;
		t.record(ok, [&] { return "word=" + to_string(w) + " rank=" + std::to_string(rank); });
	}
}

void sweep_presentation(const Params &P, Tally &t)
{
	for (int g = 0; g <= P.at("g"); ++g)
		for (int r = 0; r <= P.at("r"); ++r) {
			const CurvePresentation cp(g, r);
			const AbelianInvariants inv = presentation_abelianization(cp);
			bool ok = inv.torsion.empty() && inv.free_rank == (r == 0 ? 2 * g : 2 * g + r - 1);
			if (r >= 2)
				ok = ok && inertia_abelian_independence(cp) == (r >= 3);
			t.record(ok, [&] { return "g=" + std::to_string(g) + " r=" + std::to_string(r); });
		}
}

FieldDesc char0_field(const Params &P) { return P.at("rho") ? FieldDesc::eisenstein() : FieldDesc::rationals(); }

void sweep_roundtrip(const FieldDesc &f, const Params &P, Tally &t)
{
	const auto base = static_cast<std::uint64_t>(P.at("seed"));
	for (std::int64_t i = 0; i < P.at("seeds"); ++i) {
		const std::size_t size = 3 + static_cast<std::size_t>(i % 5);
		const std::int64_t twist = f.char_zero() ? 0 : (i / 5) % 4;
		const std::uint64_t seed = base * 1000003ULL + static_cast<std::uint64_t>(i);
		std::string why;
		try {
			const Scenario s = generate_scenario(f, size, seed, twist);
			const ReconstructionResult r = reconstruct(s);
			if (!verify_reconstruction(s, r))
				why = "verification failed";
			else if (size >= 4 && r.w1 - r.w2 != twist)
				why = "twist difference " + std::to_string(r.w1 - r.w2);
			else if (!f.char_zero() && verify_reconstruction(s, {r.w1 + 1, r.w2, r.f, false}))
				why = "perturbed twist verified";
		} catch (const std::exception &e) {
			why = e.what();
		}
		t.record(why.empty(), [&] {
			return "seed=" + std::to_string(seed) + " size=" + std::to_string(size) + " twist=" + std::to_string(twist) +
			       ": " + why;
		});
	}
}

void sweep_twist_uniqueness(const Params &P, Tally &t)
{
	std::mt19937_64 rng(static_cast<std::uint64_t>(P.at("seed")));
	for (std::int64_t p : primes_or(P.at("p"), {2, 3, 5})) {
		const FieldDesc f = FieldDesc::function_field(p);
		for (std::int64_t i = 0; i < P.at("trials"); ++i) {
			FieldElem l = FieldElem::one(f);
			while (is_constant(l)) {
				std::vector<std::int64_t> num(1 + rng() % 4), den(1 + rng() % 3);
				for (auto &c : num)
					c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
				for (auto &c : den)
					c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
				if (FpPoly(p, num).is_zero() || FpPoly(p, den).is_zero())
					continue;
				l = FieldElem::ratfunc(FpPoly(p, num), FpPoly(p, den));
			}
			for (std::int64_t n = 0; n <= P.at("n"); ++n) {
				const auto got = decide_lambda_charp(l, frobenius(l, n));
				t.record(got == n, [&] {
					return "p=" + std::to_string(p) + " lambda=" + to_string(l) + " n=" + std::to_string(n);
				});
			}
		}
	}
}

void sweep_negative(const Params &P, Tally &t)
{
	const std::vector<FieldDesc> fields{FieldDesc::rationals(), FieldDesc::eisenstein(), FieldDesc::function_field(2),
	                                    FieldDesc::function_field(5)};
	const auto base = static_cast<std::uint64_t>(P.at("seed"));
	std::mt19937_64 rng(base);
	for (std::int64_t i = 0; i < P.at("trials"); ++i) {
		const FieldDesc &f = fields[static_cast<std::size_t>(i) % fields.size()];
		const std::size_t size = 4 + static_cast<std::size_t>(i % 4);
		const std::int64_t twist = f.char_zero() ? 0 : (i / 4) % 4;
		const std::uint64_t seed = base * 1000003ULL + static_cast<std::uint64_t>(i);
		const Scenario bad = corrupt_phi(generate_scenario(f, size, seed, twist), rng);
		bool accepted = false;
		try {
			accepted = verify_reconstruction(bad, reconstruct(bad));
		} catch (const ReconstructionError &) {
		}
		t.record(!accepted, [&] { return "field=" + to_string(f) + " seed=" + std::to_string(seed); });
	}
}

struct Entry {
	Params defaults;
	std::function<void(const Params &, Tally &)> run;
};

const std::map<std::string, Entry> &registry()
{
	static const std::map<std::string, Entry> r{
	    {"lemma235", {{{"p", 0}, {"bound", 6}}, sweep_lemma235}},
	    {"limit_regularity", {{{"n", 4}, {"M", 8}, {"Mp", 8}, {"k", 6}}, sweep_limit_regularity}},
	    {"biprime_annihilator", {{{"N", 30}}, sweep_biprime}},
	    {"fox_identity", {{{"words", 1000}, {"length", 20}, {"rank", 3}, {"seed", 1}}, sweep_fox}},
	    {"presentation", {{{"g", 5}, {"r", 8}}, sweep_presentation}},
	    {"roundtrip_char0",
	     {{{"seeds", 200}, {"rho", 0}, {"seed", 1}}, [](const Params &P, Tally &t) { sweep_roundtrip(char0_field(P), P, t); }}},
	    {"roundtrip_charp",
	     {{{"seeds", 200}, {"p", 2}, {"seed", 1}},
	      [](const Params &P, Tally &t) { sweep_roundtrip(FieldDesc::function_field(P.at("p")), P, t); }}},
	    {"twist_uniqueness", {{{"p", 0}, {"trials", 100}, {"n", 4}, {"seed", 1}}, sweep_twist_uniqueness}},
	    {"negative_soundness", {{{"trials", 100}, {"seed", 1}}, sweep_negative}},
	};
	return r;
}

} // namespace

const std::vector<std::string> &sweep_properties()
{
	static const std::vector<std::string> names = [] {
		std::vector<std::string> v;
		for (const auto &[k, e] : registry())
			v.push_back(k);
		return v;
	}();
	return names;
}

std::map<std::string, std::int64_t> sweep_defaults(const std::string &property)
{
	const auto it = registry().find(property);
	if (it == registry().end())
		throw DomainError("unknown sweep property: " + property);
	return it->second.defaults;
}

SweepSummary run_sweep(const SweepSpec &spec)
{
	const auto it = registry().find(spec.property);
	if (it == registry().end())
		throw DomainError("unknown sweep property: " + spec.property);
	Params P = it->second.defaults;
	for (const auto &[k, v] : spec.params) {
		if (!P.count(k))
			throw DomainError("sweep " + spec.property + ": unknown parameter " + k);
		P[k] = v;
	}
	Tally t;
	t.s.property = spec.property;
	it->second.run(P, t);
	return t.s;
}

std::string to_string(const SweepSummary &s)
{
	std::string out = s.property + ": " + std::to_string(s.failures) + " counterexamples / " + std::to_string(s.cases) +
	                  " cases";
	if (s.first_counterexample)
		out += "\nfirst counterexample: " + *s.first_counterexample;
	return out;
}

std::string to_json(const SweepSummary &s, int indent)
{
	nlohmann::ordered_json j;
	j["property"] = s.property;
	j["cases"] = s.cases;
	j["failures"] = s.failures;
	if (s.first_counterexample)
		j["first_counterexample"] = *s.first_counterexample;
	else
		j["first_counterexample"] = nullptr;
	return j.dump(indent);
}

} // namespace sgt
