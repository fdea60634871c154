#pragma once

// Recovering a Möbius map, and in positive characteristic a pair of Frobenius twists,
// from two cusp sets and a bijection between them.

#include "sgt/crossratio.h"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgt {

/// No isomorphism is compatible with the given bijection.
class ReconstructionError : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

struct ScenarioSecret {
	MobiusMap g;
	std::int64_t twist = 0;
};

struct Scenario {
	FieldDesc field;
	CuspSet E1, E2;
	std::vector<std::size_t> phi; // E1[i] ↦ E2[phi[i]]
	std::optional<ScenarioSecret> secret;

	/// Validates sizes, fields and that phi is a permutation.
	Scenario(CuspSet e1, CuspSet e2, std::vector<std::size_t> phi, std::optional<ScenarioSecret> secret = std::nullopt);
};

struct ReconstructionResult {
	std::int64_t w1 = 0, w2 = 0;
	MobiusMap f;
	bool rho_ambiguity = false;
};

/// E2 := g(E1(twist)) listed in shuffled order, with phi the induced bijection.
Scenario scenario_from_secret(const CuspSet &E1, const MobiusMap &g, std::int64_t twist, std::mt19937_64 *shuffle = nullptr);

/// Random honest scenario; in positive characteristic E1 satisfies condition (*) and has a
/// non-constant point.
Scenario generate_scenario(const FieldDesc &field, std::size_t size, std::uint64_t seed, std::int64_t twist);

ReconstructionResult reconstruct_char0(const Scenario &s);
ReconstructionResult reconstruct_charp(const Scenario &s);
/// Dispatches on the characteristic.
ReconstructionResult reconstruct(const Scenario &s);

bool verify_reconstruction(const Scenario &s, const ReconstructionResult &r);

/// Whether some twist pair and Möbius map carry E1 onto E2 along phi. Needs |E1| ≥ 4 in
/// positive characteristic, where the twist is read off from heights.
bool phi_is_induced(const Scenario &s);

/// Same sets with phi replaced by a random bijection that no isomorphism induces.
Scenario corrupt_phi(const Scenario &s, std::mt19937_64 &rng);

// ---- JSON ------------------------------------------------------------------

std::string scenario_to_json(const Scenario &s, int indent = 2);
/// Throws ParseError naming the offending field.
Scenario scenario_from_json(const std::string &text);
/// A point array, or {"field", "points"}; the bare array form needs the field argument.
CuspSet cusp_set_from_json(const std::string &text, const std::optional<FieldDesc> &field = std::nullopt);
std::string result_to_json(const ReconstructionResult &r, int indent = 2);

} // namespace sgt
