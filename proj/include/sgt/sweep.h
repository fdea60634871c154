#pragma once

// Named property sweeps over finite parameter boxes, shared by the command-line
// front end and the acceptance runner.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sgt {

struct SweepSpec {
	std::string property;
	std::map<std::string, std::int64_t> params; // missing entries take the property's defaults
};

struct SweepSummary {
	std::string property;
	std::uint64_t cases = 0;
	std::uint64_t failures = 0;
	std::optional<std::string> first_counterexample;

	bool ok() const { return failures == 0; }
};

/// Property names accepted by run_sweep.
const std::vector<std::string> &sweep_properties();

/// Default box of a property, as parameter name and value.
std::map<std::string, std::int64_t> sweep_defaults(const std::string &property);

/// Throws DomainError for an unknown property or parameter name.
SweepSummary run_sweep(const SweepSpec &spec);

std::string to_string(const SweepSummary &s);
std::string to_json(const SweepSummary &s, int indent = 2);

} // namespace sgt
