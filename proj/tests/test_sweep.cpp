#include "sgt/sweep.h"

#include "sgt/common.h"

#include <doctest.h>

using namespace sgt;

TEST_CASE("sweeps over small boxes")
{
	CHECK(run_sweep({"lemma235", {{"p", 3}, {"bound", 6}}}).cases == 12 * 12 * 12 * 12);
	for (const auto &name : sweep_properties()) {
		auto params = sweep_defaults(name);
		for (auto key : {"seeds", "trials", "words"})
			if (params.count(key))
				params[key] = 8;
		const SweepSummary s = run_sweep({name, params});
		CHECK_MESSAGE(s.ok(), to_string(s));
		CHECK(s.cases > 0);
	}
}

TEST_CASE("empty boxes and unknown names")
{
	const SweepSummary s = run_sweep({"roundtrip_charp", {{"seeds", 0}}});
	CHECK(s.cases == 0);
	CHECK(s.ok());
	CHECK(to_string(s) == "roundtrip_charp: 0 counterexamples / 0 cases");
	CHECK_THROWS_AS(run_sweep({"nonsense", {}}), DomainError);
	CHECK_THROWS_AS(run_sweep({"lemma235", {{"nonsense", 1}}}), DomainError);
}
