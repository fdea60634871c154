#pragma once

#include "sgt/fieldarith.h"

#include <random>
#include <vector>

namespace sgt::testutil {

inline FpPoly random_poly(std::mt19937_64 &rng, std::int64_t p, int max_deg)
{
	std::vector<std::int64_t> c(static_cast<std::size_t>(rng() % static_cast<unsigned>(max_deg + 1)) + 1);
	for (auto &x : c)
		x = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
	return FpPoly(p, c);
}

inline FieldElem random_elem(std::mt19937_64 &rng, const FieldDesc &f)
{
	auto small = [&](int lo, int hi) { return lo + static_cast<long>(rng() % static_cast<unsigned>(hi - lo + 1)); };
	for (;;) {
		FieldElem out = FieldElem::zero(f);
		switch (f.kind) {
		case FieldKind::Q:
			out = FieldElem(f, Rat(small(-600, 600), small(1, 400)));
			break;
		case FieldKind::QRho:
			out = FieldElem::qrho(Rat(small(-60, 60), small(1, 12)), Rat(small(-60, 60), small(1, 12)));
			break;
		case FieldKind::FpT:
		{
			const FpPoly n = random_poly(rng, f.p, 7), d = random_poly(rng, f.p, 6);
			if (d.is_zero())
				continue;
			out = FieldElem::ratfunc(n, d);
			break;
		}
		}
		if (!out.is_zero())
			return out;
	}
}

/// Random element of a field with bounded size, used where factorization cost matters.
inline FieldElem random_small_elem(std::mt19937_64 &rng, const FieldDesc &f)
{
	auto small = [&](int lo, int hi) { return lo + static_cast<long>(rng() % static_cast<unsigned>(hi - lo + 1)); };
	for (;;) {
		FieldElem out = FieldElem::zero(f);
		switch (f.kind) {
		case FieldKind::Q:
			out = FieldElem(f, Rat(small(-40, 40), small(1, 30)));
			break;
		case FieldKind::QRho:
			out = FieldElem::qrho(Rat(small(-9, 9), small(1, 4)), Rat(small(-9, 9), small(1, 4)));
			break;
		case FieldKind::FpT:
		{
			const FpPoly n = random_poly(rng, f.p, 3), d = random_poly(rng, f.p, 2);
			if (d.is_zero())
				continue;
			out = FieldElem::ratfunc(n, d);
			break;
		}
		}
		if (!out.is_zero())
			return out;
	}
}

} // namespace sgt::testutil
