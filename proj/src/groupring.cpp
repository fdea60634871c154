#include "sgt/groupring.h"

#include "sgt/expr.h"
#include "sgt/freegroup.h"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sgt {

// ---- AbelianShape -------------------------------------------------------

AbelianShape::AbelianShape(std::vector<std::int64_t> moduli) : moduli_(std::move(moduli))
{
	if (moduli_.empty())
		throw DomainError("AbelianShape: need at least one cyclic factor");
	for (std::int64_t n : moduli_) {
		if (n < 1)
			throw DomainError("AbelianShape: moduli must be at least 1");
		order_ *= static_cast<std::size_t>(n);
	}
}

std::size_t AbelianShape::index(const std::vector<std::int64_t> &elem) const
{
	if (elem.size() != moduli_.size())
		throw MismatchError("AbelianShape: element has wrong rank");
	std::size_t idx = 0;
	for (std::size_t i = 0; i < moduli_.size(); ++i)
		idx = idx * static_cast<std::size_t>(moduli_[i]) + static_cast<std::size_t>(mod_floor(elem[i], moduli_[i]));
	return idx;
}

std::vector<std::int64_t> AbelianShape::element(std::size_t index) const
{
	std::vector<std::int64_t> e(moduli_.size());
	for (std::size_t i = moduli_.size(); i-- > 0;) {
		e[i] = static_cast<std::int64_t>(index % static_cast<std::size_t>(moduli_[i]));
		index /= static_cast<std::size_t>(moduli_[i]);
	}
	return e;
}

std::size_t AbelianShape::add(std::size_t a, std::size_t b) const
{
	auto ea = element(a);
	auto eb = element(b);
	for (std::size_t i = 0; i < ea.size(); ++i)
		ea[i] += eb[i];
	return index(ea);
}

std::size_t AbelianShape::negate(std::size_t a) const
{
	auto e = element(a);
	for (auto &v : e)
		v = -v;
	return index(e);
}

// ---- GroupRingElem ------------------------------------------------------

GroupRingElem::GroupRingElem(AbelianShape shape, std::int64_t modulus)
    : shape_(std::move(shape)), modulus_(modulus), coeffs_(shape_.order(), 0)
{
	if (modulus < 2)
		throw DomainError("GroupRingElem: coefficient modulus must be at least 2");
}

GroupRingElem GroupRingElem::zero(const AbelianShape &shape, std::int64_t modulus)
{
	return GroupRingElem(shape, modulus);
}

GroupRingElem GroupRingElem::one(const AbelianShape &shape, std::int64_t modulus)
{
	GroupRingElem e(shape, modulus);
	e.coeffs_[0] = 1;
	return e;
}

GroupRingElem GroupRingElem::monomial(const AbelianShape &shape, std::int64_t modulus,
                                      const std::vector<std::int64_t> &exponent, std::int64_t coeff)
{
	GroupRingElem e(shape, modulus);
	e.coeffs_[shape.index(exponent)] = mod_floor(coeff, modulus);
	return e;
}

GroupRingElem GroupRingElem::power_minus_one(const AbelianShape &shape, std::int64_t modulus, std::size_t gen,
                                             std::int64_t n)
{
	if (gen >= shape.rank())
		throw DomainError("power_minus_one: generator index out of range");
	std::vector<std::int64_t> ex(shape.rank(), 0);
	ex[gen] = n;
	return monomial(shape, modulus, ex) - one(shape, modulus);
}

GroupRingElem GroupRingElem::from_coefficients(const AbelianShape &shape, std::int64_t modulus, ModVector coeffs)
{
	GroupRingElem e(shape, modulus);
	if (coeffs.size() != shape.order())
		throw MismatchError("from_coefficients: wrong number of coefficients");
	for (auto &c : coeffs)
		c = mod_floor(c, modulus);
	e.coeffs_ = std::move(coeffs);
	return e;
}

bool GroupRingElem::is_zero() const
{
	return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

void GroupRingElem::check_compatible(const GroupRingElem &rhs) const
{
	if (!(shape_ == rhs.shape_) || modulus_ != rhs.modulus_)
		throw MismatchError("group ring elements have different shape or modulus");
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem &rhs) const
{
	check_compatible(rhs);
	GroupRingElem out = *this;
	for (std::size_t i = 0; i < coeffs_.size(); ++i)
		out.coeffs_[i] = (coeffs_[i] + rhs.coeffs_[i]) % modulus_;
	return out;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem &rhs) const
{
	check_compatible(rhs);
	GroupRingElem out = *this;
	for (std::size_t i = 0; i < coeffs_.size(); ++i)
		out.coeffs_[i] = mod_floor(coeffs_[i] - rhs.coeffs_[i], modulus_);
	return out;
}

GroupRingElem GroupRingElem::operator-() const { return scaled(-1); }

GroupRingElem GroupRingElem::operator*(const GroupRingElem &rhs) const
{
	check_compatible(rhs);
	GroupRingElem out(shape_, modulus_);
	const std::size_t n = coeffs_.size();
	for (std::size_t i = 0; i < n; ++i) {
		if (coeffs_[i] == 0)
			continue;
		for (std::size_t j = 0; j < n; ++j) {
			if (rhs.coeffs_[j] == 0)
				continue;
			std::size_t k = shape_.add(i, j);
			out.coeffs_[k] = (out.coeffs_[k] + coeffs_[i] * rhs.coeffs_[j]) % modulus_;
		}
	}
	return out;
}

GroupRingElem GroupRingElem::scaled(std::int64_t k) const
{
	GroupRingElem out = *this;
	for (auto &c : out.coeffs_)
		c = mod_floor(c * mod_floor(k, modulus_), modulus_);
	return out;
}

bool GroupRingElem::operator==(const GroupRingElem &rhs) const
{
	return shape_ == rhs.shape_ && modulus_ == rhs.modulus_ && coeffs_ == rhs.coeffs_;
}

GroupRingElem grmul(const GroupRingElem &a, const GroupRingElem &b) { return a * b; }

std::int64_t augment(const GroupRingElem &a)
{
	std::int64_t s = 0;
	for (std::int64_t c : a.coefficients())
		s = (s + c) % a.modulus();
	return s;
}

ModMatrix multiplication_matrix(const GroupRingElem &a)
{
	const AbelianShape &shape = a.shape();
	const std::size_t n = shape.order();
	ModMatrix A(n, ModVector(n, 0));
	for (std::size_t i = 0; i < n; ++i) {
		const std::int64_t c = a.coefficients()[i];
		if (c == 0)
			continue;
		for (std::size_t j = 0; j < n; ++j) {
			std::size_t k = shape.add(i, j);
			A[k][j] = (A[k][j] + c) % a.modulus();
		}
	}
	return A;
}

std::vector<GroupRingElem> annihilator_basis(const GroupRingElem &a)
{
	std::vector<GroupRingElem> out;
	for (auto &v : kernel_mod_m(multiplication_matrix(a), a.shape().order(), a.modulus()))
		out.push_back(GroupRingElem::from_coefficients(a.shape(), a.modulus(), std::move(v)));
	return out;
}

GroupRingElem transition(const GroupRingElem &a, std::int64_t target_order)
{
	if (!a.shape().is_cyclic())
		throw DomainError("transition: source shape must be cyclic");
	const std::int64_t n = a.shape().moduli()[0];
	if (target_order < 1 || n % target_order != 0)
		throw DomainError("transition: target order must divide the source order");
	const AbelianShape target = AbelianShape::cyclic(target_order);
	ModVector c(static_cast<std::size_t>(target_order), 0);
	for (std::int64_t i = 0; i < n; ++i) {
		auto &slot = c[static_cast<std::size_t>(i % target_order)];
		slot = (slot + a.coefficients()[static_cast<std::size_t>(i)]) % a.modulus();
	}
	return GroupRingElem::from_coefficients(target, a.modulus(), std::move(c));
}

GroupRingElem transition(const GroupRingElem &a, const AbelianShape &target)
{
	const AbelianShape &src = a.shape();
	if (src.rank() != target.rank())
		throw MismatchError("transition: rank mismatch");
	for (std::size_t i = 0; i < src.rank(); ++i)
		if (src.moduli()[i] % target.moduli()[i] != 0)
			throw DomainError("transition: target moduli must divide the source moduli");
	ModVector c(target.order(), 0);
	for (std::size_t i = 0; i < src.order(); ++i) {
		auto &slot = c[target.index(src.element(i))];
		slot = (slot + a.coefficients()[i]) % a.modulus();
	}
	return GroupRingElem::from_coefficients(target, a.modulus(), std::move(c));
}

// ---- prime classes / regularity ----------------------------------------

PrimeClass PrimeClass::all_except(std::int64_t p)
{
	if (!is_prime(static_cast<std::uint64_t>(p)))
		throw DomainError("PrimeClass: excluded characteristic must be prime");
	return PrimeClass(p);
}

bool PrimeClass::contains(std::int64_t n) const
{
	if (n < 1)
		return false;
	return excluded_ == 0 || n % excluded_ != 0;
}

std::int64_t PrimeClass::c_part(std::int64_t n) const
{
	if (n == 0)
		throw DomainError("c_part: n must be nonzero");
	n = n < 0 ? -n : n;
	if (excluded_ != 0)
		while (n % excluded_ == 0)
			n /= excluded_;
	return n;
}

bool limit_regularity_check(std::int64_t n, std::int64_t M, std::int64_t M_prime, std::int64_t k, const PrimeClass &C)
{
	if (n < 1 || M < 2 || M_prime < 1 || k < 1)
		throw DomainError("limit_regularity_check: parameters out of range");
	if (M_prime % C.c_part(n) != 0)
		throw DomainError("limit_regularity_check: the C-part of n must divide M'");
	if (!C.contains(k))
		throw DomainError("limit_regularity_check: k must lie in N(C)");

	const AbelianShape big = AbelianShape::cyclic(k * M_prime);
	const GroupRingElem a = GroupRingElem::power_minus_one(big, M, 0, n);
	const std::int64_t g = std::gcd(k, M); // k·(ℤ/M) = g·(ℤ/M)
	for (const GroupRingElem &y : annihilator_basis(a)) {
		const GroupRingElem img = transition(y, M_prime);
		for (std::int64_t c : img.coefficients())
			if (c % g != 0)
				return false;
	}
	return true;
}

std::optional<std::int64_t> split_exponent(std::int64_t N)
{
	if (N < 2)
		return std::nullopt;
	const IntFactorization f = factor_integer(Int(static_cast<long>(N)));
	if (f.factors.size() < 2)
		return std::nullopt;
	std::int64_t q = 1; // prime power of the largest prime
	for (unsigned i = 0; i < f.factors.back().second; ++i)
		q *= f.factors.back().first.get_si();
	const std::int64_t rest = N / q;
	// γ ≡ 0 (mod q), γ ≡ 1 (mod rest)
	for (std::int64_t gamma = q; gamma < N; gamma += q)
		if (gamma % rest == 1 % rest)
			return gamma;
	throw InternalError("split_exponent: CRT search failed");
}

// ---- text ---------------------------------------------------------------

GroupRingElem parse_group_ring_elem(std::string_view text, const AbelianShape &shape, std::int64_t modulus)
{
	ExprRing<GroupRingElem> ring;
	for (std::size_t i = 0; i < shape.rank(); ++i)
		ring.names.emplace_back(1, kDefaultAlphabet[i]);
	ring.variable = [&](const std::string &name) {
		std::vector<std::int64_t> ex(shape.rank(), 0);
		ex[kDefaultAlphabet.find(name[0])] = 1;
		return GroupRingElem::monomial(shape, modulus, ex);
	};
	ring.constant = [&](const Int &c) {
		Int r = c % modulus;
		return GroupRingElem::one(shape, modulus).scaled(r.get_si());
	};
	ring.power = [&](const GroupRingElem &b, std::int64_t e) {
		if (e >= 0) {
			GroupRingElem out = GroupRingElem::one(shape, modulus);
			for (std::int64_t i = 0; i < e; ++i)
				out = out * b;
			return out;
		}
		std::size_t support = 0, where = 0;
		for (std::size_t i = 0; i < b.coefficients().size(); ++i)
			if (b.coefficients()[i] != 0) {
				++support;
				where = i;
			}
		if (support != 1 || b.coefficients()[where] != 1)
			throw ParseError("negative powers are only defined for group elements");
		auto ex = shape.element(shape.negate(where));
		for (auto &v : ex)
			v *= -e;
		return GroupRingElem::monomial(shape, modulus, ex);
	};
	return parse_expression(text, ring);
}

std::string to_string(const GroupRingElem &a)
{
	std::ostringstream os;
	bool first = true;
	const AbelianShape &shape = a.shape();
	for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
		const std::int64_t c = a.coefficients()[i];
		if (c == 0)
			continue;
		if (!first)
			os << " + ";
		first = false;
		const auto ex = shape.element(i);
		const bool is_unit = std::all_of(ex.begin(), ex.end(), [](std::int64_t v) { return v == 0; });
		if (c != 1 || is_unit)
			os << c;
		for (std::size_t j = 0; j < ex.size(); ++j) {
			if (ex[j] == 0)
				continue;
			os << kDefaultAlphabet[j];
			if (ex[j] != 1)
				os << '^' << ex[j];
		}
	}
	return first ? "0" : os.str();
}

} // namespace sgt
