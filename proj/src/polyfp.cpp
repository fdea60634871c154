#include "sgt/polyfp.h"

#include "sgt/exactalg.h"

#include <algorithm>
#include <random>
#include <sstream>

namespace sgt {

FpPoly::FpPoly(std::int64_t p) : p_(p)
{
	if (p < 2)
		throw DomainError("FpPoly: characteristic must be a prime");
}

FpPoly::FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs) : p_(p), c_(std::move(coeffs))
{
	if (p < 2)
		throw DomainError("FpPoly: characteristic must be a prime");
	for (auto &c : c_)
		c = mod_floor(c, p_);
	trim();
}

FpPoly FpPoly::constant(std::int64_t p, std::int64_t c) { return FpPoly(p, {c}); }

FpPoly FpPoly::monomial(std::int64_t p, std::size_t deg, std::int64_t c)
{
	std::vector<std::int64_t> v(deg + 1, 0);
	v[deg] = c;
	return FpPoly(p, std::move(v));
}

void FpPoly::trim()
{
	while (!c_.empty() && c_.back() == 0)
		c_.pop_back();
}

void FpPoly::check(const FpPoly &rhs) const
{
	if (p_ != rhs.p_)
		throw MismatchError("FpPoly: characteristics differ");
}

FpPoly FpPoly::operator+(const FpPoly &rhs) const
{
	check(rhs);
	FpPoly out = *this;
	if (out.c_.size() < rhs.c_.size())
		out.c_.resize(rhs.c_.size(), 0);
	for (std::size_t i = 0; i < rhs.c_.size(); ++i) {
		out.c_[i] += rhs.c_[i];
		if (out.c_[i] >= p_)
			out.c_[i] -= p_;
	}
	out.trim();
	return out;
}

FpPoly FpPoly::operator-(const FpPoly &rhs) const { return *this + (-rhs); }

FpPoly FpPoly::operator-() const
{
	FpPoly out = *this;
	for (auto &c : out.c_)
		if (c != 0)
			c = p_ - c;
	return out;
}

FpPoly FpPoly::operator*(const FpPoly &rhs) const
{
	check(rhs);
	if (is_zero() || rhs.is_zero())
		return FpPoly(p_);
	std::vector<unsigned __int128> acc(c_.size() + rhs.c_.size() - 1, 0);
	for (std::size_t i = 0; i < c_.size(); ++i) {
		const auto a = static_cast<unsigned __int128>(c_[i]);
		if (a == 0)
			continue;
		for (std::size_t j = 0; j < rhs.c_.size(); ++j)
			acc[i + j] += a * static_cast<std::uint64_t>(rhs.c_[j]);
	}
	std::vector<std::int64_t> out(acc.size());
	for (std::size_t k = 0; k < acc.size(); ++k)
		out[k] = static_cast<std::int64_t>(acc[k] % static_cast<unsigned __int128>(p_));
	return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::scaled(std::int64_t c) const
{
	c = mod_floor(c, p_);
	FpPoly out = *this;
	for (auto &x : out.c_)
		x = static_cast<std::int64_t>((static_cast<__int128>(x) * c) % p_);
	out.trim();
	return out;
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly &d) const
{
	check(d);
	if (d.is_zero())
		throw DomainError("FpPoly: division by zero polynomial");
	if (degree() < d.degree())
		return {FpPoly(p_), *this};
	const std::int64_t inv = inv_mod_p(d.lead(), p_);
	std::vector<std::int64_t> r = c_;
	const std::size_t dd = d.c_.size() - 1;
	std::vector<std::int64_t> q(c_.size() - dd, 0);
	for (std::size_t k = q.size(); k-- > 0;) {
		const std::int64_t coef = static_cast<std::int64_t>((static_cast<__int128>(r[k + dd]) * inv) % p_);
		q[k] = coef;
		if (coef == 0)
			continue;
		for (std::size_t j = 0; j <= dd; ++j)
			r[k + j] = mod_floor(r[k + j] - static_cast<std::int64_t>((static_cast<__int128>(coef) * d.c_[j]) % p_), p_);
	}
	r.resize(dd);
	return {FpPoly(p_, std::move(q)), FpPoly(p_, std::move(r))};
}

FpPoly FpPoly::monic() const
{
	if (is_zero())
		return *this;
	return scaled(inv_mod_p(lead(), p_));
}

FpPoly FpPoly::derivative() const
{
	std::vector<std::int64_t> d;
	for (std::size_t i = 1; i < c_.size(); ++i)
		d.push_back(static_cast<std::int64_t>((static_cast<__int128>(c_[i]) * static_cast<std::int64_t>(i % static_cast<std::size_t>(p_))) % p_));
	return FpPoly(p_, std::move(d));
}

FpPoly FpPoly::substitute_power(std::size_t q) const
{
	if (q == 0)
		throw DomainError("substitute_power: exponent must be positive");
	if (c_.size() <= 1)
		return *this;
	std::vector<std::int64_t> out((c_.size() - 1) * q + 1, 0);
	for (std::size_t i = 0; i < c_.size(); ++i)
		out[i * q] = c_[i];
	return FpPoly(p_, std::move(out));
}

bool FpPoly::operator<(const FpPoly &rhs) const
{
	if (degree() != rhs.degree())
		return degree() < rhs.degree();
	for (std::size_t i = c_.size(); i-- > 0;)
		if (c_[i] != rhs.c_[i])
			return c_[i] < rhs.c_[i];
	return false;
}

std::int64_t inv_mod_p(std::int64_t a, std::int64_t p)
{
	std::int64_t old_r = mod_floor(a, p), r = p, old_s = 1, s = 0;
	if (old_r == 0)
		throw DomainError("inv_mod_p: zero is not invertible");
	while (r != 0) {
		const std::int64_t q = old_r / r;
		std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
		std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
	}
	if (old_r != 1)
		throw DomainError("inv_mod_p: not invertible");
	return mod_floor(old_s, p);
}

std::int64_t pow_mod_p(std::int64_t a, const Int &e, std::int64_t p)
{
	Int r;
	Int base = mod_floor(a, p);
	Int ee = e;
	if (ee < 0) {
		base = inv_mod_p(a, p);
		ee = -ee;
	}
	mpz_powm(r.get_mpz_t(), base.get_mpz_t(), ee.get_mpz_t(), Int(p).get_mpz_t());
	return r.get_si();
}

FpPoly gcd(const FpPoly &a, const FpPoly &b)
{
	FpPoly x = a, y = b;
	while (!y.is_zero()) {
		FpPoly r = x % y;
		x = std::move(y);
		y = std::move(r);
	}
	return x.monic();
}

FpPoly powmod(const FpPoly &base, const Int &e, const FpPoly &mod)
{
	if (e < 0)
		throw DomainError("powmod: negative exponent");
	FpPoly result = FpPoly::constant(base.prime(), 1) % mod;
	const FpPoly b = base % mod;
	for (std::size_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
		result = (result * result) % mod;
		if (mpz_tstbit(e.get_mpz_t(), i))
			result = (result * b) % mod;
	}
	return result;
}

FpPoly pth_root(const FpPoly &f)
{
	const auto p = static_cast<std::size_t>(f.prime());
	std::vector<std::int64_t> out;
	for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
		if (i % p != 0) {
			if (f.coeffs()[i] != 0)
				throw DomainError("pth_root: polynomial is not a p-th power");
			continue;
		}
		out.push_back(f.coeffs()[i]); // c^(1/p) = c in 𝔽_p
	}
	return FpPoly(f.prime(), std::move(out));
}

std::vector<std::pair<FpPoly, unsigned>> squarefree_factorization(const FpPoly &f_in)
{
	std::vector<std::pair<FpPoly, unsigned>> out;
	const FpPoly f = f_in.monic();
	if (f.degree() < 1)
		return out;
	FpPoly c = gcd(f, f.derivative());
	FpPoly w = f / c;
	unsigned i = 1;
	while (!w.is_one()) {
		FpPoly y = gcd(w, c);
		FpPoly fac = w / y;
		if (!fac.is_one())
			out.emplace_back(fac, i);
		w = y;
		c = c / y;
		++i;
	}
	if (!c.is_one()) {
		const auto p = static_cast<unsigned>(f.prime());
		for (auto &[g, j] : squarefree_factorization(pth_root(c)))
			out.emplace_back(g, j * p);
	}
	return out;
}

namespace {

std::vector<std::pair<FpPoly, unsigned>> distinct_degree(FpPoly f)
{
	std::vector<std::pair<FpPoly, unsigned>> out;
	const std::int64_t p = f.prime();
	const FpPoly t = FpPoly::monomial(p, 1);
	FpPoly h = t % f;
	for (unsigned d = 1; 2 * static_cast<int>(d) <= f.degree(); ++d) {
		h = powmod(h, p, f);
		FpPoly g = gcd(h - t, f);
		if (!g.is_one()) {
			out.emplace_back(g, d);
			f = f / g;
			h = h % f;
		}
	}
	if (f.degree() > 0)
		out.emplace_back(f, static_cast<unsigned>(f.degree()));
	return out;
}

void equal_degree(const FpPoly &f, unsigned d, std::mt19937_64 &rng, std::vector<FpPoly> &out)
{
	if (f.degree() == static_cast<int>(d)) {
		out.push_back(f);
		return;
	}
	const std::int64_t p = f.prime();
	Int half_exp;
	if (p != 2) {
		mpz_ui_pow_ui(half_exp.get_mpz_t(), static_cast<unsigned long>(p), d);
		half_exp = (half_exp - 1) / 2;
	}
	std::uniform_int_distribution<std::int64_t> coef(0, p - 1);
	for (;;) {
		std::vector<std::int64_t> a(static_cast<std::size_t>(f.degree()));
		for (auto &c : a)
			c = coef(rng);
		const FpPoly A(p, std::move(a));
		if (A.degree() < 1)
			continue;
		FpPoly b(p);
		if (p == 2) {
			FpPoly term = A;
			b = A;
			for (unsigned i = 1; i < d; ++i) {
				term = (term * term) % f;
				b = b + term;
			}
		} else {
			b = powmod(A, half_exp, f) - FpPoly::constant(p, 1);
		}
		const FpPoly g = gcd(b, f);
		if (g.degree() > 0 && g.degree() < f.degree()) {
			equal_degree(g, d, rng, out);
			equal_degree(f / g, d, rng, out);
			return;
		}
	}
}

} // namespace

FpFactorization factor(const FpPoly &f)
{
	if (f.is_zero())
		throw DomainError("factor: zero polynomial");
	FpFactorization out;
	out.unit = f.lead();
	std::mt19937_64 rng(0x5eedf00dULL);
	for (const auto &[sf, mult] : squarefree_factorization(f))
		for (const auto &[block, d] : distinct_degree(sf)) {
			std::vector<FpPoly> irr;
			equal_degree(block, d, rng, irr);
			for (auto &g : irr)
				out.factors.emplace_back(std::move(g), mult);
		}
	std::sort(out.factors.begin(), out.factors.end(),
	          [](const auto &a, const auto &b) { return a.first < b.first; });
	return out;
}

bool is_irreducible(const FpPoly &f)
{
	if (f.degree() < 1)
		return false;
	const FpFactorization fz = factor(f);
	return fz.factors.size() == 1 && fz.factors[0].second == 1;
}

std::string to_string(const FpPoly &f, const std::string &var)
{
	if (f.is_zero())
		return "0";
	std::ostringstream os;
	bool first = true;
	for (std::size_t i = f.coeffs().size(); i-- > 0;) {
		const std::int64_t c = f.coeffs()[i];
		if (c == 0)
			continue;
		if (!first)
			os << '+';
		first = false;
		if (i == 0) {
			os << c;
			continue;
		}
		if (c != 1)
			os << c << '*';
		os << var;
		if (i > 1)
			os << '^' << i;
	}
	return os.str();
}

} // namespace sgt
