#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sgt {

using Int = mpz_class;
using Rat = mpq_class;

/// Raised when an operation's mathematical precondition does not hold.
class DomainError : public std::domain_error {
  public:
	using std::domain_error::domain_error;
};

/// An internal invariant failed. Seeing this means a bug.
class InternalError : public std::logic_error {
  public:
	using std::logic_error::logic_error;
};

/// Operands live in different rings/fields or have incompatible shapes.
class MismatchError : public std::invalid_argument {
  public:
	using std::invalid_argument::invalid_argument;
};

/// Text or JSON input could not be parsed.
class ParseError : public std::invalid_argument {
  public:
	using std::invalid_argument::invalid_argument;
};

inline std::string to_string(const Int &v) { return v.get_str(); }
inline std::string to_string(const Rat &v) { return v.get_str(); }

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m)
{
	std::int64_t r = a % m;
	return r < 0 ? r + m : r;
}

} // namespace sgt
