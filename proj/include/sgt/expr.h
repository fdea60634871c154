#pragma once

// Small recursive-descent evaluator for ring expressions such as
// "3x^2y - 1", "(t^2+1)/(t+1)" or "1/2 - 3*rho". Evaluation happens directly
// in the target ring, so every text syntax in the toolkit shares one grammar.

#include "sgt/common.h"

#include <cctype>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sgt {

template <class T>
struct ExprRing {
	std::vector<std::string> names; // recognized identifiers; longest match wins
	std::function<T(const std::string &)> variable;
	std::function<T(const Int &)> constant;
	std::function<T(const T &, const T &)> divide; // empty: '/' is rejected
	std::function<T(const T &, std::int64_t)> power;
};

template <class T>
class ExprParser {
  public:
	ExprParser(std::string_view text, const ExprRing<T> &ring) : s_(text), ring_(ring) {}

	T parse()
	{
		T v = expr();
		skip();
		if (pos_ != s_.size())
			fail("unexpected trailing input");
		return v;
	}

  private:
	std::string_view s_;
	const ExprRing<T> &ring_;
	std::size_t pos_ = 0;

	[[noreturn]] void fail(const std::string &msg) const
	{
		throw ParseError("expression '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_));
	}

	void skip()
	{
		while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
			++pos_;
	}

	char peek()
	{
		skip();
		return pos_ < s_.size() ? s_[pos_] : '\0';
	}

	T expr()
	{
		T v = peek() == '-' ? (++pos_, -term()) : (peek() == '+' ? (++pos_, term()) : term());
		for (;;) {
			char c = peek();
			if (c == '+') {
				++pos_;
				v = v + term();
			} else if (c == '-') {
				++pos_;
				v = v - term();
			} else {
				return v;
			}
		}
	}

	bool starts_factor()
	{
		char c = peek();
		return c == '(' || std::isalnum(static_cast<unsigned char>(c));
	}

	T term()
	{
		T v = power();
		for (;;) {
			char c = peek();
			if (c == '*') {
				++pos_;
				v = v * power();
			} else if (c == '/') {
				++pos_;
				if (!ring_.divide)
					fail("division is not supported here");
				v = ring_.divide(v, power());
			} else if (starts_factor()) {
				v = v * power();
			} else {
				return v;
			}
		}
	}

	std::int64_t exponent()
	{
		bool paren = false;
		if (peek() == '(') {
			paren = true;
			++pos_;
		}
		bool neg = false;
		if (peek() == '-') {
			neg = true;
			++pos_;
		}
		skip();
		std::size_t start = pos_;
		while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
			++pos_;
		if (start == pos_)
			fail("expected an integer exponent");
		std::int64_t e = std::stoll(std::string(s_.substr(start, pos_ - start)));
		if (paren) {
			if (peek() != ')')
				fail("expected ')'");
			++pos_;
		}
		return neg ? -e : e;
	}

	T power()
	{
		T base = primary();
		if (peek() == '^') {
			++pos_;
			base = ring_.power(base, exponent());
		}
		return base;
	}

	T primary()
	{
		char c = peek();
		if (c == '(') {
			++pos_;
			T v = expr();
			if (peek() != ')')
				fail("expected ')'");
			++pos_;
			return v;
		}
		if (std::isdigit(static_cast<unsigned char>(c))) {
			std::size_t start = pos_;
			while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
				++pos_;
			return ring_.constant(Int(std::string(s_.substr(start, pos_ - start))));
		}
		if (std::isalpha(static_cast<unsigned char>(c))) {
			const std::string *best = nullptr;
			for (const auto &n : ring_.names)
				if (s_.substr(pos_, n.size()) == n && (!best || n.size() > best->size()))
					best = &n;
			if (!best)
				fail("unknown identifier");
			pos_ += best->size();
			return ring_.variable(*best);
		}
		fail("unexpected character");
	}
};

template <class T>
T parse_expression(std::string_view text, const ExprRing<T> &ring)
{
	return ExprParser<T>(text, ring).parse();
}

} // namespace sgt
