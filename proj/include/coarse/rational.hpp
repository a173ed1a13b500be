#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "coarse/types.hpp"

namespace coarse {

// Exact rational arithmetic everywhere a value judgment is made; no floating
// point, no tolerances.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Canonical text form: lowest terms, "p" when the denominator is 1,
// "p/q" with q > 1 otherwise.
std::string format_rational(const Rat& r);

// Accepts "p" and "p/q" with optional leading minus on p. Throws InputError
// on anything else (including q == 0).
Rat parse_rational(const std::string& text);

}  // namespace coarse
