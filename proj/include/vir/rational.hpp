#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vir {

// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rat = mpq_class;
using Int = mpz_class;

Rat make_rat(long num, long den = 1);
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);
Rat factorial(long n); // zero for negative n
Int floor_rat(const Rat& q);

} // namespace vir
