#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace mlca {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(std::uint64_t base, std::uint64_t e) { return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(e)); }

inline std::string to_decimal_string(const BigInt& v) { return v.str(); }

// Fixed-point rendering of a rational with `digits` digits after the point
// (truncated toward zero).
std::string to_fixed_string(const BigRational& v, unsigned digits = 6);

double to_double(const BigRational& v);

}  // namespace mlca
