#include "mlca/bigint.hpp"

namespace mlca {

std::string to_fixed_string(const BigRational& v, unsigned digits) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  const bool negative = num < 0;
  const BigInt scaled = (negative ? BigInt(-num) : num) * boost::multiprecision::pow(BigInt(10), digits) / den;
  std::string s = scaled.str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

double to_double(const BigRational& v) { return v.convert_to<double>(); }

}  // namespace mlca
