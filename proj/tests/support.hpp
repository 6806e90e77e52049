#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mlca/automaton.hpp"
#include "mlca_cli/rule_parser.hpp"

namespace mlca::test {

// Rule from rows of entry expressions, e.g. rule(2, {{"Z", "1"}, {"1", "0"}}).
inline Rule rule(std::uint32_t p, const std::vector<std::vector<std::string>>& rows) {
  const PrimeField f(p);
  std::vector<LaurentPoly> entries;
  for (const auto& row : rows) {
    for (const auto& e : row) entries.push_back(cli::parse_entry(e, f));
  }
  return Rule(LaurentMatrix(f, rows.size(), std::move(entries)));
}

// Naive cofactor expansion along the first row.
inline LaurentPoly cofactor_det(const LaurentMatrix& m) {
  const std::size_t r = m.dim();
  if (r == 1) return m(0, 0);
  LaurentPoly sum(m.field());
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<LaurentPoly> minor;
    for (std::size_t i = 1; i < r; ++i) {
      for (std::size_t k = 0; k < r; ++k) {
        if (k != j) minor.push_back(m(i, k));
      }
    }
    const LaurentPoly term = m(0, j) * cofactor_det(LaurentMatrix(m.field(), r - 1, std::move(minor)));
    sum = (j % 2 == 0) ? sum + term : sum - term;
  }
  return sum;
}

// Every configuration of period N, in index order.
inline void for_each_config(PrimeField f, std::size_t r, std::size_t period,
                            const std::function<void(const PeriodicConfig&)>& visit) {
  std::vector<Residue> v(r * period, 0);
  while (true) {
    visit(PeriodicConfig(f, r, period, v));
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == f.p()) v[i++] = 0;
    if (i == v.size()) return;
  }
}

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

inline int log_p_exact(std::uint64_t count, std::uint64_t p) {
  int e = 0;
  while (count > 1) {
    count /= p;
    ++e;
  }
  return e;
}

}  // namespace mlca::test
