#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlca/automaton.hpp"
#include "mlca/error.hpp"

namespace mlca::cli {

// Syntax or validation error in a rule file or entry expression. Lines and
// columns are 1-based; `token` is the offending text ("" at end of input).
class ParseError : public Error {
 public:
  ParseError(std::string what, std::size_t line, std::size_t column, std::string token);

  // The message without the position prefix.
  const std::string& detail() const noexcept { return detail_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
  std::string token_;
};

// One entry of G(Z) under the grammar
//   expr  := term (('+' | '-') term)*
//   term  := coeff | coeff '*' zpow | zpow
//   zpow  := 'Z' | 'Z' '^' int
//   coeff := nonneg-int ;  int := ('-')? nonneg-int
// Whitespace is insignificant; coefficients are reduced mod p.
LaurentPoly parse_entry(std::string_view text, PrimeField field);

using EntryGrid = std::vector<std::vector<std::string>>;

struct RuleSpec {
  std::uint32_t p = 2;
  std::size_t r = 1;
  EntryGrid entries;               // r x r; empty when blocks are given
  std::vector<EntryGrid> blocks;   // G_1..G_s for the companion construction
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n_check;
  std::optional<std::uint64_t> l_max;
  std::optional<std::uint64_t> n_max_field;

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

// Parses the JSON rule file format. Throws ParseError with the position of
// the problem (inside the file, or inside an entry string).
RuleSpec parse_rule_spec(std::string_view json_text);

// The rule described by a rule file: the entry matrix, or the companion matrix of
// the blocks.
Rule build_rule(const RuleSpec& spec);

// Entries of a rule in the grammar above (parse_entry inverts this).
EntryGrid format_entries(const LaurentMatrix& m);

}  // namespace mlca::cli
