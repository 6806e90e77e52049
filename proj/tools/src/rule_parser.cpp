#include "mlca_cli/rule_parser.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>

#include "json.hpp"

namespace mlca::cli {

ParseError::ParseError(std::string what, std::size_t line, std::size_t column, std::string token)
    : Error("[line " + std::to_string(line) + ", col " + std::to_string(column) + "] " + what +
            (token.empty() ? " at end of input" : " at '" + token + "'")),
      detail_(std::move(what)),
      line_(line),
      column_(column),
      token_(std::move(token)) {}

namespace {

enum class Tok { Number, Z, Caret, Star, Plus, Minus, End, Bad };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t line = line_, col = col_;
      if (i_ == s_.size()) {
        out.push_back({Tok::End, "", line, col});
        return out;
      }
      const char c = s_[i_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string digits;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) digits += take();
        out.push_back({Tok::Number, digits, line, col});
        continue;
      }
      take();
      switch (c) {
        case 'Z': out.push_back({Tok::Z, "Z", line, col}); break;
        case '^': out.push_back({Tok::Caret, "^", line, col}); break;
        case '*': out.push_back({Tok::Star, "*", line, col}); break;
        case '+': out.push_back({Tok::Plus, "+", line, col}); break;
        case '-': out.push_back({Tok::Minus, "-", line, col}); break;
        default: out.push_back({Tok::Bad, std::string(1, c), line, col}); break;
      }
    }
  }

 private:
  char take() {
    const char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip_space() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) take();
  }

  std::string_view s_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

class EntryParser {
 public:
  EntryParser(std::vector<Token> toks, PrimeField field) : t_(std::move(toks)), f_(field) {}

  LaurentPoly parse() {
    std::map<std::int64_t, Residue> acc;
    add_term(acc, false);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool negate = next().kind == Tok::Minus;
      add_term(acc, negate);
    }
    if (peek().kind != Tok::End) fail("expected '+', '-' or end of expression");
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    for (const auto& [e, c] : acc) terms.emplace_back(e, c);
    return LaurentPoly::from_terms(f_, terms);
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  const Token& next() { return t_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    throw ParseError(what, t.line, t.column, t.text);
  }

  // Decimal digits reduced mod p, so arbitrarily long coefficients are fine.
  Residue coefficient(const std::string& digits) const {
    Residue v = 0;
    for (const char d : digits) v = f_.add(f_.mul(v, 10 % f_.p()), static_cast<Residue>(d - '0') % f_.p());
    return v;
  }

  std::int64_t exponent() {
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      next();
      negative = true;
    }
    if (peek().kind != Tok::Number) fail("expected an integer exponent");
    const Token& t = peek();
    std::uint64_t v = 0;
    for (const char d : t.text) {
      if (v > (static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) - 9) / 10) fail("exponent out of range");
      v = v * 10 + static_cast<std::uint64_t>(d - '0');
    }
    next();
    return negative ? -static_cast<std::int64_t>(v) : static_cast<std::int64_t>(v);
  }

  std::int64_t zpow() {
    if (peek().kind != Tok::Z) fail("expected 'Z'");
    next();
    if (peek().kind != Tok::Caret) return 1;
    next();
    return exponent();
  }

  void add_term(std::map<std::int64_t, Residue>& acc, bool negate) {
    Residue c = 1;
    std::int64_t e = 0;
    if (peek().kind == Tok::Number) {
      c = coefficient(next().text);
      if (peek().kind == Tok::Star) {
        next();
        e = zpow();
      }
    } else if (peek().kind == Tok::Z) {
      e = zpow();
    } else {
      fail("expected a coefficient or 'Z'");
    }
    if (negate) c = f_.neg(c);
    acc[e] = f_.add(acc[e], c);
  }

  std::vector<Token> t_;
  PrimeField f_;
  std::size_t pos_ = 0;
};

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> position_of(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Validates a parsed document and maps problems back to positions in the
// raw text. Values are located by searching forward from the key they belong
// to, which follows document order for arrays.
class SpecReader {
 public:
  explicit SpecReader(std::string_view text) : text_(text) {}

  [[noreturn]] void invalid(const std::string& what, const std::string& token, std::size_t offset) const {
    const auto [line, col] = position_of(text_, offset);
    throw ParseError(what, line, col, token);
  }

  // Offset of `"key"` in the text (0 if absent).
  std::size_t key_offset(const std::string& key) const {
    const auto at = text_.find("\"" + key + "\"");
    return at == std::string_view::npos ? 0 : at;
  }

  std::uint64_t count(const nlohmann::json& j, const std::string& key) const {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
      invalid("field '" + key + "' must be a nonnegative integer", j.dump(), key_offset(key));
    }
    return j.get<std::uint64_t>();
  }

  EntryGrid grid(const nlohmann::json& j, std::size_t r, const std::string& where, PrimeField field,
                 std::size_t& cursor) const {
    if (!j.is_array() || j.size() != r) {
      invalid(where + " must be an array of " + std::to_string(r) + " rows", j.dump(), cursor);
    }
    EntryGrid out;
    for (std::size_t i = 0; i < r; ++i) {
      const auto& row = j[i];
      const std::string at = where + "[" + std::to_string(i) + "]";
      if (!row.is_array() || row.size() != r) invalid(at + " must have " + std::to_string(r) + " entries", row.dump(), cursor);
      std::vector<std::string> cells;
      for (std::size_t k = 0; k < r; ++k) {
        if (!row[k].is_string()) invalid(at + " entries must be strings", row[k].dump(), cursor);
        const auto text = row[k].get<std::string>();
        const std::string literal = row[k].dump();
        const auto found = text_.find(literal, cursor);
        const std::size_t start = found == std::string_view::npos ? cursor : found + 1;
        if (found != std::string_view::npos) cursor = found + literal.size();
        try {
          parse_entry(text, field);
        } catch (const ParseError& e) {
          // Entry positions are relative to the string; shift them into the file.
          const auto [line, col] = position_of(text_, start);
          throw ParseError(at + "[" + std::to_string(k) + "]: " + e.detail(), line + e.line() - 1,
                           e.line() == 1 ? col + e.column() - 1 : e.column(), e.token());
        }
        cells.push_back(text);
      }
      out.push_back(std::move(cells));
    }
    return out;
  }

 private:
  std::string_view text_;
};

}  // namespace

LaurentPoly parse_entry(std::string_view text, PrimeField field) {
  auto toks = Lexer(text).run();
  for (const auto& t : toks) {
    if (t.kind == Tok::Bad) throw ParseError("unexpected character", t.line, t.column, t.text);
  }
  return EntryParser(std::move(toks), field).parse();
}

RuleSpec parse_rule_spec(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = position_of(json_text, offset);
    const std::string token = offset < json_text.size() ? std::string(1, json_text[offset]) : "";
    throw ParseError("malformed rule file", line, col, token);
  }
  const SpecReader reader(json_text);
  if (!j.is_object()) reader.invalid("rule file must be a JSON object", j.dump(), 0);
  static const char* known[] = {"p", "r", "entries", "blocks", "seed", "n_check", "l_max", "n_max_field"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      reader.invalid("unknown field", key, reader.key_offset(key));
    }
  }
  for (const char* key : {"p", "r"}) {
    if (!j.contains(key)) reader.invalid(std::string("missing field '") + key + "'", "", json_text.size());
  }
  RuleSpec spec;
  const std::uint64_t p = reader.count(j["p"], "p");
  if (p > PrimeField::kMaxPrime || !is_prime(p)) reader.invalid("p must be a prime below 2^31", j["p"].dump(), reader.key_offset("p"));
  spec.p = static_cast<std::uint32_t>(p);
  spec.r = reader.count(j["r"], "r");
  if (spec.r == 0) reader.invalid("r must be >= 1", j["r"].dump(), reader.key_offset("r"));
  const PrimeField field(spec.p);

  const bool has_entries = j.contains("entries"), has_blocks = j.contains("blocks");
  if (has_entries == has_blocks) reader.invalid("exactly one of 'entries' and 'blocks' is required", "", 0);
  if (has_entries) {
    std::size_t cursor = reader.key_offset("entries");
    spec.entries = reader.grid(j["entries"], spec.r, "entries", field, cursor);
  }
  if (has_blocks) {
    const auto& b = j["blocks"];
    std::size_t cursor = reader.key_offset("blocks");
    if (!b.is_array() || b.empty()) reader.invalid("'blocks' must be a nonempty array", b.dump(), cursor);
    for (std::size_t s = 0; s < b.size(); ++s) {
      spec.blocks.push_back(reader.grid(b[s], spec.r, "blocks[" + std::to_string(s) + "]", field, cursor));
    }
  }
  for (const char* key : {"seed", "n_check", "l_max", "n_max_field"}) {
    if (!j.contains(key)) continue;
    const std::uint64_t v = reader.count(j[key], key);
    if (v == 0 && std::string(key) != "seed") reader.invalid(std::string(key) + " must be >= 1", "0", reader.key_offset(key));
    if (std::string(key) == "seed") spec.seed = v;
    if (std::string(key) == "n_check") spec.n_check = v;
    if (std::string(key) == "l_max") spec.l_max = v;
    if (std::string(key) == "n_max_field") spec.n_max_field = v;
  }
  return spec;
}

namespace {

LaurentMatrix grid_matrix(const EntryGrid& grid, PrimeField field) {
  std::vector<LaurentPoly> e;
  for (const auto& row : grid) {
    for (const auto& text : row) e.push_back(parse_entry(text, field));
  }
  return LaurentMatrix(field, grid.size(), std::move(e));
}

}  // namespace

Rule build_rule(const RuleSpec& spec) {
  const PrimeField field(spec.p);
  if (spec.blocks.empty()) return Rule(grid_matrix(spec.entries, field));
  std::vector<LaurentMatrix> blocks;
  for (const auto& b : spec.blocks) blocks.push_back(grid_matrix(b, field));
  return companion(blocks);
}

EntryGrid format_entries(const LaurentMatrix& m) {
  EntryGrid grid(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) grid[i].push_back(m(i, j).to_string());
  }
  return grid;
}

}  // namespace mlca::cli
