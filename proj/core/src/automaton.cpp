#include "mlca/automaton.hpp"

#include <algorithm>
#include <numeric>

#include "mlca/error.hpp"

namespace mlca {

Rule::Rule(LaurentMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.dim() == 0) throw DomainError("rules need at least one band");
  const auto lo = matrix_.min_exponent();
  if (lo) window_ = Window{*lo, *matrix_.max_exponent()};
}

PeriodicConfig::PeriodicConfig(PrimeField field, std::size_t r, std::size_t period, std::vector<Residue> values)
    : field_(field), r_(r), n_(period), v_(std::move(values)) {
  if (r == 0 || period == 0) throw DomainError("configurations need r >= 1 and period >= 1");
  if (v_.size() != r * period) throw DomainError("configuration needs r * period values");
  for (auto& x : v_) x %= field_.p();
}

PeriodicConfig PeriodicConfig::zero(PrimeField field, std::size_t r, std::size_t period) {
  return PeriodicConfig(field, r, period, std::vector<Residue>(r * period, 0));
}

PeriodicConfig PeriodicConfig::from_cells(PrimeField field, const std::vector<std::vector<std::int64_t>>& cells) {
  if (cells.empty() || cells.front().empty()) throw DomainError("configuration needs at least one nonempty cell");
  const std::size_t r = cells.front().size();
  std::vector<Residue> v;
  for (const auto& c : cells) {
    if (c.size() != r) throw DomainError("all cells must have r entries");
    for (auto x : c) v.push_back(field.reduce(x));
  }
  return PeriodicConfig(field, r, cells.size(), std::move(v));
}

std::span<const Residue> PeriodicConfig::cell(std::int64_t i) const {
  const auto n = static_cast<std::int64_t>(n_);
  std::int64_t k = i % n;
  if (k < 0) k += n;
  return {v_.data() + static_cast<std::size_t>(k) * r_, r_};
}

bool PeriodicConfig::is_zero() const noexcept {
  return std::all_of(v_.begin(), v_.end(), [](Residue x) { return x == 0; });
}

PeriodicConfig PeriodicConfig::lifted(std::size_t k) const {
  std::vector<Residue> v;
  v.reserve(v_.size() * k);
  for (std::size_t i = 0; i < k; ++i) v.insert(v.end(), v_.begin(), v_.end());
  return PeriodicConfig(field_, r_, n_ * k, std::move(v));
}

std::size_t PeriodicConfig::minimal_period() const {
  for (std::size_t d = 1; d < n_; ++d) {
    if (n_ % d != 0) continue;
    bool ok = true;
    for (std::size_t i = 0; ok && i + d < n_; ++i) {
      for (std::size_t b = 0; b < r_; ++b) {
        if (v_[i * r_ + b] != v_[(i + d) * r_ + b]) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return d;
  }
  return n_;
}

namespace {

void require_compatible(const PeriodicConfig& a, const PeriodicConfig& b) {
  if (!(a.field() == b.field()) || a.bands() != b.bands()) throw DomainError("incompatible configurations");
}

template <typename Op>
PeriodicConfig combine(const PeriodicConfig& a, const PeriodicConfig& b, Op op) {
  require_compatible(a, b);
  const std::size_t n = std::lcm(a.period(), b.period());
  const PeriodicConfig x = a.lifted(n / a.period()), y = b.lifted(n / b.period());
  std::vector<Residue> v(x.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(x.values()[i], y.values()[i]);
  return PeriodicConfig(a.field(), a.bands(), n, std::move(v));
}

}  // namespace

PeriodicConfig PeriodicConfig::scaled(Residue s) const {
  std::vector<Residue> v(v_);
  for (auto& x : v) x = field_.mul(x, s);
  return PeriodicConfig(field_, r_, n_, std::move(v));
}

PeriodicConfig operator+(const PeriodicConfig& a, const PeriodicConfig& b) {
  const auto f = a.field_;
  return combine(a, b, [f](Residue x, Residue y) { return f.add(x, y); });
}

PeriodicConfig operator-(const PeriodicConfig& a, const PeriodicConfig& b) {
  const auto f = a.field_;
  return combine(a, b, [f](Residue x, Residue y) { return f.sub(x, y); });
}

bool operator==(const PeriodicConfig& a, const PeriodicConfig& b) {
  if (!(a.field_ == b.field_) || a.r_ != b.r_) return false;
  if (a.n_ == b.n_) return a.v_ == b.v_;
  const std::size_t n = std::lcm(a.n_, b.n_);
  return a.lifted(n / a.n_).v_ == b.lifted(n / b.n_).v_;
}

PeriodicConfig apply(const Rule& rule, const PeriodicConfig& cfg) {
  if (!(rule.field() == cfg.field()) || rule.bands() != cfg.bands()) {
    throw DomainError("rule and configuration disagree on p or r");
  }
  const auto& f = cfg.field();
  const std::size_t r = cfg.bands(), n = cfg.period();
  std::vector<Residue> out(r * n, 0);
  if (!rule.window()) return PeriodicConfig(f, r, n, std::move(out));
  for (std::int64_t j = rule.window()->e_min; j <= rule.window()->e_max; ++j) {
    const auto m = rule.local_matrix(j);
    for (std::size_t i = 0; i < n; ++i) {
      const auto y = cfg.cell(static_cast<std::int64_t>(i) + j);
      for (std::size_t a = 0; a < r; ++a) {
        Residue acc = out[i * r + a];
        for (std::size_t b = 0; b < r; ++b) acc = f.add(acc, f.mul(m[a * r + b], y[b]));
        out[i * r + a] = acc;
      }
    }
  }
  return PeriodicConfig(f, r, n, std::move(out));
}

Rule iterate(const Rule& rule, std::uint64_t n) { return Rule(rule.matrix().pow(n)); }

Rule compose(const Rule& a, const Rule& b) { return Rule(a.matrix() * b.matrix()); }

bool is_one_sided(const Rule& rule) { return !rule.window() || rule.window()->e_min >= 0; }

Rule companion(const std::vector<LaurentMatrix>& blocks) {
  if (blocks.empty()) throw DomainError("companion needs at least one block");
  const auto field = blocks.front().field();
  const std::size_t r = blocks.front().dim(), s = blocks.size();
  for (const auto& b : blocks) {
    if (!(b.field() == field) || b.dim() != r) throw DomainError("companion blocks must share p and r");
  }
  std::vector<LaurentPoly> e(r * s * r * s, LaurentPoly(field));
  const std::size_t dim = r * s;
  for (std::size_t blk = 0; blk < s; ++blk) {
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) e[i * dim + blk * r + j] = blocks[blk](i, j);
    }
  }
  for (std::size_t blk = 1; blk < s; ++blk) {
    for (std::size_t i = 0; i < r; ++i) e[(blk * r + i) * dim + (blk - 1) * r + i] = LaurentPoly::constant(field, 1);
  }
  return Rule(LaurentMatrix(field, dim, std::move(e)));
}

PeriodicConfig shift_by(const PeriodicConfig& cfg, std::int64_t k) {
  const std::size_t r = cfg.bands(), n = cfg.period();
  std::vector<Residue> out(r * n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto src = cfg.cell(static_cast<std::int64_t>(i) + k);
    std::copy(src.begin(), src.end(), out.begin() + static_cast<std::ptrdiff_t>(i * r));
  }
  return PeriodicConfig(cfg.field(), r, n, std::move(out));
}

FpMatrix transition_matrix(const Rule& rule, std::size_t period) {
  const auto& f = rule.field();
  const std::size_t r = rule.bands(), n = period;
  FpMatrix t(f, r * n, r * n);
  if (!rule.window()) return t;
  const auto nn = static_cast<std::int64_t>(n);
  for (std::int64_t j = rule.window()->e_min; j <= rule.window()->e_max; ++j) {
    const auto m = rule.local_matrix(j);
    std::int64_t shift = j % nn;
    if (shift < 0) shift += nn;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t src = (i + static_cast<std::size_t>(shift)) % n;
      for (std::size_t a = 0; a < r; ++a) {
        for (std::size_t b = 0; b < r; ++b) {
          auto& slot = t(i * r + a, src * r + b);
          slot = f.add(slot, m[a * r + b]);
        }
      }
    }
  }
  return t;
}

std::size_t fixed_configs_dimension(const Rule& rule, std::uint64_t n, std::size_t period) {
  const FpMatrix t = transition_matrix(iterate(rule, n), period);
  return (t - FpMatrix::identity(rule.field(), t.rows())).nullity();
}

Rule random_rule(const RandomRuleShape& shape, std::mt19937_64& rng) {
  const PrimeField f(shape.p);
  std::uniform_int_distribution<std::int64_t> val_dist(shape.min_exp, shape.max_exp);
  std::uniform_int_distribution<std::int64_t> coef_dist(0, shape.p - 1);
  std::vector<LaurentPoly> e;
  for (std::size_t k = 0; k < shape.bands * shape.bands; ++k) {
    const std::int64_t lo = val_dist(rng);
    std::uniform_int_distribution<std::int64_t> span_dist(0, std::min(shape.max_span, shape.max_exp - lo));
    const std::int64_t span = span_dist(rng);
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    for (std::int64_t d = 0; d <= span; ++d) terms.emplace_back(lo + d, coef_dist(rng));
    e.push_back(LaurentPoly::from_terms(f, terms));
  }
  return Rule(LaurentMatrix(f, shape.bands, std::move(e)));
}

PeriodicConfig random_config(PrimeField field, std::size_t r, std::size_t period, std::mt19937_64& rng) {
  std::uniform_int_distribution<Residue> dist(0, field.p() - 1);
  std::vector<Residue> v(r * period);
  for (auto& x : v) x = dist(rng);
  return PeriodicConfig(field, r, period, std::move(v));
}

}  // namespace mlca
