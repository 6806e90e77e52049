#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlca/automaton.hpp"
#include "mlca/finite_field.hpp"

namespace mlca {

// A normal generator alpha of F_{p^N_max} together with its relative traces
// alpha_N = tr_{N_max,N}(alpha), one for every divisor N of N_max. The traces
// are trace-compatible by construction and each is checked to be a normal
// generator of its subfield.
struct GeneratorChain {
  ExtFieldPtr top_field;
  ExtElem alpha;
  std::map<std::size_t, ExtElem> alpha_at;
  std::uint64_t seed = 0;
  // w_k = tr(alpha x^k): the functional y -> tr(alpha y) on the power basis.
  std::vector<Residue> trace_form;

  std::size_t n_max() const noexcept { return top_field->degree(); }
};

// Throws InconsistencyError if some alpha_N fails to be normal.
GeneratorChain build_chain(std::uint32_t p, std::size_t n_max, std::uint64_t seed);

// tr(alpha y) as a residue.
Residue alpha_trace(const GeneratorChain& chain, const ExtElem& y);

// The period-N configuration whose cell j is (tr(alpha x_i^{p^j}))_i.
// Throws DomainError unless N | N_max and every x_i lies in F_{p^N}.
PeriodicConfig iota(const GeneratorChain& chain, const std::vector<ExtElem>& x, std::size_t period);

// x -> sum_j m_j F^j(x), with F the entrywise Frobenius.
std::vector<ExtElem> apply_sigma(const Rule& rule, const std::vector<ExtElem>& x);

struct VerifyOptions {
  std::uint64_t exhaustive_bound = 4096;  // enumerate F_{p^N}^r when p^{rN} is at most this
  std::size_t samples = 64;               // random checks otherwise
  std::uint64_t sample_seed = 1;
};

struct TheoremReport {
  std::size_t period = 0;
  std::uint64_t iterate = 0;
  bool exhaustive = false;
  bool additivity = true;
  bool injectivity = true;
  bool equivariance = true;
  bool image = true;
  bool intertwining = true;  // iota(sigma x) = g(iota x)
  bool fixed_points = true;
  std::size_t field_fixed_log = 0;     // log_p #{x in F_{p^N}^r : sigma^n x = x}
  std::size_t sequence_fixed_log = 0;  // log_p #{period | N : g^n y = y}
  std::vector<std::string> witnesses;  // one line per failed check

  bool passed() const noexcept {
    return additivity && injectivity && equivariance && image && intertwining && fixed_points;
  }
};

TheoremReport verify_theorem_main(const GeneratorChain& chain, const Rule& rule, std::uint64_t n, std::size_t period,
                                  const VerifyOptions& options = {});

// iota(F^k x) = shift_by(iota(x), k).
bool verify_galois_shift(const GeneratorChain& chain, const std::vector<ExtElem>& x, std::size_t period, std::int64_t k);

// All elements of F_{p^N} inside the top field, in a fixed order.
std::vector<ExtElem> subfield_elements(const ExtFieldPtr& field, std::size_t sub_degree);

}  // namespace mlca
