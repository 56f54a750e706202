#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace bptrack {

// Probabilistic data association between K tracked objects and M measurements
// by belief propagation on the bipartite consistency graph.
//
// Object-side variables a_k in {0..M} (0 = undetected), measurement-side
// variables b_m in {0..K} (0 = not caused by a tracked object). A pairing is
// consistent when a_k = m iff b_m = k.

struct AssocInput {
  // beta[k][a], K rows, each of length M+1; row k is the unnormalized prior on
  // a_k. Every row needs at least one positive entry.
  std::vector<std::vector<double>> beta;
  // xi0[m] is the unnormalized weight of b_m = 0; the weights of b_m = k >= 1
  // are all 1 by convention.
  std::vector<double> xi0;
};

struct AssocOutput {
  // eta[k][a]: product over measurements of the final object-bound messages.
  // Rows are normalized to sum 1 (downstream use is scale invariant).
  std::vector<std::vector<double>> eta;
  // varsigma[m][b], length K+1, normalized the same way.
  std::vector<std::vector<double>> varsigma;
  int iterations = 0;  // iterations actually executed
};

// Loopy BP with damped-free parallel updates. Messages start flat, each
// object-bound message is renormalized every sweep, and the sweep loop stops
// when the largest message change drops below tol or after max_iter sweeps.
// Exact on trees (K <= 1 or M <= 1). Throws std::invalid_argument on negative
// or non-finite entries, ragged rows, or an all-zero beta row.
AssocOutput run_association(const AssocInput& in, int max_iter, double tol);

// Exact marginals by enumerating all consistent association maps; weight of a
// map is prod_k beta[k][a_k] * prod_{m unassigned} xi0[m]. Factorial in
// min(K, M); intended for validation. Returns (a-marginals, b-marginals),
// rows normalized. Throws std::invalid_argument when every map has weight 0.
std::pair<std::vector<std::vector<double>>, std::vector<std::vector<double>>>
exact_association_marginals(const AssocInput& in);

// Posterior association marginals from a BP result: p(a_k) proportional to
// beta[k][a] * eta[k][a], rows normalized. Provided for tests and bindings.
std::vector<std::vector<double>> association_marginals(const AssocInput& in,
                                                       const AssocOutput& out);

}  // namespace bptrack
