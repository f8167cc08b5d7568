#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mcera/dataset.hpp"
#include "mcera/engine.hpp"
#include "mcera/lattice.hpp"
#include "mcera/rademacher.hpp"

namespace mcera {

// Reference implementations by exhaustive enumeration, sharing no code with
// the traversal engine. Everything here is integer arithmetic over explicit
// subset bitmasks, so the answers are exact.

// Per-row suprema of the signed support sum over all itemsets (the empty set
// included only when include_root). Refuses alphabets wider than 15 items.
std::vector<std::int64_t> brute_nu(const SampleDataset& ds,
                                   const RademacherMatrix& mat,
                                   bool include_root);

// Per-row suprema of sum_i sigma_{j,i} (2 f(s_i) - 1): the centralized
// numerators; the centralized MCERA is their sum over 2 n m.
std::vector<std::int64_t> brute_centered_numerators(
    const SampleDataset& ds, const RademacherMatrix& mat, bool include_root);

double brute_mcera(const SampleDataset& ds, const RademacherMatrix& mat,
                   bool include_root);
double brute_centralized_mcera(const SampleDataset& ds,
                               const RademacherMatrix& mat,
                               bool include_root);

// Planted-truth generator: items drawn independently, so every itemset's
// true frequency is the product of its item probabilities.
struct GroundTruth {
  std::vector<double> item_probs;  // item id k+1 has probability item_probs[k]

  // Alphabet is always the full item set, even if a draw misses items.
  SampleDataset generate(std::size_t m, std::uint64_t seed) const;
  double true_frequency(const Pattern& p) const;
};

// Every emitted pattern truly has frequency >= theta.
bool check_no_false_positives(const std::vector<Pattern>& emitted,
                              const GroundTruth& truth, double theta);

// Trace invariants: per node/row, discrepancy <= pos count <= support, and
// both pos count and support never grow from parent to child.
bool check_bound_chain(const std::vector<TraceEntry>& trace);

struct OracleCheckResult {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;  // empty when all passed
  bool passed() const { return failures == 0; }
};

// Randomized equivalence suite: small datasets, every traversal order and
// root convention, engine vs. enumeration, plus trace and centralization
// identities. Deterministic in (seed, instances).
OracleCheckResult run_oracle_suite(std::uint64_t seed, std::size_t instances);

}  // namespace mcera
