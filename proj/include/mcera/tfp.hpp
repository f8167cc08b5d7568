#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mcera/dataset.hpp"
#include "mcera/engine.hpp"
#include "mcera/lattice.hpp"
#include "mcera/rademacher.hpp"

namespace mcera {

// True-frequent-pattern mining with familywise error control: emit itemsets
// whose sample frequency clears theta by a data-dependent margin epsilon-hat,
// shrinking the margin by re-bounding the deviation of the not-yet-emitted
// family until the emitted set stabilizes. With probability >= 1 - delta over
// the sample, every emitted itemset has true frequency >= theta.
struct TfpConfig {
  double theta = 0.5;  // in (0, 1)
  double delta = 0.1;  // in (0, 1)
  std::size_t n = 1;   // sign rows
  std::uint64_t seed = 0;  // sign-matrix seed (ignored when one is supplied)
  KernelMode kernels = KernelMode::parallel;
};

struct TfpResult {
  std::vector<Pattern> patterns;      // canonical order
  std::vector<double> frequencies;    // sample frequencies of `patterns`
  std::vector<double> epsilon_trace;  // one margin per refinement round
  double final_epsilon = 0.0;         // infinite if no round completed
  double final_threshold = 0.0;       // theta + final_epsilon
  double last_mcera = 0.0;  // centralized MCERA of the last engine run
  std::uint32_t iterations = 0;
  std::uint64_t nodes_explored_total = 0;
  bool empty_family_stop = false;
};

// Signs are drawn exactly once, before the first round; the refinement
// rounds re-run the pruned traversal against the same matrix with the
// not-yet-emitted family restriction.
TfpResult mine_true_frequent(const SampleDataset& ds,
                             const RademacherMatrix& mat,
                             const TfpConfig& cfg);
TfpResult mine_true_frequent(const SampleDataset& ds, const TfpConfig& cfg);

// One-shot deterministic baseline: the same mining rule with the margin from
// the counting (Massart) bound instead of the MCERA chain.
TfpResult mine_true_frequent_massart(const SampleDataset& ds, double theta,
                                     double delta);

}  // namespace mcera
