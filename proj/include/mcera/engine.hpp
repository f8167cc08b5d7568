#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mcera/dataset.hpp"
#include "mcera/rademacher.hpp"

namespace mcera {

enum class TraversalOrder { support_desc, bfs };
enum class KernelMode { parallel, serial };

struct EngineConfig {
  TraversalOrder order = TraversalOrder::support_desc;
  // Whether the empty itemset (constant-1 function) belongs to the family
  // whose suprema are taken. Mining families exclude it.
  bool include_root_in_sup = false;
  // Family restriction: only itemsets with support/m strictly below this
  // frequency contribute to the suprema. Everything is still traversed
  // (supersets of a frequent itemset can be restricted-family members).
  std::optional<double> restrict_freq_below;
  // Truncated traversal: process this many nodes in best-first support
  // order, then keep processing only while the support ties the last node
  // inside the budget, so the processed set is a deterministic prefix of the
  // support-ordered stream. Requires support_desc order.
  std::optional<std::uint64_t> max_nodes;
  // Frequency floor: traverse only nodes with support/m >= beta_floor.
  std::optional<double> beta_floor;
  KernelMode kernels = KernelMode::parallel;
  // Record every processed node with per-row sign counts (all rows).
  bool trace = false;
};

struct TraceEntry {
  std::uint64_t node_id = 0;      // 0 is the root
  std::int64_t parent_id = -1;    // -1 for the root
  std::vector<std::uint32_t> items;
  std::uint32_t support = 0;
  std::vector<std::uint32_t> pos;  // +1 count per sign row, all n rows
};

struct McEraResult {
  // Raw per-row suprema nu_j = sup over the admitted family of the signed
  // support sum (an integer in [-m, m]); -m when nothing was admitted.
  std::vector<std::int64_t> nu_raw;
  double mcera = 0.0;              // sum(nu_raw) / (n*m)
  double centralized_mcera = 0.0;  // MCERA of the family shifted by -1/2
  std::uint64_t nodes_explored = 0;
  double elapsed_seconds = 0.0;
  bool truncated = false;        // max_nodes budget was hit
  double beta_effective = 0.0;   // support/m of the last processed node when
                                 // truncated; else the beta_floor (or 0)
  bool empty_family = false;     // no node passed the admission filters
  std::vector<TraceEntry> trace;
};

// Exact n-MCERA of the itemset-indicator family by best-first traversal of
// the canonical pattern lattice with per-row discrepancy pruning: row j stays
// live for a subtree only while the subtree's support can still beat nu_j.
// The result is a pure function of (ds, mat, cfg) and independent of the
// kernel mode and thread count.
McEraResult get_n_mcera(const SampleDataset& ds, const RademacherMatrix& mat,
                        const EngineConfig& cfg);

// True iff every non-root entry appears after its parent.
bool verify_parent_first_order(const std::vector<TraceEntry>& trace);

}  // namespace mcera
