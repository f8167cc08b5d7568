#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mcera/dataset.hpp"
#include "mcera/rademacher.hpp"

namespace mcera {

// Itemsets over the dataset alphabet, ordered by inclusion. Each node carries
// its sorted tid-list, so support and per-row sign counts are exact. The
// enumeration is canonical: a node is extended only with items larger than
// its maximum item, so every itemset is generated exactly once.
struct Pattern {
  std::vector<std::uint32_t> items;  // strictly increasing
};

struct PatternNode {
  Pattern pattern;
  std::vector<std::uint32_t> tidlist;  // strictly increasing transaction ids
  std::uint32_t support = 0;           // == tidlist.size()
};

struct DiscrepancyStats {
  std::int64_t discrepancy;  // 2*pos - support: the row's signed sum
  std::int64_t pos;          // count of +1 signs on the tid-list
  std::int64_t support;
};

// The unique minimal node: the empty itemset, covering every transaction.
// With m == 0 it degenerates to support 0.
PatternNode lattice_root(const SampleDataset& ds);

// All canonical one-item extensions (every alphabet item above the node's
// maximum item), including zero-support children. Order: increasing item.
std::vector<PatternNode> lattice_children(const PatternNode& node,
                                          const SampleDataset& ds);

// (discrepancy, pos, support) of the node under sign row j.
DiscrepancyStats node_discrepancy_stats(const PatternNode& node,
                                        const RademacherMatrix& mat,
                                        std::size_t j);

// All non-empty itemsets with support/m >= min_freq, in canonical order.
// Anti-monotonicity of support makes the subtree prune exact.
std::vector<PatternNode> frequent_patterns(const SampleDataset& ds,
                                           double min_freq);

}  // namespace mcera
