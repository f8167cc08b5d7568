#include "mcera/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace mcera {

PatternNode lattice_root(const SampleDataset& ds) {
  PatternNode root;
  root.tidlist.resize(ds.transactions.size());
  for (std::size_t i = 0; i < root.tidlist.size(); ++i)
    root.tidlist[i] = static_cast<std::uint32_t>(i);
  root.support = static_cast<std::uint32_t>(root.tidlist.size());
  return root;
}

std::vector<PatternNode> lattice_children(const PatternNode& node,
                                          const SampleDataset& ds) {
  const std::uint32_t max_item =
      node.pattern.items.empty() ? 0 : node.pattern.items.back();
  // Alphabet positions strictly above the node's maximum item.
  auto first = node.pattern.items.empty()
                   ? ds.alphabet.begin()
                   : std::upper_bound(ds.alphabet.begin(), ds.alphabet.end(),
                                      max_item);
  const std::size_t n_ext =
      static_cast<std::size_t>(ds.alphabet.end() - first);
  std::vector<PatternNode> children(n_ext);
  for (std::size_t k = 0; k < n_ext; ++k) {
    children[k].pattern.items = node.pattern.items;
    children[k].pattern.items.push_back(first[k]);
  }
  // One pass over the parent's transactions buckets each tid into the
  // children whose extension item it contains (a merged tid-list
  // intersection without an item index).
  for (std::uint32_t tid : node.tidlist) {
    const auto& t = ds.transactions[tid];
    auto it = node.pattern.items.empty()
                  ? t.begin()
                  : std::upper_bound(t.begin(), t.end(), max_item);
    for (; it != t.end(); ++it) {
      const auto pos = std::lower_bound(first, ds.alphabet.end(), *it);
      if (pos != ds.alphabet.end() && *pos == *it)
        children[static_cast<std::size_t>(pos - first)].tidlist.push_back(tid);
    }
  }
  for (auto& c : children)
    c.support = static_cast<std::uint32_t>(c.tidlist.size());
  return children;
}

DiscrepancyStats node_discrepancy_stats(const PatternNode& node,
                                        const RademacherMatrix& mat,
                                        std::size_t j) {
  const std::int64_t pos =
      static_cast<std::int64_t>(mat.pos_count(j, node.tidlist));
  const std::int64_t supp = static_cast<std::int64_t>(node.support);
  return DiscrepancyStats{2 * pos - supp, pos, supp};
}

namespace {

void collect_frequent(const PatternNode& node, const SampleDataset& ds,
                      double min_freq, double m,
                      std::vector<PatternNode>& out) {
  for (auto& child : lattice_children(node, ds)) {
    const double freq = m > 0 ? static_cast<double>(child.support) / m : 0.0;
    if (freq < min_freq) continue;  // support is anti-monotone: prune subtree
    collect_frequent(child, ds, min_freq, m, out);
    out.push_back(std::move(child));
  }
}

}  // namespace

std::vector<PatternNode> frequent_patterns(const SampleDataset& ds,
                                           double min_freq) {
  std::vector<PatternNode> out;
  collect_frequent(lattice_root(ds), ds, min_freq,
                   static_cast<double>(ds.transactions.size()), out);
  std::sort(out.begin(), out.end(), [](const PatternNode& a,
                                       const PatternNode& b) {
    return a.pattern.items < b.pattern.items;
  });
  return out;
}

}  // namespace mcera
