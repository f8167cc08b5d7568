#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mcera {

// A bag of transactions over a fixed item alphabet. Transactions are sorted,
// duplicate-free item-id vectors; the alphabet is the sorted set of items the
// pattern family is built over. The alphabet may be wider than the union of
// the transactions (e.g. a resample that happens to miss an item still ranges
// over the source alphabet).
struct SampleDataset {
  std::vector<std::vector<std::uint32_t>> transactions;
  std::vector<std::uint32_t> alphabet;

  std::size_t size() const { return transactions.size(); }
};

struct DatasetStats {
  std::size_t m = 0;
  std::size_t alphabet_size = 0;
  double avg_transaction_len = 0.0;
  std::size_t max_transaction_len = 0;
  // ln(sum_i 2^{|s_i|}): log of the pattern-support weight used by the
  // length-tail bound. -inf when m == 0.
  double log_pattern_bound = 0.0;
};

// Normalizes raw transactions (sort + dedup each) and sets the alphabet to
// their union.
SampleDataset from_transactions(std::vector<std::vector<std::uint32_t>> raw);

// FIMI format: one transaction per line, space-separated non-negative item
// ids; blank lines are skipped. Parse errors report the 1-based line number.
SampleDataset load_fimi(const std::string& path);

// Writes FIMI. Empty transactions are not representable (a blank line is
// skipped on load), so they are rejected rather than silently dropped.
void save_fimi(const SampleDataset& ds, const std::string& path);

// m i.i.d. draws with replacement. The alphabet of the result is the source
// alphabet (the pattern family does not shrink when a resample misses items).
// Deterministic in (ds, size, seed). size == 0 gives an empty sample; a
// nonzero size from an empty dataset is an error.
SampleDataset sample_with_replacement(const SampleDataset& ds,
                                      std::size_t size, std::uint64_t seed);

// log_pattern_bound is computed with a log-sum-exp so it cannot overflow for
// long transactions.
DatasetStats compute_stats(const SampleDataset& ds);

// Largest item support; bounds the support of every non-empty itemset.
std::int64_t max_singleton_support(const SampleDataset& ds);

}  // namespace mcera
