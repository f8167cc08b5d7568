#include "mcera/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mcera/rng.hpp"

namespace mcera {

SampleDataset from_transactions(std::vector<std::vector<std::uint32_t>> raw) {
  SampleDataset ds;
  ds.transactions = std::move(raw);
  for (auto& t : ds.transactions) {
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    ds.alphabet.insert(ds.alphabet.end(), t.begin(), t.end());
  }
  std::sort(ds.alphabet.begin(), ds.alphabet.end());
  ds.alphabet.erase(std::unique(ds.alphabet.begin(), ds.alphabet.end()),
                    ds.alphabet.end());
  return ds;
}

SampleDataset load_fimi(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  std::vector<std::vector<std::uint32_t>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::uint32_t> items;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": non-integer token '" + tok + "'");
      if (v < 0)
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": negative item id " + std::to_string(v));
      if (v > std::numeric_limits<std::uint32_t>::max())
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": item id out of range " + tok);
      items.push_back(static_cast<std::uint32_t>(v));
    }
    if (!items.empty()) raw.push_back(std::move(items));
  }
  return from_transactions(std::move(raw));
}

void save_fimi(const SampleDataset& ds, const std::string& path) {
  for (std::size_t i = 0; i < ds.transactions.size(); ++i)
    if (ds.transactions[i].empty())
      throw std::runtime_error(
          "FIMI cannot represent the empty transaction at index " +
          std::to_string(i));
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  for (const auto& t : ds.transactions) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) out << ' ';
      out << t[k];
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

SampleDataset sample_with_replacement(const SampleDataset& ds,
                                      std::size_t size, std::uint64_t seed) {
  SampleDataset out;
  out.alphabet = ds.alphabet;
  if (size == 0) return out;
  if (ds.transactions.empty())
    throw std::invalid_argument("cannot sample from an empty dataset");
  std::mt19937_64 gen(seed);
  out.transactions.reserve(size);
  for (std::size_t k = 0; k < size; ++k) {
    const std::uint64_t idx = uniform_below(gen, ds.transactions.size());
    out.transactions.push_back(ds.transactions[idx]);
  }
  return out;
}

DatasetStats compute_stats(const SampleDataset& ds) {
  DatasetStats st;
  st.m = ds.transactions.size();
  st.alphabet_size = ds.alphabet.size();
  if (st.m == 0) {
    st.log_pattern_bound = -std::numeric_limits<double>::infinity();
    return st;
  }
  std::size_t total = 0;
  std::size_t max_len = 0;
  for (const auto& t : ds.transactions) {
    total += t.size();
    max_len = std::max(max_len, t.size());
  }
  st.avg_transaction_len = static_cast<double>(total) /
                           static_cast<double>(st.m);
  st.max_transaction_len = max_len;
  // ln(sum 2^{len_i}) = ln2*max_len + ln(sum 2^{len_i - max_len})
  double acc = 0.0;
  const double ln2 = std::log(2.0);
  for (const auto& t : ds.transactions)
    acc += std::exp(ln2 * (static_cast<double>(t.size()) -
                           static_cast<double>(max_len)));
  st.log_pattern_bound = ln2 * static_cast<double>(max_len) + std::log(acc);
  return st;
}

std::int64_t max_singleton_support(const SampleDataset& ds) {
  std::vector<std::int64_t> counts(ds.alphabet.size(), 0);
  for (const auto& t : ds.transactions)
    for (std::uint32_t it : t) {
      const auto pos = std::lower_bound(ds.alphabet.begin(),
                                        ds.alphabet.end(), it) -
                       ds.alphabet.begin();
      ++counts[static_cast<std::size_t>(pos)];
    }
  std::int64_t best = 0;
  for (std::int64_t cnt : counts) best = std::max(best, cnt);
  return best;
}

}  // namespace mcera
