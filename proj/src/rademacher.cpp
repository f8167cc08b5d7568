#include "mcera/rademacher.hpp"

#include <bit>
#include <ostream>
#include <random>
#include <stdexcept>

namespace mcera {

RademacherMatrix::RademacherMatrix(std::size_t m, std::size_t n,
                                   std::uint64_t seed)
    : m_(m), n_(n), stride_((m + 63) / 64), seed_(seed) {
  if (m == 0 || n == 0)
    throw std::invalid_argument("sign matrix needs m >= 1 and n >= 1");
  std::mt19937_64 gen(seed);
  bits_.resize(n_ * stride_);
  row_sums_.resize(n_);
  const std::uint64_t tail_mask =
      (m_ % 64) ? ((std::uint64_t{1} << (m_ % 64)) - 1) : ~std::uint64_t{0};
  for (std::size_t j = 0; j < n_; ++j) {
    std::uint64_t* row = bits_.data() + j * stride_;
    std::int64_t pos = 0;
    for (std::size_t w = 0; w < stride_; ++w) {
      std::uint64_t word = gen();
      if (w + 1 == stride_) word &= tail_mask;
      row[w] = word;
      pos += std::popcount(word);
    }
    row_sums_[j] = 2 * pos - static_cast<std::int64_t>(m_);
  }
}

int RademacherMatrix::sign(std::size_t j, std::size_t i) const {
  if (j >= n_ || i >= m_) throw std::out_of_range("sign index out of range");
  const std::uint64_t word = bits_[j * stride_ + i / 64];
  return (word >> (i % 64)) & 1 ? +1 : -1;
}

std::size_t RademacherMatrix::pos_count(
    std::size_t j, const std::vector<std::uint32_t>& tids) const {
  if (j >= n_) throw std::out_of_range("row index out of range");
  const std::uint64_t* row = bits_.data() + j * stride_;
  std::size_t count = 0;
  for (std::uint32_t i : tids) {
    if (i >= m_) throw std::out_of_range("transaction index out of range");
    count += (row[i / 64] >> (i % 64)) & 1;
  }
  return count;
}

void RademacherMatrix::dump(std::ostream& out) const {
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (i) out << ' ';
      out << (sign(j, i) > 0 ? "+1" : "-1");
    }
    out << '\n';
  }
}

}  // namespace mcera
