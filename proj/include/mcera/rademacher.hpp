#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mcera {

// n rows of m i.i.d. uniform signs, bit-packed (set bit = +1). Rows are
// independent streams of one mt19937_64 generator, so the whole matrix is a
// pure function of (m, n, seed). The padding bits of the last word in each
// row are zero.
class RademacherMatrix {
 public:
  RademacherMatrix(std::size_t m, std::size_t n, std::uint64_t seed);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t words_per_row() const { return stride_; }

  // sum_i sigma_{j,i} = 2*popcount(row j) - m.
  std::int64_t row_sum(std::size_t j) const { return row_sums_[j]; }
  const std::vector<std::int64_t>& row_sums() const { return row_sums_; }

  int sign(std::size_t j, std::size_t i) const;  // +1 or -1

  // Number of +1 signs row j assigns to the given transaction indices.
  // Indices must be < m (checked); duplicates are counted twice.
  std::size_t pos_count(std::size_t j,
                        const std::vector<std::uint32_t>& tids) const;

  const std::uint64_t* row_words(std::size_t j) const {
    return bits_.data() + j * stride_;
  }

  // Debug dump: one line per row of space-separated +1/-1.
  void dump(std::ostream& out) const;

 private:
  std::size_t m_, n_, stride_;
  std::uint64_t seed_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::int64_t> row_sums_;
};

}  // namespace mcera
