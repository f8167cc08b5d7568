#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mcera/rademacher.hpp"

using mcera::RademacherMatrix;

TEST_CASE("the matrix is a pure function of (m, n, seed)") {
  RademacherMatrix a(100, 4, 9);
  RademacherMatrix b(100, 4, 9);
  RademacherMatrix c(100, 4, 10);
  bool same = true, differs = false;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 100; ++i) {
      same = same && a.sign(j, i) == b.sign(j, i);
      differs = differs || a.sign(j, i) != c.sign(j, i);
    }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("degenerate dimensions are rejected") {
  CHECK_THROWS_AS(RademacherMatrix(0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(RademacherMatrix(1, 0, 0), std::invalid_argument);
}

TEST_CASE("row sums match the entries and have the parity of m") {
  for (std::size_t m : {1, 63, 64, 65, 130}) {
    RademacherMatrix mat(m, 3, 0xabcdef);
    for (std::size_t j = 0; j < 3; ++j) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const int sg = mat.sign(j, i);
        CHECK((sg == 1 || sg == -1));
        s += sg;
      }
      CHECK(mat.row_sum(j) == s);
      CHECK(std::llabs(mat.row_sum(j)) % 2 ==
            static_cast<std::int64_t>(m % 2));
    }
    CHECK(mat.row_sums().size() == 3);
  }
}

TEST_CASE("pos_count agrees with sign() and counts duplicates twice") {
  RademacherMatrix mat(10, 2, 5);
  const std::vector<std::uint32_t> tids{0, 3, 7};
  for (std::size_t j = 0; j < 2; ++j) {
    std::size_t expect = 0;
    for (auto t : tids) expect += (mat.sign(j, t) == 1);
    CHECK(mat.pos_count(j, tids) == expect);
  }
  const std::vector<std::uint32_t> dup{3, 3};
  const std::size_t once = mat.pos_count(0, {3});
  CHECK(mat.pos_count(0, dup) == 2 * once);
  CHECK(mat.pos_count(0, {}) == 0);
}

TEST_CASE("pos_count rejects out-of-range transaction ids") {
  RademacherMatrix mat(10, 1, 5);
  CHECK_THROWS_AS(mat.pos_count(0, {10}), std::out_of_range);
  CHECK_THROWS_AS(mat.pos_count(1, {0}), std::out_of_range);
}

TEST_CASE("signs are balanced and row sums concentrate") {
  // +1 frequency over 10^5 draws: a 6-sigma band is ~ +-0.0095.
  RademacherMatrix wide(100000, 1, 123);
  const double plus_share =
      (static_cast<double>(wide.row_sum(0)) + 100000.0) / 2.0 / 100000.0;
  CHECK(plus_share > 0.49);
  CHECK(plus_share < 0.51);

  // |sum of 10^4 signs| exceeds 4*sqrt(m) = 400 with prob < 10^-4 per row.
  RademacherMatrix tall(10000, 20, 321);
  for (std::size_t j = 0; j < 20; ++j)
    CHECK(std::llabs(tall.row_sum(j)) <= 400);
}

TEST_CASE("padding bits of the last word are zero") {
  RademacherMatrix mat(70, 2, 77);  // 6 pad bits in word 1
  REQUIRE(mat.words_per_row() == 2);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK((mat.row_words(j)[1] >> 6) == 0);
}

TEST_CASE("dump prints one +1/-1 line per row") {
  RademacherMatrix mat(3, 2, 1);
  std::ostringstream os;
  mat.dump(os);
  std::istringstream is(os.str());
  std::string line;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    std::size_t cols = 0;
    while (ls >> tok) {
      CHECK((tok == "+1" || tok == "-1"));
      CHECK(tok == (mat.sign(rows, cols) == 1 ? "+1" : "-1"));
      ++cols;
    }
    CHECK(cols == 3);
    ++rows;
  }
  CHECK(rows == 2);
}
