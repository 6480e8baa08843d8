#include "fwn/linalg.hpp"

#include <utility>

namespace fwn {

std::size_t bareiss_rank(IntMatrix a) {
  const std::size_t rows = a.size();
  if (rows == 0) return 0;
  const std::size_t cols = a.front().size();
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        a[r][c] = a[rank][col] * a[r][c] - a[r][col] * a[rank][c];
        mpz_divexact(a[r][c].get_mpz_t(), a[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::size_t exact_rank(const RationalMatrix& a) {
  IntMatrix m;
  m.reserve(a.size());
  for (const auto& row : a) {
    mpz_class scale = 1;
    for (const auto& v : row) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
    std::vector<mpz_class> out;
    out.reserve(row.size());
    for (const auto& v : row) out.emplace_back(v.get_num() * (scale / v.get_den()));
    m.push_back(std::move(out));
  }
  return bareiss_rank(std::move(m));
}

}  // namespace fwn
