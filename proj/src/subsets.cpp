#include "fwn/subsets.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fwn {

int shuffle_sign(Mask a, Mask b) {
  // For every y in b, count the elements of a above it.
  int inversions = 0;
  Mask rest = b;
  while (rest != 0) {
    const int y = std::countr_zero(rest);
    rest &= rest - 1;
    const Mask above = y >= 31 ? Mask{0} : (~Mask{0} << (y + 1));
    inversions += popcount(a & above);
  }
  return (inversions & 1) ? -1 : 1;
}

namespace {
void collect(int d, int k, int start, Mask acc, std::vector<Mask>& out) {
  if (k == 0) {
    out.push_back(acc);
    return;
  }
  for (int i = start; i <= d - k; ++i) collect(d, k - 1, i + 1, acc | (Mask{1} << i), out);
}
}  // namespace

std::vector<Mask> subsets_of_size(int d, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > d) return out;
  collect(d, k, 0, 0, out);
  return out;
}

bool basis_less(Mask a, Mask b) {
  const int pa = popcount(a);
  const int pb = popcount(b);
  if (pa != pb) return pa < pb;
  // Lexicographic on ascending mode lists: compare the lowest differing bit.
  // Whoever owns it has the smaller list at that position.
  const Mask diff = a ^ b;
  if (diff == 0) return false;
  const Mask low = diff & (~diff + 1);
  return (a & low) != 0;
}

std::vector<int> modes_of(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(std::span<const int> modes, int d) {
  Mask m = 0;
  for (int i : modes) {
    if (i < 0 || i >= d) throw std::out_of_range("mode index " + std::to_string(i + 1) + " outside 1.." + std::to_string(d));
    const Mask bit = Mask{1} << i;
    if (m & bit) throw std::invalid_argument("repeated mode index " + std::to_string(i + 1));
    m |= bit;
  }
  return m;
}

int permutation_sign(std::span<const int> tuple) {
  const auto n = tuple.size();
  int inversions = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (tuple[i] == tuple[j]) return 0;
      if (tuple[i] > tuple[j]) ++inversions;
    }
  }
  return (inversions & 1) ? -1 : 1;
}

bool tuple_mask(std::span<const int> tuple, Mask& out) {
  Mask m = 0;
  for (int i : tuple) {
    const Mask bit = Mask{1} << i;
    if (m & bit) return false;
    m |= bit;
  }
  out = m;
  return true;
}

}  // namespace fwn
