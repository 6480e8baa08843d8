#pragma once

// Fock expansion of operators on the truncated Fock space.
//
// For an even-to-even operator the symbol data are the matrix elements
//   K_{l,m}[I, J] = <<Xi e_J, e_I>>,  |I| = 2l, |J| = 2m,
// stored as AltBlockTensor coefficients, so <K_{l,m}, psi (x) phi> =
// <<Xi phi, psi>> / ((2l)! (2m)!). The kernels kappa_{l,m} are recovered from
//   K[I, J] = sum over even S in I n J of sign(S, I\S) sign(S, J\S) kappa[I\S, J\S]
// either by recursion in increasing min(l, m), or in closed form through
// compositions of k.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fwn/contract.hpp"
#include "fwn/fock.hpp"
#include "fwn/kernelop.hpp"
#include "fwn/operator_matrix.hpp"
#include "fwn/scalar.hpp"
#include "fwn/subsets.hpp"

namespace fwn {

using Order = std::pair<int, int>;

template <Scalar T>
struct KernelFamily {
  int dim = 1;
  std::map<Order, KernelDistribution<T>> terms;
  std::optional<WedgeTensor<T>> left_W;
  std::optional<WedgeTensor<T>> right_W;

  explicit KernelFamily(int d) : dim(d) {}

  bool is_zero() const {
    for (const auto& [lm, k] : terms)
      if (!k.is_zero()) return false;
    return true;
  }

  /// Drops all-zero terms.
  void prune() {
    for (auto it = terms.begin(); it != terms.end();) it = it->second.is_zero() ? terms.erase(it) : std::next(it);
  }

  friend bool operator==(const KernelFamily& a, const KernelFamily& b) {
    return a.dim == b.dim && a.terms == b.terms && a.left_W == b.left_W && a.right_W == b.right_W;
  }
};

template <Scalar T>
void require_even_operator(const OperatorMatrix<T>& xi) {
  if (xi.domain() != Sector::Even || xi.codomain() != Sector::Even)
    throw ParityError("expansion needs an even-to-even operator");
}

/// (l, m) pairs in extraction order: increasing min(l, m), then (l, m).
inline std::vector<Order> extraction_order(int dim) {
  std::vector<Order> out;
  const int top = dim / 2;
  for (int l = 0; l <= top; ++l)
    for (int m = 0; m <= top; ++m) out.emplace_back(l, m);
  std::stable_sort(out.begin(), out.end(), [](const Order& a, const Order& b) {
    const int ma = std::min(a.first, a.second);
    const int mb = std::min(b.first, b.second);
    if (ma != mb) return ma < mb;
    return a < b;
  });
  return out;
}

template <Scalar T>
std::map<Order, AltBlockTensor<T>> extract_K(const OperatorMatrix<T>& xi) {
  require_even_operator(xi);
  const int d = xi.dim();
  std::map<Order, AltBlockTensor<T>> out;
  for (const auto& [l, m] : extraction_order(d)) {
    AltBlockTensor<T> k(d, 2 * l, 2 * m);
    for (Mask row : subsets_of_size(d, 2 * l))
      for (Mask col : subsets_of_size(d, 2 * m)) k.add(row, col, xi.element(row, col));
    out.emplace(Order{l, m}, std::move(k));
  }
  return out;
}

namespace detail {

// Calls fn(s, i \ s, j \ s, sign) for every nonempty even S in I n J.
template <typename F>
void for_even_overlaps(Mask i, Mask j, F&& fn) {
  const auto bits = modes_of(i & j);
  const int n = static_cast<int>(bits.size());
  for (int k = 2; k <= n; k += 2) {
    for (Mask local : subsets_of_size(n, k)) {
      Mask s = 0;
      for (int b : modes_of(local)) s |= Mask{1} << bits[static_cast<std::size_t>(b)];
      const Mask ir = i & ~s;
      const Mask jr = j & ~s;
      fn(ir, jr, shuffle_sign(s, ir) * shuffle_sign(s, jr));
    }
  }
}

}  // namespace detail

/// Recursive extraction.
template <Scalar T>
KernelFamily<T> extract_kappa(const OperatorMatrix<T>& xi) {
  require_even_operator(xi);
  const int d = xi.dim();
  std::map<Order, AltBlockTensor<T>> kappa;
  for (const auto& [l, m] : extraction_order(d)) {
    AltBlockTensor<T> k(d, 2 * l, 2 * m);
    for (Mask row : subsets_of_size(d, 2 * l)) {
      for (Mask col : subsets_of_size(d, 2 * m)) {
        T v = xi.element(row, col);
        detail::for_even_overlaps(row, col, [&](Mask ir, Mask jr, int sign) {
          const int lr = popcount(ir) / 2;
          const int mr = popcount(jr) / 2;
          const T prev = kappa.at({lr, mr}).coeff(ir, jr);
          if (!fwn::is_zero(prev)) v = v - with_sign(sign, prev);
        });
        k.add(row, col, v);
      }
    }
    kappa.emplace(Order{l, m}, std::move(k));
  }
  KernelFamily<T> fam(d);
  for (auto& [lm, k] : kappa)
    if (!k.is_zero()) fam.terms.emplace(lm, KernelDistribution<T>(std::move(k)));
  return fam;
}

/// sum over compositions (k_1..k_t) of k of (-1)^t / ((2k_1)! ... (2k_t)!);
/// 1 for k = 0.
template <Scalar T>
T composition_coefficient(int k) {
  // c_0 = 1, c_k = -sum_{j=1..k} c_{k-j} / (2j)!.
  std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
  c[0] = T(1);
  for (int n = 1; n <= k; ++n) {
    T s = T(0);
    for (int j = 1; j <= n; ++j) s = s + c[static_cast<std::size_t>(n - j)] / factorial<T>(2 * j);
    c[static_cast<std::size_t>(n)] = T(0) - s;
  }
  return c[static_cast<std::size_t>(k)];
}

/// Closed-form extraction: kappa_{l,m} = sum_k coef_k c(2l,2m;2k)^*(K_{l-k,m-k}).
template <Scalar T>
KernelFamily<T> extract_kappa_closed(const OperatorMatrix<T>& xi) {
  const auto K = extract_K(xi);
  const int d = xi.dim();
  KernelFamily<T> fam(d);
  for (const auto& [l, m] : extraction_order(d)) {
    AltBlockTensor<T> k = K.at({l, m});
    for (int j = 1; j <= std::min(l, m); ++j) {
      const auto& lower = K.at({l - j, m - j});
      if (lower.is_zero()) continue;
      k += diagonal_insertion(lower, 2 * l, 2 * m, 2 * j) * composition_coefficient<T>(j);
    }
    if (!k.is_zero()) fam.terms.emplace(Order{l, m}, KernelDistribution<T>(std::move(k)));
  }
  return fam;
}

/// Sum of the unconjugated terms as an even-to-even matrix.
template <Scalar T>
OperatorMatrix<T> reconstruct_even(const KernelFamily<T>& fam) {
  OperatorMatrix<T> out(fam.dim, Sector::Even, Sector::Even);
  for (const auto& [lm, k] : fam.terms) {
    require_same_dim(fam.dim, k.dim());
    out += iko_matrix(k);
  }
  return out;
}

/// W(f) restricted to map `from` into the opposite parity.
template <Scalar T>
OperatorMatrix<T> weyl_block(const WedgeTensor<T>& f, Sector from) {
  const Sector to = from == Sector::Even ? Sector::Odd : Sector::Even;
  return OperatorMatrix<T>::from_function(f.dim(), from, to, [&](const FockVector<T>& v) { return weyl_W(f, v); });
}

/// Sum of the terms with their W factors:
///   [W(f)^*] (sum Xi_{l,m}(kappa)) [W(f)].
/// Sectors: domain is odd when right_W is set, codomain is odd when left_W is set.
template <Scalar T>
OperatorMatrix<T> reconstruct(const KernelFamily<T>& fam) {
  OperatorMatrix<T> core = reconstruct_even(fam);
  if (fam.right_W) {
    require_same_dim(fam.dim, fam.right_W->dim());
    core = core * weyl_block(*fam.right_W, Sector::Odd);
  }
  if (fam.left_W) {
    require_same_dim(fam.dim, fam.left_W->dim());
    core = weyl_block(*fam.left_W, Sector::Odd).transpose() * core;
  }
  return core;
}

template <Scalar T>
struct ParityBlocks {
  OperatorMatrix<T> pp;  // even -> even
  OperatorMatrix<T> pm;  // odd -> even
  OperatorMatrix<T> mp;  // even -> odd
  OperatorMatrix<T> mm;  // odd -> odd

  OperatorMatrix<T> sum() const {
    return pp.resector(Sector::Full, Sector::Full) + pm.resector(Sector::Full, Sector::Full) +
           mp.resector(Sector::Full, Sector::Full) + mm.resector(Sector::Full, Sector::Full);
  }
};

template <Scalar T>
ParityBlocks<T> parity_blocks(const OperatorMatrix<T>& xi) {
  const auto full = xi.resector(Sector::Full, Sector::Full);
  return {full.resector(Sector::Even, Sector::Even), full.resector(Sector::Odd, Sector::Even),
          full.resector(Sector::Even, Sector::Odd), full.resector(Sector::Odd, Sector::Odd)};
}

template <Scalar T>
struct FullExpansion {
  KernelFamily<T> pp;
  KernelFamily<T> pm;
  KernelFamily<T> mp;
  KernelFamily<T> mm;

  std::vector<const KernelFamily<T>*> families() const { return {&pp, &pm, &mp, &mm}; }
};

class NormalizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Expansion of a full operator: the odd blocks are transported to the even
/// part by W(f), which is an involution when (f, f)_0 = 1.
template <Scalar T>
FullExpansion<T> expand_full(const OperatorMatrix<T>& xi, const WedgeTensor<T>& f, double tol = 0.0) {
  if (f.degree() != 1) throw DegreeError("the transport vector must have degree 1");
  require_same_dim(xi.dim(), f.dim());
  const T norm = inner_product(f, f);
  if constexpr (scalar_traits<T>::exact) {
    if (norm != T(1)) throw NormalizationError("transport vector needs (f, f)_0 = 1");
  } else {
    if (std::abs(norm - T(1)) > tol) throw NormalizationError("transport vector needs (f, f)_0 = 1");
  }
  const auto blocks = parity_blocks(xi);
  // W(f) on the even sector; its transpose is W(f)^* from odd to even.
  const auto w_even = weyl_block(f, Sector::Even);
  FullExpansion<T> out{extract_kappa(blocks.pp), extract_kappa(blocks.pm * w_even),
                       extract_kappa(w_even.transpose() * blocks.mp),
                       extract_kappa(w_even.transpose() * blocks.mm * w_even)};
  out.pm.right_W = f;
  out.mp.left_W = f;
  out.mm.left_W = f;
  out.mm.right_W = f;
  return out;
}

template <Scalar T>
OperatorMatrix<T> reconstruct_full(const FullExpansion<T>& e) {
  OperatorMatrix<T> out(e.pp.dim, Sector::Full, Sector::Full);
  for (const auto* fam : e.families()) out += reconstruct(*fam).resector(Sector::Full, Sector::Full);
  return out;
}

/// True when every term satisfies alt_project(embed) = itself, i.e. the
/// stored subset representative is the canonical one. Checked through the
/// dense embedding, so only meant for tests and small d.
template <Scalar T>
bool is_alt_canonical(const KernelDistribution<T>& k) {
  return alt_project(embed_block(k.kernel())) == k.kernel();
}

}  // namespace fwn
