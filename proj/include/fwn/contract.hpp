#pragma once

// Contractions of tensors split into index blocks.
//
// Slot layout convention: contracted slots always form a contiguous block,
// leading for left contractions (F (x)^m g) and trailing for right ones
// (F (x)_m g). The result keeps F's uncontracted block first, then g's.
//
// BlockTensor works on explicit tuples and is the reference path. The
// wedge_contract / *_alt helpers evaluate the same quantities in closed form
// on ascending subsets; tests pin the two against each other.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fwn/scalar.hpp"
#include "fwn/subsets.hpp"
#include "fwn/wedge.hpp"

namespace fwn {

/// An element of (E^{(x)(l+m)})^* with the slots split into a left block of
/// size l and a right block of size m.
template <Scalar T>
class BlockTensor {
 public:
  BlockTensor(int dim, int left, int right) : left_(left), right_(right), body_(dim, left + right) {
    if (left < 0 || right < 0) throw DegreeError("negative block size");
  }
  BlockTensor(DenseTensor<T> body, int left) : left_(left), right_(body.degree() - left), body_(std::move(body)) {
    if (left < 0 || right_ < 0) throw DegreeError("block split outside the tensor degree");
  }

  int dim() const { return body_.dim(); }
  int left() const { return left_; }
  int right() const { return right_; }
  int degree() const { return left_ + right_; }
  const DenseTensor<T>& body() const { return body_; }
  const typename DenseTensor<T>::Entries& entries() const { return body_.entries(); }
  T at(const Tuple& t) const { return body_.at(t); }
  void add(Tuple t, const T& v) { body_.add(std::move(t), v); }

  /// Same entries, different split.
  BlockTensor resplit(int left) const { return BlockTensor(body_, left); }

  friend bool operator==(const BlockTensor& a, const BlockTensor& b) {
    return a.left_ == b.left_ && a.right_ == b.right_ && a.body_ == b.body_;
  }

 private:
  int left_;
  int right_;
  DenseTensor<T> body_;
};

/// Canonical representative of the alt(l, m) class: coefficients k_{I,J}
/// against e_I (x) e_J with e_I, e_J wedge basis elements. The represented
/// tuple tensor has entry sign(s) sign(t) k_{I,J} / (l! m!) at (s, t).
template <Scalar T>
class AltBlockTensor {
 public:
  using Key = std::pair<Mask, Mask>;
  using Coeffs = std::map<Key, T>;

  AltBlockTensor(int dim, int left, int right) : dim_(dim), left_(left), right_(right) {
    if (dim < 1 || dim > kMaxModes) throw DegreeError("invalid mode count");
    if (left < 0 || right < 0) throw DegreeError("negative block size");
  }

  int dim() const { return dim_; }
  int left() const { return left_; }
  int right() const { return right_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  T coeff(Mask i, Mask j) const {
    auto it = coeffs_.find({i, j});
    return it == coeffs_.end() ? T(0) : it->second;
  }

  void add(Mask i, Mask j, const T& value) {
    if (popcount(i) != left_ || popcount(j) != right_) throw DegreeError("subset sizes do not match the block split");
    const Mask full = full_mask(dim_);
    if ((i & ~full) || (j & ~full)) throw std::out_of_range("subset outside the mode space");
    if (fwn::is_zero(value)) return;
    auto [it, inserted] = coeffs_.try_emplace(Key{i, j}, value);
    if (!inserted) {
      it->second = it->second + value;
      if (fwn::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  AltBlockTensor& operator+=(const AltBlockTensor& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.coeffs_) add(k.first, k.second, c);
    return *this;
  }
  AltBlockTensor& operator-=(const AltBlockTensor& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.coeffs_) add(k.first, k.second, T(0) - c);
    return *this;
  }
  AltBlockTensor& operator*=(const T& s) {
    if (fwn::is_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [k, c] : coeffs_) c = c * s;
    return *this;
  }
  friend AltBlockTensor operator+(AltBlockTensor a, const AltBlockTensor& b) { return a += b; }
  friend AltBlockTensor operator-(AltBlockTensor a, const AltBlockTensor& b) { return a -= b; }
  friend AltBlockTensor operator*(AltBlockTensor a, const T& s) { return a *= s; }

  friend bool operator==(const AltBlockTensor& a, const AltBlockTensor& b) {
    return a.dim_ == b.dim_ && a.left_ == b.left_ && a.right_ == b.right_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const AltBlockTensor& o) const {
    require_same_dim(dim_, o.dim_);
    if (left_ != o.left_ || right_ != o.right_) throw DegreeError("block split mismatch");
  }

  int dim_;
  int left_;
  int right_;
  Coeffs coeffs_;
};

namespace detail {

inline Tuple slice(const Tuple& t, std::size_t from, std::size_t to) {
  return Tuple(t.begin() + static_cast<std::ptrdiff_t>(from), t.begin() + static_cast<std::ptrdiff_t>(to));
}

inline Tuple concat(const Tuple& a, const Tuple& b) {
  Tuple out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Contracts slots [f_from, f_from+m) of F with [g_from, g_from+m) of g.
template <Scalar T>
DenseTensor<T> contract_slots(const DenseTensor<T>& f, std::size_t f_from, const DenseTensor<T>& g, std::size_t g_from,
                              int m) {
  require_same_dim(f.dim(), g.dim());
  if (m < 0 || m > f.degree() || m > g.degree()) throw DegreeError("contraction order exceeds a tensor degree");
  const auto mm = static_cast<std::size_t>(m);
  // Group g by its contracted sub-tuple.
  std::map<Tuple, std::vector<std::pair<Tuple, T>>> by_key;
  for (const auto& [t, c] : g.entries()) {
    Tuple key = slice(t, g_from, g_from + mm);
    Tuple rest = concat(slice(t, 0, g_from), slice(t, g_from + mm, t.size()));
    by_key[std::move(key)].emplace_back(std::move(rest), c);
  }
  DenseTensor<T> out(f.dim(), f.degree() + g.degree() - 2 * m);
  for (const auto& [t, c] : f.entries()) {
    Tuple key = slice(t, f_from, f_from + mm);
    auto it = by_key.find(key);
    if (it == by_key.end()) continue;
    Tuple rest = concat(slice(t, 0, f_from), slice(t, f_from + mm, t.size()));
    for (const auto& [grest, gc] : it->second) out.add(concat(rest, grest), c * gc);
  }
  return out;
}

}  // namespace detail

/// Left contraction F (x)^m g = sum_{j,k} (sum_i F_{(i,j)} g_{(i,k)}) e(j) (x) e(k).
template <Scalar T>
BlockTensor<T> contract_left(const DenseTensor<T>& f, const DenseTensor<T>& g, int m) {
  DenseTensor<T> body = detail::contract_slots(f, 0, g, 0, m);
  return BlockTensor<T>(std::move(body), f.degree() - m);
}

/// Right contraction F (x)_m g = sum_{j,k} (sum_i F_{(j,i)} g_{(k,i)}) e(j) (x) e(k).
template <Scalar T>
BlockTensor<T> contract_right(const DenseTensor<T>& f, const DenseTensor<T>& g, int m) {
  if (m < 0 || m > f.degree() || m > g.degree()) throw DegreeError("contraction order exceeds a tensor degree");
  DenseTensor<T> body = detail::contract_slots(f, static_cast<std::size_t>(f.degree() - m), g,
                                               static_cast<std::size_t>(g.degree() - m), m);
  return BlockTensor<T>(std::move(body), f.degree() - m);
}

enum class Side { Left, Right };

/// Alternized contraction F ^^m g (left) or F ^_m g (right) for
/// antisymmetric F of degree l+m and g of degree m+n, computed on subsets:
/// the coefficient of e_{B u C} collects F_{S u B} g_{S u C} times
/// l! m! n! / ((l+m)! (m+n)!) and the shuffle signs of the slot layout.
template <Scalar T>
WedgeTensor<T> wedge_contract(const WedgeTensor<T>& f, const WedgeTensor<T>& g, int m, Side side) {
  require_same_dim(f.dim(), g.dim());
  const int l = f.degree() - m;
  const int n = g.degree() - m;
  if (m < 0 || l < 0 || n < 0) throw DegreeError("contraction order exceeds a tensor degree");
  WedgeTensor<T> out(f.dim(), l + n);
  if (l + n > f.dim()) return out;
  const T scale = factorial<T>(l) * factorial<T>(m) * factorial<T>(n) / (factorial<T>(l + m) * factorial<T>(m + n));
  for (const auto& [fa, fc] : f.coeffs()) {
    for (const auto& [gk, gc] : g.coeffs()) {
      const Mask shared = fa & gk;
      if (popcount(shared) < m) continue;
      // Enumerate the contracted m-subsets S of the overlap.
      for (Mask s : subsets_of_size(popcount(shared), m)) {
        // Map the compressed subset back onto the bits of `shared`.
        Mask contracted = 0;
        {
          const auto bits = modes_of(shared);
          for (int b : modes_of(s)) contracted |= Mask{1} << bits[b];
        }
        const Mask b_set = fa & ~contracted;
        const Mask c_set = gk & ~contracted;
        if (b_set & c_set) continue;
        int sign = shuffle_sign(b_set, c_set);
        if (side == Side::Left) {
          sign *= shuffle_sign(contracted, b_set) * shuffle_sign(contracted, c_set);
        } else {
          sign *= shuffle_sign(b_set, contracted) * shuffle_sign(c_set, contracted);
        }
        out.add(b_set | c_set, with_sign(sign, T(fc * gc * scale)));
      }
    }
  }
  return out;
}

/// t_{l,m}: swaps the left block (size l) with the right block (size m).
template <Scalar T>
BlockTensor<T> transpose_t(const BlockTensor<T>& psi) {
  const auto l = static_cast<std::size_t>(psi.left());
  BlockTensor<T> out(psi.dim(), psi.right(), psi.left());
  for (const auto& [t, c] : psi.entries()) out.add(detail::concat(detail::slice(t, l, t.size()), detail::slice(t, 0, l)), c);
  return out;
}

/// c(l, m; n): x has blocks (i, j | i', k) with |i| = |i'| = n; the result
/// sums the diagonal i = i' and keeps (j, k).
template <Scalar T>
BlockTensor<T> contraction_c(const BlockTensor<T>& x, int n) {
  const int l = x.left();
  const int m = x.right();
  if (n < 0 || n > l || n > m) throw DegreeError("contraction order exceeds a block size");
  const auto ul = static_cast<std::size_t>(l);
  const auto un = static_cast<std::size_t>(n);
  BlockTensor<T> out(x.dim(), l - n, m - n);
  for (const auto& [t, c] : x.entries()) {
    if (!std::equal(t.begin(), t.begin() + n, t.begin() + l)) continue;
    out.add(detail::concat(detail::slice(t, un, ul), detail::slice(t, ul + un, t.size())), c);
  }
  return out;
}

/// Pairing adjoint of c(l, m; n): inserts a diagonal n-block at the front
/// of both blocks.
template <Scalar T>
BlockTensor<T> contraction_c_adjoint(const BlockTensor<T>& y, int l, int m, int n) {
  if (n < 0 || y.left() != l - n || y.right() != m - n) throw DegreeError("adjoint target degrees inconsistent with the input");
  const auto ul = static_cast<std::size_t>(l - n);
  BlockTensor<T> out(y.dim(), l, m);
  // All n-tuples over the mode range.
  std::vector<Tuple> diag{Tuple{}};
  for (int k = 0; k < n; ++k) {
    std::vector<Tuple> next;
    for (const auto& t : diag) {
      for (int i = 0; i < y.dim(); ++i) {
        Tuple u = t;
        u.push_back(i);
        next.push_back(std::move(u));
      }
    }
    diag = std::move(next);
  }
  for (const auto& [t, c] : y.entries()) {
    const Tuple j = detail::slice(t, 0, ul);
    const Tuple k = detail::slice(t, ul, t.size());
    for (const auto& i : diag) out.add(detail::concat(detail::concat(i, j), detail::concat(i, k)), c);
  }
  return out;
}

/// A_{l,m}: antisymmetrizes each block separately and returns the subset
/// representative.
template <Scalar T>
AltBlockTensor<T> alt_project(const BlockTensor<T>& kappa) {
  const auto l = static_cast<std::size_t>(kappa.left());
  AltBlockTensor<T> out(kappa.dim(), kappa.left(), kappa.right());
  if (kappa.left() > kappa.dim() || kappa.right() > kappa.dim()) return out;
  for (const auto& [t, c] : kappa.entries()) {
    const Tuple a = detail::slice(t, 0, l);
    const Tuple b = detail::slice(t, l, t.size());
    Mask ma, mb;
    if (!tuple_mask(a, ma) || !tuple_mask(b, mb)) continue;
    out.add(ma, mb, with_sign(permutation_sign(a) * permutation_sign(b), c));
  }
  return out;
}

/// The tuple tensor represented by an AltBlockTensor.
template <Scalar T>
BlockTensor<T> embed_block(const AltBlockTensor<T>& k) {
  BlockTensor<T> out(k.dim(), k.left(), k.right());
  const T inv = T(1) / (factorial<T>(k.left()) * factorial<T>(k.right()));
  for (const auto& [key, c] : k.coeffs()) {
    Tuple a = modes_of(key.first);
    do {
      Tuple b = modes_of(key.second);
      do {
        const int s = permutation_sign(a) * permutation_sign(b);
        out.add(detail::concat(a, b), with_sign(s, T(c * inv)));
      } while (std::next_permutation(b.begin(), b.end()));
    } while (std::next_permutation(a.begin(), a.end()));
  }
  return out;
}

/// e_I (x) e_J as an AltBlockTensor-compatible pair of wedge tensors.
template <Scalar T>
AltBlockTensor<T> alt_tensor(const WedgeTensor<T>& a, const WedgeTensor<T>& b) {
  require_same_dim(a.dim(), b.dim());
  AltBlockTensor<T> out(a.dim(), a.degree(), b.degree());
  for (const auto& [ma, ca] : a.coeffs())
    for (const auto& [mb, cb] : b.coeffs()) out.add(ma, mb, ca * cb);
  return out;
}

/// <kappa, a (x) b> = sum_{I,J} k_{I,J} a_I b_J / (l! m!).
template <Scalar T>
T alt_pairing(const AltBlockTensor<T>& kappa, const WedgeTensor<T>& a, const WedgeTensor<T>& b) {
  require_same_dim(kappa.dim(), a.dim());
  require_same_dim(kappa.dim(), b.dim());
  if (a.degree() != kappa.left() || b.degree() != kappa.right()) throw DegreeError("pairing degrees do not match the block split");
  T sum = T(0);
  for (const auto& [key, c] : kappa.coeffs()) {
    const T av = a.coeff(key.first);
    if (fwn::is_zero(av)) continue;
    const T bv = b.coeff(key.second);
    if (fwn::is_zero(bv)) continue;
    sum = sum + c * av * bv;
  }
  return sum / (factorial<T>(kappa.left()) * factorial<T>(kappa.right()));
}

/// (l+m)! <c(l,m;n)^*(y), e_I (x) e_J> l! m! / (l! m! ...) evaluated on subsets:
///   n! * sum_{S subset of I n J, |S| = n} sign(S, I\S) sign(S, J\S) y_{I\S, J\S}.
/// This is the coefficient of e_I (x) e_J in A_{l,m}(c(l,m;n)^* y) for an
/// alt-canonical y of split (l-n, m-n).
template <Scalar T>
T diagonal_insertion_coeff(const AltBlockTensor<T>& y, Mask i, Mask j, int n) {
  const Mask shared = i & j;
  if (popcount(shared) < n) return T(0);
  const auto bits = modes_of(shared);
  T sum = T(0);
  for (Mask s_local : subsets_of_size(static_cast<int>(bits.size()), n)) {
    Mask s = 0;
    for (int b : modes_of(s_local)) s |= Mask{1} << bits[b];
    const T v = y.coeff(i & ~s, j & ~s);
    if (fwn::is_zero(v)) continue;
    sum = sum + with_sign(shuffle_sign(s, i & ~s) * shuffle_sign(s, j & ~s), v);
  }
  return sum * factorial<T>(n);
}

/// A_{l,m}(c(l,m;n)^* y) in subset form.
template <Scalar T>
AltBlockTensor<T> diagonal_insertion(const AltBlockTensor<T>& y, int l, int m, int n) {
  if (n < 0 || y.left() != l - n || y.right() != m - n) throw DegreeError("insertion target degrees inconsistent with the input");
  AltBlockTensor<T> out(y.dim(), l, m);
  if (l > y.dim() || m > y.dim()) return out;
  for (const auto& [key, c] : y.coeffs()) {
    // Candidate S: n-subsets disjoint from both I' and J'.
    const Mask free = full_mask(y.dim()) & ~key.first & ~key.second;
    const auto bits = modes_of(free);
    for (Mask s_local : subsets_of_size(static_cast<int>(bits.size()), n)) {
      Mask s = 0;
      for (int b : modes_of(s_local)) s |= Mask{1} << bits[b];
      const Mask i = key.first | s;
      const Mask j = key.second | s;
      out.add(i, j, with_sign(shuffle_sign(s, key.first) * shuffle_sign(s, key.second), T(c * factorial<T>(n))));
    }
  }
  return out;
}

/// |F|^2_{l,m;p,q} = sum |F_{(i,j)}|^2 |e(i)|_p^2 |e(j)|_q^2 over tuples.
template <Scalar T>
real_t<T> mixed_norm_sq(const ModeSpace<T>& ms, const BlockTensor<T>& f, exponent_t<T> p, exponent_t<T> q) {
  require_same_dim(ms.dim(), f.dim());
  using R = real_t<T>;
  const auto l = static_cast<std::size_t>(f.left());
  R sum = R(0);
  for (const auto& [t, c] : f.entries()) {
    const R wl = ms.mode_weight(std::span<const int>(t.data(), l), p);
    const R wr = ms.mode_weight(std::span<const int>(t.data() + l, t.size() - l), q);
    sum = sum + scalar_traits<T>::abs2(c) * wl * wl * wr * wr;
  }
  return sum;
}

/// The same norm for an alt-canonical tensor without expanding tuples:
/// sum_{I,J} |k_{I,J}|^2 w_I(p)^2 w_J(q)^2 / (l! m!).
template <Scalar T>
real_t<T> mixed_norm_sq(const ModeSpace<T>& ms, const AltBlockTensor<T>& k, exponent_t<T> p, exponent_t<T> q) {
  require_same_dim(ms.dim(), k.dim());
  using R = real_t<T>;
  R sum = R(0);
  for (const auto& [key, c] : k.coeffs()) {
    const R wl = ms.mode_weight(key.first, p);
    const R wr = ms.mode_weight(key.second, q);
    sum = sum + scalar_traits<T>::abs2(c) * wl * wl * wr * wr;
  }
  return sum / (factorial<R>(k.left()) * factorial<R>(k.right()));
}

template <Scalar T>
  requires(!scalar_traits<T>::exact)
double mixed_norm(const ModeSpace<T>& ms, const BlockTensor<T>& f, double p, double q) {
  return std::sqrt(mixed_norm_sq(ms, f, p, q));
}

}  // namespace fwn
