#pragma once

// Antisymmetric tensor algebra.
//
// A WedgeTensor of degree n stores coefficients c_I against the basis
// e_I = e_{i_1} ^ ... ^ e_{i_n} (i_1 < ... < i_n), where
//   e_{i_1} ^ ... ^ e_{i_n} = (1/n!) sum_sigma sign(sigma) e_{i_sigma(1)} (x) ... (x) e_{i_sigma(n)}.
// Hence |e_I|_0^2 = 1/n! and every factorial shows up explicitly in norms
// and pairings.
//
// A DenseTensor stores arbitrary n-tuples; it is the brute-force oracle for
// everything the subset representation computes in closed form.

#include <algorithm>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwn/modespace.hpp"
#include "fwn/scalar.hpp"
#include "fwn/subsets.hpp"

namespace fwn {

class DegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_same_dim(int a, int b) {
  if (a != b) throw DegreeError("mode-space mismatch: " + std::to_string(a) + " vs " + std::to_string(b) + " modes");
}

template <Scalar T>
class WedgeTensor {
 public:
  using Coeffs = std::map<Mask, T>;

  WedgeTensor(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 1 || dim > kMaxModes) throw DegreeError("invalid mode count");
    if (degree < 0) throw DegreeError("negative degree");
  }

  static WedgeTensor scalar(int dim, const T& value) {
    WedgeTensor w(dim, 0);
    w.add(0, value);
    return w;
  }

  /// e_{i_1} ^ ... ^ e_{i_n} for 0-based modes given in any order; the
  /// permutation sign is absorbed, repeated modes give 0.
  static WedgeTensor basis(int dim, std::span<const int> modes) {
    WedgeTensor w(dim, static_cast<int>(modes.size()));
    const int s = permutation_sign(modes);
    if (s == 0) return w;
    w.add(mask_of(modes, dim), T(s));
    return w;
  }

  static WedgeTensor basis(int dim, std::initializer_list<int> modes) {
    std::vector<int> v(modes);
    return basis(dim, std::span<const int>(v));
  }

  /// Degree-1 vector sum_i v[i] e_i.
  static WedgeTensor vector(std::span<const T> v) {
    WedgeTensor w(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) w.add(Mask{1} << i, v[i]);
    return w;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  T coeff(Mask m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? T(0) : it->second;
  }

  /// Adds `value` to the coefficient of e_I. Explicit zeros are dropped.
  void add(Mask m, const T& value) {
    if (popcount(m) != degree_) throw DegreeError("subset size does not match tensor degree");
    if ((m & ~full_mask(dim_)) != 0) throw std::out_of_range("subset outside the mode space");
    if (fwn::is_zero(value)) return;
    auto [it, inserted] = coeffs_.try_emplace(m, value);
    if (!inserted) {
      it->second = it->second + value;
      if (fwn::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  WedgeTensor& operator+=(const WedgeTensor& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.coeffs_) add(m, c);
    return *this;
  }
  WedgeTensor& operator-=(const WedgeTensor& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.coeffs_) add(m, T(0) - c);
    return *this;
  }
  WedgeTensor& operator*=(const T& s) {
    if (fwn::is_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [m, c] : coeffs_) c = c * s;
    return *this;
  }
  friend WedgeTensor operator+(WedgeTensor a, const WedgeTensor& b) { return a += b; }
  friend WedgeTensor operator-(WedgeTensor a, const WedgeTensor& b) { return a -= b; }
  friend WedgeTensor operator*(WedgeTensor a, const T& s) { return a *= s; }
  friend WedgeTensor operator*(const T& s, WedgeTensor a) { return a *= s; }

  /// Coefficientwise complex conjugation J in the e-basis.
  WedgeTensor conjugate() const {
    WedgeTensor out(dim_, degree_);
    for (const auto& [m, c] : coeffs_) out.add(m, fwn::conj(c));
    return out;
  }

  friend bool operator==(const WedgeTensor& a, const WedgeTensor& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_compatible(const WedgeTensor& o) const {
    require_same_dim(dim_, o.dim_);
    if (degree_ != o.degree_) throw DegreeError("degree mismatch");
  }

  int dim_;
  int degree_;
  Coeffs coeffs_;
};

using Tuple = std::vector<int>;

template <Scalar T>
class DenseTensor {
 public:
  using Entries = std::map<Tuple, T>;

  DenseTensor(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 1 || dim > kMaxModes) throw DegreeError("invalid mode count");
    if (degree < 0) throw DegreeError("negative degree");
  }

  /// e_{i_1} (x) ... (x) e_{i_n}.
  static DenseTensor basis(int dim, Tuple t) {
    DenseTensor x(dim, static_cast<int>(t.size()));
    x.add(std::move(t), T(1));
    return x;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const Entries& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  T at(const Tuple& t) const {
    auto it = entries_.find(t);
    return it == entries_.end() ? T(0) : it->second;
  }

  void add(Tuple t, const T& value) {
    if (static_cast<int>(t.size()) != degree_) throw DegreeError("tuple length does not match tensor degree");
    for (int i : t) {
      if (i < 0 || i >= dim_) throw std::out_of_range("tuple index outside the mode space");
    }
    if (fwn::is_zero(value)) return;
    auto [it, inserted] = entries_.try_emplace(std::move(t), value);
    if (!inserted) {
      it->second = it->second + value;
      if (fwn::is_zero(it->second)) entries_.erase(it);
    }
  }

  DenseTensor& operator+=(const DenseTensor& o) {
    require_same_dim(dim_, o.dim_);
    if (degree_ != o.degree_) throw DegreeError("degree mismatch");
    for (const auto& [t, c] : o.entries_) add(t, c);
    return *this;
  }
  DenseTensor& operator*=(const T& s) {
    if (fwn::is_zero(s)) {
      entries_.clear();
      return *this;
    }
    for (auto& [t, c] : entries_) c = c * s;
    return *this;
  }
  friend DenseTensor operator+(DenseTensor a, const DenseTensor& b) { return a += b; }
  friend DenseTensor operator*(DenseTensor a, const T& s) { return a *= s; }

  /// Tensor product a (x) b.
  friend DenseTensor tensor(const DenseTensor& a, const DenseTensor& b) {
    require_same_dim(a.dim_, b.dim_);
    DenseTensor out(a.dim_, a.degree_ + b.degree_);
    for (const auto& [ta, ca] : a.entries_) {
      for (const auto& [tb, cb] : b.entries_) {
        Tuple t = ta;
        t.insert(t.end(), tb.begin(), tb.end());
        out.add(std::move(t), ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.entries_ == b.entries_;
  }

 private:
  int dim_;
  int degree_;
  Entries entries_;
};

/// Alternizer A_n in the subset basis: the coefficient of e_I is
/// sum over tuples t that permute I of sign(t) x_t.
template <Scalar T>
WedgeTensor<T> antisymmetrize(const DenseTensor<T>& x) {
  WedgeTensor<T> out(x.dim(), x.degree());
  if (x.degree() > x.dim()) return out;
  for (const auto& [t, c] : x.entries()) {
    Mask m;
    if (!tuple_mask(t, m)) continue;
    const int s = permutation_sign(t);
    out.add(m, with_sign(s, c));
  }
  return out;
}

/// The full antisymmetric tensor: entry at a permutation t of I is
/// sign(t) c_I / n!.
template <Scalar T>
DenseTensor<T> embed_dense(const WedgeTensor<T>& w) {
  const int n = w.degree();
  DenseTensor<T> out(w.dim(), n);
  const T inv = T(1) / factorial<T>(n);
  for (const auto& [m, c] : w.coeffs()) {
    Tuple t = modes_of(m);
    do {
      const int s = permutation_sign(t);
      const T v = c * inv;
      out.add(t, with_sign(s, v));
    } while (std::next_permutation(t.begin(), t.end()));
  }
  return out;
}

/// a ^ b = A(a (x) b); coefficient of e_K sums sign(shuffle) a_I b_J over
/// splits K = I u J.
template <Scalar T>
WedgeTensor<T> wedge_product(const WedgeTensor<T>& a, const WedgeTensor<T>& b) {
  require_same_dim(a.dim(), b.dim());
  WedgeTensor<T> out(a.dim(), a.degree() + b.degree());
  if (a.degree() + b.degree() > a.dim()) return out;
  for (const auto& [ma, ca] : a.coeffs()) {
    for (const auto& [mb, cb] : b.coeffs()) {
      if (ma & mb) continue;
      const T v = ca * cb;
      out.add(ma | mb, with_sign(shuffle_sign(ma, mb), v));
    }
  }
  return out;
}

/// zeta^{^n}; zeta^{^0} is the vacuum scalar 1.
template <Scalar T>
WedgeTensor<T> wedge_power(const WedgeTensor<T>& zeta, int n) {
  WedgeTensor<T> out = WedgeTensor<T>::scalar(zeta.dim(), T(1));
  for (int k = 0; k < n; ++k) out = wedge_product(out, zeta);
  return out;
}

/// Canonical bilinear pairing <F, g> = sum_t F_t g_t over tuples. For two
/// wedge tensors of degree n this is (1/n!) sum_I F_I g_I.
template <Scalar T>
T pairing(const WedgeTensor<T>& a, const WedgeTensor<T>& b) {
  require_same_dim(a.dim(), b.dim());
  if (a.degree() != b.degree()) throw DegreeError("pairing of tensors with different degrees");
  T sum = T(0);
  for (const auto& [m, c] : a.coeffs()) {
    auto it = b.coeffs().find(m);
    if (it != b.coeffs().end()) sum = sum + c * it->second;
  }
  return sum / factorial<T>(a.degree());
}

template <Scalar T>
T pairing(const DenseTensor<T>& a, const DenseTensor<T>& b) {
  require_same_dim(a.dim(), b.dim());
  if (a.degree() != b.degree()) throw DegreeError("pairing of tensors with different degrees");
  T sum = T(0);
  for (const auto& [t, c] : a.entries()) {
    auto it = b.entries().find(t);
    if (it != b.entries().end()) sum = sum + c * it->second;
  }
  return sum;
}

template <Scalar T>
T pairing(const WedgeTensor<T>& a, const DenseTensor<T>& b) {
  return pairing(embed_dense(a), b);
}

template <Scalar T>
T pairing(const DenseTensor<T>& a, const WedgeTensor<T>& b) {
  return pairing(a, embed_dense(b));
}

/// Sesquilinear inner product (a, b)_0 = <J a, b>.
template <Scalar T>
T inner_product(const WedgeTensor<T>& a, const WedgeTensor<T>& b) {
  return pairing(a.conjugate(), b);
}

/// Determinant by cofactor-free elimination over a field (exact for
/// rationals). Small n only.
template <Scalar T>
T determinant(std::vector<std::vector<T>> a) {
  const std::size_t n = a.size();
  T det = T(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && fwn::is_zero(a[pivot][col])) ++pivot;
    if (pivot == n) return T(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = T(0) - det;
    }
    det = det * a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (fwn::is_zero(a[r][col])) continue;
      const T f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] = a[r][c] - f * a[col][c];
    }
  }
  return det;
}

/// (1/n!) det(<f_i, g_j>) for degree-1 vectors.
template <Scalar T>
T gram_pairing(std::span<const WedgeTensor<T>> f, std::span<const WedgeTensor<T>> g) {
  if (f.size() != g.size()) throw DegreeError("gram_pairing needs lists of equal length");
  const std::size_t n = f.size();
  std::vector<std::vector<T>> m(n, std::vector<T>(n, T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i].degree() != 1 || g[i].degree() != 1) throw DegreeError("gram_pairing needs degree-1 vectors");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = pairing(f[i], g[j]);
  }
  return determinant(std::move(m)) / factorial<T>(static_cast<int>(n));
}

/// f_1 ^ ... ^ f_n.
template <Scalar T>
WedgeTensor<T> wedge_all(int dim, std::span<const WedgeTensor<T>> f) {
  WedgeTensor<T> out = WedgeTensor<T>::scalar(dim, T(1));
  for (const auto& v : f) out = wedge_product(out, v);
  return out;
}

/// |w|_p^2 = (1/n!) sum_I |c_I|^2 weight(I, p)^2.
template <Scalar T>
real_t<T> norm_p_sq(const ModeSpace<T>& ms, const WedgeTensor<T>& w, exponent_t<T> p) {
  require_same_dim(ms.dim(), w.dim());
  using R = real_t<T>;
  R sum = R(0);
  for (const auto& [m, c] : w.coeffs()) {
    const R wt = ms.mode_weight(m, p);
    sum = sum + scalar_traits<T>::abs2(c) * wt * wt;
  }
  return sum / factorial<R>(w.degree());
}

/// |w|_p; float arithmetic only (exact mode works with norm_p_sq).
template <Scalar T>
  requires(!scalar_traits<T>::exact)
double norm_p(const ModeSpace<T>& ms, const WedgeTensor<T>& w, double p) {
  return std::sqrt(norm_p_sq(ms, w, p));
}

/// Tuple-basis |x|_p^2 = sum_t |x_t|^2 |e(t)|_p^2.
template <Scalar T>
real_t<T> norm_p_sq(const ModeSpace<T>& ms, const DenseTensor<T>& x, exponent_t<T> p) {
  require_same_dim(ms.dim(), x.dim());
  using R = real_t<T>;
  R sum = R(0);
  for (const auto& [t, c] : x.entries()) {
    const R wt = ms.mode_weight(t, p);
    sum = sum + scalar_traits<T>::abs2(c) * wt * wt;
  }
  return sum;
}

/// Maps every coefficient through `f` (used to move between arithmetics).
template <Scalar U, Scalar T, typename F>
WedgeTensor<U> convert(const WedgeTensor<T>& w, F f) {
  WedgeTensor<U> out(w.dim(), w.degree());
  for (const auto& [m, c] : w.coeffs()) out.add(m, f(c));
  return out;
}

}  // namespace fwn
