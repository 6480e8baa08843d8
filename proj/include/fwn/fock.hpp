#pragma once

// Truncated fermion Fock space over d modes.
//
// A FockVector is stored flat: one coefficient per occupied subset I, the
// degree being |I|. Component n is the WedgeTensor of degree n made of the
// keys with n bits set, so phi = sum_n phi_n with phi_n in the e_I basis.
//
// Weighted norms and the Fock pairing carry the n! of
//   ||phi||_p^2 = sum_n n! |phi_n|_p^2,   <<Phi, phi>> = sum_n n! <Phi_n, phi_n>,
// which cancels the 1/n! of the wedge pairing: the subset basis is
// orthonormal for <<.,.>>.

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fwn/modespace.hpp"
#include "fwn/scalar.hpp"
#include "fwn/subsets.hpp"
#include "fwn/wedge.hpp"

namespace fwn {

class ParityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Parity { Even, Odd, Mixed };

inline const char* parity_name(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
  }
  return "?";
}

template <Scalar T>
class FockVector {
 public:
  using Coeffs = std::map<Mask, T>;

  explicit FockVector(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxModes) throw DegreeError("invalid mode count");
  }

  static FockVector vacuum(int dim, const T& value = T(1)) {
    FockVector v(dim);
    v.add(0, value);
    return v;
  }

  static FockVector from_wedge(const WedgeTensor<T>& w) {
    FockVector v(w.dim());
    v.add_component(w);
    return v;
  }

  static FockVector basis(int dim, Mask m) {
    FockVector v(dim);
    v.add(m, T(1));
    return v;
  }

  int dim() const { return dim_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  T coeff(Mask m) const {
    auto it = coeffs_.find(m);
    return it == coeffs_.end() ? T(0) : it->second;
  }

  void add(Mask m, const T& value) {
    if ((m & ~full_mask(dim_)) != 0) throw std::out_of_range("subset outside the mode space");
    if (fwn::is_zero(value)) return;
    auto [it, inserted] = coeffs_.try_emplace(m, value);
    if (!inserted) {
      it->second = it->second + value;
      if (fwn::is_zero(it->second)) coeffs_.erase(it);
    }
  }

  void add_component(const WedgeTensor<T>& w) {
    require_same_dim(dim_, w.dim());
    for (const auto& [m, c] : w.coeffs()) add(m, c);
  }

  WedgeTensor<T> component(int n) const {
    WedgeTensor<T> w(dim_, n);
    for (const auto& [m, c] : coeffs_)
      if (popcount(m) == n) w.add(m, c);
    return w;
  }

  /// Degrees carrying at least one nonzero coefficient.
  std::vector<int> degrees() const {
    std::vector<bool> seen(static_cast<std::size_t>(dim_) + 1, false);
    for (const auto& [m, c] : coeffs_) seen[static_cast<std::size_t>(popcount(m))] = true;
    std::vector<int> out;
    for (int n = 0; n <= dim_; ++n)
      if (seen[static_cast<std::size_t>(n)]) out.push_back(n);
    return out;
  }

  /// The zero vector counts as even.
  Parity parity() const {
    bool even = false;
    bool odd = false;
    for (const auto& [m, c] : coeffs_) (popcount(m) % 2 == 0 ? even : odd) = true;
    if (even && odd) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
  }

  FockVector& operator+=(const FockVector& o) {
    require_same_dim(dim_, o.dim_);
    for (const auto& [m, c] : o.coeffs_) add(m, c);
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    require_same_dim(dim_, o.dim_);
    for (const auto& [m, c] : o.coeffs_) add(m, T(0) - c);
    return *this;
  }
  FockVector& operator*=(const T& s) {
    if (fwn::is_zero(s)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [m, c] : coeffs_) c = c * s;
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(FockVector a, const T& s) { return a *= s; }
  friend FockVector operator*(const T& s, FockVector a) { return a *= s; }

  friend bool operator==(const FockVector& a, const FockVector& b) {
    return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int dim_;
  Coeffs coeffs_;
};

/// ||phi||_p^2 = sum_n n! |phi_n|_p^2.
template <Scalar T>
real_t<T> fock_norm_sq(const ModeSpace<T>& ms, const FockVector<T>& phi, exponent_t<T> p) {
  require_same_dim(ms.dim(), phi.dim());
  using R = real_t<T>;
  R sum = R(0);
  for (const auto& [m, c] : phi.coeffs()) {
    const R w = ms.mode_weight(m, p);
    sum = sum + scalar_traits<T>::abs2(c) * w * w;
  }
  return sum;
}

template <Scalar T>
  requires(!scalar_traits<T>::exact)
double fock_norm(const ModeSpace<T>& ms, const FockVector<T>& phi, double p) {
  return std::sqrt(fock_norm_sq(ms, phi, p));
}

/// <<Phi, phi>> = sum_n n! <Phi_n, phi_n> (bilinear).
template <Scalar T>
T fock_pairing(const FockVector<T>& a, const FockVector<T>& b) {
  require_same_dim(a.dim(), b.dim());
  T sum = T(0);
  const auto& small = a.coeffs().size() <= b.coeffs().size() ? a.coeffs() : b.coeffs();
  const auto& large = a.coeffs().size() <= b.coeffs().size() ? b.coeffs() : a.coeffs();
  for (const auto& [m, c] : small) {
    auto it = large.find(m);
    if (it != large.end()) sum = sum + c * it->second;
  }
  return sum;
}

/// e+(zeta) = sum_n zeta^{^n} / (2n)!, n = 0..floor(d/2).
template <Scalar T>
FockVector<T> exp_vector(const WedgeTensor<T>& zeta) {
  if (zeta.degree() != 2) throw DegreeError("exponential vectors need a degree-2 argument");
  FockVector<T> out(zeta.dim());
  WedgeTensor<T> power = WedgeTensor<T>::scalar(zeta.dim(), T(1));
  for (int n = 0; 2 * n <= zeta.dim(); ++n) {
    if (n > 0) power = wedge_product(power, zeta);
    if (power.is_zero()) break;
    out.add_component(power * (T(1) / factorial<T>(2 * n)));
  }
  return out;
}

template <Scalar T>
void require_even(const FockVector<T>& phi, const char* what) {
  if (phi.parity() != Parity::Even) throw ParityError(std::string(what) + " needs an even Fock vector");
}

/// S-transform via the Fock pairing against e+(zeta).
template <Scalar T>
T s_transform(const FockVector<T>& phi, const WedgeTensor<T>& zeta) {
  require_even(phi, "S-transform");
  return fock_pairing(phi, exp_vector(zeta));
}

/// S-transform as the finite series sum_n <Phi_{2n}, zeta^{^n}>.
template <Scalar T>
T s_transform_series(const FockVector<T>& phi, const WedgeTensor<T>& zeta) {
  require_even(phi, "S-transform");
  if (zeta.degree() != 2) throw DegreeError("S-transform needs a degree-2 argument");
  T sum = T(0);
  WedgeTensor<T> power = WedgeTensor<T>::scalar(zeta.dim(), T(1));
  for (int n = 0; 2 * n <= zeta.dim(); ++n) {
    if (n > 0) power = wedge_product(power, zeta);
    sum = sum + pairing(phi.component(2 * n), power);
  }
  return sum;
}

/// Coefficients a_k of z -> S Phi(z zeta + eta):
///   a_k = sum_n C(n+k, k) <Phi_{2(n+k)}, zeta^{^k} ^ eta^{^n}>.
template <Scalar T>
std::vector<T> s_taylor(const FockVector<T>& phi, const WedgeTensor<T>& zeta, const WedgeTensor<T>& eta) {
  require_even(phi, "S-transform");
  if (zeta.degree() != 2 || eta.degree() != 2) throw DegreeError("S-transform needs degree-2 arguments");
  require_same_dim(zeta.dim(), eta.dim());
  const int top = zeta.dim() / 2;
  std::vector<WedgeTensor<T>> zp{WedgeTensor<T>::scalar(zeta.dim(), T(1))};
  std::vector<WedgeTensor<T>> ep{WedgeTensor<T>::scalar(zeta.dim(), T(1))};
  for (int k = 1; k <= top; ++k) {
    zp.push_back(wedge_product(zp.back(), zeta));
    ep.push_back(wedge_product(ep.back(), eta));
  }
  std::vector<T> a(static_cast<std::size_t>(top) + 1, T(0));
  for (int k = 0; k <= top; ++k) {
    for (int n = 0; n + k <= top; ++n) {
      const auto mixed = wedge_product(zp[static_cast<std::size_t>(k)], ep[static_cast<std::size_t>(n)]);
      if (mixed.is_zero()) continue;
      a[static_cast<std::size_t>(k)] =
          a[static_cast<std::size_t>(k)] + binomial<T>(n + k, k) * pairing(phi.component(2 * (n + k)), mixed);
    }
  }
  return a;
}

namespace detail {
inline void require_vector(int degree) {
  if (degree != 1) throw DegreeError("ladder operators need a degree-1 vector");
}
}  // namespace detail

/// a+(f) phi_n = f ^ phi_n. On basis vectors a+(e_i) e_I = (-1)^{#{j in I: j < i}} e_{I u i}.
template <Scalar T>
FockVector<T> create(const WedgeTensor<T>& f, const FockVector<T>& phi) {
  detail::require_vector(f.degree());
  require_same_dim(f.dim(), phi.dim());
  FockVector<T> out(phi.dim());
  for (const auto& [fi, fc] : f.coeffs()) {
    for (const auto& [m, c] : phi.coeffs()) {
      if (m & fi) continue;
      out.add(m | fi, with_sign(shuffle_sign(fi, m), T(fc * c)));
    }
  }
  return out;
}

/// a(f) phi_n = n f ^^1 phi_n (left contraction). On basis vectors
/// a(e_i) e_I = (-1)^{#{j in I: j < i}} e_{I \ i}; linear in f.
template <Scalar T>
FockVector<T> annihilate(const WedgeTensor<T>& f, const FockVector<T>& phi) {
  detail::require_vector(f.degree());
  require_same_dim(f.dim(), phi.dim());
  FockVector<T> out(phi.dim());
  for (const auto& [fi, fc] : f.coeffs()) {
    for (const auto& [m, c] : phi.coeffs()) {
      if (!(m & fi)) continue;
      const Mask rest = m & ~fi;
      out.add(rest, with_sign(shuffle_sign(fi, rest), T(fc * c)));
    }
  }
  return out;
}

/// W(f) = a+(f) + a(Jf).
template <Scalar T>
FockVector<T> weyl_W(const WedgeTensor<T>& f, const FockVector<T>& phi) {
  return create(f, phi) + annihilate(f.conjugate(), phi);
}

template <Scalar T>
std::pair<FockVector<T>, FockVector<T>> parity_split(const FockVector<T>& phi) {
  FockVector<T> even(phi.dim());
  FockVector<T> odd(phi.dim());
  for (const auto& [m, c] : phi.coeffs()) (popcount(m) % 2 == 0 ? even : odd).add(m, c);
  return {std::move(even), std::move(odd)};
}

}  // namespace fwn
