#pragma once

// Integral kernel operators Xi_{l,m}(kappa) on the even part.
//
// A kernel of type (l, m) is an AltBlockTensor with blocks (2l, 2m). With
// kappa = sum k_{I,J} e_I (x) e_J the operator
//   Xi_{l,m}(kappa) phi_{m+n} = ((2n+2m)!/(2n)!) kappa ^_{2m} phi_{m+n}
// has, in the subset basis, the matrix element
//   <<Xi e_K, e_L>> = sum k_{I,J} sign(M, J) sign(I, M)
// over kernel entries with J inside K, M = K \ J disjoint from I, L = I u M.
// The factorials of the definition cancel exactly against those of the
// storage convention; the dense-contraction oracle in the tests checks this.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fwn/contract.hpp"
#include "fwn/fock.hpp"
#include "fwn/operator_matrix.hpp"
#include "fwn/scalar.hpp"
#include "fwn/subsets.hpp"
#include "fwn/wedge.hpp"

namespace fwn {

template <Scalar T>
class KernelDistribution {
 public:
  KernelDistribution(int dim, int l, int m) : l_(l), m_(m), kernel_(dim, 2 * l, 2 * m) {
    if (l < 0 || m < 0) throw DegreeError("kernel orders must be nonnegative");
  }

  /// Wraps an alt-canonical tensor with even block sizes.
  explicit KernelDistribution(AltBlockTensor<T> kernel)
      : l_(kernel.left() / 2), m_(kernel.right() / 2), kernel_(std::move(kernel)) {
    if (kernel_.left() % 2 != 0 || kernel_.right() % 2 != 0) throw DegreeError("kernel blocks must have even size");
  }

  /// The constant kernel c at (0, 0).
  static KernelDistribution constant(int dim, const T& c) {
    KernelDistribution k(dim, 0, 0);
    k.add(0, 0, c);
    return k;
  }

  int dim() const { return kernel_.dim(); }
  int l() const { return l_; }
  int m() const { return m_; }
  const AltBlockTensor<T>& kernel() const { return kernel_; }
  bool is_zero() const { return kernel_.is_zero(); }
  void add(Mask left, Mask right, const T& v) { kernel_.add(left, right, v); }

  friend bool operator==(const KernelDistribution& a, const KernelDistribution& b) {
    return a.l_ == b.l_ && a.m_ == b.m_ && a.kernel_ == b.kernel_;
  }

 private:
  int l_;
  int m_;
  AltBlockTensor<T> kernel_;
};

/// Xi_{l,m}(kappa) applied to an even vector.
template <Scalar T>
FockVector<T> iko_apply(const KernelDistribution<T>& k, const FockVector<T>& phi) {
  require_same_dim(k.dim(), phi.dim());
  require_even(phi, "integral kernel operator");
  FockVector<T> out(phi.dim());
  for (const auto& [key, kc] : k.kernel().coeffs()) {
    const auto [left, right] = key;
    for (const auto& [mk, c] : phi.coeffs()) {
      if ((mk & right) != right) continue;
      const Mask rest = mk & ~right;
      if (rest & left) continue;
      const int sign = shuffle_sign(rest, right) * shuffle_sign(left, rest);
      out.add(left | rest, with_sign(sign, T(kc * c)));
    }
  }
  return out;
}

/// Matrix of Xi_{l,m}(kappa) over the even sector.
template <Scalar T>
OperatorMatrix<T> iko_matrix(const KernelDistribution<T>& k) {
  OperatorMatrix<T> out(k.dim(), Sector::Even, Sector::Even);
  const auto& basis = out.col_basis();
  for (const auto& [key, kc] : k.kernel().coeffs()) {
    const auto [left, right] = key;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Mask mk = basis[j];
      if ((mk & right) != right) continue;
      const Mask rest = mk & ~right;
      if (rest & left) continue;
      const int sign = shuffle_sign(rest, right) * shuffle_sign(left, rest);
      out.add(left | rest, mk, with_sign(sign, kc));
    }
  }
  return out;
}

/// Xi^(zeta, eta) = <<Xi e+(zeta), e+(eta)>>.
template <Scalar T>
T symbol_eval(const OperatorMatrix<T>& xi, const WedgeTensor<T>& zeta, const WedgeTensor<T>& eta) {
  if (xi.domain() != Sector::Even || xi.codomain() != Sector::Even) throw ParityError("symbols need an even-to-even operator");
  require_same_dim(xi.dim(), zeta.dim());
  require_same_dim(xi.dim(), eta.dim());
  return fock_pairing(xi.apply(exp_vector(zeta)), exp_vector(eta));
}

enum class CarKind { CC, AA, CA };

inline const char* car_kind_name(CarKind k) {
  switch (k) {
    case CarKind::CC: return "cc";
    case CarKind::AA: return "aa";
    case CarKind::CA: return "ca";
  }
  return "?";
}

/// Kernels of the ladder-operator products on the even part.
///   cc: a+(f) a+(g) = Xi_{1,0}(f ^ g)
///   aa: a(f) a(g)   = Xi_{0,1}(g ^ f)   (argument order forced by the left-contraction annihilator)
///   ca: kernel tau(zeta, dGamma(f (x) g)^{(2)} eta) read through the Fock
///       pairing, i.e. the two-particle matrix of a+(f) a(g). Its operator
///       agrees with a+(f) a(g) on degrees 0 and 2 only; on degree 2n it is
///       (2n-1) a+(f) a(g).
template <Scalar T>
KernelDistribution<T> build_car_kernel(CarKind kind, const WedgeTensor<T>& f, const WedgeTensor<T>& g) {
  if (f.degree() != 1 || g.degree() != 1) throw DegreeError("ladder kernels need degree-1 vectors");
  require_same_dim(f.dim(), g.dim());
  const int d = f.dim();
  switch (kind) {
    case CarKind::CC: {
      KernelDistribution<T> k(d, 1, 0);
      const auto fg = wedge_product(f, g);
      for (const auto& [m, c] : fg.coeffs()) k.add(m, 0, c);
      return k;
    }
    case CarKind::AA: {
      KernelDistribution<T> k(d, 0, 1);
      const auto gf = wedge_product(g, f);
      for (const auto& [m, c] : gf.coeffs()) k.add(0, m, c);
      return k;
    }
    case CarKind::CA: {
      KernelDistribution<T> k(d, 1, 1);
      for (Mask col : subsets_of_size(d, 2)) {
        const auto image = create(f, annihilate(g, FockVector<T>::basis(d, col)));
        for (const auto& [row, c] : image.coeffs()) k.add(row, col, c);
      }
      return k;
    }
  }
  throw std::invalid_argument("unknown ladder kernel kind");
}

}  // namespace fwn
