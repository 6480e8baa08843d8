#pragma once

// One-particle data: d modes e_1..e_d, diagonal A e_j = lambda_j e_j, and the
// Hilbert-Schmidt exponent alpha. Every weighted norm in the library is
// generated from here.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwn/scalar.hpp"
#include "fwn/subsets.hpp"

namespace fwn {

class ModeSpaceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <Scalar T>
class ModeSpace {
 public:
  using Real = real_t<T>;
  using Exponent = exponent_t<T>;

  /// Validates 1 < lambda_1 <= ... <= lambda_d and d >= 1.
  ModeSpace(int d, std::vector<Real> lambdas, Real alpha) : d_(d), lambdas_(std::move(lambdas)), alpha_(alpha) {
    if (d_ < 1) throw ModeSpaceError("mode count must be at least 1");
    if (d_ > kMaxModes) throw ModeSpaceError("mode count exceeds " + std::to_string(kMaxModes));
    if (static_cast<int>(lambdas_.size()) != d_) {
      throw ModeSpaceError("expected " + std::to_string(d_) + " eigenvalues, got " + std::to_string(lambdas_.size()));
    }
    if (!(lambdas_.front() > Real(1))) throw ModeSpaceError("lambda_1 <= 1: rho >= 1 breaks every estimate");
    for (int j = 1; j < d_; ++j) {
      if (lambdas_[j] < lambdas_[j - 1]) throw ModeSpaceError("eigenvalues must be nondecreasing");
    }
    if (alpha_ < Real(0)) throw ModeSpaceError("alpha must be nonnegative");
  }

  int dim() const { return d_; }
  const std::vector<Real>& lambdas() const { return lambdas_; }
  const Real& lambda(int j) const { return lambdas_.at(j); }
  const Real& alpha() const { return alpha_; }

  /// prod_{i in modes} lambda_i^p: the |.|_p weight of the basis tensor
  /// e(i) (modes may repeat).
  Real mode_weight(std::span<const int> modes, Exponent p) const {
    Real w = Real(1);
    for (int i : modes) {
      if (i < 0 || i >= d_) throw std::out_of_range("mode index outside the mode space");
      w = w * scalar_traits<T>::pow(lambdas_[i], p);
    }
    return w;
  }

  Real mode_weight(Mask subset, Exponent p) const {
    const auto modes = modes_of(subset);
    return mode_weight(modes, p);
  }

  /// rho = 1/lambda_1, the operator norm of A^{-1}.
  Real rho() const { return Real(1) / lambdas_.front(); }

  /// delta^2 = sum_j lambda_j^{-2 alpha}. Exact only when alpha is an
  /// integer in rational mode.
  Real delta_sq() const
    requires(!scalar_traits<T>::exact)
  {
    Real s = Real(0);
    for (const auto& l : lambdas_) s += scalar_traits<T>::pow(l, -2 * alpha_);
    return s;
  }

  Real delta_sq() const
    requires(scalar_traits<T>::exact)
  {
    // lambda^{-2 alpha} with 2 alpha = a/b needs exact b-th roots.
    const Real e = Real(2) * alpha_;
    const unsigned long b = e.get_den().get_ui();
    const unsigned long a = e.get_num().get_ui();
    Real s = Real(0);
    for (const auto& l : lambdas_) {
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), l.get_num_mpz_t(), a);
      mpz_pow_ui(den.get_mpz_t(), l.get_den_mpz_t(), a);
      mpz_class rn, rd;
      const bool exact_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), b) != 0;
      const bool exact_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), b) != 0;
      if (!exact_n || !exact_d) throw ModeSpaceError("delta^2 is irrational for this alpha; use float arithmetic");
      Real term(rd, rn);
      term.canonicalize();
      s += term;
    }
    return s;
  }

  bool operator==(const ModeSpace&) const = default;

 private:
  int d_;
  std::vector<Real> lambdas_;
  Real alpha_;
};

/// Convenience: d modes with lambda_j = j + 1 (j = 1..d) and alpha = 1.
template <Scalar T>
ModeSpace<T> default_mode_space(int d) {
  std::vector<real_t<T>> l;
  for (int j = 1; j <= d; ++j) l.push_back(real_t<T>(j + 1));
  return ModeSpace<T>(d, std::move(l), real_t<T>(1));
}

template <Scalar T>
struct SchwartzConstants {
  real_t<T> rho;
  real_t<T> delta_sq;
};

template <Scalar T>
SchwartzConstants<T> schwartz_constants(const ModeSpace<T>& ms) {
  return {ms.rho(), ms.delta_sq()};
}

}  // namespace fwn
