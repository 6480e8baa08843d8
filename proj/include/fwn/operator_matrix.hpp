#pragma once

// Linear operators on the truncated Fock space as dense matrices over the
// subset basis of a parity sector.
//
// Basis order within a sector: by degree, then lexicographic on the
// ascending mode list (basis_less). The subset basis is orthonormal for the
// Fock pairing, so the pairing adjoint of a matrix is its transpose.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "fwn/fock.hpp"
#include "fwn/scalar.hpp"
#include "fwn/subsets.hpp"
#include "fwn/wedge.hpp"

namespace fwn {

enum class Sector { Even, Odd, Full };

inline const char* sector_name(Sector s) {
  switch (s) {
    case Sector::Even: return "even";
    case Sector::Odd: return "odd";
    case Sector::Full: return "full";
  }
  return "?";
}

inline bool in_sector(Mask m, Sector s) {
  if (s == Sector::Full) return true;
  return (popcount(m) % 2 == 0) == (s == Sector::Even);
}

/// Ordered subset basis of one sector with O(1) index lookup.
class SectorBasis {
 public:
  SectorBasis(int dim, Sector sector);

  int dim() const { return dim_; }
  Sector sector() const { return sector_; }
  std::size_t size() const { return masks_.size(); }
  Mask operator[](std::size_t i) const { return masks_[i]; }
  const std::vector<Mask>& masks() const { return masks_; }

  /// Position of `m`, or -1 when `m` lies outside the sector.
  long index(Mask m) const {
    if ((m & ~full_mask(dim_)) != 0) return -1;
    return position_[m];
  }

  static std::shared_ptr<const SectorBasis> get(int dim, Sector sector);

 private:
  int dim_;
  Sector sector_;
  std::vector<Mask> masks_;
  std::vector<long> position_;
};

template <Scalar T>
class OperatorMatrix {
 public:
  OperatorMatrix(int dim, Sector domain, Sector codomain)
      : dim_(dim),
        cols_(SectorBasis::get(dim, domain)),
        rows_(SectorBasis::get(dim, codomain)),
        data_(cols_->size() * rows_->size(), T(0)) {}

  static OperatorMatrix identity(int dim, Sector sector) {
    OperatorMatrix out(dim, sector, sector);
    for (std::size_t i = 0; i < out.rows(); ++i) out.data_[i * out.cols() + i] = T(1);
    return out;
  }

  /// Column j is op(basis vector j), restricted to the codomain sector.
  static OperatorMatrix from_function(int dim, Sector domain, Sector codomain,
                                      const std::function<FockVector<T>(const FockVector<T>&)>& op) {
    OperatorMatrix out(dim, domain, codomain);
    for (std::size_t j = 0; j < out.cols(); ++j) {
      const auto image = op(FockVector<T>::basis(dim, (*out.cols_)[j]));
      for (const auto& [m, c] : image.coeffs()) {
        const long i = out.rows_->index(m);
        if (i < 0) throw ParityError("operator image leaves the codomain sector");
        out.data_[static_cast<std::size_t>(i) * out.cols() + j] = c;
      }
    }
    return out;
  }

  int dim() const { return dim_; }
  Sector domain() const { return cols_->sector(); }
  Sector codomain() const { return rows_->sector(); }
  std::size_t rows() const { return rows_->size(); }
  std::size_t cols() const { return cols_->size(); }
  const SectorBasis& row_basis() const { return *rows_; }
  const SectorBasis& col_basis() const { return *cols_; }

  const T& at(std::size_t i, std::size_t j) const { return data_[i * cols() + j]; }
  T& at(std::size_t i, std::size_t j) { return data_[i * cols() + j]; }

  /// Matrix element <<Xi e_col, e_row>>; zero outside the sectors.
  T element(Mask row, Mask col) const {
    const long i = rows_->index(row);
    const long j = cols_->index(col);
    if (i < 0 || j < 0) return T(0);
    return at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }

  void add(Mask row, Mask col, const T& value) {
    const long i = rows_->index(row);
    const long j = cols_->index(col);
    if (i < 0 || j < 0) throw ParityError("matrix entry outside the operator sectors");
    auto& slot = at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    slot = slot + value;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return fwn::is_zero(v); });
  }

  FockVector<T> apply(const FockVector<T>& phi) const {
    require_same_dim(dim_, phi.dim());
    FockVector<T> out(dim_);
    std::vector<T> acc(rows(), T(0));
    for (const auto& [m, c] : phi.coeffs()) {
      const long j = cols_->index(m);
      if (j < 0) throw ParityError("vector outside the operator domain");
      for (std::size_t i = 0; i < rows(); ++i) {
        const T& a = at(i, static_cast<std::size_t>(j));
        if (!fwn::is_zero(a)) acc[i] = acc[i] + a * c;
      }
    }
    for (std::size_t i = 0; i < rows(); ++i) out.add((*rows_)[i], acc[i]);
    return out;
  }

  /// Pairing adjoint (bilinear): <<X^t Psi, phi>> = <<Psi, X phi>>.
  OperatorMatrix transpose() const {
    OperatorMatrix out(dim_, codomain(), domain());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) out.at(j, i) = at(i, j);
    return out;
  }

  /// Copy with the given sectors; entries outside them are dropped, new
  /// slots are zero.
  OperatorMatrix resector(Sector domain, Sector codomain) const {
    OperatorMatrix out(dim_, domain, codomain);
    for (std::size_t i = 0; i < out.rows(); ++i) {
      const long si = rows_->index(out.row_basis()[i]);
      if (si < 0) continue;
      for (std::size_t j = 0; j < out.cols(); ++j) {
        const long sj = cols_->index(out.col_basis()[j]);
        if (sj < 0) continue;
        out.at(i, j) = at(static_cast<std::size_t>(si), static_cast<std::size_t>(sj));
      }
    }
    return out;
  }

  OperatorMatrix& operator+=(const OperatorMatrix& o) {
    check_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] + o.data_[k];
    return *this;
  }
  OperatorMatrix& operator-=(const OperatorMatrix& o) {
    check_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] - o.data_[k];
    return *this;
  }
  OperatorMatrix& operator*=(const T& s) {
    for (auto& v : data_) v = v * s;
    return *this;
  }
  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(OperatorMatrix a, const T& s) { return a *= s; }

  /// Composition a * b (apply b first).
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require_same_dim(a.dim_, b.dim_);
    if (a.domain() != b.codomain()) throw ParityError("composition across mismatched sectors");
    OperatorMatrix out(a.dim_, b.domain(), a.codomain());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        const T& x = a.at(i, k);
        if (fwn::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) {
          const T& y = b.at(k, j);
          if (!fwn::is_zero(y)) out.at(i, j) = out.at(i, j) + x * y;
        }
      }
    }
    return out;
  }

  friend bool operator==(const OperatorMatrix& a, const OperatorMatrix& b) {
    return a.dim_ == b.dim_ && a.domain() == b.domain() && a.codomain() == b.codomain() && a.data_ == b.data_;
  }

  /// Nonzero (out_degree, in_degree) blocks as sparse entry lists.
  std::map<std::pair<int, int>, std::vector<std::tuple<Mask, Mask, T>>> blocks() const {
    std::map<std::pair<int, int>, std::vector<std::tuple<Mask, Mask, T>>> out;
    for (std::size_t i = 0; i < rows(); ++i) {
      for (std::size_t j = 0; j < cols(); ++j) {
        const T& v = at(i, j);
        if (fwn::is_zero(v)) continue;
        const Mask r = (*rows_)[i];
        const Mask c = (*cols_)[j];
        out[{popcount(r), popcount(c)}].emplace_back(r, c, v);
      }
    }
    return out;
  }

 private:
  void check_shape(const OperatorMatrix& o) const {
    require_same_dim(dim_, o.dim_);
    if (domain() != o.domain() || codomain() != o.codomain()) throw ParityError("operator sector mismatch");
  }

  int dim_;
  std::shared_ptr<const SectorBasis> cols_;
  std::shared_ptr<const SectorBasis> rows_;
  std::vector<T> data_;
};

template <Scalar T>
OperatorMatrix<T> creation_matrix(const WedgeTensor<T>& f) {
  return OperatorMatrix<T>::from_function(f.dim(), Sector::Full, Sector::Full,
                                          [&](const FockVector<T>& v) { return create(f, v); });
}

template <Scalar T>
OperatorMatrix<T> annihilation_matrix(const WedgeTensor<T>& f) {
  return OperatorMatrix<T>::from_function(f.dim(), Sector::Full, Sector::Full,
                                          [&](const FockVector<T>& v) { return annihilate(f, v); });
}

template <Scalar T>
OperatorMatrix<T> weyl_matrix(const WedgeTensor<T>& f) {
  return OperatorMatrix<T>::from_function(f.dim(), Sector::Full, Sector::Full,
                                          [&](const FockVector<T>& v) { return weyl_W(f, v); });
}

}  // namespace fwn
