#pragma once

// Numeric certification of the estimates (binary64).
//
// Each check evaluates both sides independently and reports
// holds = lhs <= rhs * (1 + tol). Constants that the estimates only assert
// to exist are built from the operator itself:
//   C_op(s -> t) = Frobenius norm of the weighted matrix w_L^t Xi_{L,K} w_K^{-s},
//   c_e          = sup_{s >= 0} sqrt(sum_{n <= d/2} s^{2n} / (2n)!) / exp(s^2 / 8),
//   C0(p, q, r)  = C_op(max{p, q} -> p + r) * c_e^2.

#include <optional>
#include <string>
#include <vector>

#include "fwn/contract.hpp"
#include "fwn/fock.hpp"
#include "fwn/kernelop.hpp"
#include "fwn/modespace.hpp"
#include "fwn/operator_matrix.hpp"
#include "fwn/wedge.hpp"

namespace fwn {

enum class BoundId { B1 = 1, B2, B3, B4, B5, B6, B7, B8, B9, B10, B11, B12 };

std::string bound_name(BoundId id);
/// Short description of the estimate behind each id.
std::string bound_statement(BoundId id);

inline constexpr double kBoundTol = 1e-12;

struct BoundParams {
  double p = 0;
  double q = 0;
  double r = 0;
  double alpha = 0;
};

struct BoundReport {
  BoundId id;
  BoundParams params;
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
  std::string detail;
};

BoundReport make_report(BoundId id, BoundParams params, double lhs, double rhs, std::string detail = {});

class BoundDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using FMode = ModeSpace<double>;
using FWedge = WedgeTensor<double>;
using FDense = DenseTensor<double>;
using FFock = FockVector<double>;
using FMatrix = OperatorMatrix<double>;
using FKernel = KernelDistribution<double>;

/// B1: |F (x)^m g|_p <= rho^{(m+n)r} |F|_{m,l;-q,p} |g|_{max{p,q}+r} (left),
///     |F (x)_m g|_p <= rho^{(m+n)r} |F|_{l,m;p,-q} |g|_{max{p,q}+r} (right).
BoundReport check_contraction(const FMode& ms, const FDense& f, const FDense& g, int m, Side side, BoundParams bp);

/// B2: the same estimate for the alternized contractions of wedge tensors.
BoundReport check_wedge_contraction(const FMode& ms, const FWedge& f, const FWedge& g, int m, Side side,
                                    BoundParams bp);

/// B3: ||Xi_{l,m}(kappa) phi||_p <= rho^{-r/2} ((2l)^{2l} (2m)^{2m})^{1/2}
///     (rho^{-r/2} / (-r e log rho))^{l+m} |kappa|_{2l,2m;p,-q} ||phi||_{max{p,q}+r}.
BoundReport check_iko(const FMode& ms, const FKernel& k, const FFock& phi, BoundParams bp);

/// sup_{x >= 0} (x+m)...(x+1) rho^{c x}, by bisection on the concave log.
double sup_falling(int m, double c, double rho);

/// B4: sup_{x>=0} (x+m)...(x+1) rho^{cx} <= rho^{-c/2} m^m (rho^{-c/2} / (-c e log rho))^m.
BoundReport check_sup(int m, double c, double rho);

double exp_vector_constant(int dim);
double operator_constant(const FMode& ms, const FMatrix& xi, double s_in, double s_out);
double symbol_constant(const FMode& ms, const FMatrix& xi, double p, double q, double r);

/// B5: |Xi^(zeta, eta)| <= C0 exp[rho^{4r}/8 (|zeta|^2_{max{p,q}+r} + |eta|^2_{-p})].
BoundReport check_symbol_growth(const FMode& ms, const FMatrix& xi, const FWedge& zeta, const FWedge& eta,
                                BoundParams bp);

/// B6: Taylor coefficients of (z, w) -> Xi^(z zeta, w eta); one report per
/// coefficient (l = power of z, m = power of w).
std::vector<BoundReport> check_taylor(const FMode& ms, const FMatrix& xi, const FWedge& zeta, const FWedge& eta,
                                      BoundParams bp);

/// B7: |K_{l,m}|_{2l,2m;p,-max{p+a,q}-r-a} <= C0 (e delta^4 rho^{4r})^{(l+m)/2} ((2l)!(2m)!)^{-1/2},
/// with C0 taken at (p + alpha, q, r).
BoundReport check_K_decay(const FMode& ms, const FMatrix& xi, int l, int m, BoundParams bp);

struct KappaConstants {
  double c0;
  double c1;
  double c2;
  double c3;
};

/// C1 = 2 C0 e^{1 + 2 sqrt(C3)}, C2 = max{1, 2 e C3}, C3 = sqrt(e delta^4),
/// C0 at (p + r + alpha, q, r).
KappaConstants kappa_constants(const FMode& ms, const FMatrix& xi, BoundParams bp);

/// B8: |kappa_{l,m}|_{2l,2m;p,-max{p+r+a,q}-3r-2a} <= C1 (C2 rho^{2r})^{l+m} ((2l)!(2m)!)^{-1/2}.
BoundReport check_kappa_decay(const FMode& ms, const FMatrix& xi, const FKernel& kappa, BoundParams bp);

enum class Ladder { Create, Annihilate };

/// B9: ||a(f) phi||_p <= (rho^{-2r} / (-2r e log rho))^{1/2} |f|_{-(q+r)} ||phi||_{max{p,q}+r},
///     ||a+(f) phi||_p <= (same) |f|_p ||phi||_{max{p,q}+r}.
BoundReport check_ladder(const FMode& ms, Ladder kind, const FWedge& f, const FFock& phi, BoundParams bp);

/// B10: sum_{n=0}^{N} (n+k)! / (n! n!) t^n <= (t+k)^k e^t.
BoundReport check_series(double t, int k, int terms);

/// B11: (2l)! <= (2^l l!)^2.
BoundReport check_factorial(int l);

struct ConvergenceResult {
  double r = 0;
  double R = 0;
  double tail = 0;
  BoundReport report;
};

/// B12: searches r >= r0 (doubling) with R < 1, where
/// R = (C2/2) rho^{2r} rho^{-r/2} / log(rho^{-r/2}); then certifies
/// sum ||Xi_{l,m}(kappa_{l,m}) phi||_p <= C1 rho^{-r/2} / (1-R)^2 ||phi||_N
/// with N = max{p+r+a, q} + 4r + 2a.
ConvergenceResult check_convergence(const FMode& ms, const FMatrix& xi, const FFock& phi, BoundParams bp);

}  // namespace fwn
