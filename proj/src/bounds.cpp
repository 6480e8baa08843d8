#include "fwn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fwn/expansion.hpp"

namespace fwn {

namespace {

constexpr double kE = std::numbers::e;

double fact(int n) { return std::tgamma(n + 1.0); }

// |F|^2 with F read as a block tensor split after `left` slots.
double mixed_sq(const FMode& ms, const FDense& f, int left, double p, double q) {
  return mixed_norm_sq(ms, BlockTensor<double>(f, left), p, q);
}

std::string fmt_lm(int l, int m) {
  std::ostringstream os;
  os << "(l,m)=(" << l << "," << m << ")";
  return os.str();
}

}  // namespace

std::string bound_name(BoundId id) { return "B" + std::to_string(static_cast<int>(id)); }

std::string bound_statement(BoundId id) {
  switch (id) {
    case BoundId::B1: return "tensor contraction estimate";
    case BoundId::B2: return "antisymmetric contraction estimate";
    case BoundId::B3: return "integral kernel operator estimate";
    case BoundId::B4: return "sup_{x>=0} (x+m)...(x+1) rho^{cx} estimate";
    case BoundId::B5: return "symbol growth estimate";
    case BoundId::B6: return "Taylor coefficient estimate";
    case BoundId::B7: return "K_{l,m} decay estimate";
    case BoundId::B8: return "kappa_{l,m} decay estimate";
    case BoundId::B9: return "ladder operator estimate";
    case BoundId::B10: return "auxiliary series estimate";
    case BoundId::B11: return "factorial estimate";
    case BoundId::B12: return "Fock expansion convergence constant";
  }
  return "?";
}

BoundReport make_report(BoundId id, BoundParams params, double lhs, double rhs, std::string detail) {
  BoundReport r{id, params, lhs, rhs, false, std::move(detail)};
  r.holds = std::isfinite(lhs) && !std::isnan(rhs) && lhs <= rhs * (1 + kBoundTol);
  return r;
}

BoundReport check_contraction(const FMode& ms, const FDense& f, const FDense& g, int m, Side side, BoundParams bp) {
  if (bp.r < 0) throw BoundDomainError("B1 needs r >= 0");
  const int l = f.degree() - m;
  const int n = g.degree() - m;
  const auto c = side == Side::Left ? contract_left(f, g, m) : contract_right(f, g, m);
  const double lhs = std::sqrt(norm_p_sq(ms, c.body(), bp.p));
  const double fn = side == Side::Left ? mixed_sq(ms, f, m, -bp.q, bp.p) : mixed_sq(ms, f, l, bp.p, -bp.q);
  const double rhs = std::pow(ms.rho(), (m + n) * bp.r) * std::sqrt(fn) *
                     std::sqrt(norm_p_sq(ms, g, std::max(bp.p, bp.q) + bp.r));
  return make_report(BoundId::B1, bp, lhs, rhs, std::string(side == Side::Left ? "left " : "right ") + fmt_lm(l, m));
}

BoundReport check_wedge_contraction(const FMode& ms, const FWedge& f, const FWedge& g, int m, Side side,
                                    BoundParams bp) {
  if (bp.r < 0) throw BoundDomainError("B2 needs r >= 0");
  const int l = f.degree() - m;
  const int n = g.degree() - m;
  const auto c = wedge_contract(f, g, m, side);
  const double lhs = std::sqrt(norm_p_sq(ms, c, bp.p));
  const auto fd = embed_dense(f);
  const double fn = side == Side::Left ? mixed_sq(ms, fd, m, -bp.q, bp.p) : mixed_sq(ms, fd, l, bp.p, -bp.q);
  const double rhs = std::pow(ms.rho(), (m + n) * bp.r) * std::sqrt(fn) *
                     std::sqrt(norm_p_sq(ms, g, std::max(bp.p, bp.q) + bp.r));
  return make_report(BoundId::B2, bp, lhs, rhs, std::string(side == Side::Left ? "left " : "right ") + fmt_lm(l, m));
}

BoundReport check_iko(const FMode& ms, const FKernel& k, const FFock& phi, BoundParams bp) {
  if (bp.r <= 0) throw BoundDomainError("B3 needs r > 0");
  const double rho = ms.rho();
  const int l = k.l();
  const int m = k.m();
  const double lhs = std::sqrt(fock_norm_sq(ms, iko_apply(k, phi), bp.p));
  const double base = std::pow(rho, -bp.r / 2) / (-bp.r * kE * std::log(rho));
  const double rhs = std::pow(rho, -bp.r / 2) *
                     std::sqrt(std::pow(2.0 * l, 2.0 * l) * std::pow(2.0 * m, 2.0 * m)) * std::pow(base, l + m) *
                     std::sqrt(mixed_norm_sq(ms, k.kernel(), bp.p, -bp.q)) *
                     std::sqrt(fock_norm_sq(ms, phi, std::max(bp.p, bp.q) + bp.r));
  return make_report(BoundId::B3, bp, lhs, rhs, fmt_lm(l, m));
}

double sup_falling(int m, double c, double rho) {
  const double lr = c * std::log(rho);  // < 0
  auto slope = [&](double x) {
    double s = lr;
    for (int j = 1; j <= m; ++j) s += 1.0 / (x + j);
    return s;
  };
  auto value = [&](double x) {
    double v = c * x * std::log(rho);
    for (int j = 1; j <= m; ++j) v += std::log(x + j);
    return std::exp(v);
  };
  if (slope(0.0) <= 0) return value(0.0);
  double lo = 0.0;
  double hi = 1.0;
  while (slope(hi) > 0) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (slope(mid) > 0 ? lo : hi) = mid;
  }
  return value(0.5 * (lo + hi));
}

BoundReport check_sup(int m, double c, double rho) {
  if (c <= 0) throw BoundDomainError("B4 needs c > 0");
  if (!(rho > 0 && rho < 1)) throw BoundDomainError("B4 needs 0 < rho < 1");
  const double lhs = sup_falling(m, c, rho);
  const double rhs = std::pow(rho, -c / 2) * std::pow(double(m), double(m)) *
                     std::pow(std::pow(rho, -c / 2) / (-c * kE * std::log(rho)), m);
  BoundParams bp;
  bp.r = c;
  std::ostringstream os;
  os << "m=" << m << " c=" << c << " rho=" << rho;
  return make_report(BoundId::B4, bp, lhs, rhs, os.str());
}

double exp_vector_constant(int dim) {
  static std::mutex lock;
  static std::map<int, double> cache;
  {
    std::lock_guard<std::mutex> g(lock);
    if (auto it = cache.find(dim); it != cache.end()) return it->second;
  }
  const int top = dim / 2;
  auto ratio = [&](double s) {
    double sum = 0;
    for (int n = 0; n <= top; ++n) sum += std::pow(s, 2 * n) / fact(2 * n);
    return std::sqrt(sum) / std::exp(s * s / 8);
  };
  // The ratio is smooth, starts at 1 and decays like exp(-s^2/8) s^top.
  double best = 1.0;
  for (double s = 0; s <= 12.0 + 4.0 * top; s += 1e-3) best = std::max(best, ratio(s));
  best *= 1 + 1e-6;
  std::lock_guard<std::mutex> g(lock);
  cache[dim] = best;
  return best;
}

double operator_constant(const FMode& ms, const FMatrix& xi, double s_in, double s_out) {
  double sum = 0;
  for (std::size_t i = 0; i < xi.rows(); ++i) {
    const double wr = ms.mode_weight(xi.row_basis()[i], s_out);
    for (std::size_t j = 0; j < xi.cols(); ++j) {
      const double v = xi.at(i, j);
      if (v == 0) continue;
      const double wc = ms.mode_weight(xi.col_basis()[j], s_in);
      sum += v * v * wr * wr / (wc * wc);
    }
  }
  return std::sqrt(sum);
}

double symbol_constant(const FMode& ms, const FMatrix& xi, double p, double q, double r) {
  const double ce = exp_vector_constant(ms.dim());
  return operator_constant(ms, xi, std::max(p, q), p + r) * ce * ce;
}

BoundReport check_symbol_growth(const FMode& ms, const FMatrix& xi, const FWedge& zeta, const FWedge& eta,
                                BoundParams bp) {
  if (bp.r < 0) throw BoundDomainError("B5 needs r >= 0");
  const double rho = ms.rho();
  const double lhs = std::abs(symbol_eval(xi, zeta, eta));
  const double c0 = symbol_constant(ms, xi, bp.p, bp.q, bp.r);
  const double rhs = c0 * std::exp(std::pow(rho, 4 * bp.r) / 8 *
                                   (norm_p_sq(ms, zeta, std::max(bp.p, bp.q) + bp.r) + norm_p_sq(ms, eta, -bp.p)));
  return make_report(BoundId::B5, bp, lhs, rhs, "C0=" + std::to_string(c0));
}

std::vector<BoundReport> check_taylor(const FMode& ms, const FMatrix& xi, const FWedge& zeta, const FWedge& eta,
                                      BoundParams bp) {
  if (bp.r < 0) throw BoundDomainError("B6 needs r >= 0");
  const double rho = ms.rho();
  const int d = ms.dim();
  const double c0 = symbol_constant(ms, xi, bp.p, bp.q, bp.r);
  const double k1 = std::pow(rho, 4 * bp.r) / 8 * norm_p_sq(ms, zeta, std::max(bp.p, bp.q) + bp.r);
  const double k2 = std::pow(rho, 4 * bp.r) / 8 * norm_p_sq(ms, eta, -bp.p);
  std::vector<BoundReport> out;
  FWedge zp = FWedge::scalar(d, 1.0);
  for (int l = 0; 2 * l <= d; ++l) {
    if (l > 0) zp = wedge_product(zp, zeta);
    const auto image = xi.apply(FFock::from_wedge(zp * (1.0 / fact(2 * l))));
    FWedge ep = FWedge::scalar(d, 1.0);
    for (int m = 0; 2 * m <= d; ++m) {
      if (m > 0) ep = wedge_product(ep, eta);
      const double a = fock_pairing(image, FFock::from_wedge(ep * (1.0 / fact(2 * m))));
      const double f1 = l == 0 ? 1.0 : std::pow(2 * kE * k1 / l, l / 2.0);
      const double f2 = m == 0 ? 1.0 : std::pow(2 * kE * k2 / m, m / 2.0);
      out.push_back(make_report(BoundId::B6, bp, std::abs(a), c0 * f1 * f2, "z^" + std::to_string(l) + " w^" + std::to_string(m)));
    }
  }
  return out;
}

BoundReport check_K_decay(const FMode& ms, const FMatrix& xi, int l, int m, BoundParams bp) {
  if (bp.r < 0) throw BoundDomainError("B7 needs r >= 0");
  const auto K = extract_K(xi);
  const auto it = K.find({l, m});
  if (it == K.end()) throw BoundDomainError("B7: (l, m) outside the mode range");
  const double a = bp.alpha;
  const double rho = ms.rho();
  const double delta_sq = ms.delta_sq();
  const double lhs = std::sqrt(mixed_norm_sq(ms, it->second, bp.p, -(std::max(bp.p + a, bp.q) + bp.r + a)));
  const double c0 = symbol_constant(ms, xi, bp.p + a, bp.q, bp.r);
  const double rhs = c0 * std::pow(kE * delta_sq * delta_sq * std::pow(rho, 4 * bp.r), (l + m) / 2.0) /
                     std::sqrt(fact(2 * l) * fact(2 * m));
  return make_report(BoundId::B7, bp, lhs, rhs, fmt_lm(l, m));
}

KappaConstants kappa_constants(const FMode& ms, const FMatrix& xi, BoundParams bp) {
  KappaConstants c{};
  const double delta_sq = ms.delta_sq();
  c.c0 = symbol_constant(ms, xi, bp.p + bp.r + bp.alpha, bp.q, bp.r);
  c.c3 = std::sqrt(kE * delta_sq * delta_sq);
  c.c1 = 2 * c.c0 * std::exp(1 + 2 * std::sqrt(c.c3));
  c.c2 = std::max(1.0, 2 * kE * c.c3);
  return c;
}

BoundReport check_kappa_decay(const FMode& ms, const FMatrix& xi, const FKernel& kappa, BoundParams bp) {
  if (bp.r < 0) throw BoundDomainError("B8 needs r >= 0");
  const int l = kappa.l();
  const int m = kappa.m();
  const double a = bp.alpha;
  const auto c = kappa_constants(ms, xi, bp);
  const double lhs =
      std::sqrt(mixed_norm_sq(ms, kappa.kernel(), bp.p, -(std::max(bp.p + bp.r + a, bp.q) + 3 * bp.r + 2 * a)));
  const double rhs = c.c1 * std::pow(c.c2 * std::pow(ms.rho(), 2 * bp.r), l + m) / std::sqrt(fact(2 * l) * fact(2 * m));
  return make_report(BoundId::B8, bp, lhs, rhs, fmt_lm(l, m));
}

BoundReport check_ladder(const FMode& ms, Ladder kind, const FWedge& f, const FFock& phi, BoundParams bp) {
  if (bp.r <= 0) throw BoundDomainError("B9 needs r > 0");
  const double rho = ms.rho();
  const auto image = kind == Ladder::Create ? create(f, phi) : annihilate(f, phi);
  const double lhs = std::sqrt(fock_norm_sq(ms, image, bp.p));
  const double fn = kind == Ladder::Create ? norm_p_sq(ms, f, bp.p) : norm_p_sq(ms, f, -(bp.q + bp.r));
  const double rhs = std::sqrt(std::pow(rho, -2 * bp.r) / (-2 * bp.r * kE * std::log(rho))) * std::sqrt(fn) *
                     std::sqrt(fock_norm_sq(ms, phi, std::max(bp.p, bp.q) + bp.r));
  return make_report(BoundId::B9, bp, lhs, rhs, kind == Ladder::Create ? "creation" : "annihilation");
}

BoundReport check_series(double t, int k, int terms) {
  if (t < 0 || k < 0 || terms < 0) throw BoundDomainError("B10 needs t >= 0, k >= 0");
  double lhs = 0;
  for (int n = 0; n <= terms; ++n) lhs += std::exp(std::lgamma(n + k + 1.0) - 2 * std::lgamma(n + 1.0)) * std::pow(t, n);
  const double rhs = std::pow(t + k, k) * std::exp(t);
  std::ostringstream os;
  os << "t=" << t << " k=" << k << " N=" << terms;
  return make_report(BoundId::B10, BoundParams{}, lhs, rhs, os.str());
}

BoundReport check_factorial(int l) {
  if (l < 0) throw BoundDomainError("B11 needs l >= 0");
  const double lhs = fact(2 * l);
  const double rhs = std::pow(std::pow(2.0, l) * fact(l), 2);
  return make_report(BoundId::B11, BoundParams{}, lhs, rhs, "l=" + std::to_string(l));
}

ConvergenceResult check_convergence(const FMode& ms, const FMatrix& xi, const FFock& phi, BoundParams bp) {
  if (bp.r <= 0) throw BoundDomainError("B12 needs r > 0");
  const double rho = ms.rho();
  const double c3 = std::sqrt(kE * ms.delta_sq() * ms.delta_sq());
  const double c2 = std::max(1.0, 2 * kE * c3);
  auto R_of = [&](double r) {
    return c2 / 2 * std::pow(rho, 2 * r) * std::pow(rho, -r / 2) / std::log(std::pow(rho, -r / 2));
  };
  double r = bp.r;
  while (R_of(r) >= 1) {
    r *= 2;
    if (r > 1e4) throw BoundDomainError("B12: no r with R < 1 below 1e4");
  }
  BoundParams at = bp;
  at.r = r;
  const double R = R_of(r);
  const auto c = kappa_constants(ms, xi, at);
  const double a = bp.alpha;
  const double N = std::max(bp.p + r + a, bp.q) + 4 * r + 2 * a;
  const double phin = std::sqrt(fock_norm_sq(ms, phi, N));
  const auto fam = extract_kappa(xi);
  double lhs = 0;
  double worst = 0;
  for (const auto& [lm, k] : fam.terms) {
    const double term = std::sqrt(fock_norm_sq(ms, iko_apply(k, phi), bp.p));
    const double bound = c.c1 * std::pow(rho, -r / 2) * std::pow(R, lm.first + lm.second) * phin;
    worst = std::max(worst, bound > 0 ? term / bound : (term > 0 ? INFINITY : 0));
    lhs += term;
  }
  const double tail = c.c1 * std::pow(rho, -r / 2) / ((1 - R) * (1 - R)) * phin;
  std::ostringstream os;
  os << "r=" << r << " R=" << R << " worst_term_ratio=" << worst;
  auto report = make_report(BoundId::B12, at, lhs, tail, os.str());
  report.holds = report.holds && worst <= 1 + kBoundTol;
  return {r, R, tail, report};
}

}  // namespace fwn
