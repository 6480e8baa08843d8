// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fwn/bounds.hpp"
#include "fwn/expansion.hpp"
#include "fwn/fock.hpp"
#include "fwn/kernelop.hpp"
#include "fwn/linalg.hpp"
#include "fwn/suites.hpp"
#include "oracle.hpp"

using namespace fwn;
using Q = Rational;
using W = WedgeTensor<Q>;
using F = FockVector<Q>;
using M = OperatorMatrix<Q>;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Exact unit vector from inverse stereographic projection of a random point.
W random_unit_vector(oracle::Rng& rng, int d) {
  std::vector<Q> t;
  Q s = 0;
  for (int i = 0; i + 1 < d; ++i) {
    t.push_back(rng.rational());
    s += t.back() * t.back();
  }
  std::vector<Q> v;
  for (const auto& x : t) v.push_back(2 * x / (1 + s));
  v.push_back((s - 1) / (1 + s));
  return W::vector(v);
}

W random_two_form(oracle::Rng& rng, int d, double density = 0.8) { return oracle::random_wedge(rng, d, 2, density); }

// Subset coefficients of zeta^{^n} from dense alternation, indexed by mask.
oracle::Vec oracle_power(const W& zeta, int n) {
  const int d = zeta.dim();
  oracle::Dense p(d, 0);
  p[{}] = 1;
  const auto z = oracle::dense_of(zeta);
  for (int k = 0; k < n; ++k) p = oracle::alternate(oracle::tensor(p, z));
  oracle::Vec out(std::size_t{1} << d, Q(0));
  for (Mask m : subsets_of_size(d, 2 * n)) out[m] = factorial<Q>(2 * n) * p[modes_of(m)];
  return out;
}

// e+(zeta) as a full 2^d vector.
oracle::Vec oracle_exp(const W& zeta) {
  const int d = zeta.dim();
  oracle::Vec out(std::size_t{1} << d, Q(0));
  for (int n = 0; 2 * n <= d; ++n) {
    const auto p = oracle_power(zeta, n);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += p[i] / factorial<Q>(2 * n);
  }
  return out;
}

Q vdot(const oracle::Vec& a, const oracle::Vec& b) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Rank by plain rational Gaussian elimination.
std::size_t oracle_rank(oracle::Mat a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || sgn(a[r][c]) == 0) continue;
      const Q f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

// True when x changes sign under every adjacent swap inside the blocks
// (0..l-1) and (l..n-1).
bool block_antisymmetric(const oracle::Dense& x, int l) {
  for (const auto& t : oracle::all_tuples(x.d, x.n))
    for (int s = 0; s + 1 < x.n; ++s) {
      if (s + 1 == l) continue;
      auto u = t;
      std::swap(u[static_cast<std::size_t>(s)], u[static_cast<std::size_t>(s) + 1]);
      if (x[u] != -x[t]) return false;
    }
  return true;
}

// c*(l, m; n): inserts a diagonal over the n leading slots of each block.
oracle::Dense oracle_c_adjoint(const oracle::Dense& y, int l, int m, int n) {
  const int d = y.d;
  oracle::Dense out(d, l + m);
  for (const auto& i : oracle::all_tuples(d, n))
    for (const auto& j : oracle::all_tuples(d, l - n))
      for (const auto& k : oracle::all_tuples(d, m - n)) {
        auto t = i;
        t.insert(t.end(), j.begin(), j.end());
        t.insert(t.end(), i.begin(), i.end());
        t.insert(t.end(), k.begin(), k.end());
        auto jk = j;
        jk.insert(jk.end(), k.begin(), k.end());
        out[t] += y[jk];
      }
  return out;
}

// ------------------------------------------------------------------ criteria

Outcome criterion_car() {
  const auto t0 = Clock::now();
  const int d = 4;
  Outcome o;
  long checks = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const auto f = W::basis(d, {i});
      const auto g = W::basis(d, {j});
      for (Mask s = 0; s < (Mask{1} << d); ++s) {
        const auto phi = F::basis(d, s);
        const auto anti = create(f, annihilate(g, phi)) + annihilate(g, create(f, phi));
        o.pass = o.pass && anti == phi * inner_product(g, f);
        o.pass = o.pass && (create(f, create(g, phi)) + create(g, create(f, phi))).is_zero();
        o.pass = o.pass && (annihilate(f, annihilate(g, phi)) + annihilate(g, annihilate(f, phi))).is_zero();
        o.pass = o.pass && annihilate(f, annihilate(f, phi)).is_zero() && create(f, create(f, phi)).is_zero();
        ++checks;
      }
      // Matrices against occupation-number bit counting.
      o.pass = o.pass && oracle::full_of(creation_matrix(f)) == oracle::creation(d, i);
      o.pass = o.pass && oracle::full_of(annihilation_matrix(g)) == oracle::annihilation(d, j);
    }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 5.0;
  std::ostringstream os;
  os << checks << " (f, g, phi) triples, " << secs << " s";
  o.detail = os.str();
  return o;
}

Outcome criterion_w_involution() {
  const int d = 4;
  oracle::Rng rng(101);
  Outcome o;
  const auto id = M::identity(d, Sector::Full);
  const auto oid = oracle::identity(std::size_t{1} << d);
  for (int t = 0; t < 20; ++t) {
    const auto f = random_unit_vector(rng, d);
    const auto w = weyl_matrix(f);
    const auto fv = oracle::coeffs_of(f);
    const auto ow = oracle::add(oracle::creation(d, fv), oracle::annihilation(d, fv));
    o.pass = o.pass && inner_product(f, f) == Q(1) && oracle::full_of(w) == ow;
    o.pass = o.pass && w * w == id && oracle::mul(ow, ow) == oid;
    // Control: (2f, 2f)_0 = 4.
    const auto w2 = weyl_matrix(f * Q(2));
    o.pass = o.pass && w2 * w2 == id * Q(4);
  }
  o.detail = "20 unit vectors and 20 controls, 16x16 exact";
  return o;
}

Outcome criterion_determinant() {
  const int d = 4;
  oracle::Rng rng(103);
  Outcome o;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 4;
    std::vector<W> f, g;
    for (int i = 0; i < n; ++i) {
      f.push_back(oracle::random_vector(rng, d));
      g.push_back(oracle::random_vector(rng, d));
    }
    oracle::Mat gram(static_cast<std::size_t>(n), oracle::Vec(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            vdot(oracle::coeffs_of(f[static_cast<std::size_t>(i)]), oracle::coeffs_of(g[static_cast<std::size_t>(j)]));
    const Q expect = oracle::cofactor_det(gram) / factorial<Q>(n);
    o.pass = o.pass && pairing(wedge_all<Q>(d, f), wedge_all<Q>(d, g)) == expect;
    o.pass = o.pass && gram_pairing<Q>(f, g) == expect;
  }
  o.detail = "100 lists, n = 1..4";
  return o;
}

Outcome criterion_contractions() {
  const int d = 3;
  oracle::Rng rng(107);
  Outcome o;
  long n_transpose = 0, n_comp = 0, n_adj = 0, n_sign = 0, n_even = 0;
  for (int t = 0; t < 2000 && (n_transpose < 50 || n_comp < 50 || n_adj < 50 || n_sign < 50 || n_even < 50); ++t) {
    const int l = rng.uniform(0, 2), m = rng.uniform(0, 2), n = rng.uniform(0, 2);
    if (l + m + n > 4) continue;

    // Transpose adjoint: <k (x)_m phi, psi> = <k, t(psi) (x)^n phi>.
    {
      const auto k = oracle::random_dense(rng, d, l + m);
      const auto phi = oracle::random_dense(rng, d, n + m);
      const auto psi = oracle::random_dense(rng, d, l + n);
      const auto lib_right = contract_right(oracle::to_lib(k), oracle::to_lib(phi), m).body();
      const auto lib_t = transpose_t(BlockTensor<Q>(oracle::to_lib(psi), l));
      const auto lib_left = contract_left(lib_t.body(), oracle::to_lib(phi), n).body();
      const auto o_right = oracle::contract_right(k, phi, m);
      const auto o_t = oracle::transpose_blocks(psi, l);
      const auto o_left = oracle::contract_left(o_t, phi, n);
      o.pass = o.pass && oracle::from_lib(lib_right) == o_right && oracle::from_lib(lib_t.body()) == o_t &&
               oracle::from_lib(lib_left) == o_left;
      o.pass = o.pass && oracle::dot(o_right, psi) == oracle::dot(k, o_left);
      o.pass = o.pass && pairing(lib_right, oracle::to_lib(psi)) == pairing(oracle::to_lib(k), lib_left);
      ++n_transpose;
    }

    // c composition and c* adjoint on a split (a | b) with a = l + m, b = m + n.
    {
      const int a = l + m, b = m + n;
      const auto x = oracle::random_dense(rng, d, a + b, 0.3);
      const BlockTensor<Q> lx(oracle::to_lib(x), a);
      const int top = std::min(a, b);
      const int n1 = rng.uniform(0, top), n2 = rng.uniform(0, top - n1);
      const auto c1 = contraction_c(lx, n1);
      o.pass = o.pass && oracle::from_lib(c1.body()) == oracle::contraction_c(x, a, n1);
      o.pass = o.pass && oracle::from_lib(contraction_c(c1, n2).body()) ==
                             oracle::contraction_c(oracle::contraction_c(x, a, n1), a - n1, n2);
      o.pass = o.pass && contraction_c(c1, n2) == contraction_c(lx, n1 + n2);
      ++n_comp;
      const auto y = oracle::random_dense(rng, d, a + b - 2 * n1);
      const auto ins = contraction_c_adjoint(BlockTensor<Q>(oracle::to_lib(y), a - n1), a, b, n1);
      const auto o_ins = oracle_c_adjoint(y, a, b, n1);
      o.pass = o.pass && oracle::from_lib(ins.body()) == o_ins;
      o.pass = o.pass && oracle::dot(o_ins, x) == oracle::dot(y, oracle::contraction_c(x, a, n1));
      o.pass = o.pass && pairing(ins.body(), lx.body()) == pairing(oracle::to_lib(y), c1.body());
      ++n_adj;
    }

    // Sign law and even-m coincidence on antisymmetric inputs.
    if (l + n <= d && l + m <= d && m + n <= d) {
      const auto f = oracle::random_wedge(rng, d, l + m);
      const auto g = oracle::random_wedge(rng, d, m + n);
      const auto fd = oracle::dense_of(f), gd = oracle::dense_of(g);
      const auto left = wedge_contract(f, g, m, Side::Left);
      const auto right = wedge_contract(f, g, m, Side::Right);
      const auto o_left = oracle::alternate(oracle::contract_left(fd, gd, m));
      const auto o_right = oracle::alternate(oracle::contract_right(fd, gd, m));
      const Q sign = (m * (l + n)) % 2 ? Q(-1) : Q(1);
      o.pass = o.pass && oracle::dense_of(left) == o_left && oracle::dense_of(right) == o_right;
      auto o_signed = o_right;
      for (auto& c : o_signed.v) c *= sign;
      o.pass = o.pass && left == right * sign && o_left == o_signed;
      ++n_sign;
      if (m % 2 == 0) {
        o.pass = o.pass && left == right && o_left == o_right;
        ++n_even;
      }
    }
  }
  std::ostringstream os;
  os << "instances: transpose " << n_transpose << ", composition " << n_comp << ", adjoint " << n_adj << ", sign "
     << n_sign << ", even-m " << n_even;
  o.detail = os.str();
  o.pass = o.pass && n_transpose >= 50 && n_comp >= 50 && n_adj >= 50 && n_sign >= 50 && n_even >= 50;
  return o;
}

std::vector<M> even_operators() {
  oracle::Rng rng(109);
  std::vector<M> out;
  for (int t = 0; t < 50; ++t) out.push_back(oracle::random_operator(rng, 4, Sector::Even));
  return out;
}

Outcome criterion_round_trip(const std::vector<M>& ops) {
  const auto t0 = Clock::now();
  Outcome o;
  for (const auto& xi : ops) {
    const auto fam = extract_kappa(xi);
    o.pass = o.pass && reconstruct(fam) == xi;
    // Full-space oracle: the reconstruction equals the operator's even part.
    o.pass = o.pass && oracle::full_of(reconstruct(fam)) == oracle::even_part(oracle::full_of(xi));
    for (const auto& [lm, k] : fam.terms) {
      const auto dense = oracle::from_lib(embed_block(k.kernel()).body());
      o.pass = o.pass && block_antisymmetric(dense, 2 * lm.first) && is_alt_canonical(k);
      KernelFamily<Q> single(4);
      single.terms.emplace(lm, k);
      o.pass = o.pass && extract_kappa(iko_matrix(k)) == single;
    }
  }
  const double secs = seconds_since(t0);
  o.pass = o.pass && secs < 60.0;
  std::ostringstream os;
  os << ops.size() << " operators, " << secs << " s";
  o.detail = os.str();
  return o;
}

Outcome criterion_closed_form(const std::vector<M>& ops) {
  Outcome o;
  for (const auto& xi : ops) o.pass = o.pass && extract_kappa_closed(xi) == extract_kappa(xi);
  const auto id = M::identity(4, Sector::Even);
  for (const auto& fam : {extract_kappa(id), extract_kappa_closed(id)}) {
    o.pass = o.pass && fam.terms.size() == 1 && fam.terms.count({0, 0}) == 1;
    if (fam.terms.count({0, 0})) {
      const auto& k = fam.terms.at({0, 0}).kernel();
      o.pass = o.pass && k.coeffs().size() == 1 && k.coeff(0, 0) == Q(1);
    }
  }
  o.detail = std::to_string(ops.size()) + " operators plus the identity";
  return o;
}

Outcome criterion_full_expansion() {
  const int d = 4;
  oracle::Rng rng(113);
  Outcome o;
  const auto e1 = W::basis(d, {0});
  for (int t = 0; t < 20; ++t) {
    const auto xi = oracle::random_operator(rng, d, Sector::Full);
    const auto full = oracle::full_of(xi);
    const auto b = parity_blocks(xi);
    o.pass = o.pass && b.sum() == xi;
    // Each block carries exactly the entries of its (row parity, column parity) class.
    const std::vector<std::pair<const M*, std::pair<int, int>>> blocks{
        {&b.pp, {0, 0}}, {&b.pm, {0, 1}}, {&b.mp, {1, 0}}, {&b.mm, {1, 1}}};
    for (const auto& [blk, cls] : blocks) {
      const auto bf = oracle::full_of(*blk);
      for (std::size_t r = 0; r < full.size(); ++r)
        for (std::size_t c = 0; c < full.size(); ++c) {
          const bool in = __builtin_popcountll(r) % 2 == cls.first && __builtin_popcountll(c) % 2 == cls.second;
          o.pass = o.pass && bf[r][c] == (in ? full[r][c] : Q(0));
        }
    }
    o.pass = o.pass && reconstruct_full(expand_full(xi, e1)) == xi;
  }
  o.detail = "20 operators, 16x16, f = e1";
  return o;
}

Outcome criterion_symbol() {
  const int d = 4;
  const int top = d / 2;
  oracle::Rng rng(127);
  Outcome o;
  for (int t = 0; t < 20; ++t) {
    const auto xi = oracle::random_operator(rng, d, Sector::Even);
    const auto full = oracle::full_of(xi);
    const auto zeta = random_two_form(rng, d);
    const auto eta = random_two_form(rng, d);
    std::vector<std::vector<Q>> values(top + 1, std::vector<Q>(top + 1));
    for (int z = 0; z <= top; ++z)
      for (int w = 0; w <= top; ++w) {
        const Q v = symbol_eval(xi, zeta * Q(z), eta * Q(w));
        values[static_cast<std::size_t>(z)][static_cast<std::size_t>(w)] = v;
        o.pass = o.pass && v == vdot(oracle::apply(full, oracle_exp(zeta * Q(z))), oracle_exp(eta * Q(w)));
      }
    const auto coeffs = interpolate_grid(values);
    const auto K = extract_K(xi);
    for (int m = 0; m <= top; ++m)
      for (int l = 0; l <= top; ++l) {
        // sum_{L,K} Xi_{L,K} (eta^l)_L (zeta^m)_K / ((2l)! (2m)!).
        const auto pe = oracle_power(eta, l);
        const auto pz = oracle_power(zeta, m);
        const Q expect = vdot(oracle::apply(full, pz), pe) / (factorial<Q>(2 * l) * factorial<Q>(2 * m));
        o.pass = o.pass && coeffs[static_cast<std::size_t>(m)][static_cast<std::size_t>(l)] == expect;
        o.pass = o.pass && alt_pairing(K.at({l, m}), wedge_power(eta, l), wedge_power(zeta, m)) == expect;
      }
  }
  o.detail = "20 operators, 3x3 grid";
  return o;
}

Outcome criterion_bounds() {
  const int d = 4;
  std::vector<double> lambdas;
  for (int j = 1; j <= d; ++j) lambdas.push_back(j + 1.0);
  const ModeSpace<double> ms(d, lambdas, 1.0);
  const auto sweep = bound_sweep(ms, 131, 20, bound_grid("default"), 1.0);
  Outcome o;
  std::ostringstream os;
  long total = 0;
  for (int id = 1; id <= 12; ++id) {
    const auto b = static_cast<BoundId>(id);
    const long checks = sweep.checks.count(b) ? sweep.checks.at(b) : 0;
    const long fails = sweep.failures.count(b) ? sweep.failures.at(b) : 0;
    total += checks;
    if (checks == 0 || fails != 0) {
      o.pass = false;
      os << bound_name(b) << " failed " << fails << "/" << checks << " ("
         << (sweep.first_failure.count(b) ? sweep.first_failure.at(b) : "") << "); ";
    }
  }
  o.pass = o.pass && sweep.convergence_runs > 0 && sweep.largest_R < 1.0 && std::isfinite(sweep.largest_tail);
  os << total << " checks; B12: " << sweep.convergence_runs << " runs, max r=" << sweep.largest_r
     << ", max R=" << sweep.largest_R << ", max tail bound=" << sweep.largest_tail;
  o.detail = os.str();
  return o;
}

Outcome criterion_s_transform() {
  const int d = 4;
  oracle::Rng rng(137);
  Outcome o;
  for (int t = 0; t < 20; ++t) {
    F phi(d);
    for (int n : {0, 2, 4}) phi.add_component(oracle::random_wedge(rng, d, n));
    const auto zeta = random_two_form(rng, d);
    const auto eta = random_two_form(rng, d);
    const Q direct = s_transform(phi, zeta);
    o.pass = o.pass && direct == s_transform_series(phi, zeta);
    o.pass = o.pass && direct == vdot(oracle::full_of(phi), oracle_exp(zeta));
    const auto a = s_taylor(phi, zeta, eta);
    for (int z : {0, 1, -1, 2}) {
      Q poly = 0, power = 1;
      for (const auto& c : a) {
        poly += c * power;
        power *= z;
      }
      o.pass = o.pass && poly == s_transform(phi, zeta * Q(z) + eta);
    }
  }
  // Norm estimate in float arithmetic.
  std::vector<double> lambdas;
  for (int j = 1; j <= d; ++j) lambdas.push_back(j + 1.0);
  const ModeSpace<double> ms(d, lambdas, 1.0);
  double worst = 0;
  int count = 0;
  for (int t = 0; t < 50; ++t) {
    const auto zq = random_two_form(rng, d);
    const auto zeta = convert<double>(zq, [](const Q& x) { return x.get_d(); });
    const auto ez = oracle_exp(zq);
    for (double p : {-1.0, 0.0, 1.0}) {
      const double lhs = fock_norm_sq(ms, exp_vector(zeta), p);
      const double rhs = std::exp(norm_p_sq(ms, zeta, p));
      // Same quantity from the oracle's exact e+ vector.
      double olhs = 0;
      for (std::size_t s = 0; s < ez.size(); ++s) {
        const double c = ez[s].get_d();
        const double w = ms.mode_weight(Mask(s), p);
        olhs += c * c * w * w;
      }
      o.pass = o.pass && std::abs(lhs - olhs) <= 1e-12 * std::max(1.0, olhs) && lhs <= rhs;
      worst = std::max(worst, lhs / rhs);
      ++count;
    }
  }
  std::ostringstream os;
  os << "20 exact two-path checks; norm estimate on " << count << " (zeta, p) pairs, worst lhs/rhs=" << worst;
  o.detail = os.str();
  return o;
}

Outcome criterion_density() {
  const int d = 4;
  oracle::Rng rng(139);
  std::vector<F> ev;
  std::vector<oracle::Vec> oev;
  for (int i = 0; i < 12; ++i) {
    const auto zeta = random_two_form(rng, d, 1.0);
    ev.push_back(exp_vector(zeta));
    oev.push_back(oracle_exp(zeta));
  }
  RationalMatrix gram(12, std::vector<Q>(12));
  oracle::Mat ogram(12, oracle::Vec(12));
  Outcome o;
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      gram[i][j] = fock_pairing(ev[i], ev[j]);
      ogram[i][j] = vdot(oev[i], oev[j]);
      o.pass = o.pass && gram[i][j] == ogram[i][j];
    }
  const auto rank = exact_rank(gram);
  const auto orank = oracle_rank(ogram);
  o.pass = o.pass && rank == 8 && orank == 8;
  o.detail = "rank " + std::to_string(rank) + " (oracle " + std::to_string(orank) + "), even Fock dimension 8";
  return o;
}

}  // namespace

int main() {
  const auto ops = even_operators();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"CAR relations at d=4", criterion_car},
      {"W(f) involution", criterion_w_involution},
      {"determinant formula", criterion_determinant},
      {"contraction identities", criterion_contractions},
      {"expansion round trip", [&] { return criterion_round_trip(ops); }},
      {"closed form vs recursion", [&] { return criterion_closed_form(ops); }},
      {"whole-system expansion", criterion_full_expansion},
      {"symbol Taylor data", criterion_symbol},
      {"bound certification", criterion_bounds},
      {"S-transform", criterion_s_transform},
      {"exponential vector density", criterion_density},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s  (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
