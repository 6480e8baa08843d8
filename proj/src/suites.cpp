#include "fwn/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fwn/contract.hpp"
#include "fwn/expansion.hpp"
#include "fwn/fock.hpp"
#include "fwn/kernelop.hpp"
#include "fwn/linalg.hpp"
#include "fwn/operator_matrix.hpp"
#include "fwn/wedge.hpp"

namespace fwn {

namespace {

// ------------------------------------------------------------------ helpers

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  bool coin(double p) { return real(0, 1) < p; }

  Rational rational() {
    Rational r(uniform(-9, 9), uniform(1, 4));
    r.canonicalize();
    return r;
  }

 private:
  std::mt19937_64 gen_;
};

template <Scalar T>
T from_rational(const Rational& q) {
  if constexpr (scalar_traits<T>::exact) {
    return q;
  } else {
    return T(q.get_d());
  }
}

template <Scalar T>
T random_scalar(Rng& rng, double density = 0.6) {
  return rng.coin(density) ? from_rational<T>(rng.rational()) : T(0);
}

template <Scalar T>
WedgeTensor<T> random_wedge(Rng& rng, int d, int n, double density = 0.6) {
  WedgeTensor<T> w(d, n);
  for (Mask m : subsets_of_size(d, n)) w.add(m, random_scalar<T>(rng, density));
  return w;
}

template <Scalar T>
WedgeTensor<T> random_vector(Rng& rng, int d) {
  std::vector<T> v;
  for (int i = 0; i < d; ++i) v.push_back(from_rational<T>(rng.rational()));
  return WedgeTensor<T>::vector(v);
}

// Rational point on the unit sphere by inverse stereographic projection.
template <Scalar T>
WedgeTensor<T> random_unit_vector(Rng& rng, int d) {
  std::vector<Rational> t;
  Rational s = 0;
  for (int i = 0; i + 1 < d; ++i) {
    t.push_back(rng.rational());
    s += t.back() * t.back();
  }
  std::vector<T> v;
  for (const auto& x : t) v.push_back(from_rational<T>(Rational(2) * x / (1 + s)));
  v.push_back(from_rational<T>((1 - s) / (1 + s)));
  return WedgeTensor<T>::vector(v);
}

template <Scalar T>
DenseTensor<T> random_dense(Rng& rng, int d, int n, double density = 0.5) {
  DenseTensor<T> out(d, n);
  std::vector<int> t(static_cast<std::size_t>(n), 0);
  while (true) {
    out.add(t, random_scalar<T>(rng, density));
    int k = n - 1;
    while (k >= 0 && ++t[static_cast<std::size_t>(k)] == d) t[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return out;
}

template <Scalar T>
FockVector<T> random_fock(Rng& rng, int d, bool even_only) {
  FockVector<T> v(d);
  for (int n = 0; n <= d; ++n)
    if (!even_only || n % 2 == 0) v.add_component(random_wedge<T>(rng, d, n, 0.5));
  return v;
}

template <Scalar T>
OperatorMatrix<T> random_operator(Rng& rng, int d, Sector s, double density = 0.5) {
  OperatorMatrix<T> out(d, s, s);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out.at(i, j) = random_scalar<T>(rng, density);
  return out;
}

template <Scalar T>
KernelDistribution<T> random_kernel(Rng& rng, int d, int l, int m) {
  KernelDistribution<T> k(d, l, m);
  for (Mask a : subsets_of_size(d, 2 * l))
    for (Mask b : subsets_of_size(d, 2 * m)) k.add(a, b, random_scalar<T>(rng, 0.5));
  return k;
}

// Exact equality in rational mode, relative tolerance in float mode.
template <Scalar T>
struct Near {
  double tol;

  bool operator()(const T& a, const T& b) const {
    if constexpr (scalar_traits<T>::exact) {
      return a == b;
    } else {
      return std::abs(a - b) <= tol * (1 + std::max(std::abs(a), std::abs(b)));
    }
  }

  template <typename Map>
  bool maps(const Map& a, const Map& b) const {
    for (const auto& [k, v] : a) {
      auto it = b.find(k);
      if (!(*this)(v, it == b.end() ? T(0) : it->second)) return false;
    }
    for (const auto& [k, v] : b)
      if (!a.count(k) && !(*this)(v, T(0))) return false;
    return true;
  }

  bool operator()(const WedgeTensor<T>& a, const WedgeTensor<T>& b) const {
    return a.degree() == b.degree() && maps(a.coeffs(), b.coeffs());
  }
  bool operator()(const FockVector<T>& a, const FockVector<T>& b) const { return maps(a.coeffs(), b.coeffs()); }
  bool operator()(const DenseTensor<T>& a, const DenseTensor<T>& b) const {
    return a.degree() == b.degree() && maps(a.entries(), b.entries());
  }
  bool operator()(const AltBlockTensor<T>& a, const AltBlockTensor<T>& b) const {
    return a.left() == b.left() && a.right() == b.right() && maps(a.coeffs(), b.coeffs());
  }
  bool operator()(const OperatorMatrix<T>& a, const OperatorMatrix<T>& b) const {
    if (a.domain() != b.domain() || a.codomain() != b.codomain() || a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (!(*this)(a.at(i, j), b.at(i, j))) return false;
    return true;
  }
  bool negligible(const AltBlockTensor<T>& k) const {
    for (const auto& [key, v] : k.coeffs())
      if (!(*this)(v, T(0))) return false;
    return true;
  }
  bool operator()(const KernelFamily<T>& a, const KernelFamily<T>& b) const {
    std::map<Order, AltBlockTensor<T>> ka, kb;
    for (const auto& [lm, k] : a.terms) ka.emplace(lm, k.kernel());
    for (const auto& [lm, k] : b.terms) kb.emplace(lm, k.kernel());
    for (const auto& [lm, k] : ka) {
      auto it = kb.find(lm);
      if (it == kb.end() ? !negligible(k) : !(*this)(k, it->second)) return false;
    }
    for (const auto& [lm, k] : kb)
      if (!ka.count(lm) && !negligible(k)) return false;
    return true;
  }
};

std::string modes_string(Mask m) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i : modes_of(m)) {
    os << (first ? "" : ",") << i + 1;
    first = false;
  }
  os << "}";
  return os.str();
}

std::string trial_string(std::uint64_t seed, int trial, const std::string& extra = {}) {
  std::ostringstream os;
  os << "seed=" << seed << " trial=" << trial;
  if (!extra.empty()) os << " " << extra;
  return os.str();
}

class Rows {
 public:
  explicit Rows(std::string suite) : suite_(std::move(suite)) {}

  // Opens (or returns) the row for a property.
  PropertyRow& row(const std::string& property, const std::string& anchor) {
    for (auto& r : rows_)
      if (r.property == property) return r;
    rows_.push_back(PropertyRow{suite_, property, anchor, true, 0, {}, {}});
    return rows_.back();
  }

  void record(const std::string& property, const std::string& anchor, bool ok,
              const std::function<std::string()>& instance) {
    auto& r = row(property, anchor);
    ++r.instances;
    if (!ok && r.holds) {
      r.holds = false;
      r.counterexample = instance();
    }
    if (!ok) r.holds = false;
  }

  std::vector<PropertyRow> take() { return std::move(rows_); }

 private:
  std::string suite_;
  std::vector<PropertyRow> rows_;
};

int count_or(int configured, int fallback) { return configured > 0 ? configured : fallback; }

// Leibniz determinant, used as the independent side of the determinant formula.
template <Scalar T>
T leibniz_det(const std::vector<std::vector<T>>& a) {
  const std::size_t n = a.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T sum = T(0);
  do {
    T term = T(permutation_sign(perm));
    for (std::size_t i = 0; i < n; ++i) term = term * a[i][static_cast<std::size_t>(perm[i])];
    sum = sum + term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

// ---------------------------------------------------------------------- car

template <Scalar T>
void car_suite(const SuiteConfig& cfg, Rows& rows) {
  const int d = cfg.modes;
  const Near<T> near{cfg.tol};
  const std::string car = "CAR relations";
  // Exhaustive on basis vectors and basis states.
  for (int i = 0; i < d; ++i) {
    const auto fi = WedgeTensor<T>::basis(d, {i});
    for (int j = 0; j < d; ++j) {
      const auto gj = WedgeTensor<T>::basis(d, {j});
      for (Mask m = 0; m < (Mask{1} << d); ++m) {
        const auto phi = FockVector<T>::basis(d, m);
        auto inst = [&] { return "f=e" + std::to_string(i + 1) + " g=e" + std::to_string(j + 1) + " phi=e" + modes_string(m); };
        const auto ac = create(fi, annihilate(gj, phi)) + annihilate(gj, create(fi, phi));
        rows.record("{a+(f), a(g)} = <g, f>", car, near(ac, phi * pairing(gj, fi)), inst);
        const auto cc = create(fi, create(gj, phi)) + create(gj, create(fi, phi));
        rows.record("{a+(f), a+(g)} = 0", car, cc.is_zero(), inst);
        const auto aa = annihilate(fi, annihilate(gj, phi)) + annihilate(gj, annihilate(fi, phi));
        rows.record("{a(f), a(g)} = 0", car, aa.is_zero(), inst);
      }
    }
  }
  Rng rng(cfg.seed);
  const int trials = count_or(cfg.instances, 20);
  const auto id = OperatorMatrix<T>::identity(d, Sector::Full);
  for (int t = 0; t < trials; ++t) {
    const auto f = random_vector<T>(rng, d);
    const auto g = random_vector<T>(rng, d);
    auto inst = [&] { return trial_string(cfg.seed, t); };
    const auto af = creation_matrix(f);
    const auto ag = annihilation_matrix(g);
    rows.record("{a+(f), a(g)} = <g, f> (random f, g)", car, near(af * ag + ag * af, id * pairing(g, f)), inst);
    rows.record("a(f)^2 = a+(f)^2 = 0", car,
                (af * af).is_zero() && (annihilation_matrix(f) * annihilation_matrix(f)).is_zero(), inst);
    const auto u = random_unit_vector<T>(rng, d);
    const auto w = weyl_matrix(u);
    rows.record("W(f)^2 = identity for (f, f)_0 = 1", "W involution", near(w * w, id), inst);
    const auto w2 = weyl_matrix(u * T(2));
    rows.record("W(2f)^2 = 4 identity (control)", "W involution", near(w2 * w2, id * T(4)), inst);

    // Ladder kernels on the even part.
    const auto even_part = [](const OperatorMatrix<T>& m) { return m.resector(Sector::Even, Sector::Even); };
    rows.record("cc kernel gives a+(f) a+(g)", "ladder kernels",
                near(iko_matrix(build_car_kernel(CarKind::CC, f, g)), even_part(af * creation_matrix(g))), inst);
    rows.record("aa kernel gives a(f) a(g)", "ladder kernels",
                near(iko_matrix(build_car_kernel(CarKind::AA, f, g)), even_part(annihilation_matrix(f) * ag)), inst);
    const auto ca = iko_matrix(build_car_kernel(CarKind::CA, f, g));
    const auto target = even_part(af * ag);
    bool ok = true;
    for (std::size_t r = 0; r < ca.rows(); ++r)
      for (std::size_t c = 0; c < ca.cols(); ++c) {
        const int n = popcount(ca.col_basis()[c]) / 2;
        const T factor = n == 0 ? T(0) : T(2 * n - 1);
        ok = ok && near(ca.at(r, c), factor * target.at(r, c));
      }
    rows.record("ca kernel gives (2n-1) a+(f) a(g) on degree 2n", "ladder kernels", ok, inst);
  }
}

// -------------------------------------------------------------------- wedge

template <Scalar T>
void wedge_suite(const SuiteConfig& cfg, Rows& rows) {
  const int d = cfg.modes;
  const Near<T> near{cfg.tol};
  Rng rng(cfg.seed + 1);
  const int trials = count_or(cfg.instances, 100);
  for (int t = 0; t < trials; ++t) {
    const int n = 1 + t % std::min(4, d);
    std::vector<WedgeTensor<T>> f, g;
    for (int i = 0; i < n; ++i) {
      f.push_back(random_vector<T>(rng, d));
      g.push_back(random_vector<T>(rng, d));
    }
    std::vector<std::vector<T>> gram(static_cast<std::size_t>(n), std::vector<T>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pairing(f[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]);
    const T lhs = pairing(wedge_all<T>(d, f), wedge_all<T>(d, g));
    rows.record("<f1^..^fn, g1^..^gn> = det<fi, gj> / n!", "determinant formula",
                near(lhs, leibniz_det(gram) / factorial<T>(n)), [&] { return trial_string(cfg.seed + 1, t, "n=" + std::to_string(n)); });
  }
  for (int t = 0; t < count_or(cfg.instances, 30); ++t) {
    const int a = t % (d + 1);
    const int b = (t / (d + 1)) % (d + 1 - a);
    const auto x = random_wedge<T>(rng, d, a);
    const auto y = random_wedge<T>(rng, d, b);
    const auto z = random_wedge<T>(rng, d, std::min(1, d - a - b));
    auto inst = [&] { return trial_string(cfg.seed + 1, t, "degrees=" + std::to_string(a) + "," + std::to_string(b)); };
    rows.record("antisymmetrize(embed(w)) = w", "alternator", near(antisymmetrize(embed_dense(x)), x), inst);
    const T sign = (a * b) % 2 ? T(-1) : T(1);
    rows.record("x ^ y = (-1)^{ab} y ^ x", "graded commutativity", near(wedge_product(x, y), wedge_product(y, x) * sign), inst);
    rows.record("(x ^ y) ^ z = x ^ (y ^ z)", "associativity",
                near(wedge_product(wedge_product(x, y), z), wedge_product(x, wedge_product(y, z))), inst);
    const auto x2 = random_wedge<T>(rng, d, a);
    rows.record("<x, x'> = dense tuple pairing", "pairing",
                near(pairing(x, x2), pairing(embed_dense(x), embed_dense(x2))), inst);
  }
}

// ----------------------------------------------------------------- contract

template <Scalar T>
void contract_suite(const SuiteConfig& cfg, Rows& rows) {
  const int d = std::min(cfg.modes, 3);
  const Near<T> near{cfg.tol};
  Rng rng(cfg.seed + 2);
  const int trials = count_or(cfg.instances, 60);
  for (int t = 0; t < trials; ++t) {
    // l + m + n <= 4.
    int l, m, n;
    do {
      l = rng.uniform(0, 2);
      m = rng.uniform(0, 2);
      n = rng.uniform(0, 2);
    } while (l + m + n > 4 || l + m > d || m + n > d);
    auto inst = [&] {
      return trial_string(cfg.seed + 2, t, "d=" + std::to_string(d) + " l=" + std::to_string(l) + " m=" + std::to_string(m) + " n=" + std::to_string(n));
    };

    // <kappa (x)_m phi, psi> = <kappa, t_{l,n}(psi) (x)^n phi>.
    const auto kappa = random_dense<T>(rng, d, l + m);
    const auto phi = random_dense<T>(rng, d, n + m);
    const auto psi = random_dense<T>(rng, d, l + n);
    const T lhs = pairing(contract_right(kappa, phi, m).body(), psi);
    const auto tpsi = transpose_t(BlockTensor<T>(psi, l));
    const T rhs = pairing(kappa, contract_left(tpsi.body(), phi, n).body());
    rows.record("<k (x)_m phi, psi> = <k, t(psi) (x)^n phi>", "transpose adjoint", near(lhs, rhs), inst);

    // c compositions and adjoint on x with split (a | b).
    const int a = l + m, b = m + n;
    if (a <= 4 && b <= 4 && a + b <= 5) {
      const BlockTensor<T> x(random_dense<T>(rng, d, a + b, 0.3), a);
      const int top = std::min(a, b);
      const int n1 = rng.uniform(0, top);
      const int n2 = rng.uniform(0, top - n1);
      rows.record("c(n2) o c(n1) = c(n1 + n2)", "contraction composition",
                  near(contraction_c(contraction_c(x, n1), n2).body(), contraction_c(x, n1 + n2).body()), inst);
      const BlockTensor<T> y(random_dense<T>(rng, d, a + b - 2 * n1), a - n1);
      rows.record("<c*(y), x> = <y, c(x)>", "contraction adjoint",
                  near(pairing(contraction_c_adjoint(y, a, b, n1).body(), x.body()),
                       pairing(y.body(), contraction_c(x, n1).body())),
                  inst);
    }

    // Sign law and even-m coincidence on antisymmetric inputs.
    if (l + n <= d) {
      const auto f = random_wedge<T>(rng, d, l + m);
      const auto g = random_wedge<T>(rng, d, m + n);
      const auto left = wedge_contract(f, g, m, Side::Left);
      const auto right = wedge_contract(f, g, m, Side::Right);
      const T sign = (m * (l + n)) % 2 ? T(-1) : T(1);
      rows.record("F ^^m g = (-1)^{m(l+n)} F ^_m g", "contraction sign law", near(left, right * sign), inst);
      if (m % 2 == 0) rows.record("F ^^m g = F ^_m g for even m", "even contraction coincidence", near(left, right), inst);
      rows.record("F ^^m g = A(F (x)^m g)", "alternized contraction",
                  near(left, antisymmetrize(contract_left(embed_dense(f), embed_dense(g), m).body())), inst);
    }
  }
}

// ---------------------------------------------------------------- expansion

template <Scalar T>
void expansion_suite(const SuiteConfig& cfg, Rows& rows) {
  const int d = cfg.modes;
  const Near<T> near{cfg.tol};
  Rng rng(cfg.seed + 3);
  const int trials = count_or(cfg.instances, 20);
  const auto id = OperatorMatrix<T>::identity(d, Sector::Even);
  {
    const auto fam = extract_kappa(id);
    const bool ok = fam.terms.size() == 1 && fam.terms.count({0, 0}) && fam.terms.at({0, 0}).kernel().coeff(0, 0) == T(1);
    rows.record("identity -> {(0,0) -> 1}", "expansion of the identity", ok, [] { return std::string("identity"); });
  }
  for (int t = 0; t < trials; ++t) {
    const auto xi = random_operator<T>(rng, d, Sector::Even);
    auto inst = [&] { return trial_string(cfg.seed + 3, t); };
    const auto fam = extract_kappa(xi);
    rows.record("reconstruct(extract_kappa(Xi)) = Xi", "Fock expansion", near(reconstruct(fam), xi), inst);
    bool canonical = true;
    for (const auto& [lm, k] : fam.terms) 
      canonical = canonical && near(alt_project(embed_block(k.kernel())), k.kernel());
    rows.record("kappa alt-canonical", "Fock expansion", canonical, inst);
    bool unique = true;
    for (const auto& [lm, k] : fam.terms) {
      KernelFamily<T> single(d);
      single.terms.emplace(lm, k);
      unique = unique && near(extract_kappa(iko_matrix(k)), single);
    }
    rows.record("extract_kappa(Xi_{l,m}(kappa)) = kappa", "injectivity", unique, inst);
    rows.record("closed form = recursion", "closed-form kernels", near(extract_kappa_closed(xi), fam), inst);

    // Symbol Taylor data against K_{l,m}.
    const auto zeta = random_wedge<T>(rng, d, 2);
    const auto eta = random_wedge<T>(rng, d, 2);
    const int top = d / 2;
    std::vector<std::vector<T>> values(static_cast<std::size_t>(top) + 1, std::vector<T>(static_cast<std::size_t>(top) + 1));
    for (int z = 0; z <= top; ++z)
      for (int w = 0; w <= top; ++w)
        values[static_cast<std::size_t>(z)][static_cast<std::size_t>(w)] = symbol_eval(xi, zeta * T(z), eta * T(w));
    const auto coeffs = interpolate_grid(values);
    const auto K = extract_K(xi);
    bool ok = true;
    for (int m = 0; m <= top; ++m)
      for (int l = 0; l <= top; ++l) {
        const T expect = alt_pairing(K.at({l, m}), wedge_power(eta, l), wedge_power(zeta, m));
        ok = ok && near(coeffs[static_cast<std::size_t>(m)][static_cast<std::size_t>(l)], expect);
      }
    rows.record("[z^m w^l] symbol = <K_{l,m}, eta^l (x) zeta^m>", "symbol Taylor data", ok, inst);
  }
}

// --------------------------------------------------------------------- full

template <Scalar T>
void full_suite(const SuiteConfig& cfg, Rows& rows) {
  const int d = cfg.modes;
  const Near<T> near{cfg.tol};
  Rng rng(cfg.seed + 4);
  const int trials = count_or(cfg.instances, 20);
  const auto e1 = WedgeTensor<T>::basis(d, {0});
  for (int t = 0; t < trials; ++t) {
    const auto xi = random_operator<T>(rng, d, Sector::Full);
    auto inst = [&] { return trial_string(cfg.seed + 4, t); };
    rows.record("parity blocks reassemble", "parity decomposition", near(parity_blocks(xi).sum(), xi), inst);
    rows.record("reconstruct(expand_full(Xi, e1)) = Xi", "whole-system expansion",
                near(reconstruct_full(expand_full(xi, e1, cfg.tol)), xi), inst);
    const auto f = random_unit_vector<T>(rng, d);
    rows.record("reconstruct(expand_full(Xi, f)) = Xi, random unit f", "whole-system expansion",
                near(reconstruct_full(expand_full(xi, f, 1e-9)), xi), inst);
  }
}

// ------------------------------------------------------------------- bounds

void bounds_suite(const SuiteConfig& cfg, Rows& rows) {
  std::vector<double> lambdas;
  for (const auto& l : cfg.lambdas) lambdas.push_back(l.get_d());
  if (lambdas.empty())
    for (int j = 1; j <= cfg.modes; ++j) lambdas.push_back(j + 1.0);
  const ModeSpace<double> ms(cfg.modes, lambdas, cfg.alpha.get_d());
  const auto sweep = bound_sweep(ms, cfg.seed + 5, count_or(cfg.instances, 20), bound_grid(cfg.grid), cfg.alpha.get_d());
  for (int id = 1; id <= 12; ++id) {
    const auto b = static_cast<BoundId>(id);
    PropertyRow& r = rows.row(bound_name(b), bound_statement(b));
    r.instances = sweep.checks.count(b) ? sweep.checks.at(b) : 0;
    const long fails = sweep.failures.count(b) ? sweep.failures.at(b) : 0;
    r.holds = fails == 0 && r.instances > 0;
    if (fails) r.counterexample = sweep.first_failure.at(b);
    std::ostringstream os;
    os << "worst lhs/rhs=" << (sweep.worst_ratio.count(b) ? sweep.worst_ratio.at(b) : 0.0);
    if (b == BoundId::B12)
      os << " runs=" << sweep.convergence_runs << " max r=" << sweep.largest_r << " max R=" << sweep.largest_R
         << " max tail=" << sweep.largest_tail;
    r.detail = os.str();
  }
}

template <Scalar T>
void run_exact_suite(const std::string& name, const SuiteConfig& cfg, Rows& rows) {
  if (name == "car") car_suite<T>(cfg, rows);
  else if (name == "wedge") wedge_suite<T>(cfg, rows);
  else if (name == "contract") contract_suite<T>(cfg, rows);
  else if (name == "expansion") expansion_suite<T>(cfg, rows);
  else if (name == "full") full_suite<T>(cfg, rows);
}

}  // namespace

std::vector<BoundGridPoint> bound_grid(const std::string& name) {
  if (name == "small") return {{0, 0, 1}};
  if (name != "default") throw std::invalid_argument("unknown bound grid \"" + name + "\" (expected default or small)");
  std::vector<BoundGridPoint> out;
  for (double p : {-1.0, 0.0, 1.0})
    for (double q : {-1.0, 0.0, 1.0})
      for (double r : {0.5, 1.0, 2.0}) out.push_back({p, q, r});
  return out;
}

BoundSweep bound_sweep(const ModeSpace<double>& ms, std::uint64_t seed, int instances,
                       const std::vector<BoundGridPoint>& grid, double alpha) {
  BoundSweep out;
  const int d = ms.dim();
  Rng rng(seed);
  auto real_wedge = [&](int n) {
    FWedge w(d, n);
    for (Mask m : subsets_of_size(d, n))
      if (rng.coin(0.7)) w.add(m, rng.real(-1, 1));
    return w;
  };
  auto real_dense = [&](int n) {
    FDense x(d, n);
    std::vector<int> t(static_cast<std::size_t>(n), 0);
    while (true) {
      if (rng.coin(0.5)) x.add(t, rng.real(-1, 1));
      int k = n - 1;
      while (k >= 0 && ++t[static_cast<std::size_t>(k)] == d) t[static_cast<std::size_t>(k--)] = 0;
      if (k < 0) break;
    }
    return x;
  };
  auto real_fock = [&](bool even_only) {
    FFock v(d);
    for (int n = 0; n <= d; ++n)
      if (!even_only || n % 2 == 0) v.add_component(real_wedge(n));
    return v;
  };
  auto real_operator = [&]() {
    FMatrix xi(d, Sector::Even, Sector::Even);
    for (std::size_t i = 0; i < xi.rows(); ++i)
      for (std::size_t j = 0; j < xi.cols(); ++j)
        if (rng.coin(0.6)) xi.at(i, j) = rng.real(-1, 1);
    return xi;
  };
  auto note = [&](const BoundReport& r, const std::string& where) {
    ++out.checks[r.id];
    const double ratio = r.rhs > 0 ? r.lhs / r.rhs : (r.lhs > 0 ? INFINITY : 0.0);
    out.worst_ratio[r.id] = std::max(out.worst_ratio[r.id], ratio);
    if (!r.holds) {
      if (!out.failures[r.id]++) {
        std::ostringstream os;
        os << where << " " << r.detail << " lhs=" << r.lhs << " rhs=" << r.rhs;
        out.first_failure[r.id] = os.str();
      }
    }
  };

  for (const auto& g : grid) {
    const BoundParams bp{g.p, g.q, g.r, alpha};
    for (int t = 0; t < instances; ++t) {
      std::ostringstream w;
      w << "seed=" << seed << " p=" << g.p << " q=" << g.q << " r=" << g.r << " trial=" << t;
      const std::string where = w.str();

      // B1 / B2: small contraction shapes.
      {
        int l, m, n;
        do {
          l = rng.uniform(0, 2);
          m = rng.uniform(0, 2);
          n = rng.uniform(0, 2);
        } while (l + m + n > 4 || l + m > d || m + n > d);
        const auto f = real_dense(l + m);
        const auto gg = real_dense(m + n);
        note(check_contraction(ms, f, gg, m, Side::Left, bp), where);
        note(check_contraction(ms, f, gg, m, Side::Right, bp), where);
        if (l + n <= d) {
          const auto fw = real_wedge(l + m);
          const auto gw = real_wedge(m + n);
          note(check_wedge_contraction(ms, fw, gw, m, Side::Left, bp), where);
          note(check_wedge_contraction(ms, fw, gw, m, Side::Right, bp), where);
        }
      }
      // B3.
      {
        const int l = rng.uniform(0, d / 2);
        const int m = rng.uniform(0, d / 2);
        FKernel k(d, l, m);
        for (Mask a : subsets_of_size(d, 2 * l))
          for (Mask b : subsets_of_size(d, 2 * m))
            if (rng.coin(0.6)) k.add(a, b, rng.real(-1, 1));
        note(check_iko(ms, k, real_fock(true), bp), where);
      }
      // B4.
      note(check_sup(rng.uniform(0, 4), g.r, ms.rho()), where);
      // B5 - B8 on one even operator.
      const auto xi = real_operator();
      const auto zeta = real_wedge(2);
      const auto eta = real_wedge(2);
      note(check_symbol_growth(ms, xi, zeta, eta, bp), where);
      for (const auto& r : check_taylor(ms, xi, zeta, eta, bp)) note(r, where);
      for (int l = 0; 2 * l <= d; ++l)
        for (int m = 0; 2 * m <= d; ++m) note(check_K_decay(ms, xi, l, m, bp), where);
      const auto fam = extract_kappa(xi);
      for (const auto& [lm, k] : fam.terms) note(check_kappa_decay(ms, xi, k, bp), where);
      // B9.
      {
        const auto f = real_wedge(1);
        const auto phi = real_fock(false);
        note(check_ladder(ms, Ladder::Create, f, phi, bp), where);
        note(check_ladder(ms, Ladder::Annihilate, f, phi, bp), where);
      }
      // B10, B11.
      note(check_series(rng.real(0, 3), rng.uniform(0, 4), d), where);
      note(check_factorial(rng.uniform(0, d)), where);
      // B12.
      const auto conv = check_convergence(ms, xi, real_fock(true), bp);
      note(conv.report, where);
      ++out.convergence_runs;
      out.largest_r = std::max(out.largest_r, conv.r);
      out.largest_R = std::max(out.largest_R, conv.R);
      out.largest_tail = std::max(out.largest_tail, conv.tail);
    }
  }
  return out;
}

std::vector<PropertyRow> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (cfg.modes < 1 || cfg.modes > 8) throw std::invalid_argument("suites need 1 <= modes <= 8");
  if (name == "all") {
    std::vector<PropertyRow> out;
    for (const auto& s : suite_names()) {
      auto part = run_suite(s, cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
    throw std::invalid_argument("unknown suite \"" + name + "\"");
  Rows rows(name);
  if (name == "bounds") {
    bounds_suite(cfg, rows);
  } else if (cfg.arith == Arith::Rational) {
    run_exact_suite<Rational>(name, cfg, rows);
  } else {
    run_exact_suite<double>(name, cfg, rows);
  }
  return rows.take();
}

}  // namespace fwn
