#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fwn/bounds.hpp"
#include "fwn/suites.hpp"

using namespace fwn;

namespace {

FMode space4() { return FMode(4, {2.0, 3.0, 4.0, 5.0}, 1.0); }

struct Gen {
  std::mt19937_64 g{5};
  double operator()() { return std::uniform_real_distribution<double>(-1, 1)(g); }
};

FWedge random_wedge(Gen& gen, int d, int n) {
  FWedge w(d, n);
  for (Mask m : subsets_of_size(d, n)) w.add(m, gen());
  return w;
}

FFock random_fock(Gen& gen, int d) {
  FFock phi(d);
  for (int n = 0; n <= d; ++n) phi.add_component(random_wedge(gen, d, n));
  return phi;
}

FMatrix random_even(Gen& gen, int d) {
  FMatrix xi(d, Sector::Even, Sector::Even);
  for (std::size_t r = 0; r < xi.rows(); ++r)
    for (std::size_t c = 0; c < xi.cols(); ++c) xi.at(r, c) = gen();
  return xi;
}

}  // namespace

TEST(Bounds, SeriesAtOneTwo) {
  // sum_{n<=4} (n+2)!/(n!)^2, summed in exact integers over 576 = (4!)^2.
  long num = 0;
  long f[] = {1, 1, 2, 6, 24, 120, 720};
  for (int n = 0; n <= 4; ++n) num += f[n + 2] * (576 / (f[n] * f[n]));
  const auto r = check_series(1.0, 2, 4);
  EXPECT_NEAR(r.lhs, num / 576.0, 1e-12);
  EXPECT_NEAR(r.rhs, 9 * std::exp(1.0), 1e-12);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(check_series(0.0, 0, 3).holds);
  EXPECT_THROW(check_series(-1.0, 1, 2), BoundDomainError);
}

TEST(Bounds, Factorial) {
  const auto r = check_factorial(3);
  EXPECT_EQ(r.lhs, 720.0);
  EXPECT_EQ(r.rhs, 2304.0);
  EXPECT_TRUE(r.holds);
  for (int l = 0; l <= 10; ++l) EXPECT_TRUE(check_factorial(l).holds) << l;
}

TEST(Bounds, SupFallingAgainstScan) {
  for (int m : {0, 1, 2, 4})
    for (double c : {0.5, 1.0, 2.0}) {
      const double rho = 0.5;
      double best = 0;
      for (int i = 0; i <= 400000; ++i) {
        const double x = i * 1e-4;
        double v = std::pow(rho, c * x);
        for (int j = 1; j <= m; ++j) v *= x + j;
        best = std::max(best, v);
      }
      EXPECT_NEAR(sup_falling(m, c, rho), best, 1e-6 * best) << m << " " << c;
      EXPECT_TRUE(check_sup(m, c, rho).holds);
    }
}

TEST(Bounds, ExpVectorConstantDominatesScan) {
  double best = 0;
  for (int i = 0; i <= 20000; ++i) {
    const double s = i * 1e-3;
    const double sum = 1 + s * s / 2 + std::pow(s, 4) / 24;
    best = std::max(best, std::sqrt(sum) / std::exp(s * s / 8));
  }
  EXPECT_GE(exp_vector_constant(4), best);
  EXPECT_LE(exp_vector_constant(4), best * 1.001);
}

TEST(Bounds, OperatorConstantIsWeightedFrobenius) {
  const auto ms = space4();
  const auto id = FMatrix::identity(4, Sector::Even);
  EXPECT_NEAR(operator_constant(ms, id, 1, 1), std::sqrt(8.0), 1e-12);
  // Weight ratio w^{-1} on each even state for s_in = 1, s_out = 0.
  double s = 0;
  for (std::size_t i = 0; i < id.rows(); ++i) s += std::pow(ms.mode_weight(id.row_basis()[i], -1.0), 2);
  EXPECT_NEAR(operator_constant(ms, id, 1, 0), std::sqrt(s), 1e-12);
}

TEST(Bounds, IkoAndLadderOnRandomInputs) {
  const auto ms = space4();
  Gen gen;
  const BoundParams bp{0, 0, 1, 1};
  for (int t = 0; t < 10; ++t) {
    KernelDistribution<double> k(4, 1, 1);
    for (Mask a : subsets_of_size(4, 2))
      for (Mask b : subsets_of_size(4, 2)) k.add(a, b, gen());
    const auto phi = random_fock(gen, 4);
    EXPECT_TRUE(check_iko(ms, k, parity_split(phi).first, bp).holds);
    const auto f = random_wedge(gen, 4, 1);
    EXPECT_TRUE(check_ladder(ms, Ladder::Create, f, phi, bp).holds);
    EXPECT_TRUE(check_ladder(ms, Ladder::Annihilate, f, phi, bp).holds);
  }
}

TEST(Bounds, ContractionsOnRandomInputs) {
  const auto ms = space4();
  Gen gen;
  for (double p : {-1.0, 0.0, 1.0})
    for (int m = 0; m <= 2; ++m) {
      const BoundParams bp{p, 0, 0.5, 1};
      const auto f = random_wedge(gen, 4, m + 1);
      const auto g = random_wedge(gen, 4, m + 1);
      EXPECT_TRUE(check_contraction(ms, embed_dense(f), embed_dense(g), m, Side::Left, bp).holds);
      EXPECT_TRUE(check_contraction(ms, embed_dense(f), embed_dense(g), m, Side::Right, bp).holds);
      EXPECT_TRUE(check_wedge_contraction(ms, f, g, m, Side::Left, bp).holds);
    }
}

TEST(Bounds, SymbolAndKernelDecay) {
  const auto ms = space4();
  Gen gen;
  const auto xi = random_even(gen, 4);
  const BoundParams bp{0, 0, 1, 1};
  const auto zeta = random_wedge(gen, 4, 2);
  const auto eta = random_wedge(gen, 4, 2);
  EXPECT_TRUE(check_symbol_growth(ms, xi, zeta, eta, bp).holds);
  for (const auto& r : check_taylor(ms, xi, zeta, eta, bp)) EXPECT_TRUE(r.holds) << r.detail;
  for (int l = 0; l <= 2; ++l)
    for (int m = 0; m <= 2; ++m) EXPECT_TRUE(check_K_decay(ms, xi, l, m, bp).holds);
}

TEST(Bounds, ConvergenceFindsContraction) {
  const auto ms = space4();
  Gen gen;
  const auto xi = random_even(gen, 4);
  auto phi = random_fock(gen, 4);
  phi = parity_split(phi).first;
  const auto res = check_convergence(ms, xi, phi, BoundParams{0, 0, 0.5, 1});
  EXPECT_LT(res.R, 1.0);
  EXPECT_GE(res.r, 0.5);
  EXPECT_TRUE(std::isfinite(res.tail));
  EXPECT_TRUE(res.report.holds);
  EXPECT_THROW(check_convergence(ms, xi, phi, BoundParams{0, 0, 0, 1}), BoundDomainError);
}

TEST(Bounds, Grids) {
  EXPECT_EQ(bound_grid("default").size(), 27u);
  EXPECT_EQ(bound_grid("small").size(), 1u);
  EXPECT_THROW(bound_grid("huge"), std::invalid_argument);
}

TEST(Bounds, SmallSweepHolds) {
  const auto sweep = bound_sweep(space4(), 3, 2, bound_grid("small"), 1.0);
  for (int id = 1; id <= 12; ++id) {
    const auto b = static_cast<BoundId>(id);
    EXPECT_GT(sweep.checks.at(b), 0) << bound_name(b);
    EXPECT_EQ(sweep.failures.count(b) ? sweep.failures.at(b) : 0, 0) << bound_name(b);
  }
  EXPECT_LT(sweep.largest_R, 1.0);
}
