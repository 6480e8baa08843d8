#include <gtest/gtest.h>

#include "fwn/fock.hpp"
#include "fwn/operator_matrix.hpp"
#include "oracle.hpp"

using namespace fwn;
using Q = Rational;
using W = WedgeTensor<Q>;
using F = FockVector<Q>;

TEST(Fock, NormConvention) {
  const auto ms = default_mode_space<Q>(3);
  EXPECT_EQ(fock_norm_sq(ms, F::from_wedge(W::basis(3, {0, 1})), 0), Q(1));
  EXPECT_EQ(fock_norm_sq(ms, F::vacuum(3), 0), Q(1));
  // Matches sum_n n! |phi_n|_p^2 computed on the wedge components.
  oracle::Rng rng(2);
  F phi(3);
  for (int n = 0; n <= 3; ++n) phi.add_component(oracle::random_wedge(rng, 3, n));
  Q expect = 0;
  for (int n : phi.degrees()) expect += factorial<Q>(n) * norm_p_sq(ms, phi.component(n), 1);
  EXPECT_EQ(fock_norm_sq(ms, phi, 1), expect);
}

TEST(Fock, PairingIsComponentwiseWedgePairing) {
  oracle::Rng rng(4);
  F a(4), b(4);
  for (int n = 0; n <= 4; ++n) {
    a.add_component(oracle::random_wedge(rng, 4, n));
    b.add_component(oracle::random_wedge(rng, 4, n));
  }
  Q expect = 0;
  for (int n = 0; n <= 4; ++n) expect += factorial<Q>(n) * pairing(a.component(n), b.component(n));
  EXPECT_EQ(fock_pairing(a, b), expect);
}

TEST(Fock, ExpVector) {
  EXPECT_EQ(exp_vector(W(4, 2)), F::vacuum(4));
  const auto zeta = W::basis(4, {0, 1}) + W::basis(4, {2, 3});
  F expect = F::vacuum(4);
  expect.add_component(zeta * Q(1, 2));
  expect.add(0b1111, Q(1, 12));
  EXPECT_EQ(exp_vector(zeta), expect);
  EXPECT_EQ(exp_vector(zeta).coeff(0b1111), Q(1, 12));
  EXPECT_THROW(exp_vector(W::basis(4, {0})), DegreeError);
}

TEST(Fock, STransform) {
  oracle::Rng rng(6);
  const auto zeta = oracle::random_wedge(rng, 4, 2);
  EXPECT_EQ(s_transform(F::vacuum(4), zeta), Q(1));
  const auto e12 = W::basis(4, {0, 1});
  EXPECT_EQ(s_transform(F::from_wedge(e12), zeta), pairing(e12, zeta));
  F phi(4);
  for (int n : {0, 2, 4}) phi.add_component(oracle::random_wedge(rng, 4, n));
  EXPECT_EQ(s_transform(phi, zeta), s_transform_series(phi, zeta));
  EXPECT_THROW(s_transform(F::from_wedge(W::basis(4, {0})), zeta), ParityError);
}

TEST(Fock, STaylor) {
  oracle::Rng rng(8);
  F phi(4);
  for (int n : {0, 2, 4}) phi.add_component(oracle::random_wedge(rng, 4, n));
  const auto zeta = oracle::random_wedge(rng, 4, 2);
  const auto eta = oracle::random_wedge(rng, 4, 2);
  const auto a = s_taylor(phi, zeta, eta);
  for (int z : {-1, 0, 1, 2, 3}) {
    Q poly = 0, power = 1;
    for (const auto& c : a) {
      poly += c * power;
      power *= z;
    }
    EXPECT_EQ(poly, s_transform(phi, zeta * Q(z) + eta));
  }
}

TEST(Fock, LadderOperatorsMatchOccupationOracle) {
  const int d = 3;
  oracle::Rng rng(10);
  const auto f = oracle::random_vector(rng, d);
  const auto fv = oracle::coeffs_of(f);
  EXPECT_EQ(oracle::full_of(creation_matrix(f)), oracle::creation(d, fv));
  EXPECT_EQ(oracle::full_of(annihilation_matrix(f)), oracle::annihilation(d, fv));
  EXPECT_EQ(oracle::full_of(weyl_matrix(f)), oracle::add(oracle::creation(d, fv), oracle::annihilation(d, fv)));
  // a+(f) phi = f ^ phi on each component.
  F phi(d);
  for (int n = 0; n <= 2; ++n) phi.add_component(oracle::random_wedge(rng, d, n));
  F expect(d);
  for (int n : phi.degrees()) expect.add_component(wedge_product(f, phi.component(n)));
  EXPECT_EQ(create(f, phi), expect);
}

TEST(Fock, AnnihilationIsLeftContraction) {
  // a(f) phi_n = n * f ^^1 phi_n, checked by the dense contraction oracle.
  oracle::Rng rng(12);
  const int d = 4;
  for (int n = 1; n <= 3; ++n) {
    const auto f = oracle::random_vector(rng, d);
    const auto w = oracle::random_wedge(rng, d, n);
    const auto got = annihilate(f, F::from_wedge(w)).component(n - 1);
    auto expect = oracle::alternate(oracle::contract_left(oracle::dense_of(f), oracle::dense_of(w), 1));
    for (auto& c : expect.v) c *= n;
    EXPECT_EQ(oracle::dense_of(got), expect);
  }
}

TEST(Fock, ParitySplit) {
  auto [e, o] = parity_split(F::vacuum(3));
  EXPECT_EQ(e, F::vacuum(3));
  EXPECT_TRUE(o.is_zero());
  const auto v = F::basis(3, 0b1) + F::basis(3, 0b11);
  std::tie(e, o) = parity_split(v);
  EXPECT_EQ(e, F::basis(3, 0b11));
  EXPECT_EQ(o, F::basis(3, 0b1));
  EXPECT_EQ(v.parity(), Parity::Mixed);
  EXPECT_EQ(F(3).parity(), Parity::Even);
}

TEST(Fock, ComplexConjugationInW) {
  using C = std::complex<double>;
  WedgeTensor<C> f(2, 1);
  f.add(0b1, C(0, 1));
  const auto out = weyl_W(f, FockVector<C>::basis(2, 0b1));
  // a(Jf) e1 = conj(i) * vacuum.
  EXPECT_EQ(out.coeff(0), C(0, -1));
}
