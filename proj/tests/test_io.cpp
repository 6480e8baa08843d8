#include <gtest/gtest.h>

#include "fwn/io.hpp"
#include "oracle.hpp"

using namespace fwn;
using fwn::io::json;
using Q = Rational;
using W = WedgeTensor<Q>;

TEST(Io, Rationals) {
  EXPECT_EQ(io::parse_rational("3/6"), Q(1, 2));
  EXPECT_EQ(io::parse_rational("+4"), Q(4));
  EXPECT_EQ(io::parse_rational("-2/4").get_str(), "-1/2");
  EXPECT_THROW(io::parse_rational("1/0"), io::FormatError);
  EXPECT_THROW(io::parse_rational("abc"), io::FormatError);
  EXPECT_THROW(io::parse_rational(""), io::FormatError);
  EXPECT_EQ(io::parse_scalar<Q>(json(7)), Q(7));
  EXPECT_DOUBLE_EQ(io::parse_double("1/4"), 0.25);
  EXPECT_DOUBLE_EQ(io::parse_scalar<double>(json(0.5)), 0.5);
  EXPECT_THROW(io::parse_double("x"), io::FormatError);
  EXPECT_EQ(io::parse_list<Q>("1,2/3,-1"), (std::vector<Q>{1, Q(2, 3), -1}));
}

TEST(Io, Modes) {
  EXPECT_EQ(io::parse_modes(json::array({1, 3}), 4), Mask{0b101});
  EXPECT_EQ(io::modes_json(0b101), json::array({1, 3}));
  EXPECT_THROW(io::parse_modes(json::array({3, 1}), 4), io::FormatError);
  EXPECT_THROW(io::parse_modes(json::array({1, 1}), 4), io::FormatError);
  EXPECT_THROW(io::parse_modes(json::array({0}), 4), io::FormatError);
  EXPECT_THROW(io::parse_modes(json::array({5}), 4), io::FormatError);
}

TEST(Io, WedgeAndFockRoundTrip) {
  oracle::Rng rng(3);
  for (int n = 0; n <= 4; ++n) {
    const auto w = oracle::random_wedge(rng, 4, n);
    const auto j = io::to_json(w);
    EXPECT_EQ(io::parse_wedge<Q>(j, 4), w);
    EXPECT_EQ(io::to_json(io::parse_wedge<Q>(j, 4)).dump(), j.dump());
  }
  FockVector<Q> phi(4);
  for (int n = 0; n <= 4; ++n) phi.add_component(oracle::random_wedge(rng, 4, n));
  EXPECT_EQ(io::parse_fock<Q>(io::to_json(phi), 4), phi);
  const json bad = json::parse(R"({"degree": 2, "entries": [{"modes": [1], "value": "1"}]})");
  EXPECT_THROW(io::parse_wedge<Q>(bad, 4), io::FormatError);
  EXPECT_THROW(io::parse_wedge<Q>(json::parse(R"({"entries": []})"), 4), io::FormatError);
}

TEST(Io, MatrixAndFamilyRoundTrip) {
  oracle::Rng rng(5);
  const auto xi = oracle::random_operator(rng, 3, Sector::Full);
  const auto j = io::to_json(xi);
  EXPECT_EQ(io::parse_matrix<Q>(j, 3), xi);
  EXPECT_EQ(io::to_json(io::parse_matrix<Q>(j, 3)).dump(), j.dump());
  EXPECT_EQ(io::operator_dim(j, 0), 3);

  KernelFamily<Q> fam(4);
  KernelDistribution<Q> k(4, 1, 0);
  k.add(0b0011, 0, Q(2, 3));
  k.add(0b1100, 0, Q(-1));
  fam.terms.emplace(Order{1, 0}, k);
  fam.right_W = W::basis(4, {0});
  const auto fj = io::to_json(fam);
  EXPECT_EQ(io::parse_family<Q>(fj, 4), fam);
  EXPECT_EQ(io::to_json(io::parse_family<Q>(fj, 4)).dump(), fj.dump());
  const json wrong = json::parse(R"({"kind":"kernels","terms":[{"l":1,"m":0,"entries":[{"left":[1],"right":[],"value":"1"}]}]})");
  EXPECT_THROW(io::parse_family<Q>(wrong, 4), io::FormatError);
}

TEST(Io, DenseVectorAndParity) {
  const auto f = io::parse_dense_vector<Q>(json::array({"1/2", 0, "3"}), 3);
  EXPECT_EQ(f.coeff(0b001), Q(1, 2));
  EXPECT_EQ(f.coeff(0b100), Q(3));
  EXPECT_EQ(io::dense_vector_json(f), json::array({"1/2", "0", "3"}));
  EXPECT_THROW(io::parse_dense_vector<Q>(json::array({1, 2}), 3), io::FormatError);
  EXPECT_EQ(io::parse_parity("even"), Sector::Even);
  EXPECT_THROW(io::parse_parity("odd"), io::FormatError);
}

TEST(Io, ModeSpace) {
  const json j = json::parse(R"({"dim": 3, "lambdas": ["2", "5/2", 3], "alpha": "1/2"})");
  const auto ms = io::parse_mode_space<Q>(j);
  EXPECT_EQ(ms.dim(), 3);
  EXPECT_EQ(ms.lambdas()[1], Q(5, 2));
  EXPECT_EQ(io::to_json(ms)["alpha"], "1/2");
}
