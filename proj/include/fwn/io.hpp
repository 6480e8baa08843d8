#pragma once

// JSON file formats. Modes are 1-based in files and 0-based in memory.
//
//   mode space  {"dim": d, "lambdas": ["2", "5/2", ...], "alpha": "1"}
//   vector      {"components": [{"degree": n, "entries": [{"modes": [..], "value": "p/q"}]}]}
//   wedge       {"degree": n, "entries": [...]}   (a single component)
//   operator    {"kind": "matrix", "dim": d, "parity": "even"|"full",
//                "blocks": [{"out_degree": a, "in_degree": b,
//                            "entries": [{"row": [..], "col": [..], "value": ..}]}]}
//               {"kind": "kernels", "dim": d,
//                "terms": [{"l": l, "m": m, "entries": [{"left": [..], "right": [..], "value": ..}]}],
//                "left_W": [v_1, ..., v_d], "right_W": [v_1, ..., v_d]}   (W optional)
//
// Rational values are strings "p/q" (or "p"); float values are JSON numbers
// or decimal strings. Output is canonical: ascending mode lists, keys in
// basis order, no floats in rational mode.

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fwn/expansion.hpp"
#include "fwn/fock.hpp"
#include "fwn/kernelop.hpp"
#include "fwn/modespace.hpp"
#include "fwn/operator_matrix.hpp"
#include "fwn/scalar.hpp"
#include "fwn/wedge.hpp"

namespace fwn::io {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text);
double parse_double(const std::string& text);

template <Scalar T>
T parse_scalar(const json& j);

template <>
inline Rational parse_scalar<Rational>(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw FormatError("rational values must be strings \"p/q\" or integers");
}

template <>
inline double parse_scalar<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  throw FormatError("expected a number");
}

inline json to_json(const Rational& v) { return v.get_str(); }
inline json to_json(double v) { return v; }

/// Comma-separated scalars, e.g. "2,5/2,3".
template <Scalar T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(',', start);
    const auto piece = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (piece.empty()) throw FormatError("empty entry in list \"" + text + "\"");
    out.push_back(parse_scalar<T>(json(piece)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

/// 1-based mode list to a mask; throws FormatError on bad indices.
Mask parse_modes(const json& j, int dim);
json modes_json(Mask m);

const json& require(const json& j, const char* key);
int require_int(const json& j, const char* key);

template <Scalar T>
ModeSpace<T> parse_mode_space(const json& j) {
  const int d = require_int(j, "dim");
  std::vector<T> lambdas;
  for (const auto& v : require(j, "lambdas")) lambdas.push_back(parse_scalar<T>(v));
  const T alpha = j.contains("alpha") ? parse_scalar<T>(j.at("alpha")) : T(1);
  return ModeSpace<T>(d, std::move(lambdas), alpha);
}

template <Scalar T>
json to_json(const ModeSpace<T>& ms) {
  json out;
  out["dim"] = ms.dim();
  out["lambdas"] = json::array();
  for (const auto& l : ms.lambdas()) out["lambdas"].push_back(to_json(l));
  out["alpha"] = to_json(ms.alpha());
  return out;
}

template <Scalar T>
WedgeTensor<T> parse_wedge(const json& j, int dim) {
  const int n = require_int(j, "degree");
  WedgeTensor<T> w(dim, n);
  for (const auto& e : require(j, "entries")) {
    const Mask m = parse_modes(require(e, "modes"), dim);
    if (popcount(m) != n) throw FormatError("entry size does not match degree " + std::to_string(n));
    w.add(m, parse_scalar<T>(require(e, "value")));
  }
  return w;
}

template <Scalar T>
json to_json(const WedgeTensor<T>& w) {
  std::vector<Mask> keys;
  for (const auto& [m, c] : w.coeffs()) keys.push_back(m);
  std::sort(keys.begin(), keys.end(), basis_less);
  json entries = json::array();
  for (Mask m : keys) entries.push_back({{"modes", modes_json(m)}, {"value", to_json(w.coeff(m))}});
  return {{"degree", w.degree()}, {"entries", entries}};
}

template <Scalar T>
FockVector<T> parse_fock(const json& j, int dim) {
  FockVector<T> v(dim);
  for (const auto& comp : require(j, "components")) v.add_component(parse_wedge<T>(comp, dim));
  return v;
}

template <Scalar T>
json to_json(const FockVector<T>& v) {
  json comps = json::array();
  for (int n : v.degrees()) comps.push_back(to_json(v.component(n)));
  return {{"components", comps}};
}

/// Degree-1 vector written as d coefficients.
template <Scalar T>
WedgeTensor<T> parse_dense_vector(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw FormatError("W vectors must list exactly " + std::to_string(dim) + " coefficients");
  std::vector<T> v;
  for (const auto& x : j) v.push_back(parse_scalar<T>(x));
  return WedgeTensor<T>::vector(v);
}

template <Scalar T>
json dense_vector_json(const WedgeTensor<T>& f) {
  json out = json::array();
  for (int i = 0; i < f.dim(); ++i) out.push_back(to_json(f.coeff(Mask{1} << i)));
  return out;
}

inline Sector parse_parity(const std::string& s) {
  if (s == "even") return Sector::Even;
  if (s == "full") return Sector::Full;
  throw FormatError("operator parity must be \"even\" or \"full\", got \"" + s + "\"");
}

template <Scalar T>
OperatorMatrix<T> parse_matrix(const json& j, int dim) {
  const Sector s = parse_parity(require(j, "parity").get<std::string>());
  OperatorMatrix<T> out(dim, s, s);
  for (const auto& b : require(j, "blocks")) {
    const int od = require_int(b, "out_degree");
    const int id = require_int(b, "in_degree");
    for (const auto& e : require(b, "entries")) {
      const Mask row = parse_modes(require(e, "row"), dim);
      const Mask col = parse_modes(require(e, "col"), dim);
      if (popcount(row) != od || popcount(col) != id) throw FormatError("matrix entry does not match its block degrees");
      if (!in_sector(row, s) || !in_sector(col, s)) throw FormatError("matrix entry outside the declared parity");
      out.add(row, col, parse_scalar<T>(require(e, "value")));
    }
  }
  return out;
}

template <Scalar T>
json to_json(const OperatorMatrix<T>& xi) {
  if (xi.domain() != xi.codomain() || xi.domain() == Sector::Odd)
    throw FormatError("only even or full square operators can be written");
  json blocks = json::array();
  for (const auto& [deg, entries] : xi.blocks()) {
    json es = json::array();
    for (const auto& [r, c, v] : entries) es.push_back({{"row", modes_json(r)}, {"col", modes_json(c)}, {"value", to_json(v)}});
    blocks.push_back({{"out_degree", deg.first}, {"in_degree", deg.second}, {"entries", es}});
  }
  return {{"kind", "matrix"}, {"dim", xi.dim()}, {"parity", sector_name(xi.domain())}, {"blocks", blocks}};
}

template <Scalar T>
KernelFamily<T> parse_family(const json& j, int dim) {
  KernelFamily<T> fam(dim);
  for (const auto& t : require(j, "terms")) {
    const int l = require_int(t, "l");
    const int m = require_int(t, "m");
    if (l < 0 || m < 0 || 2 * l > dim || 2 * m > dim) throw FormatError("kernel order outside the mode range");
    KernelDistribution<T> k(dim, l, m);
    for (const auto& e : require(t, "entries")) {
      const Mask left = parse_modes(require(e, "left"), dim);
      const Mask right = parse_modes(require(e, "right"), dim);
      if (popcount(left) != 2 * l || popcount(right) != 2 * m) throw FormatError("kernel entry does not match (l, m)");
      k.add(left, right, parse_scalar<T>(require(e, "value")));
    }
    if (fam.terms.count({l, m})) throw FormatError("duplicate kernel term");
    fam.terms.emplace(Order{l, m}, std::move(k));
  }
  if (j.contains("left_W")) fam.left_W = parse_dense_vector<T>(j.at("left_W"), dim);
  if (j.contains("right_W")) fam.right_W = parse_dense_vector<T>(j.at("right_W"), dim);
  return fam;
}

template <Scalar T>
json to_json(const KernelFamily<T>& fam) {
  json terms = json::array();
  for (const auto& [lm, k] : fam.terms) {
    std::vector<std::pair<Mask, Mask>> keys;
    for (const auto& [key, c] : k.kernel().coeffs()) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return basis_less(a.first, b.first);
      return basis_less(a.second, b.second);
    });
    json es = json::array();
    for (const auto& [a, b] : keys)
      es.push_back({{"left", modes_json(a)}, {"right", modes_json(b)}, {"value", to_json(k.kernel().coeff(a, b))}});
    terms.push_back({{"l", lm.first}, {"m", lm.second}, {"entries", es}});
  }
  json out = {{"kind", "kernels"}, {"dim", fam.dim}, {"terms", terms}};
  if (fam.left_W) out["left_W"] = dense_vector_json(*fam.left_W);
  if (fam.right_W) out["right_W"] = dense_vector_json(*fam.right_W);
  return out;
}

/// Operator dimension: the file's "dim" when present, else the fallback.
int operator_dim(const json& j, int fallback);

}  // namespace fwn::io
