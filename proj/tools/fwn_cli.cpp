// fwn: command-line front end.
//
//   fwn validate [FILE...]                      check the mode space and parse files
//   fwn apply OPERATOR VECTOR                   apply an operator to a Fock vector
//   fwn symbol OPERATOR --zeta Z [--eta E]      symbol value <<Xi e+(Z), e+(E)>>
//   fwn symbol --vector V --zeta Z              S-transform of V at Z
//   fwn expand OPERATOR [--f COEFFS]            kernel expansion with residual
//   fwn reconstruct KERNELS                     operator matrix of a kernel file
//   fwn verify [--suite S] [--grid G]           property suites
//
// Exit codes: 0 ok, 1 property failure, 2 usage or format error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fwn/expansion.hpp"
#include "fwn/io.hpp"
#include "fwn/kernelop.hpp"
#include "fwn/suites.hpp"

namespace {

using fwn::io::json;
using fwn::io::FormatError;

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kUsage = 2;

struct Options {
  std::string arith = "rational";
  int modes = -1;  // unset: take the dimension from the input files, else 4
  std::string lambdas;
  std::string alpha = "1";
  std::uint64_t seed = 1;
  std::string report = "json";
  std::string out;
  double tol = 1e-9;

  std::vector<std::string> files;
  std::string zeta, eta, vector, f;
  std::string suite = "all";
  std::string grid = "default";
  int instances = 0;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open \"" + path + "\"");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("malformed JSON in \"" + path + "\": " + e.what());
  }
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(o.out);
  if (!out) throw FormatError("cannot write \"" + o.out + "\"");
  out << text << "\n";
}

// Resolves the dimension: --modes and the files' "dim" fields must agree.
int resolve_dim(const Options& o, const std::vector<json>& docs) {
  int d = o.modes;
  for (const auto& j : docs) {
    const int fd = fwn::io::operator_dim(j, -1);
    if (fd == -1) continue;
    if (d != -1 && fd != d) throw FormatError("dimension mismatch: " + std::to_string(fd) + " vs " + std::to_string(d));
    d = fd;
  }
  if (d == -1) d = 4;
  if (d < 1 || d > fwn::kMaxModes) throw FormatError("--modes must be in 1.." + std::to_string(fwn::kMaxModes));
  return d;
}

template <fwn::Scalar T>
fwn::ModeSpace<T> mode_space(const Options& o, int d) {
  std::vector<fwn::real_t<T>> lambdas;
  if (o.lambdas.empty()) {
    for (int j = 1; j <= d; ++j) lambdas.push_back(fwn::real_t<T>(j + 1));
  } else {
    lambdas = fwn::io::parse_list<T>(o.lambdas);
  }
  return fwn::ModeSpace<T>(d, std::move(lambdas), fwn::io::parse_scalar<T>(json(o.alpha)));
}

// Any operator file as a matrix; kernel files are reconstructed.
template <fwn::Scalar T>
fwn::OperatorMatrix<T> load_operator(const json& j, int d) {
  const std::string kind = fwn::io::require(j, "kind").get<std::string>();
  if (kind == "matrix") return fwn::io::parse_matrix<T>(j, d);
  if (kind == "kernels") {
    auto m = fwn::reconstruct(fwn::io::parse_family<T>(j, d));
    if (m.domain() == fwn::Sector::Even && m.codomain() == fwn::Sector::Even) return m;
    return m.resector(fwn::Sector::Full, fwn::Sector::Full);
  }
  if (kind == "expansion") {
    fwn::OperatorMatrix<T> out(d, fwn::Sector::Full, fwn::Sector::Full);
    for (const auto& fam : fwn::io::require(j, "families"))
      out += fwn::reconstruct(fwn::io::parse_family<T>(fam, d)).resector(fwn::Sector::Full, fwn::Sector::Full);
    return out;
  }
  throw FormatError("unknown operator kind \"" + kind + "\"");
}

template <fwn::Scalar T>
json max_abs_diff(const fwn::OperatorMatrix<T>& a, const fwn::OperatorMatrix<T>& b) {
  const auto fa = a.resector(fwn::Sector::Full, fwn::Sector::Full);
  const auto fb = b.resector(fwn::Sector::Full, fwn::Sector::Full);
  T worst = T(0);
  for (std::size_t i = 0; i < fa.rows(); ++i)
    for (std::size_t j = 0; j < fa.cols(); ++j) {
      T diff = fa.at(i, j) - fb.at(i, j);
      if (diff < T(0)) diff = T(0) - diff;
      if (worst < diff) worst = diff;
    }
  return fwn::io::to_json(worst);
}

template <fwn::Scalar T>
int cmd_validate(const Options& o) {
  std::vector<json> docs;
  for (const auto& f : o.files) docs.push_back(read_json(f));
  const int d = resolve_dim(o, docs);
  const auto ms = mode_space<T>(o, d);
  json out{{"mode_space", fwn::io::to_json(ms)}, {"rho", fwn::io::to_json(ms.rho())}};
  try {
    out["delta_sq"] = fwn::io::to_json(ms.delta_sq());
  } catch (const fwn::ModeSpaceError&) {
    out["delta_sq"] = nullptr;
  }
  json files = json::array();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& j = docs[i];
    std::string kind;
    if (j.contains("kind")) {
      load_operator<T>(j, d);
      kind = j.at("kind").get<std::string>();
    } else if (j.contains("components")) {
      fwn::io::parse_fock<T>(j, d);
      kind = "vector";
    } else if (j.contains("lambdas")) {
      fwn::io::parse_mode_space<T>(j);
      kind = "mode_space";
    } else if (j.contains("degree")) {
      fwn::io::parse_wedge<T>(j, d);
      kind = "wedge";
    } else {
      throw FormatError("unrecognized file \"" + o.files[i] + "\"");
    }
    files.push_back({{"path", o.files[i]}, {"kind", kind}});
  }
  out["files"] = files;
  out["status"] = "ok";
  emit(o, out.dump(2));
  return kOk;
}

template <fwn::Scalar T>
int cmd_apply(const Options& o) {
  if (o.files.size() != 2) throw FormatError("apply needs OPERATOR and VECTOR files");
  const json op = read_json(o.files[0]);
  const json vec = read_json(o.files[1]);
  const int d = resolve_dim(o, {op});
  const auto phi = fwn::io::parse_fock<T>(vec, d);
  fwn::FockVector<T> result(d);
  if (op.contains("kind") && op.at("kind") == "kernels" && !op.contains("left_W") && !op.contains("right_W")) {
    for (const auto& [lm, k] : fwn::io::parse_family<T>(op, d).terms) result += fwn::iko_apply(k, phi);
  } else {
    result = load_operator<T>(op, d).apply(phi);
  }
  emit(o, fwn::io::to_json(result).dump(2));
  return kOk;
}

template <fwn::Scalar T>
fwn::WedgeTensor<T> load_two_form(const std::string& path, int d) {
  if (path.empty()) return fwn::WedgeTensor<T>(d, 2);
  auto w = fwn::io::parse_wedge<T>(read_json(path), d);
  if (w.degree() != 2) throw fwn::DegreeError("zeta and eta must have degree 2");
  return w;
}

template <fwn::Scalar T>
int cmd_symbol(const Options& o) {
  json out;
  if (!o.vector.empty()) {
    const json vec = read_json(o.vector);
    const int d = resolve_dim(o, {});
    const auto phi = fwn::io::parse_fock<T>(vec, d);
    const auto zeta = load_two_form<T>(o.zeta, d);
    out = {{"kind", "s_transform"}, {"value", fwn::io::to_json(fwn::s_transform(phi, zeta))}};
  } else {
    if (o.files.size() != 1) throw FormatError("symbol needs one OPERATOR file (or --vector)");
    const json op = read_json(o.files[0]);
    const int d = resolve_dim(o, {op});
    auto xi = load_operator<T>(op, d);
    if (xi.domain() != fwn::Sector::Even || xi.codomain() != fwn::Sector::Even) {
      if (xi.domain() == fwn::Sector::Full && xi.codomain() == fwn::Sector::Full &&
          fwn::parity_blocks(xi).pp.resector(fwn::Sector::Full, fwn::Sector::Full) == xi) {
        xi = xi.resector(fwn::Sector::Even, fwn::Sector::Even);
      } else {
        throw fwn::ParityError("symbols need an even-to-even operator");
      }
    }
    const auto zeta = load_two_form<T>(o.zeta, d);
    const auto eta = load_two_form<T>(o.eta, d);
    out = {{"kind", "symbol"}, {"value", fwn::io::to_json(fwn::symbol_eval(xi, zeta, eta))}};
  }
  emit(o, out.dump(2));
  return kOk;
}

template <fwn::Scalar T>
int cmd_expand(const Options& o) {
  if (o.files.size() != 1) throw FormatError("expand needs one OPERATOR file");
  const json op = read_json(o.files[0]);
  const int d = resolve_dim(o, {op});
  const auto xi = load_operator<T>(op, d);
  json out;
  if (xi.domain() == fwn::Sector::Even && xi.codomain() == fwn::Sector::Even) {
    const auto fam = fwn::extract_kappa(xi);
    out = fwn::io::to_json(fam);
    out["residual"] = max_abs_diff(fwn::reconstruct(fam), xi);
  } else {
    fwn::WedgeTensor<T> f = fwn::WedgeTensor<T>::basis(d, {0});
    if (!o.f.empty()) {
      const auto coeffs = fwn::io::parse_list<T>(o.f);
      if (static_cast<int>(coeffs.size()) != d) throw FormatError("--f needs exactly " + std::to_string(d) + " coefficients");
      f = fwn::WedgeTensor<T>::vector(coeffs);
    }
    const auto e = fwn::expand_full(xi, f, o.tol);
    json families = json::array();
    const char* names[] = {"++", "+-", "-+", "--"};
    int i = 0;
    for (const auto* fam : e.families()) {
      json fj = fwn::io::to_json(*fam);
      fj["block"] = names[i++];
      families.push_back(fj);
    }
    out = {{"kind", "expansion"}, {"dim", d}, {"families", families}};
    out["residual"] = max_abs_diff(fwn::reconstruct_full(e), xi);
  }
  emit(o, out.dump(2));
  return kOk;
}

template <fwn::Scalar T>
int cmd_reconstruct(const Options& o) {
  if (o.files.size() != 1) throw FormatError("reconstruct needs one KERNELS file");
  const json k = read_json(o.files[0]);
  const std::string kind = fwn::io::require(k, "kind").get<std::string>();
  if (kind != "kernels" && kind != "expansion") throw FormatError("reconstruct needs a kernels or expansion file");
  const int d = resolve_dim(o, {k});
  emit(o, fwn::io::to_json(load_operator<T>(k, d)).dump(2));
  return kOk;
}

int cmd_verify(const Options& o) {
  fwn::SuiteConfig cfg;
  cfg.arith = o.arith == "float" ? fwn::Arith::Float : fwn::Arith::Rational;
  cfg.modes = o.modes == -1 ? 4 : o.modes;
  if (cfg.modes < 1 || cfg.modes > 8) throw FormatError("verify needs 1 <= --modes <= 8");
  cfg.seed = o.seed;
  cfg.instances = o.instances;
  cfg.tol = o.tol;
  cfg.grid = o.grid;
  fwn::bound_grid(cfg.grid);  // validates the name
  if (!o.lambdas.empty()) cfg.lambdas = fwn::io::parse_list<fwn::Rational>(o.lambdas);
  cfg.alpha = fwn::io::parse_rational(o.alpha);
  // Validates the mode space before any suite runs.
  fwn::ModeSpace<fwn::Rational>(cfg.modes, cfg.lambdas.empty() ? fwn::default_mode_space<fwn::Rational>(cfg.modes).lambdas() : cfg.lambdas,
                                cfg.alpha);
  const auto rows = fwn::run_suite(o.suite, cfg);
  bool all = true;
  long failed = 0;
  for (const auto& r : rows)
    if (!r.holds) {
      all = false;
      ++failed;
    }
  if (o.report == "text") {
    std::ostringstream os;
    for (const auto& r : rows) {
      os << (r.holds ? "PASS" : "FAIL") << "  " << r.suite << "  " << r.property << "  [" << r.anchor << "]  n=" << r.instances;
      if (!r.detail.empty()) os << "  " << r.detail;
      if (!r.holds) os << "  counterexample: " << r.counterexample;
      os << "\n";
    }
    os << (all ? "all properties hold" : std::to_string(failed) + " properties failed");
    emit(o, os.str());
  } else {
    json results = json::array();
    for (const auto& r : rows) {
      json row{{"suite", r.suite}, {"property", r.property}, {"anchor", r.anchor}, {"holds", r.holds}, {"instances", r.instances}};
      if (!r.detail.empty()) row["detail"] = r.detail;
      if (!r.holds) row["counterexample"] = r.counterexample;
      results.push_back(row);
    }
    json out{{"config",
              {{"arith", o.arith}, {"modes", cfg.modes}, {"seed", cfg.seed}, {"suite", o.suite}, {"grid", cfg.grid}}},
             {"results", results},
             {"summary", {{"total", rows.size()}, {"failed", failed}, {"ok", all}}}};
    emit(o, out.dump(2));
  }
  return all ? kOk : kPropertyFailure;
}

template <fwn::Scalar T>
int dispatch(const std::string& cmd, const Options& o) {
  if (cmd == "validate") return cmd_validate<T>(o);
  if (cmd == "apply") return cmd_apply<T>(o);
  if (cmd == "symbol") return cmd_symbol<T>(o);
  if (cmd == "expand") return cmd_expand<T>(o);
  if (cmd == "reconstruct") return cmd_reconstruct<T>(o);
  return cmd_verify(o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-mode fermionic white-noise calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--arith", o.arith, "rational or float")->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--modes", o.modes, "number of modes d");
  app.add_option("--lambdas", o.lambdas, "comma-separated eigenvalues lambda_1..lambda_d");
  app.add_option("--alpha", o.alpha, "Hilbert-Schmidt exponent alpha");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--report", o.report, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--tol", o.tol, "float-mode tolerance");

  auto* validate = app.add_subcommand("validate", "check the mode space and parse input files");
  validate->add_option("files", o.files);
  auto* apply = app.add_subcommand("apply", "apply an operator to a Fock vector");
  apply->add_option("files", o.files)->expected(2);
  auto* symbol = app.add_subcommand("symbol", "symbol or S-transform value");
  symbol->add_option("files", o.files);
  symbol->add_option("--zeta", o.zeta, "degree-2 wedge file");
  symbol->add_option("--eta", o.eta, "degree-2 wedge file");
  symbol->add_option("--vector", o.vector, "Fock vector file (S-transform)");
  auto* expand = app.add_subcommand("expand", "kernel expansion of an operator");
  expand->add_option("files", o.files)->expected(1);
  expand->add_option("--f", o.f, "transport vector coefficients for full operators");
  auto* reconstruct = app.add_subcommand("reconstruct", "operator matrix from kernels");
  reconstruct->add_option("files", o.files)->expected(1);
  auto* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", o.suite, "car, wedge, contract, bounds, expansion, full or all");
  verify->add_option("--grid", o.grid, "bound grid: default or small");
  verify->add_option("--instances", o.instances, "instances per randomized property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return o.arith == "float" ? dispatch<double>(cmd, o) : dispatch<fwn::Rational>(cmd, o);
  } catch (const std::exception& e) {
    std::cerr << "fwn " << cmd << ": " << e.what() << "\n";
    return kUsage;
  }
}
