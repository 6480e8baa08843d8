#include "fwn/io.hpp"

#include <cerrno>
#include <cstdlib>

namespace fwn::io {

Rational parse_rational(const std::string& text) {
  Rational v;
  std::string t = text;
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  if (t.empty() || v.set_str(t, 10) != 0) throw FormatError("not a rational number: \"" + text + "\"");
  if (sgn(v.get_den()) == 0) throw FormatError("zero denominator: \"" + text + "\"");
  v.canonicalize();
  return v;
}

double parse_double(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) return parse_rational(text).get_d();
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) throw FormatError("not a number: \"" + text + "\"");
  return v;
}

Mask parse_modes(const json& j, int dim) {
  if (!j.is_array()) throw FormatError("mode lists must be arrays");
  std::vector<int> modes;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw FormatError("mode labels must be integers");
    const int i = x.get<int>();
    if (i < 1 || i > dim) throw FormatError("mode " + std::to_string(i) + " outside 1.." + std::to_string(dim));
    modes.push_back(i - 1);
  }
  for (std::size_t k = 1; k < modes.size(); ++k)
    if (modes[k] <= modes[k - 1]) throw FormatError("mode lists must be strictly ascending");
  return mask_of(modes, dim);
}

json modes_json(Mask m) {
  json out = json::array();
  for (int i : modes_of(m)) out.push_back(i + 1);
  return out;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int require_int(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

int operator_dim(const json& j, int fallback) {
  if (j.is_object() && j.contains("dim")) return require_int(j, "dim");
  return fallback;
}

}  // namespace fwn::io
