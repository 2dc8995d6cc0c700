#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsop/errors.hpp"
#include "dsop/exactpoly/bigfloat.hpp"
#include "dsop/exactpoly/rational.hpp"
#include "dsop/mass.hpp"
#include "dsop/measures.hpp"
#include "dsop/sobolev.hpp"

namespace dsop::cli {

using json = nlohmann::ordered_json;

/// Malformed command line or configuration file.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointSpec {
  std::string re = "0", im = "0";
  Rational re_q, im_q;

  Complex value(unsigned prec) const { return {BigFloat(re_q, prec), BigFloat(im_q, prec)}; }
};

struct Config {
  std::vector<Rational> weight_coeffs{Rational(1)};
  std::vector<MassTerm> masses;
  unsigned precision_bits = 256;
  int nmax = 10;
  int k = 1;
  std::vector<PointSpec> points;
  std::optional<int> n_lo, n_hi;
  std::string format = "json";
  std::string path;

  MeasureSpec measure() const { return MeasureSpec::with_weight(Poly(weight_coeffs)); }
  SobolevProduct product() const { return SobolevProduct(measure(), masses); }

  std::vector<Complex> complex_points() const {
    std::vector<Complex> out;
    for (const auto& p : points) out.push_back(p.value(precision_bits));
    return out;
  }

  /// Range of n for rate tables; defaults to [5, nmax].
  std::vector<int> n_range() const {
    const int lo = n_lo.value_or(std::min(5, nmax)), hi = n_hi.value_or(nmax);
    std::vector<int> ns;
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
    return ns;
  }
};

namespace detail {

inline Rational rational_field(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const argument_error& e) {
      throw parse_error(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.dump(), 10);
  throw parse_error(where + ": expected a rational string such as \"3/2\" (floating-point numbers are not accepted)");
}

inline std::string number_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw parse_error(where + ": expected a decimal string");
}

inline int int_field(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw parse_error(where + ": expected an integer");
  const auto x = v.get<long long>();
  if (x < -1000000 || x > 1000000) throw parse_error(where + ": integer out of range");
  return static_cast<int>(x);
}

inline void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) throw parse_error(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw parse_error(where + ": unknown key '" + it.key() + "'");
  }
}

}  // namespace detail

inline Config parse_config(const json& j) {
  using namespace detail;
  only_keys(j, {"measure", "masses", "precision_bits", "nmax", "k", "points", "n_range", "output"}, "config");
  Config c;
  if (j.contains("measure")) {
    const json& m = j["measure"];
    only_keys(m, {"weight_coeffs"}, "measure");
    if (m.contains("weight_coeffs")) {
      if (!m["weight_coeffs"].is_array() || m["weight_coeffs"].empty())
        throw parse_error("measure.weight_coeffs: expected a non-empty array");
      c.weight_coeffs.clear();
      for (size_t i = 0; i < m["weight_coeffs"].size(); ++i)
        c.weight_coeffs.push_back(rational_field(m["weight_coeffs"][i], "measure.weight_coeffs[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("masses")) {
    if (!j["masses"].is_array()) throw parse_error("masses: expected an array");
    for (size_t i = 0; i < j["masses"].size(); ++i) {
      const json& m = j["masses"][i];
      const std::string where = "masses[" + std::to_string(i) + "]";
      only_keys(m, {"c", "order", "eta", "lower_eta"}, where);
      if (!m.contains("c")) throw parse_error(where + ": missing 'c'");
      MassTerm t;
      t.c = rational_field(m["c"], where + ".c");
      t.order = m.contains("order") ? int_field(m["order"], where + ".order") : 0;
      t.eta = m.contains("eta") ? rational_field(m["eta"], where + ".eta") : Rational(1);
      if (m.contains("lower_eta")) {
        if (!m["lower_eta"].is_array()) throw parse_error(where + ".lower_eta: expected an array");
        for (const auto& e : m["lower_eta"]) t.lower_eta.push_back(rational_field(e, where + ".lower_eta"));
      }
      c.masses.push_back(std::move(t));
    }
  }
  if (j.contains("precision_bits")) {
    const int p = int_field(j["precision_bits"], "precision_bits");
    if (p < 64 || p > 65536) throw parse_error("precision_bits: must lie in [64, 65536]");
    c.precision_bits = static_cast<unsigned>(p);
  }
  if (j.contains("nmax")) c.nmax = int_field(j["nmax"], "nmax");
  if (j.contains("k")) c.k = int_field(j["k"], "k");
  if (j.contains("points")) {
    if (!j["points"].is_array()) throw parse_error("points: expected an array");
    for (size_t i = 0; i < j["points"].size(); ++i) {
      const json& p = j["points"][i];
      const std::string where = "points[" + std::to_string(i) + "]";
      only_keys(p, {"re", "im"}, where);
      PointSpec s;
      if (p.contains("re")) s.re = number_text(p["re"], where + ".re");
      if (p.contains("im")) s.im = number_text(p["im"], where + ".im");
      s.re_q = rational_field(json(s.re), where + ".re");
      s.im_q = rational_field(json(s.im), where + ".im");
      c.points.push_back(std::move(s));
    }
  }
  if (j.contains("n_range")) {
    const json& r = j["n_range"];
    if (!r.is_array() || r.size() != 2) throw parse_error("n_range: expected [lo, hi]");
    c.n_lo = int_field(r[0], "n_range[0]");
    c.n_hi = int_field(r[1], "n_range[1]");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    only_keys(o, {"format", "path"}, "output");
    if (o.contains("format")) {
      if (!o["format"].is_string()) throw parse_error("output.format: expected a string");
      c.format = o["format"].get<std::string>();
    }
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw parse_error("output.path: expected a string");
      c.path = o["path"].get<std::string>();
    }
  }
  return c;
}

/// Range checks that apply to every command.
inline void validate(const Config& c) {
  if (c.format != "json" && c.format != "csv") throw parse_error("output.format: expected 'json' or 'csv'");
  if (c.nmax < 0) throw parse_error("nmax: must be non-negative");
  if (c.k < 0) throw parse_error("k: must be non-negative");
  if (c.n_lo && c.n_hi && (*c.n_lo < 0 || *c.n_lo > *c.n_hi)) throw parse_error("n_range: need 0 <= lo <= hi");
  try {
    for (const auto& m : c.masses) m.validate();
    (void)c.measure();
  } catch (const argument_error& e) {
    throw parse_error(e.what());
  }
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw parse_error("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

/// Normalized configuration; parsing it again gives the same Config.
inline json echo(const Config& c) {
  json j;
  json w = json::array();
  for (const auto& q : c.weight_coeffs) w.push_back(to_string(q));
  j["measure"] = {{"weight_coeffs", w}};
  json ms = json::array();
  for (const auto& m : c.masses) {
    json e;
    e["c"] = to_string(m.c);
    e["order"] = m.order;
    e["eta"] = to_string(m.eta);
    if (!m.lower_eta.empty()) {
      json l = json::array();
      for (const auto& x : m.lower_eta) l.push_back(to_string(x));
      e["lower_eta"] = l;
    }
    ms.push_back(e);
  }
  j["masses"] = ms;
  j["precision_bits"] = c.precision_bits;
  j["nmax"] = c.nmax;
  j["k"] = c.k;
  json ps = json::array();
  for (const auto& p : c.points) ps.push_back({{"re", p.re}, {"im", p.im}});
  j["points"] = ps;
  if (c.n_lo && c.n_hi) j["n_range"] = {*c.n_lo, *c.n_hi};
  j["output"] = {{"format", c.format}, {"path", c.path}};
  return j;
}

}  // namespace dsop::cli
