#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "dsop/cli/config.hpp"
#include "dsop/version.hpp"

namespace dsop::cli {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  json config;
  json provenance;
  json results = json::object();
  /// The first table is the one written in CSV mode.
  std::vector<Table> tables;
  std::vector<Assertion> assertions;

  bool all_pass() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
  }
  void check(std::string name, bool pass, std::string detail = {}) {
    assertions.push_back({std::move(name), pass, std::move(detail)});
  }
};

/// Significant digits used for every floating-point field.
inline int output_digits(unsigned prec) { return std::clamp(static_cast<int>(prec * 0.30103) - 4, 10, 40); }

inline std::string fmt(const BigFloat& x, unsigned prec) { return x.to_string(output_digits(prec)); }

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

inline json provenance(const Config& c) {
  json p;
  p["library"] = "dsop";
  p["version"] = kVersion;
  p["precision_bits"] = c.precision_bits;
  p["output_digits"] = output_digits(c.precision_bits);
  return p;
}

inline json table_json(const Table& t) {
  json j;
  j["name"] = t.name;
  j["columns"] = t.columns;
  j["rows"] = t.rows;
  return j;
}

inline std::string to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["config"] = r.config;
  j["provenance"] = r.provenance;
  j["results"] = r.results;
  json ts = json::array();
  for (const auto& t : r.tables) ts.push_back(table_json(t));
  j["tables"] = ts;
  json as = json::array();
  for (const auto& a : r.assertions) as.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  j["assertions"] = as;
  return j.dump(2) + "\n";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
  return os.str();
}

inline std::string render(const Report& r, const std::string& format) {
  if (format == "csv") return r.tables.empty() ? std::string() : to_csv(r.tables.front());
  return to_json(r);
}

}  // namespace dsop::cli
