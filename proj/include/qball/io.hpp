#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "partitions.hpp"
#include "plancherel.hpp"
#include "qdiff.hpp"
#include "radial.hpp"

namespace qball {

using json = nlohmann::ordered_json;

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline json partition_json(const Partition& p) { return json(p.parts()); }

inline Partition partition_from_json(const json& j, int n) {
  if (!j.is_array()) throw schema_error("partition must be an integer array");
  std::vector<int> v;
  for (auto& x : j) {
    if (!x.is_number_integer()) throw schema_error("partition entries must be integers");
    v.push_back(x.get<int>());
  }
  if (static_cast<int>(v.size()) != n) throw schema_error("partition length differs from n");
  try {
    return Partition(v);
  } catch (const std::exception& e) {
    throw schema_error(std::string("invalid partition: ") + e.what());
  }
}

inline json to_json(const RadialFunction& f, double q) {
  json j;
  j["n"] = f.n();
  j["q"] = q;
  json sup = json::array();
  for (auto& [lam, v] : f.support()) {
    json e;
    e["lambda"] = partition_json(lam);
    e["re"] = v.real();
    e["im"] = v.imag();
    sup.push_back(e);
  }
  j["support"] = sup;
  return j;
}

namespace detail {
inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw schema_error(std::string("missing field '") + key + "'");
  return j.at(key);
}
inline double number(const json& j, const char* what) {
  if (!j.is_number()) throw schema_error(std::string(what) + " must be a number");
  return j.get<double>();
}
}  // namespace detail

inline RadialFunction radial_from_json(const json& j, double* q_out = nullptr) {
  const json& jn = detail::field(j, "n");
  if (!jn.is_number_integer() || jn.get<int>() < 1) throw schema_error("n must be a positive integer");
  const int n = jn.get<int>();
  double q = detail::number(detail::field(j, "q"), "q");
  if (q_out) *q_out = q;
  const json& sup = detail::field(j, "support");
  if (!sup.is_array()) throw schema_error("support must be an array");
  RadialFunction f(n);
  for (auto& e : sup) {
    Partition lam = partition_from_json(detail::field(e, "lambda"), n);
    double re = detail::number(detail::field(e, "re"), "re");
    double im = e.contains("im") ? detail::number(e.at("im"), "im") : 0.0;
    f.add(lam, cplx(re, im));
  }
  return f;
}

inline json to_json(const SpectralFunction& s, double q) {
  json j;
  j["n"] = s.n;
  j["q"] = q;
  j["M"] = s.M();
  j["nodes"] = s.nodes;
  json vals = json::array();
  for (auto v : s.values) vals.push_back(json::array({v.real(), v.imag()}));
  j["values"] = vals;
  return j;
}

inline SpectralFunction spectral_from_json(const json& j, double* q_out = nullptr) {
  SpectralFunction s;
  const json& jn = detail::field(j, "n");
  if (!jn.is_number_integer() || jn.get<int>() < 1) throw schema_error("n must be a positive integer");
  s.n = jn.get<int>();
  double q = detail::number(detail::field(j, "q"), "q");
  if (q_out) *q_out = q;
  const json& jm = detail::field(j, "M");
  if (!jm.is_number_integer()) throw schema_error("M must be an integer");
  const json& nodes = detail::field(j, "nodes");
  if (!nodes.is_array()) throw schema_error("nodes must be an array");
  for (auto& x : nodes) s.nodes.push_back(detail::number(x, "node"));
  if (static_cast<int>(s.nodes.size()) != jm.get<int>() + 1) throw schema_error("nodes must have M+1 entries");
  const json& vals = detail::field(j, "values");
  if (!vals.is_array()) throw schema_error("values must be an array");
  for (auto& v : vals) {
    if (!v.is_array() || v.size() != 2) throw schema_error("values entries must be [re, im]");
    s.values.emplace_back(detail::number(v[0], "re"), detail::number(v[1], "im"));
  }
  size_t total = 1;
  for (int i = 0; i < s.n; ++i) total *= s.nodes.size();
  if (s.values.size() != total) throw schema_error("values must have (M+1)^n entries");
  return s;
}

struct CheckReport {
  std::string check;
  int n = 1;
  double q = 0.5;
  json params = json::object();
  double defect = 0;
  double tolerance = 0;
  bool pass = false;
};

inline json to_json(const CheckReport& r) {
  json j;
  j["check"] = r.check;
  j["n"] = r.n;
  j["q"] = r.q;
  j["params"] = r.params;
  j["defect"] = r.defect;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  return j;
}

inline json polynomial_json(const std::vector<double>& coeffs) { return json(coeffs); }

inline json triplets_json(const GridOperator& op) {
  json arr = json::array();
  for (auto& t : op.entries()) {
    json e;
    e["row"] = partition_json(t.row);
    e["col"] = partition_json(t.col);
    e["value"] = t.value;
    arr.push_back(e);
  }
  return arr;
}

inline std::string partition_csv(const Partition& p) {
  std::string s;
  for (int i = 0; i < p.n(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

inline std::string triplets_csv(const GridOperator& op) {
  std::ostringstream os;
  os << "row,col,value\n";
  for (auto& t : op.entries()) os << partition_csv(t.row) << ',' << partition_csv(t.col) << ',' << fmt17(t.value) << '\n';
  return os.str();
}

inline std::string radial_csv(const RadialFunction& f, const QContext& ctx) {
  std::ostringstream os;
  os << "lambda,weight,re,im\n";
  for (auto& [lam, v] : f.support())
    os << partition_csv(lam) << ',' << fmt17(point_mass(lam, ctx)) << ',' << fmt17(v.real()) << ','
       << fmt17(v.imag()) << '\n';
  return os.str();
}

}  // namespace qball
