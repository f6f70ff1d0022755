#pragma once
// report envelope: json with sorted keys and 17-digit floats, plus text and csv

#include "ncg/report.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace ncg::io {

using json = nlohmann::json;  // std::map objects, so keys come out sorted

inline const char* schema = "ncg-report/1";

inline json checks_json(const ModelReport& rep) {
  json arr = json::array();
  for (const auto& c : rep.checks)
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value},
                   {"expected", c.expected}, {"tol", c.tol}, {"detail", c.detail}});
  return arr;
}

inline json timings_json(const ModelReport& rep) {
  json t = json::object();
  for (const auto& [stage, s] : rep.timings) t[stage] = s;
  return t;
}

template <class V>
json index_list(const V& v) {
  json a = json::array();
  for (auto x : v) a.push_back(static_cast<long long>(x));
  return a;
}

inline std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // keep it a float on re-parse
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

inline void dump_to(std::ostringstream& os, const json& j, int indent) {
  std::string pad(std::size_t(indent) * 2, ' ');
  std::string inner(std::size_t(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << json(it.key()).dump() << ": ";
        dump_to(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        dump_to(os, j[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

inline std::string dump(const json& j) {
  std::ostringstream os;
  dump_to(os, j, 0);
  os << "\n";
  return os.str();
}

// one line per check
inline std::string checks_text(const ModelReport& rep) {
  std::ostringstream os;
  for (const auto& c : rep.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << format_double(c.value);
    if (c.tol > 0) os << " tol=" << format_double(c.tol);
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << "\n";
  }
  for (const auto& n : rep.notes) os << "note: " << n << "\n";
  return os.str();
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

inline std::string checks_csv(const ModelReport& rep) {
  std::ostringstream os;
  os << "check,passed,value,expected,tol\n";
  for (const auto& c : rep.checks)
    os << csv_field(c.name) << "," << (c.passed ? 1 : 0) << "," << format_double(c.value) << ","
       << format_double(c.expected) << "," << format_double(c.tol) << "\n";
  return os.str();
}

// rows per degree: degree, pi, junk, canonical, module rank, betti (blank past the top)
template <class V>
std::string degree_csv(const V& pi, const V& junk, const V& canon, const V& ranks, const V& betti) {
  std::ostringstream os;
  os << "degree,pi_dim,junk_dim,form_dim,module_rank,betti\n";
  for (std::size_t k = 0; k < canon.size(); ++k) {
    os << k << "," << pi[k] << "," << junk[k] << "," << canon[k] << ",";
    if (k < ranks.size()) os << ranks[k];
    os << ",";
    if (k < betti.size()) os << betti[k];
    os << "\n";
  }
  return os.str();
}

}  // namespace ncg::io
