#pragma once

// Command reports: an ordered JSON tree, printed either as JSON or as an
// indented plain-text rendering of the same tree.

#include <modext/conditions.hpp>
#include <modext/io.hpp>
#include <modext/linalg.hpp>
#include <modext/matrix.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace modext::report {

using json = io::json;

/// "2*E11 - E22", "eps", "0".
inline std::string combination(const std::vector<std::string>& names, const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    const Rational mag = abs(v[i]);
    if (sgn(v[i]) < 0) s += s.empty() ? "-" : " - ";
    else if (!s.empty()) s += " + ";
    if (mag != 1) s += mag.get_str() + "*";
    s += i < names.size() ? names[i] : "#" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

/// "span{eps}", "span{E11 + E22}", "0".
inline std::string span(const std::vector<std::string>& names, const Subspace& s) {
  if (s.is_zero()) return "0";
  std::string out = "span{";
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i) out += ", ";
    out += combination(names, s.basis().row(i));
  }
  return out + "}";
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

inline json witness_json(const Witness& w) {
  json idx = json::array();
  for (auto i : w.indices) idx.push_back(i);
  return json{{"indices", idx}, {"lhs", to_string(w.lhs)}, {"rhs", to_string(w.rhs)}};
}

inline json check_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["statement"] = c.statement;
  j["result"] = c.passed() ? "pass" : "fail";
  j["holds"] = std::to_string(c.total - c.failed) + "/" + std::to_string(c.total);
  if (c.informational) j["informational"] = "yes";
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.witnesses.empty()) {
    json ws = json::array();
    for (const auto& w : c.witnesses) ws.push_back(witness_json(w));
    j["witnesses"] = std::move(ws);
  }
  return j;
}

inline json conditions_json(const ConditionReport& r) {
  json a = json::array();
  for (const auto& c : r.checks) a.push_back(check_json(c));
  return a;
}

/// FNV-1a 64-bit digest, hex.
inline std::string digest(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

namespace detail {

inline std::string scalar(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

inline bool is_scalar_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& x : v)
    if (x.is_structured()) return false;
  return true;
}

inline bool is_matrix(const json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& x : v)
    if (!is_scalar_array(x)) return false;
  return true;
}

inline std::string inline_array(const json& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += scalar(v[i]);
  }
  return s + "]";
}

inline void render(const json& node, std::size_t indent, std::string& out);

inline void render_value(const std::string& key, const json& v, std::size_t indent, std::string& out) {
  const std::string pad(indent, ' ');
  if (!v.is_structured()) {
    out += pad + key + ": " + scalar(v) + "\n";
  } else if (v.is_object()) {
    out += pad + key + ":\n";
    render(v, indent + 2, out);
  } else if (v.empty() || is_scalar_array(v)) {
    out += pad + key + ": " + inline_array(v) + "\n";
  } else if (is_matrix(v)) {
    out += pad + key + ":\n";
    for (const auto& row : v) out += pad + "  " + inline_array(row) + "\n";
  } else {
    out += pad + key + ":\n";
    for (const auto& item : v) {
      if (item.is_object()) {
        out += pad + "  -\n";
        render(item, indent + 4, out);
      } else if (is_matrix(item)) {
        for (std::size_t r = 0; r < item.size(); ++r)
          out += pad + (r == 0 ? "  - " : "    ") + inline_array(item[r]) + "\n";
      } else if (item.is_array() && item.empty()) {
        out += pad + "  - []\n";
      } else {
        out += pad + "  - " + (item.is_array() ? inline_array(item) : scalar(item)) + "\n";
      }
    }
  }
}

inline void render(const json& node, std::size_t indent, std::string& out) {
  for (const auto& [key, value] : node.items()) render_value(key, value, indent, out);
}

}  // namespace detail

inline std::string to_text(const json& tree) {
  std::string out;
  detail::render(tree, 0, out);
  return out;
}

inline std::string to_json_text(const json& tree) { return io::pretty_json(tree); }

}  // namespace modext::report
