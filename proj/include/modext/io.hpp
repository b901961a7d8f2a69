#pragma once

// Algebra files: one JSON document bundling an algebra, an optional
// bimodule, and named elements, subspaces and linear maps. Every scalar is
// a string "n" or "p/q" so values stay exact.
//
//   {
//     "format_version": "1",
//     "dim": 2, "basis_names": ["1", "eps"],
//     "mul": [[["1","0"],["0","1"]], [["0","1"],["0","0"]]],       mul[i][j][k]
//     "bimodule": "self"  or  {"dim": n, "basis_names": [...],
//                              "left": l[i][j][k], "right": r[j][i][k]},
//     "elements":  [{"name": "p", "carrier": "A", "coords": [...]}],
//     "subspaces": [{"name": "I", "carrier": "A", "basis": [[...], ...]}],
//     "maps":      [{"name": "D", "source": "T", "target": "T", "matrix": [[...], ...]}]
//   }
//
// Carriers are "A", "U" (the bimodule) and "T" (the module extension A + U).
// Map matrices have target-dim rows and source-dim columns.

#include <algorithm>
#include <modext/algebra.hpp>
#include <modext/matrix.hpp>
#include <modext/rational.hpp>

#include <json.hpp>

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modext::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

/// Malformed input, with a location ("line L, column C" or a JSON pointer).
class InputError : public std::runtime_error {
 public:
  InputError(std::string location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

struct BimoduleSection {
  bool self = false;
  std::vector<std::string> basis_names;
  Tensor3 left;
  Tensor3 right;
};

struct NamedElement {
  std::string name;
  std::string carrier;
  Vector coords;
};

struct NamedSubspace {
  std::string name;
  std::string carrier;
  std::vector<Vector> basis;
};

struct NamedMap {
  std::string name;
  std::string source;
  std::string target;
  Matrix matrix;
};

/// Parsed but not yet validated file contents.
struct AlgebraFile {
  std::string format_version = kFormatVersion;
  std::vector<std::string> basis_names;
  Tensor3 mul;
  std::optional<BimoduleSection> bimodule;
  std::vector<NamedElement> elements;
  std::vector<NamedSubspace> subspaces;
  std::vector<NamedMap> maps;

  std::size_t dim() const noexcept { return mul.dim0(); }
  std::size_t module_dim() const noexcept {
    if (!bimodule) return 0;
    return bimodule->self ? dim() : bimodule->left.dim1();
  }

  /// Dimension of a carrier name; throws InputError for unknown names.
  std::size_t carrier_dim(const std::string& carrier, const std::string& where) const {
    if (carrier == "A") return dim();
    if ((carrier == "U" || carrier == "T") && !bimodule)
      throw InputError(where, "carrier '" + carrier + "' needs a bimodule section");
    if (carrier == "U") return module_dim();
    if (carrier == "T") return dim() + module_dim();
    throw InputError(where, "unknown carrier '" + carrier + "' (expected A, U or T)");
  }

  const NamedMap* find_map(const std::string& name) const {
    for (const auto& m : maps)
      if (m.name == name) return &m;
    return nullptr;
  }
  const NamedElement* find_element(const std::string& name) const {
    for (const auto& e : elements)
      if (e.name == name) return &e;
    return nullptr;
  }
  const NamedSubspace* find_subspace(const std::string& name) const {
    for (const auto& s : subspaces)
      if (s.name == name) return &s;
    return nullptr;
  }
};

namespace detail {

inline const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw InputError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(path, "missing field '" + key + "'");
  return *it;
}

inline std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) throw InputError(path, "expected a string");
  return v.get<std::string>();
}

inline std::size_t count_at(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw InputError(path, "expected a non-negative integer");
  return v.get<std::size_t>();
}

inline Rational rational_at(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) throw InputError(path, "expected a rational string \"n\" or \"p/q\"");
  const std::string s = v.get<std::string>();
  auto q = parse_rational(s);
  if (!q) throw InputError(path, "malformed rational '" + s + "'");
  return *q;
}

inline const json& array_at(const json& v, std::size_t len, const std::string& path) {
  if (!v.is_array()) throw InputError(path, "expected an array");
  if (v.size() != len)
    throw InputError(path, "expected " + std::to_string(len) + " entries, found " + std::to_string(v.size()));
  return v;
}

inline Vector vector_at(const json& v, std::size_t len, const std::string& path) {
  array_at(v, len, path);
  Vector out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(rational_at(v[i], path + "/" + std::to_string(i)));
  return out;
}

inline Tensor3 tensor_at(const json& v, std::size_t d0, std::size_t d1, std::size_t d2, const std::string& path) {
  Tensor3 t(d0, d1, d2);
  array_at(v, d0, path);
  for (std::size_t i = 0; i < d0; ++i) {
    const std::string pi = path + "/" + std::to_string(i);
    array_at(v[i], d1, pi);
    for (std::size_t j = 0; j < d1; ++j) t.set_fibre(i, j, vector_at(v[i][j], d2, pi + "/" + std::to_string(j)));
  }
  return t;
}

inline std::vector<std::string> names_at(const json& obj, std::size_t n, const std::string& path,
                                         const std::string& prefix) {
  auto it = obj.find("basis_names");
  if (it == obj.end()) return default_names(prefix, n);
  array_at(*it, n, path + "/basis_names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(string_at((*it)[i], path + "/basis_names/" + std::to_string(i)));
  return out;
}

inline std::string position(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json vector_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline json tensor_json(const Tensor3& t) {
  json outer = json::array();
  for (std::size_t i = 0; i < t.dim0(); ++i) {
    json mid = json::array();
    for (std::size_t j = 0; j < t.dim1(); ++j) mid.push_back(vector_json(t.fibre(i, j)));
    outer.push_back(std::move(mid));
  }
  return outer;
}

}  // namespace detail

inline json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(detail::vector_json(m.row(r)));
  return rows;
}

inline AlgebraFile parse_algebra_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError(detail::position(text, e.byte > 0 ? e.byte - 1 : 0), "JSON syntax error");
  }
  using detail::field;
  AlgebraFile f;
  if (!doc.is_object()) throw InputError("/", "expected a JSON object");
  if (auto it = doc.find("format_version"); it != doc.end()) {
    f.format_version = it->is_string() ? it->get<std::string>() : it->dump();
    if (f.format_version != kFormatVersion)
      throw InputError("/format_version", "unsupported format version '" + f.format_version + "'");
  }
  const std::size_t m = detail::count_at(field(doc, "dim", "/"), "/dim");
  f.basis_names = detail::names_at(doc, m, "", "e");
  f.mul = detail::tensor_at(field(doc, "mul", "/"), m, m, m, "/mul");

  if (auto it = doc.find("bimodule"); it != doc.end()) {
    BimoduleSection b;
    if (it->is_string()) {
      if (it->get<std::string>() != "self") throw InputError("/bimodule", "expected \"self\" or an object");
      b.self = true;
    } else {
      const std::size_t n = detail::count_at(field(*it, "dim", "/bimodule"), "/bimodule/dim");
      b.basis_names = detail::names_at(*it, n, "/bimodule", "u");
      b.left = detail::tensor_at(field(*it, "left", "/bimodule"), m, n, n, "/bimodule/left");
      b.right = detail::tensor_at(field(*it, "right", "/bimodule"), n, m, n, "/bimodule/right");
    }
    f.bimodule = std::move(b);
  }

  auto list = [&doc](const char* key) -> const json* {
    auto it = doc.find(key);
    if (it == doc.end()) return nullptr;
    if (!it->is_array()) throw InputError(std::string("/") + key, "expected an array");
    return &*it;
  };
  if (const json* els = list("elements"))
    for (std::size_t i = 0; i < els->size(); ++i) {
      const std::string p = "/elements/" + std::to_string(i);
      NamedElement e;
      e.name = detail::string_at(field((*els)[i], "name", p), p + "/name");
      e.carrier = detail::string_at(field((*els)[i], "carrier", p), p + "/carrier");
      e.coords = detail::vector_at(field((*els)[i], "coords", p), f.carrier_dim(e.carrier, p + "/carrier"),
                                   p + "/coords");
      f.elements.push_back(std::move(e));
    }
  if (const json* subs = list("subspaces"))
    for (std::size_t i = 0; i < subs->size(); ++i) {
      const std::string p = "/subspaces/" + std::to_string(i);
      NamedSubspace s;
      s.name = detail::string_at(field((*subs)[i], "name", p), p + "/name");
      s.carrier = detail::string_at(field((*subs)[i], "carrier", p), p + "/carrier");
      const std::size_t d = f.carrier_dim(s.carrier, p + "/carrier");
      const json& basis = field((*subs)[i], "basis", p);
      if (!basis.is_array()) throw InputError(p + "/basis", "expected an array");
      for (std::size_t k = 0; k < basis.size(); ++k)
        s.basis.push_back(detail::vector_at(basis[k], d, p + "/basis/" + std::to_string(k)));
      f.subspaces.push_back(std::move(s));
    }
  if (const json* maps = list("maps"))
    for (std::size_t i = 0; i < maps->size(); ++i) {
      const std::string p = "/maps/" + std::to_string(i);
      const json& entry = (*maps)[i];
      NamedMap nm;
      nm.name = detail::string_at(field(entry, "name", p), p + "/name");
      nm.source = detail::string_at(field(entry, "source", p), p + "/source");
      nm.target = detail::string_at(field(entry, "target", p), p + "/target");
      const std::size_t cols = f.carrier_dim(nm.source, p + "/source");
      const std::size_t rows = f.carrier_dim(nm.target, p + "/target");
      const json& mat = detail::array_at(field(entry, "matrix", p), rows, p + "/matrix");
      std::vector<Vector> r;
      for (std::size_t k = 0; k < rows; ++k) r.push_back(detail::vector_at(mat[k], cols, p + "/matrix/" + std::to_string(k)));
      nm.matrix = Matrix::from_rows(r, cols);
      f.maps.push_back(std::move(nm));
    }
  return f;
}

inline AlgebraFile read_algebra_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra_file(ss.str());
}

/// Canonical JSON form; parse_algebra_file(print(f)) reproduces f.
inline json to_json(const AlgebraFile& f) {
  json doc;
  doc["format_version"] = f.format_version;
  doc["dim"] = f.dim();
  doc["basis_names"] = f.basis_names;
  doc["mul"] = detail::tensor_json(f.mul);
  if (f.bimodule) {
    if (f.bimodule->self) {
      doc["bimodule"] = "self";
    } else {
      json b;
      b["dim"] = f.bimodule->left.dim1();
      b["basis_names"] = f.bimodule->basis_names;
      b["left"] = detail::tensor_json(f.bimodule->left);
      b["right"] = detail::tensor_json(f.bimodule->right);
      doc["bimodule"] = std::move(b);
    }
  }
  if (!f.elements.empty()) {
    json a = json::array();
    for (const auto& e : f.elements)
      a.push_back({{"name", e.name}, {"carrier", e.carrier}, {"coords", detail::vector_json(e.coords)}});
    doc["elements"] = std::move(a);
  }
  if (!f.subspaces.empty()) {
    json a = json::array();
    for (const auto& s : f.subspaces) {
      json basis = json::array();
      for (const auto& v : s.basis) basis.push_back(detail::vector_json(v));
      a.push_back({{"name", s.name}, {"carrier", s.carrier}, {"basis", std::move(basis)}});
    }
    doc["subspaces"] = std::move(a);
  }
  if (!f.maps.empty()) {
    json a = json::array();
    for (const auto& m : f.maps)
      a.push_back({{"name", m.name}, {"source", m.source}, {"target", m.target}, {"matrix", matrix_json(m.matrix)}});
    doc["maps"] = std::move(a);
  }
  return doc;
}

namespace detail {

// Like dump(2), but arrays without nested structure stay on one line.
inline void pretty(const json& v, std::size_t indent, std::string& out) {
  const std::string pad(indent, ' ');
  if (v.is_object() && !v.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : v.items()) {
      out += pad + "  " + json(key).dump() + ": ";
      pretty(value, indent + 2, out);
      out += ++i < v.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (v.is_array() && !v.empty() && std::any_of(v.begin(), v.end(), [](const json& x) { return x.is_structured(); })) {
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      out += pad + "  ";
      pretty(v[i], indent + 2, out);
      out += i + 1 < v.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (v.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].dump();
    out += "]";
  } else {
    out += v.dump();
  }
}

}  // namespace detail

inline std::string pretty_json(const json& v) {
  std::string out;
  detail::pretty(v, 0, out);
  return out + "\n";
}

inline std::string print_algebra_file(const AlgebraFile& f) { return pretty_json(to_json(f)); }

/// File contents for a validated algebra and (optionally) bimodule.
inline AlgebraFile make_file(const Algebra& a, const Bimodule* u = nullptr) {
  AlgebraFile f;
  f.basis_names = a.basis_names();
  f.mul = a.structure();
  if (u) f.bimodule = BimoduleSection{false, u->basis_names(), u->left_tensor(), u->right_tensor()};
  return f;
}

}  // namespace modext::io
