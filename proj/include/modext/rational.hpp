#pragma once

// Exact rational scalars and coordinate vectors.
//
// Rational is GMP's mpq_class: arbitrary precision, always canonical
// (lowest terms, positive denominator).

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modext {

using Rational = mpq_class;
using Integer = mpz_class;
using Vector = std::vector<Rational>;

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "n" or "p/q" (optional leading '-', decimal digits only).
/// Returns nullopt on malformed text or a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                         : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) return std::nullopt;
  Integer d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  Integer n(std::string(num), 10);
  if (text.front() == '-') n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline Vector zero_vector(std::size_t n) { return Vector(n, Rational(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline void require_same_length(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
}

inline Vector operator+(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vector operator-(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vector operator*(const Rational& s, const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

/// y += s * x
inline void axpy(Vector& y, const Rational& s, const Vector& x) {
  require_same_length(y, x);
  if (sgn(s) == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += s * x[i];
}

inline Rational dot(const Vector& a, const Vector& b) {
  require_same_length(a, b);
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Coordinate l1 norm.
inline Rational l1_norm(const Vector& v) {
  Rational s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

inline std::string to_string(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

}  // namespace modext
