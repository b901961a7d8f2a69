#pragma once

// Univariate polynomials over Q and their factorization into irreducibles.
//
// Factorization: square-free decomposition (Yun), then for each square-free
// part, rational roots first and Kronecker's interpolation search for the
// remaining factors of degree >= 2. Exponential in the worst case, but exact
// and fast for the small degrees that arise from central elements of
// low-dimensional algebras.

#include <modext/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace modext {

class Polynomial {
 public:
  Polynomial() = default;
  /// Coefficients lowest degree first; trailing zeros are dropped.
  explicit Polynomial(Vector coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const Rational& c) { return Polynomial(Vector{c}); }
  static Polynomial monomial(const Rational& c, std::size_t degree) {
    Vector v = zero_vector(degree + 1);
    v[degree] = c;
    return Polynomial(std::move(v));
  }
  /// t - r
  static Polynomial linear_root(const Rational& r) { return Polynomial(Vector{Rational(-r), Rational(1)}); }

  bool is_zero() const noexcept { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const Vector& coefficients() const noexcept { return c_; }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return Rational(1 / leading()) * *this;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    Vector d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Vector v = zero_vector(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Rational(-1) * b; }
  friend Polynomial operator*(const Rational& s, const Polynomial& a) { return Polynomial(s * a.c_); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Vector v = zero_vector(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Quotient and remainder by a non-zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    Vector r = c_;
    if (degree() < d.degree()) return {Polynomial(), *this};
    Vector q = zero_vector(static_cast<std::size_t>(degree() - d.degree()) + 1);
    const Rational inv = 1 / d.leading();
    const std::size_t dd = static_cast<std::size_t>(d.degree());
    for (std::size_t k = q.size(); k-- > 0;) {
      const Rational f = r[k + dd] * inv;
      q[k] = f;
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) r[k + j] -= f * d.c_[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Rational& c = c_[k];
      if (sgn(c) == 0) continue;
      const bool first = s.empty();
      const Rational mag = abs(c);
      if (sgn(c) < 0) s += first ? "-" : " - ";
      else if (!first) s += " + ";
      const bool unit_coeff = mag == 1 && k > 0;
      if (!unit_coeff) s += mag.get_str();
      if (k > 0) {
        if (!unit_coeff) s += "*";
        s += var;
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  Vector c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// f = unit * prod factor^multiplicity, factors monic and irreducible over Q,
/// ordered by (degree, coefficients).
struct Factorization {
  Rational unit = 0;
  std::vector<std::pair<Polynomial, unsigned>> factors;

  bool irreducible() const noexcept { return factors.size() == 1 && factors.front().second == 1; }

  std::string to_string(const std::string& var = "t") const {
    std::string s = unit == 1 && !factors.empty() ? "" : unit.get_str();
    for (const auto& [p, e] : factors) {
      if (!s.empty()) s += " * ";
      s += "(" + p.to_string(var) + ")";
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }
};

namespace detail {

inline std::vector<Integer> to_primitive_integer(const Polynomial& f) {
  Integer lcm = 1;
  for (const auto& c : f.coefficients()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer content = 0;
  for (const auto& c : f.coefficients()) {
    Integer v = c.get_num() * (lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    out.push_back(v);
  }
  if (content != 0)
    for (auto& v : out) v /= content;
  if (!out.empty() && out.back() < 0)
    for (auto& v : out) v = -v;
  return out;
}

inline Polynomial from_integers(const std::vector<Integer>& v) {
  Vector c;
  for (const auto& x : v) c.emplace_back(x);
  return Polynomial(std::move(c));
}

/// Positive divisors of |n| (n != 0), ascending.
inline std::vector<Integer> divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Lagrange interpolation through (xs[i], ys[i]).
inline Polynomial interpolate(const std::vector<Integer>& xs, const std::vector<Integer>& ys) {
  Polynomial out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial term = Polynomial::constant(Rational(ys[i]));
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      const Rational scale = Rational(1) / Rational(Integer(xs[i] - xs[j]));
      term = scale * (term * Polynomial::linear_root(Rational(xs[j])));
    }
    out = out + term;
  }
  return out;
}

inline bool has_integer_coefficients(const Polynomial& p) {
  for (const auto& c : p.coefficients())
    if (c.get_den() != 1) return false;
  return true;
}

/// A monic factor of degree `d` of the square-free primitive f, or the zero polynomial.
inline Polynomial kronecker_factor(const Polynomial& f, std::size_t d) {
  // Evaluation points with the fewest divisors keep the search small.
  std::vector<std::pair<std::size_t, Integer>> candidates;
  for (long x = -24; x <= 24; ++x) {
    const Rational v = f(Rational(x));
    if (sgn(v) == 0) continue;
    candidates.emplace_back(divisors(v.get_num()).size(), Integer(x));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  if (candidates.size() < d + 1) return {};
  std::vector<Integer> xs;
  std::vector<std::vector<Integer>> choices;
  for (std::size_t i = 0; i <= d; ++i) {
    xs.push_back(candidates[i].second);
    std::vector<Integer> signed_divs;
    for (const auto& q : divisors(f(Rational(xs.back())).get_num())) {
      signed_divs.push_back(q);
      if (i > 0) signed_divs.push_back(-q);  // overall sign fixed by the first point
    }
    choices.push_back(std::move(signed_divs));
  }
  std::vector<Integer> ys(d + 1);
  Polynomial found;
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == xs.size()) {
      const Polynomial g = interpolate(xs, ys);
      if (g.degree() != static_cast<long>(d) || !has_integer_coefficients(g)) return false;
      if (!f.divmod(g).second.is_zero()) return false;
      found = g.monic();
      return true;
    }
    for (const auto& y : choices[i]) {
      ys[i] = y;
      if (search(i + 1)) return true;
    }
    return false;
  };
  search(0);
  return found;
}

/// Monic irreducible factors of a monic square-free polynomial.
inline std::vector<Polynomial> factor_squarefree(const Polynomial& f) {
  std::vector<Polynomial> out;
  Polynomial rest = f;
  // rational roots p/q: p divides the constant term, q the leading term
  {
    const std::vector<Integer> z = to_primitive_integer(rest);
    if (sgn(z.front()) == 0) {
      out.push_back(Polynomial::linear_root(0));
      rest = rest.divmod(out.back()).first;
    }
  }
  while (rest.degree() >= 1) {
    const std::vector<Integer> z = to_primitive_integer(rest);
    bool found = false;
    for (const auto& p : divisors(z.front())) {
      for (const auto& q : divisors(z.back())) {
        for (int sign : {1, -1}) {
          const Rational r(Integer(sign * p), q);
          if (sgn(rest(r)) != 0) continue;
          out.push_back(Polynomial::linear_root(r));
          rest = rest.divmod(out.back()).first;
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  // remaining part has no linear factors
  std::vector<Polynomial> stack{rest};
  while (!stack.empty()) {
    Polynomial g = stack.back();
    stack.pop_back();
    if (g.degree() < 1) continue;
    bool split = false;
    for (std::size_t d = 2; 2 * d <= static_cast<std::size_t>(g.degree()); ++d) {
      const Polynomial h = kronecker_factor(from_integers(to_primitive_integer(g)), d);
      if (h.is_zero()) continue;
      stack.push_back(h);
      stack.push_back(g.divmod(h).first.monic());
      split = true;
      break;
    }
    if (!split) out.push_back(g.monic());
  }
  return out;
}

}  // namespace detail

inline Factorization factor(const Polynomial& f) {
  Factorization out;
  out.unit = f.leading();
  if (f.degree() < 1) return out;
  // Yun's square-free decomposition of the monic part
  Polynomial a = f.monic();
  Polynomial b = gcd(a, a.derivative());
  Polynomial c = a.divmod(b).first;
  Polynomial d = a.derivative().divmod(b).first - c.derivative();
  unsigned mult = 1;
  while (c.degree() >= 1) {
    const Polynomial y = gcd(c, d);
    for (const auto& irr : detail::factor_squarefree(y)) out.factors.emplace_back(irr, mult);
    c = c.divmod(y).first;
    d = d.divmod(y).first - c.derivative();
    ++mult;
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    const Vector& u = x.first.coefficients();
    const Vector& v = y.first.coefficients();
    if (u != v) return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
    return x.second < y.second;
  });
  return out;
}

}  // namespace modext
