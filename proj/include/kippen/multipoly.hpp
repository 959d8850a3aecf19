#pragma once

// Sparse multivariate polynomials over a coefficient ring, with negative
// exponents allowed for the phase variable w only.

#include <array>
#include <climits>
#include <cstdlib>
#include <type_traits>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kippen/errors.hpp"
#include "kippen/scalar.hpp"
#include "kippen/unipoly.hpp"

namespace kippen {

enum class Var : std::uint8_t { alpha, lambda, omega, p, r, s, t, tau, u, w, x, y, z, count };

inline constexpr std::size_t kNumVars = static_cast<std::size_t>(Var::count);

inline const char* var_name(Var v) {
  static const char* names[] = {"alpha", "lambda", "omega", "p", "r", "s", "t",
                                "tau",   "u",      "w",     "x", "y", "z"};
  return names[static_cast<std::size_t>(v)];
}

inline std::optional<Var> var_from_name(const std::string& name) {
  for (std::size_t i = 0; i < kNumVars; ++i)
    if (name == var_name(static_cast<Var>(i))) return static_cast<Var>(i);
  return std::nullopt;
}

struct Monomial {
  std::array<std::int16_t, kNumVars> e{};

  int operator[](Var v) const { return e[static_cast<std::size_t>(v)]; }
  std::int16_t& operator[](Var v) { return e[static_cast<std::size_t>(v)]; }

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const {
    for (auto x : e)
      if (x) return false;
    return true;
  }
  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kNumVars; ++i) m.e[i] = static_cast<std::int16_t>(a.e[i] + b.e[i]);
    return m;
  }
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kNumVars; ++i) m.e[i] = static_cast<std::int16_t>(a.e[i] - b.e[i]);
    return m;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }

  static Monomial of(Var v, int k = 1) {
    Monomial m;
    m[v] = static_cast<std::int16_t>(k);
    return m;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (!e[i]) continue;
      if (!out.empty()) out += '*';
      out += var_name(static_cast<Var>(i));
      if (e[i] != 1) out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "1" : out;
  }
};

/// Canonical order: total degree ascending, then lexicographic with earlier
/// variables at higher powers first (x^2 before x*y before y^2).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
    return false;
  }
};

template <class K>
class MultiPoly {
 public:
  using Terms = std::map<Monomial, K, MonomialOrder>;

  MultiPoly() = default;
  MultiPoly(K c) {
    if (!kippen::is_zero(c)) t_.emplace(Monomial{}, std::move(c));
  }
  MultiPoly(int c) : MultiPoly(K(c)) {}
  MultiPoly(const Monomial& m, K c) {
    if (!kippen::is_zero(c)) t_.emplace(m, std::move(c));
  }

  static MultiPoly var(Var v, int k = 1) { return MultiPoly(Monomial::of(v, k), K(1)); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
  K constant_term() const { return coeff(Monomial{}); }
  K coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? K(0) : it->second;
  }

  void add_term(const Monomial& m, const K& c) {
    if (kippen::is_zero(c)) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (kippen::is_zero(it->second)) t_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.is_constant()) return b.scaled(a.t_.begin()->second);
    if (b.is_constant()) return a.scaled(b.t_.begin()->second);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly scaled(const K& s) const {
    MultiPoly r;
    if (kippen::is_zero(s)) return r;
    for (const auto& [m, c] : t_) {
      K v = c * s;
      if (!kippen::is_zero(v)) r.t_.emplace_hint(r.t_.end(), m, std::move(v));
    }
    return r;
  }
  /// Multiplies by a monomial (exponents may be negative).
  MultiPoly shifted(const Monomial& s) const {
    MultiPoly r;
    for (const auto& [m, c] : t_) r.t_.emplace(m * s, c);
    return r;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly r(1), b = *this;
    while (k) {
      if (k & 1u) r *= b;
      k >>= 1u;
      if (k) b *= b;
    }
    return r;
  }

  int degree_in(Var v) const {
    int d = INT32_MIN;
    for (const auto& [m, c] : t_) d = std::max(d, m[v]);
    return t_.empty() ? 0 : d;
  }
  int min_degree_in(Var v) const {
    int d = INT32_MAX;
    for (const auto& [m, c] : t_) d = std::min(d, m[v]);
    return t_.empty() ? 0 : d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.degree());
    return d;
  }
  bool depends_on(Var v) const {
    for (const auto& [m, c] : t_)
      if (m[v] != 0) return true;
    return false;
  }

  /// Terms with v^k, with v removed.
  MultiPoly coefficient_of(Var v, int k) const {
    MultiPoly r;
    for (const auto& [m, c] : t_) {
      if (m[v] != k) continue;
      Monomial mm = m;
      mm[v] = 0;
      r.t_.emplace(mm, c);
    }
    return r;
  }

  /// Coefficient-wise conjugation with w -> 1/w.
  MultiPoly conj() const {
    MultiPoly r;
    for (const auto& [m, c] : t_) {
      Monomial mm = m;
      mm[Var::w] = static_cast<std::int16_t>(-mm[Var::w]);
      r.t_.emplace(mm, kippen::conj(c));
    }
    return r;
  }

  /// Replaces v by `value`; negative powers use `inverse_value`.
  MultiPoly substitute(Var v, const MultiPoly& value, const std::optional<MultiPoly>& inverse_value = {}) const {
    std::map<int, MultiPoly> powers;
    MultiPoly r;
    for (const auto& [m, c] : t_) {
      int k = m[v];
      Monomial rest = m;
      rest[v] = 0;
      MultiPoly term(rest, c);
      if (k != 0) {
        auto it = powers.find(k);
        if (it == powers.end()) {
          MultiPoly pk;
          if (k > 0) {
            pk = value.pow(static_cast<unsigned>(k));
          } else {
            if (!inverse_value) throw Error("negative power substituted without inverse");
            pk = inverse_value->pow(static_cast<unsigned>(-k));
          }
          it = powers.emplace(k, std::move(pk)).first;
        }
        term = term * it->second;
      }
      r += term;
    }
    return r;
  }

  /// Rewrites v^2 -> value repeatedly, leaving v-degree <= 1.
  MultiPoly reduce_square(Var v, const MultiPoly& value) const {
    MultiPoly r;
    std::map<int, MultiPoly> powers;
    for (const auto& [m, c] : t_) {
      int k = m[v];
      if (k < 0) throw Error("reduce_square on negative exponent");
      Monomial rest = m;
      rest[v] = static_cast<std::int16_t>(k % 2);
      MultiPoly term(rest, c);
      if (k >= 2) {
        auto it = powers.find(k / 2);
        if (it == powers.end()) it = powers.emplace(k / 2, value.pow(static_cast<unsigned>(k / 2))).first;
        term = term * it->second;
      }
      r += term;
    }
    return r;
  }

  /// Reduces the polynomial in v modulo a univariate modulus with constant
  /// coefficients.
  MultiPoly reduce_mod(Var v, const UniPoly<K>& modulus) const {
    std::map<Monomial, UniPoly<K>, MonomialOrder> groups;
    for (const auto& [m, c] : t_) {
      Monomial rest = m;
      rest[v] = 0;
      groups[rest] += UniPoly<K>::monomial(c, m[v]);
    }
    MultiPoly r;
    for (auto& [rest, up] : groups) {
      UniPoly<K> red = up % modulus;
      for (int k = 0; k <= red.degree(); ++k) {
        Monomial mm = rest;
        mm[v] = static_cast<std::int16_t>(k);
        r.add_term(mm, red.coeff(k));
      }
    }
    return r;
  }

  template <class F>
  auto map_coeffs(F f) const -> MultiPoly<decltype(f(std::declval<K>()))> {
    MultiPoly<decltype(f(std::declval<K>()))> r;
    for (const auto& [m, c] : t_) r.add_term(m, f(c));
    return r;
  }

  /// Evaluation with values for every variable present.
  template <class V>
  V evaluate(const std::map<Var, V>& values) const {
    V acc(0);
    for (const auto& [m, c] : t_) {
      V term = to_value<V>(c);
      for (std::size_t i = 0; i < kNumVars; ++i) {
        int k = m.e[i];
        if (!k) continue;
        auto it = values.find(static_cast<Var>(i));
        if (it == values.end()) throw Error(std::string("no value for variable ") + var_name(static_cast<Var>(i)));
        V base = k > 0 ? it->second : V(1) / it->second;
        for (int j = 0; j < std::abs(k); ++j) term = term * base;
      }
      acc = acc + term;
    }
    return acc;
  }

  /// Univariate view in v; requires v to be the only variable.
  UniPoly<K> to_unipoly(Var v) const {
    std::vector<K> cs;
    for (const auto& [m, c] : t_) {
      for (std::size_t i = 0; i < kNumVars; ++i)
        if (m.e[i] && static_cast<Var>(i) != v) throw Error("to_unipoly: extra variable");
      if (m[v] < 0) throw Error("to_unipoly: negative exponent");
      if (cs.size() <= static_cast<std::size_t>(m[v])) cs.resize(m[v] + 1, K(0));
      cs[m[v]] = c;
    }
    return UniPoly<K>(std::move(cs));
  }
  static MultiPoly from_unipoly(const UniPoly<K>& p, Var v) {
    MultiPoly r;
    for (int k = 0; k <= p.degree(); ++k) r.add_term(Monomial::of(v, k), p.coeff(k));
    return r;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : t_) detail::append_term(out, c, m.is_one() ? "" : m.to_string());
    return out;
  }

 private:
  template <class V>
  static V to_value(const K& c) {
    if constexpr (std::is_constructible_v<V, K>) {
      return V(c);
    } else if constexpr (std::is_same_v<V, std::complex<double>>) {
      return to_complex(c);
    } else {
      return V(to_float(c, 128));
    }
  }
  Terms t_;
};

template <class K>
bool is_zero(const MultiPoly<K>& p) {
  return p.is_zero();
}
template <class K>
MultiPoly<K> conj(const MultiPoly<K>& p) {
  return p.conj();
}
template <class K>
std::string to_string(const MultiPoly<K>& p) {
  return p.to_string();
}
template <class K>
std::ostream& operator<<(std::ostream& os, const MultiPoly<K>& p) {
  return os << p.to_string();
}

/// Monomial with only w, at the given exponent.
inline Monomial w_power(int k) { return Monomial::of(Var::w, k); }

/// Exact quotient A/B in the (Laurent in w) polynomial ring.
template <class K>
MultiPoly<K> poly_div_exact(const MultiPoly<K>& A, const MultiPoly<K>& B) {
  if (B.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (A.is_zero()) return A;
  int sa = A.min_degree_in(Var::w), sb = B.min_degree_in(Var::w);
  MultiPoly<K> a = A.shifted(w_power(-sa));
  MultiPoly<K> b = B.shifted(w_power(-sb));
  if (b.size() == 1) {
    const auto& [mb, cb] = *b.terms().begin();
    K inv = K(1) / cb;
    MultiPoly<K> q;
    for (const auto& [m, c] : a.terms()) {
      if (!mb.divides(m)) throw NonExactDivision("remainder after division by " + b.to_string());
      q.add_term(m / mb, c * inv);
    }
    return q.shifted(w_power(sa - sb));
  }
  const auto& [lmb, lcb] = *b.terms().rbegin();
  K inv = K(1) / lcb;
  MultiPoly<K> q;
  while (!a.is_zero()) {
    const auto& [lma, lca] = *a.terms().rbegin();
    if (!lmb.divides(lma)) throw NonExactDivision("remainder after division by " + b.to_string());
    Monomial qm = lma / lmb;
    K qc = lca * inv;
    q.add_term(qm, qc);
    MultiPoly<K> sub = b.shifted(qm).scaled(qc);
    a -= sub;
  }
  return q.shifted(w_power(sa - sb));
}

/// Result of a radiality test: on failure, one offending term.
template <class K>
struct RadialResult {
  bool radial = true;
  std::optional<std::pair<Monomial, K>> witness;
  explicit operator bool() const { return radial; }
};

/// True iff every term has equal exponents in a and b.
template <class K>
RadialResult<K> is_radial(const MultiPoly<K>& P, Var a = Var::x, Var b = Var::y) {
  for (const auto& [m, c] : P.terms())
    if (m[a] != m[b]) return {false, std::make_pair(m, c)};
  return {};
}

/// True iff no term depends on v.
template <class K>
RadialResult<K> is_free_of(const MultiPoly<K>& P, Var v) {
  for (const auto& [m, c] : P.terms())
    if (m[v] != 0) return {false, std::make_pair(m, c)};
  return {};
}

/// Chebyshev polynomial of the second kind U_k in u.
template <class K>
MultiPoly<K> chebyshev_U(int k, Var u = Var::u) {
  if (k < -1) throw Error("chebyshev_U requires k >= -1");
  if (k == -1) return {};
  MultiPoly<K> prev, cur(1);
  MultiPoly<K> two_u = MultiPoly<K>::var(u).scaled(K(2));
  for (int i = 0; i < k; ++i) {
    MultiPoly<K> next = two_u * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace kippen
