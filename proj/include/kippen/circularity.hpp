#pragma once

// Exact decision procedures on a contraction: Circularity through P_C,
// the associated isometry through Q_C, the defect pencil, word-trace sums
// and the unbalanced trace scan.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kippen/matrix.hpp"
#include "kippen/multipoly.hpp"
#include "kippen/polymat.hpp"

namespace kippen {

enum class Tri { no, yes, unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::no: return "false";
    case Tri::yes: return "true";
    default: return "unknown";
  }
}

template <class K>
Matrix<K> defect_operator(const Matrix<K>& C) {
  return Matrix<K>::identity(C.rows()) - C.adjoint() * C;
}

/// Exact PSD test for a Hermitian matrix: every coefficient of det(tI + M)
/// is nonnegative. Unknown if some coefficient has no decidable sign.
template <class K>
Tri is_psd_exact(const Matrix<K>& M) {
  UniPoly<K> cp = charpoly(Matrix<K>(-M));
  for (const auto& c : cp.coeffs()) {
    auto s = real_sign(c);
    if (!s) return Tri::unknown;
    if (*s < 0) return Tri::no;
  }
  return Tri::yes;
}

/// Complex dimension of {X : XC = CX, XC* = C*X}.
template <class K>
std::size_t commutant_dimension(const Matrix<K>& C) {
  std::size_t n = C.rows();
  Matrix<K> Cs = C.adjoint();
  Matrix<K> sys(2 * n * n, n * n);
  auto var = [n](std::size_t i, std::size_t j) { return i * n + j; };
  std::size_t row = 0;
  for (const Matrix<K>* M : std::array<const Matrix<K>*, 2>{&C, &Cs}) {
    // (XM - MX)_{ij} = sum_k X_ik M_kj - M_ik X_kj
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j, ++row)
        for (std::size_t k = 0; k < n; ++k) {
          sys(row, var(i, k)) += (*M)(k, j);
          sys(row, var(k, j)) -= (*M)(i, k);
        }
  }
  return n * n - rank(sys);
}

template <class K>
Tri is_unitarily_irreducible(const Matrix<K>& C) {
  if (C.rows() == 0) return Tri::unknown;
  return commutant_dimension(C) == 1 ? Tri::yes : Tri::no;
}

template <class K>
struct Contraction {
  Matrix<K> C;
  Matrix<K> D;
  std::size_t n = 0;
  std::size_t defect_rank = 0;
  Tri is_contraction = Tri::unknown;
  Tri is_nilpotent = Tri::unknown;
  Tri is_unitarily_irreducible = Tri::unknown;

  bool cache_valid() const { return D == defect_operator(C); }
};

/// Computes D, its rank, the exact contraction test and nilpotency; the
/// commutant solve is optional.
template <class K>
Contraction<K> make_contraction(const Matrix<K>& C, bool check_irreducible = false) {
  if (!C.square()) throw Error("contraction must be square");
  Contraction<K> c;
  c.C = C;
  c.n = C.rows();
  c.D = defect_operator(C);
  c.defect_rank = rank(c.D);
  c.is_contraction = is_psd_exact(c.D);
  c.is_nilpotent = C.pow(static_cast<unsigned>(c.n)).is_zero() ? Tri::yes : Tri::no;
  if (check_irreducible) c.is_unitarily_irreducible = kippen::is_unitarily_irreducible(C);
  return c;
}

template <class K>
void require_contraction(const Contraction<K>& c) {
  if (c.is_contraction == Tri::no) throw NotAContraction("I - C*C is not positive semidefinite");
}

// ---------------------------------------------------------------------------
// Bridge polynomials. The PolyMatrix forms accept entries with formal
// parameters (real variables such as p).

template <class K>
PolyMatrix<K> defect_operator(const PolyMatrix<K>& C) {
  return PolyMatrix<K>::identity(C.rows()) - C.adjoint() * C;
}

namespace detail {

template <class K>
PolyMatrix<K> linear_pencil(const PolyMatrix<K>& C, const MultiPoly<K>& id, const MultiPoly<K>& a,
                            const MultiPoly<K>& b, const MultiPoly<K>& d_coef) {
  std::size_t n = C.rows();
  PolyMatrix<K> Cs = C.adjoint();
  PolyMatrix<K> D = d_coef.is_zero() ? PolyMatrix<K>(n, n) : defect_operator(C);
  PolyMatrix<K> M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      MultiPoly<K> e = a * C(i, j) + b * Cs(i, j);
      if (!d_coef.is_zero()) e += d_coef * D(i, j);
      if (i == j) e += id;
      M(i, j) = std::move(e);
    }
  return M;
}

template <class K>
MultiPoly<K> v(Var x) {
  return MultiPoly<K>::var(x);
}

}  // namespace detail

/// P_C(x, y) = det(I - xC - yC*).
template <class K>
MultiPoly<K> p_poly(const PolyMatrix<K>& C) {
  using P = MultiPoly<K>;
  return det(detail::linear_pencil(C, P(1), -detail::v<K>(Var::x), -detail::v<K>(Var::y), P()));
}

/// Q_C(x, y) = det(I - xC - yC* - xyD).
template <class K>
MultiPoly<K> q_poly(const PolyMatrix<K>& C) {
  using P = MultiPoly<K>;
  P x = detail::v<K>(Var::x), y = detail::v<K>(Var::y);
  return det(detail::linear_pencil(C, P(1), -x, -y, -(x * y)));
}

/// det(alpha I + xC + yC* + tD).
template <class K>
MultiPoly<K> defect_pencil_poly(const PolyMatrix<K>& C) {
  return det(detail::linear_pencil(C, detail::v<K>(Var::alpha), detail::v<K>(Var::x), detail::v<K>(Var::y),
                                   detail::v<K>(Var::t)));
}

template <class K>
MultiPoly<K> p_poly(const Contraction<K>& c) {
  return p_poly(lift(c.C));
}
template <class K>
MultiPoly<K> q_poly(const Contraction<K>& c) {
  return q_poly(lift(c.C));
}
template <class K>
MultiPoly<K> defect_pencil_poly(const Contraction<K>& c) {
  return defect_pencil_poly(lift(c.C));
}

// ---------------------------------------------------------------------------
// Word-trace sums.

/// Traces of the sums of all words with a letters C, l letters C* and m
/// letters D, for a + l + m <= kmax. Keyed by {a, l, m}.
template <class K>
class WordSums {
 public:
  WordSums(const Matrix<K>& C, const Matrix<K>& D, int kmax) : kmax_(kmax) {
    Matrix<K> Cs = C.adjoint();
    std::size_t n = C.rows();
    std::map<std::array<int, 3>, Matrix<K>> S;
    S[{0, 0, 0}] = Matrix<K>::identity(n);
    tr_[{0, 0, 0}] = K(static_cast<int>(n));
    for (int k = 1; k <= kmax; ++k)
      for (int a = 0; a <= k; ++a)
        for (int l = 0; a + l <= k; ++l) {
          int m = k - a - l;
          Matrix<K> acc(n, n);
          if (a) acc += C * S.at({a - 1, l, m});
          if (l) acc += Cs * S.at({a, l - 1, m});
          if (m) acc += D * S.at({a, l, m - 1});
          tr_[{a, l, m}] = acc.trace();
          S[{a, l, m}] = std::move(acc);
        }
  }
  int kmax() const { return kmax_; }
  /// Omega_{k,m,l}: m letters D, l letters C*, k - m - l letters C.
  K omega(int k, int m, int l) const {
    if (k > kmax_ || m < 0 || l < 0 || m + l > k) throw Error("omega index out of range");
    return tr_.at({k - m - l, l, m});
  }

 private:
  int kmax_;
  std::map<std::array<int, 3>, K> tr_;
};

template <class K>
K omega_sum(const Contraction<K>& c, int k, int m, int l) {
  if (k < 1 || m < 0 || m > k || l < 0 || l > k - m) throw Error("omega_sum requires 1 <= k, 0 <= m <= k, 0 <= l <= k - m");
  return WordSums<K>(c.C, c.D, k).omega(k, m, l);
}

struct OmegaIndex {
  int k, m, l;
};

/// First nonzero Omega_{k,m,l} with 2l != k - m and k <= kmax, if any.
template <class K>
std::optional<std::pair<OmegaIndex, K>> omega_violation(const Contraction<K>& c, int kmax) {
  WordSums<K> ws(c.C, c.D, kmax);
  for (int k = 1; k <= kmax; ++k)
    for (int m = 0; m <= k; ++m)
      for (int l = 0; l <= k - m; ++l) {
        if (2 * l == k - m) continue;
        K v = ws.omega(k, m, l);
        if (!is_zero(v)) return std::make_pair(OmegaIndex{k, m, l}, v);
      }
  return std::nullopt;
}

/// Aggregated sums over words in C, C* with k letters, l of them C*, for
/// 1 <= k <= n and l < k/2.
template <class K>
struct AggregateEntry {
  int k, l;
  K sum;
};

template <class K>
std::vector<AggregateEntry<K>> circularity_aggregate_scan(const Contraction<K>& c) {
  int n = static_cast<int>(c.n);
  WordSums<K> ws(c.C, c.D, n);
  std::vector<AggregateEntry<K>> out;
  for (int k = 1; k <= n; ++k)
    for (int l = 0; 2 * l < k; ++l) out.push_back({k, l, ws.omega(k, 0, l)});
  return out;
}

template <class K>
bool aggregate_all_zero(const std::vector<AggregateEntry<K>>& v) {
  for (const auto& e : v)
    if (!is_zero(e.sum)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Unbalanced trace scan.

namespace detail {

/// Echelon basis of a subspace of K^N, rows normalized at their pivot.
template <class K>
class SpanBasis {
 public:
  bool insert(std::vector<K> v) {
    for (const auto& [p, row] : rows_) {
      if (is_zero(v[p])) continue;
      K f = v[p];
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!is_zero(row[j])) v[j] -= f * row[j];
    }
    std::size_t p = 0;
    while (p < v.size() && is_zero(v[p])) ++p;
    if (p == v.size()) return false;
    K inv = K(1) / v[p];
    for (auto& x : v) x *= inv;
    rows_.emplace_back(p, std::move(v));
    return true;
  }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<std::pair<std::size_t, std::vector<K>>>& rows() const { return rows_; }

 private:
  std::vector<std::pair<std::size_t, std::vector<K>>> rows_;
};

template <class K>
std::vector<K> flatten(const Matrix<K>& m) {
  std::vector<K> v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

template <class K>
Matrix<K> unflatten(const std::vector<K>& v, std::size_t n) {
  Matrix<K> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i * n + j];
  return m;
}

}  // namespace detail

/// A word in {C, C*}; bit set means C*.
struct Word {
  std::vector<bool> starred;
  int imbalance() const {
    int d = 0;
    for (bool s : starred) d += s ? -1 : 1;
    return d;
  }
  std::string to_string() const {
    std::string out;
    for (bool s : starred) {
      if (!out.empty()) out += ' ';
      out += s ? "C*" : "C";
    }
    return out;
  }
};

template <class K>
struct WordWitness {
  Word word;
  K trace;
};

template <class K>
struct TraceScanResult {
  bool violation = false;
  int max_len = 0;
  int length = 0;  ///< violation length, or last length examined
  bool exhausted = false;  ///< all words of some length vanish, so none longer can violate
  std::vector<WordWitness<K>> witnesses;  ///< one per cyclic class at `length`
};

/// Finds the shortest length L <= max_len at which some word in C, C* with
/// unequal letter counts has nonzero trace. Spans of words of fixed length
/// and imbalance are propagated exactly; at the first violating length every
/// cyclic class of words (lex-least rotation, C before C*) is tested.
template <class K>
TraceScanResult<K> unbalanced_trace_scan(const Contraction<K>& c, int max_len, std::size_t max_witnesses = 64) {
  if (max_len < 1) throw Error("max_len must be >= 1");
  TraceScanResult<K> res;
  res.max_len = max_len;
  std::size_t n = c.n;
  Matrix<K> Cs = c.C.adjoint();
  using Basis = detail::SpanBasis<K>;
  std::map<int, Basis> level;
  level[0].insert(detail::flatten(Matrix<K>::identity(n)));
  int found = 0;
  for (int L = 1; L <= max_len; ++L) {
    std::map<int, Basis> next;
    for (const auto& [delta, basis] : level)
      for (const auto& [p, v] : basis.rows()) {
        Matrix<K> M = detail::unflatten(v, n);
        next[delta + 1].insert(detail::flatten(Matrix<K>(c.C * M)));
        next[delta - 1].insert(detail::flatten(Matrix<K>(Cs * M)));
      }
    for (auto it = next.begin(); it != next.end();) {
      if (it->second.dim() == 0) it = next.erase(it);
      else ++it;
    }
    level = std::move(next);
    res.length = L;
    if (level.empty()) {
      res.exhausted = true;
      break;
    }
    for (const auto& [delta, basis] : level) {
      if (delta == 0) continue;
      for (const auto& [p, v] : basis.rows()) {
        K t(0);
        for (std::size_t i = 0; i < n; ++i) t += v[i * n + i];
        if (!is_zero(t)) found = L;
      }
    }
    if (found) break;
  }
  if (!found) return res;
  res.violation = true;
  // enumerate cyclic classes at the violating length
  int L = found;
  std::vector<Matrix<K>> prefix(static_cast<std::size_t>(L) + 1);
  prefix[0] = Matrix<K>::identity(n);
  std::vector<bool> bits(static_cast<std::size_t>(L), false);
  auto canonical = [&]() {
    for (int r = 1; r < L; ++r)
      for (int i = 0; i < L; ++i) {
        bool a = bits[i], b = bits[(i + r) % L];
        if (a != b) {
          if (b < a) return false;
          break;
        }
      }
    return true;
  };
  std::function<void(int)> dfs = [&](int depth) {
    if (res.witnesses.size() >= max_witnesses) return;
    if (depth == L) {
      Word w{bits};
      if (w.imbalance() == 0 || !canonical()) return;
      K t = prefix[L].trace();
      if (!is_zero(t)) res.witnesses.push_back({w, t});
      return;
    }
    for (bool s : {false, true}) {
      bits[depth] = s;
      prefix[depth + 1] = prefix[depth] * (s ? Cs : c.C);
      dfs(depth + 1);
    }
  };
  dfs(0);
  return res;
}

template <class K>
K word_trace(const Matrix<K>& C, const Word& w) {
  Matrix<K> Cs = C.adjoint();
  Matrix<K> M = Matrix<K>::identity(C.rows());
  for (bool s : w.starred) M = M * (s ? Cs : C);
  return M.trace();
}

/// Parses "C C C* C" style words.
inline Word parse_word(const std::string& text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != 'C') throw ParseError("expected C or C*", i);
    ++i;
    bool star = i < text.size() && text[i] == '*';
    if (star) ++i;
    w.starred.push_back(star);
  }
  return w;
}

// ---------------------------------------------------------------------------
// Report.

template <class K>
struct CircularityReport {
  bool has_circularity = false;
  bool has_defect_pencil_circularity = false;
  std::optional<std::pair<Monomial, K>> circularity_witness;
  std::optional<std::pair<Monomial, K>> defect_pencil_witness;
  std::string circularity_method = "radiality of det(I - xC - yC*) in (x, y)";
  std::string defect_pencil_method = "radiality of det(alpha I + xC + yC* + tD) in (x, y)";
};

template <class K>
CircularityReport<K> circularity_report(const Contraction<K>& c) {
  CircularityReport<K> r;
  auto p = is_radial(p_poly(c));
  r.has_circularity = p.radial;
  r.circularity_witness = p.witness;
  auto d = is_radial(defect_pencil_poly(c));
  r.has_defect_pencil_circularity = d.radial;
  r.defect_pencil_witness = d.witness;
  return r;
}

}  // namespace kippen
