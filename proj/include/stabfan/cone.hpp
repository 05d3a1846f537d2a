#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "rat.hpp"

namespace stabfan {

namespace detail {

inline bool ratvec_lex_less(const RatVec& a, const RatVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

inline bool ratvec_eq(const RatVec& a, const RatVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace detail

// Double description with lineality: compute span(L) + cone(R) for
// {x : a·x ≥ 0 for all a ∈ ineqs, e·x = 0 for all e ∈ eqs}.
// Sized for ambient dimension ≤ 6; rays are filtered by the algebraic
// extremeness criterion so intermediate sets stay small.
struct DDResult {
  std::vector<RatVec> lineality;  // basis of the lineality space
  std::vector<RatVec> rays;       // extreme rays, primitive integer vectors
};

inline DDResult dd_cone(std::size_t n, std::vector<RatVec> ineqs,
                        const std::vector<RatVec>& eqs = {}) {
  for (const auto& e : eqs) {
    ineqs.push_back(e);
    RatVec neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -e[i];
    ineqs.push_back(neg);
  }
  // drop zero rows
  std::vector<RatVec> active;
  for (auto& a : ineqs)
    if (!is_zero_vec(a)) active.push_back(a);

  std::vector<RatVec> L, R;
  for (std::size_t i = 0; i < n; ++i) {
    RatVec e(n, Rat(0));
    e[i] = Rat(1);
    L.push_back(e);
  }

  std::vector<RatVec> processed;
  for (const auto& a : active) {
    processed.push_back(a);
    // a lineality vector violating the hyperplane?
    int l0 = -1;
    for (std::size_t i = 0; i < L.size(); ++i)
      if (!dot(a, L[i]).is_zero()) {
        l0 = static_cast<int>(i);
        break;
      }
    if (l0 >= 0) {
      RatVec v = L[l0];
      Rat av = dot(a, v);
      if (av.sign() < 0) {
        for (auto& x : v) x = -x;
        av = -av;
      }
      std::vector<RatVec> newL;
      for (std::size_t i = 0; i < L.size(); ++i) {
        if (static_cast<int>(i) == l0) continue;
        Rat f = dot(a, L[i]) / av;
        newL.push_back(L[i] - scale(f, v));
      }
      for (auto& r : R) {
        Rat f = dot(a, r) / av;
        r = primitive(r - scale(f, v));
      }
      L = std::move(newL);
      R.push_back(primitive(v));
      continue;
    }
    // classic ray step
    std::vector<RatVec> plus, zerow, minus;
    for (auto& r : R) {
      int s = dot(a, r).sign();
      if (s > 0)
        plus.push_back(r);
      else if (s == 0)
        zerow.push_back(r);
      else
        minus.push_back(r);
    }
    std::vector<RatVec> cand = plus;
    cand.insert(cand.end(), zerow.begin(), zerow.end());
    for (const auto& rp : plus)
      for (const auto& rm : minus) {
        Rat cp = dot(a, rp), cm = dot(a, rm);
        RatVec w = scale(cp, rm) - scale(cm, rp);
        if (!is_zero_vec(w)) cand.push_back(primitive(w));
      }
    // dedupe and keep only extreme candidates: tight inequalities together
    // with the lineality-orthogonality must cut the ray out up to scaling
    std::vector<RatVec> kept;
    const std::size_t need = n - L.size() - 1;
    for (const auto& r : cand) {
      bool dup = false;
      for (const auto& k : kept)
        if (detail::ratvec_eq(k, r)) {
          dup = true;
          break;
        }
      if (dup) continue;
      std::vector<RatVec> tight;
      for (const auto& q : processed)
        if (dot(q, r).is_zero()) tight.push_back(q);
      // directions inside the lineality are free: quotient them out by
      // adding L-orthogonality rows would be wrong; instead extremeness in
      // span terms: rank(tight) ≥ n − dim L − 1 after restricting to the
      // current lineality-complement. The tight normals already vanish on L,
      // so the plain rank test is the right one.
      if (rat_rank(tight) >= need) kept.push_back(r);
    }
    R = std::move(kept);
  }
  // canonical form
  for (auto& r : R) r = primitive(r);
  std::sort(R.begin(), R.end(), detail::ratvec_lex_less);
  // RREF the lineality basis for determinism
  std::vector<RatVec> lin;
  for (const auto& l : L)
    if (!is_zero_vec(l)) lin.push_back(l);
  // gaussian elimination
  std::size_t rr = 0;
  for (std::size_t c = 0; c < n && rr < lin.size(); ++c) {
    std::size_t sel = rr;
    while (sel < lin.size() && lin[sel][c].is_zero()) ++sel;
    if (sel == lin.size()) continue;
    std::swap(lin[sel], lin[rr]);
    Rat iv = Rat(1) / lin[rr][c];
    for (auto& x : lin[rr]) x *= iv;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      if (i == rr) continue;
      Rat f = lin[i][c];
      if (f.is_zero()) continue;
      lin[i] = lin[i] - scale(f, lin[rr]);
    }
    ++rr;
  }
  lin.resize(rr, RatVec(n, Rat(0)));
  DDResult out;
  out.lineality = std::move(lin);
  out.rays = std::move(R);
  return out;
}

// Rational polyhedral cone with both descriptions kept in sync.
struct ConeQ {
  std::size_t ambient = 0;
  std::vector<RatVec> rays;       // extreme rays (canonical)
  std::vector<RatVec> lineality;  // RREF basis of the lineality space
  std::vector<RatVec> facets;     // y with y·x ≥ 0 on the cone
  std::vector<RatVec> equations;  // y with y·x = 0 on the cone

  std::size_t dim() const {
    std::vector<RatVec> all = rays;
    all.insert(all.end(), lineality.begin(), lineality.end());
    return rat_rank(all);
  }
  bool is_zero() const { return rays.empty() && lineality.empty(); }
};

inline ConeQ cone_from_generators(std::size_t n, const std::vector<RatVec>& gens,
                                  const std::vector<RatVec>& lin = {}) {
  ConeQ c;
  c.ambient = n;
  // dual: {y : g·y ≥ 0, l·y = 0}; its rays are our facets, its lineality our
  // equations
  std::vector<RatVec> nz;
  for (const auto& g : gens)
    if (!is_zero_vec(g)) nz.push_back(g);
  DDResult dual = dd_cone(n, nz, lin);
  c.facets = dual.rays;
  c.equations = dual.lineality;
  // double dual recovers the canonical generator description
  DDResult primal = dd_cone(n, c.facets, c.equations);
  c.rays = primal.rays;
  c.lineality = primal.lineality;
  return c;
}

inline ConeQ cone_from_inequalities(std::size_t n, const std::vector<RatVec>& ineqs,
                                    const std::vector<RatVec>& eqs = {}) {
  ConeQ c;
  c.ambient = n;
  DDResult primal = dd_cone(n, ineqs, eqs);
  c.rays = primal.rays;
  c.lineality = primal.lineality;
  // canonical facets via the dual of the computed generators
  std::vector<RatVec> lin = c.lineality;
  DDResult dual = dd_cone(n, c.rays, lin);
  c.facets = dual.rays;
  c.equations = dual.lineality;
  return c;
}

inline bool cone_contains(const ConeQ& c, const RatVec& x) {
  for (const auto& e : c.equations)
    if (!dot(e, x).is_zero()) return false;
  for (const auto& f : c.facets)
    if (dot(f, x).sign() < 0) return false;
  return true;
}

// relative interior: on the span, strictly inside every facet
inline bool cone_contains_relint(const ConeQ& c, const RatVec& x) {
  if (c.is_zero()) return is_zero_vec(x);
  for (const auto& e : c.equations)
    if (!dot(e, x).is_zero()) return false;
  for (const auto& f : c.facets)
    if (dot(f, x).sign() <= 0) return false;
  return true;
}

inline bool cone_subset(const ConeQ& inner, const ConeQ& outer) {
  for (const auto& r : inner.rays)
    if (!cone_contains(outer, r)) return false;
  for (const auto& l : inner.lineality) {
    if (!cone_contains(outer, l)) return false;
    RatVec neg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    if (!cone_contains(outer, neg)) return false;
  }
  return true;
}

inline bool cone_eq(const ConeQ& a, const ConeQ& b) {
  return cone_subset(a, b) && cone_subset(b, a);
}

// Smith normal form invariant factors of an integer matrix (rows as vectors).
// Matrices here are at most 6×6 with small entries; long long is ample.
inline std::vector<long long> smith_invariants(std::vector<std::vector<long long>> m) {
  std::vector<long long> inv;
  if (m.empty() || m[0].empty()) return inv;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t k = 0;
  while (k < rows && k < cols) {
    // locate a nonzero entry of minimal absolute value in the submatrix
    std::size_t pi = k, pj = k;
    long long best = 0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        long long v = m[i][j] < 0 ? -m[i][j] : m[i][j];
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (best == 0) break;
    std::swap(m[pi], m[k]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][pj], m[i][k]);
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = k + 1; i < rows; ++i)
        if (m[i][k] != 0) {
          long long q = m[i][k] / m[k][k];
          for (std::size_t j = k; j < cols; ++j) m[i][j] -= q * m[k][j];
          if (m[i][k] != 0) {
            std::swap(m[i], m[k]);
            again = true;
          }
        }
      for (std::size_t j = k + 1; j < cols; ++j)
        if (m[k][j] != 0) {
          long long q = m[k][j] / m[k][k];
          for (std::size_t i = k; i < rows; ++i) m[i][j] -= q * m[i][k];
          if (m[k][j] != 0) {
            for (std::size_t i = k; i < rows; ++i) std::swap(m[i][j], m[i][k]);
            again = true;
          }
        }
      if (!again) {
        // divisibility fix-up: fold in any entry the pivot does not divide
        for (std::size_t i = k + 1; i < rows && !again; ++i)
          for (std::size_t j = k + 1; j < cols && !again; ++j)
            if (m[i][j] % m[k][k] != 0) {
              for (std::size_t jj = k; jj < cols; ++jj) m[k][jj] += m[i][jj];
              again = true;
            }
      }
    }
    inv.push_back(m[k][k] < 0 ? -m[k][k] : m[k][k]);
    ++k;
  }
  return inv;
}

// Can the given integer vectors be extended to a Z-basis of Z^n?
// Equivalent to all Smith invariant factors being 1.
inline bool zbasis_extendable(const std::vector<std::vector<long long>>& vecs) {
  if (vecs.empty()) return true;
  auto inv = smith_invariants(vecs);
  if (inv.size() != vecs.size()) return false;  // linearly dependent
  for (long long d : inv)
    if (d != 1) return false;
  return true;
}

}  // namespace stabfan
