#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "cone.hpp"
#include "errors.hpp"
#include "kgrp.hpp"
#include "rep.hpp"

namespace stabfan {

// The doubled-cycle string algebra on n ≥ 2 vertices: arrows a_i: i → i+1 and
// b_i: i → i−1 (indices mod n), with every full a-cycle, every full b-cycle
// and every mixed 2-path equal to zero. dim = n + 2n(n−1).
inline QuiverSpec atilde_spec(int n) {
  QuiverSpec s;
  for (int i = 1; i <= n; ++i) s.vertices.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    s.arrows.push_back({"a" + std::to_string(i + 1), i, (i + 1) % n});
  for (int i = 0; i < n; ++i)
    s.arrows.push_back({"b" + std::to_string(i + 1), i, (i + n - 1) % n});
  auto mono = [&](std::vector<int> path) {
    Relation r;
    r.push_back({1, std::move(path)});
    s.relations.push_back(r);
  };
  for (int i = 0; i < n; ++i) {
    std::vector<int> ac, bc;
    for (int k = 0; k < n; ++k) {
      ac.push_back((i + k) % n);               // a_{i} a_{i+1} … a_{i+n−1}
      bc.push_back(n + (i + n - k) % n);       // b_{i} b_{i−1} … b_{i−n+1}
    }
    mono(ac);
    mono(bc);
    mono({i, n + (i + 1) % n});                // a_i b_{i+1}
    mono({n + (i + 1) % n, i});                // b_{i+1} a_i
  }
  s.max_path_length = n + 1;
  return s;
}

inline Algebra build_atilde(int n, std::uint64_t p) {
  if (n < 2) throw InvalidRelation("atilde: need n >= 2");
  return build_algebra(atilde_spec(n), p);
}

// ---- affine Coxeter action on K₀(proj) ----

// s_j[P(i)] = −[P(i)] + [P(i−1)] + [P(i+1)] for i = j, fixed otherwise
// (cyclic indices, 0-based j).
inline KClass coxeter_reflect(int j, const KClass& theta) {
  const int n = static_cast<int>(theta.size());
  KClass r = theta;
  long long c = theta[j];
  r[j] = -c;
  r[(j + n - 1) % n] += c;
  r[(j + 1) % n] += c;
  return r;
}

// word applied right-to-left
inline KClass coxeter_act(const std::vector<int>& word, KClass theta) {
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    theta = coxeter_reflect(*it, theta);
  return theta;
}

namespace detail {

using IMat = std::vector<std::vector<long long>>;

inline IMat imat_identity(int n) {
  IMat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// columns of w = images of the basis classes
inline IMat reflect_mat(int j, const IMat& w) {
  const int n = static_cast<int>(w.size());
  IMat r = w;
  for (int col = 0; col < n; ++col) {
    KClass theta(n);
    for (int i = 0; i < n; ++i) theta[i] = w[i][col];
    KClass img = coxeter_reflect(j, theta);
    for (int i = 0; i < n; ++i) r[i][col] = img[i];
  }
  return r;
}

inline KClass imat_apply(const IMat& w, const KClass& theta) {
  const int n = static_cast<int>(w.size());
  KClass r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += w[i][j] * theta[j];
  return r;
}

// all group elements reachable with words of length ≤ bound over the given
// generator indices (BFS; W itself is infinite, so this is a bounded atlas)
inline std::vector<IMat> coxeter_orbit(int n, const std::vector<int>& gens, int bound) {
  std::set<IMat> seen;
  std::vector<IMat> frontier{imat_identity(n)}, out{imat_identity(n)};
  seen.insert(out[0]);
  for (int len = 1; len <= bound; ++len) {
    std::vector<IMat> next;
    for (const IMat& w : frontier)
      for (int j : gens) {
        IMat wj = reflect_mat(j, w);
        if (seen.insert(wj).second) {
          next.push_back(wj);
          out.push_back(wj);
        }
      }
    if (next.empty()) break;
    frontier = std::move(next);
  }
  return out;
}

}  // namespace detail

// ---- TF decomposition of the hyperplane H = {θ(h) = 0} ----

struct HClass {
  std::vector<int> J;  // subset of {0,…,n−2}, the chosen [P(j)]−[P(n)] rays
  ConeQ cone;
};

// H decomposes under the finite parabolic W′ = ⟨s_0,…,s_{n−2}⟩ into the
// cones w(cone°{[P(j)]−[P(n)] : j ∈ J}); complete once the bound exhausts W′.
inline std::vector<HClass> decompose_H(int n, int word_length_bound = 12) {
  std::vector<int> gens;
  for (int j = 0; j + 1 < n; ++j) gens.push_back(j);
  auto orbit = detail::coxeter_orbit(n, gens, word_length_bound);
  std::vector<HClass> out;
  for (std::uint64_t mask = 0; mask < (1ull << (n - 1)); ++mask) {
    std::vector<int> J;
    for (int j = 0; j + 1 < n; ++j)
      if (mask & (1ull << j)) J.push_back(j);
    std::vector<KClass> base;
    for (int j : J) {
      KClass eta(n, 0);
      eta[j] = 1;
      eta[n - 1] = -1;
      base.push_back(eta);
    }
    for (const auto& w : orbit) {
      std::vector<RatVec> gensq;
      for (const auto& e : base) gensq.push_back(to_ratvec(detail::imat_apply(w, e)));
      ConeQ c = cone_from_generators(n, gensq);
      bool dup = false;
      for (const auto& h : out)
        if (h.J.size() == J.size() && cone_eq(h.cone, c)) {
          dup = true;
          break;
        }
      if (!dup) out.push_back({J, c});
    }
  }
  return out;
}

// Bounded atlas of the TF classes in H⁺ ⊔ H⁻: the cones ±w(C(P_J)) over the
// full (infinite) group, up to the word-length bound.
inline std::vector<ConeQ> halfspace_chambers(int n, int word_length_bound = 4) {
  std::vector<int> gens;
  for (int j = 0; j < n; ++j) gens.push_back(j);
  auto orbit = detail::coxeter_orbit(n, gens, word_length_bound);
  std::vector<ConeQ> out;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    std::vector<KClass> base;
    for (int j = 0; j < n; ++j)
      if (mask & (1ull << j)) {
        KClass e(n, 0);
        e[j] = 1;
        base.push_back(e);
      }
    for (const auto& w : orbit) {
      for (int sign : {1, -1}) {
        std::vector<RatVec> gensq;
        for (const auto& e : base)
          gensq.push_back(to_ratvec(kclass_scale(sign, detail::imat_apply(w, e))));
        ConeQ c = cone_from_generators(n, gensq);
        bool dup = false;
        for (const auto& h : out)
          if (cone_eq(h, c)) {
            dup = true;
            break;
          }
        if (!dup) out.push_back(c);
      }
    }
  }
  return out;
}

// ---- string-algebra band combinatorics ----

struct Band {
  // letters as arrow index * 2 + (1 if traversed backwards); canonical form:
  // lexicographically minimal rotation of min(b, b⁻¹)
  std::vector<int> code;

  std::size_t len() const { return code.size(); }
};

namespace detail {

inline int letter_start(const Algebra& A, int code) {
  const Arrow& a = A.spec.arrows[code / 2];
  return (code & 1) ? a.tgt : a.src;
}
inline int letter_end(const Algebra& A, int code) {
  const Arrow& a = A.spec.arrows[code / 2];
  return (code & 1) ? a.src : a.tgt;
}
inline int letter_inverse(int code) { return code ^ 1; }

inline std::vector<int> band_inverse(const std::vector<int>& code) {
  std::vector<int> r(code.rbegin(), code.rend());
  for (auto& c : r) c = letter_inverse(c);
  return r;
}

inline std::vector<int> canonical_band(const std::vector<int>& code) {
  std::vector<int> best;
  for (const auto& base : {code, band_inverse(code)}) {
    for (std::size_t s = 0; s < base.size(); ++s) {
      std::vector<int> rot(base.begin() + s, base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + s);
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

inline bool is_primitive_cyclic(const std::vector<int>& code) {
  const std::size_t k = code.size();
  for (std::size_t d = 1; d < k; ++d) {
    if (k % d) continue;
    bool period = true;
    for (std::size_t i = 0; i < k && period; ++i)
      if (code[i] != code[i % d]) period = false;
    if (period) return false;
  }
  return true;
}

// monomial relation paths as arrow sequences
inline std::vector<std::vector<int>> monomial_relations(const Algebra& A) {
  std::vector<std::vector<int>> out;
  for (const Relation& r : A.spec.relations) {
    if (r.size() != 1) throw NotStringAlgebra("non-monomial relation");
    out.push_back(r[0].path);
  }
  return out;
}

// does the cyclic letter sequence contain a forbidden pattern? checks
// cancellation, composability, and relation subpaths inside maximal direct
// (or, reversed, inverse) runs
inline bool cyclic_word_valid(const Algebra& A, const std::vector<int>& code,
                              const std::vector<std::vector<int>>& rels) {
  const std::size_t k = code.size();
  for (std::size_t i = 0; i < k; ++i) {
    int cur = code[i], nxt = code[(i + 1) % k];
    if (letter_end(A, cur) != letter_start(A, nxt)) return false;
    if (nxt == letter_inverse(cur)) return false;
  }
  // relation windows: for every cyclic window of same-orientation letters,
  // compare the traversed path with each relation
  for (const auto& rel : rels) {
    const std::size_t m = rel.size();
    if (m > k) continue;
    for (std::size_t s = 0; s < k; ++s) {
      bool fwd = true, bwd = true;
      for (std::size_t t = 0; t < m; ++t) {
        int c = code[(s + t) % k];
        if ((c & 1) || c / 2 != rel[t]) fwd = false;
        if (!(c & 1) || c / 2 != rel[m - 1 - t]) bwd = false;
      }
      if (fwd || bwd) return false;  // contains a relation subpath
    }
  }
  return true;
}

}  // namespace detail

// Structural test: monomial relations, at most two arrows in/out per vertex,
// unique composable continuation avoiding the length-2 relations.
inline bool is_string_algebra(const Algebra& A) {
  std::vector<std::vector<int>> rels;
  for (const Relation& r : A.spec.relations) {
    if (r.size() != 1 || fp::reduce(r[0].coeff, A.p) != 1) return false;
    rels.push_back(r[0].path);
  }
  const int nv = A.n_vertices();
  std::vector<int> outc(nv, 0), inc(nv, 0);
  for (const Arrow& a : A.spec.arrows) {
    ++outc[a.src];
    ++inc[a.tgt];
  }
  for (int v = 0; v < nv; ++v)
    if (outc[v] > 2 || inc[v] > 2) return false;
  auto two_path_banned = [&](int a, int b) {
    for (const auto& r : rels)
      if (r.size() == 2 && r[0] == a && r[1] == b) return true;
    return false;
  };
  const int na = static_cast<int>(A.spec.arrows.size());
  for (int a = 0; a < na; ++a) {
    int succ = 0, pred = 0;
    for (int b = 0; b < na; ++b) {
      if (A.spec.arrows[a].tgt == A.spec.arrows[b].src && !two_path_banned(a, b))
        ++succ;
      if (A.spec.arrows[b].tgt == A.spec.arrows[a].src && !two_path_banned(b, a))
        ++pred;
    }
    if (succ > 1 || pred > 1) return false;
  }
  return true;
}

// All bands of length ≤ max_len, canonicalized up to rotation and inversion.
inline std::vector<Band> enumerate_bands(const Algebra& A, int max_len) {
  if (!is_string_algebra(A)) throw NotStringAlgebra("band enumeration needs a string algebra");
  auto rels = detail::monomial_relations(A);
  const int nletters = 2 * static_cast<int>(A.spec.arrows.size());
  std::set<std::vector<int>> found;
  std::vector<int> walk;
  // DFS over open walks; close into a cycle whenever we return to the start
  auto dfs = [&](auto&& self, int start_vertex) -> void {
    int at = walk.empty() ? start_vertex : detail::letter_end(A, walk.back());
    if (!walk.empty() && at == start_vertex && walk.size() >= 2) {
      bool has_dir = false, has_inv = false;
      for (int c : walk) ((c & 1) ? has_inv : has_dir) = true;
      if (has_dir && has_inv && detail::is_primitive_cyclic(walk) &&
          detail::cyclic_word_valid(A, walk, rels))
        found.insert(detail::canonical_band(walk));
    }
    if (walk.size() >= static_cast<std::size_t>(max_len)) return;
    for (int c = 0; c < nletters; ++c) {
      if (detail::letter_start(A, c) != at) continue;
      if (!walk.empty() && c == detail::letter_inverse(walk.back())) continue;
      walk.push_back(c);
      // prune: linear (non-cyclic) constraints must already hold
      bool ok = true;
      for (const auto& rel : rels) {
        const std::size_t m = rel.size();
        if (walk.size() < m) continue;
        bool fwd = true, bwd = true;
        for (std::size_t t = 0; t < m; ++t) {
          int x = walk[walk.size() - m + t];
          if ((x & 1) || x / 2 != rel[t]) fwd = false;
          if (!(x & 1) || x / 2 != rel[m - 1 - t]) bwd = false;
        }
        if (fwd || bwd) ok = false;
      }
      if (ok) self(self, start_vertex);
      walk.pop_back();
    }
  };
  for (int v = 0; v < A.n_vertices(); ++v) dfs(dfs, v);
  std::vector<Band> out;
  for (const auto& c : found) out.push_back({c});
  return out;
}

// The standard band representation at parameter λ: one basis vector per walk
// step, arrows act along the letters, λ on the closing letter.
inline Rep band_module(const Algebra& A, const Band& b, std::uint64_t lambda) {
  const std::size_t k = b.code.size();
  Rep M = zero_rep(A);
  std::vector<int> vtx(k), pos(k);
  for (std::size_t j = 0; j < k; ++j) {
    vtx[j] = detail::letter_start(A, b.code[j]);
    pos[j] = M.dims[vtx[j]]++;
  }
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a)
    M.arr[a] = FpMat(M.dims[A.spec.arrows[a].src], M.dims[A.spec.arrows[a].tgt], A.p);
  for (std::size_t j = 0; j < k; ++j) {
    int c = b.code[j];
    std::size_t jn = (j + 1) % k;
    std::uint64_t coeff = (j + 1 == k) ? fp::reduce(static_cast<long long>(lambda), A.p) : 1;
    if (!(c & 1)) {
      // direct letter: z_j · a = coeff · z_{j+1}
      M.arr[c / 2](pos[j], pos[jn]) = coeff;
    } else {
      // inverse letter: z_{j+1} · a = coeff · z_j
      M.arr[c / 2](pos[jn], pos[j]) = coeff;
    }
  }
  return M;
}

// η^b = [P₀] − [P₁] of the minimal presentation; λ-independent for bands.
inline KClass eta_of_band(const Algebra& A, const Band& b, std::uint64_t lambda = 1) {
  Rep M = band_module(A, b, lambda);
  return class_of_map(min_proj_presentation(M));
}

}  // namespace stabfan
