#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fp.hpp"

namespace stabfan {

struct Arrow {
  std::string name;
  int src, tgt;
};

// One term of a relation: coeff * (path composed left-to-right),
// path given by arrow indices into QuiverSpec::arrows.
struct RelTerm {
  long long coeff;
  std::vector<int> path;
};

using Relation = std::vector<RelTerm>;

struct QuiverSpec {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Relation> relations;
  int max_path_length = 12;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
};

struct Path {
  int src, tgt;
  std::vector<int> arrows;  // indices into spec.arrows, composed left-to-right

  int len() const { return static_cast<int>(arrows.size()); }
};

// Element of the algebra: dense coefficient vector over the path basis.
using AlgEl = std::vector<std::uint64_t>;

// A = kQ/I with the surviving-path basis. Immutable once built.
class Algebra {
 public:
  QuiverSpec spec;
  std::uint64_t p = 0;
  std::vector<Path> basis;       // trivial paths first by vertex, then by
                                 // length, then lex on arrow names
  std::vector<int> triv;         // triv[v] = basis index of e_v

  int dim() const { return static_cast<int>(basis.size()); }
  int n_vertices() const { return spec.n_vertices(); }

  const AlgEl& mult(int i, int j) const { return mult_[i * basis.size() + j]; }

  // Basis indices spanning e_i A e_j.
  const std::vector<int>& hom_basis(int i, int j) const {
    return hom_basis_[i * spec.n_vertices() + j];
  }

  AlgEl zero_el() const { return AlgEl(basis.size(), 0); }

  AlgEl el_of_basis(int b) const {
    AlgEl e = zero_el();
    e[b] = 1;
    return e;
  }

  AlgEl el_mul(const AlgEl& x, const AlgEl& y) const {
    AlgEl r = zero_el();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (!y[j]) continue;
        std::uint64_t c = fp::mul(x[i], y[j], p);
        const AlgEl& m = mult(static_cast<int>(i), static_cast<int>(j));
        for (std::size_t k = 0; k < r.size(); ++k)
          if (m[k]) r[k] = fp::add(r[k], fp::mul(c, m[k], p), p);
      }
    }
    return r;
  }

  AlgEl el_add(const AlgEl& x, const AlgEl& y) const {
    AlgEl r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = fp::add(x[i], y[i], p);
    return r;
  }

  friend Algebra build_algebra(const QuiverSpec& spec, std::uint64_t p);

 private:
  std::vector<AlgEl> mult_;
  std::vector<std::vector<int>> hom_basis_;
};

namespace detail {

inline bool path_lex_less(const QuiverSpec& s, const Path& a, const Path& b) {
  // only called within equal source; order by length then arrow-name sequence
  if (a.len() != b.len()) return a.len() < b.len();
  for (int k = 0; k < a.len(); ++k) {
    const std::string& x = s.arrows[a.arrows[k]].name;
    const std::string& y = s.arrows[b.arrows[k]].name;
    if (x != y) return x < y;
  }
  return false;
}

}  // namespace detail

inline Algebra build_algebra(const QuiverSpec& spec, std::uint64_t p) {
  if (!fp::is_prime(p)) throw std::invalid_argument("build_algebra: p not prime");
  const int nv = spec.n_vertices();
  const int L = spec.max_path_length;
  for (const Arrow& a : spec.arrows)
    if (a.src < 0 || a.src >= nv || a.tgt < 0 || a.tgt >= nv)
      throw InvalidRelation("arrow endpoint out of range");

  // validate relations: composable paths, length >= 2, common (src,tgt),
  // and length-homogeneous (required by the degreewise construction)
  for (const Relation& rel : spec.relations) {
    if (rel.empty()) continue;
    int rs = -1, rt = -1, rl = -1;
    for (const RelTerm& t : rel) {
      if (t.path.size() < 2) throw InvalidRelation("relation path shorter than 2");
      for (std::size_t k = 0; k + 1 < t.path.size(); ++k)
        if (spec.arrows[t.path[k]].tgt != spec.arrows[t.path[k + 1]].src)
          throw InvalidRelation("non-composable relation path");
      int s = spec.arrows[t.path.front()].src;
      int tt = spec.arrows[t.path.back()].tgt;
      int l = static_cast<int>(t.path.size());
      if (rs == -1) {
        rs = s;
        rt = tt;
        rl = l;
      } else if (s != rs || tt != rt) {
        throw InvalidRelation("relation terms with mismatched endpoints");
      } else if (l != rl) {
        throw InvalidRelation("relation not length-homogeneous");
      }
    }
  }

  // all composable paths, per degree
  std::vector<std::vector<Path>> paths(L + 1);
  for (int v = 0; v < nv; ++v) paths[0].push_back({v, v, {}});
  for (int d = 1; d <= L; ++d) {
    for (const Path& q : paths[d - 1])
      for (int a = 0; a < static_cast<int>(spec.arrows.size()); ++a)
        if (spec.arrows[a].src == q.tgt) {
          Path ext = q;
          ext.arrows.push_back(a);
          ext.tgt = spec.arrows[a].tgt;
          paths[d].push_back(ext);
        }
    std::sort(paths[d].begin(), paths[d].end(), [&](const Path& a, const Path& b) {
      if (a.src != b.src) return a.src < b.src;
      return detail::path_lex_less(spec, a, b);
    });
  }

  // degree-d index lookup
  std::vector<std::map<std::vector<int>, int>> idx(L + 1);
  for (int d = 0; d <= L; ++d)
    for (int i = 0; i < static_cast<int>(paths[d].size()); ++i) {
      std::vector<int> key = paths[d][i].arrows;
      if (d == 0) key = {-1 - paths[d][i].src};  // trivial path keyed by vertex
      idx[d][key] = i;
    }

  // group relations by degree
  std::vector<std::vector<const Relation*>> rels_by_deg(L + 1);
  for (const Relation& rel : spec.relations) {
    if (rel.empty()) continue;
    int d = static_cast<int>(rel[0].path.size());
    if (d <= L) rels_by_deg[d].push_back(&rel);
  }

  Algebra A;
  A.spec = spec;
  A.p = p;

  // Degreewise reduction: reduce_[d][path index] = coefficients over the
  // surviving degree-d paths (local indices), empty vec == path survives.
  // surviving[d] = local indices of surviving degree-d paths.
  std::vector<std::vector<int>> surviving(L + 1);
  std::vector<std::vector<std::vector<std::pair<int, std::uint64_t>>>> reduce(L + 1);
  std::vector<std::vector<bool>> dead(L + 1);  // pivot paths

  for (int i = 0; i < static_cast<int>(paths[0].size()); ++i) surviving[0].push_back(i);
  if (L >= 1)
    for (int i = 0; i < static_cast<int>(paths[1].size()); ++i) surviving[1].push_back(i);
  reduce[0].resize(paths[0].size());
  if (L >= 1) reduce[1].resize(paths[1].size());

  for (int d = 2; d <= L; ++d) {
    const std::size_t npaths = paths[d].size();
    // rows spanning the degree-d piece of the ideal: u * r * v
    std::vector<std::vector<std::uint64_t>> rows;
    for (int dr = 2; dr <= d; ++dr) {
      for (const Relation* rel : rels_by_deg[dr]) {
        int rel_src = spec.arrows[(*rel)[0].path.front()].src;
        int rel_tgt = spec.arrows[(*rel)[0].path.back()].tgt;
        for (int du = 0; du + dr <= d; ++du) {
          int dv = d - dr - du;
          for (const Path& u : paths[du]) {
            if (u.tgt != rel_src) continue;
            for (const Path& v : paths[dv]) {
              if (v.src != rel_tgt) continue;
              std::vector<std::uint64_t> row(npaths, 0);
              for (const RelTerm& t : *rel) {
                std::vector<int> w = u.arrows;
                w.insert(w.end(), t.path.begin(), t.path.end());
                w.insert(w.end(), v.arrows.begin(), v.arrows.end());
                auto it = idx[d].find(w);
                if (it == idx[d].end()) continue;  // can't happen: composable
                std::uint64_t c = fp::reduce(t.coeff, p);
                row[it->second] = fp::add(row[it->second], c, p);
              }
              bool nonzero = false;
              for (auto x : row)
                if (x) {
                  nonzero = true;
                  break;
                }
              if (nonzero) rows.push_back(std::move(row));
            }
          }
        }
      }
    }
    FpMat m(rows.size(), npaths, p);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < npaths; ++j) m(i, j) = rows[i][j];
    auto pivots = m.rref();
    dead[d].assign(npaths, false);
    std::vector<int> pivot_row(npaths, -1);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      dead[d][pivots[k]] = true;
      pivot_row[pivots[k]] = static_cast<int>(k);
    }
    for (std::size_t i = 0; i < npaths; ++i)
      if (!dead[d][i]) surviving[d].push_back(static_cast<int>(i));
    reduce[d].resize(npaths);
    for (std::size_t i = 0; i < npaths; ++i) {
      if (!dead[d][i]) continue;
      auto& expr = reduce[d][i];
      int r = pivot_row[i];
      for (std::size_t j = 0; j < npaths; ++j)
        if (!dead[d][j] && m(r, j))
          expr.push_back({static_cast<int>(j), fp::neg(m(r, j), p)});
    }
  }

  if (L >= 2 && !surviving[L].empty())
    throw NotFiniteDimensional("paths of length max_path_length survive");
  if (L < 2 && !paths[L].empty() && L >= 1)
    throw NotFiniteDimensional("max_path_length too small to certify");

  // global basis: surviving paths of degree < L, trivial first
  std::vector<std::vector<int>> global(L + 1);  // local surviving idx -> global
  for (int d = 0; d < L; ++d) {
    global[d].assign(paths[d].size(), -1);
    for (int loc : surviving[d]) {
      global[d][loc] = static_cast<int>(A.basis.size());
      A.basis.push_back(paths[d][loc]);
    }
  }
  A.triv.assign(nv, -1);
  for (int v = 0; v < nv; ++v) A.triv[v] = global[0][idx[0].at({-1 - v})];

  // normal form of an arbitrary path (by arrow list) as a basis vector
  auto normal_form = [&](const std::vector<int>& w, int src) -> AlgEl {
    AlgEl r(A.basis.size(), 0);
    int d = static_cast<int>(w.size());
    if (d >= L) return r;
    int loc;
    if (d == 0)
      loc = idx[0].at({-1 - src});
    else
      loc = idx[d].at(w);
    if (d < 2 || !dead[d][loc]) {
      r[global[d][loc]] = 1;
      return r;
    }
    for (const auto& [j, c] : reduce[d][loc]) r[global[d][j]] = c;
    return r;
  };

  // multiplication table
  const int dim = A.dim();
  A.mult_.assign(static_cast<std::size_t>(dim) * dim, AlgEl(dim, 0));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const Path& u = A.basis[i];
      const Path& v = A.basis[j];
      if (u.tgt != v.src) continue;
      std::vector<int> w = u.arrows;
      w.insert(w.end(), v.arrows.begin(), v.arrows.end());
      A.mult_[i * dim + j] = normal_form(w, u.src);
    }

  A.hom_basis_.assign(static_cast<std::size_t>(nv) * nv, {});
  for (int b = 0; b < dim; ++b)
    A.hom_basis_[A.basis[b].src * nv + A.basis[b].tgt].push_back(b);

  return A;
}

// Relation handle by arrow names, for spec construction convenience.
inline std::vector<int> arrows_by_name(const QuiverSpec& s,
                                       const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const std::string& n : names) {
    int found = -1;
    for (int i = 0; i < static_cast<int>(s.arrows.size()); ++i)
      if (s.arrows[i].name == n) {
        found = i;
        break;
      }
    if (found < 0) throw InvalidRelation("unknown arrow name: " + n);
    out.push_back(found);
  }
  return out;
}

// A/<e_i : i in kill>: sub-quiver on the kept vertices with induced relations.
// Returns the algebra plus the map old-vertex -> new-vertex (-1 if killed).
inline std::pair<Algebra, std::vector<int>> quotient_by_vertices(
    const Algebra& A, const std::set<int>& kill) {
  const QuiverSpec& s = A.spec;
  std::vector<int> vmap(s.n_vertices(), -1);
  QuiverSpec q;
  for (int v = 0; v < s.n_vertices(); ++v)
    if (!kill.count(v)) {
      vmap[v] = static_cast<int>(q.vertices.size());
      q.vertices.push_back(s.vertices[v]);
    }
  std::vector<int> amap(s.arrows.size(), -1);
  for (int a = 0; a < static_cast<int>(s.arrows.size()); ++a) {
    const Arrow& ar = s.arrows[a];
    if (vmap[ar.src] < 0 || vmap[ar.tgt] < 0) continue;
    amap[a] = static_cast<int>(q.arrows.size());
    q.arrows.push_back({ar.name, vmap[ar.src], vmap[ar.tgt]});
  }
  for (const Relation& rel : s.relations) {
    Relation nr;
    for (const RelTerm& t : rel) {
      bool alive = true;
      for (int a : t.path)
        if (amap[a] < 0) {
          alive = false;
          break;
        }
      if (!alive) continue;  // term passes through a killed vertex
      RelTerm nt;
      nt.coeff = t.coeff;
      for (int a : t.path) nt.path.push_back(amap[a]);
      nr.push_back(nt);
    }
    if (!nr.empty()) q.relations.push_back(nr);
  }
  q.max_path_length = s.max_path_length;
  return {build_algebra(q, A.p), vmap};
}

}  // namespace stabfan
