#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "fp.hpp"

namespace stabfan {

// P = ⊕ P(i)^{m_i}, multiplicities per vertex.
struct ProjLabel {
  std::vector<int> mult;

  int total() const {
    int t = 0;
    for (int m : mult) t += m;
    return t;
  }
  bool operator==(const ProjLabel& o) const { return mult == o.mult; }
};

// Expanded summand list: vertex per copy, in vertex order.
inline std::vector<int> expand_label(const ProjLabel& l) {
  std::vector<int> s;
  for (int v = 0; v < static_cast<int>(l.mult.size()); ++v)
    for (int k = 0; k < l.mult[v]; ++k) s.push_back(v);
  return s;
}

// Finite-dimensional right module: vertex spaces + arrow matrices.
// Row-vector convention: x at src(a) acts as x * arr[a] landing at tgt(a).
struct Rep {
  const Algebra* A = nullptr;
  std::vector<int> dims;
  std::vector<FpMat> arr;

  int dim_total() const {
    int t = 0;
    for (int d : dims) t += d;
    return t;
  }
  bool is_zero() const { return dim_total() == 0; }
  std::vector<long long> dimv() const {
    return std::vector<long long>(dims.begin(), dims.end());
  }
};

inline Rep zero_rep(const Algebra& A) {
  Rep r;
  r.A = &A;
  r.dims.assign(A.n_vertices(), 0);
  for (const Arrow& a : A.spec.arrows) r.arr.push_back(FpMat(0, 0, A.p));
  return r;
}

inline Rep simple_rep(const Algebra& A, int v) {
  Rep r = zero_rep(A);
  r.dims[v] = 1;
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a)
    r.arr[a] = FpMat(r.dims[A.spec.arrows[a].src], r.dims[A.spec.arrows[a].tgt], A.p);
  return r;
}

// Matrix of the action of a path on M: dims[src] x dims[tgt].
inline FpMat path_mat(const Rep& M, const Path& q) {
  FpMat m = FpMat::identity(M.dims[q.src], M.A->p);
  for (int a : q.arrows) m = m * M.arr[a];
  return m;
}

// Matrix of the action of an algebra element restricted to e_i A e_j.
inline FpMat act_el(const Rep& M, int i, int j, const AlgEl& x) {
  const Algebra& A = *M.A;
  FpMat m(M.dims[i], M.dims[j], A.p);
  for (int b = 0; b < A.dim(); ++b) {
    if (!x[b]) continue;
    const Path& q = A.basis[b];
    if (q.src != i || q.tgt != j) continue;
    m = m + path_mat(M, q).scaled(x[b]);
  }
  return m;
}

inline bool relations_vanish(const Rep& M) {
  for (const Relation& rel : M.A->spec.relations) {
    if (rel.empty()) continue;
    int s = M.A->spec.arrows[rel[0].path.front()].src;
    int t = M.A->spec.arrows[rel[0].path.back()].tgt;
    FpMat sum(M.dims[s], M.dims[t], M.A->p);
    for (const RelTerm& term : rel) {
      Path q{s, t, term.path};
      sum = sum + path_mat(M, q).scaled(fp::reduce(term.coeff, M.A->p));
    }
    if (!sum.is_zero()) return false;
  }
  return true;
}

// P(label) = ⊕ e_{s}A with basis at vertex v indexed by (summand r, path b)
// for b running over hom_basis(s_r, v), summand-major order.
inline Rep proj_rep(const Algebra& A, const ProjLabel& label) {
  std::vector<int> summands = expand_label(label);
  Rep r = zero_rep(A);
  const int nv = A.n_vertices();
  // offsets[r][v] = index of summand r's first basis vector at vertex v
  std::vector<std::vector<int>> off(summands.size(), std::vector<int>(nv, 0));
  for (int v = 0; v < nv; ++v) {
    int d = 0;
    for (std::size_t s = 0; s < summands.size(); ++s) {
      off[s][v] = d;
      d += static_cast<int>(A.hom_basis(summands[s], v).size());
    }
    r.dims[v] = d;
  }
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
    int v = A.spec.arrows[a].src, w = A.spec.arrows[a].tgt;
    FpMat m(r.dims[v], r.dims[w], A.p);
    AlgEl ael = A.zero_el();
    // find the basis index of the length-1 path for arrow a
    int abidx = -1;
    for (int b = 0; b < A.dim(); ++b)
      if (A.basis[b].len() == 1 && A.basis[b].arrows[0] == static_cast<int>(a)) {
        abidx = b;
        break;
      }
    for (std::size_t s = 0; s < summands.size(); ++s) {
      const auto& src_paths = A.hom_basis(summands[s], v);
      const auto& tgt_paths = A.hom_basis(summands[s], w);
      for (std::size_t k = 0; k < src_paths.size(); ++k) {
        const AlgEl& prod =
            abidx >= 0 ? A.mult(src_paths[k], abidx) : A.zero_el();
        for (std::size_t l = 0; l < tgt_paths.size(); ++l)
          m(off[s][v] + k, off[s][w] + l) = prod[tgt_paths[l]];
      }
    }
    r.arr[a] = m;
  }
  return r;
}

inline Rep proj_rep(const Algebra& A, int vertex) {
  ProjLabel l;
  l.mult.assign(A.n_vertices(), 0);
  l.mult[vertex] = 1;
  return proj_rep(A, l);
}

// I(label) = ⊕ D(A e_i): basis at vertex v = duals of hom_basis(v, i_r),
// arrow action = transpose of left multiplication.
inline Rep inj_rep(const Algebra& A, const ProjLabel& label) {
  std::vector<int> summands = expand_label(label);
  Rep r = zero_rep(A);
  const int nv = A.n_vertices();
  std::vector<std::vector<int>> off(summands.size(), std::vector<int>(nv, 0));
  for (int v = 0; v < nv; ++v) {
    int d = 0;
    for (std::size_t s = 0; s < summands.size(); ++s) {
      off[s][v] = d;
      d += static_cast<int>(A.hom_basis(v, summands[s]).size());
    }
    r.dims[v] = d;
  }
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
    int v = A.spec.arrows[a].src, w = A.spec.arrows[a].tgt;
    FpMat m(r.dims[v], r.dims[w], A.p);
    int abidx = -1;
    for (int b = 0; b < A.dim(); ++b)
      if (A.basis[b].len() == 1 && A.basis[b].arrows[0] == static_cast<int>(a)) {
        abidx = b;
        break;
      }
    for (std::size_t s = 0; s < summands.size(); ++s) {
      int i = summands[s];
      const auto& v_paths = A.hom_basis(v, i);  // duals live at v
      const auto& w_paths = A.hom_basis(w, i);
      // (ξ_b · a)(b') = ξ_b(a · b') for b' : w→i
      for (std::size_t l = 0; l < w_paths.size(); ++l) {
        const AlgEl& prod = abidx >= 0 ? A.mult(abidx, w_paths[l]) : A.zero_el();
        for (std::size_t k = 0; k < v_paths.size(); ++k)
          m(off[s][v] + k, off[s][w] + l) = prod[v_paths[k]];
      }
    }
    r.arr[a] = m;
  }
  return r;
}

inline Rep inj_rep(const Algebra& A, int vertex) {
  ProjLabel l;
  l.mult.assign(A.n_vertices(), 0);
  l.mult[vertex] = 1;
  return inj_rep(A, l);
}

inline Rep direct_sum(const Rep& M, const Rep& N) {
  Rep r = zero_rep(*M.A);
  for (int v = 0; v < M.A->n_vertices(); ++v) r.dims[v] = M.dims[v] + N.dims[v];
  for (std::size_t a = 0; a < M.arr.size(); ++a) {
    int v = M.A->spec.arrows[a].src, w = M.A->spec.arrows[a].tgt;
    FpMat m(r.dims[v], r.dims[w], M.A->p);
    for (std::size_t i = 0; i < M.arr[a].rows(); ++i)
      for (std::size_t j = 0; j < M.arr[a].cols(); ++j) m(i, j) = M.arr[a](i, j);
    for (std::size_t i = 0; i < N.arr[a].rows(); ++i)
      for (std::size_t j = 0; j < N.arr[a].cols(); ++j)
        m(M.dims[v] + i, M.dims[w] + j) = N.arr[a](i, j);
    r.arr[a] = m;
  }
  return r;
}

// Hom_A(M,N): tuples (Φ_v) with M_a Φ_t = Φ_s N_a for every arrow a: s→t.
// Basis of solutions, one tuple of matrices per element.
inline std::vector<std::vector<FpMat>> hom_space(const Rep& M, const Rep& N) {
  const Algebra& A = *M.A;
  const std::uint64_t p = A.p;
  const int nv = A.n_vertices();
  std::vector<int> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + M.dims[v] * N.dims[v];
  const int nvars = off[nv];
  std::vector<std::vector<std::uint64_t>> eqs;
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
    int s = A.spec.arrows[a].src, t = A.spec.arrows[a].tgt;
    // equation per (i < dims M_s, j < dims N_t):
    //   Σ_k M_a(i,k) Φ_t(k,j) − Σ_k Φ_s(i,k) N_a(k,j) = 0
    for (int i = 0; i < M.dims[s]; ++i)
      for (int j = 0; j < N.dims[t]; ++j) {
        std::vector<std::uint64_t> row(nvars, 0);
        for (int k = 0; k < M.dims[t]; ++k)
          row[off[t] + k * N.dims[t] + j] =
              fp::add(row[off[t] + k * N.dims[t] + j], M.arr[a](i, k), p);
        for (int k = 0; k < N.dims[s]; ++k)
          row[off[s] + i * N.dims[s] + k] = fp::sub(
              row[off[s] + i * N.dims[s] + k], N.arr[a](k, j), p);
        eqs.push_back(std::move(row));
      }
  }
  FpMat sys(eqs.size(), nvars, p);
  for (std::size_t i = 0; i < eqs.size(); ++i)
    for (int j = 0; j < nvars; ++j) sys(i, j) = eqs[i][j];
  FpMat ns = sys.right_nullspace();
  std::vector<std::vector<FpMat>> basis;
  for (std::size_t b = 0; b < ns.rows(); ++b) {
    std::vector<FpMat> phi;
    for (int v = 0; v < nv; ++v) {
      FpMat m(M.dims[v], N.dims[v], p);
      for (int i = 0; i < M.dims[v]; ++i)
        for (int j = 0; j < N.dims[v]; ++j) m(i, j) = ns(b, off[v] + i * N.dims[v] + j);
      phi.push_back(m);
    }
    basis.push_back(std::move(phi));
  }
  return basis;
}

inline std::size_t hom_dim(const Rep& M, const Rep& N) {
  return hom_space(M, N).size();
}

inline bool is_brick(const Rep& M) { return hom_dim(M, M) == 1; }

// Vertex-wise linear map between reps (not necessarily a module map unless
// the caller guarantees it).
struct RepMap {
  std::vector<FpMat> mats;  // per vertex: dims_src[v] x dims_tgt[v]
};

// Kernel of a module map g: M → N as a subrepresentation, with the inclusion
// matrices (rows of incl[v] = kernel basis inside M_v).
inline Rep kernel_rep(const Rep& M, const Rep& N, const RepMap& g,
                      std::vector<FpMat>* incl_out = nullptr) {
  const Algebra& A = *M.A;
  Rep K = zero_rep(A);
  std::vector<FpMat> incl;
  for (int v = 0; v < A.n_vertices(); ++v) {
    FpMat ker = g.mats[v].left_nullspace();  // rows x with x*g = 0
    K.dims[v] = static_cast<int>(ker.rows());
    incl.push_back(ker);
  }
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
    int s = A.spec.arrows[a].src, t = A.spec.arrows[a].tgt;
    // K_a = incl_s * M_a expressed in the incl_t basis
    FpMat img = incl[s] * M.arr[a];
    FpMat Ka(K.dims[s], K.dims[t], A.p);
    for (std::size_t i = 0; i < img.rows(); ++i) {
      auto [ok, coords] = incl[t].solve_left(img.row(i));
      if (!ok) throw std::logic_error("kernel_rep: image not in kernel (not a module map?)");
      for (std::size_t j = 0; j < coords.size(); ++j) Ka(i, j) = coords[j];
    }
    K.arr[a] = Ka;
  }
  if (incl_out) *incl_out = incl;
  return K;
}

// Cokernel of a module map g: M → N, with the projection matrices
// proj[v]: N_v → C_v (row-vector action x ↦ x * proj[v]).
inline Rep cokernel_rep(const Rep& M, const Rep& N, const RepMap& g,
                        std::vector<FpMat>* proj_out = nullptr) {
  const Algebra& A = *M.A;
  const std::uint64_t p = A.p;
  Rep C = zero_rep(A);
  std::vector<FpMat> proj;
  std::vector<FpMat> img_basis;
  for (int v = 0; v < A.n_vertices(); ++v) {
    FpMat img = g.mats[v].row_basis();  // RREF basis of the image in N_v
    img_basis.push_back(img);
    std::vector<bool> is_piv(N.dims[v], false);
    std::vector<std::size_t> piv_row(N.dims[v], 0);
    for (std::size_t r = 0; r < img.rows(); ++r)
      for (int c = 0; c < N.dims[v]; ++c)
        if (img(r, c) != 0) {  // leading 1 of an RREF row
          is_piv[c] = true;
          piv_row[c] = r;
          break;
        }
    int cdim = N.dims[v] - static_cast<int>(img.rows());
    C.dims[v] = cdim;
    // quotient coordinates = non-pivot coordinates after reduction
    std::vector<int> qcoord;  // non-pivot columns
    for (int c = 0; c < N.dims[v]; ++c)
      if (!is_piv[c]) qcoord.push_back(c);
    FpMat pr(N.dims[v], cdim, p);
    for (int c = 0; c < N.dims[v]; ++c) {
      if (!is_piv[c]) {
        int qi = static_cast<int>(std::lower_bound(qcoord.begin(), qcoord.end(), c) -
                                  qcoord.begin());
        pr(c, qi) = 1;
      } else {
        std::size_t r = piv_row[c];
        for (std::size_t qi = 0; qi < qcoord.size(); ++qi)
          pr(c, qi) = fp::neg(img(r, qcoord[qi]), p);
      }
    }
    proj.push_back(pr);
  }
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
    int s = A.spec.arrows[a].src, t = A.spec.arrows[a].tgt;
    // section: quotient basis vector ↦ its non-pivot standard vector in N_s
    std::vector<int> qcoord;
    {
      FpMat img = img_basis[s];
      std::vector<bool> is_piv(N.dims[s], false);
      for (std::size_t r = 0; r < img.rows(); ++r)
        for (int c = 0; c < N.dims[s]; ++c)
          if (img(r, c) != 0) {
            is_piv[c] = true;
            break;
          }
      for (int c = 0; c < N.dims[s]; ++c)
        if (!is_piv[c]) qcoord.push_back(c);
    }
    FpMat Ca(C.dims[s], C.dims[t], p);
    for (int i = 0; i < C.dims[s]; ++i) {
      std::vector<std::uint64_t> x(N.dims[s], 0);
      x[qcoord[i]] = 1;
      auto y = mul_vec_mat(x, N.arr[a]);
      auto z = mul_vec_mat(y, proj[t]);
      for (int j = 0; j < C.dims[t]; ++j) Ca(i, j) = z[j];
    }
    C.arr[a] = Ca;
  }
  if (proj_out) *proj_out = proj;
  return C;
}

// f: P₁ → P₀ as a matrix of algebra elements; rows ↔ P₀ summands,
// columns ↔ P₁ summands, acting by left multiplication on column vectors.
struct ProjMap {
  const Algebra* A = nullptr;
  std::vector<int> cod;  // vertex per P₀ summand (rows)
  std::vector<int> dom;  // vertex per P₁ summand (columns)
  std::vector<std::vector<AlgEl>> ent;  // ent[r][c] ∈ e_{cod[r]} A e_{dom[c]}

  ProjLabel cod_label() const { return label_of(cod); }
  ProjLabel dom_label() const { return label_of(dom); }

 private:
  ProjLabel label_of(const std::vector<int>& s) const {
    ProjLabel l;
    l.mult.assign(A->n_vertices(), 0);
    for (int v : s) ++l.mult[v];
    return l;
  }
};

inline ProjMap zero_proj_map(const Algebra& A, const std::vector<int>& cod,
                             const std::vector<int>& dom) {
  ProjMap f;
  f.A = &A;
  f.cod = cod;
  f.dom = dom;
  f.ent.assign(cod.size(), std::vector<AlgEl>(dom.size(), A.zero_el()));
  return f;
}

inline ProjMap direct_sum(const ProjMap& f, const ProjMap& g) {
  ProjMap h = zero_proj_map(*f.A, f.cod, f.dom);
  h.cod.insert(h.cod.end(), g.cod.begin(), g.cod.end());
  h.dom.insert(h.dom.end(), g.dom.begin(), g.dom.end());
  h.ent.assign(h.cod.size(), std::vector<AlgEl>(h.dom.size(), f.A->zero_el()));
  for (std::size_t r = 0; r < f.cod.size(); ++r)
    for (std::size_t c = 0; c < f.dom.size(); ++c) h.ent[r][c] = f.ent[r][c];
  for (std::size_t r = 0; r < g.cod.size(); ++r)
    for (std::size_t c = 0; c < g.dom.size(); ++c)
      h.ent[f.cod.size() + r][f.dom.size() + c] = g.ent[r][c];
  return h;
}

// f as vertex-wise linear maps P₁-rep → P₀-rep (both with proj_rep bases).
// Summand c of P₁ at basis path b: src dom[c] → v maps to the element
// (column c of f) · b, i.e. row r component ent[r][c]·b ∈ e_{cod[r]}Ae_v.
inline RepMap proj_map_mats(const ProjMap& f, const Rep& P1, const Rep& P0) {
  const Algebra& A = *f.A;
  const int nv = A.n_vertices();
  RepMap g;
  for (int v = 0; v < nv; ++v) {
    FpMat m(P1.dims[v], P0.dims[v], A.p);
    int roff1 = 0;
    for (std::size_t c = 0; c < f.dom.size(); ++c) {
      const auto& dom_paths = A.hom_basis(f.dom[c], v);
      for (std::size_t k = 0; k < dom_paths.size(); ++k) {
        int row = roff1 + static_cast<int>(k);
        int coff = 0;
        for (std::size_t r = 0; r < f.cod.size(); ++r) {
          const auto& cod_paths = A.hom_basis(f.cod[r], v);
          AlgEl prod = A.el_mul(f.ent[r][c], A.el_of_basis(dom_paths[k]));
          for (std::size_t l = 0; l < cod_paths.size(); ++l)
            m(row, coff + static_cast<int>(l)) = prod[cod_paths[l]];
          coff += static_cast<int>(cod_paths.size());
        }
      }
      roff1 += static_cast<int>(dom_paths.size());
    }
    g.mats.push_back(m);
  }
  return g;
}

inline Rep cokernel(const ProjMap& f, std::vector<FpMat>* proj_out = nullptr,
                    Rep* p0_out = nullptr) {
  Rep P1 = proj_rep(*f.A, f.dom_label());
  Rep P0 = proj_rep(*f.A, f.cod_label());
  RepMap g = proj_map_mats(f, P1, P0);
  if (p0_out) *p0_out = P0;
  return cokernel_rep(P1, P0, g, proj_out);
}

// νf: νP₁ → νP₀ between injectives; at vertex v the component
// ⊕_c (e_v A e_{dom c})* → ⊕_r (e_v A e_{cod r})* is the transpose of
// right multiplication z ↦ z·ent[r][c] on ⊕_r e_v A e_{cod r}.
inline RepMap nu_map_mats(const ProjMap& f, const Rep& I1, const Rep& I0) {
  const Algebra& A = *f.A;
  RepMap g;
  for (int v = 0; v < A.n_vertices(); ++v) {
    FpMat m(I1.dims[v], I0.dims[v], A.p);
    int roff = 0;
    for (std::size_t c = 0; c < f.dom.size(); ++c) {
      const auto& dom_paths = A.hom_basis(v, f.dom[c]);
      int coff = 0;
      for (std::size_t r = 0; r < f.cod.size(); ++r) {
        const auto& cod_paths = A.hom_basis(v, f.cod[r]);
        // entry ((c,k),(r,l)) = coefficient of dom_path k in cod_path l · ent[r][c]
        for (std::size_t l = 0; l < cod_paths.size(); ++l) {
          AlgEl prod = A.el_mul(A.el_of_basis(cod_paths[l]), f.ent[r][c]);
          for (std::size_t k = 0; k < dom_paths.size(); ++k)
            m(roff + static_cast<int>(k), coff + static_cast<int>(l)) =
                prod[dom_paths[k]];
        }
        coff += static_cast<int>(cod_paths.size());
      }
      roff += static_cast<int>(dom_paths.size());
    }
    g.mats.push_back(m);
  }
  return g;
}

inline Rep kernel_nu(const ProjMap& f, std::vector<FpMat>* incl_out = nullptr,
                     Rep* i1_out = nullptr) {
  Rep I1 = inj_rep(*f.A, f.dom_label());
  Rep I0 = inj_rep(*f.A, f.cod_label());
  RepMap g = nu_map_mats(f, I1, I0);
  if (i1_out) *i1_out = I1;
  return kernel_rep(I1, I0, g, incl_out);
}

// Radical M·J (J = arrow ideal): per-vertex row-space of all arrow images.
inline std::vector<FpMat> radical_bases(const Rep& M) {
  const Algebra& A = *M.A;
  std::vector<FpMat> rad;
  for (int v = 0; v < A.n_vertices(); ++v) {
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
      if (A.spec.arrows[a].tgt != v) continue;
      for (std::size_t i = 0; i < M.arr[a].rows(); ++i) rows.push_back(M.arr[a].row(i));
    }
    FpMat m(rows.size(), M.dims[v], A.p);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < M.dims[v]; ++j) m(i, j) = rows[i][j];
    rad.push_back(m.row_basis());
  }
  return rad;
}

// Lift of a projective cover: generators of M covering a basis of top(M).
// Returns (vertex, row vector in M at that vertex) pairs in vertex order.
inline std::vector<std::pair<int, std::vector<std::uint64_t>>> top_generators(
    const Rep& M) {
  const Algebra& A = *M.A;
  std::vector<std::pair<int, std::vector<std::uint64_t>>> gens;
  std::vector<FpMat> rad = radical_bases(M);
  for (int v = 0; v < A.n_vertices(); ++v) {
    // standard vectors at non-pivot columns of the radical's RREF lift top(M)
    std::vector<bool> is_piv(M.dims[v], false);
    for (std::size_t r = 0; r < rad[v].rows(); ++r)
      for (int c = 0; c < M.dims[v]; ++c)
        if (rad[v](r, c) != 0) {
          is_piv[c] = true;
          break;
        }
    for (int c = 0; c < M.dims[v]; ++c) {
      if (is_piv[c]) continue;
      std::vector<std::uint64_t> x(M.dims[v], 0);
      x[c] = 1;
      gens.push_back({v, x});
    }
  }
  return gens;
}

// Module map ⊕ P(v_g) → M sending each generator of P(v_g) to gens[g].
inline RepMap cover_map_mats(const Rep& P, const Rep& M,
                             const std::vector<std::pair<int, std::vector<std::uint64_t>>>& gens) {
  const Algebra& A = *M.A;
  RepMap g;
  for (int v = 0; v < A.n_vertices(); ++v) {
    FpMat m(P.dims[v], M.dims[v], A.p);
    int roff = 0;
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const auto& paths = A.hom_basis(gens[s].first, v);
      for (std::size_t k = 0; k < paths.size(); ++k) {
        // generator gens[s] acted by the path
        FpMat pm = path_mat(M, A.basis[paths[k]]);
        auto y = mul_vec_mat(gens[s].second, pm);
        for (int j = 0; j < M.dims[v]; ++j) m(roff + k, j) = y[j];
      }
      roff += static_cast<int>(paths.size());
    }
    g.mats.push_back(m);
  }
  return g;
}

inline ProjLabel label_from_gens(
    const Algebra& A, const std::vector<std::pair<int, std::vector<std::uint64_t>>>& gens) {
  ProjLabel l;
  l.mult.assign(A.n_vertices(), 0);
  for (const auto& g : gens) ++l.mult[g.first];
  return l;
}

// Minimal projective presentation P₁ → P₀ → M → 0.
inline ProjMap min_proj_presentation(const Rep& M) {
  const Algebra& A = *M.A;
  auto gens0 = top_generators(M);
  ProjLabel l0 = label_from_gens(A, gens0);
  Rep P0 = proj_rep(A, l0);
  RepMap cover = cover_map_mats(P0, M, gens0);
  std::vector<FpMat> incl;
  Rep K = kernel_rep(P0, M, cover, &incl);
  auto gens1 = top_generators(K);
  // generators of K as elements of P0's vertex spaces
  std::vector<std::pair<int, std::vector<std::uint64_t>>> gens1_in_p0;
  for (const auto& [v, x] : gens1)
    gens1_in_p0.push_back({v, mul_vec_mat(x, incl[v])});
  // assemble the entry matrix: coordinates of each generator in P0's
  // (summand, path) basis are exactly elements of e_{cod r} A e_v
  std::vector<int> cod = expand_label(l0);
  ProjMap f = zero_proj_map(A, cod, {});
  for (const auto& [v, x] : gens1_in_p0) {
    f.dom.push_back(v);
    for (auto& row : f.ent) row.push_back(A.zero_el());
    int off = 0;
    for (std::size_t r = 0; r < cod.size(); ++r) {
      const auto& paths = A.hom_basis(cod[r], v);
      AlgEl e = A.zero_el();
      for (std::size_t k = 0; k < paths.size(); ++k) e[paths[k]] = x[off + k];
      f.ent[r].back() = e;
      off += static_cast<int>(paths.size());
    }
  }
  return f;
}

// Hom(f, X): ⊕_r X_{cod r} → ⊕_c X_{dom c}, block (r,c) = act of ent[r][c].
inline FpMat hom_f_mat(const ProjMap& f, const Rep& X) {
  const Algebra& A = *f.A;
  int rdim = 0, cdim = 0;
  for (int v : f.cod) rdim += X.dims[v];
  for (int v : f.dom) cdim += X.dims[v];
  FpMat m(rdim, cdim, A.p);
  int roff = 0;
  for (std::size_t r = 0; r < f.cod.size(); ++r) {
    int coff = 0;
    for (std::size_t c = 0; c < f.dom.size(); ++c) {
      FpMat blk = act_el(X, f.cod[r], f.dom[c], f.ent[r][c]);
      for (std::size_t i = 0; i < blk.rows(); ++i)
        for (std::size_t j = 0; j < blk.cols(); ++j) m(roff + i, coff + j) = blk(i, j);
      coff += X.dims[f.dom[c]];
    }
    roff += X.dims[f.cod[r]];
  }
  return m;
}

// ---- submodule enumeration ----

// Canonical key of a subrepresentation: per-vertex RREF bases concatenated.
using SubBases = std::vector<FpMat>;

inline std::vector<std::uint64_t> sub_key(const SubBases& s) {
  std::vector<std::uint64_t> k;
  for (const FpMat& m : s) {
    k.push_back(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) k.push_back(m(i, j));
  }
  return k;
}

// Close a set of vectors (given per vertex) under all arrow actions; returns
// canonical per-vertex RREF bases.
inline SubBases close_under_arrows(const Rep& M,
                                   std::vector<std::vector<std::vector<std::uint64_t>>> vecs) {
  const Algebra& A = *M.A;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<FpMat> bases;
    for (int v = 0; v < A.n_vertices(); ++v) {
      FpMat m(vecs[v].size(), M.dims[v], A.p);
      for (std::size_t i = 0; i < vecs[v].size(); ++i)
        for (int j = 0; j < M.dims[v]; ++j) m(i, j) = vecs[v][i][j];
      bases.push_back(m.row_basis());
    }
    for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
      int s = A.spec.arrows[a].src, t = A.spec.arrows[a].tgt;
      for (std::size_t i = 0; i < bases[s].rows(); ++i) {
        auto y = mul_vec_mat(bases[s].row(i), M.arr[a]);
        // in span already?
        FpMat test(bases[t].rows() + 1, M.dims[t], A.p);
        for (std::size_t r = 0; r < bases[t].rows(); ++r)
          for (int j = 0; j < M.dims[t]; ++j) test(r, j) = bases[t](r, j);
        for (int j = 0; j < M.dims[t]; ++j) test(bases[t].rows(), j) = y[j];
        if (test.rank() > bases[t].rows()) {
          vecs[t].push_back(y);
          changed = true;
        }
      }
    }
    if (changed) continue;
    SubBases out;
    for (int v = 0; v < A.n_vertices(); ++v) out.push_back(bases[v]);
    return out;
  }
  return {};
}

struct Submodule {
  SubBases bases;
  std::vector<long long> dimv;
};

// All submodules of M over its own (small) prime field: cyclic submodules
// closed under pairwise sums. Fast path when dimv(M) ∈ {0,1}ⁿ: coordinate
// subsets closed under nonzero arrow actions (field-independent).
inline std::vector<Submodule> submodule_reps(const Rep& M,
                                             std::uint64_t budget = (1u << 24)) {
  const Algebra& A = *M.A;
  const std::uint64_t q = A.p;
  const int nv = A.n_vertices();
  std::vector<Submodule> out;
  bool zero_one = true;
  for (int d : M.dims)
    if (d > 1) zero_one = false;

  if (zero_one) {
    std::vector<int> supp;
    for (int v = 0; v < nv; ++v)
      if (M.dims[v] == 1) supp.push_back(v);
    for (std::uint64_t mask = 0; mask < (1ull << supp.size()); ++mask) {
      std::set<int> S;
      for (std::size_t k = 0; k < supp.size(); ++k)
        if (mask & (1ull << k)) S.insert(supp[k]);
      bool closed = true;
      for (std::size_t a = 0; a < A.spec.arrows.size() && closed; ++a) {
        int s = A.spec.arrows[a].src, t = A.spec.arrows[a].tgt;
        if (M.dims[s] == 1 && M.dims[t] == 1 && M.arr[a](0, 0) != 0 &&
            S.count(s) && !S.count(t))
          closed = false;
      }
      if (!closed) continue;
      Submodule sub;
      sub.dimv.assign(nv, 0);
      for (int v = 0; v < nv; ++v) {
        FpMat b(S.count(v) ? 1 : 0, M.dims[v], q);
        if (S.count(v)) {
          b(0, 0) = 1;
          sub.dimv[v] = 1;
        }
        sub.bases.push_back(b);
      }
      out.push_back(sub);
    }
    return out;
  }

  const int total = M.dim_total();
  double sz = 1;
  for (int i = 0; i < total; ++i) sz *= static_cast<double>(q);
  if (sz > static_cast<double>(budget))
    throw EnumerationBudgetExceeded("submodule enumeration: q^dim exceeds budget");

  std::vector<int> voff(nv + 1, 0);
  for (int v = 0; v < nv; ++v) voff[v + 1] = voff[v] + M.dims[v];

  std::map<std::vector<std::uint64_t>, SubBases> found;
  // zero submodule
  {
    SubBases z;
    for (int v = 0; v < nv; ++v) z.push_back(FpMat(0, M.dims[v], q));
    found[sub_key(z)] = z;
  }
  // cyclic submodules from every nonzero vector of the total space
  std::uint64_t count = 1;
  for (int i = 0; i < total; ++i) count *= q;
  for (std::uint64_t code = 1; code < count; ++code) {
    std::uint64_t c = code;
    std::vector<std::vector<std::vector<std::uint64_t>>> vecs(nv);
    for (int v = 0; v < nv; ++v) {
      std::vector<std::uint64_t> comp(M.dims[v], 0);
      bool nonzero = false;
      for (int j = 0; j < M.dims[v]; ++j) {
        comp[j] = c % q;
        c /= q;
        if (comp[j]) nonzero = true;
      }
      if (nonzero) vecs[v].push_back(comp);
    }
    SubBases s = close_under_arrows(M, vecs);
    found.emplace(sub_key(s), s);
  }
  // close under pairwise sums
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<SubBases> cur;
    for (auto& [k, s] : found) cur.push_back(s);
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        std::vector<std::vector<std::vector<std::uint64_t>>> vecs(nv);
        for (int v = 0; v < nv; ++v) {
          for (std::size_t r = 0; r < cur[i][v].rows(); ++r)
            vecs[v].push_back(cur[i][v].row(r));
          for (std::size_t r = 0; r < cur[j][v].rows(); ++r)
            vecs[v].push_back(cur[j][v].row(r));
        }
        SubBases s = close_under_arrows(M, vecs);
        if (found.emplace(sub_key(s), s).second) grew = true;
      }
  }
  for (auto& [k, s] : found) {
    Submodule sub;
    sub.bases = s;
    sub.dimv.assign(nv, 0);
    for (int v = 0; v < nv; ++v) sub.dimv[v] = static_cast<long long>(s[v].rows());
    out.push_back(sub);
  }
  return out;
}

// Distinct dimension vectors of submodules / factor modules.
inline std::set<std::vector<long long>> sub_dimvs(const Rep& M,
                                                  std::uint64_t budget = (1u << 24)) {
  std::set<std::vector<long long>> s;
  for (const auto& sub : submodule_reps(M, budget)) s.insert(sub.dimv);
  return s;
}

inline std::set<std::vector<long long>> factor_dimvs(const Rep& M,
                                                      std::uint64_t budget = (1u << 24)) {
  std::set<std::vector<long long>> s;
  auto total = M.dimv();
  for (const auto& sub : submodule_reps(M, budget)) {
    std::vector<long long> f(total.size());
    for (std::size_t i = 0; i < total.size(); ++i) f[i] = total[i] - sub.dimv[i];
    s.insert(f);
  }
  return s;
}

// The subrepresentation spanned by given bases, as a standalone Rep.
inline Rep sub_rep(const Rep& M, const SubBases& bases) {
  const Algebra& A = *M.A;
  Rep S = zero_rep(A);
  for (int v = 0; v < A.n_vertices(); ++v) S.dims[v] = static_cast<int>(bases[v].rows());
  for (std::size_t a = 0; a < A.spec.arrows.size(); ++a) {
    int s = A.spec.arrows[a].src, t = A.spec.arrows[a].tgt;
    FpMat Sa(S.dims[s], S.dims[t], A.p);
    for (int i = 0; i < S.dims[s]; ++i) {
      auto y = mul_vec_mat(bases[s].row(i), M.arr[a]);
      auto [ok, coords] = bases[t].solve_left(y);
      if (!ok) throw std::logic_error("sub_rep: not arrow-closed");
      for (int j = 0; j < S.dims[t]; ++j) Sa(i, j) = coords[j];
    }
    S.arr[a] = Sa;
  }
  return S;
}

// Quotient M / (submodule spanned by bases).
inline Rep quotient_rep(const Rep& M, const SubBases& bases,
                        std::vector<FpMat>* proj_out = nullptr) {
  const Algebra& A = *M.A;
  Rep S = sub_rep(M, bases);
  RepMap incl;
  incl.mats = bases;
  return cokernel_rep(S, M, incl, proj_out);
}

}  // namespace stabfan
