#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "einv.hpp"
#include "errors.hpp"
#include "kgrp.hpp"
#include "poly.hpp"
#include "rep.hpp"
#include "rng.hpp"

namespace stabfan {

using AMat = std::vector<std::vector<AlgEl>>;

// Endomorphisms of the two-term complex P_f in the chain category:
// pairs (u₁, u₀) with f∘u₁ = u₀∘f. Since presentations built from
// split_parts have radical differentials (domain and codomain supports are
// disjoint), P_f is a minimal complex and chain-level Krull–Schmidt
// decompositions coincide with those in the homotopy category.
struct ChainEnd {
  const Algebra* A;
  AHomSpace u_space, v_space;  // Hom(P₁,P₁), Hom(P₀,P₀)
  FpMat basis;                 // rows = basis vectors in (u,v) coordinates
  int dim = 0;

  ChainEnd(const Algebra& alg, const ProjMap& f)
      : A(&alg),
        u_space(alg, f.dom, f.dom),
        v_space(alg, f.cod, f.cod) {
    AHomSpace tgt(alg, f.cod, f.dom);
    const int nu = u_space.dim(), nv = v_space.dim();
    // condition F·U − V·F = 0; rows of sys = images of coordinate vectors
    FpMat sys(nu + nv, tgt.dim(), alg.p);
    for (int i = 0; i < nu; ++i) {
      auto fu = amat_mul(alg, f.ent, u_space.basis_matrix(i));
      auto v = tgt.vectorize(fu);
      for (int j = 0; j < tgt.dim(); ++j) sys(i, j) = v[j];
    }
    for (int i = 0; i < nv; ++i) {
      auto vf = amat_mul(alg, v_space.basis_matrix(i), f.ent);
      auto v = tgt.vectorize(vf);
      for (int j = 0; j < tgt.dim(); ++j) sys(nu + i, j) = fp::neg(v[j], alg.p);
    }
    basis = sys.left_nullspace();
    dim = static_cast<int>(basis.rows());
  }

  std::pair<AMat, AMat> element(const std::vector<std::uint64_t>& coeffs) const {
    std::vector<std::uint64_t> v(basis.cols(), 0);
    for (int b = 0; b < dim; ++b)
      for (std::size_t j = 0; j < basis.cols(); ++j)
        v[j] = fp::add(v[j], fp::mul(coeffs[b], basis(b, j), A->p), A->p);
    std::vector<std::uint64_t> uu(v.begin(), v.begin() + u_space.dim());
    std::vector<std::uint64_t> vv(v.begin() + u_space.dim(), v.end());
    return {u_space.matrix_of(uu), v_space.matrix_of(vv)};
  }

  std::vector<std::uint64_t> coords(const std::pair<AMat, AMat>& e) const {
    auto uu = u_space.vectorize(e.first);
    auto vv = v_space.vectorize(e.second);
    uu.insert(uu.end(), vv.begin(), vv.end());
    auto [ok, x] = basis.solve_left(uu);
    if (!ok) throw std::logic_error("ChainEnd: element outside the algebra");
    return x;
  }

  std::pair<AMat, AMat> mul(const std::pair<AMat, AMat>& x,
                            const std::pair<AMat, AMat>& y) const {
    return {amat_mul(*A, x.first, y.first), amat_mul(*A, x.second, y.second)};
  }

  std::pair<AMat, AMat> identity(const ProjMap& f) const {
    AMat u(f.dom.size(), std::vector<AlgEl>(f.dom.size(), A->zero_el()));
    AMat v(f.cod.size(), std::vector<AlgEl>(f.cod.size(), A->zero_el()));
    for (std::size_t i = 0; i < f.dom.size(); ++i) u[i][i] = A->el_of_basis(A->triv[f.dom[i]]);
    for (std::size_t i = 0; i < f.cod.size(); ++i) v[i][i] = A->el_of_basis(A->triv[f.cod[i]]);
    return {u, v};
  }

  // Left-regular representation of the element with the given coordinates.
  FpMat left_mult_matrix(const std::vector<std::uint64_t>& coeffs,
                         const ProjMap& /*f*/) const {
    auto x = element(coeffs);
    FpMat m(dim, dim, A->p);
    for (int b = 0; b < dim; ++b) {
      std::vector<std::uint64_t> unit(dim, 0);
      unit[b] = 1;
      auto y = element(unit);
      auto xy = mul(x, y);
      auto c = coords(xy);
      for (int j = 0; j < dim; ++j) m(b, j) = c[j];  // row b = coords of x·e_b
    }
    return m;
  }
};

namespace detail {

// minimal polynomial of a square matrix via Krylov on vec(M^k)
inline Poly matrix_minpoly(const FpMat& m) {
  const std::uint64_t p = m.mod();
  const std::size_t n = m.rows();
  std::vector<FpMat> pows;
  pows.push_back(FpMat::identity(n, p));
  for (;;) {
    std::size_t k = pows.size();
    FpMat stack(k, n * n, p);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) stack(i, r * n + c) = pows[i](r, c);
    FpMat next = pows.back() * m;
    std::vector<std::uint64_t> v(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v[r * n + c] = next(r, c);
    auto [dep, x] = stack.solve_left(v);
    if (dep) {
      // M^k = Σ x_i M^i  →  minpoly = t^k − Σ x_i t^i
      std::vector<std::uint64_t> coef(k + 1, 0);
      for (std::size_t i = 0; i < k; ++i) coef[i] = fp::neg(x[i], p);
      coef[k] = 1;
      return Poly(coef, p);
    }
    pows.push_back(next);
  }
}

}  // namespace detail

// Radical of the finite-dimensional algebra E (given by its left-regular
// matrices) via the trace bilinear form; valid since p > dim E is enforced.
inline FpMat algebra_radical(const std::vector<FpMat>& left_mults, std::uint64_t p) {
  const int d = static_cast<int>(left_mults.size());
  if (static_cast<std::uint64_t>(d) >= p)
    throw PrimeTooSmall("radical via trace form requires p > dim End");
  FpMat gram(d, d, p);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      FpMat prod = left_mults[i] * left_mults[j];
      std::uint64_t tr = 0;
      for (std::size_t k = 0; k < prod.rows(); ++k) tr = fp::add(tr, prod(k, k), p);
      gram(i, j) = tr;
    }
  return gram.left_nullspace();  // coordinates of a radical basis
}

struct SplitPiece {
  ProjMap map;
  int end_dim = 0;       // dim of the chain endomorphism algebra
  bool end_local = false;
};

namespace detail {

// Express a module map g: ⊕P(w) → P₀-rep as algebra-entry columns, where the
// generators' images are given as vectors in P₀'s (summand, path) basis.
inline ProjMap assemble_proj_map(
    const Algebra& A, const std::vector<int>& cod,
    const std::vector<std::pair<int, std::vector<std::uint64_t>>>& gen_images) {
  ProjMap f = zero_proj_map(A, cod, {});
  for (const auto& [v, x] : gen_images) {
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

// Vertex matrices of the endomorphism of the projective P (proj_rep basis)
// given by left multiplication with the algebra matrix U.
inline std::vector<FpMat> endo_vertex_mats(const Algebra& A, const std::vector<int>& summands,
                                           const AMat& U, const Rep& P) {
  std::vector<FpMat> out;
  for (int v = 0; v < A.n_vertices(); ++v) {
    FpMat m(P.dims[v], P.dims[v], A.p);
    int roff = 0;
    for (std::size_t c = 0; c < summands.size(); ++c) {
      const auto& cpaths = A.hom_basis(summands[c], v);
      for (std::size_t k = 0; k < cpaths.size(); ++k) {
        int coff = 0;
        for (std::size_t r = 0; r < summands.size(); ++r) {
          const auto& rpaths = A.hom_basis(summands[r], v);
          AlgEl prod = A.el_mul(U[r][c], A.el_of_basis(cpaths[k]));
          for (std::size_t l = 0; l < rpaths.size(); ++l)
            m(roff + static_cast<int>(k), coff + static_cast<int>(l)) = prod[rpaths[l]];
          coff += static_cast<int>(rpaths.size());
        }
      }
      roff += static_cast<int>(cpaths.size());
    }
    out.push_back(m);
  }
  return out;
}

}  // namespace detail

// Split P_f along an idempotent chain endomorphism e = (U₁, U₀): the image
// complex im(e) re-presented on a projective cover basis.
inline ProjMap restrict_to_image(const ProjMap& f, const AMat& U1, const AMat& U0) {
  const Algebra& A = *f.A;
  Rep P1 = proj_rep(A, f.dom_label());
  Rep P0 = proj_rep(A, f.cod_label());
  auto E1 = detail::endo_vertex_mats(A, f.dom, U1, P1);
  auto E0 = detail::endo_vertex_mats(A, f.cod, U0, P0);
  RepMap fmats = proj_map_mats(f, P1, P0);

  // image subreps
  std::vector<FpMat> im1, im0;
  for (int v = 0; v < A.n_vertices(); ++v) {
    im1.push_back(E1[v].row_basis());
    im0.push_back(E0[v].row_basis());
  }
  Rep I1 = sub_rep(P1, im1);
  Rep I0 = sub_rep(P0, im0);

  // projective covers ψ: ⊕P(w) → im (isos, images are projective)
  auto gens1 = top_generators(I1);
  auto gens0 = top_generators(I0);
  // generator vectors inside P1/P0 coordinates
  std::vector<std::pair<int, std::vector<std::uint64_t>>> g1p, g0p;
  for (auto& [v, x] : gens1) g1p.push_back({v, mul_vec_mat(x, im1[v])});
  for (auto& [v, x] : gens0) g0p.push_back({v, mul_vec_mat(x, im0[v])});
  ProjLabel l0 = label_from_gens(A, gens0);
  std::vector<int> cod = expand_label(l0);
  Rep Q0 = proj_rep(A, l0);
  RepMap psi0 = cover_map_mats(Q0, P0, g0p);

  // new differential: generator of P₁' at vertex v maps to
  // ψ₀⁻¹( f(ψ₁(gen)) ) expressed in Q0 coordinates
  std::vector<std::pair<int, std::vector<std::uint64_t>>> gen_images;
  for (auto& [v, x] : g1p) {
    auto y = mul_vec_mat(x, fmats.mats[v]);  // in P0 at v, lands in im U0
    auto [ok, z] = psi0.mats[v].solve_left(y);
    if (!ok) throw std::logic_error("restrict_to_image: differential escapes image");
    gen_images.push_back({v, z});
  }
  return detail::assemble_proj_map(A, cod, gen_images);
}

// Complete Krull–Schmidt splitting of P_f into chain-indecomposable pieces.
// A single attempt can be unlucky — e.g. over a matrix-block quotient M_n(k)
// a random element has irreducible minimal polynomial with probability about
// 1/n and yields no factor — so the retry budget is sized to make an overall
// miss (which throws, never mis-splits) vanishingly rare.
inline std::vector<SplitPiece> split_indecomposables(const ProjMap& f,
                                                     std::uint64_t seed = 1,
                                                     int max_retries = 48) {
  const Algebra& A = *f.A;
  std::vector<SplitPiece> out;
  std::vector<ProjMap> work{f};
  Rng rng(seed ^ 0x5bd1e995);
  while (!work.empty()) {
    ProjMap cur = std::move(work.back());
    work.pop_back();
    if (cur.dom.empty() && cur.cod.empty()) continue;  // zero complex
    ChainEnd end(A, cur);
    if (end.dim == 0) throw std::logic_error("split: endomorphism algebra without unit");
    if (end.dim == 1) {
      out.push_back({cur, 1, true});
      continue;
    }
    // left-regular matrices for the radical computation
    std::vector<FpMat> lm;
    for (int b = 0; b < end.dim; ++b) {
      std::vector<std::uint64_t> unit(end.dim, 0);
      unit[b] = 1;
      lm.push_back(end.left_mult_matrix(unit, cur));
    }
    FpMat rad = algebra_radical(lm, A.p);
    const int sdim = end.dim - static_cast<int>(rad.rows());
    if (sdim == 1) {
      // semisimple quotient is k: local, indecomposable
      out.push_back({cur, end.dim, true});
      continue;
    }
    // find a splitting idempotent from a random element's minimal polynomial
    // on the semisimple quotient
    bool split_done = false;
    bool certified_field = false;
    for (int attempt = 0; attempt < max_retries && !split_done && !certified_field;
         ++attempt) {
      std::vector<std::uint64_t> rc(end.dim);
      for (auto& x : rc) x = rng.below(A.p);
      FpMat lr = end.left_mult_matrix(rc, cur);
      // operator induced on E/rad: quotient coordinates via complement of rad
      FpMat stack(rad.rows() + end.dim, end.dim, A.p);
      for (std::size_t i = 0; i < rad.rows(); ++i)
        for (int j = 0; j < end.dim; ++j) stack(i, j) = rad(i, j);
      // complement = non-pivot coordinates of rad's RREF
      FpMat rb = rad.row_basis();
      std::vector<bool> is_piv(end.dim, false);
      for (std::size_t r = 0; r < rb.rows(); ++r)
        for (int c = 0; c < end.dim; ++c)
          if (rb(r, c) != 0) {
            is_piv[c] = true;
            break;
          }
      std::vector<int> comp;
      for (int c = 0; c < end.dim; ++c)
        if (!is_piv[c]) comp.push_back(c);
      // projection to quotient coordinates: x ↦ coords of x mod rad
      auto project = [&](const std::vector<std::uint64_t>& x) {
        // reduce x by rad rows (rb is RREF)
        std::vector<std::uint64_t> y = x;
        for (std::size_t r = 0; r < rb.rows(); ++r) {
          int pc = -1;
          for (int c = 0; c < end.dim; ++c)
            if (rb(r, c) != 0) {
              pc = c;
              break;
            }
          std::uint64_t fct = y[pc];
          if (!fct) continue;
          for (int c = 0; c < end.dim; ++c)
            y[c] = fp::sub(y[c], fp::mul(fct, rb(r, c), A.p), A.p);
        }
        std::vector<std::uint64_t> q(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i) q[i] = y[comp[i]];
        return q;
      };
      FpMat lrq(sdim, sdim, A.p);
      for (int i = 0; i < sdim; ++i) {
        std::vector<std::uint64_t> x(end.dim, 0);
        x[comp[i]] = 1;
        auto y = mul_vec_mat(x, lr);  // x·L_r = coords of r·e? careful below
        auto q = project(y);
        for (int j = 0; j < sdim; ++j) lrq(i, j) = q[j];
      }
      Poly mp = detail::matrix_minpoly(lrq);
      Rng frng(rng.next());
      auto factors = factor(mp, frng);
      if (factors.size() == 1 && factors[0].second == 1 &&
          factors[0].first.deg() == sdim) {
        // k[r̄] is a field of full dimension → E/rad is a field → E local
        certified_field = true;
        break;
      }
      if (factors.size() < 2) continue;  // unlucky element, retry
      // CRT projector h: ≡1 mod q₁, ≡0 mod the rest (on the squarefree part)
      Poly sf = Poly::one(A.p);
      for (auto& [q, m] : factors) sf = sf * q;
      Poly q1 = factors[0].first;
      Poly rest = sf / q1;
      // h = rest * (rest⁻¹ mod q1); compute inverse by extended gcd via powers
      // of Fermat in the field F_p[x]/(q1): rest^(p^d - 2)? simpler: solve
      // rest * h1 ≡ 1 (mod q1) by linear algebra
      int d1 = q1.deg();
      FpMat sys(d1, d1, A.p);
      Poly xpow = Poly::one(A.p);
      for (int i = 0; i < d1; ++i) {
        Poly col = (xpow * rest) % q1;  // row i: x^i · rest  (mod q1)
        for (int j = 0; j < d1; ++j)
          sys(i, j) = j < static_cast<int>(col.c.size()) ? col.c[j] : 0;
        xpow = xpow * Poly::x(A.p);
      }
      std::vector<std::uint64_t> one(d1, 0);
      one[0] = 1;
      auto [ok, h1c] = sys.solve_left(one);
      if (!ok) continue;
      Poly h1(std::vector<std::uint64_t>(h1c.begin(), h1c.end()), A.p);
      Poly h = (rest * h1);
      // e₀ = h(r) in E, then Newton lift through the radical
      std::vector<std::uint64_t> ecur(end.dim, 0);
      {
        // evaluate h at r by Horner in E: coordinates of powers via lr
        std::vector<std::uint64_t> unit(end.dim, 0);
        // identity coordinates: solve 1 = coords(identity)
        auto idc = end.coords(end.identity(cur));
        std::vector<std::uint64_t> acc(end.dim, 0);
        for (std::size_t i = h.c.size(); i-- > 0;) {
          // acc = acc·r + h_i·1
          acc = mul_vec_mat(acc, lr);
          for (int j = 0; j < end.dim; ++j)
            acc[j] = fp::add(acc[j], fp::mul(h.c[i], idc[j], A.p), A.p);
        }
        ecur = acc;
      }
      // Newton iteration e ← 3e² − 2e³ until idempotent
      auto mul_coords = [&](const std::vector<std::uint64_t>& x,
                            const std::vector<std::uint64_t>& y) {
        auto xe = end.element(x);
        auto ye = end.element(y);
        return end.coords(end.mul(xe, ye));
      };
      bool lifted = false;
      for (int it = 0; it < 64; ++it) {
        auto e2 = mul_coords(ecur, ecur);
        bool idem = (e2 == ecur);
        if (idem) {
          lifted = true;
          break;
        }
        auto e3 = mul_coords(e2, ecur);
        std::vector<std::uint64_t> next(end.dim);
        for (int j = 0; j < end.dim; ++j)
          next[j] = fp::sub(fp::mul(3, e2[j], A.p), fp::mul(2, e3[j], A.p), A.p);
        ecur = next;
      }
      if (!lifted) continue;
      // reject trivial idempotents
      bool zero = true;
      for (auto x : ecur)
        if (x) zero = false;
      auto idc = end.coords(end.identity(cur));
      if (zero || ecur == idc) continue;
      auto [U1, U0] = end.element(ecur);
      // complement idempotent 1 − e
      std::vector<std::uint64_t> ccur(end.dim);
      for (int j = 0; j < end.dim; ++j) ccur[j] = fp::sub(idc[j], ecur[j], A.p);
      auto [V1, V0] = end.element(ccur);
      ProjMap piece1 = restrict_to_image(cur, U1, U0);
      ProjMap piece2 = restrict_to_image(cur, V1, V0);
      // sanity: labels add up
      if (piece1.cod.size() + piece2.cod.size() != cur.cod.size() ||
          piece1.dom.size() + piece2.dom.size() != cur.dom.size())
        throw SplitFailed("split: image covers do not partition the complex");
      work.push_back(std::move(piece1));
      work.push_back(std::move(piece2));
      split_done = true;
    }
    if (certified_field) {
      out.push_back({cur, end.dim, true});
      continue;
    }
    if (!split_done)
      throw SplitFailed("split: no splitting idempotent found within retries");
  }
  return out;
}

struct CanonicalDecomposition {
  std::vector<KClass> summands;  // sorted multiset
  std::vector<SplitPiece> pieces;
  // pairwise E certificates on the found representatives, (i,j) → value
  std::map<std::pair<int, int>, long long> certificates;
  bool pairwise_zero = true;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
  int samples = 0;
  long long e_ff = 0;  // E(f,f) of the chosen generic presentation
};

inline CanonicalDecomposition canonical_decomposition(const Algebra& A,
                                                      const KClass& theta,
                                                      int samples = 5,
                                                      std::uint64_t seed = 1) {
  CanonicalDecomposition cd;
  cd.seed = seed;
  cd.prime = A.p;
  cd.samples = samples;
  if (kclass_is_zero(theta)) return cd;
  // generic sample: minimizer of E(f,f), ties to the lowest stream index
  std::optional<ProjMap> best;
  long long best_e = -1;
  for (int k = 0; k < samples; ++k) {
    auto f = sample_presentation(A, theta, Rng::stream(seed, k).next());
    long long e = e_of_pair(f.map, f.map);
    if (best_e < 0 || e < best_e) {
      best_e = e;
      best = f.map;
    }
  }
  cd.e_ff = best_e;
  cd.pieces = split_indecomposables(*best, seed);
  for (auto& p : cd.pieces) cd.summands.push_back(class_of_map(p.map));
  std::sort(cd.summands.begin(), cd.summands.end());
  for (std::size_t i = 0; i < cd.pieces.size(); ++i)
    for (std::size_t j = 0; j < cd.pieces.size(); ++j) {
      if (i == j) continue;
      long long e = e_of_pair(cd.pieces[i].map, cd.pieces[j].map);
      cd.certificates[{static_cast<int>(i), static_cast<int>(j)}] = e;
      if (e != 0) cd.pairwise_zero = false;
    }
  return cd;
}

// ind(ℓθ) for ℓ = 1..ℓ_max.
inline std::vector<CanonicalDecomposition> ind_N(const Algebra& A, const KClass& theta,
                                                 int lmax, int samples = 5,
                                                 std::uint64_t seed = 1) {
  std::vector<CanonicalDecomposition> out;
  for (int l = 1; l <= lmax; ++l)
    out.push_back(canonical_decomposition(A, kclass_scale(l, theta), samples, seed));
  return out;
}

struct RayProbe {
  bool theta_indecomposable = false;
  int first_failure = 0;  // 0 = holds up to lmax
  std::vector<std::size_t> summand_counts;
};

inline RayProbe ray_condition_probe(const Algebra& A, const KClass& theta, int lmax,
                                    int samples = 5, std::uint64_t seed = 1) {
  RayProbe r;
  auto base = canonical_decomposition(A, theta, samples, seed);
  r.theta_indecomposable = base.summands.size() == 1;
  for (int l = 1; l <= lmax; ++l) {
    auto cd = canonical_decomposition(A, kclass_scale(l, theta), samples, seed);
    r.summand_counts.push_back(cd.summands.size());
    if (cd.summands.size() > 1 && r.first_failure == 0) r.first_failure = l;
  }
  return r;
}

}  // namespace stabfan
