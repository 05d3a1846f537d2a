#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kgrp.hpp"
#include "rep.hpp"
#include "rng.hpp"

namespace stabfan {

// Hom(⊕ e_{dom c}A, ⊕ e_{cod r}A): matrices with (r,c) entry in
// e_{cod r} A e_{dom c}, vectorized entry-major then path-basis order.
struct AHomSpace {
  const Algebra* A;
  std::vector<int> cod, dom;
  std::vector<std::vector<int>> off;  // off[r][c]
  int dim_ = 0;

  AHomSpace(const Algebra& alg, std::vector<int> cod_, std::vector<int> dom_)
      : A(&alg), cod(std::move(cod_)), dom(std::move(dom_)) {
    off.assign(cod.size(), std::vector<int>(dom.size(), 0));
    for (std::size_t r = 0; r < cod.size(); ++r)
      for (std::size_t c = 0; c < dom.size(); ++c) {
        off[r][c] = dim_;
        dim_ += static_cast<int>(A->hom_basis(cod[r], dom[c]).size());
      }
  }

  int dim() const { return dim_; }

  std::vector<std::uint64_t> vectorize(const std::vector<std::vector<AlgEl>>& m) const {
    std::vector<std::uint64_t> v(dim_, 0);
    for (std::size_t r = 0; r < cod.size(); ++r)
      for (std::size_t c = 0; c < dom.size(); ++c) {
        const auto& hb = A->hom_basis(cod[r], dom[c]);
        for (std::size_t k = 0; k < hb.size(); ++k) v[off[r][c] + k] = m[r][c][hb[k]];
      }
    return v;
  }

  std::vector<std::vector<AlgEl>> matrix_of(const std::vector<std::uint64_t>& v) const {
    std::vector<std::vector<AlgEl>> m(cod.size(),
                                      std::vector<AlgEl>(dom.size(), A->zero_el()));
    for (std::size_t r = 0; r < cod.size(); ++r)
      for (std::size_t c = 0; c < dom.size(); ++c) {
        const auto& hb = A->hom_basis(cod[r], dom[c]);
        for (std::size_t k = 0; k < hb.size(); ++k) m[r][c][hb[k]] = v[off[r][c] + k];
      }
    return m;
  }

  // basis element index -> elementary matrix
  std::vector<std::vector<AlgEl>> basis_matrix(int idx) const {
    std::vector<std::uint64_t> v(dim_, 0);
    v[idx] = 1;
    return matrix_of(v);
  }
};

// Product of matrices over the algebra: X (a x b) * Y (b x c).
inline std::vector<std::vector<AlgEl>> amat_mul(const Algebra& A,
                                                const std::vector<std::vector<AlgEl>>& X,
                                                const std::vector<std::vector<AlgEl>>& Y) {
  std::size_t a = X.size(), b = Y.size(), c = b ? Y[0].size() : 0;
  std::vector<std::vector<AlgEl>> Z(a, std::vector<AlgEl>(c, A.zero_el()));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t k = 0; k < b; ++k)
      for (std::size_t j = 0; j < c; ++j)
        Z[i][j] = A.el_add(Z[i][j], A.el_mul(X[i][k], Y[k][j]));
  return Z;
}

// dim Cok( Hom(P₁,Q₁) ⊕ Hom(P₀,Q₀) → Hom(P₁,Q₀), (u,v) ↦ g∘u − v∘f ).
inline long long e_of_pair(const ProjMap& f, const ProjMap& g) {
  const Algebra& A = *f.A;
  AHomSpace u_space(A, g.dom, f.dom);   // Hom(P₁^f, P₁^g)
  AHomSpace v_space(A, g.cod, f.cod);   // Hom(P₀^f, P₀^g)
  AHomSpace tgt(A, g.cod, f.dom);       // Hom(P₁^f, P₀^g)
  const int nrows = u_space.dim() + v_space.dim();
  FpMat m(nrows, tgt.dim(), A.p);
  for (int i = 0; i < u_space.dim(); ++i) {
    auto gu = amat_mul(A, g.ent, u_space.basis_matrix(i));
    auto v = tgt.vectorize(gu);
    for (int j = 0; j < tgt.dim(); ++j) m(i, j) = v[j];
  }
  for (int i = 0; i < v_space.dim(); ++i) {
    auto vf = amat_mul(A, v_space.basis_matrix(i), f.ent);
    auto v = tgt.vectorize(vf);
    for (int j = 0; j < tgt.dim(); ++j)
      m(u_space.dim() + i, j) = fp::neg(v[j], A.p);
  }
  return tgt.dim() - static_cast<long long>(m.rank());
}

struct SampledPresentation {
  ProjMap map;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
};

// Entries i.i.d. uniform over the path basis of e_i A e_j; domain/codomain
// from split_parts so there is no common summand.
inline SampledPresentation sample_presentation(const Algebra& A, const KClass& theta,
                                               std::uint64_t seed) {
  auto [p0, p1] = split_parts(theta);
  SampledPresentation s;
  s.map = zero_proj_map(A, expand_label(p0), expand_label(p1));
  s.seed = seed;
  s.prime = A.p;
  Rng rng(seed);
  for (std::size_t r = 0; r < s.map.cod.size(); ++r)
    for (std::size_t c = 0; c < s.map.dom.size(); ++c) {
      AlgEl e = A.zero_el();
      for (int b : A.hom_basis(s.map.cod[r], s.map.dom[c])) e[b] = rng.below(A.p);
      s.map.ent[r][c] = e;
    }
  return s;
}

struct EEstimate {
  long long value = 0;
  bool certified_zero = false;
  int samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
  // stream indices of the pair achieving the minimum
  std::optional<std::pair<std::uint64_t, std::uint64_t>> witness;
};

// min of e_of_pair over independently sampled pairs; a vanishing sample is an
// exact certificate that the generic value is 0, otherwise an upper bound.
inline EEstimate e_generic(const Algebra& A, const KClass& eta, const KClass& theta,
                           int samples = 5, std::uint64_t seed = 1) {
  EEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.prime = A.p;
  est.value = -1;
  for (int k = 0; k < samples; ++k) {
    std::uint64_t si = 2 * static_cast<std::uint64_t>(k);
    auto f = sample_presentation(A, eta, Rng::stream(seed, si).next());
    auto g = sample_presentation(A, theta, Rng::stream(seed, si + 1).next());
    long long e = e_of_pair(f.map, g.map);
    if (est.value < 0 || e < est.value) {
      est.value = e;
      est.witness = {si, si + 1};
    }
    if (e == 0) break;
  }
  if (est.value < 0) est.value = 0;  // zero class: empty presentation space
  est.certified_zero = (est.value == 0);
  return est;
}

inline bool is_presilting(const ProjMap& f) { return e_of_pair(f, f) == 0; }

inline std::pair<bool, std::optional<SampledPresentation>> is_rigid(
    const Algebra& A, const KClass& theta, int samples = 5, std::uint64_t seed = 1) {
  for (int k = 0; k < samples; ++k) {
    auto f = sample_presentation(A, theta, Rng::stream(seed, k).next());
    if (is_presilting(f.map)) return {true, f};
  }
  return {false, std::nullopt};
}

inline EEstimate is_tame(const Algebra& A, const KClass& theta, int samples = 5,
                         std::uint64_t seed = 1) {
  return e_generic(A, theta, theta, samples, seed);
}

}  // namespace stabfan
