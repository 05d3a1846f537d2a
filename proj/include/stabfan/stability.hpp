#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "candecomp.hpp"
#include "cone.hpp"
#include "einv.hpp"
#include "errors.hpp"
#include "kgrp.hpp"
#include "rat.hpp"
#include "rep.hpp"

namespace stabfan {

// ---- semistable membership ----

enum class Which { T, Tbar, F, Fbar, W };
enum class Verdict { In, Out, Unknown };

struct MembershipVerdict {
  Verdict value = Verdict::Unknown;
  // Out: a violating sub/factor dimension vector. In: empty.
  std::optional<DimVector> certificate;
  std::uint64_t field_tag = 0;
  // true when dimv(X) ∈ {0,1}ⁿ: the submodule lattice is field-independent
  bool field_independent = false;
};

namespace detail {

inline bool zero_one_dims(const Rep& X) {
  for (int d : X.dims)
    if (d > 1) return false;
  return true;
}

}  // namespace detail

// θ with rational coefficients; the integer overload wraps this.
inline MembershipVerdict semistable_membership_q(const Rep& X, const RatVec& theta,
                                                 Which which,
                                                 std::uint64_t budget = (1u << 24)) {
  MembershipVerdict v;
  v.field_tag = X.A->p;
  v.field_independent = detail::zero_one_dims(X);
  std::vector<Submodule> subs;
  try {
    subs = submodule_reps(X, budget);
  } catch (const EnumerationBudgetExceeded&) {
    v.value = Verdict::Unknown;
    return v;
  }
  auto total = X.dimv();
  auto check = [&](bool on_factors, bool strict) -> std::optional<DimVector> {
    for (const auto& s : subs) {
      DimVector d(total.size());
      for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = on_factors ? total[i] - s.dimv[i] : s.dimv[i];
      bool zero = true;
      for (long long x : d)
        if (x) zero = false;
      if (zero) continue;
      Rat val = euler_pair_q(theta, d);
      int sgn = on_factors ? val.sign() : -val.sign();
      if (strict ? sgn <= 0 : sgn < 0) return d;
    }
    return std::nullopt;
  };
  std::optional<DimVector> bad;
  switch (which) {
    case Which::T: bad = check(true, true); break;
    case Which::Tbar: bad = check(true, false); break;
    case Which::F: bad = check(false, true); break;
    case Which::Fbar: bad = check(false, false); break;
    case Which::W:
      bad = check(true, false);
      if (!bad) bad = check(false, false);
      break;
  }
  if (bad) {
    v.value = Verdict::Out;
    v.certificate = bad;
  } else {
    v.value = Verdict::In;
  }
  return v;
}

inline MembershipVerdict semistable_membership(const Rep& X, const KClass& theta,
                                               Which which,
                                               std::uint64_t budget = (1u << 24)) {
  return semistable_membership_q(X, to_ratvec(theta), which, budget);
}

// ---- morphism-level membership: rank tests on Hom(f, X) ----

enum class MorWhich { Tbar, Fbar, W };

inline bool morphism_membership(const Rep& X, const ProjMap& f, MorWhich which) {
  FpMat m = hom_f_mat(f, X);  // Hom(P₀,X) → Hom(P₁,X), row convention
  std::size_t rank = m.rank();
  bool surj = rank == m.cols();
  bool inj = rank == m.rows();
  switch (which) {
    case MorWhich::Tbar: return surj;
    case MorWhich::Fbar: return inj;
    case MorWhich::W: return surj && inj;
  }
  return false;
}

// ---- S_{X,θ} monoid probe ----

struct MonoidStatus {
  int ell = 0;
  bool certified_in = false;           // witness found
  std::optional<std::uint64_t> witness_stream;  // stream index of the witness
  int samples_tried = 0;
};

// For each ℓ, search sampled f realizing ℓθ for Hom(f,X) surjective.
// A hit certifies membership; misses only record failure (semi-decision).
inline std::vector<MonoidStatus> monoid_probe(const Rep& X, const KClass& theta,
                                              int lmax, int samples = 100,
                                              std::uint64_t seed = 1) {
  const Algebra& A = *X.A;
  std::vector<MonoidStatus> out;
  for (int l = 1; l <= lmax; ++l) {
    MonoidStatus st;
    st.ell = l;
    KClass lt = kclass_scale(l, theta);
    for (int k = 0; k < samples; ++k) {
      std::uint64_t si = static_cast<std::uint64_t>(l) * samples + k;
      auto f = sample_presentation(A, lt, Rng::stream(seed, si).next());
      ++st.samples_tried;
      if (morphism_membership(X, f.map, MorWhich::Tbar)) {
        st.certified_in = true;
        st.witness_stream = si;
        break;
      }
    }
    out.push_back(st);
  }
  return out;
}

// ---- walls and D-cones ----

inline std::vector<RatVec> dimvs_to_ratvecs(const std::set<std::vector<long long>>& ds,
                                            bool negate = false) {
  std::vector<RatVec> out;
  for (const auto& d : ds) {
    bool zero = true;
    for (long long x : d)
      if (x) zero = false;
    if (zero) continue;
    RatVec v(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) v[i] = Rat(negate ? -d[i] : d[i]);
    out.push_back(v);
  }
  return out;
}

// Θ_X = {θ : θ(dimv X) = 0, θ(d) ≥ 0 for all factor dims d}
inline ConeQ wall_of(const Rep& X, std::uint64_t budget = (1u << 24)) {
  const std::size_t n = X.A->n_vertices();
  auto facs = factor_dimvs(X, budget);
  std::vector<RatVec> ineqs = dimvs_to_ratvecs(facs);
  RatVec eq(n);
  auto total = X.dimv();
  for (std::size_t i = 0; i < n; ++i) eq[i] = Rat(total[i]);
  return cone_from_inequalities(n, ineqs, {eq});
}

// D_f = {θ : θ(d) ≥ 0 ∀ d factor dim of C_f, θ(d′) ≤ 0 ∀ d′ sub dim of K_{νf}}
inline ConeQ d_cone(const ProjMap& f, std::uint64_t budget = (1u << 24)) {
  const std::size_t n = f.A->n_vertices();
  Rep cf = cokernel(f);
  Rep knf = kernel_nu(f);
  std::vector<RatVec> ineqs = dimvs_to_ratvecs(factor_dimvs(cf, budget));
  auto neg = dimvs_to_ratvecs(sub_dimvs(knf, budget), /*negate=*/true);
  ineqs.insert(ineqs.end(), neg.begin(), neg.end());
  return cone_from_inequalities(n, ineqs);
}

struct DEtaResult {
  ConeQ cone;
  std::uint64_t witness_stream = 0;
  bool certified = false;  // only when E-tameness of the class is certified
};

// D of the generic presentation: keep the max-dimensional D_f among samples.
inline DEtaResult d_eta(const Algebra& A, const KClass& eta, int samples = 5,
                        std::uint64_t seed = 1, std::uint64_t budget = (1u << 24)) {
  DEtaResult best;
  std::size_t best_dim = 0;
  for (int k = 0; k < samples; ++k) {
    auto f = sample_presentation(A, eta, Rng::stream(seed, k).next());
    ConeQ c = d_cone(f.map, budget);
    if (k == 0 || c.dim() > best_dim) {
      best.cone = c;
      best.witness_stream = k;
      best_dim = c.dim();
    }
  }
  best.certified = is_tame(A, eta, samples, seed).certified_zero;
  return best;
}

// ---- presilting cones ----

struct PresiltingCone {
  ConeQ closed;
  std::vector<KClass> classes;
  bool zbasis_ok = false;
};

inline PresiltingCone cone_of_presilting(const std::vector<ProjMap>& U) {
  PresiltingCone out;
  if (U.empty()) throw NotPresilting("empty presilting collection");
  const std::size_t n = U[0].A->n_vertices();
  for (const auto& u : U)
    if (e_of_pair(u, u) != 0) throw NotPresilting("self-extension present");
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = 0; j < U.size(); ++j)
      if (i != j && e_of_pair(U[i], U[j]) != 0)
        throw NotPresilting("pair with nonvanishing E");
  std::vector<RatVec> gens;
  std::vector<std::vector<long long>> zrows;
  for (const auto& u : U) {
    KClass c = class_of_map(u);
    out.classes.push_back(c);
    gens.push_back(to_ratvec(c));
    zrows.push_back(c);
  }
  out.closed = cone_from_generators(n, gens);
  out.zbasis_ok = zbasis_extendable(zrows);
  return out;
}

// ---- Harder–Narasimhan filtration along θ(t) = (1−t)θ − tρ ----

struct HNLayer {
  Rat t;
  Rep subquotient;
};

struct HNFiltration {
  std::vector<HNLayer> layers;
  std::vector<Rep> chain;  // X = chain[0] ⊃ chain[1] ⊃ … ⊃ 0
};

inline HNFiltration hn_filtration(const Rep& X, const KClass& theta,
                                  std::uint64_t budget = (1u << 24)) {
  const std::size_t n = X.A->n_vertices();
  {
    auto m = semistable_membership(X, theta, Which::Tbar, budget);
    if (m.value == Verdict::Out)
      throw NotInTbar("hn_filtration: input not in the closed torsion class");
    if (m.value == Verdict::Unknown)
      throw EnumerationBudgetExceeded("hn_filtration: enumeration infeasible");
  }
  RatVec th = to_ratvec(theta);
  RatVec rho(n, Rat(1));  // ρ = Σ[P(i)]
  HNFiltration hn;
  Rep cur = X;
  hn.chain.push_back(cur);
  Rat tprev(-1);
  while (true) {
    long long total = 0;
    for (int d : cur.dims) total += d;
    if (total == 0) break;
    auto subs = submodule_reps(cur, budget);
    auto curdv = cur.dimv();
    // t₁ = min over nonzero factor dims of θ(d) / (θ(d) + ρ(d))
    std::optional<Rat> t1;
    for (const auto& s : subs) {
      DimVector d(n);
      bool zero = true;
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = curdv[i] - s.dimv[i];
        if (d[i]) zero = false;
      }
      if (zero) continue;
      Rat num = euler_pair_q(th, d);
      Rat den = num + euler_pair_q(rho, d);
      Rat t = num / den;
      if (!t1 || t < *t1) t1 = t;
    }
    RatVec thp(n);
    for (std::size_t i = 0; i < n; ++i)
      thp[i] = (Rat(1) - *t1) * th[i] - *t1 * rho[i];
    // smallest submodule whose quotient pairs to zero against θ(t₁);
    // ties: lexicographically smallest dimv, then enumeration order
    const Submodule* pick = nullptr;
    long long pick_dim = 0;
    for (const auto& s : subs) {
      DimVector d(n);
      bool zero = true;
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = curdv[i] - s.dimv[i];
        if (d[i]) zero = false;
      }
      if (zero) continue;
      if (!euler_pair_q(thp, d).is_zero()) continue;
      long long sd = 0;
      for (long long x : s.dimv) sd += x;
      if (!pick || sd < pick_dim ||
          (sd == pick_dim && s.dimv < pick->dimv)) {
        pick = &s;
        pick_dim = sd;
      }
    }
    if (!pick) throw VerificationFailed("hn_filtration: no layer submodule found");
    Rep layer = quotient_rep(cur, pick->bases);
    // re-verify: strict t increase and layer semistability at θ(t₁)
    if (!(tprev < *t1))
      throw VerificationFailed("hn_filtration: parameter not strictly increasing");
    if (semistable_membership_q(layer, thp, Which::W, budget).value != Verdict::In)
      throw VerificationFailed("hn_filtration: layer is not semistable");
    hn.layers.push_back({*t1, layer});
    tprev = *t1;
    cur = sub_rep(cur, pick->bases);
    hn.chain.push_back(cur);
  }
  return hn;
}

// ---- θ-stable composition factors inside W_θ ----

inline void stable_factors_rec(const Rep& X, const RatVec& theta,
                               std::uint64_t budget, std::vector<Rep>& out) {
  long long total = 0;
  for (int d : X.dims) total += d;
  if (total == 0) return;
  auto subs = submodule_reps(X, budget);
  const Submodule* pick = nullptr;
  long long pick_dim = 0;
  for (const auto& s : subs) {
    long long sd = 0;
    for (long long x : s.dimv) sd += x;
    if (sd == 0 || sd == total) continue;
    if (!euler_pair_q(theta, s.dimv).is_zero()) continue;
    if (!pick || sd < pick_dim || (sd == pick_dim && s.dimv < pick->dimv)) {
      pick = &s;
      pick_dim = sd;
    }
  }
  if (!pick) {
    out.push_back(X);  // θ-stable leaf
    return;
  }
  stable_factors_rec(sub_rep(X, pick->bases), theta, budget, out);
  stable_factors_rec(quotient_rep(X, pick->bases), theta, budget, out);
}

inline std::vector<Rep> semistable_composition_factors(const Rep& X, const KClass& theta,
                                                       std::uint64_t budget = (1u << 24)) {
  auto m = semistable_membership(X, theta, Which::W, budget);
  if (m.value != Verdict::In)
    throw VerificationFailed("composition factors: input not θ-semistable");
  std::vector<Rep> out;
  stable_factors_rec(X, to_ratvec(theta), budget, out);
  return out;
}

// ---- TF comparison (semi-decision) ----

enum class TFVerdict { Equivalent, Distinct, Unknown };

struct TFResult {
  TFVerdict value = TFVerdict::Unknown;
  std::string method;  // "equal" | "ray" | "ind-match" | "cone" | "brick-wall"
  std::optional<DimVector> witness_dimv;  // refuting brick
  std::optional<Rat> witness_t;           // crossing parameter on [θ, η]
};

namespace detail {

inline ConeQ ind_cone(const CanonicalDecomposition& cd, std::size_t n) {
  std::vector<RatVec> gens;
  for (const auto& c : cd.summands) gens.push_back(to_ratvec(c));
  return cone_from_generators(n, gens);
}

inline bool all_tame(const Algebra& A, const CanonicalDecomposition& cd,
                     int samples, std::uint64_t seed) {
  for (const auto& c : cd.summands)
    if (!is_tame(A, c, samples, seed).certified_zero) return false;
  return true;
}

inline std::set<std::vector<long long>> primitive_rays(
    const CanonicalDecomposition& cd) {
  std::set<std::vector<long long>> rays;
  for (const auto& c : cd.summands) {
    RatVec p = primitive(to_ratvec(c));
    std::vector<long long> r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i].num();
    rays.insert(r);
  }
  return rays;
}

}  // namespace detail

// θ ∼ η when the associated (closed and open) torsion pairs agree.
// A_enum is the same quiver algebra over a small prime, used for brick
// walls via submodule enumeration.
inline TFResult tf_compare(const Algebra& A, const Algebra& A_enum,
                           const KClass& theta, const KClass& eta,
                           int samples = 5, std::uint64_t seed = 1,
                           std::uint64_t budget = (1u << 24)) {
  TFResult res;
  const std::size_t n = A.n_vertices();
  if (theta == eta) {
    res.value = TFVerdict::Equivalent;
    res.method = "equal";
    return res;
  }
  if (!kclass_is_zero(theta) && !kclass_is_zero(eta)) {
    RatVec pt = primitive(to_ratvec(theta)), pe = primitive(to_ratvec(eta));
    if (detail::ratvec_eq(pt, pe)) {
      // same ray, positive scaling only
      bool pos = false;
      for (std::size_t i = 0; i < n; ++i)
        if (theta[i] != 0) pos = (theta[i] > 0) == (eta[i] > 0);
      if (pos) {
        res.value = TFVerdict::Equivalent;
        res.method = "ray";
        return res;
      }
    }
  }
  auto cdt = canonical_decomposition(A, theta, samples, seed);
  auto cde = canonical_decomposition(A, eta, samples, seed);
  if (cdt.pairwise_zero && cde.pairwise_zero) {
    if (detail::all_tame(A, cdt, samples, seed) &&
        detail::all_tame(A, cde, samples, seed) &&
        detail::primitive_rays(cdt) == detail::primitive_rays(cde)) {
      res.value = TFVerdict::Equivalent;
      res.method = "ind-match";
      return res;
    }
    // cone route: both points in the open cone on one side's summands
    ConeQ ct = detail::ind_cone(cdt, n);
    ConeQ ce = detail::ind_cone(cde, n);
    if (cone_contains_relint(ct, to_ratvec(eta)) ||
        cone_contains_relint(ce, to_ratvec(theta))) {
      res.value = TFVerdict::Equivalent;
      res.method = "cone";
      return res;
    }
  }
  // refutation: a brick whose wall meets [θ, η] in exactly one point
  std::vector<Rep> candidates;
  auto add_cands = [&](const KClass& c) {
    if (kclass_is_zero(c)) return;
    for (int k = 0; k < samples; ++k) {
      auto f = sample_presentation(A_enum, c, Rng::stream(seed + 17, k).next());
      candidates.push_back(cokernel(f.map));
    }
  };
  add_cands(theta);
  add_cands(eta);
  for (const auto& c : cdt.summands) add_cands(c);
  for (const auto& c : cde.summands) add_cands(c);
  for (int j = 1; j < 4; ++j)
    add_cands(kclass_add(kclass_scale(j, theta), kclass_scale(4 - j, eta)));
  for (const Rep& S : candidates) {
    long long tot = 0;
    for (int d : S.dims) tot += d;
    if (tot == 0 || !is_brick(S)) continue;
    DimVector dv = S.dimv();
    long long a = euler_pair(theta, dv), b = euler_pair(eta, dv);
    if (a == 0 && b == 0) continue;             // wall could contain the segment
    if (a > 0 && b > 0) continue;               // never meets
    if (a < 0 && b < 0) continue;
    Rat tstar = Rat(a) / Rat(a - b);            // root of (1−t)a + tb
    RatVec mid(n);
    for (std::size_t i = 0; i < n; ++i)
      mid[i] = (Rat(1) - tstar) * Rat(theta[i]) + tstar * Rat(eta[i]);
    auto m = semistable_membership_q(S, mid, Which::W, budget);
    if (m.value == Verdict::In) {
      res.value = TFVerdict::Distinct;
      res.method = "brick-wall";
      res.witness_dimv = dv;
      res.witness_t = tstar;
      return res;
    }
  }
  res.value = TFVerdict::Unknown;
  res.method = "exhausted";
  return res;
}

}  // namespace stabfan
