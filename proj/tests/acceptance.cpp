// Acceptance harness: six end-to-end checks, one PASS/FAIL line each, with
// pinned runtime budgets. Exits nonzero if any check fails.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <stabfan/atilde.hpp>
#include <stabfan/candecomp.hpp>
#include <stabfan/io.hpp>
#include <stabfan/stability.hpp>

#include "fixtures.hpp"

using namespace stabfan;
using namespace fixtures;

namespace {

std::string g_bindir;

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

using Clock = std::chrono::steady_clock;

bool report(int num, const std::string& title, const Checker& c, double secs,
            double limit) {
  bool pass = c.ok && secs < limit;
  std::printf("%s criterion %d: %s (%.1fs, limit %.0fs)\n",
              pass ? "PASS" : "FAIL", num, title.c_str(), secs, limit);
  if (!c.ok)
    for (const auto& n : c.notes) std::printf("       - %s\n", n.c_str());
  if (c.ok && secs >= limit) std::printf("       - over time budget\n");
  return pass;
}

AlgEl arrow_sum(const Algebra& A, const std::vector<std::string>& names) {
  AlgEl e = A.zero_el();
  for (const auto& n : names) e = A.el_add(e, arrow_el(A, n));
  return e;
}

KClass random_class(Rng& rng, int n, int bound) {
  KClass k(n);
  for (auto& x : k)
    x = static_cast<long long>(rng.below(2 * bound + 1)) - bound;
  return k;
}

std::vector<KClass> distinct_of(std::vector<KClass> d) {
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

std::vector<KClass> distinct_summands(const CanonicalDecomposition& cd) {
  return distinct_of(cd.summands);
}

// ---- 1. the 3-Kronecker module with skew actions ----
bool criterion1() {
  auto t0 = Clock::now();
  Checker c;
  Algebra A = build_algebra(kronecker_spec(3), P_BIG);
  Rep X = kronecker_module(A);
  c.require(relations_vanish(X), "module is not a representation");

  // (a) every evaluation of a single presentation is singular: odd skew
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    FpMat m(3, 3, A.p);
    for (int i = 0; i < 3; ++i) {
      std::uint64_t pi = rng.below(A.p);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t s = 0; s < 3; ++s)
          m(r, s) = fp::add(m(r, s), fp::mul(pi, X.arr[i](r, s), A.p), A.p);
    }
    if (m.rank() == 3) {
      c.require(false, "det(sum p_i F_i) != 0 at trial " + std::to_string(trial));
      break;
    }
  }

  // (b) the explicit block maps for l = 2, 3 are bijective on Hom(-, X)
  AlgEl x = arrow_el(A, "a2"), y = arrow_el(A, "a1"), a3 = arrow_el(A, "a3");
  AlgEl zero = A.zero_el();
  ProjMap z2 = zero_proj_map(A, {0, 0}, {1, 1});
  z2.ent = {{x, a3}, {a3, y}};
  ProjMap z3 = zero_proj_map(A, {0, 0, 0}, {1, 1, 1});
  z3.ent = {{x, a3, zero}, {a3, y, y}, {zero, A.el_add(y, a3), x}};
  c.require(class_of_map(z2) == KClass{2, -2}, "z2 class");
  c.require(class_of_map(z3) == KClass{3, -3}, "z3 class");
  c.require(morphism_membership(X, z2, MorWhich::W), "z2 not bijective on Hom(-,X)");
  c.require(morphism_membership(X, z3, MorWhich::W), "z3 not bijective on Hom(-,X)");

  // hence the monoid probe matches Z_{>=0} minus {1} on {1,2,3}
  auto table = monoid_probe(X, KClass{1, -1}, 3, 100, 1);
  c.require(table.size() == 3, "monoid table size");
  c.require(!table[0].certified_in && table[0].samples_tried >= 100,
            "l=1 should stay out across >= 100 samples");
  c.require(table[1].certified_in, "l=2 should be certified in");
  c.require(table[2].certified_in, "l=3 should be certified in");

  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return report(1, "skew 3-Kronecker module, monoid {1:out, 2:in, 3:in}", c, secs, 5);
}

// ---- 2. the triangular algebra B where the ray condition fails ----
bool criterion2() {
  auto t0 = Clock::now();
  Checker c;
  Algebra B = build_algebra(algebra_b_spec(), P_BIG);
  KClass p0{1, 0, 0}, diff{0, 1, -1};

  for (int l : {2, 3}) {
    auto est = e_generic(B, kclass_scale(l, diff), p0);
    c.require(est.certified_zero,
              "E(l(P1-P2), P0) not certified 0 at l=" + std::to_string(l));
  }
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto est = e_generic(B, diff, p0, 5, seed);
    c.require(!est.certified_zero && est.value > 0,
              "E(P1-P2, P0) vanished at seed " + std::to_string(seed));
  }

  KClass eta{1, 1, -1};
  auto cd1 = canonical_decomposition(B, eta);
  c.require(cd1.summands == std::vector<KClass>{eta}, "eta should be indecomposable");
  auto cd2 = canonical_decomposition(B, kclass_scale(2, eta));
  std::vector<KClass> expect{{0, 2, -2}, {1, 0, 0}, {1, 0, 0}};
  std::sort(expect.begin(), expect.end());
  c.require(cd2.summands == expect, "2*eta should split as {P0, P0, 2P1-2P2}");

  auto rp = ray_condition_probe(B, eta, 3);
  c.require(rp.theta_indecomposable && rp.first_failure == 2,
            "ray condition should first fail at l=2");

  ConeQ cone1 = cone_from_generators(3, {to_ratvec(eta)});
  std::vector<RatVec> gens2;
  for (const auto& s : distinct_summands(cd2)) gens2.push_back(to_ratvec(s));
  ConeQ cone2 = cone_from_generators(3, gens2);
  c.require(cone_subset(cone1, cone2) && !cone_subset(cone2, cone1),
            "cone(ind eta) should be strictly inside cone(ind 2 eta)");

  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return report(2, "algebra B: ray condition fails at l=2", c, secs, 30);
}

// ---- 3. hereditary A3 sweep ----
bool criterion3() {
  auto t0 = Clock::now();
  Checker c;
  Algebra A = build_algebra(a3_spec(), P_BIG);
  std::vector<KClass> sweep;
  for (long long a = -3; a <= 3; ++a)
    for (long long b = -3; b <= 3; ++b)
      for (long long d = -3; d <= 3; ++d)
        if (a || b || d) sweep.push_back({a, b, d});
  c.require(sweep.size() == 342, "sweep size");

  std::vector<std::vector<KClass>> results;
  for (const KClass& theta : sweep) {
    std::vector<KClass> first;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto cd = canonical_decomposition(A, theta, 5, seed);
      if (seed == 1) {
        first = cd.summands;
        c.require(distinct_summands(cd).size() <= 3, "more than 3 distinct summands");
        // sign coherence: no vertex is strictly positive in one summand
        // and strictly negative in another
        for (std::size_t v = 0; v < 3; ++v) {
          bool pos = false, neg = false;
          for (const auto& s : cd.summands) {
            if (s[v] > 0) pos = true;
            if (s[v] < 0) neg = true;
          }
          c.require(!(pos && neg), "summands not sign-coherent at a vertex");
        }
        // distinct summands linearly independent
        std::vector<RatVec> d;
        for (const auto& s : distinct_summands(cd)) d.push_back(to_ratvec(s));
        c.require(rat_rank(d) == d.size(), "summands linearly dependent");
      } else {
        c.require(cd.summands == first, "seeds disagree");
      }
      if (!c.ok) break;
    }
    results.push_back(first);
    if (!c.ok) break;
  }

  // interior of the summand cone reproduces the same indecomposables
  Rng rng(7);
  for (int trial = 0; trial < 50 && c.ok; ++trial) {
    std::size_t pick = rng.below(sweep.size());
    auto ind = distinct_of(results[pick]);
    KClass eta(3, 0);
    for (const auto& s : ind)
      eta = kclass_add(eta, kclass_scale(1 + static_cast<long long>(rng.below(3)), s));
    auto cde = canonical_decomposition(A, eta);
    c.require(distinct_summands(cde) == ind, "ind(eta) != ind(theta) inside the cone");
  }

  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return report(3, "A3 sweep: 342 classes x 5 seeds, cone interiors", c, secs, 300);
}

// ---- 4. Kronecker vs its A2 quotient ----
bool criterion4() {
  auto t0 = Clock::now();
  Checker c;
  Algebra K = build_algebra(kronecker_spec(2), P_BIG);
  KClass theta{2, -1};
  auto cd = canonical_decomposition(K, theta);
  c.require(cd.summands == std::vector<KClass>{theta}, "2P1-P2 should be indecomposable");
  auto [rigid, wit] = is_rigid(K, theta);
  c.require(rigid, "2P1-P2 should be rigid");

  Algebra A2 = build_algebra(a2_spec(), P_BIG);
  auto cdq = canonical_decomposition(A2, theta);
  std::vector<KClass> expect{{1, -1}, {1, 0}};
  c.require(cdq.summands == expect, "quotient image should split as {P1, P1-P2}");

  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return report(4, "Kronecker 2P1-P2 rigid, splits over the A2 quotient", c, secs, 1);
}

// ---- 5. the doubled-cycle atlas at n = 3 ----
bool criterion5() {
  auto t0 = Clock::now();
  Checker c;
  Algebra Ae = build_atilde(3, 5);
  Algebra Ab = build_atilde(3, P_BIG);

  auto bands = enumerate_bands(Ae, 12);
  for (const Band& b : bands) {
    Rep M = band_module(Ae, b, 2);
    if (is_brick(M))
      c.require(M.dimv() == std::vector<long long>{1, 1, 1},
                "brick band without dimension vector (1,1,1)");
  }

  auto atlas = decompose_H(3, 8);
  c.require(atlas.size() == 13, "atlas should have 13 classes");
  std::set<KClass> rays;
  int sectors = 0, zero = 0;
  for (const auto& h : atlas) {
    std::size_t d = h.cone.dim();
    if (d == 0) ++zero;
    if (d == 2) ++sectors;
    if (d == 1) {
      KClass r(3);
      for (int i = 0; i < 3; ++i) r[i] = h.cone.rays[0][i].num();
      rays.insert(r);
    }
  }
  c.require(zero == 1 && sectors == 6 && rays.size() == 6, "atlas shape 1+6+6");
  // closures tile H: every sampled point of H lies in exactly one relint
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    long long a = static_cast<long long>(rng.below(19)) - 9;
    long long b = static_cast<long long>(rng.below(19)) - 9;
    RatVec pt{Rat(a), Rat(b), Rat(-a - b)};
    int hits = 0;
    for (const auto& h : atlas)
      if (cone_contains_relint(h.cone, pt)) ++hits;
    c.require(hits == 1, "H point not in exactly one class");
    if (hits != 1) break;
  }

  auto de = d_eta(Ae, KClass{1, -1, 0});
  ConeQ expect = cone_from_generators(
      3, {{Rat(1), Rat(0), Rat(-1)}, {Rat(0), Rat(-1), Rat(1)}});
  c.require(cone_eq(de.cone, expect), "D(eta_12) != cone{eta_13, eta_32}");

  for (const KClass& r : rays) {
    auto cd = canonical_decomposition(Ab, r);
    c.require(cd.summands == std::vector<KClass>{r}, "eta ray decomposed");
    auto [rigid, wit] = is_rigid(Ab, r);
    c.require(!rigid, "eta ray should be non-rigid");
  }
  // each ray carries a 2-dimensional wall via its brick band module
  int matched = 0;
  for (const Band& b : enumerate_bands(Ae, 3)) {
    Rep M = band_module(Ae, b, 2);
    ConeQ w = wall_of(M);
    c.require(w.dim() == 2, "band wall not 2-dimensional");
    if (rays.count(eta_of_band(Ae, b, 2))) ++matched;
  }
  c.require(matched == 6, "band classes should cover the 6 rays");

  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return report(5, "doubled-cycle atlas: bands, 13 classes, gray sector", c, secs, 120);
}

// ---- 6. property suites ----
bool criterion6() {
  auto t0 = Clock::now();
  Checker c;
  std::vector<Algebra> algs;
  algs.push_back(build_algebra(a2_spec(), P_BIG));
  algs.push_back(build_algebra(a3_spec(), P_BIG));
  algs.push_back(build_algebra(kronecker_spec(3), P_BIG));
  algs.push_back(build_algebra(algebra_b_spec(), P_BIG));
  algs.push_back(build_atilde(3, P_BIG));

  // (a) duality: E(f,g) = dim Hom(Cok g, Ker_nu f), and
  // (b) theta(X) = dim Hom(C_f, X) - dim Hom(X, K_nu f)
  Rng rng(99);
  int pairs = 0, triples = 0;
  while (pairs < 200) {
    const Algebra& A = algs[pairs % algs.size()];
    KClass eta = random_class(rng, A.n_vertices(), 2);
    KClass th = random_class(rng, A.n_vertices(), 2);
    if (kclass_is_zero(eta) || kclass_is_zero(th)) continue;
    auto f = sample_presentation(A, eta, rng.next());
    auto g = sample_presentation(A, th, rng.next());
    long long e = e_of_pair(f.map, g.map);
    long long oracle = hom_dim(cokernel(g.map), kernel_nu(f.map));
    c.require(e == oracle, "duality mismatch at pair " + std::to_string(pairs));
    if (e != oracle) break;
    ++pairs;
  }
  while (triples < 200) {
    const Algebra& A = algs[triples % algs.size()];
    KClass th = random_class(rng, A.n_vertices(), 2);
    if (kclass_is_zero(th)) continue;
    auto f = sample_presentation(A, th, rng.next());
    KClass xc = random_class(rng, A.n_vertices(), 2);
    if (kclass_is_zero(xc)) continue;
    Rep X = cokernel(sample_presentation(A, xc, rng.next()).map);
    long long lhs = 0;
    auto dv = X.dimv();
    for (int v = 0; v < A.n_vertices(); ++v) lhs += th[v] * dv[v];
    long long rhs = hom_dim(cokernel(f.map), X) - hom_dim(X, kernel_nu(f.map));
    c.require(lhs == rhs, "theta(X) identity fails at triple " + std::to_string(triples));
    if (lhs != rhs) break;
    ++triples;
  }

  // (c) >= 100 filtrations re-verified
  std::vector<Algebra> small;
  small.push_back(build_algebra(a2_spec(), 2));
  small.push_back(build_algebra(a3_spec(), 2));
  small.push_back(build_algebra(kronecker_spec(2), 3));
  int verified = 0;
  std::uint64_t attempts = 0;
  while (verified < 100 && attempts < 4000) {
    ++attempts;
    const Algebra& A = small[attempts % small.size()];
    KClass xc = random_class(rng, A.n_vertices(), 2);
    if (kclass_is_zero(xc)) continue;
    Rep X = cokernel(sample_presentation(A, xc, rng.next()).map);
    if (X.dim_total() == 0 || X.dim_total() > 6) continue;
    KClass th = random_class(rng, A.n_vertices(), 2);
    try {
      auto hn = hn_filtration(X, th);
      std::vector<long long> total(A.n_vertices(), 0);
      Rat prev(-1);
      for (const auto& l : hn.layers) {
        c.require(prev < l.t, "t values not strictly increasing");
        prev = l.t;
        auto dv = l.subquotient.dimv();
        for (int v = 0; v < A.n_vertices(); ++v) total[v] += dv[v];
      }
      c.require(total == X.dimv(), "layer dims do not add up");
      ++verified;
    } catch (const NotInTbar&) {
    } catch (const EnumerationBudgetExceeded&) {
    }
    if (!c.ok) break;
  }
  c.require(verified >= 100, "fewer than 100 filtrations verified");

  // (d) presilting sets found during a rigid sweep pass the Z-basis test
  Algebra A3 = build_algebra(a3_spec(), P_BIG);
  int presilting_sets = 0;
  for (long long a = -2; a <= 2; ++a)
    for (long long b = -2; b <= 2; ++b)
      for (long long d = -2; d <= 2; ++d) {
        if (!a && !b && !d) continue;
        KClass theta{a, b, d};
        auto cd = canonical_decomposition(A3, theta);
        if (!cd.pairwise_zero || cd.e_ff != 0) continue;
        // keep one piece per distinct class: the basic presilting object
        std::vector<ProjMap> U;
        std::set<KClass> seen;
        for (const auto& pc : cd.pieces)
          if (seen.insert(class_of_map(pc.map)).second) U.push_back(pc.map);
        try {
          auto pc = cone_of_presilting(U);
          c.require(pc.zbasis_ok, "presilting set fails the Z-basis extension test");
          ++presilting_sets;
        } catch (const NotPresilting&) {
        }
      }
  c.require(presilting_sets > 50, "too few presilting sets exercised");

  // (e) decomposition certificates re-verify byte-exactly via the CLI
  Algebra B = build_algebra(algebra_b_spec(), P_BIG);
  KClass eta{2, 2, -2};
  Json doc1 = decompose_result(B, 2, eta, canonical_decomposition(B, eta));
  doc1["meta"]["algebra"] = quiver_spec_to_json(algebra_b_spec());
  Json doc2 = decompose_result(B, 2, eta, canonical_decomposition(B, eta));
  doc2["meta"]["algebra"] = quiver_spec_to_json(algebra_b_spec());
  c.require(dump_result(doc1) == dump_result(doc2), "re-run is not byte-identical");
  c.require(verify_decompose(B, doc1), "certificates fail library re-verification");
  std::string tmp = "/tmp/stabfan_acceptance_decompose.json";
  {
    std::ofstream out(tmp);
    out << dump_result(doc1);
  }
  std::string cmd = "'" + g_bindir + "/stabfan' verify '" + tmp + "' > /dev/null 2>&1";
  c.require(std::system(cmd.c_str()) == 0, "verify subcommand rejected the document");

  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return report(6, "property suites: duality, pairing, HN, Z-basis, verify", c, secs, 600);
}

}  // namespace

int main(int, char** argv) {
  g_bindir = std::filesystem::path(argv[0]).parent_path().string();
  if (g_bindir.empty()) g_bindir = ".";
  auto t0 = Clock::now();
  bool ok = true;
  ok &= criterion1();
  ok &= criterion2();
  ok &= criterion3();
  ok &= criterion4();
  ok &= criterion5();
  ok &= criterion6();
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("%s total (%.1fs, limit 600s)\n", ok && secs < 600 ? "PASS" : "FAIL",
              secs);
  return ok && secs < 600 ? 0 : 1;
}
