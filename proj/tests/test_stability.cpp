#include <algorithm>

#include <catch2/catch_amalgamated.hpp>
#include <stabfan/stability.hpp>

#include "fixtures.hpp"

using namespace stabfan;
using namespace fixtures;

namespace {
RatVec rv(std::initializer_list<long long> xs) {
  RatVec v;
  for (auto x : xs) v.push_back(Rat(x));
  return v;
}
}  // namespace

TEST_CASE("membership basics for a simple module") {
  Algebra A = build_algebra(a2_spec(), P_BIG);
  Rep s1 = simple_rep(A, 0);
  REQUIRE(semistable_membership(s1, {1, 0}, Which::T).value == Verdict::In);
  REQUIRE(semistable_membership(s1, {-1, 0}, Which::F).value == Verdict::In);
  auto out = semistable_membership(s1, {-1, 0}, Which::T);
  REQUIRE(out.value == Verdict::Out);
  REQUIRE(out.certificate == DimVector{1, 0});
  REQUIRE(out.field_independent);
  // W needs the pairing to vanish
  REQUIRE(semistable_membership(s1, {0, 5}, Which::W).value == Verdict::In);
  REQUIRE(semistable_membership(s1, {1, 0}, Which::W).value == Verdict::Out);
}

TEST_CASE("kronecker module is semistable for (1,-1) at two small fields") {
  for (std::uint64_t p : {2ull, 3ull}) {
    Algebra A = build_algebra(kronecker_spec(3), p);
    Rep X = kronecker_module(A);
    REQUIRE(relations_vanish(X));
    auto m = semistable_membership(X, {1, -1}, Which::W);
    REQUIRE(m.value == Verdict::In);
    REQUIRE(m.field_tag == p);
  }
}

TEST_CASE("scale invariance of membership") {
  Algebra A = build_algebra(a3_spec(), 3);
  Rng rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    auto f = sample_presentation(A, {1, static_cast<long long>(rng.below(3)) - 1, -1},
                                 rng.next());
    Rep X = cokernel(f.map);
    for (auto w : {Which::T, Which::Tbar, Which::F, Which::Fbar, Which::W}) {
      KClass th{2, -1, 1};
      REQUIRE(semistable_membership(X, th, w).value ==
              semistable_membership(X, kclass_scale(3, th), w).value);
    }
  }
}

TEST_CASE("additivity: Tbar for eta and theta implies Tbar for the sum") {
  Algebra A = build_algebra(a3_spec(), 3);
  Rng rng(77);
  KClass eta{1, 0, -1}, theta{0, 1, -1};
  for (int trial = 0; trial < 10; ++trial) {
    KClass c{static_cast<long long>(rng.below(3)),
             static_cast<long long>(rng.below(3)) - 1, -1};
    auto f = sample_presentation(A, c, rng.next());
    Rep X = cokernel(f.map);
    if (semistable_membership(X, eta, Which::Tbar).value == Verdict::In &&
        semistable_membership(X, theta, Which::Tbar).value == Verdict::In)
      REQUIRE(semistable_membership(X, kclass_add(eta, theta), Which::Tbar).value ==
              Verdict::In);
  }
}

TEST_CASE("morphism membership: cokernel and nu-kernel witnesses") {
  Algebra A = build_algebra(a3_spec(), P_BIG);
  Rng rng(9);
  for (int trial = 0; trial < 8; ++trial) {
    KClass c{2, -1, static_cast<long long>(rng.below(3)) - 1};
    auto f = sample_presentation(A, c, rng.next());
    REQUIRE(morphism_membership(cokernel(f.map), f.map, MorWhich::Tbar));
    REQUIRE(morphism_membership(kernel_nu(f.map), f.map, MorWhich::Fbar));
  }
}

TEST_CASE("kronecker module: single-copy samples are never bijective") {
  Algebra A = build_algebra(kronecker_spec(3), P_BIG);
  Rep X = kronecker_module(A);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto f = sample_presentation(A, {1, -1}, seed);
    REQUIRE(!morphism_membership(X, f.map, MorWhich::W));
    REQUIRE(!morphism_membership(X, f.map, MorWhich::Tbar));  // square: surj=bij
  }
}

TEST_CASE("monoid probe on the kronecker module") {
  Algebra A = build_algebra(kronecker_spec(3), P_BIG);
  Rep X = kronecker_module(A);
  auto st = monoid_probe(X, {1, -1}, 3, 30);
  REQUIRE(st.size() == 3);
  REQUIRE(!st[0].certified_in);
  REQUIRE(st[0].samples_tried == 30);
  REQUIRE(st[1].certified_in);
  REQUIRE(st[2].certified_in);
}

TEST_CASE("monoid probe trivial cases") {
  Algebra A = build_algebra(a2_spec(), P_BIG);
  Rep zero = zero_rep(A);
  for (auto& st : monoid_probe(zero, {1, -1}, 3, 5)) REQUIRE(st.certified_in);
  Rep s1 = simple_rep(A, 0);
  for (auto& st : monoid_probe(s1, {1, 0}, 3, 5)) REQUIRE(st.certified_in);
}

TEST_CASE("walls of small modules") {
  Algebra A = build_algebra(a2_spec(), P_BIG);
  ConeQ w1 = wall_of(simple_rep(A, 0));
  REQUIRE(w1.dim() == 1);
  REQUIRE(cone_contains(w1, rv({0, 1})));
  REQUIRE(cone_contains(w1, rv({0, -7})));
  REQUIRE(!cone_contains(w1, rv({1, 0})));

  ConeQ wp = wall_of(proj_rep(A, label_from_gens(A, {{0, {}}})));
  ConeQ ray = cone_from_generators(2, {rv({1, -1})});
  REQUIRE(cone_eq(wp, ray));
}

TEST_CASE("d-cone basics") {
  Algebra K = build_algebra(point_spec(), P_BIG);
  ProjMap f = zero_proj_map(K, {0}, {});
  ConeQ d = d_cone(f);
  REQUIRE(cone_contains(d, rv({5})));
  REQUIRE(cone_contains(d, rv({0})));
  REQUIRE(!cone_contains(d, rv({-1})));

  Algebra A = build_algebra(a2_spec(), P_BIG);
  ProjMap g = zero_proj_map(A, {0}, {});
  ConeQ d2 = d_cone(g);
  REQUIRE(cone_contains(d2, rv({1, 0})));
  REQUIRE(cone_contains(d2, rv({1, -1})));
  REQUIRE(cone_contains(d2, rv({0, 1})));
  REQUIRE(!cone_contains(d2, rv({0, -1})));
}

TEST_CASE("rigid class sits in the interior of its D cone") {
  Algebra A = build_algebra(kronecker_spec(2), 7);
  KClass theta{2, -1};
  auto [rigid, wit] = is_rigid(A, theta);
  REQUIRE(rigid);
  ConeQ d = d_cone(wit->map);
  REQUIRE(cone_contains_relint(d, rv({2, -1})));
  auto de = d_eta(A, theta);
  REQUIRE(cone_contains_relint(de.cone, rv({2, -1})));
}

TEST_CASE("presilting cones") {
  Algebra A3 = build_algebra(a3_spec(), P_BIG);
  std::vector<ProjMap> projs;
  for (int v = 0; v < 3; ++v) projs.push_back(zero_proj_map(A3, {v}, {}));
  auto pc = cone_of_presilting(projs);
  ConeQ orthant = cone_from_generators(
      3, {rv({1, 0, 0}), rv({0, 1, 0}), rv({0, 0, 1})});
  REQUIRE(cone_eq(pc.closed, orthant));
  REQUIRE(pc.zbasis_ok);

  Algebra A2 = build_algebra(a2_spec(), P_BIG);
  ProjMap p1 = zero_proj_map(A2, {0}, {});
  ProjMap c = single_entry_map(A2, 0, 1, arrow_el(A2, "a"));
  auto pc2 = cone_of_presilting({p1, c});
  REQUIRE(cone_eq(pc2.closed, cone_from_generators(2, {rv({1, 0}), rv({1, -1})})));
  REQUIRE(pc2.zbasis_ok);

  Algebra K3 = build_algebra(kronecker_spec(3), P_BIG);
  auto f = sample_presentation(K3, {1, -1}, 3);
  REQUIRE_THROWS_AS(cone_of_presilting({f.map}), NotPresilting);
}

TEST_CASE("HN filtration examples over A2") {
  Algebra A = build_algebra(a2_spec(), 3);
  Rep p1 = proj_rep(A, label_from_gens(A, {{0, {}}}));
  auto hn = hn_filtration(p1, {1, -1});
  REQUIRE(hn.layers.size() == 1);
  REQUIRE(hn.layers[0].t == Rat(0));
  REQUIRE(hn.layers[0].subquotient.dimv() == std::vector<long long>{1, 1});

  auto hn2 = hn_filtration(simple_rep(A, 0), {1, -1});
  REQUIRE(hn2.layers.size() == 1);
  REQUIRE(hn2.layers[0].t == Rat(1, 2));

  auto hn0 = hn_filtration(zero_rep(A), {1, -1});
  REQUIRE(hn0.layers.empty());

  Rep ss = direct_sum(simple_rep(A, 0), simple_rep(A, 1));
  auto hn3 = hn_filtration(ss, {1, 0});
  REQUIRE(hn3.layers.size() == 2);
  REQUIRE(hn3.layers[0].t == Rat(0));
  REQUIRE(hn3.layers[0].subquotient.dimv() == std::vector<long long>{0, 1});
  REQUIRE(hn3.layers[1].t == Rat(1, 2));
  REQUIRE(hn3.layers[1].subquotient.dimv() == std::vector<long long>{1, 0});

  REQUIRE_THROWS_AS(hn_filtration(ss, {1, -1}), NotInTbar);
}

TEST_CASE("HN layers re-verify on random inputs") {
  Algebra A = build_algebra(a3_spec(), 3);
  Rng rng(123);
  int done = 0;
  for (int trial = 0; trial < 30 && done < 10; ++trial) {
    KClass c{static_cast<long long>(rng.below(3)),
             static_cast<long long>(rng.below(3)) - 1,
             static_cast<long long>(rng.below(3)) - 2};
    auto f = sample_presentation(A, c, rng.next());
    Rep X = cokernel(f.map);
    KClass th{2, 1, -1};
    if (semistable_membership(X, th, Which::Tbar).value != Verdict::In) continue;
    auto hn = hn_filtration(X, th);  // internal rechecks throw on failure
    std::vector<long long> sum(3, 0);
    for (auto& l : hn.layers)
      for (int i = 0; i < 3; ++i) sum[i] += l.subquotient.dimv()[i];
    REQUIRE(sum == X.dimv());
    ++done;
  }
  REQUIRE(done >= 5);
}

TEST_CASE("stable composition factors") {
  Algebra A = build_algebra(a2_spec(), 3);
  Rep s1 = simple_rep(A, 0);
  auto fs = semistable_composition_factors(s1, {0, 1});
  REQUIRE(fs.size() == 1);
  REQUIRE(fs[0].dimv() == std::vector<long long>{1, 0});

  Rep ss = direct_sum(s1, s1);
  auto fs2 = semistable_composition_factors(ss, {0, 1});
  REQUIRE(fs2.size() == 2);
  for (auto& x : fs2) REQUIRE(x.dimv() == std::vector<long long>{1, 0});

  Algebra K = build_algebra(kronecker_spec(3), 2);
  Rep X = kronecker_module(K);
  auto fs3 = semistable_composition_factors(X, {1, -1});
  std::vector<long long> sum(2, 0);
  for (auto& x : fs3) {
    REQUIRE(x.dim_total() > 0);
    REQUIRE(euler_pair({1, -1}, x.dimv()) == 0);
    for (int i = 0; i < 2; ++i) sum[i] += x.dimv()[i];
  }
  REQUIRE(sum == X.dimv());
}

TEST_CASE("tf_compare: trivial and ray cases") {
  Algebra A = build_algebra(a3_spec(), P_BIG);
  Algebra Ae = build_algebra(a3_spec(), 3);
  auto r1 = tf_compare(A, Ae, {1, -1, 0}, {1, -1, 0});
  REQUIRE(r1.value == TFVerdict::Equivalent);
  REQUIRE(r1.method == "equal");
  auto r2 = tf_compare(A, Ae, {1, -1, 0}, {3, -3, 0});
  REQUIRE(r2.value == TFVerdict::Equivalent);
  REQUIRE(r2.method == "ray");
}

TEST_CASE("tf_compare: distinct orthant axes over A2") {
  Algebra A = build_algebra(a2_spec(), P_BIG);
  Algebra Ae = build_algebra(a2_spec(), 3);
  auto r = tf_compare(A, Ae, {1, 0}, {0, 1});
  REQUIRE(r.value == TFVerdict::Distinct);
  REQUIRE(r.witness_dimv.has_value());
  REQUIRE(*r.witness_dimv == DimVector{0, 1});
}

TEST_CASE("tf_compare: interior points of the silting cone are equivalent") {
  Algebra A = build_algebra(a3_spec(), P_BIG);
  Algebra Ae = build_algebra(a3_spec(), 3);
  auto r = tf_compare(A, Ae, {1, 1, 1}, {1, 2, 3});
  REQUIRE(r.value == TFVerdict::Equivalent);
  REQUIRE((r.method == "ind-match" || r.method == "cone"));
}

TEST_CASE("W_f membership implies W_theta membership") {
  Algebra A = build_algebra(a3_spec(), 3);
  Rng rng(55);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    KClass c{1, static_cast<long long>(rng.below(3)) - 1, -1};
    auto f = sample_presentation(A, c, rng.next());
    auto g = sample_presentation(A, {1, 0, -1}, rng.next());
    Rep X = cokernel(g.map);
    if (!morphism_membership(X, f.map, MorWhich::W)) continue;
    REQUIRE(semistable_membership(X, c, Which::W).value == Verdict::In);
    ++checked;
  }
  REQUIRE(checked >= 1);
}
