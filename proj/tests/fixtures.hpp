#pragma once

#include <stabfan/algebra.hpp>
#include <stabfan/rep.hpp>

namespace fixtures {

using namespace stabfan;

constexpr std::uint64_t P_BIG = 2147483647ULL;  // 2^31 - 1

inline QuiverSpec a2_spec() {
  QuiverSpec s;
  s.vertices = {"1", "2"};
  s.arrows = {{"a", 0, 1}};
  s.max_path_length = 6;
  return s;
}

inline QuiverSpec a3_spec() {
  QuiverSpec s;
  s.vertices = {"1", "2", "3"};
  s.arrows = {{"a", 0, 1}, {"b", 1, 2}};
  s.max_path_length = 6;
  return s;
}

inline QuiverSpec kronecker_spec(int m) {
  QuiverSpec s;
  s.vertices = {"1", "2"};
  for (int i = 1; i <= m; ++i)
    s.arrows.push_back({"a" + std::to_string(i), 0, 1});
  s.max_path_length = 6;
  return s;
}

// Triangular matrix algebra [[k, X],[0, A]] with A the 3-Kronecker algebra
// and X the module with X_{a_i} = F_i = E_{i,i+1} - E_{i+1,i} (indices mod 3).
// Quiver 0 ⇛ 1 ⇛ 2, arrows a',b',c' = the standard basis of X₁ and a,b,c
// the Kronecker arrows; the products x'·y are rows of the F matrices, giving
// the relations below (e.g. a'·a = row 1 of F₁ = e₂ = −c'·b).
inline QuiverSpec algebra_b_spec() {
  QuiverSpec s;
  s.vertices = {"0", "1", "2"};
  s.arrows = {{"a'", 0, 1}, {"b'", 0, 1}, {"c'", 0, 1},
              {"a", 1, 2},  {"b", 1, 2},  {"c", 1, 2}};
  auto rel1 = [&](const char* x, const char* y) {
    Relation r;
    r.push_back({1, arrows_by_name(s, {x, y})});
    return r;
  };
  auto rel2 = [&](const char* x, const char* y, const char* u, const char* v) {
    Relation r;
    r.push_back({1, arrows_by_name(s, {x, y})});
    r.push_back({1, arrows_by_name(s, {u, v})});
    return r;
  };
  s.relations = {rel1("a'", "b"), rel1("b'", "c"), rel1("c'", "a"),
                 rel2("a'", "a", "c'", "b"), rel2("b'", "b", "a'", "c"),
                 rel2("c'", "c", "b'", "a")};
  s.max_path_length = 6;
  return s;
}

inline QuiverSpec point_spec() {
  QuiverSpec s;
  s.vertices = {"1"};
  s.max_path_length = 2;
  return s;
}

// The dim (3,3) module over the 3-Kronecker algebra with a_i acting by
// F_i = E_{i,i+1} - E_{i+1,i}, indices mod 3.
inline Rep kronecker_module(const Algebra& A) {
  Rep X = zero_rep(A);
  X.dims = {3, 3};
  for (int i = 0; i < 3; ++i) {
    FpMat f(3, 3, A.p);
    f(i, (i + 1) % 3) = 1;
    f((i + 1) % 3, i) = fp::neg(1, A.p);
    X.arr[i] = f;
  }
  return X;
}

inline ProjMap single_entry_map(const Algebra& A, int cod_v, int dom_v,
                                const AlgEl& e) {
  ProjMap f = zero_proj_map(A, {cod_v}, {dom_v});
  f.ent[0][0] = e;
  return f;
}

// The basis element of a single arrow by name.
inline AlgEl arrow_el(const Algebra& A, const std::string& name) {
  for (int b = 0; b < A.dim(); ++b) {
    const Path& q = A.basis[b];
    if (q.len() == 1 && A.spec.arrows[q.arrows[0]].name == name)
      return A.el_of_basis(b);
  }
  throw std::runtime_error("arrow_el: not found " + name);
}

}  // namespace fixtures
