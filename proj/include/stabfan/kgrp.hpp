#pragma once

#include <vector>

#include "errors.hpp"
#include "rat.hpp"
#include "rep.hpp"

namespace stabfan {

// θ ∈ K₀(proj A) in the [P(i)] basis; integral unless noted.
using KClass = std::vector<long long>;
// d ∈ K₀(mod A) in the [S(i)] basis.
using DimVector = std::vector<long long>;

inline long long euler_pair(const KClass& theta, const DimVector& d) {
  long long s = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) s += theta[i] * d[i];
  return s;
}

inline Rat euler_pair_q(const RatVec& theta, const DimVector& d) {
  Rat s;
  for (std::size_t i = 0; i < theta.size(); ++i) s += theta[i] * Rat(d[i]);
  return s;
}

// θ = [P₀] − [P₁] with disjoint supports.
inline std::pair<ProjLabel, ProjLabel> split_parts(const KClass& theta) {
  ProjLabel p0, p1;
  p0.mult.assign(theta.size(), 0);
  p1.mult.assign(theta.size(), 0);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (theta[i] > 0) p0.mult[i] = static_cast<int>(theta[i]);
    if (theta[i] < 0) p1.mult[i] = static_cast<int>(-theta[i]);
  }
  return {p0, p1};
}

inline KClass class_of_map(const ProjMap& f) {
  KClass k(f.A->n_vertices(), 0);
  for (int v : f.cod) ++k[v];
  for (int v : f.dom) --k[v];
  return k;
}

inline KClass kclass_add(const KClass& a, const KClass& b) {
  KClass r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline KClass kclass_scale(long long c, const KClass& a) {
  KClass r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool kclass_is_zero(const KClass& a) {
  for (long long x : a)
    if (x) return false;
  return true;
}

inline RatVec to_ratvec(const KClass& a) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
  return r;
}

}  // namespace stabfan
