#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fp.hpp"
#include "rng.hpp"

namespace stabfan {

// Univariate polynomials over F_p, coefficient vector with c[i] the x^i
// coefficient, no trailing zeros. Used for minimal polynomials and their
// factorization when hunting idempotents.
struct Poly {
  std::vector<std::uint64_t> c;
  std::uint64_t p = 2;

  Poly() = default;
  Poly(std::vector<std::uint64_t> coeffs, std::uint64_t prime)
      : c(std::move(coeffs)), p(prime) {
    trim();
  }

  static Poly zero(std::uint64_t p) { return Poly({}, p); }
  static Poly one(std::uint64_t p) { return Poly({1}, p); }
  static Poly x(std::uint64_t p) { return Poly({0, 1}, p); }

  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  std::uint64_t lead() const { return c.back(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

inline Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = fp::add(x, y, a.p);
  }
  r.trim();
  return r;
}

inline Poly operator-(const Poly& a, const Poly& b) {
  Poly r;
  r.p = a.p;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    std::uint64_t x = i < a.c.size() ? a.c[i] : 0;
    std::uint64_t y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = fp::sub(x, y, a.p);
  }
  r.trim();
  return r;
}

inline Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.p);
  Poly r;
  r.p = a.p;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = fp::add(r.c[i + j], fp::mul(a.c[i], b.c[j], a.p), a.p);
  }
  r.trim();
  return r;
}

inline Poly poly_scale(const Poly& a, std::uint64_t s) {
  Poly r = a;
  for (auto& x : r.c) x = fp::mul(x, s, a.p);
  r.trim();
  return r;
}

inline Poly monic(const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(a, fp::inv(a.lead(), a.p));
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  Poly rem = a, quot = Poly::zero(a.p);
  quot.c.assign(a.c.size(), 0);
  std::uint64_t inv_lead = fp::inv(b.lead(), a.p);
  while (!rem.is_zero() && rem.deg() >= b.deg()) {
    std::size_t shift = rem.deg() - b.deg();
    std::uint64_t f = fp::mul(rem.lead(), inv_lead, a.p);
    quot.c[shift] = fp::add(quot.c[shift], f, a.p);
    for (std::size_t i = 0; i < b.c.size(); ++i)
      rem.c[shift + i] = fp::sub(rem.c[shift + i], fp::mul(f, b.c[i], a.p), a.p);
    rem.trim();
  }
  quot.trim();
  return {quot, rem};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = b;
    b = r;
  }
  return monic(a);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& mod) {
  Poly r = Poly::one(base.p);
  base = base % mod;
  while (e) {
    if (e & 1) r = (r * base) % mod;
    base = (base * base) % mod;
    e >>= 1;
  }
  return r;
}

inline Poly derivative(const Poly& a) {
  Poly r;
  r.p = a.p;
  for (std::size_t i = 1; i < a.c.size(); ++i)
    r.c.push_back(fp::mul(a.c[i], i % a.p, a.p));
  r.trim();
  return r;
}

// Irreducible factors of a monic squarefree polynomial over F_p (odd p):
// distinct-degree factorization, then Cantor–Zassenhaus equal-degree splits.
inline void edf(const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
  if (f.deg() == d) {
    out.push_back(monic(f));
    return;
  }
  std::uint64_t p = f.p;
  for (;;) {
    Poly a;
    a.p = p;
    a.c.resize(f.deg(), 0);
    for (auto& x : a.c) x = rng.below(p);
    a.trim();
    if (a.deg() < 1) continue;
    // exponent (p^d - 1)/2 via repeated squaring in the quotient ring
    Poly b = a % f;
    Poly acc = b;
    for (int i = 1; i < d; ++i) acc = poly_powmod(acc, p, f) * b % f;  // a^{(p^d-1)/(p-1)}
    acc = poly_powmod(acc, (p - 1) / 2, f);
    Poly g = poly_gcd(acc - Poly::one(p), f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      edf(g, d, rng, out);
      edf(f / g, d, rng, out);
      return;
    }
  }
}

inline std::vector<Poly> factor_squarefree(const Poly& f_in, Rng& rng) {
  std::vector<Poly> out;
  Poly f = monic(f_in);
  std::uint64_t p = f.p;
  Poly h = Poly::x(p);
  int d = 0;
  while (f.deg() > 0) {
    ++d;
    if (2 * d > f.deg()) {
      out.push_back(f);
      break;
    }
    h = poly_powmod(h, p, f);
    Poly g = poly_gcd(h - Poly::x(p), f);
    if (g.deg() > 0) {
      edf(g, d, rng, out);
      f = f / g;
      h = h % f;
    }
  }
  return out;
}

// Full factorization into distinct irreducible factors with multiplicities.
inline std::vector<std::pair<Poly, int>> factor(const Poly& f_in, Rng& rng) {
  std::vector<std::pair<Poly, int>> out;
  Poly f = monic(f_in);
  // squarefree part by repeated gcd with the derivative (p large: no
  // inseparable factors at desk-scale degrees << p)
  Poly sf = f / poly_gcd(f, derivative(f));
  for (const Poly& q : factor_squarefree(sf, rng)) {
    int mult = 0;
    while ((f % q).is_zero()) {
      f = f / q;
      ++mult;
    }
    out.push_back({q, mult});
  }
  return out;
}

inline std::uint64_t poly_eval(const Poly& f, std::uint64_t x) {
  std::uint64_t r = 0;
  for (std::size_t i = f.c.size(); i-- > 0;)
    r = fp::add(fp::mul(r, x, f.p), f.c[i], f.p);
  return r;
}

}  // namespace stabfan
