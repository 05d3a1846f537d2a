#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabfan {

// Exact rational arithmetic on int64 numerator/denominator with __int128
// intermediates. Desk-scale cone computations stay far below overflow;
// normalize() throws if a reduced value no longer fits.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(long long n, long long d) : num_(n), den_(d) { normalize_small(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ +
                    static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num_) * b.den_ -
                    static_cast<__int128>(b.num_) * a.den_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make(static_cast<__int128>(a.num_) * b.num_,
                static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("Rat: division by zero");
    return make(static_cast<__int128>(a.num_) * b.den_,
                static_cast<__int128>(a.den_) * b.num_);
  }
  Rat operator-() const { return Rat(-num_, den_); }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num_) * b.den_ <
           static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
  }

  double to_double() const { return static_cast<double>(num_) / den_; }

 private:
  static Rat make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rat: overflow");
    Rat r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a ? a : 1;
  }
  void normalize_small() {
    Rat r = make(num_, den_);
    num_ = r.num_;
    den_ = r.den_;
  }

  long long num_, den_;
};

using RatVec = std::vector<Rat>;

inline Rat dot(const RatVec& a, const RatVec& b) {
  Rat s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
  RatVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline RatVec scale(const Rat& c, const RatVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

inline bool is_zero_vec(const RatVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// Clear denominators and divide by the content; first nonzero entry positive
// unless keep_sign. Canonical primitive integer representative of a ray.
inline RatVec primitive(const RatVec& v, bool keep_sign = true) {
  long long l = 1;
  for (const auto& x : v) l = std::lcm(l, x.den());
  std::vector<long long> w(v.size());
  long long g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = v[i].num() * (l / v[i].den());
    g = std::gcd(g, w[i] < 0 ? -w[i] : w[i]);
  }
  if (g == 0) g = 1;
  long long s = 1;
  if (!keep_sign) {
    for (auto x : w)
      if (x != 0) {
        s = x < 0 ? -1 : 1;
        break;
      }
  }
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(s * w[i] / g);
  return r;
}

// Rank of a rational matrix (rows = vectors), fraction-free-ish via Rat ops.
inline std::size_t rat_rank(std::vector<RatVec> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  std::size_t n = rows[0].size();
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      Rat f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Solve for the nullspace {x : rows · x = 0} over Q; returns basis rows.
inline std::vector<RatVec> rat_nullspace(std::vector<RatVec> rows, std::size_t n) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[r]);
    Rat iv = Rat(1) / rows[r][c];
    for (std::size_t j = 0; j < n; ++j) rows[r][j] *= iv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      Rat f = rows[i][c];
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(n, false);
  std::vector<std::size_t> piv_row(n, 0);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    is_piv[pivots[k]] = true;
    piv_row[pivots[k]] = k;
  }
  std::vector<RatVec> basis;
  for (std::size_t c = 0; c < n; ++c) {
    if (is_piv[c]) continue;
    RatVec v(n, Rat(0));
    v[c] = Rat(1);
    for (std::size_t pc = 0; pc < n; ++pc)
      if (is_piv[pc]) v[pc] = -rows[piv_row[pc]][c];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace stabfan
