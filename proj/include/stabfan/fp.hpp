#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace stabfan {

// Arithmetic in F_p for a runtime prime p < 2^31. Values are stored
// reduced in [0, p). Products fit in uint64_t.
namespace fp {

inline std::uint64_t reduce(long long x, std::uint64_t p) {
  long long r = x % static_cast<long long>(p);
  if (r < 0) r += static_cast<long long>(p);
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + p - b;
}

inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a ? p - a : 0; }

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return (a * b) % p;
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  if (a == 0) throw std::domain_error("fp::inv: division by zero");
  return pow(a, p - 2, p);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace fp

// Dense matrix over F_p, row-major. Vectors act as rows (right modules),
// so composition of maps is plain left-to-right matrix product.
class FpMat {
 public:
  FpMat() : rows_(0), cols_(0), p_(2) {}
  FpMat(std::size_t rows, std::size_t cols, std::uint64_t p)
      : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

  static FpMat identity(std::size_t n, std::uint64_t p) {
    FpMat m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t mod() const { return p_; }

  std::uint64_t& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }
  std::uint64_t operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return a_[i * cols_ + j];
  }

  bool operator==(const FpMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const {
    for (auto x : a_)
      if (x) return false;
    return true;
  }

  FpMat operator+(const FpMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_);
    FpMat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp::add(a_[i], o.a_[i], p_);
    return r;
  }

  FpMat operator-(const FpMat& o) const {
    assert(rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_);
    FpMat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp::sub(a_[i], o.a_[i], p_);
    return r;
  }

  FpMat operator*(const FpMat& o) const {
    assert(cols_ == o.rows_ && p_ == o.p_);
    FpMat r(rows_, o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        std::uint64_t x = (*this)(i, k);
        if (!x) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = fp::add(r(i, j), fp::mul(x, o(k, j), p_), p_);
      }
    return r;
  }

  FpMat scaled(std::uint64_t c) const {
    FpMat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fp::mul(a_[i], c, p_);
    return r;
  }

  FpMat transposed() const {
    FpMat r(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  // In-place row reduction to reduced row echelon form.
  // Returns the pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t sel = r;
      while (sel < rows_ && (*this)(sel, c) == 0) ++sel;
      if (sel == rows_) continue;
      swap_rows(sel, r);
      std::uint64_t iv = fp::inv((*this)(r, c), p_);
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) = fp::mul((*this)(r, j), iv, p_);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        std::uint64_t f = (*this)(i, c);
        if (!f) continue;
        for (std::size_t j = c; j < cols_; ++j)
          (*this)(i, j) = fp::sub((*this)(i, j), fp::mul(f, (*this)(r, j), p_), p_);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    FpMat tmp = *this;
    return tmp.rref().size();
  }

  // Basis of the left nullspace {x : x * this = 0}, one solution per row.
  FpMat left_nullspace() const { return transposed().right_nullspace(); }

  // Basis of {v : this * v^T = 0}, i.e. solutions of the homogeneous system
  // with rows of *this as equations; one solution per row of the result.
  FpMat right_nullspace() const {
    FpMat tmp = *this;
    auto pivots = tmp.rref();
    std::vector<bool> is_pivot(cols_, false);
    std::vector<std::size_t> pivot_row(cols_, 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      is_pivot[pivots[k]] = true;
      pivot_row[pivots[k]] = k;
    }
    FpMat ns(cols_ - pivots.size(), cols_, p_);
    std::size_t out = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (is_pivot[c]) continue;
      ns(out, c) = 1;
      for (std::size_t pc = 0; pc < cols_; ++pc)
        if (is_pivot[pc]) ns(out, pc) = fp::neg(tmp(pivot_row[pc], c), p_);
      ++out;
    }
    return ns;
  }

  // Row span basis in RREF form (drops zero rows).
  FpMat row_basis() const {
    FpMat tmp = *this;
    auto pivots = tmp.rref();
    FpMat b(pivots.size(), cols_, p_);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) b(i, j) = tmp(i, j);
    return b;
  }

  // Solve x * A = b for a single row vector b; returns (found, x).
  std::pair<bool, std::vector<std::uint64_t>> solve_left(
      const std::vector<std::uint64_t>& b) const {
    assert(b.size() == cols_);
    // Augment: rows of A^T are equations? Solve via rref of [A ; b] stacked.
    FpMat aug(rows_ + 1, cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < cols_; ++j) aug(rows_, j) = b[j];
    // Reduce A part, then express b in terms of rows.
    // Simpler: transpose to standard linear system A^T x^T = b^T.
    FpMat at = transposed();
    FpMat sys(at.rows(), at.cols() + 1, p_);
    for (std::size_t i = 0; i < at.rows(); ++i) {
      for (std::size_t j = 0; j < at.cols(); ++j) sys(i, j) = at(i, j);
      sys(i, at.cols()) = b[i];
    }
    auto pivots = sys.rref();
    std::vector<std::uint64_t> x(rows_, 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      if (pivots[k] == at.cols()) return {false, {}};  // inconsistent
      x[pivots[k]] = sys(k, at.cols());
    }
    return {true, x};
  }

  FpMat inverse() const {
    assert(rows_ == cols_);
    FpMat aug(rows_, 2 * cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, cols_ + i) = 1;
    }
    auto pivots = aug.rref();
    if (pivots.size() != rows_ || pivots.back() >= cols_)
      throw std::domain_error("FpMat::inverse: singular matrix");
    FpMat r(rows_, cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = aug(i, cols_ + j);
    return r;
  }

  std::uint64_t det() const {
    assert(rows_ == cols_);
    FpMat tmp = *this;
    std::uint64_t d = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t sel = c;
      while (sel < rows_ && tmp(sel, c) == 0) ++sel;
      if (sel == rows_) return 0;
      if (sel != c) {
        tmp.swap_rows(sel, c);
        d = fp::neg(d, p_);
      }
      d = fp::mul(d, tmp(c, c), p_);
      std::uint64_t iv = fp::inv(tmp(c, c), p_);
      for (std::size_t i = c + 1; i < rows_; ++i) {
        std::uint64_t f = fp::mul(tmp(i, c), iv, p_);
        if (!f) continue;
        for (std::size_t j = c; j < cols_; ++j)
          tmp(i, j) = fp::sub(tmp(i, j), fp::mul(f, tmp(c, j), p_), p_);
      }
    }
    return d;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  std::vector<std::uint64_t> row(std::size_t i) const {
    std::vector<std::uint64_t> r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
  }

 private:
  std::size_t rows_, cols_;
  std::uint64_t p_;
  std::vector<std::uint64_t> a_;
};

// b * A for a row vector b.
inline std::vector<std::uint64_t> mul_vec_mat(const std::vector<std::uint64_t>& b,
                                              const FpMat& m) {
  assert(b.size() == m.rows());
  std::vector<std::uint64_t> r(m.cols(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!b[i]) continue;
    for (std::size_t j = 0; j < m.cols(); ++j)
      r[j] = fp::add(r[j], fp::mul(b[i], m(i, j), m.mod()), m.mod());
  }
  return r;
}

}  // namespace stabfan
