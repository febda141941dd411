#ifndef COHFT_RATIONAL_HPP
#define COHFT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cohft {

using Rational = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Rational>;

// Canonical n/d; the two-argument mpq_class constructor does not reduce.
inline Rational frac(const Integer& n, const Integer& d) {
  if (d == 0) throw NotInvertible("zero denominator");
  Rational r(n, d);
  r.canonicalize();
  return r;
}
inline Rational frac(long n, long d) { return frac(Integer(n), Integer(d)); }

// Accepts "p", "-p", "p/q". Anything else (including decimals) is rejected.
inline std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  bool seen_slash = false, digits_before = false, digits_after = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      (seen_slash ? digits_after : digits_before) = true;
    } else if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else {
      return std::nullopt;
    }
  }
  if (!digits_before || (seen_slash && !digits_after)) return std::nullopt;
  std::string body = text[0] == '+' ? text.substr(1) : text;
  Rational r;
  if (r.set_str(body, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

inline std::string render(const Rational& r) { return r.get_str(); }

inline std::optional<Integer> exact_isqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  if (root * root != n) return std::nullopt;
  return root;
}

inline std::optional<Rational> exact_sqrt(const Rational& q) {
  auto num = exact_isqrt(q.get_num());
  auto den = exact_isqrt(q.get_den());
  if (!num || !den) return std::nullopt;
  return frac(*num, *den);
}

inline Rational rational_pow(const Rational& base, long exponent) {
  Rational b = base;
  if (exponent < 0) {
    if (b == 0) throw NotInvertible("zero raised to a negative power");
    b = 1 / b;
    exponent = -exponent;
  }
  Rational out = 1;
  while (exponent > 0) {
    if (exponent & 1) out *= b;
    b *= b;
    exponent >>= 1;
  }
  return out;
}

inline Rational factorial(int n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(out);
}

// ---- vectors -------------------------------------------------------------

inline Vec zero_vec(std::size_t n) { return Vec(n, Rational(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

inline void check_same_size(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
}

inline Vec operator+(const Vec& a, const Vec& b) {
  check_same_size(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  check_same_size(a, b);
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vec operator*(const Rational& s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

inline Vec& operator+=(Vec& a, const Vec& b) {
  check_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline void add_scaled(Vec& acc, const Rational& s, const Vec& v) {
  check_same_size(acc, v);
  if (s == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i) acc[i] += s * v[i];
}

inline bool is_zero(const Vec& v) {
  for (const Rational& x : v)
    if (x != 0) return false;
  return true;
}

inline std::string render(const Vec& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += render(v[i]);
  }
  return out + "]";
}

// ---- dense matrices ------------------------------------------------------

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vec>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vec>& cols) { return from_rows(cols).transpose(); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vec row(std::size_t i) const { return Vec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  void set_column(std::size_t j, const Vec& v) {
    if (v.size() != rows_) throw DimensionMismatch("column length");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const Rational& x : data_)
      if (x != 0) return false;
    return true;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] + b.data_[k];
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix out(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = a.data_[k] - b.data_[k];
    return out;
  }

  Matrix& operator+=(const Matrix& b) {
    check_same_shape(b);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += b.data_[k];
    return *this;
  }

  Matrix& operator-=(const Matrix& b) {
    check_same_shape(b);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= b.data_[k];
    return *this;
  }

  friend Matrix operator*(const Rational& s, const Matrix& a) {
    Matrix out(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) out.data_[k] = s * a.data_[k];
    return out;
  }

  friend Matrix operator-(const Matrix& a) { return Rational(-1) * a; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend Vec operator*(const Matrix& a, const Vec& v) {
    if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector shapes");
    Vec out = zero_vec(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) out += "; ";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += " ";
        out += render((*this)(i, j));
      }
    }
    return out + "]";
  }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

// Row-reduces in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(Matrix m) { return row_reduce(m).size(); }

inline Rational determinant(Matrix m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline std::optional<Matrix> try_inverse(const Matrix& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse of a non-square matrix");
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto pivots = row_reduce(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

inline Matrix inverse(const Matrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw NotInvertible("singular matrix");
  return *inv;
}

// Unique solution of m x = b, if it exists.
inline std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  auto inv = try_inverse(m);
  if (!inv) return std::nullopt;
  return *inv * b;
}

// Basis of the null space, one vector per free column.
inline std::vector<Vec> kernel(const Matrix& m) {
  Matrix r = m;
  auto pivots = row_reduce(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(m.cols());
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace cohft

#endif
