#ifndef COHFT_SERIES_HPP
#define COHFT_SERIES_HPP

#include <vector>

#include "frobenius.hpp"

namespace cohft {

// End(A)-valued power series sum_{k<=order} coeffs[k] z^k.
struct EndSeries {
  std::vector<Matrix> coeffs;

  EndSeries() = default;
  explicit EndSeries(std::vector<Matrix> c) : coeffs(std::move(c)) {
    if (coeffs.empty()) throw DimensionMismatch("empty series");
    for (const Matrix& m : coeffs)
      if (!m.is_square() || m.rows() != coeffs[0].rows()) throw DimensionMismatch("series coefficient shape");
  }

  static EndSeries identity(std::size_t dim, int order) {
    std::vector<Matrix> c(order + 1, Matrix(dim, dim));
    c[0] = Matrix::identity(dim);
    return EndSeries(c);
  }

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  std::size_t dim() const { return coeffs[0].rows(); }
  const Matrix& operator[](int k) const { return coeffs[k]; }

  friend bool operator==(const EndSeries& a, const EndSeries& b) { return a.coeffs == b.coeffs; }
  friend bool operator!=(const EndSeries& a, const EndSeries& b) { return !(a == b); }
};

// A-valued series sum_k coeffs[k] z^k.
struct VecSeries {
  std::vector<Vec> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

// sum_{i+j<=order} coeffs[i][j] z^i w^j with matrix coefficients.
struct BivectorSeries {
  int order = -1;
  std::vector<std::vector<Matrix>> coeffs;  // coeffs[i][j], j <= order - i

  const Matrix& at(int i, int j) const { return coeffs[i][j]; }
};

inline void check_compatible(const EndSeries& a, const EndSeries& b) {
  if (a.order() != b.order()) throw OrderMismatch("series orders differ");
  if (a.dim() != b.dim()) throw DimensionMismatch("series dimensions differ");
}

inline EndSeries multiply(const EndSeries& a, const EndSeries& b) {
  check_compatible(a, b);
  std::vector<Matrix> c(a.order() + 1, Matrix(a.dim(), a.dim()));
  for (int i = 0; i <= a.order(); ++i)
    for (int j = 0; i + j <= a.order(); ++j) c[i + j] += a[i] * b[j];
  return EndSeries(c);
}

inline EndSeries invert(const EndSeries& a) {
  auto inv0 = try_inverse(a[0]);
  if (!inv0) throw ConstantTermSingular("constant term is singular");
  std::vector<Matrix> c(a.order() + 1, Matrix(a.dim(), a.dim()));
  c[0] = *inv0;
  for (int k = 1; k <= a.order(); ++k) {
    Matrix acc(a.dim(), a.dim());
    for (int i = 1; i <= k; ++i) acc += a[i] * c[k - i];
    c[k] = -(*inv0 * acc);
  }
  return EndSeries(c);
}

// Coefficientwise eta-adjoint: M* = eta^{-1} M^t eta.
inline EndSeries adjoint(const EndSeries& a, const Matrix& eta) {
  if (eta.rows() != a.dim()) throw DimensionMismatch("pairing dimension");
  Matrix eta_inv = inverse(eta);
  std::vector<Matrix> c;
  for (const Matrix& m : a.coeffs) c.push_back(eta_inv * m.transpose() * eta);
  return EndSeries(c);
}

// R(z) -> R(-z)
inline EndSeries negate_variable(const EndSeries& a) {
  std::vector<Matrix> c = a.coeffs;
  for (std::size_t k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return EndSeries(c);
}

// R(z) R*(-z) = Id through the series order.
inline bool check_symplectic(const EndSeries& r, const Matrix& eta) {
  EndSeries prod = multiply(r, negate_variable(adjoint(r, eta)));
  return prod == EndSeries::identity(r.dim(), r.order());
}

inline VecSeries apply(const EndSeries& r, const Vec& v) {
  VecSeries out;
  for (const Matrix& m : r.coeffs) out.coeffs.push_back(m * v);
  return out;
}

// Change of basis: returns P^{-1} R P coefficientwise.
inline EndSeries conjugate(const EndSeries& r, const Matrix& p, const Matrix& p_inv) {
  std::vector<Matrix> c;
  for (const Matrix& m : r.coeffs) c.push_back(p_inv * m * p);
  return EndSeries(c);
}

// Edge kernel (eta^{-1} - R^{-1}(z) eta^{-1} R^{-1}(w)^t) / (z + w) as a bivector
// series. The numerator is known through total degree D, so the quotient is
// exact through total degree D - 1.
inline BivectorSeries edge_kernel(const EndSeries& r, const Matrix& eta) {
  EndSeries rinv = invert(r);
  Matrix eta_inv = inverse(eta);
  int D = r.order();
  std::size_t d = r.dim();
  auto numer = [&](int i, int j) {
    Matrix m = rinv[i] * eta_inv * rinv[j].transpose();
    m = -m;
    if (i == 0 && j == 0) m += eta_inv;
    return m;
  };
  BivectorSeries out;
  out.order = D - 1;
  out.coeffs.assign(std::max(D, 0), {});
  for (int i = 0; i < D; ++i) out.coeffs[i].assign(D - i, Matrix(d, d));
  if (!numer(0, 0).is_zero()) throw NotDivisible("edge numerator has a constant term");
  for (int k = 0; k < D; ++k) {
    // n_{a,b} with a+b = k+1 equals q_{a-1,b} + q_{a,b-1}
    out.coeffs[k][0] = numer(k + 1, 0);
    for (int i = k - 1; i >= 0; --i) out.coeffs[i][k - i] = numer(i + 1, k - i) - out.coeffs[i + 1][k - i - 1];
    if (numer(0, k + 1) != out.coeffs[0][k]) throw NotDivisible("edge numerator not divisible by z + w");
  }
  return out;
}

// T(z) = z (1 - R^{-1}(z) 1), returned with T_0 = T_1 = 0.
inline VecSeries translation_vector(const EndSeries& r, const Vec& unit) {
  EndSeries rinv = invert(r);
  VecSeries out;
  out.coeffs.assign(r.order() + 2, zero_vec(unit.size()));
  for (int k = 1; k <= r.order(); ++k) out.coeffs[k + 1] = Rational(-1) * (rinv[k] * unit);
  return out;
}

// exp(sum_{k>=1} r_k z^k) truncated at the given order.
inline EndSeries series_exp(const std::vector<Matrix>& r, int order) {
  std::size_t d = r.empty() ? 0 : r[0].rows();
  std::vector<Matrix> x(order + 1, Matrix(d, d));
  for (int k = 1; k <= order && k < static_cast<int>(r.size()); ++k) x[k] = r[k];
  EndSeries xs(x), out = EndSeries::identity(d, order), power = EndSeries::identity(d, order);
  for (int n = 1; n <= order; ++n) {
    power = multiply(power, xs);
    std::vector<Matrix> c = power.coeffs;
    for (Matrix& m : c) m = Rational(1) / factorial(n) * m;
    for (int k = 0; k <= order; ++k) out.coeffs[k] += c[k];
  }
  return out;
}

}  // namespace cohft

#endif
