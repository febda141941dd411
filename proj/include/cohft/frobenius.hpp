#ifndef COHFT_FROBENIUS_HPP
#define COHFT_FROBENIUS_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rational.hpp"
#include "upoly.hpp"

namespace cohft {

// Commutative unital Frobenius algebra over Q in a fixed ambient basis b_0..b_{d-1}.
// products[i][j] holds the coordinates of b_i * b_j.
class FrobeniusAlgebra {
 public:
  FrobeniusAlgebra(Matrix eta, std::vector<std::vector<Vec>> products, Vec unit)
      : eta_(std::move(eta)), products_(std::move(products)), unit_(std::move(unit)) {
    auto report = validate(eta_, products_, unit_);
    if (!report.empty()) throw ValidationError(report);
    eta_inv_ = inverse(eta_);
  }

  // All violated invariants, in a fixed order.
  static std::vector<std::string> validate(const Matrix& eta, const std::vector<std::vector<Vec>>& products,
                                           const Vec& unit) {
    std::vector<std::string> report;
    std::size_t d = eta.rows();
    if (!eta.is_square() || d == 0) return {"eta must be a nonempty square matrix"};
    if (unit.size() != d) report.push_back("unit has wrong length");
    if (products.size() != d) {
      report.push_back("structure constants have wrong shape");
      return report;
    }
    for (const auto& row : products) {
      if (row.size() != d) return {"structure constants have wrong shape"};
      for (const Vec& v : row)
        if (v.size() != d) return {"structure constants have wrong shape"};
    }
    if (!report.empty()) return report;
    if (!eta.is_symmetric()) report.push_back("eta not symmetric");
    if (determinant(eta) == 0) report.push_back("eta degenerate");

    auto mul = [&](const Vec& a, const Vec& b) {
      Vec out = zero_vec(d);
      for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
          if (b[j] == 0) continue;
          Rational s = a[i] * b[j];
          add_scaled(out, s, products[i][j]);
        }
      }
      return out;
    };
    auto pair = [&](const Vec& a, const Vec& b) {
      Rational s = 0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) s += a[i] * eta(i, j) * b[j];
      return s;
    };

    bool commutative = true, associative = true, frobenius = true, unital = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (products[i][j] != products[j][i]) commutative = false;
    for (std::size_t i = 0; i < d && associative; ++i)
      for (std::size_t j = 0; j < d && associative; ++j)
        for (std::size_t k = 0; k < d && associative; ++k)
          if (mul(products[i][j], unit_vec(d, k)) != mul(unit_vec(d, i), products[j][k])) associative = false;
    for (std::size_t i = 0; i < d && unital; ++i)
      if (mul(unit, unit_vec(d, i)) != unit_vec(d, i)) unital = false;
    for (std::size_t i = 0; i < d && frobenius; ++i)
      for (std::size_t j = 0; j < d && frobenius; ++j)
        for (std::size_t k = 0; k < d && frobenius; ++k)
          if (pair(products[i][j], unit_vec(d, k)) != pair(unit_vec(d, i), products[j][k])) frobenius = false;
    if (!commutative) report.push_back("product not commutative");
    if (!associative) report.push_back("product not associative");
    if (!unital) report.push_back("unit is not a unit for the product");
    if (!frobenius) report.push_back("pairing not invariant: eta(ab,c) != eta(a,bc)");
    return report;
  }

  std::size_t dim() const { return eta_.rows(); }
  const Matrix& eta() const { return eta_; }
  const Matrix& eta_inverse() const { return eta_inv_; }
  const Vec& unit() const { return unit_; }
  const Vec& product(std::size_t i, std::size_t j) const { return products_[i][j]; }
  const std::vector<std::vector<Vec>>& products() const { return products_; }

  Vec multiply(const Vec& a, const Vec& b) const {
    check(a);
    check(b);
    Vec out = zero_vec(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j] == 0) continue;
        Rational s = a[i] * b[j];
        add_scaled(out, s, products_[i][j]);
      }
    }
    return out;
  }

  Rational pair(const Vec& a, const Vec& b) const {
    check(a);
    check(b);
    Rational s = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) s += a[i] * eta_(i, j) * b[j];
    }
    return s;
  }

  Rational trace(const Vec& a) const { return pair(a, unit_); }

  // sum_{ij} eta^{ij} b_i b_j
  Vec euler_class() const {
    Vec out = zero_vec(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < dim(); ++j) add_scaled(out, eta_inv_(i, j), products_[i][j]);
    return out;
  }

  // Matrix of x -> a x.
  Matrix mult_operator(const Vec& a) const {
    Matrix m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) m.set_column(j, multiply(a, unit_vec(dim(), j)));
    return m;
  }

  std::optional<Vec> try_invert(const Vec& a) const { return solve(mult_operator(a), unit_); }

  Vec invert(const Vec& a) const {
    auto inv = try_invert(a);
    if (!inv) throw NotInvertible("element is not invertible: " + render(a));
    return *inv;
  }

  Vec power(const Vec& a, int k) const {
    Vec base = k < 0 ? invert(a) : a;
    Vec out = unit_;
    for (int i = 0; i < std::abs(k); ++i) out = multiply(out, base);
    return out;
  }

  Vec euler_power(int g) const { return power(euler_class(), g); }

  bool is_semisimple() const { return try_invert(euler_class()).has_value(); }

 private:
  void check(const Vec& a) const {
    if (a.size() != dim()) throw DimensionMismatch("vector length does not match algebra dimension");
  }

  Matrix eta_, eta_inv_;
  std::vector<std::vector<Vec>> products_;
  Vec unit_;
};

// Normalized idempotents e_mu (columns of basis, ambient coordinates) with
// e_mu e_nu = delta/theta_mu e_mu, eta(e_mu,e_nu) = delta, 1 = sum theta_mu e_mu.
struct SemisimpleData {
  Vec weights;
  Matrix basis;
  Matrix basis_inverse;

  std::size_t dim() const { return weights.size(); }
  Vec e(std::size_t mu) const { return basis.column(mu); }
  Vec to_semisimple(const Vec& v) const { return basis_inverse * v; }
  Vec from_semisimple(const Vec& w) const { return basis * w; }
};

inline std::vector<std::string> validate_semisimple(const FrobeniusAlgebra& a, const SemisimpleData& ss) {
  std::vector<std::string> report;
  std::size_t d = a.dim();
  if (ss.weights.size() != d || ss.basis.rows() != d || ss.basis.cols() != d) return {"semisimple data has wrong shape"};
  for (const Rational& t : ss.weights)
    if (t == 0) report.push_back("zero weight");
  if (!report.empty()) return report;
  Vec unit = zero_vec(d);
  for (std::size_t mu = 0; mu < d; ++mu) {
    Vec e_mu = ss.e(mu);
    add_scaled(unit, ss.weights[mu], e_mu);
    for (std::size_t nu = 0; nu < d; ++nu) {
      Vec e_nu = ss.e(nu);
      Rational expected_pair = mu == nu ? 1 : 0;
      if (a.pair(e_mu, e_nu) != expected_pair) report.push_back("idempotents not orthonormal");
      Vec expected = mu == nu ? Rational(1) / ss.weights[mu] * e_mu : zero_vec(d);
      if (a.multiply(e_mu, e_nu) != expected) report.push_back("idempotents not normalized");
    }
  }
  if (unit != a.unit()) report.push_back("unit is not sum of weighted idempotents");
  report.erase(std::unique(report.begin(), report.end()), report.end());
  return report;
}

namespace detail {

// Splits the column span of each subspace into eigenspaces of op.
inline std::vector<Matrix> refine(const std::vector<Matrix>& spaces, const Matrix& op) {
  std::vector<Matrix> out;
  for (const Matrix& s : spaces) {
    std::size_t k = s.cols();
    if (k == 1) {
      out.push_back(s);
      continue;
    }
    Matrix st = s.transpose();
    Matrix x = inverse(st * s) * st * op * s;
    if (s * x != op * s) throw NotSemisimple("multiplication does not preserve a joint eigenspace");
    RationalRoots rr = rational_roots(charpoly(x));
    if (!rr.split) throw NotSplit("multiplication operator has irrational eigenvalues");
    std::size_t total = 0;
    for (const Rational& lambda : rr.roots) {
      Matrix shifted = x - lambda * Matrix::identity(k);
      std::vector<Vec> ker = kernel(shifted);
      total += ker.size();
      Matrix sub(s.rows(), ker.size());
      for (std::size_t c = 0; c < ker.size(); ++c) sub.set_column(c, s * ker[c]);
      out.push_back(sub);
    }
    if (total != k) throw NotSemisimple("multiplication operator is not diagonalizable");
  }
  return out;
}

inline int first_nonzero_sign(const Vec& v) {
  for (const Rational& x : v)
    if (x != 0) return sgn(x);
  return 0;
}

}  // namespace detail

// Decomposes a split semisimple algebra into normalized idempotents. The result
// is canonical: each e_mu has positive leading ambient coordinate and the e_mu
// are sorted lexicographically.
inline SemisimpleData semisimplify(const FrobeniusAlgebra& a) {
  if (!a.is_semisimple()) throw NotSemisimple("not semisimple: euler class is not invertible");
  std::size_t d = a.dim();
  std::vector<Matrix> lines;
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_int_distribution<int> coef(-7, 7);
  for (int attempt = 0; attempt < 8 && lines.empty(); ++attempt) {
    Vec x = zero_vec(d);
    for (auto& c : x) c = coef(rng);
    if (is_zero(x)) continue;
    auto parts = detail::refine({Matrix::identity(d)}, a.mult_operator(x));
    if (parts.size() == d) lines = parts;
  }
  if (lines.empty()) {
    lines = {Matrix::identity(d)};
    for (std::size_t i = 0; i < d; ++i) lines = detail::refine(lines, a.mult_operator(unit_vec(d, i)));
    if (lines.size() != d) throw NotSemisimple("joint eigenspaces are not one-dimensional");
  }

  std::vector<std::pair<Vec, Rational>> idem;
  for (const Matrix& line : lines) {
    Vec u = line.column(0);
    Vec uu = a.multiply(u, u);
    std::size_t i = 0;
    while (u[i] == 0) ++i;
    Rational c = uu[i] / u[i];
    if (c == 0 || uu != c * u) throw NotSemisimple("eigenline does not contain an idempotent");
    Vec p = Rational(1) / c * u;
    auto root = exact_sqrt(a.trace(p));
    if (!root) throw NotSplit("trace of an idempotent is not a rational square");
    Rational theta = Rational(detail::first_nonzero_sign(p)) * *root;
    idem.push_back({Rational(1) / theta * p, theta});
  }
  std::sort(idem.begin(), idem.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  SemisimpleData ss;
  ss.basis = Matrix(d, d);
  for (std::size_t mu = 0; mu < d; ++mu) {
    ss.basis.set_column(mu, idem[mu].first);
    ss.weights.push_back(idem[mu].second);
  }
  ss.basis_inverse = inverse(ss.basis);
  auto report = validate_semisimple(a, ss);
  if (!report.empty()) throw ValidationError(report);
  return ss;
}

// Semisimple algebra whose normalized idempotents are the columns of basis
// (ambient coordinates) with the given weights.
inline FrobeniusAlgebra semisimple_algebra(const Vec& weights, const Matrix& basis) {
  std::size_t d = weights.size();
  if (basis.rows() != d || basis.cols() != d) throw DimensionMismatch("basis shape");
  Matrix binv = inverse(basis);
  Matrix eta(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t mu = 0; mu < d; ++mu) eta(i, j) += binv(mu, i) * binv(mu, j);
  std::vector<std::vector<Vec>> products(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec w = zero_vec(d);
      for (std::size_t mu = 0; mu < d; ++mu) w[mu] = binv(mu, i) * binv(mu, j) / weights[mu];
      products[i][j] = basis * w;
    }
  return FrobeniusAlgebra(eta, products, basis * weights);
}

inline FrobeniusAlgebra diagonal_algebra(const Vec& weights) {
  return semisimple_algebra(weights, Matrix::identity(weights.size()));
}

// Q[x]/(x^k) with basis 1, x, ..., x^{k-1} and eta(x^i, x^j) = [i+j == k-1].
inline FrobeniusAlgebra truncated_polynomial_algebra(std::size_t k) {
  Matrix eta(k, k);
  for (std::size_t i = 0; i < k; ++i) eta(i, k - 1 - i) = 1;
  std::vector<std::vector<Vec>> products(k, std::vector<Vec>(k, zero_vec(k)));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i + j < k) products[i][j][i + j] = 1;
  return FrobeniusAlgebra(eta, products, unit_vec(k, 0));
}

}  // namespace cohft

#endif
