#ifndef COHFT_KAPPA_HOPF_HPP
#define COHFT_KAPPA_HOPF_HPP

#include <vector>

#include "frobenius.hpp"
#include "poly.hpp"

namespace cohft {

// Linear map A -> Q[kappa], stored by its values on the ambient basis.
struct CovectorKappaPoly {
  std::vector<KappaPoly> values;

  std::size_t dim() const { return values.size(); }

  KappaPoly operator()(const Vec& v) const {
    if (v.size() != values.size()) throw DimensionMismatch("covector argument length");
    KappaPoly out;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) out += v[i] * values[i];
    return out;
  }

  CovectorKappaPoly truncated(int max_degree) const {
    CovectorKappaPoly out;
    for (const KappaPoly& p : values) out.values.push_back(p.truncated(max_degree));
    return out;
  }

  friend bool operator==(const CovectorKappaPoly& a, const CovectorKappaPoly& b) { return a.values == b.values; }
  friend bool operator!=(const CovectorKappaPoly& a, const CovectorKappaPoly& b) { return !(a == b); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
      out += "b" + std::to_string(i + 1) + " -> " + values[i].to_string() + "\n";
    return out;
  }
};

// kappa_j -> kappa_j (x) 1 + 1 (x) kappa_j, extended multiplicatively.
inline KappaTensor coproduct(const KappaPoly& p, int max_degree = -1) {
  KappaTensor out;
  for (const auto& [m, c] : p.terms()) {
    KappaTensor acc = KappaTensor::monomial(KappaPair{});
    for (std::size_t i = 0; i < m.e.size(); ++i) {
      int e = m.e[i];
      if (e == 0) continue;
      KappaTensor factor;
      for (int a = 0; a <= e; ++a) {
        Rational binom = factorial(e) / (factorial(a) * factorial(e - a));
        factor.add(KappaPair{KappaMono::kappa(static_cast<int>(i + 1), a), KappaMono::kappa(static_cast<int>(i + 1), e - a)},
                   binom);
      }
      acc = multiply(acc, factor, max_degree);
    }
    out += c * acc;
  }
  return out;
}

inline Rational counit(const KappaPoly& p) { return p.constant_term(); }

// kappa_j -> -kappa_j
inline KappaPoly antipode(const KappaPoly& p) {
  KappaPoly out;
  for (const auto& [m, c] : p.terms()) {
    int n = 0;
    for (int e : m.e) n += e;
    out.add(m, n % 2 ? Rational(-c) : c);
  }
  return out;
}

inline KappaPoly tensor_multiply(const KappaTensor& t) {
  KappaPoly out;
  for (const auto& [m, c] : t.terms()) out.add(m.left * m.right, c);
  return out;
}

inline KappaTensor tensor_map(const KappaTensor& t, KappaPoly (*left)(const KappaPoly&),
                              KappaPoly (*right)(const KappaPoly&)) {
  KappaTensor out;
  for (const auto& [m, c] : t.terms()) {
    KappaPoly l = left ? left(KappaPoly::monomial(m.left)) : KappaPoly::monomial(m.left);
    KappaPoly r = right ? right(KappaPoly::monomial(m.right)) : KappaPoly::monomial(m.right);
    for (const auto& [ml, cl] : l.terms())
      for (const auto& [mr, cr] : r.terms()) out.add(KappaPair{ml, mr}, c * cl * cr);
  }
  return out;
}

inline KappaTensor tensor(const KappaPoly& a, const KappaPoly& b, int max_degree = -1) {
  KappaTensor out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (max_degree < 0 || ma.degree() + mb.degree() <= max_degree) out.add(KappaPair{ma, mb}, ca * cb);
  return out;
}

// X(e_mu) for every mu.
inline std::vector<KappaPoly> on_idempotents(const CovectorKappaPoly& x, const SemisimpleData& ss) {
  std::vector<KappaPoly> out;
  for (std::size_t mu = 0; mu < ss.dim(); ++mu) out.push_back(x(ss.e(mu)));
  return out;
}

// Covector with prescribed values f_mu on e_mu.
inline CovectorKappaPoly from_idempotents(const std::vector<KappaPoly>& f, const SemisimpleData& ss) {
  CovectorKappaPoly out;
  for (std::size_t i = 0; i < ss.dim(); ++i) {
    KappaPoly v;
    for (std::size_t mu = 0; mu < ss.dim(); ++mu)
      if (ss.basis_inverse(mu, i) != 0) v += ss.basis_inverse(mu, i) * f[mu];
    out.values.push_back(v);
  }
  return out;
}

// (X.Y)(v) = sum_mu theta_mu^{-1} v^mu X(e_mu) (x) Y(e_mu), one tensor per ambient basis vector.
inline std::vector<KappaTensor> convolution(const CovectorKappaPoly& x, const CovectorKappaPoly& y,
                                            const SemisimpleData& ss, int max_degree = -1) {
  auto xe = on_idempotents(x, ss), ye = on_idempotents(y, ss);
  std::vector<KappaTensor> per_mu;
  for (std::size_t mu = 0; mu < ss.dim(); ++mu) per_mu.push_back(tensor(xe[mu], ye[mu], max_degree));
  std::vector<KappaTensor> out(ss.dim());
  for (std::size_t i = 0; i < ss.dim(); ++i)
    for (std::size_t mu = 0; mu < ss.dim(); ++mu) {
      Rational c = ss.basis_inverse(mu, i) / ss.weights[mu];
      if (c != 0) out[i] += c * per_mu[mu];
    }
  return out;
}

// Convolution followed by multiplication in Q[kappa].
inline CovectorKappaPoly conv_product(const CovectorKappaPoly& x, const CovectorKappaPoly& y,
                                      const SemisimpleData& ss, int max_degree = -1) {
  auto xe = on_idempotents(x, ss), ye = on_idempotents(y, ss);
  std::vector<KappaPoly> f;
  for (std::size_t mu = 0; mu < ss.dim(); ++mu)
    f.push_back(Rational(1) / ss.weights[mu] * multiply(xe[mu], ye[mu], max_degree));
  return from_idempotents(f, ss);
}

// The trace covector v -> theta(v), the unit for conv_product.
inline CovectorKappaPoly trace_covector(const FrobeniusAlgebra& a) {
  CovectorKappaPoly out;
  for (std::size_t i = 0; i < a.dim(); ++i) out.values.push_back(KappaPoly(a.trace(unit_vec(a.dim(), i))));
  return out;
}

inline void require_no_constant_term(const CovectorKappaPoly& x) {
  for (const KappaPoly& p : x.values)
    if (p.constant_term() != 0) throw NonzeroConstantTerm("argument has a nonzero constant term");
}

// Closed form: exp_conv(x)(e_mu) = theta_mu exp(x(e_mu)/theta_mu).
inline CovectorKappaPoly exp_conv(const CovectorKappaPoly& x, const SemisimpleData& ss, int max_degree) {
  require_no_constant_term(x);
  auto xe = on_idempotents(x, ss);
  std::vector<KappaPoly> f;
  for (std::size_t mu = 0; mu < ss.dim(); ++mu) {
    const Rational& t = ss.weights[mu];
    f.push_back(t * poly_exp(Rational(1) / t * xe[mu], max_degree));
  }
  return from_idempotents(f, ss);
}

// Literal series theta + sum_{n>=1} x^{.n}/n!.
inline CovectorKappaPoly exp_conv_by_series(const FrobeniusAlgebra& a, const CovectorKappaPoly& x,
                                            const SemisimpleData& ss, int max_degree) {
  require_no_constant_term(x);
  CovectorKappaPoly out = trace_covector(a), power = trace_covector(a);
  for (int n = 1; n <= max_degree; ++n) {
    power = conv_product(power, x, ss, max_degree);
    for (std::size_t i = 0; i < out.dim(); ++i) out.values[i] += Rational(1) / factorial(n) * power.values[i];
  }
  return out;
}

// sum_{n>=1} (-1)^{n-1} (X - theta)^{.n} / n
inline CovectorKappaPoly log_conv(const FrobeniusAlgebra& a, const CovectorKappaPoly& x, const SemisimpleData& ss,
                                  int max_degree) {
  CovectorKappaPoly theta = trace_covector(a);
  CovectorKappaPoly y;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x.values[i].constant_term() != theta.values[i].constant_term())
      throw WrongConstantTerm("constant term differs from the trace form");
    y.values.push_back(x.values[i] - theta.values[i]);
  }
  CovectorKappaPoly out, power = theta;
  out.values.assign(x.dim(), KappaPoly());
  for (int n = 1; n <= max_degree; ++n) {
    power = conv_product(power, y, ss, max_degree);
    Rational c = frac(n % 2 ? 1 : -1, n);
    for (std::size_t i = 0; i < out.dim(); ++i) out.values[i] += c * power.values[i];
  }
  return out;
}

inline bool is_primitive(const KappaPoly& p, int max_degree = -1) {
  KappaTensor expected = tensor(p, KappaPoly(Rational(1))) + tensor(KappaPoly(Rational(1)), p);
  if (max_degree >= 0) expected = expected.truncated(max_degree);
  return coproduct(p, max_degree) == expected;
}

inline bool is_primitive(const CovectorKappaPoly& x, int max_degree = -1) {
  for (const KappaPoly& p : x.values)
    if (!is_primitive(p, max_degree)) return false;
  return true;
}

// Delta X(v) = (X.X)(v) through total degree max_degree, and X(v) = theta(v) + ...
inline bool is_grouplike(const FrobeniusAlgebra& a, const CovectorKappaPoly& x, const SemisimpleData& ss,
                         int max_degree) {
  CovectorKappaPoly theta = trace_covector(a);
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (x.values[i].constant_term() != theta.values[i].constant_term()) return false;
  auto conv = convolution(x, x, ss, max_degree);
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (coproduct(x.values[i], max_degree) != conv[i]) return false;
  return true;
}

}  // namespace cohft

#endif
