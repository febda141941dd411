#ifndef COHFT_GIVENTAL_HPP
#define COHFT_GIVENTAL_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "kappa_hopf.hpp"
#include "parallel.hpp"
#include "series.hpp"
#include "taut.hpp"

namespace cohft {

// ---- A-valued power series in one variable --------------------------------

inline std::vector<Vec> vec_series_multiply(const FrobeniusAlgebra& a, const std::vector<Vec>& x,
                                            const std::vector<Vec>& y, int order) {
  std::vector<Vec> out(order + 1, zero_vec(a.dim()));
  for (int i = 0; i <= order && i < static_cast<int>(x.size()); ++i) {
    if (is_zero(x[i])) continue;
    for (int j = 0; i + j <= order && j < static_cast<int>(y.size()); ++j)
      if (!is_zero(y[j])) out[i + j] += a.multiply(x[i], y[j]);
  }
  return out;
}

// log of a series with constant term 1, computed with the algebra product.
inline std::vector<Vec> vec_series_log(const FrobeniusAlgebra& a, const std::vector<Vec>& x, int order) {
  if (x.empty() || x[0] != a.unit()) throw WrongConstantTerm("series constant term is not the unit");
  std::vector<Vec> u(order + 1, zero_vec(a.dim()));
  for (int k = 1; k <= order && k < static_cast<int>(x.size()); ++k) u[k] = x[k];
  std::vector<Vec> out(order + 1, zero_vec(a.dim())), power(order + 1, zero_vec(a.dim()));
  power[0] = a.unit();
  for (int n = 1; n <= order; ++n) {
    power = vec_series_multiply(a, power, u, order);
    Rational c = frac(n % 2 ? 1 : -1, n);
    for (int k = 0; k <= order; ++k) add_scaled(out[k], c, power[k]);
  }
  return out;
}

// Scalar log(s(z)/s(0)) through the given order.
inline std::vector<Rational> scalar_series_log(const std::vector<Rational>& s, int order) {
  std::vector<Rational> u(order + 1, Rational(0));
  for (int k = 1; k <= order && k < static_cast<int>(s.size()); ++k) u[k] = s[k] / s[0];
  std::vector<Rational> out(order + 1, Rational(0)), power(order + 1, Rational(0));
  power[0] = 1;
  for (int n = 1; n <= order; ++n) {
    std::vector<Rational> next(order + 1, Rational(0));
    for (int i = 0; i <= order; ++i)
      for (int j = 1; i + j <= order; ++j) next[i + j] += power[i] * u[j];
    power = next;
    Rational c = frac(n % 2 ? 1 : -1, n);
    for (int k = 0; k <= order; ++k) out[k] += c * power[k];
  }
  return out;
}

// phi_j(b_i) = -eta(L_j, b_i) where L = log(R^{-1}(psi) 1); index [j-1][i].
inline std::vector<Vec> coherent_phi(const FrobeniusAlgebra& a, const EndSeries& r) {
  EndSeries rinv = invert(r);
  std::vector<Vec> series;
  for (const Matrix& m : rinv.coeffs) series.push_back(m * a.unit());
  std::vector<Vec> log = vec_series_log(a, series, r.order());
  std::vector<Vec> phi;
  for (int j = 1; j <= r.order(); ++j) {
    Vec v(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) v[i] = -a.pair(log[j], unit_vec(a.dim(), i));
    phi.push_back(v);
  }
  return phi;
}

// ---- theory specification -------------------------------------------------

// Semisimple theory data: algebra, idempotent frame, covectors phi_1..phi_D
// (phi[j-1][i] = phi_j(b_i)) and a symplectic R with R_0 = Id, all through degree D.
class CohFTSpec {
 public:
  CohFTSpec(FrobeniusAlgebra algebra, SemisimpleData ss, std::vector<Vec> phi, EndSeries r, int degree, bool coherent)
      : algebra_(std::move(algebra)),
        ss_(std::move(ss)),
        phi_(std::move(phi)),
        r_(std::move(r)),
        degree_(degree),
        coherent_(coherent) {
    std::vector<std::string> report = validate_semisimple(algebra_, ss_);
    std::size_t d = algebra_.dim();
    if (degree_ < 1) report.push_back("truncation degree must be >= 1");
    if (static_cast<int>(phi_.size()) != degree_) report.push_back("need exactly D covectors phi_1..phi_D");
    for (const Vec& p : phi_)
      if (p.size() != d) report.push_back("phi covector has wrong length");
    if (r_.coeffs.empty() || r_.dim() != d) report.push_back("R has wrong dimension");
    if (!report.empty()) throw ValidationError(report);
    if (r_.order() != degree_) throw OrderMismatch("R must be given through the truncation degree");
    if (r_[0] != Matrix::identity(d)) report.push_back("R_0 is not the identity");
    if (!check_symplectic(r_, algebra_.eta())) report.push_back("R is not symplectic: R(z) R*(-z) != Id");
    if (!report.empty()) throw ValidationError(report);
    derive();
    if (coherent_) {
      std::string diff = compatibility_difference();
      if (!diff.empty())
        throw ValidationError({"compatibility relation violated: log omega_plus(v) != -eta(beta log(R^-1(psi) 1), v) at " + diff});
    }
  }

  const FrobeniusAlgebra& algebra() const { return algebra_; }
  const SemisimpleData& ss() const { return ss_; }
  const std::vector<Vec>& phi() const { return phi_; }
  const EndSeries& R() const { return r_; }
  int degree() const { return degree_; }
  bool coherent() const { return coherent_; }
  std::size_t dim() const { return algebra_.dim(); }

  const EndSeries& R_inverse() const { return rinv_; }
  const EndSeries& R_inverse_ss() const { return rinv_ss_; }
  const BivectorSeries& kernel_ss() const { return kernel_ss_; }
  // a_j^mu from T_mu(z)/theta_mu = z(1 - exp(-sum_j a_j^mu z^j)); index [mu][j-1]
  const std::vector<std::vector<Rational>>& vertex_exponents() const { return vertex_exponents_; }
  const CovectorKappaPoly& omega_plus() const { return omega_plus_; }

  // "" when the compatibility relation holds, otherwise the first differing term.
  std::string compatibility_difference() const {
    std::vector<Vec> target = coherent_phi(algebra_, r_);
    CovectorKappaPoly lhs = log_conv(algebra_, omega_plus_, ss_, degree_);
    for (std::size_t i = 0; i < dim(); ++i) {
      KappaPoly rhs;
      for (int j = 1; j <= degree_; ++j) rhs.add(KappaMono::kappa(j), target[j - 1][i]);
      std::string diff = first_difference(lhs.values[i], rhs);
      if (!diff.empty()) return "b" + std::to_string(i + 1) + " " + diff;
    }
    return "";
  }

 private:
  void derive() {
    std::size_t d = dim();
    rinv_ = invert(r_);
    EndSeries r_ss = conjugate(r_, ss_.basis, ss_.basis_inverse);
    rinv_ss_ = invert(r_ss);
    kernel_ss_ = edge_kernel(r_ss, Matrix::identity(d));
    for (std::size_t mu = 0; mu < d; ++mu) {
      std::vector<Rational> s;
      for (const Matrix& m : rinv_ss_.coeffs) s.push_back((m * ss_.weights)[mu]);
      std::vector<Rational> log = scalar_series_log(s, degree_);
      std::vector<Rational> a;
      for (int j = 1; j <= degree_; ++j) a.push_back(-log[j]);
      vertex_exponents_.push_back(a);
    }
    CovectorKappaPoly x;
    for (std::size_t i = 0; i < d; ++i) {
      KappaPoly p;
      for (int j = 1; j <= degree_; ++j) p.add(KappaMono::kappa(j), phi_[j - 1][i]);
      x.values.push_back(p);
    }
    omega_plus_ = exp_conv(x, ss_, degree_);
  }

  FrobeniusAlgebra algebra_;
  SemisimpleData ss_;
  std::vector<Vec> phi_;
  EndSeries r_;
  int degree_;
  bool coherent_;
  EndSeries rinv_, rinv_ss_;
  BivectorSeries kernel_ss_;
  std::vector<std::vector<Rational>> vertex_exponents_;
  CovectorKappaPoly omega_plus_;
};

inline int stable_dimension(int g, int n) { return 3 * g - 3 + n; }

inline void check_slots(const CohFTSpec& spec, int n, const std::vector<Vec>& vs) {
  if (static_cast<int>(vs.size()) != n) throw DimensionMismatch("expected " + std::to_string(n) + " slot vectors");
  for (const Vec& v : vs)
    if (v.size() != spec.dim()) throw DimensionMismatch("slot vector has wrong length");
}

// alpha^g, or alpha * alpha^{-1} in genus zero (the alpha-shift device).
inline Vec genus_prefactor(const FrobeniusAlgebra& a, int g) {
  Vec alpha = a.euler_class();
  if (g == 0) return a.multiply(alpha, a.invert(alpha));
  return a.power(alpha, g);
}

inline Rational tqft_value(const CohFTSpec& spec, int g, const std::vector<Vec>& vs) {
  require_stable(g, static_cast<int>(vs.size()));
  check_slots(spec, static_cast<int>(vs.size()), vs);
  const FrobeniusAlgebra& a = spec.algebra();
  Vec x = a.power(a.euler_class(), g);
  for (const Vec& v : vs) x = a.multiply(x, v);
  return a.trace(x);
}

inline CovectorKappaPoly omega_plus(const CohFTSpec& spec) { return spec.omega_plus(); }

// Omega~+(alpha^g v_1 ... v_n) through max_degree, no stability or dimension cap.
inline KappaPoly fixed_eval(const CohFTSpec& spec, int g, const std::vector<Vec>& vs, int max_degree) {
  const FrobeniusAlgebra& a = spec.algebra();
  Vec x = genus_prefactor(a, g);
  for (const Vec& v : vs) x = a.multiply(x, v);
  return spec.omega_plus()(x).truncated(max_degree);
}

inline KappaPoly reconstruct_fixed(const CohFTSpec& spec, int g, const std::vector<Vec>& vs) {
  int n = static_cast<int>(vs.size());
  require_stable(g, n);
  check_slots(spec, n, vs);
  return fixed_eval(spec, g, vs, std::min(spec.degree(), stable_dimension(g, n)));
}

// Omega~+(extra * alpha^g * prod_i R^{-1}(psi_i) v_i) through max_degree.
inline SmoothClass free_eval(const CohFTSpec& spec, int g, const std::vector<Vec>& vs, int max_degree,
                             const Vec* extra = nullptr) {
  const FrobeniusAlgebra& a = spec.algebra();
  int n = static_cast<int>(vs.size());
  std::map<std::vector<int>, Vec> acc;
  Vec start = genus_prefactor(a, g);
  if (extra) start = a.multiply(start, *extra);
  acc[std::vector<int>(n, 0)] = start;
  const EndSeries& rinv = spec.R_inverse();
  for (int l = 0; l < n; ++l) {
    std::vector<Vec> w;
    for (const Matrix& m : rinv.coeffs) w.push_back(m * vs[l]);
    std::map<std::vector<int>, Vec> next;
    for (const auto& [psi, x] : acc) {
      int used = 0;
      for (int p : psi) used += p;
      for (int k = 0; used + k <= max_degree && k <= rinv.order(); ++k) {
        if (is_zero(w[k])) continue;
        std::vector<int> key = psi;
        key[l] = k;
        Vec prod = a.multiply(x, w[k]);
        auto it = next.find(key);
        if (it == next.end())
          next.emplace(key, prod);
        else
          it->second += prod;
      }
    }
    acc = std::move(next);
  }
  SmoothClass out;
  for (const auto& [psi, x] : acc) {
    int used = 0;
    for (int p : psi) used += p;
    KappaPoly val = spec.omega_plus()(x).truncated(max_degree - used);
    for (const auto& [m, c] : val.terms()) out.add(KappaPsiMono(m, psi), c);
  }
  return out;
}

inline SmoothClass reconstruct_free(const CohFTSpec& spec, int g, const std::vector<Vec>& vs) {
  int n = static_cast<int>(vs.size());
  require_stable(g, n);
  check_slots(spec, n, vs);
  return free_eval(spec, g, vs, std::min(spec.degree(), stable_dimension(g, n)));
}

// Omega+(v (x) w) = Omega~+((R(psi)^{-1} v) . w), psi recorded as psi_1.
inline SmoothClass two_point(const CohFTSpec& spec, const Vec& v, const Vec& w, int max_degree = -1) {
  if (max_degree < 0) max_degree = spec.degree();
  const FrobeniusAlgebra& a = spec.algebra();
  SmoothClass out;
  for (int k = 0; k <= max_degree && k <= spec.R_inverse().order(); ++k) {
    Vec x = a.multiply(spec.R_inverse()[k] * v, w);
    KappaPoly val = spec.omega_plus()(x).truncated(max_degree - k);
    for (const auto& [m, c] : val.terms()) out.add(KappaPsiMono(m, {k}), c);
  }
  return out;
}

// ---- R-matrix action on the TQFT ------------------------------------------

namespace detail {

// Decoration monomial used while expanding a single graph.
struct DecorationMono {
  std::vector<KappaMono> kappa;
  std::vector<int> psi;

  int degree() const {
    int d = 0;
    for (const KappaMono& k : kappa) d += k.degree();
    for (int p : psi) d += p;
    return d;
  }
  friend DecorationMono operator*(const DecorationMono& a, const DecorationMono& b) {
    DecorationMono out = a.kappa.empty() ? b : a;
    if (a.kappa.empty() || b.kappa.empty()) return out;
    for (std::size_t v = 0; v < out.kappa.size(); ++v) out.kappa[v] = a.kappa[v] * b.kappa[v];
    for (std::size_t h = 0; h < out.psi.size(); ++h) out.psi[h] = a.psi[h] + b.psi[h];
    return out;
  }
  friend bool operator<(const DecorationMono& a, const DecorationMono& b) {
    if (a.psi != b.psi) return a.psi < b.psi;
    for (std::size_t v = 0; v < a.kappa.size() && v < b.kappa.size(); ++v)
      if (a.kappa[v] != b.kappa[v]) return a.kappa[v].e < b.kappa[v].e;
    return a.kappa.size() < b.kappa.size();
  }
  friend bool operator==(const DecorationMono& a, const DecorationMono& b) {
    return a.kappa == b.kappa && a.psi == b.psi;
  }
};

}  // namespace detail

// Cont_Gamma before division by |Aut|: sum over projector assignments of
// vertex factors theta^{2-2g-n} exp(sum a_j kappa_j), leg series
// (R^{-1}(psi) v)^mu and edge kernel entries K^{mu nu}.
inline TautExpr graph_contribution(const CohFTSpec& spec, const StableGraph& gr, const std::vector<Vec>& vs,
                                   int max_degree) {
  using detail::DecorationMono;
  using DecPoly = Poly<DecorationMono>;
  int V = gr.num_vertices(), H = gr.num_half_edges(), n = gr.num_legs(), E = gr.num_edges();
  int g = gr.total_genus();
  TautExpr out{g, n, max_degree, {}};
  check_slots(spec, n, vs);
  int budget = max_degree - E;
  if (budget < 0) return out;
  std::size_t d = spec.dim();
  const SemisimpleData& ss = spec.ss();
  const BivectorSeries& K = spec.kernel_ss();
  if (E > 0 && budget > K.order) throw OrderMismatch("edge kernel not known to the requested degree");

  DecorationMono one{std::vector<KappaMono>(V), std::vector<int>(H, 0)};
  auto mono = [&](int v, const KappaMono& k, std::vector<std::pair<int, int>> psi) {
    DecorationMono m = one;
    if (v >= 0) m.kappa[v] = k;
    for (auto [h, p] : psi) m.psi[h] = p;
    return m;
  };

  // leg series in the idempotent frame: legs[l][k][mu]
  std::vector<std::vector<Vec>> legs(n);
  for (int l = 0; l < n; ++l) {
    Vec w = ss.to_semisimple(vs[l]);
    for (const Matrix& m : spec.R_inverse_ss().coeffs) legs[l].push_back(m * w);
  }
  // vertex factors per (vertex, projector)
  std::vector<std::vector<DecPoly>> vertex_poly(V, std::vector<DecPoly>(d));
  for (int v = 0; v < V; ++v)
    for (std::size_t mu = 0; mu < d; ++mu) {
      KappaPoly ex;
      for (int j = 1; j <= budget && j <= spec.degree(); ++j)
        ex.add(KappaMono::kappa(j), spec.vertex_exponents()[mu][j - 1]);
      DecPoly p;
      KappaPoly e = poly_exp(ex, budget);
      for (const auto& [m, c] : e.terms()) p.add(mono(v, m, {}), c);
      vertex_poly[v][mu] = p;
    }

  std::vector<int> assign(V, 0);
  DecPoly total;
  for (;;) {
    Rational scalar = 1;
    for (int v = 0; v < V; ++v)
      scalar *= rational_pow(ss.weights[assign[v]], 2 - 2 * gr.genus[v] - gr.valence(v));
    DecPoly acc = DecPoly::monomial(one, scalar);
    for (int l = 0; l < n && !acc.is_zero(); ++l) {
      int mu = assign[gr.leg_vertex[l]];
      DecPoly f;
      for (int k = 0; k <= budget && k < static_cast<int>(legs[l].size()); ++k) f.add(mono(-1, {}, {{l, k}}), legs[l][k][mu]);
      acc = multiply(acc, f, budget);
    }
    for (int e = 0; e < E && !acc.is_zero(); ++e) {
      int mu = assign[gr.edges[e].first], nu = assign[gr.edges[e].second];
      int h1 = n + 2 * e, h2 = h1 + 1;
      DecPoly f;
      for (int i = 0; i <= budget; ++i)
        for (int j = 0; i + j <= budget; ++j) f.add(mono(-1, {}, {{h1, i}, {h2, j}}), K.at(i, j)(mu, nu));
      acc = multiply(acc, f, budget);
    }
    for (int v = 0; v < V && !acc.is_zero(); ++v) acc = multiply(acc, vertex_poly[v][assign[v]], budget);
    total += acc;
    int v = 0;
    while (v < V && ++assign[v] == static_cast<int>(d)) assign[v++] = 0;
    if (v == V) break;
  }

  auto autos = automorphisms(gr);
  for (const auto& [m, c] : total.terms()) {
    DecoratedGraph dg{gr, m.kappa, m.psi};
    out.add(canonical_decoration(dg, autos), c);
  }
  return out;
}

struct ActionOptions {
  unsigned threads = 1;
  int max_degree = -1;  // default min(D, 3g-3+n)
};

inline TautExpr r_action(const CohFTSpec& spec, int g, const std::vector<Vec>& vs, ActionOptions opt = {}) {
  int n = static_cast<int>(vs.size());
  require_stable(g, n);
  check_slots(spec, n, vs);
  int max_degree = opt.max_degree >= 0 ? opt.max_degree : std::min(spec.degree(), stable_dimension(g, n));
  const GraphCatalog& cat = graph_catalog(g, n);
  std::vector<TautExpr> parts(cat.graphs.size());
  parallel_for(cat.graphs.size(), opt.threads, [&](std::size_t i) {
    if (cat.graphs[i].num_edges() > max_degree) return;
    parts[i] = graph_contribution(spec, cat.graphs[i], vs, max_degree);
  });
  TautExpr out{g, n, max_degree, {}};
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Rational w = frac(1, cat.aut_order[i]);
    for (const auto& [dg, c] : parts[i].terms) out.add(dg, w * c);
  }
  return out;
}

// ---- axioms ---------------------------------------------------------------

enum class TheoryMode { fixed, free };

struct AxiomCheck {
  std::string axiom;
  int g = 0, n = 0;
  bool passed = true;
  std::string detail;  // first differing monomial on failure
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::string to_string() const {
    std::string out;
    for (const auto& c : checks) {
      out += (c.passed ? "pass " : "FAIL ") + c.axiom + " (g,n)=(" + std::to_string(c.g) + "," + std::to_string(c.n) + ")";
      if (!c.passed) out += ": " + c.detail;
      out += "\n";
    }
    return out;
  }
};

// psi_i <-> psi_j
inline SmoothClass swap_psi(const SmoothClass& p, int i, int j) {
  SmoothClass out;
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> psi = m.psi;
    int len = std::max({static_cast<int>(psi.size()), i + 1, j + 1});
    psi.resize(len, 0);
    std::swap(psi[i], psi[j]);
    out.add(KappaPsiMono(m.kappa, psi), c);
  }
  return out;
}

namespace detail {

// Basis-vector tuples for a multilinear check: all of them when few, else a fixed sample.
inline std::vector<std::vector<int>> slot_tuples(std::size_t d, int n) {
  std::vector<std::vector<int>> out;
  double total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<double>(d);
  if (total <= 27) {
    std::vector<int> t(n, 0);
    for (;;) {
      out.push_back(t);
      int i = 0;
      while (i < n && ++t[i] == static_cast<int>(d)) t[i++] = 0;
      if (i == n) break;
    }
    return out;
  }
  std::mt19937 rng(20240901u + static_cast<unsigned>(d * 31 + n));
  std::uniform_int_distribution<int> pick(0, static_cast<int>(d) - 1);
  for (int s = 0; s < 12; ++s) {
    std::vector<int> t(n);
    for (int& x : t) x = pick(rng);
    out.push_back(t);
  }
  return out;
}

}  // namespace detail

inline AxiomReport verify_axioms(const CohFTSpec& spec, TheoryMode mode, int max_dim) {
  const FrobeniusAlgebra& a = spec.algebra();
  std::size_t d = a.dim();
  int D = spec.degree();
  AxiomReport report;
  auto basis = [&](int i) { return unit_vec(d, i); };

  // (4) separating sewing: group-likeness of Omega~+
  {
    AxiomCheck c{"separating sewing (group-like)", 0, 0, true, ""};
    if (!is_grouplike(a, spec.omega_plus(), spec.ss(), D)) {
      c.passed = false;
      c.detail = "coproduct of Omega~+ differs from its convolution square";
    }
    report.checks.push_back(c);
  }
  if (mode == TheoryMode::free && !spec.coherent()) {
    std::string diff = spec.compatibility_difference();
    report.checks.push_back({"compatibility", 0, 0, diff.empty(), diff});
  }

  for (int g = 0; 3 * g - 3 + 1 <= max_dim; ++g)
    for (int n = 1; 3 * g - 3 + n <= max_dim; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      AxiomCheck sym{"symmetry", g, n, true, ""}, sew{"non-separating sewing", g, n, true, ""},
          forget{"forgetful", g, n, true, ""};
      for (const auto& t : detail::slot_tuples(d, n)) {
        std::vector<Vec> vs;
        for (int i : t) vs.push_back(basis(i));
        std::vector<Vec> with_unit = vs;
        with_unit.push_back(a.unit());
        if (mode == TheoryMode::fixed) {
          KappaPoly base = fixed_eval(spec, g, vs, D);
          for (int i = 0; i + 1 < n && sym.passed; ++i) {
            std::vector<Vec> sw = vs;
            std::swap(sw[i], sw[i + 1]);
            std::string diff = first_difference(base, fixed_eval(spec, g, sw, D));
            if (!diff.empty()) sym = {"symmetry", g, n, false, diff};
          }
          if (g >= 1 && sew.passed) {
            KappaPoly rhs;
            for (std::size_t mu = 0; mu < d; ++mu) {
              std::vector<Vec> ext = vs;
              ext.push_back(spec.ss().e(mu));
              ext.push_back(spec.ss().e(mu));
              rhs += fixed_eval(spec, g - 1, ext, D);
            }
            std::string diff = first_difference(base, rhs);
            if (!diff.empty()) sew = {"non-separating sewing", g, n, false, diff};
          }
          if (forget.passed) {
            // framed points carry no psi, so p* fixes kappa
            std::string diff = first_difference(fixed_eval(spec, g, with_unit, D), base);
            if (!diff.empty()) forget = {"forgetful", g, n, false, diff};
          }
        } else {
          SmoothClass base = free_eval(spec, g, vs, D);
          for (int i = 0; i + 1 < n && sym.passed; ++i) {
            std::vector<Vec> sw = vs;
            std::swap(sw[i], sw[i + 1]);
            std::string diff = first_difference(base, swap_psi(free_eval(spec, g, sw, D), i, i + 1));
            if (!diff.empty()) sym = {"symmetry", g, n, false, diff};
          }
          if (g >= 1 && sew.passed) {
            SmoothClass rhs;
            for (std::size_t mu = 0; mu < d; ++mu) {
              Vec ee = a.multiply(spec.ss().e(mu), spec.ss().e(mu));
              rhs += free_eval(spec, g - 1, vs, D, &ee);
            }
            std::string diff = first_difference(base, rhs);
            if (!diff.empty()) sew = {"non-separating sewing", g, n, false, diff};
          }
          if (forget.passed) {
            SmoothClass lhs = forgetful_pullback(base, n).truncated(D);
            std::string diff = first_difference(lhs, free_eval(spec, g, with_unit, D));
            if (!diff.empty()) forget = {"forgetful", g, n, false, diff};
          }
        }
      }
      report.checks.push_back(sym);
      if (g >= 1) report.checks.push_back(sew);
      report.checks.push_back(forget);
      if (g == 0 && n == 3) {
        AxiomCheck unit{"unit", 0, 3, true, ""};
        for (std::size_t u = 0; u < d && unit.passed; ++u)
          for (std::size_t v = 0; v < d && unit.passed; ++v) {
            std::vector<Vec> vs{a.unit(), basis(u), basis(v)};
            Rational expected = a.pair(basis(u), basis(v));
            if (mode == TheoryMode::fixed) {
              KappaPoly got = fixed_eval(spec, 0, vs, 0);
              if (got != KappaPoly(expected)) unit = {"unit", 0, 3, false, first_difference(got, KappaPoly(expected))};
            } else {
              SmoothClass got = free_eval(spec, 0, vs, 0);
              if (got != SmoothClass(expected)) unit = {"unit", 0, 3, false, first_difference(got, SmoothClass(expected))};
            }
          }
        report.checks.push_back(unit);
      }
    }
  return report;
}

}  // namespace cohft

#endif
