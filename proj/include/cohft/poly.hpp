#ifndef COHFT_POLY_HPP
#define COHFT_POLY_HPP

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace cohft {

// Sparse polynomial over Q. Mono must provide degree(), operator*, operator<
// ordering by (degree, lex) and to_string(). Zero coefficients are never stored.
template <class Mono>
class Poly {
 public:
  using Terms = std::map<Mono, Rational>;

  Poly() = default;
  explicit Poly(const Rational& c) {
    if (c != 0) terms_[Mono{}] = c;
  }
  static Poly monomial(const Mono& m, const Rational& c = 1) {
    Poly p;
    p.add(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Mono{}); }

  int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  Poly truncated(int max_degree) const {
    Poly out;
    for (const auto& [m, c] : terms_)
      if (m.degree() <= max_degree) out.terms_.emplace(m, c);
    return out;
  }

  Poly homogeneous_part(int d) const {
    Poly out;
    for (const auto& [m, c] : terms_)
      if (m.degree() == d) out.terms_.emplace(m, c);
    return out;
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) { return Rational(-1) * a; }

  friend Poly operator*(const Rational& s, const Poly& a) {
    Poly out;
    if (s == 0) return out;
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
    return out;
  }

  // Product keeping only monomials of degree <= max_degree (negative: no cap).
  friend Poly multiply(const Poly& a, const Poly& b, int max_degree) {
    Poly out;
    for (const auto& [ma, ca] : a.terms_) {
      if (max_degree >= 0 && ma.degree() > max_degree) continue;
      for (const auto& [mb, cb] : b.terms_) {
        if (max_degree >= 0 && ma.degree() + mb.degree() > max_degree) continue;
        out.add(ma * mb, ca * cb);
      }
    }
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b, -1); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) out += " + ";
      first = false;
      std::string mono = m.to_string();
      if (mono.empty())
        out += render(c);
      else if (c == 1)
        out += mono;
      else
        out += render(c) + "*" + mono;
    }
    return out;
  }

 private:
  Terms terms_;
};

// exp(p) truncated at max_degree; p must have no constant term.
template <class Mono>
Poly<Mono> poly_exp(const Poly<Mono>& p, int max_degree) {
  Poly<Mono> out(Rational(1)), power(Rational(1));
  for (int k = 1; k <= max_degree; ++k) {
    power = frac(1, k) * multiply(power, p, max_degree);
    if (power.is_zero()) break;
    out += power;
  }
  return out;
}

// Bracketed list of integers, e.g. "[1,0,2]".
inline std::string render_ints(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

// prod_j kappa_j^{e[j-1]}; trailing zeros are trimmed so equal monomials compare equal.
struct KappaMono {
  std::vector<int> e;

  KappaMono() = default;
  explicit KappaMono(std::vector<int> exps) : e(std::move(exps)) { normalize(); }

  static KappaMono kappa(int j, int power = 1) {
    std::vector<int> v(j, 0);
    v[j - 1] = power;
    return KappaMono(v);
  }

  void normalize() {
    while (!e.empty() && e.back() == 0) e.pop_back();
  }

  int exponent(int j) const { return j >= 1 && j <= static_cast<int>(e.size()) ? e[j - 1] : 0; }

  int degree() const {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d += static_cast<int>(i + 1) * e[i];
    return d;
  }

  bool is_one() const { return e.empty(); }

  // Flattened index list: kappa_2^2 kappa_3 -> {2,2,3}.
  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) out.push_back(static_cast<int>(i + 1));
    return out;
  }

  static KappaMono from_indices(const std::vector<int>& idx) {
    std::vector<int> v;
    for (int j : idx) {
      if (static_cast<int>(v.size()) < j) v.resize(j, 0);
      v[j - 1]++;
    }
    return KappaMono(v);
  }

  friend KappaMono operator*(const KappaMono& a, const KappaMono& b) {
    std::vector<int> v(std::max(a.e.size(), b.e.size()), 0);
    for (std::size_t i = 0; i < a.e.size(); ++i) v[i] += a.e[i];
    for (std::size_t i = 0; i < b.e.size(); ++i) v[i] += b.e[i];
    return KappaMono(v);
  }

  friend bool operator<(const KappaMono& a, const KappaMono& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e < b.e;
  }
  friend bool operator==(const KappaMono& a, const KappaMono& b) { return a.e == b.e; }
  friend bool operator!=(const KappaMono& a, const KappaMono& b) { return a.e != b.e; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "k" + std::to_string(i + 1);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
    return out;
  }
};

using KappaPoly = Poly<KappaMono>;

// Monomial in kappa classes and psi_1..psi_n on the smooth locus.
struct KappaPsiMono {
  KappaMono kappa;
  std::vector<int> psi;

  KappaPsiMono() = default;
  KappaPsiMono(KappaMono k, std::vector<int> p) : kappa(std::move(k)), psi(std::move(p)) {
    while (!psi.empty() && psi.back() == 0) psi.pop_back();
  }

  int psi_exponent(int i) const { return i >= 1 && i <= static_cast<int>(psi.size()) ? psi[i - 1] : 0; }

  int degree() const {
    int d = kappa.degree();
    for (int p : psi) d += p;
    return d;
  }

  friend KappaPsiMono operator*(const KappaPsiMono& a, const KappaPsiMono& b) {
    std::vector<int> p(std::max(a.psi.size(), b.psi.size()), 0);
    for (std::size_t i = 0; i < a.psi.size(); ++i) p[i] += a.psi[i];
    for (std::size_t i = 0; i < b.psi.size(); ++i) p[i] += b.psi[i];
    return {a.kappa * b.kappa, p};
  }

  friend bool operator<(const KappaPsiMono& a, const KappaPsiMono& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.psi != b.psi) return a.psi < b.psi;
    return a.kappa.e < b.kappa.e;
  }
  friend bool operator==(const KappaPsiMono& a, const KappaPsiMono& b) {
    return a.kappa == b.kappa && a.psi == b.psi;
  }

  std::string to_string() const {
    std::string out = kappa.to_string();
    for (std::size_t i = 0; i < psi.size(); ++i) {
      if (psi[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "p" + std::to_string(i + 1);
      if (psi[i] > 1) out += "^" + std::to_string(psi[i]);
    }
    return out;
  }
};

using SmoothClass = Poly<KappaPsiMono>;

// Pure tensor m1 (x) m2 in Q[kappa] (x) Q[kappa]; degree is the total degree.
struct KappaPair {
  KappaMono left, right;

  int degree() const { return left.degree() + right.degree(); }

  friend KappaPair operator*(const KappaPair& a, const KappaPair& b) {
    return {a.left * b.left, a.right * b.right};
  }
  friend bool operator<(const KappaPair& a, const KappaPair& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    if (a.left != b.left) return a.left < b.left;
    return a.right < b.right;
  }
  friend bool operator==(const KappaPair& a, const KappaPair& b) {
    return a.left == b.left && a.right == b.right;
  }

  std::string to_string() const {
    if (left.is_one() && right.is_one()) return "";
    std::string l = left.is_one() ? "1" : left.to_string();
    std::string r = right.is_one() ? "1" : right.to_string();
    return "(" + l + "|" + r + ")";
  }
};

using KappaTensor = Poly<KappaPair>;

// First monomial on which two polynomials disagree, rendered, or "" if equal.
template <class Mono>
std::string first_difference(const Poly<Mono>& a, const Poly<Mono>& b) {
  Poly<Mono> d = a - b;
  if (d.is_zero()) return "";
  const auto& [m, c] = *d.terms().begin();
  std::string mono = m.to_string();
  return (mono.empty() ? std::string("1") : mono) + ": " + render(a.coefficient(m)) + " vs " +
         render(b.coefficient(m));
}

}  // namespace cohft

#endif
