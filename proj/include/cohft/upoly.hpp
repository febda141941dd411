#ifndef COHFT_UPOLY_HPP
#define COHFT_UPOLY_HPP

#include <algorithm>
#include <vector>

#include "rational.hpp"

namespace cohft {

// Dense univariate polynomial over Q, coefficients low degree first.
using UPoly = std::vector<Rational>;

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const UPoly& p) { return static_cast<int>(p.size()) - 1; }

inline Rational eval(const UPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(Rational(static_cast<long>(i)) * p[i]);
  trim(d);
  return d;
}

inline UPoly monic(UPoly p) {
  trim(p);
  if (p.empty()) return p;
  Rational lead = p.back();
  for (Rational& c : p) c /= lead;
  return p;
}

// Remainder of a by b (b nonzero).
inline UPoly poly_rem(UPoly a, const UPoly& b, UPoly* quotient = nullptr) {
  trim(a);
  UPoly bb = b;
  trim(bb);
  if (bb.empty()) throw NotInvertible("polynomial division by zero");
  UPoly q(std::max<int>(0, degree(a) - degree(bb) + 1), Rational(0));
  while (!a.empty() && degree(a) >= degree(bb)) {
    int shift = degree(a) - degree(bb);
    Rational f = a.back() / bb.back();
    q[shift] = f;
    for (std::size_t i = 0; i < bb.size(); ++i) a[i + shift] -= f * bb[i];
    trim(a);
  }
  trim(q);
  if (quotient) *quotient = q;
  return a;
}

inline UPoly poly_gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline UPoly square_free_part(const UPoly& p) {
  UPoly g = poly_gcd(p, derivative(p));
  UPoly q;
  poly_rem(p, g, &q);
  return monic(q);
}

// Faddeev-LeVerrier; returns det(xI - A).
inline UPoly charpoly(const Matrix& a) {
  if (!a.is_square()) throw DimensionMismatch("charpoly of a non-square matrix");
  std::size_t n = a.rows();
  UPoly c(n + 1, Rational(0));
  c[n] = 1;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    Matrix am = a * m;
    c[n - k] = -am.trace() / Rational(static_cast<long>(k));
  }
  return c;
}

struct RationalRoots {
  std::vector<Rational> roots;  // distinct, ascending
  bool split = false;           // every complex root is rational
};

namespace detail {

inline int sign_changes(const std::vector<UPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const UPoly& p : chain) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Roots in (lo, hi].
inline int roots_in(const std::vector<UPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_changes(chain, lo) - sign_changes(chain, hi);
}

}  // namespace detail

// Real roots are isolated with a Sturm chain and each isolating interval is
// shrunk below 1/|a_n| for the primitive integer form; a rational root must
// then be one of the few candidates N/|a_n| inside it.
inline RationalRoots rational_roots(const UPoly& input) {
  UPoly f = square_free_part(input);
  RationalRoots out;
  if (degree(f) <= 0) {
    out.split = true;
    return out;
  }
  Integer den_lcm = 1;
  for (const Rational& c : f) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  Integer content = 0;
  for (const Rational& c : f) {
    Rational scaled = c * den_lcm;
    ints.push_back(scaled.get_num());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_num_mpz_t());
  }
  Integer lead = abs(ints.back() / content);

  std::vector<UPoly> chain{f, derivative(f)};
  while (degree(chain.back()) > 0) {
    UPoly r = poly_rem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (Rational& c : r) c = -c;
    chain.push_back(r);
  }

  Rational bound = 1;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) bound += abs(f[i] / f.back());
  Rational resolution = frac(Integer(1), lead);

  std::vector<std::pair<Rational, Rational>> stack{{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int count = detail::roots_in(chain, lo, hi);
    if (count == 0) continue;
    if (count > 1) {
      Rational mid = (lo + hi) / 2;
      stack.push_back({mid, hi});
      stack.push_back({lo, mid});
      continue;
    }
    bool found = false;
    while (hi - lo >= resolution) {
      Rational mid = (lo + hi) / 2;
      if (eval(f, mid) == 0) {
        out.roots.push_back(mid);
        found = true;
        break;
      }
      if (detail::roots_in(chain, lo, mid) == 1)
        hi = mid;
      else
        lo = mid;
    }
    if (found) continue;
    Rational lo_scaled = lo * Rational(lead);
    Rational hi_scaled = hi * Rational(lead);
    Integer first, last;
    mpz_fdiv_q(first.get_mpz_t(), lo_scaled.get_num_mpz_t(), lo_scaled.get_den_mpz_t());
    mpz_fdiv_q(last.get_mpz_t(), hi_scaled.get_num_mpz_t(), hi_scaled.get_den_mpz_t());
    for (Integer k = first; k <= last; ++k) {
      Rational cand = frac(k, lead);
      if (cand > lo && cand <= hi && eval(f, cand) == 0) {
        out.roots.push_back(cand);
        break;
      }
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.split = static_cast<int>(out.roots.size()) == degree(f);
  return out;
}

}  // namespace cohft

#endif
