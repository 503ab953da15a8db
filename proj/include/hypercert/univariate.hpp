#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "hypercert/rational.hpp"

namespace hypercert {

// Dense univariate polynomial over Q. Coefficient i multiplies t^i.
// The zero polynomial is the empty coefficient list.
class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UnivariatePoly zero() { return UnivariatePoly(); }
  static UnivariatePoly constant(const Rat& v) { return UnivariatePoly({v}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
  }
  const Rat& leading() const {
    if (is_zero()) throw error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Rat operator()(const Rat& t) const {
    Rat acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  UnivariatePoly operator+(const UnivariatePoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UnivariatePoly(std::move(r));
  }
  UnivariatePoly operator-(const UnivariatePoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return UnivariatePoly(std::move(r));
  }
  UnivariatePoly operator-() const {
    std::vector<Rat> r = c_;
    for (auto& x : r) x = -x;
    return UnivariatePoly(std::move(r));
  }
  UnivariatePoly operator*(const UnivariatePoly& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UnivariatePoly(std::move(r));
  }
  UnivariatePoly operator*(const Rat& s) const {
    if (sgn(s) == 0) return zero();
    std::vector<Rat> r = c_;
    for (auto& x : r) x *= s;
    return UnivariatePoly(std::move(r));
  }

  bool operator==(const UnivariatePoly& o) const { return c_ == o.c_; }

  UnivariatePoly derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<Rat> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
    return UnivariatePoly(std::move(r));
  }

  // Returns (quotient, remainder) with deg(rem) < deg(divisor).
  std::pair<UnivariatePoly, UnivariatePoly> divrem(const UnivariatePoly& d) const {
    if (d.is_zero()) throw error("division by zero polynomial");
    std::vector<Rat> rem = c_;
    std::vector<Rat> quot;
    int dd = d.degree();
    if (degree() >= dd) quot.assign(degree() - dd + 1, Rat(0));
    for (int i = degree(); i >= dd; --i) {
      if (sgn(rem[i]) == 0) continue;
      Rat f = rem[i] / d.c_[dd];
      quot[i - dd] = f;
      for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
    }
    return {UnivariatePoly(std::move(quot)), UnivariatePoly(std::move(rem))};
  }

  UnivariatePoly monic() const {
    if (is_zero()) throw error("monic of zero polynomial");
    return *this * (Rat(1) / leading());
  }

  // Scales by a positive rational so the coefficients are coprime integers.
  // Sign-preserving, which is what Sturm chains care about.
  UnivariatePoly primitive() const {
    if (is_zero()) return zero();
    Int g(0), l(1);
    for (const Rat& x : c_) {
      if (sgn(x) == 0) continue;
      Int num = abs(x.get_num());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    }
    Rat scale(l, g);
    scale.canonicalize();
    return *this * scale;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UnivariatePoly& f) {
  if (f.is_zero()) return os << "0";
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    Rat c = f.coeff(i);
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rat a = abs(c);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) os << (a != 1 ? "*t" : "t");
    if (i > 1) os << "^" << i;
  }
  return os;
}

inline UnivariatePoly poly_gcd(UnivariatePoly a, UnivariatePoly b) {
  while (!b.is_zero()) {
    UnivariatePoly r = a.divrem(b).second;
    a = std::move(b);
    b = std::move(r).primitive();
  }
  if (a.is_zero()) return a;
  return a.monic();
}

inline UnivariatePoly squarefree_part(const UnivariatePoly& f) {
  if (f.is_zero()) throw error("squarefree part of zero polynomial");
  if (f.degree() == 0) return UnivariatePoly::constant(Rat(1));
  UnivariatePoly g = poly_gcd(f, f.derivative());
  return f.divrem(g).first.primitive();
}

// Yun's algorithm: f = prod_i out[i-1]^i up to a constant, out[i-1] squarefree.
inline std::vector<UnivariatePoly> squarefree_decomposition(const UnivariatePoly& f) {
  if (f.is_zero()) throw error("squarefree decomposition of zero polynomial");
  std::vector<UnivariatePoly> out;
  if (f.degree() == 0) return out;
  UnivariatePoly a = f.primitive();
  UnivariatePoly g = poly_gcd(a, a.derivative());
  UnivariatePoly w = a.divrem(g).first;
  UnivariatePoly y = a.derivative().divrem(g).first;
  UnivariatePoly z = y - w.derivative();
  while (!(w.degree() == 0)) {
    UnivariatePoly h = poly_gcd(w, z);
    out.push_back(h);
    w = w.divrem(h).first;
    z = z.divrem(h).first - w.derivative();
  }
  return out;
}

// A possibly unbounded interval of the real line.
struct RealInterval {
  std::optional<Rat> lo, hi;  // nullopt = infinite endpoint
  bool lo_open = true, hi_open = true;

  static RealInterval all() { return {}; }
  static RealInterval open(const Rat& a, const Rat& b) { return {a, b, true, true}; }
  static RealInterval closed(const Rat& a, const Rat& b) { return {a, b, false, false}; }
  static RealInterval below(const Rat& b, bool open_end = true) {
    return {std::nullopt, b, true, open_end};
  }
  static RealInterval above(const Rat& a, bool open_end = true) {
    return {a, std::nullopt, open_end, true};
  }
};

namespace detail {

inline int sign_at_inf(const UnivariatePoly& f, bool plus) {
  if (f.is_zero()) return 0;
  int s = sign(f.leading());
  if (!plus && (f.degree() % 2 == 1)) s = -s;
  return s;
}

inline int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

inline std::vector<UnivariatePoly> sturm_chain(const UnivariatePoly& f) {
  std::vector<UnivariatePoly> chain;
  chain.push_back(f.primitive());
  UnivariatePoly d = f.derivative();
  if (!d.is_zero()) {
    chain.push_back(d.primitive());
    for (;;) {
      const UnivariatePoly& a = chain[chain.size() - 2];
      const UnivariatePoly& b = chain.back();
      UnivariatePoly r = a.divrem(b).second;
      if (r.is_zero()) break;
      chain.push_back((-r).primitive());
    }
  }
  return chain;
}

inline int chain_variations_at(const std::vector<UnivariatePoly>& chain,
                               const std::optional<Rat>& x, bool plus_inf) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& g : chain) {
    signs.push_back(x ? sign(g(*x)) : sign_at_inf(g, plus_inf));
  }
  return variations(signs);
}

}  // namespace detail

// Number of distinct real roots of f in the interval. Exact.
inline int sturm_count(const UnivariatePoly& f, const RealInterval& iv = RealInterval::all()) {
  if (f.is_zero()) throw error("sturm_count of zero polynomial");
  if (f.degree() == 0) return 0;
  if (iv.lo && iv.hi && *iv.lo > *iv.hi) return 0;
  if (iv.lo && iv.hi && *iv.lo == *iv.hi) {
    bool pointless = iv.lo_open || iv.hi_open;
    return (!pointless && sgn(f(*iv.lo)) == 0) ? 1 : 0;
  }
  // Work on a polynomial that is nonzero at the finite endpoints, tracking
  // the deflated endpoint roots separately.
  UnivariatePoly g = f.primitive();
  bool root_lo = false, root_hi = false;
  if (iv.lo && sgn(g(*iv.lo)) == 0) {
    root_lo = true;
    UnivariatePoly lin({-*iv.lo, Rat(1)});
    while (sgn(g(*iv.lo)) == 0) g = g.divrem(lin).first;
  }
  if (iv.hi && sgn(g(*iv.hi)) == 0) {
    root_hi = true;
    UnivariatePoly lin({-*iv.hi, Rat(1)});
    while (sgn(g(*iv.hi)) == 0) g = g.divrem(lin).first;
  }
  int count = 0;
  if (g.degree() > 0) {
    auto chain = detail::sturm_chain(g);
    int va = detail::chain_variations_at(chain, iv.lo, false);
    int vb = detail::chain_variations_at(chain, iv.hi, true);
    count = va - vb;  // distinct roots of g in (lo, hi], endpoints nonroots of g
  }
  if (root_lo && !iv.lo_open) ++count;
  if (root_hi && !iv.hi_open) ++count;
  return count;
}

// Number of real roots counted with multiplicity, via Yun decomposition.
inline int root_count_with_multiplicity(const UnivariatePoly& f, const RealInterval& iv) {
  if (f.is_zero()) throw error("root count of zero polynomial");
  if (f.degree() == 0) return 0;
  auto parts = squarefree_decomposition(f);
  int total = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() > 0) {
      total += static_cast<int>(i + 1) * sturm_count(parts[i], iv);
    }
  }
  return total;
}

// True iff f has deg(f) real roots counted with multiplicity.
inline bool is_real_rooted(const UnivariatePoly& f) {
  if (f.is_zero()) throw error("is_real_rooted of zero polynomial");
  if (f.degree() == 0) return true;
  UnivariatePoly g = squarefree_part(f);
  return sturm_count(g, RealInterval::all()) == g.degree();
}

// Multiplicity of x0 as a root.
inline int root_multiplicity(const UnivariatePoly& f, const Rat& x0) {
  if (f.is_zero()) throw error("root multiplicity in zero polynomial");
  UnivariatePoly g = f;
  UnivariatePoly lin({-x0, Rat(1)});
  int m = 0;
  while (!g.is_zero() && sgn(g(x0)) == 0) {
    g = g.divrem(lin).first;
    ++m;
    if (g.is_zero()) break;
  }
  return m;
}

// Rational roots via the rational root theorem, on the primitive part.
inline std::vector<Rat> rational_roots(const UnivariatePoly& f) {
  if (f.is_zero()) throw error("rational roots of zero polynomial");
  std::vector<Rat> roots;
  UnivariatePoly g = f.primitive();
  // strip t^k
  int k = 0;
  while (sgn(g.coeff(k)) == 0) ++k;
  if (k > 0) {
    roots.push_back(Rat(0));
    std::vector<Rat> shifted(g.coeffs().begin() + k, g.coeffs().end());
    g = UnivariatePoly(std::move(shifted));
  }
  if (g.degree() <= 0) return roots;
  Int a0 = abs(g.coeff(0).get_num());
  Int an = abs(g.leading().get_num());
  auto divisors = [](const Int& n) {
    std::vector<Int> ds;
    for (Int d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    }
    return ds;
  };
  for (const Int& p : divisors(a0)) {
    for (const Int& q : divisors(an)) {
      for (int s : {1, -1}) {
        Rat cand(s * p, q);
        cand.canonicalize();
        if (sgn(g(cand)) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end()) {
          roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace hypercert
