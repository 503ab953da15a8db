#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "hypercert/rational.hpp"
#include "hypercert/univariate.hpp"

namespace hypercert {

using ExpVec = std::vector<unsigned>;

inline unsigned expvec_degree(const ExpVec& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

// Graded lexicographic order, the one fixed global monomial order:
// compare total degree first, then lexicographically.
struct GradedLexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    unsigned da = expvec_degree(a), db = expvec_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

inline Int binomial(unsigned long n, unsigned long k) {
  if (k > n) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// dim F_{m,d} = C(m+d-1, d)
inline Int dim_forms(int m, int d) {
  if (m < 1) throw error("dim_forms: need at least one variable");
  if (d < 0) throw error("dim_forms: negative degree");
  return binomial(static_cast<unsigned long>(m + d - 1), static_cast<unsigned long>(d));
}

// All exponent vectors of total degree d in m variables, graded-lex ascending.
inline std::vector<ExpVec> monomials_of_degree(int m, int d) {
  std::vector<ExpVec> out;
  ExpVec cur(m, 0);
  // recursive enumeration, lexicographic
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == m - 1) {
      cur[pos] = static_cast<unsigned>(rem);
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= rem; ++e) {
      cur[pos] = static_cast<unsigned>(e);
      self(self, pos + 1, rem - e);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

// Sparse multivariate polynomial over Q. No homogeneity requirement; the
// homogeneous wrapper below adds that invariant. Zero coefficients are
// never stored.
class SparsePoly {
 public:
  using TermMap = std::map<ExpVec, Rat, GradedLexLess>;

  explicit SparsePoly(int nvars = 0) : nvars_(nvars) {}

  static SparsePoly constant(int nvars, const Rat& c) {
    SparsePoly p(nvars);
    p.add_term(ExpVec(nvars, 0), c);
    return p;
  }
  static SparsePoly variable(int nvars, int i, const Rat& c = Rat(1)) {
    SparsePoly p(nvars);
    ExpVec e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, c);
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  int total_degree() const {  // -1 for zero
    if (terms_.empty()) return -1;
    return static_cast<int>(expvec_degree(terms_.rbegin()->first));
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = expvec_degree(terms_.begin()->first);
    return expvec_degree(terms_.rbegin()->first) == d;
  }

  void add_term(const ExpVec& e, const Rat& c) {
    if (static_cast<int>(e.size()) != nvars_) throw error("term arity mismatch");
    if (sgn(c) == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Rat coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  SparsePoly operator+(const SparsePoly& o) const {
    check_arity(o);
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  SparsePoly operator-(const SparsePoly& o) const {
    check_arity(o);
    SparsePoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }
  SparsePoly operator-() const {
    SparsePoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  SparsePoly operator*(const SparsePoly& o) const {
    check_arity(o);
    SparsePoly r(nvars_);
    for (const auto& [e1, c1] : terms_) {
      for (const auto& [e2, c2] : o.terms_) {
        ExpVec e(nvars_);
        for (int i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
        r.add_term(e, c1 * c2);
      }
    }
    return r;
  }
  SparsePoly operator*(const Rat& s) const {
    SparsePoly r(nvars_);
    if (sgn(s) == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }
  bool operator==(const SparsePoly& o) const {
    return nvars_ == o.nvars_ && terms_ == o.terms_;
  }

  SparsePoly partial(int i) const {
    SparsePoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      ExpVec d = e;
      d[i] -= 1;
      r.add_term(d, c * Rat(static_cast<long>(e[i])));
    }
    return r;
  }

  // First-order directional derivative sum_i u_i d/dx_i.
  SparsePoly dir_derivative(const std::vector<Rat>& u) const {
    if (static_cast<int>(u.size()) != nvars_) throw error("direction arity mismatch");
    SparsePoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      for (int i = 0; i < nvars_; ++i) {
        if (e[i] == 0 || sgn(u[i]) == 0) continue;
        ExpVec d = e;
        d[i] -= 1;
        r.add_term(d, c * u[i] * Rat(static_cast<long>(e[i])));
      }
    }
    return r;
  }

  Rat eval(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw error("evaluation arity mismatch");
    Rat acc(0);
    Rat t;
    for (const auto& [e, c] : terms_) {
      t = c;
      for (int i = 0; i < nvars_; ++i) {
        for (unsigned k = 0; k < e[i]; ++k) t *= x[i];
      }
      acc += t;
    }
    return acc;
  }

  // Substitutes component polynomials for the variables.
  SparsePoly substitute(const std::vector<SparsePoly>& comp) const {
    if (static_cast<int>(comp.size()) != nvars_) throw error("substitution arity mismatch");
    int m = comp.empty() ? 0 : comp[0].nvars();
    for (const auto& g : comp)
      if (g.nvars() != m) throw error("substitution components disagree on arity");
    SparsePoly acc(m);
    for (const auto& [e, c] : terms_) {
      SparsePoly t = SparsePoly::constant(m, c);
      for (int i = 0; i < nvars_; ++i) {
        for (unsigned k = 0; k < e[i]; ++k) t = t * comp[i];
      }
      acc = acc + t;
    }
    return acc;
  }

 private:
  void check_arity(const SparsePoly& o) const {
    if (nvars_ != o.nvars_) throw error("polynomial arity mismatch");
  }
  int nvars_;
  TermMap terms_;
};

// Homogeneous polynomial: a SparsePoly plus a declared degree that every
// stored exponent vector must match. The zero polynomial of any degree is
// representable.
class HomogeneousPoly {
 public:
  HomogeneousPoly() : poly_(0), degree_(0) {}
  HomogeneousPoly(int nvars, int degree) : poly_(nvars), degree_(degree) {
    if (degree < 0) throw error("negative degree");
  }
  HomogeneousPoly(SparsePoly p, int degree) : poly_(std::move(p)), degree_(degree) {
    if (!poly_.is_homogeneous() || (!poly_.is_zero() && poly_.total_degree() != degree))
      throw error("polynomial is not homogeneous of the declared degree");
  }
  // Degree inferred from the terms; p must be nonzero.
  static HomogeneousPoly from_sparse(const SparsePoly& p) {
    if (p.is_zero()) throw error("cannot infer degree of zero polynomial");
    return HomogeneousPoly(p, p.total_degree());
  }
  static HomogeneousPoly zero(int nvars, int degree) { return HomogeneousPoly(nvars, degree); }
  static HomogeneousPoly constant(int nvars, const Rat& c) {
    return HomogeneousPoly(SparsePoly::constant(nvars, c), 0);
  }
  static HomogeneousPoly variable(int nvars, int i, const Rat& c = Rat(1)) {
    return HomogeneousPoly(SparsePoly::variable(nvars, i, c), 1);
  }
  static HomogeneousPoly linear_form(const std::vector<Rat>& a) {
    SparsePoly p(static_cast<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
      p = p + SparsePoly::variable(static_cast<int>(a.size()), static_cast<int>(i), a[i]);
    return HomogeneousPoly(std::move(p), 1);
  }

  int nvars() const { return poly_.nvars(); }
  int degree() const { return degree_; }
  bool is_zero() const { return poly_.is_zero(); }
  const SparsePoly& sparse() const { return poly_; }
  std::size_t term_count() const { return poly_.term_count(); }
  Rat coeff(const ExpVec& e) const { return poly_.coeff(e); }
  void add_term(const ExpVec& e, const Rat& c) {
    if (sgn(c) != 0 && expvec_degree(e) != static_cast<unsigned>(degree_))
      throw error("term degree does not match declared degree");
    poly_.add_term(e, c);
  }

  // Zero operands are degree-flexible: the zero form belongs to every
  // degree, and derivative/Bezoutian bookkeeping leans on that.
  HomogeneousPoly operator+(const HomogeneousPoly& o) const {
    if (is_zero()) return check_nvars(o), o;
    if (o.is_zero()) return check_nvars(o), *this;
    require_same_shape(o);
    return HomogeneousPoly(poly_ + o.poly_, degree_);
  }
  HomogeneousPoly operator-(const HomogeneousPoly& o) const {
    if (is_zero()) return check_nvars(o), -o;
    if (o.is_zero()) return check_nvars(o), *this;
    require_same_shape(o);
    return HomogeneousPoly(poly_ - o.poly_, degree_);
  }
  HomogeneousPoly operator-() const { return HomogeneousPoly(-poly_, degree_); }
  HomogeneousPoly operator*(const HomogeneousPoly& o) const {
    if (nvars() != o.nvars()) throw error("polynomial arity mismatch");
    return HomogeneousPoly(poly_ * o.poly_, degree_ + o.degree_);
  }
  HomogeneousPoly operator*(const Rat& s) const { return HomogeneousPoly(poly_ * s, degree_); }
  bool operator==(const HomogeneousPoly& o) const {
    if (is_zero() && o.is_zero()) return nvars() == o.nvars();
    return degree_ == o.degree_ && poly_ == o.poly_;
  }

  HomogeneousPoly partial(int i) const {
    if (degree_ == 0) return zero(nvars(), 0);
    return HomogeneousPoly(poly_.partial(i), degree_ - 1);
  }

  Rat eval(const std::vector<Rat>& x) const { return poly_.eval(x); }

 private:
  void check_nvars(const HomogeneousPoly& o) const {
    if (nvars() != o.nvars()) throw error("polynomial arity mismatch");
  }
  void require_same_shape(const HomogeneousPoly& o) const {
    if (nvars() != o.nvars() || degree_ != o.degree_)
      throw error("homogeneous polynomials differ in arity or degree");
  }
  SparsePoly poly_;
  int degree_;
};

// D_u p, first order. Degree drops by one; the derivative of a degree-0
// form is the zero form of degree 0.
inline HomogeneousPoly directional_derivative(const HomogeneousPoly& p,
                                              const std::vector<Rat>& u) {
  if (static_cast<int>(u.size()) != p.nvars()) throw error("direction arity mismatch");
  if (p.degree() == 0) return HomogeneousPoly::zero(p.nvars(), 0);
  return HomogeneousPoly(p.sparse().dir_derivative(u), p.degree() - 1);
}

// D_u^k p. For k > deg the result is the zero polynomial of degree 0.
inline HomogeneousPoly directional_derivative(const HomogeneousPoly& p,
                                              const std::vector<Rat>& u, int k) {
  if (k < 1) throw error("derivative order must be >= 1");
  if (k > p.degree()) return HomogeneousPoly::zero(p.nvars(), 0);
  HomogeneousPoly r = p;
  for (int i = 0; i < k; ++i) r = directional_derivative(r, u);
  return r;
}

inline std::vector<Rat> negate_vector(const std::vector<Rat>& x) {
  std::vector<Rat> r = x;
  for (auto& v : r) v = -v;
  return r;
}

enum class LineOrientation {
  te_minus_x,  // t -> p(t*e - x), the eigenvalue convention
  x_plus_te,   // t -> p(x + t*e), the Taylor convention
};

// Restriction of p to a line, as a univariate polynomial in t. The
// coefficient of t^j is D_e^j p / j! evaluated at the base point.
inline UnivariatePoly restrict_line(const HomogeneousPoly& p, const std::vector<Rat>& x,
                                    const std::vector<Rat>& e,
                                    LineOrientation orient = LineOrientation::te_minus_x) {
  if (static_cast<int>(x.size()) != p.nvars() || static_cast<int>(e.size()) != p.nvars())
    throw error("restrict_line arity mismatch");
  std::vector<Rat> base = (orient == LineOrientation::te_minus_x) ? negate_vector(x) : x;
  std::vector<Rat> coeffs(p.degree() + 1, Rat(0));
  HomogeneousPoly cur = p;
  Rat factorial(1);
  for (int j = 0; j <= p.degree(); ++j) {
    if (j > 0) {
      cur = directional_derivative(cur, e);
      factorial *= Rat(j);
    }
    if (!cur.is_zero()) coeffs[j] = cur.eval(base) / factorial;
  }
  return UnivariatePoly(std::move(coeffs));
}

// Euler identity helper: sum_i x_i dp/dx_i = deg(p) * p for homogeneous p.
inline HomogeneousPoly euler_sum(const HomogeneousPoly& p) {
  HomogeneousPoly acc = HomogeneousPoly::zero(p.nvars(), p.degree());
  for (int i = 0; i < p.nvars(); ++i) {
    acc = acc + HomogeneousPoly::variable(p.nvars(), i) * p.partial(i);
  }
  return acc;
}

inline std::ostream& operator<<(std::ostream& os, const HomogeneousPoly& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (auto it = p.sparse().terms().rbegin(); it != p.sparse().terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Rat a = abs(c);
    bool printed = false;
    if (a != 1 || expvec_degree(e) == 0) {
      os << a.get_str();
      printed = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (printed) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      printed = true;
    }
  }
  return os;
}

}  // namespace hypercert
