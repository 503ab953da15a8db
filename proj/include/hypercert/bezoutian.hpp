#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hypercert/hyperbolic.hpp"
#include "hypercert/polymap.hpp"
#include "hypercert/quadratic.hpp"
#include "hypercert/univariate.hpp"

namespace hypercert {

// Bezout matrix of f(t) = sum a_i t^i, g(t) = sum b_j t^j over any
// commutative coefficient ring: (f(t)g(s) - f(s)g(t))/(t-s) = sum c_jl t^j s^l.
// Requires deg(g) <= deg(f) <= d; the result is the symmetric d x d matrix
// of the c_jl.
template <class Ring>
std::vector<std::vector<Ring>> bezout_matrix_generic(const std::vector<Ring>& a,
                                                     const std::vector<Ring>& b, int d,
                                                     const Ring& zero) {
  std::vector<std::vector<Ring>> c(d, std::vector<Ring>(d, zero));
  auto coeff = [](const std::vector<Ring>& v, int i, const Ring& z) -> Ring {
    return (i >= 0 && i < static_cast<int>(v.size())) ? v[i] : z;
  };
  int top = std::max(static_cast<int>(a.size()), static_cast<int>(b.size())) - 1;
  for (int p = 1; p <= top; ++p) {
    for (int q = 0; q < p; ++q) {
      Ring w = coeff(a, p, zero) * coeff(b, q, zero) - coeff(a, q, zero) * coeff(b, p, zero);
      for (int i = 0; i <= p - q - 1; ++i) {
        int j = q + i, l = p - 1 - i;
        if (j < d && l < d) c[j][l] = c[j][l] + w;
      }
    }
  }
  return c;
}

// Scalar Bezout matrix with the degree checks of the certificate layer.
class BezoutMatrix {
 public:
  BezoutMatrix(const UnivariatePoly& f, const UnivariatePoly& g, int d) : d_(d) {
    if (d < 1) throw error("Bezout matrix size must be positive");
    if (f.degree() > d) throw error("deg(f) must be at most the matrix size");
    if (!g.is_zero() && g.degree() > f.degree())
      throw error("Bezout matrix needs deg(g) <= deg(f)");
    std::vector<Rat> a(f.coeffs());
    std::vector<Rat> b(g.coeffs());
    entries_ = bezout_matrix_generic<Rat>(a, b, d, Rat(0));
  }

  int size() const { return d_; }
  const Rat& entry(int j, int l) const { return entries_.at(j).at(l); }
  const std::vector<std::vector<Rat>>& entries() const { return entries_; }

  bool is_symmetric() const {
    for (int j = 0; j < d_; ++j)
      for (int l = j + 1; l < d_; ++l)
        if (entries_[j][l] != entries_[l][j]) return false;
    return true;
  }

 private:
  int d_;
  std::vector<std::vector<Rat>> entries_;
};

// Parameterized Bezoutian B_{p,u,v}(x) = B_d(p_{x,u}, D_v p_{x,u}) where
// p_{x,u}(t) = p(x + t u). Entry (j,l) is homogeneous of degree
// 2(d-1)-(j+l) in x (or identically zero).
class ParamBezoutian {
 public:
  ParamBezoutian(const HomogeneousPoly& p, const std::vector<Rat>& u, const std::vector<Rat>& v) {
    if (static_cast<int>(u.size()) != p.nvars() || static_cast<int>(v.size()) != p.nvars())
      throw error("parameterized Bezoutian arity mismatch");
    d_ = p.degree();
    n_ = p.nvars();
    // coefficients of p(x+tu) in t: D_u^i p / i!
    std::vector<HomogeneousPoly> a, b;
    HomogeneousPoly cur = p;
    Rat fact(1);
    for (int i = 0; i <= d_; ++i) {
      if (i > 0) {
        cur = directional_derivative(cur, u);
        fact *= Rat(i);
      }
      a.push_back(cur * (Rat(1) / fact));
    }
    HomogeneousPoly dvp = directional_derivative(p, v);
    cur = dvp;
    fact = 1;
    for (int i = 0; i <= d_ - 1; ++i) {
      if (i > 0) {
        cur = directional_derivative(cur, u);
        fact *= Rat(i);
      }
      b.push_back(cur * (Rat(1) / fact));
    }
    entries_ = bezout_matrix_generic<HomogeneousPoly>(a, b, d_, HomogeneousPoly::zero(n_, 0));
    // normalize declared degrees of the zero entries so the grading reads off
    for (int j = 0; j < d_; ++j)
      for (int l = 0; l < d_; ++l)
        if (entries_[j][l].is_zero()) entries_[j][l] = HomogeneousPoly::zero(n_, grade(j, l));
  }

  int size() const { return d_; }
  int nvars() const { return n_; }
  int grade(int j, int l) const { return 2 * (d_ - 1) - (j + l); }
  const HomogeneousPoly& entry(int j, int l) const { return entries_.at(j).at(l); }

  bool grading_holds() const {
    for (int j = 0; j < d_; ++j)
      for (int l = 0; l < d_; ++l) {
        const HomogeneousPoly& e = entries_[j][l];
        if (!e.is_zero() && e.degree() != grade(j, l)) return false;
        if (!e.is_zero() && grade(j, l) < 0) return false;
      }
    return true;
  }
  bool is_symmetric() const {
    for (int j = 0; j < d_; ++j)
      for (int l = j + 1; l < d_; ++l)
        if (!(entries_[j][l] == entries_[l][j])) return false;
    return true;
  }

  // Evaluates the matrix at a point.
  RatMatrix eval(const std::vector<Rat>& x) const {
    RatMatrix m(d_, std::vector<Rat>(d_));
    for (int j = 0; j < d_; ++j)
      for (int l = 0; l < d_; ++l) m[j][l] = entries_[j][l].eval(x);
    return m;
  }

 private:
  int d_, n_;
  std::vector<std::vector<HomogeneousPoly>> entries_;
};

// Characteristic polynomial of a rational square matrix (Faddeev-LeVerrier).
inline UnivariatePoly char_poly(const RatMatrix& m) {
  int n = static_cast<int>(m.size());
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  RatMatrix mk = identity_matrix(n);
  for (int k = 1; k <= n; ++k) {
    mk = mat_mul(m, mk);
    Rat tr(0);
    for (int i = 0; i < n; ++i) tr += mk[i][i];
    Rat ck = -tr / Rat(k);
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) mk[i][i] += ck;
  }
  return UnivariatePoly(std::move(c));
}

// Exact PSD test for a rational symmetric matrix: the characteristic
// polynomial is real-rooted by symmetry, so PSD is "no root below zero".
inline bool is_psd_exact(const RatMatrix& m) {
  UnivariatePoly chi = char_poly(m);
  UnivariatePoly g = squarefree_part(chi);
  return sturm_count(g, RealInterval::below(Rat(0))) == 0;
}

// (mu, d) |-> mu == 2 or d <= 2*mu - 3, the hyperzout degree restriction.
inline bool degree_restricted(int mu, int d) {
  if (mu < 2 || mu > d) throw error("degree_restricted needs 2 <= mu <= d");
  return mu == 2 || d <= 2 * mu - 3;
}

struct HyperzoutWitness {
  HyperbolicPair pair;
  std::vector<Rat> u, v;
  PolyMap phi;
  GradedTuple xi;

  int mu() const { return xi.mu(); }
  int output_degree() const { return 2 * phi.map_degree() * (xi.mu() - 1); }

  void check_shape() const {
    if (phi.component_count() != pair.nvars())
      throw malformed_witness_error("witness map must have one component per variable of p");
    if (xi.d() != pair.degree())
      throw malformed_witness_error("graded tuple length must equal deg(p)");
    if (xi.k() != phi.map_degree())
      throw malformed_witness_error("graded tuple degree step must equal deg(phi)");
    if (static_cast<int>(u.size()) != pair.nvars() || static_cast<int>(v.size()) != pair.nvars())
      throw malformed_witness_error("cone point arity mismatch");
  }
};

// eta(p,u,v,phi,xi)(x) = xi(x)^T B_{p,u,v}(phi(x)) xi(x),
// homogeneous of degree 2 k (mu - 1).
inline HomogeneousPoly build_hyperzout(const HyperzoutWitness& w) {
  w.check_shape();
  ParamBezoutian bez(w.pair.p(), w.u, w.v);
  int d = bez.size();
  int m = w.phi.domain_vars();
  int out_deg = w.output_degree();
  HomogeneousPoly acc(m, out_deg);
  for (int j = 0; j < d; ++j) {
    if (w.xi.slot(j).is_zero()) continue;
    for (int l = 0; l < d; ++l) {
      if (w.xi.slot(l).is_zero()) continue;
      if (bez.entry(j, l).is_zero()) continue;
      HomogeneousPoly term = w.xi.slot(j) * compose(bez.entry(j, l), w.phi) * w.xi.slot(l);
      acc = acc + term;
    }
  }
  return acc;
}

// 2x2 PSD polynomial matrix factorization, in weighted-column form:
//   [[p2, p1], [p1, p0]] = sum_t w_t m_t m_t^T
// with rational weights w_t > 0 and polynomial 2-vectors m_t. Avoids
// sqrt(p0) when p0 is not a rational square.
struct PsdFactor2x2 {
  struct Column {
    Rat weight;
    std::array<HomogeneousPoly, 2> vec;  // degrees (1, -) / (constant)
  };
  int nvars = 0;
  std::vector<Column> columns;

  std::array<std::array<HomogeneousPoly, 2>, 2> reconstruct() const {
    auto zero11 = HomogeneousPoly::zero(nvars, 2);
    auto zero01 = HomogeneousPoly::zero(nvars, 1);
    auto zero00 = HomogeneousPoly::zero(nvars, 0);
    std::array<std::array<HomogeneousPoly, 2>, 2> out{{{zero11, zero01}, {zero01, zero00}}};
    for (const auto& col : columns) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          if (col.vec[i].is_zero() || col.vec[j].is_zero()) continue;
          out[i][j] = out[i][j] + col.vec[i] * col.vec[j] * col.weight;
        }
    }
    return out;
  }
};

// Factors [[p2, p1],[p1, p0]] PSD-for-all-x. PSD-ness is verified exactly:
// p0 >= 0, p2 PSD, and p0*p2 - p1^2 PSD, via congruence diagonalization.
inline PsdFactor2x2 factor_2x2_psd(const HomogeneousPoly& p2, const HomogeneousPoly& p1,
                                   const Rat& p0) {
  if (p2.degree() != 2 || (!p1.is_zero() && p1.degree() != 1))
    throw error("factor_2x2_psd needs degrees (2, 1, 0)");
  if (p1.nvars() != p2.nvars()) throw error("factor_2x2_psd arity mismatch");
  int n = p2.nvars();
  PsdFactor2x2 out;
  out.nvars = n;
  if (sgn(p0) < 0) throw error("matrix is not PSD: p0 < 0");
  if (sgn(p0) == 0) {
    if (!p1.is_zero()) {
      // [[p2(x0), c],[c, 0]] with c != 0 has negative determinant
      throw error("matrix is not PSD: p0 = 0 forces p1 = 0");
    }
    IndefiniteWitness wit;
    WeightedSOS s = sos_split_nonneg_quadratic(p2, &wit);
    for (const auto& t : s.terms())
      out.columns.push_back({t.weight, {t.square_root, HomogeneousPoly::zero(n, 0)}});
    return out;
  }
  // Schur complement: p2 - p1^2/p0 must be PSD
  HomogeneousPoly schur = p2 - p1 * p1 * (Rat(1) / p0);
  IndefiniteWitness wit;
  WeightedSOS s = sos_split_nonneg_quadratic(schur, &wit);  // throws if indefinite
  for (const auto& t : s.terms())
    out.columns.push_back({t.weight, {t.square_root, HomogeneousPoly::zero(n, 0)}});
  // last column (p1/p0, 1) with weight p0
  out.columns.push_back(
      {p0, {p1 * (Rat(1) / p0), HomogeneousPoly::constant(n, Rat(1))}});
  return out;
}

// mu = 2 hyperzouts are sums of squares: the certificate touches only the
// bottom-right 2x2 block of the Bezoutian, which factors by the lemma above.
inline WeightedSOS mu2_hyperzout_to_sos(const HyperzoutWitness& w) {
  w.check_shape();
  if (w.mu() != 2) throw error("mu2_hyperzout_to_sos needs mu = 2");
  ParamBezoutian bez(w.pair.p(), w.u, w.v);
  int d = bez.size();
  const HomogeneousPoly& p2 = bez.entry(d - 2, d - 2);
  const HomogeneousPoly& p1 = bez.entry(d - 2, d - 1);
  const HomogeneousPoly& p0poly = bez.entry(d - 1, d - 1);
  ExpVec zero_exp(static_cast<std::size_t>(w.pair.nvars()), 0u);
  Rat p0 = p0poly.is_zero() ? Rat(0) : p0poly.coeff(zero_exp);
  PsdFactor2x2 fac = factor_2x2_psd(
      p2.is_zero() ? HomogeneousPoly::zero(w.pair.nvars(), 2) : p2,
      p1.is_zero() ? HomogeneousPoly::zero(w.pair.nvars(), 1) : p1, p0);
  const HomogeneousPoly& xi0 = w.xi.slot(d - 2);  // degree 0
  const HomogeneousPoly& xis = w.xi.slot(d - 1);  // degree k
  int m = w.phi.domain_vars();
  int k = w.phi.map_degree();
  WeightedSOS outs(m, k);
  for (const auto& col : fac.columns) {
    // (m1 o phi) * xi0 + (m2 o phi) * xis, of degree k
    HomogeneousPoly g(m, k);
    if (!col.vec[0].is_zero() && !xi0.is_zero()) {
      ExpVec z(static_cast<std::size_t>(m), 0u);
      g = g + compose(col.vec[0], w.phi) * xi0.coeff(z);
    }
    if (!col.vec[1].is_zero() && !xis.is_zero()) {
      ExpVec z(static_cast<std::size_t>(w.pair.nvars()), 0u);
      g = g + xis * col.vec[1].coeff(z);
    }
    outs.add(col.weight, g);
  }
  return outs;
}

}  // namespace hypercert
