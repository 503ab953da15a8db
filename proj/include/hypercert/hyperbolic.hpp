#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypercert/homogeneous.hpp"
#include "hypercert/quadratic.hpp"
#include "hypercert/rng.hpp"
#include "hypercert/univariate.hpp"

namespace hypercert {

enum class VerdictKind { certified, sampled, refuted };

struct HyperbolicityVerdict {
  VerdictKind kind = VerdictKind::sampled;
  std::string reason;            // certified: "quadratic-signature" | "known-family:<name>"
  int num_samples = 0;           // sampled
  u64 seed = 0;                  // sampled
  std::vector<Rat> witness;      // refuted: x with p(te-x) not real-rooted

  static HyperbolicityVerdict certified(std::string why) {
    HyperbolicityVerdict v;
    v.kind = VerdictKind::certified;
    v.reason = std::move(why);
    return v;
  }
  static HyperbolicityVerdict sampled(int n, u64 seed) {
    HyperbolicityVerdict v;
    v.kind = VerdictKind::sampled;
    v.num_samples = n;
    v.seed = seed;
    return v;
  }
  static HyperbolicityVerdict refuted(std::vector<Rat> x) {
    HyperbolicityVerdict v;
    v.kind = VerdictKind::refuted;
    v.witness = std::move(x);
    return v;
  }
};

class HyperbolicPair {
 public:
  HyperbolicPair(HomogeneousPoly p, std::vector<Rat> e, HyperbolicityVerdict verdict)
      : p_(std::move(p)), e_(std::move(e)), verdict_(std::move(verdict)) {
    if (static_cast<int>(e_.size()) != p_.nvars())
      throw error("hyperbolicity direction arity mismatch");
    if (p_.degree() < 1) throw error("hyperbolic polynomial must have degree >= 1");
  }

  const HomogeneousPoly& p() const { return p_; }
  const std::vector<Rat>& e() const { return e_; }
  const HyperbolicityVerdict& verdict() const { return verdict_; }
  bool refuted() const { return verdict_.kind == VerdictKind::refuted; }
  int nvars() const { return p_.nvars(); }
  int degree() const { return p_.degree(); }

 private:
  HomogeneousPoly p_;
  std::vector<Rat> e_;
  HyperbolicityVerdict verdict_;
};

// Monic restriction t -> p(te - x) / p(e); its roots are the hyperbolic
// eigenvalues of x.
inline UnivariatePoly hyperbolic_eigen_poly(const HomogeneousPoly& p, const std::vector<Rat>& e,
                                            const std::vector<Rat>& x) {
  UnivariatePoly f = restrict_line(p, x, e, LineOrientation::te_minus_x);
  Rat pe = p.eval(e);
  if (sgn(pe) <= 0) throw error("eigen polynomial needs p(e) > 0");
  return f * (Rat(1) / pe);
}

inline UnivariatePoly hyperbolic_eigen_poly(const HyperbolicPair& pair, const std::vector<Rat>& x) {
  if (pair.refuted()) throw error("eigen polynomial of a refuted pair");
  return hyperbolic_eigen_poly(pair.p(), pair.e(), x);
}

enum class ConeLocation { inside_strict, boundary, outside };

struct ConeQuery {
  ConeLocation location = ConeLocation::outside;
  int multiplicity = 0;  // multiplicity of the eigenvalue 0 when on the boundary

  bool in_closed_cone() const { return location != ConeLocation::outside; }
};

// Exact membership in the closed hyperbolicity cone: no eigenvalue below
// zero, boundary iff zero is an eigenvalue.
inline ConeQuery cone_membership(const HyperbolicPair& pair, const std::vector<Rat>& x) {
  if (pair.refuted()) throw error("cone membership against a refuted pair");
  UnivariatePoly f = hyperbolic_eigen_poly(pair, x);
  UnivariatePoly g = squarefree_part(f);
  ConeQuery q;
  if (sturm_count(g, RealInterval::below(Rat(0))) > 0) {
    q.location = ConeLocation::outside;
    return q;
  }
  int mult = root_multiplicity(f, Rat(0));
  if (mult > 0) {
    q.location = ConeLocation::boundary;
    q.multiplicity = mult;
  } else {
    q.location = ConeLocation::inside_strict;
  }
  return q;
}

struct HyperbolicityStrategy {
  enum Kind { automatic, quadratic, known_family, sampled } kind = automatic;
  int num_samples = 200;
  u64 seed = 0;
};

// Exact hyperbolicity check. Quadratics get a certificate via the
// signature; everything else is refuted exactly or verified on sampled
// directions (the honest default: general hyperbolicity testing is out of
// reach, and every refutation carries a checkable witness).
inline HyperbolicityVerdict check_hyperbolic(const HomogeneousPoly& p, const std::vector<Rat>& e,
                                             HyperbolicityStrategy strat = {}) {
  if (static_cast<int>(e.size()) != p.nvars()) throw error("direction arity mismatch");
  bool e_zero = true;
  for (const Rat& v : e)
    if (sgn(v) != 0) e_zero = false;
  if (e_zero) throw error("hyperbolicity direction must be nonzero");
  if (sgn(p.eval(e)) <= 0) return HyperbolicityVerdict::refuted(e);

  if (p.degree() == 1) return HyperbolicityVerdict::certified("linear");

  if (p.degree() == 2 &&
      (strat.kind == HyperbolicityStrategy::automatic ||
       strat.kind == HyperbolicityStrategy::quadratic)) {
    Signature s = lagrange_diagonalize(p).signature();
    if (s.positive == 1) return HyperbolicityVerdict::certified("quadratic-signature");
    // p(e) > 0 forces at least one positive entry; more than one means a
    // direction with a complex-rooted restriction exists. Find one by
    // sampling so the refutation carries a witness.
    Rng rng(strat.seed + 0x9e37u);
    for (int t = 0; t < 4096; ++t) {
      std::vector<Rat> x = rng.next_int_vector(p.nvars());
      UnivariatePoly f = restrict_line(p, x, e);
      if (!f.is_zero() && f.degree() == p.degree() && !is_real_rooted(f))
        return HyperbolicityVerdict::refuted(x);
    }
    throw error("indefinite quadratic but no witness found (unexpected)");
  }

  if (strat.kind == HyperbolicityStrategy::quadratic)
    throw error("quadratic strategy needs a quadratic form");

  int n = strat.num_samples;
  Rng rng(strat.seed);
  for (int t = 0; t < n; ++t) {
    std::vector<Rat> x = rng.next_rat_vector(p.nvars());
    UnivariatePoly f = restrict_line(p, x, e);
    if (f.is_zero()) continue;
    if (!is_real_rooted(f)) return HyperbolicityVerdict::refuted(x);
  }
  return HyperbolicityVerdict::sampled(n, strat.seed);
}

// ---------------------------------------------------------------------------
// Known hyperbolic families
// ---------------------------------------------------------------------------

inline HyperbolicPair family_product_of_linears(const std::vector<std::vector<Rat>>& forms,
                                                const std::vector<Rat>& e) {
  if (forms.empty()) throw error("product of linear forms needs at least one factor");
  int n = static_cast<int>(e.size());
  HomogeneousPoly p = HomogeneousPoly::constant(n, Rat(1));
  for (const auto& a : forms) {
    if (static_cast<int>(a.size()) != n) throw error("linear form arity mismatch");
    HomogeneousPoly l = HomogeneousPoly::linear_form(a);
    if (sgn(l.eval(e)) <= 0)
      throw error("every linear factor must be positive at the hyperbolicity direction");
    p = p * l;
  }
  return HyperbolicPair(p, e, HyperbolicityVerdict::certified("known-family:product-of-linears"));
}

// <e,y>^2/||e||^2 - ||y||^2/2, the quadratic used by the SOS embedding.
inline HomogeneousPoly lorentz_form(const std::vector<Rat>& e) {
  int n = static_cast<int>(e.size());
  Rat norm2(0);
  for (const Rat& v : e) norm2 += v * v;
  if (sgn(norm2) == 0) throw error("lorentz form needs a nonzero direction");
  HomogeneousPoly le = HomogeneousPoly::linear_form(e);
  HomogeneousPoly q = le * le * (Rat(1) / norm2);
  for (int i = 0; i < n; ++i) {
    HomogeneousPoly xi = HomogeneousPoly::variable(n, i);
    q = q - xi * xi * Rat(1, 2);
  }
  return q;
}

inline HyperbolicPair family_lorentz(const std::vector<Rat>& e) {
  HomogeneousPoly p = lorentz_form(e);
  return HyperbolicPair(p, e, HyperbolicityVerdict::certified("known-family:lorentz"));
}

inline HyperbolicPair family_elementary_symmetric(int n, int k) {
  if (k < 1 || k > n) throw error("elementary symmetric needs 1 <= k <= n");
  HomogeneousPoly p(n, k);
  std::vector<int> idx(k);
  auto rec = [&](auto&& self, int pos, int start) -> void {
    if (pos == k) {
      ExpVec e(n, 0);
      for (int i : idx) e[i] = 1;
      p.add_term(e, Rat(1));
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  std::vector<Rat> e(n, Rat(1));
  return HyperbolicPair(p, e,
                        HyperbolicityVerdict::certified("known-family:elementary-symmetric"));
}

// det of an n x n symmetric matrix of indeterminates, hyperbolic with
// respect to the identity. Variables are the entries (i <= j), row-major.
inline HyperbolicPair family_det_symmetric_pencil(int n) {
  if (n < 1) throw error("pencil size must be positive");
  int nv = n * (n + 1) / 2;
  auto var_index = [n](int i, int j) {
    if (i > j) std::swap(i, j);
    // index of (i,j), i<=j, in row-major upper-triangular order
    return i * n - i * (i - 1) / 2 + (j - i);
  };
  std::vector<std::vector<SparsePoly>> mat(n, std::vector<SparsePoly>(n, SparsePoly(nv)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mat[i][j] = SparsePoly::variable(nv, var_index(i, j));
  // Laplace expansion (n is small here)
  auto det = [&](auto&& self, std::vector<int> rows, std::vector<int> cols) -> SparsePoly {
    if (rows.size() == 1) return mat[rows[0]][cols[0]];
    SparsePoly acc(nv);
    std::vector<int> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      std::vector<int> sub_cols;
      for (std::size_t l = 0; l < cols.size(); ++l)
        if (l != j) sub_cols.push_back(cols[l]);
      SparsePoly minor = self(self, sub_rows, sub_cols);
      SparsePoly term = mat[rows[0]][cols[j]] * minor;
      acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  };
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  HomogeneousPoly p(det(det, all, all), n);
  std::vector<Rat> e(nv, Rat(0));
  for (int i = 0; i < n; ++i) e[var_index(i, i)] = 1;
  return HyperbolicPair(p, e,
                        HyperbolicityVerdict::certified("known-family:det-symmetric-pencil"));
}

// ---------------------------------------------------------------------------
// Cone point sampling
// ---------------------------------------------------------------------------

enum class ConeSampleStyle { interior, boundary_attempt };

// Interior points come from exact re-verified perturbations of e. At e all
// eigenvalues equal 1, so the crude gap estimate is 1 and the initial
// perturbation radius is 1/8; the radius halves after each failed round.
inline std::vector<Rat> sample_cone_point(const HyperbolicPair& pair, u64 seed,
                                          ConeSampleStyle style) {
  if (pair.refuted()) throw error("cannot sample the cone of a refuted pair");
  Rng rng(seed);
  int n = pair.nvars();
  if (style == ConeSampleStyle::interior) {
    long denom = 8;
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::vector<Rat> x = pair.e();
      for (int i = 0; i < n; ++i) x[i] += rat(rng.next_int(-1, 1), denom);
      ConeQuery q = cone_membership(pair, x);
      if (q.location == ConeLocation::inside_strict) return x;
      if (attempt % 8 == 7) denom *= 2;
    }
    throw error("interior sampling exhausted retries; supply a point manually");
  }
  // boundary attempts: coordinate zeroing, then rational eigenvalue shifts
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<Rat> x(n);
    if (attempt % 2 == 0) {
      x = pair.e();
      int zeroed = static_cast<int>(rng.next_below(static_cast<u64>(n)));
      x[zeroed] = 0;
      for (int i = 0; i < n; ++i)
        if (i != zeroed && rng.next_below(3) == 0) x[i] += rat(rng.next_int(0, 1));
    } else {
      x = rng.next_int_vector(n, 0, 4);
      UnivariatePoly f;
      try {
        f = hyperbolic_eigen_poly(pair, x);
      } catch (const error&) {
        continue;
      }
      if (f.is_zero() || f.degree() < pair.degree()) continue;
      std::vector<Rat> roots = rational_roots(f);
      if (roots.empty()) continue;
      // shift the smallest eigenvalue to zero when it is rational
      Rat lam = roots.front();
      if (sturm_count(squarefree_part(f), RealInterval::below(lam)) != 0) continue;
      for (int i = 0; i < n; ++i) x[i] -= lam * pair.e()[i];
    }
    ConeQuery q = cone_membership(pair, x);
    if (q.location == ConeLocation::boundary) return x;
  }
  throw error("boundary sampling exhausted retries; supply a point manually");
}

// ---------------------------------------------------------------------------
// Boundary directional-derivative property (executable form of the
// derivative-relaxation proposition for boundary directions)
// ---------------------------------------------------------------------------

struct BoundaryDerivativeReport {
  bool derivative_identically_zero = false;
  bool derivative_hyperbolic_sampled = false;
  bool cone_inclusion_sampled = false;
  int trials = 0;
  std::optional<std::vector<Rat>> counterexample;  // would indicate a bug

  bool ok() const {
    return derivative_identically_zero ||
           (derivative_hyperbolic_sampled && cone_inclusion_sampled && !counterexample);
  }
};

inline BoundaryDerivativeReport boundary_derivative_check(const HyperbolicPair& pair,
                                                          const std::vector<Rat>& u, int trials,
                                                          u64 seed) {
  ConeQuery cu = cone_membership(pair, u);
  if (cu.location != ConeLocation::boundary)
    throw error("boundary_derivative_check needs a boundary point");
  BoundaryDerivativeReport rep;
  rep.trials = trials;
  HomogeneousPoly dup = directional_derivative(pair.p(), u);
  if (dup.is_zero()) {
    rep.derivative_identically_zero = true;
    return rep;
  }
  HyperbolicityStrategy strat;
  strat.kind = HyperbolicityStrategy::sampled;
  strat.num_samples = trials;
  strat.seed = seed;
  HyperbolicityVerdict v = check_hyperbolic(dup, pair.e(), strat);
  if (v.kind == VerdictKind::refuted) {
    rep.counterexample = v.witness;
    return rep;
  }
  rep.derivative_hyperbolic_sampled = true;
  HyperbolicPair dpair(dup, pair.e(), v);
  Rng rng(seed + 1);
  rep.cone_inclusion_sampled = true;
  for (int t = 0; t < trials; ++t) {
    std::vector<Rat> x;
    try {
      x = sample_cone_point(pair, rng.next_u64(), ConeSampleStyle::interior);
    } catch (const error&) {
      continue;
    }
    if (!cone_membership(dpair, x).in_closed_cone()) {
      rep.cone_inclusion_sampled = false;
      rep.counterexample = x;
      return rep;
    }
  }
  return rep;
}

}  // namespace hypercert
