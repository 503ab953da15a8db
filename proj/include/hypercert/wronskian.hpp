#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hypercert/bezoutian.hpp"
#include "hypercert/hyperbolic.hpp"
#include "hypercert/polymap.hpp"
#include "hypercert/quadratic.hpp"

namespace hypercert {

struct HyperwronWitness {
  HyperbolicPair pair;
  std::vector<Rat> u, v;
  PolyMap phi;

  int output_degree() const { return 2 * (pair.degree() - 1) * phi.map_degree(); }

  void check_shape() const {
    if (phi.component_count() != pair.nvars())
      throw malformed_witness_error("witness map must have one component per variable of p");
    if (static_cast<int>(u.size()) != pair.nvars() || static_cast<int>(v.size()) != pair.nvars())
      throw malformed_witness_error("cone point arity mismatch");
  }
};

// Theta(p,u,v,phi) = (D_u p . D_v p - p . D^2_{uv} p) o phi,
// homogeneous of degree 2(d-1)k.
inline HomogeneousPoly build_hyperwron(const HyperwronWitness& w) {
  w.check_shape();
  const HomogeneousPoly& p = w.pair.p();
  HomogeneousPoly dup = directional_derivative(p, w.u);
  HomogeneousPoly dvp = directional_derivative(p, w.v);
  HomogeneousPoly duv = dup.is_zero() ? HomogeneousPoly::zero(p.nvars(), std::max(p.degree() - 2, 0))
                                      : directional_derivative(dup, w.v);
  int m = w.phi.domain_vars();
  int out_deg = w.output_degree();
  HomogeneousPoly acc(m, out_deg);
  if (!dup.is_zero() && !dvp.is_zero())
    acc = acc + compose(dup, w.phi) * compose(dvp, w.phi);
  if (!duv.is_zero()) acc = acc - compose(p, w.phi) * compose(duv, w.phi);
  if (!acc.is_zero() && acc.degree() != out_deg)
    throw malformed_witness_error("hyperwron degree bookkeeping failed");
  return acc;
}

// Wronskian without composition, for d >= 1 cubic/quartic structure work.
inline HomogeneousPoly wronskian(const HomogeneousPoly& p, const std::vector<Rat>& u,
                                 const std::vector<Rat>& v) {
  HomogeneousPoly dup = directional_derivative(p, u);
  HomogeneousPoly dvp = directional_derivative(p, v);
  HomogeneousPoly acc = HomogeneousPoly::zero(p.nvars(), 2 * (p.degree() - 1));
  if (!dup.is_zero() && !dvp.is_zero()) acc = acc + dup * dvp;
  if (!dup.is_zero()) {
    HomogeneousPoly duv = directional_derivative(dup, v);
    if (!duv.is_zero()) acc = acc - p * duv;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Verification reports
// ---------------------------------------------------------------------------

enum class CheckStatus { pass, fail, sampled_ok };

struct CheckEntry {
  std::string name;
  CheckStatus status;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckEntry> checks;
  u64 seed = 0;
  int samples = 0;

  void add(std::string name, CheckStatus st, std::string detail = "") {
    checks.push_back({std::move(name), st, std::move(detail)});
  }
  bool pass() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }
  const CheckEntry* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    case CheckStatus::sampled_ok: return "SAMPLED-OK";
  }
  return "?";
}

// (a) exact identity, (b) exact cone membership, (c) hyperbolicity verdict,
// (d) nonnegativity spot checks. PASS requires (a), (b), non-refuted (c).
inline VerificationReport verify_hyperwron(const HyperwronWitness& w, const HomogeneousPoly& q,
                                           int samples = 256, u64 seed = 1) {
  VerificationReport rep;
  rep.seed = seed;
  rep.samples = samples;

  switch (w.pair.verdict().kind) {
    case VerdictKind::certified:
      rep.add("hyperbolicity", CheckStatus::pass, "certified: " + w.pair.verdict().reason);
      break;
    case VerdictKind::sampled: {
      std::ostringstream os;
      os << "sampled n=" << w.pair.verdict().num_samples << " seed=" << w.pair.verdict().seed;
      rep.add("hyperbolicity", CheckStatus::sampled_ok, os.str());
      break;
    }
    case VerdictKind::refuted:
      rep.add("hyperbolicity", CheckStatus::fail, "pair is refuted");
      break;
  }

  bool cone_ok = true;
  if (!w.pair.refuted()) {
    ConeQuery qu = cone_membership(w.pair, w.u);
    ConeQuery qv = cone_membership(w.pair, w.v);
    cone_ok = qu.in_closed_cone() && qv.in_closed_cone();
    rep.add("cone-membership", cone_ok ? CheckStatus::pass : CheckStatus::fail,
            cone_ok ? "u and v lie in the closed cone" : "a base point left the cone");
  } else {
    rep.add("cone-membership", CheckStatus::fail, "skipped: refuted pair");
  }

  bool id_ok = false;
  try {
    HomogeneousPoly built = build_hyperwron(w);
    id_ok = (built == q) || (built.is_zero() && q.is_zero());
  } catch (const error& e) {
    rep.add("identity", CheckStatus::fail, std::string("could not build: ") + e.what());
  }
  if (rep.find("identity") == nullptr)
    rep.add("identity", id_ok ? CheckStatus::pass : CheckStatus::fail,
            id_ok ? "claimed polynomial matches the witness exactly" : "identity mismatch");

  Rng rng(seed);
  bool nonneg = true;
  std::string bad;
  for (int t = 0; t < samples; ++t) {
    std::vector<Rat> x = rng.next_rat_vector(q.nvars());
    if (sgn(q.eval(x)) < 0) {
      nonneg = false;
      std::ostringstream os;
      os << "q < 0 at sample " << t;
      bad = os.str();
      break;
    }
  }
  rep.add("nonnegativity-samples", nonneg ? CheckStatus::sampled_ok : CheckStatus::fail,
          nonneg ? "no negative value found" : bad);
  return rep;
}

inline VerificationReport verify_hyperzout(const HyperzoutWitness& w, const HomogeneousPoly& q,
                                           int samples = 256, int psd_samples = 64, u64 seed = 1) {
  VerificationReport rep;
  rep.seed = seed;
  rep.samples = samples;

  switch (w.pair.verdict().kind) {
    case VerdictKind::certified:
      rep.add("hyperbolicity", CheckStatus::pass, "certified: " + w.pair.verdict().reason);
      break;
    case VerdictKind::sampled: {
      std::ostringstream os;
      os << "sampled n=" << w.pair.verdict().num_samples << " seed=" << w.pair.verdict().seed;
      rep.add("hyperbolicity", CheckStatus::sampled_ok, os.str());
      break;
    }
    case VerdictKind::refuted:
      rep.add("hyperbolicity", CheckStatus::fail, "pair is refuted");
      break;
  }

  if (!w.pair.refuted()) {
    ConeQuery qu = cone_membership(w.pair, w.u);
    ConeQuery qv = cone_membership(w.pair, w.v);
    bool cone_ok = qu.in_closed_cone() && qv.in_closed_cone();
    rep.add("cone-membership", cone_ok ? CheckStatus::pass : CheckStatus::fail,
            cone_ok ? "u and v lie in the closed cone" : "a base point left the cone");
  } else {
    rep.add("cone-membership", CheckStatus::fail, "skipped: refuted pair");
  }

  bool id_ok = false;
  try {
    HomogeneousPoly built = build_hyperzout(w);
    id_ok = (built == q) || (built.is_zero() && q.is_zero());
  } catch (const error& e) {
    rep.add("identity", CheckStatus::fail, std::string("could not build: ") + e.what());
  }
  if (rep.find("identity") == nullptr)
    rep.add("identity", id_ok ? CheckStatus::pass : CheckStatus::fail,
            id_ok ? "claimed polynomial matches the witness exactly" : "identity mismatch");

  bool restricted = degree_restricted(w.mu(), w.pair.degree());
  rep.add("degree-restriction", CheckStatus::pass,
          restricted ? "degree-restricted (mu=2 or d <= 2mu-3)" : "not degree-restricted");

  // exact PSD of B_{p,u,v}(phi(x0)) at sampled points
  ParamBezoutian bez(w.pair.p(), w.u, w.v);
  Rng rng(seed + 7);
  bool psd_ok = true;
  std::string psd_bad;
  for (int t = 0; t < psd_samples; ++t) {
    std::vector<Rat> x0 = rng.next_rat_vector(w.phi.domain_vars(), 6, 2);
    RatMatrix b = bez.eval(w.phi.eval(x0));
    if (!is_psd_exact(b)) {
      psd_ok = false;
      std::ostringstream os;
      os << "Bezoutian not PSD at sample " << t;
      psd_bad = os.str();
      break;
    }
  }
  rep.add("bezoutian-psd-samples", psd_ok ? CheckStatus::sampled_ok : CheckStatus::fail,
          psd_ok ? "exact Sturm PSD test passed at every sample" : psd_bad);

  Rng rng2(seed);
  bool nonneg = true;
  std::string bad;
  for (int t = 0; t < samples; ++t) {
    std::vector<Rat> x = rng2.next_rat_vector(q.nvars());
    if (sgn(q.eval(x)) < 0) {
      nonneg = false;
      std::ostringstream os;
      os << "q < 0 at sample " << t;
      bad = os.str();
      break;
    }
  }
  rep.add("nonnegativity-samples", nonneg ? CheckStatus::sampled_ok : CheckStatus::fail,
          nonneg ? "no negative value found" : bad);
  return rep;
}

// ---------------------------------------------------------------------------
// SOS -> hyperwron (the constructive embedding)
// ---------------------------------------------------------------------------

struct SosToHyperwronOptions {
  // With this set, non-square weights w are folded through a four-square
  // decomposition w = sum c_i^2, at the cost of up to four squares per term.
  bool allow_nonsquare_weights = false;
};

// Builds the quadratic-certificate witness: e = (1,1,0,...,0) so that the
// proof's sqrt(2)/||e|| scaling equals one, p the Lorentz form for e,
// u = v = e, and phi the (weight-absorbed, zero-padded) list of square
// roots. The round trip through build_hyperwron is exact.
inline HyperwronWitness sos_to_hyperwron(const WeightedSOS& q,
                                         SosToHyperwronOptions opts = {}) {
  int m = q.nvars();
  int s = q.half_degree();
  // absorb weights
  std::vector<HomogeneousPoly> comps;
  std::vector<Rat> offending;
  for (const auto& t : q.terms()) {
    if (auto r = rat_sqrt_exact(t.weight)) {
      comps.push_back(t.square_root * *r);
    } else if (opts.allow_nonsquare_weights) {
      for (const Rat& c : rat_four_squares(t.weight)) comps.push_back(t.square_root * c);
    } else {
      offending.push_back(t.weight);
    }
  }
  if (!offending.empty()) {
    std::ostringstream os;
    os << "weights are not rational squares:";
    for (const Rat& w : offending) os << " " << w.get_str();
    os << " (enable four-square folding to accept them)";
    throw error(os.str());
  }
  Int dim = dim_forms(m, s);
  long n = std::max<long>({static_cast<long>(comps.size()),
                           dim.fits_slong_p() ? dim.get_si() : static_cast<long>(comps.size()),
                           2});
  while (static_cast<long>(comps.size()) < n) comps.push_back(HomogeneousPoly::zero(m, s));
  std::vector<Rat> e(n, Rat(0));
  e[0] = 1;
  e[1] = 1;
  HyperbolicPair pair = family_lorentz(e);
  return HyperwronWitness{std::move(pair), e, e, PolyMap(std::move(comps), m, s)};
}

// ---------------------------------------------------------------------------
// Quadratic-form split along a hyperplane: q = s + l*alpha with s a
// weighted SOS, all data rational (only ||l||^2 appears, never ||l||).
// ---------------------------------------------------------------------------

struct QformSplit {
  WeightedSOS s;
  HomogeneousPoly alpha;  // linear
};

inline QformSplit qform_hyperplane_split(const HomogeneousPoly& q, const HomogeneousPoly& l,
                                         IndefiniteWitness* witness = nullptr) {
  if (q.degree() != 2 || (!l.is_zero() && l.degree() != 1))
    throw error("qform_hyperplane_split needs a quadratic and a linear form");
  int n = q.nvars();
  if (l.nvars() != n) throw error("qform_hyperplane_split arity mismatch");
  if (l.is_zero()) {
    // q must be PSD outright
    IndefiniteWitness wit;
    WeightedSOS s = sos_split_nonneg_quadratic(q, witness ? witness : &wit);
    return QformSplit{std::move(s), HomogeneousPoly::zero(n, 1)};
  }
  std::vector<Rat> lv(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    ExpVec e(n, 0);
    e[i] = 1;
    lv[i] = l.coeff(e);
  }
  Rat norm2(0);
  for (const Rat& c : lv) norm2 += c * c;
  // projector P x = x - l(x)/||l||^2 * lvec, as n linear forms
  std::vector<SparsePoly> proj;
  proj.reserve(n);
  for (int i = 0; i < n; ++i) {
    SparsePoly pi = SparsePoly::variable(n, i);
    for (int j = 0; j < n; ++j) {
      if (sgn(lv[j]) == 0 || sgn(lv[i]) == 0) continue;
      pi = pi - SparsePoly::variable(n, j, lv[i] * lv[j] / norm2);
    }
    proj.push_back(std::move(pi));
  }
  // s(x) = q(Px): PSD everywhere iff q is nonnegative on the hyperplane
  SparsePoly s_sparse = q.sparse().substitute(proj);
  HomogeneousPoly s_poly =
      s_sparse.is_zero() ? HomogeneousPoly::zero(n, 2) : HomogeneousPoly(s_sparse, 2);
  IndefiniteWitness wit;
  WeightedSOS s(n, 1);
  try {
    s = sos_split_nonneg_quadratic(s_poly, &wit);
  } catch (const error&) {
    // map the witness back onto the hyperplane
    if (witness) {
      std::vector<Rat> w(n, Rat(0));
      for (int i = 0; i < n; ++i) w[i] = proj[i].eval(wit.point);  // P applied to the witness
      witness->point = std::move(w);
      witness->value = wit.value;
    }
    throw error("quadratic form is negative somewhere on the hyperplane");
  }
  // alpha(x) = (2 B_q(Px, lvec) + q(lvec) l(x) / ||l||^2) / ||l||^2
  RatMatrix g = gram_matrix(q);
  std::vector<Rat> glv = mat_apply(g, lv);  // G * lvec
  HomogeneousPoly alpha(n, 1);
  // 2 * (Px)^T G lvec = 2 sum_i proj_i(x) * glv_i
  SparsePoly ax(n);
  for (int i = 0; i < n; ++i) {
    if (sgn(glv[i]) == 0) continue;
    ax = ax + proj[i] * SparsePoly::constant(n, Rat(2) * glv[i]);
  }
  Rat qlv(0);  // q(lvec)
  qlv = q.eval(lv);
  if (sgn(qlv) != 0) ax = ax + l.sparse() * SparsePoly::constant(n, qlv / norm2);
  if (!ax.is_zero()) {
    SparsePoly scaled = ax * SparsePoly::constant(n, Rat(1) / norm2);
    alpha = HomogeneousPoly(scaled, 1);
  }
  return QformSplit{std::move(s), std::move(alpha)};
}

// ---------------------------------------------------------------------------
// Cubic derivative split: D_u p = -q + alpha * D^2_{uv} p, or the
// degenerate branch D^2_{uv} p = 0. Weighted form of the proof's Garding
// normal-form argument, all rational.
// ---------------------------------------------------------------------------

struct CubicSplit {
  bool duv_zero = false;
  WeightedSOS q;            // PSD quadratic as weighted squares
  HomogeneousPoly q_poly;   // same as q.expand(), kept expanded
  HomogeneousPoly alpha;    // linear
};

inline CubicSplit cubic_derivative_split(const HyperbolicPair& pair, const std::vector<Rat>& u,
                                         const std::vector<Rat>& v) {
  if (pair.degree() != 3) throw error("cubic_derivative_split needs a cubic");
  if (!cone_membership(pair, u).in_closed_cone() || !cone_membership(pair, v).in_closed_cone())
    throw error("cubic_derivative_split needs cone points");
  int n = pair.nvars();
  CubicSplit out{false, WeightedSOS(n, 1), HomogeneousPoly::zero(n, 2),
                 HomogeneousPoly::zero(n, 1)};
  HomogeneousPoly dup = directional_derivative(pair.p(), u);
  if (dup.is_zero()) {
    out.duv_zero = true;
    return out;
  }
  // D_u p = c1 L1^2 - sum_{i>=2} c_i L_i^2 with exactly one positive weight
  QuadraticFormDiag diag = lagrange_diagonalize(dup);
  Signature sig = diag.signature();
  if (sig.positive != 1)
    throw error("internal inconsistency: D_u p of a hyperbolic cubic must have "
                "exactly one positive square (implementation bug or invalid witness)");
  int n_forms = static_cast<int>(diag.diagonal().size());
  int pos = -1;
  for (int i = 0; i < n_forms; ++i)
    if (sgn(diag.diagonal()[i]) > 0) pos = i;
  Rat c1 = diag.diagonal()[pos];
  HomogeneousPoly l1 = diag.form(pos);
  // w-hat_i = L_i(v)
  Rat w1 = l1.eval(v);
  if (sgn(w1) == 0) {
    // D_u p (v) >= 0 forces every remaining weight*L_i(v)^2 to vanish, and
    // with them D^2_{uv} p
    if (!directional_derivative(dup, v).is_zero())
      throw error("internal inconsistency: w1 = 0 but D^2_{uv} p != 0");
    out.duv_zero = true;
    return out;
  }
  // q(x) = sum_{i>=2} c_i L_i(x)^2 - (sum_{i>=2} c_i w_i L_i(x))^2 / (c1 w1^2)
  // alpha(x) = (c1 w1 L1(x) + sum_{i>=2} c_i w_i L_i(x)) / (2 c1 w1^2)
  HomogeneousPoly cross(n, 1);  // sum_{i>=2} c_i w_i L_i(x)
  for (int i = 0; i < n_forms; ++i) {
    if (i == pos || sgn(diag.diagonal()[i]) == 0) continue;
    Rat ci = -diag.diagonal()[i];  // positive
    HomogeneousPoly li = diag.form(i);
    Rat wi = li.eval(v);
    if (sgn(wi) != 0) cross = cross + li * (ci * wi);
  }
  HomogeneousPoly qpoly(n, 2);
  for (int i = 0; i < n_forms; ++i) {
    if (i == pos || sgn(diag.diagonal()[i]) == 0) continue;
    Rat ci = -diag.diagonal()[i];
    HomogeneousPoly li = diag.form(i);
    qpoly = qpoly + li * li * ci;
  }
  if (!cross.is_zero()) qpoly = qpoly - cross * cross * (Rat(1) / (c1 * w1 * w1));
  out.q_poly = qpoly;
  out.q = sos_split_nonneg_quadratic(qpoly);
  HomogeneousPoly alpha = (l1 * (c1 * w1) + cross) * (Rat(1) / (Rat(2) * c1 * w1 * w1));
  out.alpha = alpha;
  // the identity D_u p = -q + alpha D^2_{uv} p is a theorem; any failure
  // here is a bug, so confirm it eagerly
  HomogeneousPoly duv = directional_derivative(dup, v);
  HomogeneousPoly rhs = -qpoly;
  if (!duv.is_zero()) rhs = rhs + alpha * duv;
  if (!(rhs == dup))
    throw error("internal inconsistency: cubic split identity failed to reconstruct");
  return out;
}

// ---------------------------------------------------------------------------
// Quartic hyperwron structure: f = q1*q2 + r*l with q1, q2 weighted SOS,
// l = D^2_{uv}p whenever that is nonzero.
// ---------------------------------------------------------------------------

struct QuarticDecomposition {
  WeightedSOS q1, q2;
  HomogeneousPoly r;  // cubic
  HomogeneousPoly l;  // linear
  std::string branch;

  // f must equal q1*q2 + r*l exactly
  HomogeneousPoly reconstruct() const {
    HomogeneousPoly acc = q1.expand() * q2.expand();
    if (!r.is_zero() && !l.is_zero()) acc = acc + r * l;
    return acc;
  }

  QuarticDecomposition composed_with(const PolyMap& phi) const {
    int m = phi.domain_vars();
    int k = phi.map_degree();
    WeightedSOS cq1(m, k), cq2(m, k);
    for (const auto& t : q1.terms()) cq1.add(t.weight, compose(t.square_root, phi));
    for (const auto& t : q2.terms()) cq2.add(t.weight, compose(t.square_root, phi));
    HomogeneousPoly cr = r.is_zero() ? HomogeneousPoly::zero(m, 3 * k) : compose(r, phi);
    HomogeneousPoly cl = l.is_zero() ? HomogeneousPoly::zero(m, k) : compose(l, phi);
    return QuarticDecomposition{std::move(cq1), std::move(cq2), std::move(cr), std::move(cl),
                                branch};
  }
};

// Divides q by the linear form l exactly; returns nullopt when l does not
// divide q (equivalently q does not vanish on {l = 0}).
inline std::optional<HomogeneousPoly> divide_by_linear(const HomogeneousPoly& q,
                                                       const HomogeneousPoly& l) {
  if (l.is_zero() || l.degree() != 1) throw error("divide_by_linear needs a nonzero linear form");
  if (q.is_zero()) return HomogeneousPoly::zero(q.nvars(), std::max(q.degree() - 1, 0));
  int n = q.nvars();
  // lead variable of l in graded lex
  const auto& lead = l.sparse().terms().rbegin()->first;
  int lv = 0;
  for (int i = 0; i < n; ++i)
    if (lead[i] == 1) lv = i;
  Rat lc = l.sparse().terms().rbegin()->second;
  SparsePoly rem = q.sparse();
  SparsePoly quot(n);
  while (!rem.is_zero()) {
    // highest term divisible by x_lv
    bool found = false;
    ExpVec e;
    Rat c;
    for (auto it = rem.terms().rbegin(); it != rem.terms().rend(); ++it) {
      if (it->first[lv] > 0) {
        e = it->first;
        c = it->second;
        found = true;
        break;
      }
    }
    if (!found) break;
    ExpVec qe = e;
    qe[lv] -= 1;
    Rat qc = c / lc;
    quot.add_term(qe, qc);
    SparsePoly mono(n);
    mono.add_term(qe, qc);
    rem = rem - mono * l.sparse();
  }
  if (!rem.is_zero()) return std::nullopt;
  if (quot.is_zero()) return HomogeneousPoly::zero(n, q.degree() - 1);
  return HomogeneousPoly(quot, q.degree() - 1);
}

inline QuarticDecomposition decompose_quartic_hyperwron(const HyperbolicPair& pair,
                                                        const std::vector<Rat>& u,
                                                        const std::vector<Rat>& v) {
  if (pair.degree() != 3) throw error("decompose_quartic_hyperwron needs a cubic pair");
  if (!cone_membership(pair, u).in_closed_cone() || !cone_membership(pair, v).in_closed_cone())
    throw error("decompose_quartic_hyperwron needs cone points");
  int n = pair.nvars();
  const HomogeneousPoly& p = pair.p();
  HomogeneousPoly dup = directional_derivative(p, u);
  HomogeneousPoly dvp = directional_derivative(p, v);
  HomogeneousPoly duv =
      dup.is_zero() ? HomogeneousPoly::zero(n, 1) : directional_derivative(dup, v);

  QuarticDecomposition out{WeightedSOS(n, 1), WeightedSOS(n, 1), HomogeneousPoly::zero(n, 3),
                           HomogeneousPoly::zero(n, 1), ""};

  if (duv.is_zero()) {
    // Case 1: f = D_u p * D_v p
    if (dup.is_zero()) {
      out.branch = "zero";  // f = 0
      return out;
    }
    QuadraticFormDiag diag = lagrange_diagonalize(dup);
    Signature sig = diag.signature();
    if (sig.positive != 1)
      throw error("internal inconsistency: D_u p of a hyperbolic cubic must have "
                  "exactly one positive square");
    int pos = -1;
    int n_forms = static_cast<int>(diag.diagonal().size());
    for (int i = 0; i < n_forms; ++i)
      if (sgn(diag.diagonal()[i]) > 0) pos = i;
    Rat c1 = diag.diagonal()[pos];
    HomogeneousPoly l1 = diag.form(pos);
    HomogeneousPoly q1(n, 2);  // sum_{i>=2} c_i L_i^2, so D_u p = c1 L1^2 - q1
    for (int i = 0; i < n_forms; ++i) {
      if (i == pos || sgn(diag.diagonal()[i]) == 0) continue;
      HomogeneousPoly li = diag.form(i);
      q1 = q1 + li * li * (-diag.diagonal()[i]);
    }
    if (auto alpha_hat = divide_by_linear(q1, l1)) {
      // Case 1a: q1 = L1 * alpha-hat, so f = L1 * (c1 L1 - alpha-hat) * D_v p
      out.branch = "case-1a";
      out.l = l1;
      HomogeneousPoly factor = l1 * c1 - *alpha_hat;
      out.r = dvp.is_zero() ? HomogeneousPoly::zero(n, 3) : factor * dvp;
      return out;
    }
    // Case 1b: -D_v p is nonnegative on {L1 = 0}; split it there
    out.branch = "case-1b";
    QformSplit split = qform_hyperplane_split(-dvp, l1);
    out.q1 = sos_split_nonneg_quadratic(q1);
    out.q2 = split.s;
    out.l = l1;
    // f = q1*q2 + L1*(q1*alpha + c1*L1*D_v p)
    HomogeneousPoly rpoly = q1 * split.alpha;
    if (!dvp.is_zero()) rpoly = rpoly + l1 * dvp * c1;
    out.r = rpoly;
    return out;
  }

  // Case 2: l = D^2_{uv} p
  out.branch = "case-2";
  CubicSplit su = cubic_derivative_split(pair, u, v);
  CubicSplit sv = cubic_derivative_split(pair, v, u);
  if (su.duv_zero || sv.duv_zero)
    throw error("internal inconsistency: D^2_{uv} p nonzero but a split degenerated");
  out.q1 = su.q;
  out.q2 = sv.q;
  out.l = duv;
  // r = -q1*alpha2 - q2*alpha1 + alpha1*alpha2*D^2_{uv}p - p
  HomogeneousPoly rpoly = -(su.q_poly * sv.alpha) - (sv.q_poly * su.alpha) +
                          su.alpha * sv.alpha * duv - p;
  out.r = rpoly;
  return out;
}

// ---------------------------------------------------------------------------
// Interlacer certificates: D_e p(phi) q(phi) - D_e q(phi) p(phi)
// ---------------------------------------------------------------------------

struct InterlacerReport {
  VerificationReport report;
  std::optional<std::vector<Rat>> failure_witness;
  bool ok() const { return report.pass(); }
};

// Weak interlacing of the restrictions along t -> (te - x), checked at one
// sample point x: both restrictions real-rooted, and the multiplicity
// counting functions never drift apart by more than one. Numeric estimates
// choose the rational test grid; every count is an exact Sturm count.
inline bool interlaces_at(const HomogeneousPoly& p, const HomogeneousPoly& q,
                          const std::vector<Rat>& e, const std::vector<Rat>& x) {
  UnivariatePoly fp = restrict_line(p, x, e);
  UnivariatePoly fq = restrict_line(q, x, e);
  if (fp.is_zero() || fq.is_zero()) return true;  // degenerate restriction
  if (!is_real_rooted(fp) || !is_real_rooted(fq)) return false;
  // rational grid separating all roots of fp*fq, from exact root bounds and
  // repeated bisection on the squarefree product
  UnivariatePoly prod = squarefree_part(fp * fq);
  int total = sturm_count(prod, RealInterval::all());
  if (total == 0) return true;
  // Cauchy bound
  Rat bound(1);
  for (int i = 0; i < prod.degree(); ++i) {
    Rat t = abs(prod.coeff(i) / prod.leading());
    if (t > bound) bound = t;
  }
  bound += 1;
  std::vector<Rat> grid;  // points that are not roots, isolating all roots
  grid.push_back(-bound);
  grid.push_back(bound);
  // refine until each open cell holds at most one distinct root
  for (int pass = 0; pass < 128; ++pass) {
    bool refined = false;
    std::vector<Rat> next;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      next.push_back(grid[i]);
      int c = sturm_count(prod, RealInterval::open(grid[i], grid[i + 1]));
      if (c > 1) {
        Rat mid = (grid[i] + grid[i + 1]) / 2;
        while (sgn(prod(mid)) == 0) mid += (grid[i + 1] - grid[i]) / 1024;
        next.push_back(mid);
        refined = true;
      }
    }
    next.push_back(grid.back());
    grid = std::move(next);
    if (!refined) break;
  }
  // weak interlacing <=> |N_p(t) - N_q(t)| stays in {0,1} at every grid
  // point, where N counts roots <= t with multiplicity (deg fp = deg fq + 1)
  for (const Rat& t : grid) {
    int np = root_count_with_multiplicity(fp, RealInterval{std::nullopt, t, true, false});
    int nq = root_count_with_multiplicity(fq, RealInterval{std::nullopt, t, true, false});
    if (np - nq < 0 || np - nq > 1) return false;
  }
  return true;
}

inline std::pair<HomogeneousPoly, InterlacerReport> interlacer_certificate(
    const HyperbolicPair& pair, const HomogeneousPoly& q, const PolyMap& phi, int samples = 32,
    u64 seed = 5) {
  if (q.degree() != pair.degree() - 1)
    throw error("interlacer must have degree deg(p) - 1");
  if (q.nvars() != pair.nvars()) throw error("interlacer arity mismatch");
  const HomogeneousPoly& p = pair.p();
  HomogeneousPoly dep = directional_derivative(p, pair.e());
  HomogeneousPoly deq = q.degree() >= 1 ? directional_derivative(q, pair.e())
                                        : HomogeneousPoly::zero(q.nvars(), 0);
  int m = phi.domain_vars();
  int k = phi.map_degree();
  HomogeneousPoly cert(m, 2 * (pair.degree() - 1) * k);
  if (!dep.is_zero() && !q.is_zero()) cert = cert + compose(dep, phi) * compose(q, phi);
  if (!deq.is_zero()) cert = cert - compose(deq, phi) * compose(p, phi);

  InterlacerReport rep;
  rep.report.seed = seed;
  rep.report.samples = samples;
  Rng rng(seed);
  bool inter_ok = true, nonneg_ok = true;
  for (int t = 0; t < samples; ++t) {
    std::vector<Rat> x = rng.next_rat_vector(pair.nvars());
    if (!interlaces_at(p, q, pair.e(), x)) {
      inter_ok = false;
      rep.failure_witness = x;
      break;
    }
  }
  Rng rng2(seed + 1);
  for (int t = 0; t < samples; ++t) {
    std::vector<Rat> y = rng2.next_rat_vector(m);
    if (sgn(cert.eval(y)) < 0) {
      nonneg_ok = false;
      if (!rep.failure_witness) rep.failure_witness = y;
      break;
    }
  }
  rep.report.add("interlacing-samples", inter_ok ? CheckStatus::sampled_ok : CheckStatus::fail,
                 inter_ok ? "roots weakly separate at every sample" : "interlacing failed");
  rep.report.add("nonnegativity-samples", nonneg_ok ? CheckStatus::sampled_ok : CheckStatus::fail,
                 nonneg_ok ? "no negative value found" : "certificate negative at a sample");
  return {cert, rep};
}

}  // namespace hypercert
