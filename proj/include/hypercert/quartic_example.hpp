#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hypercert/exact_matrix.hpp"
#include "hypercert/homogeneous.hpp"
#include "hypercert/prime_field.hpp"
#include "hypercert/quadratic.hpp"
#include "hypercert/quaternion.hpp"
#include "hypercert/rng.hpp"

namespace hypercert {

// The 16-variable quartic det_M(X X*) for a 2x2 quaternionic X.
//
// Variable ordering (fixed; every matrix and basis below depends on it):
// row-major over entries X11, X12, X21, X22, with (1, i, j, k) component
// order inside each entry. Coordinate index = 4*(2*row + col) + component.

class modular_disagreement_error : public error {
 public:
  using error::error;
};

inline int quat_var_index(int row, int col, int comp) { return 4 * (2 * row + col) + comp; }

namespace detail {

inline Quaternion<SparsePoly> quat_entry_vars(int row, int col) {
  auto v = [&](int comp) { return SparsePoly::variable(16, quat_var_index(row, col, comp)); };
  return Quaternion<SparsePoly>(v(0), v(1), v(2), v(3));
}

// det_M(X X*) for a 2x2 matrix of quaternions over a commutative ring;
// the diagonal of X X* is checked to be scalar.
template <class R>
R moore_det_of_gram(const QuatMatrix2<R>& x, const R& zero) {
  QuatMatrix2<R> z = x * x.conj_transpose();
  if (!(z(0, 0).b == zero && z(0, 0).c == zero && z(0, 0).d == zero &&
        z(1, 1).b == zero && z(1, 1).c == zero && z(1, 1).d == zero))
    throw error("Gram matrix is not Hermitian (unexpected)");
  return z(0, 0).a * z(1, 1).a - z(0, 1).norm_sq();
}

}  // namespace detail

// Symbolic expansion of det_M(XX*); idempotent and cached.
inline const HomogeneousPoly& fhat_expand() {
  static const HomogeneousPoly fhat = [] {
    QuatMatrix2<SparsePoly> x(detail::quat_entry_vars(0, 0), detail::quat_entry_vars(0, 1),
                              detail::quat_entry_vars(1, 0), detail::quat_entry_vars(1, 1));
    SparsePoly f = detail::moore_det_of_gram(x, SparsePoly(16));
    return HomogeneousPoly(f, 4);
  }();
  return fhat;
}

inline std::vector<Rat> quat_matrix_to_point(const RatQuatMatrix2& x) {
  std::vector<Rat> p(16);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const RatQuat& q = x(i, j);
      p[quat_var_index(i, j, 0)] = q.a;
      p[quat_var_index(i, j, 1)] = q.b;
      p[quat_var_index(i, j, 2)] = q.c;
      p[quat_var_index(i, j, 3)] = q.d;
    }
  return p;
}

inline RatQuatMatrix2 point_to_quat_matrix(const std::vector<Rat>& p) {
  if (p.size() != 16) throw error("point must have 16 coordinates");
  auto q = [&](int i, int j) {
    return RatQuat(p[quat_var_index(i, j, 0)], p[quat_var_index(i, j, 1)],
                   p[quat_var_index(i, j, 2)], p[quat_var_index(i, j, 3)]);
  };
  return RatQuatMatrix2(q(0, 0), q(0, 1), q(1, 0), q(1, 1));
}

// Pointwise value through quaternion arithmetic (no 16-variable expansion).
inline Rat fhat_eval(const RatQuatMatrix2& x) {
  return moore_det(x * x.conj_transpose());
}

// ---------------------------------------------------------------------------
// Sp(2) invariance
// ---------------------------------------------------------------------------

// Exact check of fhat(P X Q) = fhat(X) at seeded rational X. P and Q must
// be exactly unitary. With check_symbolic the identity is also expanded
// symbolically in the 16 coordinates.
inline bool sp2_invariance_check(const RatQuatMatrix2& p, const RatQuatMatrix2& q, int samples,
                                 u64 seed, bool check_symbolic = false) {
  if (!is_unitary(p) || !is_unitary(q)) throw error("Sp(2) invariance needs unitary P and Q");
  Rng rng(seed);
  for (int t = 0; t < samples; ++t) {
    RatQuatMatrix2 x = random_quat_matrix(rng);
    if (fhat_eval(p * x * q) != fhat_eval(x)) return false;
  }
  if (check_symbolic) {
    auto lift = [](const RatQuat& c) {
      return Quaternion<SparsePoly>(SparsePoly::constant(16, c.a), SparsePoly::constant(16, c.b),
                                    SparsePoly::constant(16, c.c), SparsePoly::constant(16, c.d));
    };
    QuatMatrix2<SparsePoly> pl(lift(p(0, 0)), lift(p(0, 1)), lift(p(1, 0)), lift(p(1, 1)));
    QuatMatrix2<SparsePoly> ql(lift(q(0, 0)), lift(q(0, 1)), lift(q(1, 0)), lift(q(1, 1)));
    QuatMatrix2<SparsePoly> x(detail::quat_entry_vars(0, 0), detail::quat_entry_vars(0, 1),
                              detail::quat_entry_vars(1, 0), detail::quat_entry_vars(1, 1));
    SparsePoly lhs = detail::moore_det_of_gram(pl * x * ql, SparsePoly(16));
    if (!(lhs == fhat_expand().sparse())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// The two-variable restriction h(x1, w1) = fhat([[x1 i, i], [i, w1 i]])
// ---------------------------------------------------------------------------

struct RestrictionH {
  SparsePoly h;  // bivariate in (x1, w1)
  bool equals_square;  // h == (x1 w1 - 1)^2
};

inline RestrictionH restriction_h() {
  SparsePoly zero2(2);
  auto cq = [&](long v) { return SparsePoly::constant(2, Rat(v)); };
  SparsePoly x1 = SparsePoly::variable(2, 0);
  SparsePoly w1 = SparsePoly::variable(2, 1);
  using QP = Quaternion<SparsePoly>;
  QP x11(zero2, x1, zero2, zero2);      // x1 * i
  QP x12(zero2, cq(1), zero2, zero2);   // i
  QP x21 = x12;                         // i
  QP x22(zero2, w1, zero2, zero2);      // w1 * i
  QuatMatrix2<SparsePoly> x(x11, x12, x21, x22);
  SparsePoly h = detail::moore_det_of_gram(x, zero2);
  SparsePoly target = x1 * w1 - cq(1);
  target = target * target;
  return RestrictionH{h, h == target};
}

// ---------------------------------------------------------------------------
// Rank-one parameterization X = [x; y] [z  w]
// ---------------------------------------------------------------------------

// Entries of the rank-one matrix as bilinear forms in 16 parameters
// (x, y, z, w quaternions, in that order, (1,i,j,k) components).
inline QuatMatrix2<SparsePoly> rank_one_parameterization() {
  auto qv = [&](int base) {
    auto v = [&](int c) { return SparsePoly::variable(16, base + c); };
    return Quaternion<SparsePoly>(v(0), v(1), v(2), v(3));
  };
  Quaternion<SparsePoly> x = qv(0), y = qv(4), z = qv(8), w = qv(12);
  return QuatMatrix2<SparsePoly>(x * z, x * w, y * z, y * w);
}

inline RatQuatMatrix2 rank_one_matrix(const RatQuat& x, const RatQuat& y, const RatQuat& z,
                                      const RatQuat& w) {
  return RatQuatMatrix2(x * z, x * w, y * z, y * w);
}

// fhat composed with the rank-one parameterization expands to the zero
// polynomial of degree 8 in 16 parameters.
inline bool rank_one_vanishing() {
  QuatMatrix2<SparsePoly> x = rank_one_parameterization();
  SparsePoly f = detail::moore_det_of_gram(x, SparsePoly(16));
  if (!f.is_zero())
    throw error("rank-one composition of fhat is nonzero (implementation bug)");
  return true;
}

// ---------------------------------------------------------------------------
// Gradient machinery
// ---------------------------------------------------------------------------

inline const std::vector<HomogeneousPoly>& fhat_gradient() {
  static const std::vector<HomogeneousPoly> grad = [] {
    std::vector<HomogeneousPoly> g;
    for (int i = 0; i < 16; ++i) g.push_back(fhat_expand().partial(i));
    return g;
  }();
  return grad;
}

// Each partial of fhat vanishes identically on the rank-one variety.
inline bool gradient_vanishes_on_rank_one() {
  QuatMatrix2<SparsePoly> param = rank_one_parameterization();
  std::vector<SparsePoly> comp;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto& q = param(i, j);
      comp.push_back(q.a);
      comp.push_back(q.b);
      comp.push_back(q.c);
      comp.push_back(q.d);
    }
  for (const auto& g : fhat_gradient()) {
    if (!g.sparse().substitute(comp).is_zero()) return false;
  }
  return true;
}

// 16x16 Hessian of fhat at a point, with exact rank. The linear
// independence certificate evaluates at the identity matrix (the paper
// names the point x=z=1, y=w=0 with x, z the diagonal entries).
inline RatMatrix fhat_hessian_at(const std::vector<Rat>& point) {
  RatMatrix h(16, std::vector<Rat>(16));
  const auto& grad = fhat_gradient();
  for (int i = 0; i < 16; ++i) {
    for (int j = i; j < 16; ++j) {
      Rat v = grad[i].partial(j).eval(point);
      h[i][j] = v;
      h[j][i] = v;
    }
  }
  return h;
}

inline int dense_rank(RatMatrix m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (sgn(m[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      Rat f = m[r][c] / m[rank][c];
      for (int j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::vector<Rat> identity_evaluation_point() {
  std::vector<Rat> p(16, Rat(0));
  p[quat_var_index(0, 0, 0)] = 1;
  p[quat_var_index(1, 1, 0)] = 1;
  return p;
}

inline int hessian_rank_at_identity() { return dense_rank(fhat_hessian_at(identity_evaluation_point())); }

// ---------------------------------------------------------------------------
// The linear systems of the extremality argument
// ---------------------------------------------------------------------------

enum class NullspaceMode { modular, exact };

struct NullspaceSettings {
  NullspaceMode mode = NullspaceMode::modular;
  u64 seed = 2024;
  int points = 0;  // 0 = module default
};

namespace detail {

struct MonomialTables {
  std::vector<ExpVec> deg3, deg4;
  std::map<ExpVec, int, GradedLexLess> idx3, idx4;
  // column in the degree-4 block for beta + e_i, and beta_i + 1
  std::vector<std::array<int, 16>> lift_col;
  std::vector<std::array<int, 16>> lift_coeff;

  MonomialTables() {
    deg3 = monomials_of_degree(16, 3);
    deg4 = monomials_of_degree(16, 4);
    for (std::size_t i = 0; i < deg3.size(); ++i) idx3[deg3[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < deg4.size(); ++i) idx4[deg4[i]] = static_cast<int>(i);
    lift_col.resize(deg3.size());
    lift_coeff.resize(deg3.size());
    for (std::size_t b = 0; b < deg3.size(); ++b) {
      for (int i = 0; i < 16; ++i) {
        ExpVec g = deg3[b];
        g[i] += 1;
        lift_col[b][i] = idx4.at(g);
        lift_coeff[b][i] = static_cast<int>(deg3[b][i]) + 1;
      }
    }
  }
};

inline const MonomialTables& monomial_tables() {
  static const MonomialTables t;
  return t;
}

// Integer term list of a polynomial with integer coefficients, for fast
// modular evaluation.
struct IntTerms {
  std::vector<std::pair<ExpVec, long>> terms;
  explicit IntTerms(const HomogeneousPoly& p) {
    for (const auto& [e, c] : p.sparse().terms()) {
      if (c.get_den() != 1) throw error("expected integer coefficients");
      terms.emplace_back(e, c.get_num().get_si());
    }
  }
  u32 eval_mod(const std::vector<u32>& x, const Barrett31& bar) const {
    u64 acc = 0;
    for (const auto& [e, c] : terms) {
      u32 t = bar.reduce(static_cast<u64>(c >= 0 ? c : -c) % bar.p);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (unsigned k = 0; k < e[i]; ++k) t = bar.mul(t, x[i]);
      acc += (c >= 0) ? t : (bar.p - t);
      if (acc >= (u64(1) << 62)) acc = bar.reduce(acc);
    }
    return bar.reduce(acc);
  }
};

inline const std::vector<IntTerms>& gradient_int_terms() {
  static const std::vector<IntTerms> g = [] {
    std::vector<IntTerms> out;
    for (const auto& p : fhat_gradient()) out.emplace_back(p);
    return out;
  }();
  return g;
}

// Rank-one parameter point -> the 16 matrix coordinates, mod p.
inline std::vector<u32> rank_one_coords_mod(const std::vector<u32>& par, const Barrett31& bar) {
  auto mulq = [&](const std::array<u32, 4>& a, const std::array<u32, 4>& b) {
    auto m = [&](u32 x, u32 y) { return bar.mul(x, y); };
    auto add = [&](u32 x, u32 y) { return bar.add(x, y); };
    auto sub = [&](u32 x, u32 y) { return bar.sub(x, y); };
    return std::array<u32, 4>{
        sub(sub(m(a[0], b[0]), m(a[1], b[1])), add(m(a[2], b[2]), m(a[3], b[3]))),
        add(add(m(a[0], b[1]), m(a[1], b[0])), sub(m(a[2], b[3]), m(a[3], b[2]))),
        add(sub(m(a[0], b[2]), m(a[1], b[3])), add(m(a[2], b[0]), m(a[3], b[1]))),
        add(add(m(a[0], b[3]), m(a[1], b[2])), sub(m(a[3], b[0]), m(a[2], b[1])))};
  };
  std::array<u32, 4> x{par[0], par[1], par[2], par[3]}, y{par[4], par[5], par[6], par[7]},
      z{par[8], par[9], par[10], par[11]}, w{par[12], par[13], par[14], par[15]};
  std::array<std::array<u32, 4>, 4> entries{mulq(x, z), mulq(x, w), mulq(y, z), mulq(y, w)};
  std::vector<u32> out(16);
  for (int e = 0; e < 4; ++e)
    for (int c = 0; c < 4; ++c) out[4 * e + c] = entries[e][c];
  return out;
}

// Values of all degree-3 monomials at a point, in idx3 order.
inline std::vector<u32> deg3_monomial_values(const std::vector<u32>& x, const Barrett31& bar) {
  const auto& tables = monomial_tables();
  std::vector<u32> out(tables.deg3.size());
  for (std::size_t t = 0; t < tables.deg3.size(); ++t) {
    u32 v = 1 % bar.p;
    const ExpVec& e = tables.deg3[t];
    for (int i = 0; i < 16; ++i)
      for (unsigned k = 0; k < e[i]; ++k) v = bar.mul(v, x[i]);
    out[t] = v;
  }
  return out;
}

inline int cubic_vanishing_rank_one_prime(u32 prime, int points, u64 seed) {
  Barrett31 bar(prime);
  Rng rng(seed);
  DenseModRank elim(monomial_tables().deg3.size(), prime);
  for (int t = 0; t < points; ++t) {
    std::vector<u32> par(16);
    for (auto& v : par) v = static_cast<u32>(rng.next_below(prime));
    std::vector<u32> x = rank_one_coords_mod(par, bar);
    elim.add_row(deg3_monomial_values(x, bar));
  }
  return static_cast<int>(elim.rank());
}

inline int extremality_rank_one_prime(u32 prime, int points, u64 seed) {
  const auto& tables = monomial_tables();
  Barrett31 bar(prime);
  Rng rng(seed);
  const std::size_t pcols = tables.deg4.size();       // 3876
  const std::size_t cols = pcols + 256;               // + the 16x16 matrix A
  DenseModRank elim(cols, prime);
  const auto& grads = gradient_int_terms();
  for (int t = 0; t < points; ++t) {
    std::vector<u32> x(16);
    for (auto& v : x) v = static_cast<u32>(rng.next_below(prime));
    std::vector<u32> m3 = deg3_monomial_values(x, bar);
    std::array<u32, 16> gvals;
    for (int j = 0; j < 16; ++j) gvals[j] = grads[j].eval_mod(x, bar);
    // 16 equations: d p/d x_i (x) - sum_j A_ij d fhat/d x_j (x) = 0
    for (int i = 0; i < 16; ++i) {
      std::vector<u32> row(cols, 0);
      for (std::size_t b = 0; b < m3.size(); ++b) {
        u32 v = bar.mul(static_cast<u32>(tables.lift_coeff[b][i] % bar.p), m3[b]);
        row[tables.lift_col[b][i]] = bar.add(row[tables.lift_col[b][i]], v);
      }
      for (int j = 0; j < 16; ++j) {
        row[pcols + 16 * static_cast<std::size_t>(i) + j] = bar.sub(0, gvals[j]);
      }
      elim.add_row(std::move(row));
    }
  }
  return static_cast<int>(elim.rank());
}

// Runs the per-prime rank computation for two (then possibly three) random
// primes, with two-way agreement; distinct answers across three primes
// raise modular_disagreement_error. A thread per prime when allowed.
template <class RankFn>
int agreed_modular_rank(RankFn rank_fn, u64 seed, const char* what) {
  Rng prng(seed ^ 0xabcdef12345678ULL);
  u32 p1 = random_prime_31(prng);
  u32 p2 = random_prime_31(prng);
  while (p2 == p1) p2 = random_prime_31(prng);
  int r1 = 0, r2 = 0;
  unsigned threads = 1;
  if (const char* env = std::getenv("HYPERCERT_THREADS")) {
    threads = static_cast<unsigned>(std::max(1, atoi(env)));
  } else {
    threads = std::thread::hardware_concurrency();
  }
  if (threads >= 2) {
    std::thread worker([&] { r1 = rank_fn(p1); });
    r2 = rank_fn(p2);
    worker.join();
  } else {
    r1 = rank_fn(p1);
    r2 = rank_fn(p2);
  }
  if (r1 == r2) return r1;
  u32 p3 = random_prime_31(prng);
  int r3 = rank_fn(p3);
  if (r3 == r1 || r3 == r2) return r3;
  throw modular_disagreement_error(std::string(what) +
                                   ": three primes disagree; use the exact mode");
}

// Exact sparse matrix whose nullspace is the space of cubics vanishing on
// rank-one matrices: one row per degree-6 parameter monomial, one column
// per degree-3 coordinate monomial.
inline ExactMatrix cubic_vanishing_matrix_exact() {
  const auto& tables = monomial_tables();
  QuatMatrix2<SparsePoly> param = rank_one_parameterization();
  std::vector<SparsePoly> comp;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto& q = param(i, j);
      comp.push_back(q.a);
      comp.push_back(q.b);
      comp.push_back(q.c);
      comp.push_back(q.d);
    }
  std::vector<ExpVec> deg6 = monomials_of_degree(16, 6);
  std::map<ExpVec, int, GradedLexLess> idx6;
  for (std::size_t i = 0; i < deg6.size(); ++i) idx6[deg6[i]] = static_cast<int>(i);
  ExactMatrix m(static_cast<int>(deg6.size()), static_cast<int>(tables.deg3.size()));
  for (std::size_t c = 0; c < tables.deg3.size(); ++c) {
    SparsePoly mono(16);
    mono.add_term(tables.deg3[c], Rat(1));
    SparsePoly composed = mono.substitute(comp);
    for (const auto& [e, v] : composed.terms()) m.add(idx6.at(e), static_cast<int>(c), v);
  }
  return m;
}

// Exact sparse matrix for the (p, A) system: rows indexed by (coordinate i,
// degree-3 monomial beta), columns: 3876 coefficients of p then 256 entries
// of A.
inline ExactMatrix extremality_matrix_exact() {
  const auto& tables = monomial_tables();
  const int pcols = static_cast<int>(tables.deg4.size());
  ExactMatrix m(16 * static_cast<int>(tables.deg3.size()), pcols + 256);
  const auto& grad = fhat_gradient();
  for (int i = 0; i < 16; ++i) {
    for (std::size_t b = 0; b < tables.deg3.size(); ++b) {
      int row = i * static_cast<int>(tables.deg3.size()) + static_cast<int>(b);
      m.add(row, tables.lift_col[b][i], Rat(tables.lift_coeff[b][i]));
      for (int j = 0; j < 16; ++j) {
        Rat c = grad[j].coeff(tables.deg3[b]);
        if (sgn(c) != 0) m.add(row, pcols + 16 * i + j, -c);
      }
    }
  }
  return m;
}

}  // namespace detail

struct CubicVanishingResult {
  int dimension = 0;
  bool gradient_in_nullspace = false;
  bool gradient_independent = false;
  int hessian_rank = 0;
  bool basis_check() const {
    return gradient_in_nullspace && gradient_independent && hessian_rank == 16;
  }
};

// dim{ q in F_{16,3} : q vanishes on rank-one matrices } with the
// gradient-basis cross-checks. Default: 1300 sample points, two primes.
inline CubicVanishingResult cubics_vanishing_on_rank_one(NullspaceSettings s = {}) {
  const int cols = static_cast<int>(detail::monomial_tables().deg3.size());
  int points = s.points > 0 ? s.points : 1300;
  CubicVanishingResult out;
  if (s.mode == NullspaceMode::modular) {
    int rank = detail::agreed_modular_rank(
        [&](u32 p) { return detail::cubic_vanishing_rank_one_prime(p, points, s.seed); }, s.seed,
        "cubics_vanishing_on_rank_one");
    out.dimension = cols - rank;
  } else {
    ExactMatrix m = detail::cubic_vanishing_matrix_exact();
    out.dimension = cols - matrix_rank_exact(m).rank;
  }
  out.gradient_in_nullspace = gradient_vanishes_on_rank_one();
  // exact independence of the 16 partials
  ExactMatrix coeffs(16, cols);
  const auto& tables = detail::monomial_tables();
  for (int i = 0; i < 16; ++i) {
    for (const auto& [e, c] : fhat_gradient()[i].sparse().terms())
      coeffs.set(i, tables.idx3.at(e), c);
  }
  out.gradient_independent = matrix_rank_exact(coeffs).rank == 16;
  out.hessian_rank = hessian_rank_at_identity();
  return out;
}

// dim{ (p, A) : grad p = A grad fhat identically }. Default: 400 sample
// points (16 equations each), two primes. The expected value 1, together
// with the extreme-ray criterion, gives the extremality verdict.
inline int extremality_dimension(NullspaceSettings s = {}) {
  const auto& tables = detail::monomial_tables();
  const int cols = static_cast<int>(tables.deg4.size()) + 256;
  if (s.mode == NullspaceMode::modular) {
    int points = s.points > 0 ? s.points : 400;
    int rank = detail::agreed_modular_rank(
        [&](u32 p) { return detail::extremality_rank_one_prime(p, points, s.seed); }, s.seed,
        "extremality_dimension");
    return cols - rank;
  }
  ExactMatrix m = detail::extremality_matrix_exact();
  return cols - matrix_rank_exact(m).rank;
}

// The known kernel element (p, A) = (fhat, I): evaluates the sampled row
// functionals exactly over Q against its coefficient vector. This drives
// the same row construction the modular path uses.
inline bool extremality_known_kernel_element_ok(int points = 16, u64 seed = 99) {
  Rng rng(seed);
  const auto& tables = detail::monomial_tables();
  const auto& grad = fhat_gradient();
  std::vector<Rat> pcoeff(tables.deg4.size(), Rat(0));
  for (const auto& [e, c] : fhat_expand().sparse().terms()) pcoeff[tables.idx4.at(e)] = c;
  for (int t = 0; t < points; ++t) {
    std::vector<Rat> x = rng.next_int_vector(16, -5, 5);
    std::vector<Rat> m3(tables.deg3.size());
    for (std::size_t b = 0; b < tables.deg3.size(); ++b) {
      Rat v(1);
      const ExpVec& e = tables.deg3[b];
      for (int i = 0; i < 16; ++i)
        for (unsigned k = 0; k < e[i]; ++k) v *= x[i];
      m3[b] = v;
    }
    for (int i = 0; i < 16; ++i) {
      Rat acc(0);
      for (std::size_t b = 0; b < tables.deg3.size(); ++b)
        acc += Rat(tables.lift_coeff[b][i]) * m3[b] * pcoeff[tables.lift_col[b][i]];
      acc -= grad[i].eval(x);  // the A = I block contributes -grad_i
      if (sgn(acc) != 0) return false;
    }
  }
  return true;
}

}  // namespace hypercert
