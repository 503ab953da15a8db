#pragma once

#include <utility>
#include <vector>

#include "hypercert/homogeneous.hpp"

namespace hypercert {

using RatMatrix = std::vector<std::vector<Rat>>;

inline RatMatrix identity_matrix(int n) {
  RatMatrix m(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  int n = static_cast<int>(a.size());
  int k = static_cast<int>(b.size());
  int m = static_cast<int>(b.at(0).size());
  RatMatrix r(n, std::vector<Rat>(m, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      if (sgn(a[i][l]) == 0) continue;
      for (int j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

inline RatMatrix mat_transpose(const RatMatrix& a) {
  int n = static_cast<int>(a.size());
  int m = static_cast<int>(a.at(0).size());
  RatMatrix r(m, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

// Gauss-Jordan inverse; throws on singular input.
inline RatMatrix mat_inverse(RatMatrix a) {
  int n = static_cast<int>(a.size());
  RatMatrix inv = identity_matrix(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (sgn(a[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw error("matrix is singular");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    Rat f = Rat(1) / a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] *= f;
      inv[c][j] *= f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rat g = a[r][c];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= g * a[c][j];
        inv[r][j] -= g * inv[c][j];
      }
    }
  }
  return inv;
}

inline std::vector<Rat> mat_apply(const RatMatrix& a, const std::vector<Rat>& x) {
  std::vector<Rat> r(a.size(), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
  return r;
}

// Symmetric Gram matrix G with q(x) = x^T G x.
inline RatMatrix gram_matrix(const HomogeneousPoly& q) {
  if (q.degree() != 2) throw error("gram_matrix needs a quadratic form");
  int n = q.nvars();
  RatMatrix g(n, std::vector<Rat>(n, Rat(0)));
  for (const auto& [e, c] : q.sparse().terms()) {
    int i = -1, j = -1;
    for (int v = 0; v < n; ++v) {
      if (e[v] == 2) i = j = v;
      if (e[v] == 1) (i < 0 ? i : j) = v;
    }
    if (i == j) {
      g[i][i] = c;
    } else {
      g[i][j] = c / 2;
      g[j][i] = c / 2;
    }
  }
  return g;
}

inline HomogeneousPoly quadratic_from_gram(const RatMatrix& g) {
  int n = static_cast<int>(g.size());
  HomogeneousPoly q(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Rat c = (i == j) ? g[i][i] : g[i][j] + g[j][i];
      if (sgn(c) == 0) continue;
      ExpVec e(n, 0);
      e[i] += 1;
      e[j] += 1;
      q.add_term(e, c);
    }
  }
  return q;
}

struct Signature {
  int positive = 0, negative = 0, zero = 0;
  bool operator==(const Signature&) const = default;
};

// Rational congruence diagonalization of a quadratic form:
//   transform^T G transform = diag(diagonal)
// and equivalently q(x) = sum_i diagonal[i] * l_i(x)^2 where l_i are the
// rows of forms = transform^{-1}.
class QuadraticFormDiag {
 public:
  QuadraticFormDiag(RatMatrix transform, std::vector<Rat> diagonal)
      : transform_(std::move(transform)), diagonal_(std::move(diagonal)) {}

  const RatMatrix& transform() const { return transform_; }
  const std::vector<Rat>& diagonal() const { return diagonal_; }

  const RatMatrix& forms() const {
    if (forms_.empty()) forms_ = mat_inverse(transform_);
    return forms_;
  }
  // l_i as a linear form in the original variables
  HomogeneousPoly form(int i) const { return HomogeneousPoly::linear_form(forms().at(i)); }

  Signature signature() const {
    Signature s;
    for (const Rat& d : diagonal_) {
      int sg = sgn(d);
      if (sg > 0) ++s.positive;
      else if (sg < 0) ++s.negative;
      else ++s.zero;
    }
    return s;
  }

  bool is_psd() const { return signature().negative == 0; }

  // A direction x with q(x) = diagonal[i]: column i of the transform.
  std::vector<Rat> direction(int i) const {
    std::vector<Rat> x(transform_.size());
    for (std::size_t r = 0; r < transform_.size(); ++r) x[r] = transform_[r][i];
    return x;
  }

  // Reconstructs sum_i d_i l_i(x)^2 for identity testing.
  HomogeneousPoly reconstruct() const {
    int n = static_cast<int>(transform_.size());
    HomogeneousPoly acc(n, 2);
    for (int i = 0; i < n; ++i) {
      if (sgn(diagonal_[i]) == 0) continue;
      HomogeneousPoly l = form(i);
      acc = acc + l * l * diagonal_[i];
    }
    return acc;
  }

 private:
  RatMatrix transform_;
  std::vector<Rat> diagonal_;
  mutable RatMatrix forms_;
};

// Lagrange congruence diagonalization over Q. Always succeeds; the zero
// form yields an all-zero diagonal with the identity transform.
inline QuadraticFormDiag lagrange_diagonalize(const HomogeneousPoly& q) {
  if (q.degree() != 2) throw error("lagrange_diagonalize needs a quadratic form");
  int n = q.nvars();
  RatMatrix g = gram_matrix(q);
  RatMatrix s = identity_matrix(n);  // accumulates column ops: S^T G S = D

  auto col_axpy = [&](RatMatrix& m, int dst, int src, const Rat& f) {
    for (int r = 0; r < n; ++r) m[r][dst] += f * m[r][src];
  };
  auto row_axpy = [&](RatMatrix& m, int dst, int src, const Rat& f) {
    for (int c = 0; c < n; ++c) m[dst][c] += f * m[src][c];
  };
  auto col_swap = [&](RatMatrix& m, int a, int b) {
    for (int r = 0; r < n; ++r) std::swap(m[r][a], m[r][b]);
  };

  for (int k = 0; k < n; ++k) {
    if (sgn(g[k][k]) == 0) {
      // try to swap in a nonzero diagonal entry
      int dj = -1;
      for (int j = k + 1; j < n; ++j)
        if (sgn(g[j][j]) != 0) {
          dj = j;
          break;
        }
      if (dj >= 0) {
        col_swap(g, k, dj);
        std::swap(g[k], g[dj]);
        col_swap(s, k, dj);
      } else {
        // all trailing diagonal entries vanish; find an off-diagonal pivot
        int oj = -1;
        for (int j = k + 1; j < n; ++j)
          if (sgn(g[k][j]) != 0) {
            oj = j;
            break;
          }
        if (oj < 0) continue;  // row k is zero in the trailing block
        // x_k <- x_k + x_j makes the (k,k) entry 2*g[k][oj]
        col_axpy(g, k, oj, Rat(1));
        row_axpy(g, k, oj, Rat(1));
        col_axpy(s, k, oj, Rat(1));
      }
    }
    if (sgn(g[k][k]) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (j == k || sgn(g[k][j]) == 0) continue;
      Rat f = -g[k][j] / g[k][k];
      col_axpy(g, j, k, f);
      row_axpy(g, j, k, f);
      col_axpy(s, j, k, f);
    }
  }
  std::vector<Rat> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = g[i][i];
  return QuadraticFormDiag(std::move(s), std::move(diag));
}

// Weighted sum of squares sum_i w_i g_i^2 with w_i >= 0.
class WeightedSOS {
 public:
  struct Term {
    Rat weight;
    HomogeneousPoly square_root;
  };

  WeightedSOS(int nvars, int half_degree) : nvars_(nvars), half_degree_(half_degree) {}

  void add(const Rat& w, HomogeneousPoly g) {
    if (sgn(w) < 0) throw error("weighted SOS weights must be nonnegative");
    if (sgn(w) == 0 || g.is_zero()) return;
    if (g.nvars() != nvars_ || g.degree() != half_degree_)
      throw error("weighted SOS term has the wrong shape");
    terms_.push_back({w, std::move(g)});
  }

  int nvars() const { return nvars_; }
  int half_degree() const { return half_degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  HomogeneousPoly expand() const {
    HomogeneousPoly acc(nvars_, 2 * half_degree_);
    for (const auto& t : terms_) acc = acc + t.square_root * t.square_root * t.weight;
    return acc;
  }

  // All weights rational squares? (Then the terms fold to unit weights.)
  bool weights_are_squares() const {
    for (const auto& t : terms_)
      if (!is_rational_square(t.weight)) return false;
    return true;
  }

 private:
  int nvars_, half_degree_;
  std::vector<Term> terms_;
};

struct IndefiniteWitness {
  std::vector<Rat> point;
  Rat value;
};

// Splits a PSD quadratic into weighted squares; an indefinite input
// produces an error carrying a direction where the form is negative.
inline WeightedSOS sos_split_nonneg_quadratic(const HomogeneousPoly& q,
                                              IndefiniteWitness* witness = nullptr) {
  if (q.degree() != 2) throw error("sos_split_nonneg_quadratic needs a quadratic form");
  WeightedSOS out(q.nvars(), 1);
  if (q.is_zero()) return out;
  QuadraticFormDiag d = lagrange_diagonalize(q);
  for (std::size_t i = 0; i < d.diagonal().size(); ++i) {
    if (sgn(d.diagonal()[i]) < 0) {
      if (witness) {
        witness->point = d.direction(static_cast<int>(i));
        witness->value = d.diagonal()[i];
      }
      throw error("quadratic form is not positive semidefinite");
    }
  }
  for (std::size_t i = 0; i < d.diagonal().size(); ++i) {
    if (sgn(d.diagonal()[i]) > 0) out.add(d.diagonal()[i], d.form(static_cast<int>(i)));
  }
  return out;
}

}  // namespace hypercert
