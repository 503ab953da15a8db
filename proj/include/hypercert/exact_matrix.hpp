#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "hypercert/prime_field.hpp"
#include "hypercert/rational.hpp"
#include "hypercert/rng.hpp"

namespace hypercert {

// Sparse matrix over Q with exact rank and nullspace. Entries are stored
// row-major; no explicit zeros.
class ExactMatrix {
 public:
  using SparseRow = std::map<int, Rat>;

  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(int r, int c, const Rat& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw error("matrix index out of range");
    if (sgn(v) == 0)
      data_[r].erase(c);
    else
      data_[r][c] = v;
  }
  void add(int r, int c, const Rat& v) {
    if (sgn(v) == 0) return;
    Rat& slot = data_[static_cast<std::size_t>(r)][c];
    slot += v;
    if (sgn(slot) == 0) data_[r].erase(c);
  }
  Rat get(int r, int c) const {
    auto it = data_[r].find(c);
    return it == data_[r].end() ? Rat(0) : it->second;
  }
  const SparseRow& row(int r) const { return data_[r]; }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  std::vector<Rat> apply(const std::vector<Rat>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw error("matrix-vector arity mismatch");
    std::vector<Rat> y(rows_, Rat(0));
    for (int r = 0; r < rows_; ++r)
      for (const auto& [c, v] : data_[r]) y[r] += v * x[c];
    return y;
  }

 private:
  int rows_, cols_;
  std::vector<SparseRow> data_;
  friend class SparseEliminator;
};

// Sparse fraction-free elimination with Markowitz pivoting, over Z after
// clearing denominators row by row. Computes rank; optionally keeps the
// reduced rows for nullspace extraction.
class SparseEliminator {
 public:
  struct Result {
    int rank = 0;
    // echelon rows (over Q, each with a distinct pivot column), when kept
    std::vector<std::map<int, Rat>> echelon;
    std::vector<int> pivot_cols;
  };

  static Result eliminate(const ExactMatrix& m, bool keep_echelon) {
    // integer rows: clear denominators per row
    std::vector<std::map<int, Int>> rows;
    rows.reserve(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
      const auto& src = m.row(r);
      if (src.empty()) continue;
      Int l(1);
      for (const auto& [c, v] : src)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
      std::map<int, Int> row;
      for (const auto& [c, v] : src) row[c] = Int(v.get_num() * (l / v.get_den()));
      rows.push_back(std::move(row));
    }

    Result res;
    // column occupancy counts for Markowitz-style pivot choice
    std::map<int, int> col_count;
    for (const auto& row : rows)
      for (const auto& [c, v] : row) ++col_count[c];

    std::vector<bool> done(rows.size(), false);
    for (;;) {
      // pick the unprocessed row/column pair minimizing (row_nnz-1)*(col_nnz-1)
      int best_r = -1, best_c = -1;
      long best_score = -1;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (done[r] || rows[r].empty()) continue;
        for (const auto& [c, v] : rows[r]) {
          long score = static_cast<long>(rows[r].size() - 1) * (col_count[c] - 1);
          if (best_score < 0 || score < best_score) {
            best_score = score;
            best_r = static_cast<int>(r);
            best_c = c;
            if (score == 0) break;
          }
        }
        if (best_score == 0) break;
      }
      if (best_r < 0) break;

      const std::map<int, Int> piv = rows[best_r];
      const Int& pv = piv.at(best_c);
      done[best_r] = true;
      ++res.rank;
      if (keep_echelon) {
        std::map<int, Rat> prow;
        for (const auto& [c, v] : piv) {
          Rat q(v, pv);
          q.canonicalize();
          prow[c] = q;
        }
        res.echelon.push_back(std::move(prow));
        res.pivot_cols.push_back(best_c);
      }
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (done[r] || rows[r].empty()) continue;
        auto it = rows[r].find(best_c);
        if (it == rows[r].end()) continue;
        Int f = it->second;
        // row <- pv*row - f*piv, then divide by content to tame growth
        std::map<int, Int> nr;
        for (auto& [c, v] : rows[r]) {
          if (c == best_c) continue;
          nr[c] = v * pv;
        }
        for (const auto& [c, v] : piv) {
          if (c == best_c) continue;
          Int& slot = nr[c];
          slot -= f * v;
          if (slot == 0) nr.erase(c);
        }
        for (const auto& [c, v] : nr)
          if (rows[r].find(c) == rows[r].end()) ++col_count[c];
        for (const auto& [c, v] : rows[r])
          if (nr.find(c) == nr.end() && c != best_c) --col_count[c];
        --col_count[best_c];
        if (!nr.empty()) {
          Int g(0);
          for (const auto& [c, v] : nr) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
          if (g > 1)
            for (auto& [c, v] : nr) v /= g;
        }
        rows[r] = std::move(nr);
      }
    }
    return res;
  }
};

enum class RankConfidence { certified, probabilistic };

struct RankResult {
  int rank = 0;
  RankConfidence confidence = RankConfidence::certified;
  std::vector<u64> primes_used;
  int nullity(int cols) const { return cols - rank; }
};

inline RankResult matrix_rank_exact(const ExactMatrix& m) {
  RankResult r;
  r.rank = SparseEliminator::eliminate(m, false).rank;
  r.confidence = RankConfidence::certified;
  return r;
}

inline int rank_mod_prime(const ExactMatrix& m, u64 p) {
  // sparse elimination over F_p
  std::vector<std::map<int, u64>> rows;
  for (int r = 0; r < m.rows(); ++r) {
    std::map<int, u64> row;
    for (const auto& [c, v] : m.row(r)) {
      u64 x = rat_mod_p(v, p);
      if (x) row[c] = x;
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  int rank = 0;
  std::vector<bool> done(rows.size(), false);
  for (;;) {
    int best_r = -1;
    std::size_t best_nnz = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (done[r] || rows[r].empty()) continue;
      if (best_r < 0 || rows[r].size() < best_nnz) {
        best_r = static_cast<int>(r);
        best_nnz = rows[r].size();
      }
    }
    if (best_r < 0) break;
    done[best_r] = true;
    ++rank;
    int pc = rows[best_r].begin()->first;
    u64 pinv = invmod_u64(rows[best_r].begin()->second, p);
    const auto piv = rows[best_r];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (done[r]) continue;
      auto it = rows[r].find(pc);
      if (it == rows[r].end()) continue;
      u64 f = mulmod_u64(it->second, pinv, p);
      for (const auto& [c, v] : piv) {
        u64 delta = mulmod_u64(f, v, p);
        auto jt = rows[r].find(c);
        u64 cur = jt == rows[r].end() ? 0 : jt->second;
        u64 nv = submod_u64(cur, delta, p);
        if (nv == 0) {
          if (jt != rows[r].end()) rows[r].erase(jt);
        } else {
          rows[r][c] = nv;
        }
      }
    }
  }
  return rank;
}

// Modular rank with agreement across the supplied primes.
inline RankResult matrix_rank_modular(const ExactMatrix& m, const std::vector<u64>& primes) {
  if (primes.empty()) throw error("modular rank needs at least one prime");
  RankResult r;
  r.confidence = RankConfidence::probabilistic;
  r.primes_used = primes;
  int rank = -1;
  for (u64 p : primes) {
    int rp = rank_mod_prime(m, p);
    if (rank < 0) rank = rp;
    else if (rank != rp) throw error("modular rank disagreement across primes");
    r.rank = rank;
  }
  return r;
}

// Two random primes near 2^61; on disagreement a third, then exact fallback.
inline RankResult matrix_rank_auto_modular(const ExactMatrix& m, u64 seed) {
  Rng rng(seed);
  u64 p1 = random_prime_near_2_61(rng);
  u64 p2 = random_prime_near_2_61(rng);
  while (p2 == p1) p2 = random_prime_near_2_61(rng);
  int r1 = rank_mod_prime(m, p1);
  int r2 = rank_mod_prime(m, p2);
  RankResult r;
  r.confidence = RankConfidence::probabilistic;
  r.primes_used = {p1, p2};
  if (r1 == r2) {
    r.rank = r1;
    return r;
  }
  u64 p3 = random_prime_near_2_61(rng);
  int r3 = rank_mod_prime(m, p3);
  r.primes_used.push_back(p3);
  if (r3 == r1 || r3 == r2) {
    r.rank = r3;
    return r;
  }
  return matrix_rank_exact(m);
}

// Exact nullspace basis from row-reduced echelon form.
inline std::vector<std::vector<Rat>> nullspace_basis(const ExactMatrix& m) {
  auto res = SparseEliminator::eliminate(m, true);
  // Back-substitute echelon rows into reduced form: eliminate pivot columns
  // from the other rows.
  int k = res.rank;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      auto it = res.echelon[j].find(res.pivot_cols[i]);
      if (it == res.echelon[j].end()) continue;
      Rat f = it->second;  // echelon[i] has pivot value 1
      for (const auto& [c, v] : res.echelon[i]) {
        Rat& slot = res.echelon[j][c];
        slot -= f * v;
        if (sgn(slot) == 0) res.echelon[j].erase(c);
      }
    }
  }
  std::vector<bool> is_pivot(m.cols(), false);
  std::vector<int> pivot_row(m.cols(), -1);
  for (int i = 0; i < k; ++i) {
    is_pivot[res.pivot_cols[i]] = true;
    pivot_row[res.pivot_cols[i]] = i;
  }
  std::vector<std::vector<Rat>> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(m.cols(), Rat(0));
    v[c] = 1;
    for (int i = 0; i < k; ++i) {
      auto it = res.echelon[i].find(c);
      if (it != res.echelon[i].end()) v[res.pivot_cols[i]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace hypercert
