#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hypercert/homogeneous.hpp"
#include "hypercert/rational.hpp"

namespace hypercert {

struct DegreeProfileW {
  int d = 0, k = 0;  // (d-1)*k = y, d >= 2
  bool operator==(const DegreeProfileW&) const = default;
  std::string str() const { return "(d=" + std::to_string(d) + ",k=" + std::to_string(k) + ")"; }
};

struct DegreeProfileB {
  int d = 0, k = 0, mu = 0;
  bool operator==(const DegreeProfileB&) const = default;
  std::string str() const {
    return "(d=" + std::to_string(d) + ",k=" + std::to_string(k) +
           ",mu=" + std::to_string(mu) + ")";
  }
};

// Omega_y^W = {(d,k) : (d-1)k = y}, enumerated from the divisors of y.
inline std::vector<DegreeProfileW> omega_W(int y) {
  if (y < 1) throw error("omega_W needs y >= 1");
  std::vector<DegreeProfileW> out;
  for (int k = 1; k <= y; ++k) {
    if (y % k == 0) out.push_back({y / k + 1, k});
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.d < b.d; });
  return out;
}

// Omega-tilde drops d = 2 (those hyperwrons are sums of squares).
inline std::vector<DegreeProfileW> omega_W_tilde(int y) {
  std::vector<DegreeProfileW> out;
  for (const auto& p : omega_W(y))
    if (p.d != 2) out.push_back(p);
  return out;
}

// Omega-tilde_y^B: mu >= 3 forces the branch mu <= d <= 2mu-3, k(mu-1) = y.
inline std::vector<DegreeProfileB> omega_B_tilde(int y) {
  if (y < 1) throw error("omega_B_tilde needs y >= 1");
  std::vector<DegreeProfileB> out;
  for (int mu = 3; mu - 1 <= y; ++mu) {
    if (y % (mu - 1) != 0) continue;
    int k = y / (mu - 1);
    for (int d = mu; d <= 2 * mu - 3; ++d) out.push_back({d, k, mu});
  }
  return out;
}

struct OmegaB {
  std::vector<DegreeProfileB> profiles;
  bool truncated = false;  // the mu=2 branch is infinite in d
};

// Full Omega_y^B; the mu=2 branch {(d, y, 2) : d >= 2} is truncated at d_max.
inline OmegaB omega_B(int y, int d_max) {
  if (y < 1) throw error("omega_B needs y >= 1");
  if (d_max < 2) throw error("omega_B needs d_max >= 2 (the mu=2 branch is infinite)");
  OmegaB out;
  for (int d = 2; d <= d_max; ++d) out.profiles.push_back({d, y, 2});
  out.truncated = true;
  for (const auto& p : omega_B_tilde(y)) out.profiles.push_back(p);
  return out;
}

template <class Profile>
struct GateRow {
  Profile profile;
  Int rhs;
};

template <class Profile>
struct GateReport {
  int m = 0, y = 0;
  bool applicable = false;  // the dimension argument needs m>2, 2y>2, (m,2y) != (3,4)
  bool vacuous = false;     // empty profile set: the max is void, verdict trivially true
  Int lhs;                  // dim P_{m,2y} = C(2y+m-1, 2y)
  std::vector<GateRow<Profile>> rows;
  Int max_rhs;
  int argmax = -1;
  bool verdict = false;  // lhs > max rhs: a certificate-free nonnegative form exists
  Int margin;            // lhs - max rhs

  void finalize() {
    max_rhs = 0;
    argmax = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (argmax < 0 || rows[i].rhs > max_rhs) {
        max_rhs = rows[i].rhs;
        argmax = static_cast<int>(i);
      }
    }
    vacuous = rows.empty();
    margin = lhs - max_rhs;
    verdict = applicable && (lhs > max_rhs);
  }
};

using WronskianGateReport = GateReport<DegreeProfileW>;
using BezoutianGateReport = GateReport<DegreeProfileB>;

inline bool gate_hypotheses_hold(int m, int y) {
  return m > 2 && 2 * y > 2 && !(m == 3 && y == 2);
}

// Row value 2*C(m+(d-1)k-1, (d-1)k) + C(m+dk-1, dk) + C(m+(d-2)k-1, (d-2)k).
inline Int wronskian_gate_rhs(int m, const DegreeProfileW& p) {
  auto dim = [&](int deg) { return dim_forms(m, deg); };
  return 2 * dim((p.d - 1) * p.k) + dim(p.d * p.k) + dim((p.d - 2) * p.k);
}

inline WronskianGateReport wronskian_gate(int m, int y) {
  WronskianGateReport rep;
  rep.m = m;
  rep.y = y;
  rep.applicable = gate_hypotheses_hold(m, y);
  rep.lhs = dim_forms(m, 2 * y);
  for (const auto& p : omega_W_tilde(y)) rep.rows.push_back({p, wronskian_gate_rhs(m, p)});
  rep.finalize();
  return rep;
}

// Row value sum_{i=0}^{mu-1} + sum_{i=0}^{d} + sum_{i=0}^{d-1} of
// C(m+ik-1, m-1), the dimensions of the three graded tuple spaces.
inline Int bezoutian_gate_rhs(int m, const DegreeProfileB& p) {
  auto tsum = [&](int upto) {
    Int acc(0);
    for (int i = 0; i <= upto; ++i) acc += dim_forms(m, i * p.k);
    return acc;
  };
  return tsum(p.mu - 1) + tsum(p.d) + tsum(p.d - 1);
}

inline BezoutianGateReport bezoutian_gate(int m, int y) {
  BezoutianGateReport rep;
  rep.m = m;
  rep.y = y;
  rep.applicable = gate_hypotheses_hold(m, y);
  rep.lhs = dim_forms(m, 2 * y);
  for (const auto& p : omega_B_tilde(y)) rep.rows.push_back({p, bezoutian_gate_rhs(m, p)});
  rep.finalize();
  return rep;
}

// Closed forms from the m=4 and m=5 specializations; they must equal
// lhs - rhs(profile) of the Wronskian gate with dk = y+k, (d-2)k = y-k.
inline Rat closed_form_g(int m, const Rat& k, const Rat& y) {
  if (m == 4) {
    // 2y^3/3 - k^2 y - 11y/3 - 2k^2 - 3
    return Rat(2) * y * y * y / 3 - k * k * y - Rat(11) * y / 3 - Rat(2) * k * k - 3;
  }
  if (m == 5) {
    // y^4/2 + 5y^3/3 - k^2 y^2/2 - 5k^2 y/2 - 25y/6 - k^4/12 - 35k^2/12 - 3
    return y * y * y * y / 2 + Rat(5) * y * y * y / 3 - k * k * y * y / 2 -
           Rat(5) * k * k * y / 2 - Rat(25) * y / 6 - k * k * k * k / 12 -
           Rat(35) * k * k / 12 - 3;
  }
  throw error("closed_form_g is only stated for m = 4 or m = 5");
}

// lhs - rhs as a rational, for the closed-form cross-check; valid for any
// integer 1 <= k <= y (the profile need not have integral d).
inline Rat gate_margin_for_k(int m, int k, int y) {
  Int lhs = dim_forms(m, 2 * y);
  Int rhs = 2 * dim_forms(m, y) + dim_forms(m, y + k) + dim_forms(m, y - k);
  return Rat(lhs - rhs);
}

// F(l, a) = C(l+a, l); checks both inequalities of the binomial ratio
// lemma by exact rational arithmetic.
inline bool binom_ratio_lemma_check(int lp, int l, int alpha, int beta) {
  if (!(1 <= lp && lp < l) || !(0 <= alpha && alpha < beta))
    throw error("binom_ratio_lemma_check needs 1 <= l' < l and 0 <= alpha < beta");
  auto F = [](int a, int b) {
    return Rat(binomial(static_cast<unsigned long>(a + b), static_cast<unsigned long>(a)));
  };
  bool first = F(lp, alpha) / F(lp, beta) < Rat(1);
  bool second = F(lp, alpha) / F(l, alpha) > F(lp, beta) / F(l, beta);
  return first && second;
}

// Theorem regions: the settled (m, y) pairs, and the hyperzout bound.
inline bool theorem_1_1_region(int m, int y) {
  if (m < 1 || y < 1) throw error("region test needs positive integers");
  return (m == 4 && y >= 4) || (m == 5 && y >= 3) || (m >= 6 && y >= 2);
}

inline Int theorem_1_5_bound(int y) {
  Int yy(y);
  return 10 * yy * yy - 2 * yy + 1;
}

}  // namespace hypercert
