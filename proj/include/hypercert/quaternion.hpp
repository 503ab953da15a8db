#pragma once

#include <array>
#include <utility>
#include <vector>

#include "hypercert/rational.hpp"
#include "hypercert/rng.hpp"

namespace hypercert {

// Quaternion a + bi + cj + dk over any commutative ring R (rationals or
// polynomial rings; the multiplication table only needs ring arithmetic).
template <class R>
struct Quaternion {
  R a, b, c, d;

  Quaternion(R a_, R b_, R c_, R d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  Quaternion conj() const { return Quaternion(a, -b, -c, -d); }

  Quaternion operator+(const Quaternion& o) const {
    return Quaternion(a + o.a, b + o.b, c + o.c, d + o.d);
  }
  Quaternion operator-(const Quaternion& o) const {
    return Quaternion(a - o.a, b - o.b, c - o.c, d - o.d);
  }
  Quaternion operator-() const { return Quaternion(-a, -b, -c, -d); }

  Quaternion operator*(const Quaternion& o) const {
    return Quaternion(a * o.a - b * o.b - c * o.c - d * o.d,
                      a * o.b + b * o.a + c * o.d - d * o.c,
                      a * o.c - b * o.d + c * o.a + d * o.b,
                      a * o.d + b * o.c - c * o.b + d * o.a);
  }

  R norm_sq() const { return a * a + b * b + c * c + d * d; }

  bool operator==(const Quaternion& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
};

using RatQuat = Quaternion<Rat>;

inline RatQuat quat(long a, long b = 0, long c = 0, long d = 0) {
  return RatQuat(Rat(a), Rat(b), Rat(c), Rat(d));
}
inline RatQuat quat_zero() { return quat(0); }
inline RatQuat quat_one() { return quat(1); }

inline bool is_real(const RatQuat& q) {
  return sgn(q.b) == 0 && sgn(q.c) == 0 && sgn(q.d) == 0;
}

template <class R>
struct QuatMatrix2 {
  std::array<std::array<Quaternion<R>, 2>, 2> e;

  QuatMatrix2(Quaternion<R> e11, Quaternion<R> e12, Quaternion<R> e21, Quaternion<R> e22)
      : e{{{std::move(e11), std::move(e12)}, {std::move(e21), std::move(e22)}}} {}

  const Quaternion<R>& operator()(int i, int j) const { return e[i][j]; }

  QuatMatrix2 operator*(const QuatMatrix2& o) const {
    return QuatMatrix2(e[0][0] * o.e[0][0] + e[0][1] * o.e[1][0],
                       e[0][0] * o.e[0][1] + e[0][1] * o.e[1][1],
                       e[1][0] * o.e[0][0] + e[1][1] * o.e[1][0],
                       e[1][0] * o.e[0][1] + e[1][1] * o.e[1][1]);
  }

  QuatMatrix2 conj_transpose() const {
    return QuatMatrix2(e[0][0].conj(), e[1][0].conj(), e[0][1].conj(), e[1][1].conj());
  }

  bool operator==(const QuatMatrix2& o) const {
    return e[0][0] == o.e[0][0] && e[0][1] == o.e[0][1] && e[1][0] == o.e[1][0] &&
           e[1][1] == o.e[1][1];
  }
};

using RatQuatMatrix2 = QuatMatrix2<Rat>;

inline RatQuatMatrix2 quat_identity2() {
  return RatQuatMatrix2(quat_one(), quat_zero(), quat_zero(), quat_one());
}

inline bool is_hermitian(const RatQuatMatrix2& z) {
  return is_real(z(0, 0)) && is_real(z(1, 1)) && z(1, 0) == z(0, 1).conj();
}

inline bool is_unitary(const RatQuatMatrix2& u) {
  return u * u.conj_transpose() == quat_identity2() &&
         u.conj_transpose() * u == quat_identity2();
}

// Moore determinant of a Hermitian 2x2 quaternionic matrix:
// Z11 Z22 - |Z12|^2, a real scalar.
inline Rat moore_det(const RatQuatMatrix2& z) {
  if (!is_hermitian(z)) throw error("Moore determinant needs a Hermitian matrix");
  return z(0, 0).a * z(1, 1).a - z(0, 1).norm_sq();
}

// ---------------------------------------------------------------------------
// Exact rational Sp(2) samples: unit quaternions with Pythagorean
// quadruple components, rational rotation blocks, the swap, and products.
// ---------------------------------------------------------------------------

inline const std::vector<RatQuat>& rational_unit_quaternions() {
  static const std::vector<RatQuat> units = [] {
    std::vector<RatQuat> out;
    auto push = [&](long a, long b, long c, long d, long n) {
      out.push_back(RatQuat(Rat(a, n), Rat(b, n), Rat(c, n), Rat(d, n)));
    };
    push(3, 4, 0, 0, 5);
    push(0, 3, 4, 0, 5);
    push(0, 0, 3, 4, 5);
    push(1, 1, 1, 1, 2);
    push(1, 2, 2, 0, 3);
    push(2, 0, 2, 1, 3);
    push(1, 2, 2, 4, 5);
    push(2, 3, 6, 0, 7);
    push(1, 0, 2, 2, 3);
    return out;
  }();
  return units;
}

// Seeded product of exact unitary generators.
inline RatQuatMatrix2 sample_sp2(Rng& rng, int factors = 4) {
  RatQuatMatrix2 u = quat_identity2();
  const auto& units = rational_unit_quaternions();
  for (int t = 0; t < factors; ++t) {
    switch (rng.next_below(4)) {
      case 0: {
        RatQuat q = units[rng.next_below(units.size())];
        u = u * RatQuatMatrix2(q, quat_zero(), quat_zero(), quat_one());
        break;
      }
      case 1: {
        RatQuat q = units[rng.next_below(units.size())];
        u = u * RatQuatMatrix2(quat_one(), quat_zero(), quat_zero(), q);
        break;
      }
      case 2: {  // rational rotation block (c s; -s c), c^2 + s^2 = 1
        Rat c(3, 5), s(4, 5);
        if (rng.next_below(2)) {
          c = Rat(5, 13);
          s = Rat(12, 13);
        }
        u = u * RatQuatMatrix2(RatQuat(c, Rat(0), Rat(0), Rat(0)),
                               RatQuat(s, Rat(0), Rat(0), Rat(0)),
                               RatQuat(-s, Rat(0), Rat(0), Rat(0)),
                               RatQuat(c, Rat(0), Rat(0), Rat(0)));
        break;
      }
      default:  // swap
        u = u * RatQuatMatrix2(quat_zero(), quat_one(), quat_one(), quat_zero());
        break;
    }
  }
  if (!is_unitary(u)) throw error("sampled Sp(2) element failed the exact unitarity check");
  return u;
}

inline RatQuatMatrix2 random_quat_matrix(Rng& rng, long max_num = 6, long max_den = 2) {
  auto q = [&] {
    return RatQuat(rng.next_rat(max_num, max_den), rng.next_rat(max_num, max_den),
                   rng.next_rat(max_num, max_den), rng.next_rat(max_num, max_den));
  };
  return RatQuatMatrix2(q(), q(), q(), q());
}

}  // namespace hypercert
