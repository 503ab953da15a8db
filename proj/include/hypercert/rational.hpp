#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypercert {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the invariant we need.
using Rat = mpq_class;
using Int = mpz_class;

using u64 = std::uint64_t;
using u32 = std::uint32_t;
using u128 = unsigned __int128;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class malformed_witness_error : public error {
 public:
  using error::error;
};

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "a", "a/b", optional sign, arbitrary precision.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw error("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) throw error("bad rational literal: " + s);
  if (r.get_den() == 0) throw error("rational with zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline int sign(const Rat& r) { return sgn(r); }

// Exact square root of a rational if it is a perfect square.
inline std::optional<Rat> rat_sqrt_exact(const Rat& r) {
  if (sgn(r) < 0) return std::nullopt;
  const Int& num = r.get_num();
  const Int& den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  Int sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rat out(sn, sd);
  out.canonicalize();
  return out;
}

inline bool is_rational_square(const Rat& r) { return rat_sqrt_exact(r).has_value(); }

namespace detail {

// Lagrange decomposition of a nonnegative integer into four squares,
// by descent on the largest square. Fine for the sizes we see here.
inline std::vector<Int> four_square_int(const Int& n) {
  if (n == 0) return {0, 0, 0, 0};
  Int a;
  mpz_sqrt(a.get_mpz_t(), n.get_mpz_t());
  for (Int x = a; x >= 0; --x) {
    Int r1 = n - x * x;
    Int b;
    mpz_sqrt(b.get_mpz_t(), r1.get_mpz_t());
    for (Int y = b; y >= 0; --y) {
      Int r2 = r1 - y * y;
      Int c;
      mpz_sqrt(c.get_mpz_t(), r2.get_mpz_t());
      for (Int z = c; z >= 0; --z) {
        Int r3 = r2 - z * z;
        if (mpz_perfect_square_p(r3.get_mpz_t())) {
          Int w;
          mpz_sqrt(w.get_mpz_t(), r3.get_mpz_t());
          return {x, y, z, w};
        }
        // z loop is bounded: r2 - z^2 grows fast, bail out early
        if (c - z > 64) break;
      }
      if (b - y > 64) break;
    }
  }
  throw error("four-square decomposition failed (unexpected)");
}

}  // namespace detail

// w = sum of at most four rational squares, for w >= 0.
inline std::vector<Rat> rat_four_squares(const Rat& w) {
  if (sgn(w) < 0) throw error("four-square decomposition needs a nonnegative input");
  if (sgn(w) == 0) return {};
  // w = p/q = (p*q)/q^2
  Int pq = w.get_num() * w.get_den();
  std::vector<Int> sq = detail::four_square_int(pq);
  std::vector<Rat> out;
  for (const Int& s : sq) {
    if (s == 0) continue;
    Rat t(s, w.get_den());
    t.canonicalize();
    out.push_back(t);
  }
  return out;
}

}  // namespace hypercert
