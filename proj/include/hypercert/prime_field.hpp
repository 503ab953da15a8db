#pragma once

#include <cstdint>
#include <vector>

#include "hypercert/rational.hpp"
#include "hypercert/rng.hpp"

namespace hypercert {

inline u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>((u128(a) * b) % m); }

inline u64 addmod_u64(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // m < 2^63 so no overflow
  return s >= m ? s - m : s;
}

inline u64 submod_u64(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }

inline u64 powmod_u64(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

inline u64 invmod_u64(u64 a, u64 p) {  // p prime
  if (a % p == 0) throw error("invmod of zero");
  return powmod_u64(a % p, p - 2, p);
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod_u64(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Random prime in [2^60, 2^61). Used by the generic modular rank mode.
inline u64 random_prime_near_2_61(Rng& rng) {
  for (;;) {
    u64 cand = (rng.next_u64() >> 4) | (1ULL << 60) | 1ULL;
    if (is_prime_u64(cand)) return cand;
  }
}

// Random 31-bit prime. Used by the big evaluation-based eliminations where
// the tight inner loop wants single-word Barrett arithmetic.
inline u32 random_prime_31(Rng& rng) {
  for (;;) {
    u32 cand = static_cast<u32>(rng.next_below(1u << 30)) | (1u << 30) | 1u;
    if (is_prime_u64(cand)) return cand;
  }
}

inline u64 rat_mod_p(const Rat& r, u64 p) {
  Int num = r.get_num() % Int(p);
  if (num < 0) num += Int(p);
  Int den = r.get_den() % Int(p);
  u64 n = num.get_ui();
  u64 d = den.get_ui();
  if (d == 0) throw error("denominator divisible by modulus");
  return mulmod_u64(n, invmod_u64(d, p), p);
}

inline u64 int_mod_p(const Int& z, u64 p) {
  Int r = z % Int(p);
  if (r < 0) r += Int(p);
  return r.get_ui();
}

// Barrett reducer for 31-bit moduli: reduces x < 2^62 modulo p.
struct Barrett31 {
  u32 p;
  u64 im;  // floor(2^64 / p)

  explicit Barrett31(u32 prime) : p(prime), im(~u64(0) / prime) {}

  u32 reduce(u64 x) const {
    u64 q = static_cast<u64>((u128(x) * im) >> 64);
    u64 r = x - q * p;
    if (r >= p) r -= p;
    if (r >= p) r -= p;
    return static_cast<u32>(r);
  }
  u32 mul(u32 a, u32 b) const { return reduce(u64(a) * b); }
  u32 add(u32 a, u32 b) const {
    u32 s = a + b;
    return s >= p ? s - p : s;
  }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
  u32 pow(u32 a, u64 e) const {
    u32 r = 1 % p, base = a % p;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }
  u32 inv(u32 a) const {
    if (a % p == 0) throw error("Barrett31::inv of zero");
    return pow(a, p - 2);
  }
};

// Dense row-echelon rank over F_p for 31-bit p. Rows are moved in; the
// incremental interface keeps only the echelon set in memory.
class DenseModRank {
 public:
  DenseModRank(std::size_t cols, u32 prime) : cols_(cols), bar_(prime) {}

  // Reduces row against the current echelon set; absorbs it if independent.
  // Returns true when the rank increased.
  bool add_row(std::vector<u32> row) {
    if (row.size() != cols_) throw error("DenseModRank: bad row width");
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      u32 c = pivots_[k];
      if (row[c] == 0) continue;
      const std::vector<u32>& e = rows_[k];
      u64 f = bar_.mul(row[c], inv_pivots_[k]);  // row[c] / e[c]
      u32* __restrict r = row.data();
      const u32* __restrict s = e.data();
      const u32 p = bar_.p;
      // r[j] - f*s[j] mod p, via r[j] + f*(p - s[j]); e has zeros before c
      for (std::size_t j = c; j < cols_; ++j) {
        r[j] = bar_.reduce(u64(r[j]) + f * (p - s[j]));
      }
    }
    std::size_t lead = cols_;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (row[j]) {
        lead = j;
        break;
      }
    }
    if (lead == cols_) return false;
    pivots_.push_back(static_cast<u32>(lead));
    inv_pivots_.push_back(bar_.inv(row[lead]));
    rows_.push_back(std::move(row));
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  u32 prime() const { return bar_.p; }

 private:
  std::size_t cols_;
  Barrett31 bar_;
  std::vector<std::vector<u32>> rows_;
  std::vector<u32> pivots_;
  std::vector<u32> inv_pivots_;
};

}  // namespace hypercert
