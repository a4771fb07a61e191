#pragma once

// Overflow-checked unsigned 128-bit arithmetic used for group orders,
// subspace counts and point-count polynomials.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polyverify {

using u128 = unsigned __int128;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Raised whenever an enumeration, orbit or closure would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
  return r;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

inline u128 checked_pow(u128 base, unsigned exp) {
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

inline u128 parse_u128(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  u128 v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("not an unsigned integer: " + std::string(text));
    v = checked_add(checked_mul(v, 10), static_cast<u128>(c - '0'));
  }
  return v;
}

// floor(sqrt(v)), exact.
inline u128 isqrt(u128 v) {
  if (v < 2) return v;
  u128 lo = 1, hi = static_cast<u128>(1) << 64;
  while (lo + 1 < hi) {
    u128 mid = lo + (hi - lo) / 2;
    u128 sq;
    if (__builtin_mul_overflow(mid, mid, &sq) || sq > v)
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

}  // namespace polyverify
