#include "zeckphi/golden.hpp"

#include <cmath>
#include <string>

#include "zeckphi/zeck.hpp"

namespace zeckphi {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

void check_coeff(std::int64_t c) {
  if (c > kGoldenCoeffCap || c < -kGoldenCoeffCap) {
    throw CapacityError("Z[phi] coefficient exceeds +/-2^60");
  }
}

GoldenNum checked(std::int64_t a, std::int64_t b) {
  check_coeff(a);
  check_coeff(b);
  return GoldenNum{a, b};
}

// Floor of sqrt(x) for 128-bit x, exact.
u128 isqrt_u128(u128 x) {
  if (x == 0) return 0;
  // Seed from long double (64-bit mantissa), then fix up.
  long double approx = sqrtl(static_cast<long double>(x));
  u128 r = static_cast<u128>(approx);
  while (r > 0 && r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// Exact floor(b * phi) for any 64-bit b with |b| <= 2^60.
std::int64_t floor_b_phi(std::int64_t b) {
  if (b == 0) return 0;
  if (b > 0) {
    // floor(b phi) = floor((b + sqrt(5 b^2)) / 2); 5 b^2 is never a square
    // for b != 0, so the inner floor is safe.
    u128 s = isqrt_u128(static_cast<u128>(5) * static_cast<u128>(b) *
                        static_cast<u128>(b));
    return static_cast<std::int64_t>(
        (static_cast<u128>(b) + s) / 2);
  }
  // b*phi is irrational, so floor(-y) = -floor(y) - 1.
  return -floor_b_phi(-b) - 1;
}

}  // namespace

GoldenNum golden_add(GoldenNum x, GoldenNum y) {
  std::int64_t a = 0, b = 0;
  if (__builtin_add_overflow(x.a, y.a, &a) ||
      __builtin_add_overflow(x.b, y.b, &b)) {
    throw CapacityError("Z[phi] addition overflows");
  }
  return checked(a, b);
}

GoldenNum golden_sub(GoldenNum x, GoldenNum y) {
  return golden_add(x, golden_neg(y));
}

GoldenNum golden_neg(GoldenNum x) { return GoldenNum{-x.a, -x.b}; }

GoldenNum golden_mul(GoldenNum x, GoldenNum y) {
  const i128 a = static_cast<i128>(x.a) * y.a + static_cast<i128>(x.b) * y.b;
  const i128 b = static_cast<i128>(x.a) * y.b + static_cast<i128>(x.b) * y.a +
                 static_cast<i128>(x.b) * y.b;
  if (a > kGoldenCoeffCap || a < -static_cast<i128>(kGoldenCoeffCap) ||
      b > kGoldenCoeffCap || b < -static_cast<i128>(kGoldenCoeffCap)) {
    throw CapacityError("Z[phi] multiplication exceeds coefficient cap");
  }
  return GoldenNum{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b)};
}

GoldenNum golden_scale(std::int64_t s, GoldenNum x) {
  return golden_mul(GoldenNum{s, 0}, x);
}

int golden_sign(GoldenNum x) {
  // a + b phi = (A + B sqrt(5)) / 2 with A = 2a + b, B = b.
  const i128 A = 2 * static_cast<i128>(x.a) + x.b;
  const i128 B = x.b;
  if (A == 0 && B == 0) return 0;
  if (A >= 0 && B >= 0) return +1;
  if (A <= 0 && B <= 0) return -1;
  // Signs differ: compare A^2 against 5 B^2 (equality impossible: sqrt(5)
  // is irrational and B != 0 here).
  const i128 lhs = A * A;
  const i128 rhs = 5 * B * B;
  if (A > 0) return lhs > rhs ? +1 : -1;  // A > 0 > B
  return lhs > rhs ? -1 : +1;             // B > 0 > A
}

std::int64_t golden_floor(GoldenNum x) { return x.a + floor_b_phi(x.b); }

GoldenNum signed_dist(GoldenNum x) {
  std::int64_t m = golden_floor(x);
  GoldenNum d = golden_sub(x, GoldenNum{m, 0});  // in [0, 1)
  // Shift down when d >= 1/2, i.e. 2d - 1 >= 0.
  GoldenNum two_d_minus_1 = golden_sub(golden_scale(2, d), GoldenNum{1, 0});
  if (golden_sign(two_d_minus_1) >= 0) {
    d = golden_sub(d, GoldenNum{1, 0});
  }
  return d;
}

GoldenNum phi_pow(int k) {
  if (k < 0) throw DomainError("phi_pow needs k >= 0");
  if (k == 0) return GoldenNum{1, 0};
  return GoldenNum{static_cast<std::int64_t>(fib(k - 1)),
                   static_cast<std::int64_t>(fib(k))};
}

GoldenNum inv_phi_pow(int k) {
  if (k < 0) throw DomainError("inv_phi_pow needs k >= 0");
  const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
  return GoldenNum{sign * static_cast<std::int64_t>(fib(k + 1)),
                   -sign * static_cast<std::int64_t>(fib(k))};
}

bool contains_mod1(const GoldenInterval& interval, GoldenNum x) {
  // Translate x by an integer so that it lands in [lo, lo + 1), then compare
  // the offset from lo against the interval length.
  GoldenNum y = golden_sub(x, interval.lo);
  std::int64_t m = golden_floor(y);
  GoldenNum frac = golden_sub(y, GoldenNum{m, 0});          // in [0, 1)
  GoldenNum len = golden_sub(interval.hi, interval.lo);
  if (golden_sign(frac) == 0) return interval.lo_closed;
  const int cmp = golden_sign(golden_sub(frac, len));
  if (cmp < 0) return true;
  if (cmp == 0) return interval.hi_closed;
  return false;
}

GoldenInterval interval_Rk(int k, std::uint64_t u) {
  if (k < 2) throw DomainError("detection window needs k >= 2");
  if (u >= fib(k)) {
    throw DomainError("digit value " + std::to_string(u) +
                      " out of range [0, F_" + std::to_string(k) + ")");
  }
  const std::int64_t su =
      (k % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(u);
  const GoldenNum center{0, su};
  const GoldenNum lo_width =
      (u < fib(k - 1)) ? inv_phi_pow(k - 1) : inv_phi_pow(k + 1);
  return GoldenInterval{golden_sub(center, lo_width),
                        golden_add(center, inv_phi_pow(k)),
                        /*lo_closed=*/true, /*hi_closed=*/false};
}

std::uint64_t detect_low_digits(std::uint64_t n, int k) {
  if (k < 2) throw DomainError("detection needs k >= 2");
  if (n > static_cast<std::uint64_t>(kGoldenCoeffCap)) {
    throw CapacityError("value too large for exact detection");
  }
  const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
  // Membership of (-1)^k n phi in the window centered at (-1)^k u phi is
  // membership of (-1)^k (n - u) phi in the window centered at 0, which
  // saves rebuilding endpoints per candidate.
  const GoldenInterval near{golden_neg(inv_phi_pow(k - 1)), inv_phi_pow(k),
                            true, false};
  const GoldenInterval far{golden_neg(inv_phi_pow(k + 1)), inv_phi_pow(k),
                           true, false};
  const std::uint64_t fk = fib(k);
  const std::uint64_t fk1 = fib(k - 1);
  for (std::uint64_t u = 0; u < fk; ++u) {
    const std::int64_t diff =
        sign * (static_cast<std::int64_t>(n) - static_cast<std::int64_t>(u));
    const GoldenNum x{0, diff};
    if (contains_mod1(u < fk1 ? near : far, x)) return u;
  }
  // Unreachable: the windows tile the circle, so some u always matches.
  throw DomainError("no detection window matched; broken invariant");
}

std::int64_t floor_n_phi(std::int64_t n) {
  if (n < 0) throw DomainError("floor_n_phi needs n >= 0");
  check_coeff(n);
  return floor_b_phi(n);
}

}  // namespace zeckphi
