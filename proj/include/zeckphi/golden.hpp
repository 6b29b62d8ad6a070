#pragma once

#include <cstdint>

#include "zeckphi/errors.hpp"

namespace zeckphi {

// Exact element a + b*phi of Z[phi], phi = (1 + sqrt(5))/2.  All comparisons
// reduce to integer arithmetic, so interval tests at widths far below double
// precision stay exact.  Coefficients are kept within +/- 2^60 so that the
// sign test (2a + b)^2 vs 5 b^2 fits 128-bit intermediates; operations that
// would leave that range throw CapacityError.
struct GoldenNum {
  std::int64_t a = 0;
  std::int64_t b = 0;
};

inline constexpr std::int64_t kGoldenCoeffCap = std::int64_t{1} << 60;

GoldenNum golden_add(GoldenNum x, GoldenNum y);
GoldenNum golden_sub(GoldenNum x, GoldenNum y);
GoldenNum golden_neg(GoldenNum x);
// (a + b phi)(c + d phi) = (ac + bd) + (ad + bc + bd) phi, using phi^2 = phi + 1.
GoldenNum golden_mul(GoldenNum x, GoldenNum y);
GoldenNum golden_scale(std::int64_t s, GoldenNum x);

// Exact sign of a + b*phi: -1, 0, or +1.  Integer-only case analysis.
int golden_sign(GoldenNum x);

inline bool golden_eq(GoldenNum x, GoldenNum y) {
  return x.a == y.a && x.b == y.b;
}
inline bool golden_less(GoldenNum x, GoldenNum y) {
  return golden_sign(golden_sub(x, y)) < 0;
}

// Largest integer <= a + b*phi, computed exactly via an integer square root.
std::int64_t golden_floor(GoldenNum x);

// The representative of x modulo 1 lying in [-1/2, 1/2): returns x - m for
// the unique integer m (the nearest integer, ties rounding up).
GoldenNum signed_dist(GoldenNum x);

// phi^k = F_{k-1} + F_k * phi for k >= 0.
GoldenNum phi_pow(int k);

// (phi - 1)^k = phi^{-k} = (-1)^k (F_{k+1} - F_k * phi) for k >= 0.
GoldenNum inv_phi_pow(int k);

// Interval with exact endpoints; the detection windows are half-open [lo, hi).
struct GoldenInterval {
  GoldenNum lo;
  GoldenNum hi;
  bool lo_closed = true;
  bool hi_closed = false;
};

// True iff x lands in the interval after translation by some integer,
// i.e. x mod 1 lies in (interval mod 1).  Interval length must be <= 1.
bool contains_mod1(const GoldenInterval& interval, GoldenNum x);

// Detection window for the low digits: the set of points t with
// (-1)^k * u * phi as center,
//   [-phi^{-(k-1)}, phi^{-k})  when u < F_{k-1},
//   [-phi^{-(k+1)}, phi^{-k})  when F_{k-1} <= u < F_k.
// DomainError unless 2 <= k and 0 <= u < F_k.
GoldenInterval interval_Rk(int k, std::uint64_t u);

// Recovers the value of the digits of n below position k purely from the
// position of (-1)^k * n * phi modulo 1: returns the unique u in [0, F_k)
// whose window contains it.  Always equals v_below(n, k).
std::uint64_t detect_low_digits(std::uint64_t n, int k);

// Exact floor(n * phi) for n >= 0 (n within the encodable range).
std::int64_t floor_n_phi(std::int64_t n);

}  // namespace zeckphi
