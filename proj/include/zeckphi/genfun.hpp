#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "zeckphi/errors.hpp"
#include "zeckphi/quasiadd.hpp"

namespace zeckphi {

// A finite ascending set of positive index offsets; the block sums below
// shift their argument by offset_value(L, k) = sum of F_{k+l} over l in L.
struct OffsetSet {
  std::vector<int> elems;
};

// Strict rules: l_1 <= 2r and l_j + 1 < l_{j+1} <= l_j + 2r + 1.  The
// relaxed form keeps only positivity, ascending order, and gaps >= 2;
// both upper bounds are dropped.
void validate_offsets(const OffsetSet& L, int r, bool relaxed = false);

// Sum of F_{k+l} over l in L.  Throws CapacityError out of table range.
std::uint64_t offset_value(const OffsetSet& L, int k);

// All n in the length-k block [F_{k-1}, F_k) admitting no r-separated split
// (equivalently: all gaps between consecutive digit indices are <= 2r+1).
std::vector<std::uint64_t> enumerate_indecomposable(int r, int k);

// The subset whose lowest digit sits exactly at index r, nothing below —
// that is, v(n, r+1) = F_r.  Throws DomainError for r < 2.
std::vector<std::uint64_t> enumerate_anchored(int r, int k);

// Integer polynomial in z, dense by exponent.
struct ZPoly {
  std::vector<std::int64_t> c;

  std::int64_t eval(int z) const;  // z in {-1, +1}
};

// x-truncated series whose x^k coefficient is a polynomial in z.
struct TruncatedSeries {
  int K = 0;
  std::vector<ZPoly> coeffs;  // index 0..K
};

inline constexpr int kMaxSeriesOrder = 32;

enum class SeriesKind {
  kAnchored,              // sum over anchored n of x^len z^f(n)
  kIndecomposable,        // sum over indecomposable n of x^len z^f(n)
  kAnchoredOffset,        // anchored n, exponent f(n + offset_value(L, len))
  kIndecomposableOffset,  // indecomposable n, same offset in the exponent
  kBlockDirect            // every n in the block, offset exponent
};

// Builds one of the series above, enumerating every block up to order K.
// Throws CapacityError for K > kMaxSeriesOrder, DomainError when an anchored
// kind is requested with r < 2.
TruncatedSeries build_series(SeriesKind kind, const PqSpec& spec,
                             const OffsetSet& L, int K, int threads = 0);

struct IdentityReport {
  std::int64_t max_abs_discrepancy = 0;
  int first_bad_k = -1;
  std::vector<std::int64_t> lhs;  // direct block sums, index 0..K
  std::vector<std::int64_t> rhs;  // rational-form expansion, index 0..K
};

// Checks, coefficient by coefficient at z = z_eval, that the direct block
// series equals
//   D_L(x) + x^(r+1) C(x) A_L(x) / (1 - x - x^(r+1) A(x)),
// where A/C are the anchored/indecomposable series and A_L/D_L their
// offset forms.  All arithmetic is exact in 64-bit integers.
IdentityReport verify_identity(const PqSpec& spec, const OffsetSet& L, int K,
                               int z_eval, int threads = 0);

// Bisection enclosure of the unique root in (1, phi) of
//   P(x) = x^(2r+2) - x^(2r+1) - x^(2r) + 1,
// with exact sign evaluation at dyadic rationals.
struct RootEnclosure {
  int r = 0;
  long double lo = 0;
  long double hi = 0;
  std::string lo_decimal;
  std::string hi_decimal;
  bool sign_change_certified = false;  // P(lo) < 0 < P(hi) verified exactly
};

RootEnclosure phi_r_root(int r, long double tol);

struct CountGrowthReport {
  int r = 0;
  int k_max = 0;
  // Per-length counts, index 0..k_max (zero below length 3).
  std::vector<std::uint64_t> indecomposable_counts;
  std::vector<std::uint64_t> anchored_counts;   // empty when r < 2
  std::vector<std::uint64_t> closed_form_counts;  // linear recurrence route
  std::vector<double> ratios;  // counts[k+1] / counts[k] where defined
  double growth_rate = 0;      // midpoint of the root enclosure
  double fitted_constant = 0;  // max of counts[k] / rate^k over k <= fit_at
  int fit_at = 30;
  bool matches_enumeration = true;  // brute force cross-check, k <= 20
  bool matches_closed_form = true;
  std::vector<int> bound_violations;  // k with counts[k] > C * rate^k
};

// Dynamic-programming counts per length, cross-checked against brute-force
// enumeration (k <= 20) and the closed-form recurrence
//   g_k = [k=3] + g_{k-1} + g_{k-2} - g_{k-2r-2}.
// Throws ValidationError for k_max > 60 or r < 0.
CountGrowthReport check_count_growth(int r, int k_max);

struct ZeroFreeReport {
  int K = 0;
  long double x0 = 0;                 // 1/phi
  long double x0_term = 0;            // x0^(r+1) A_K(x0, 1)
  long double x0_value = 0;           // x0 + x0_term
  long double x0_distance = 0;        // |x0_value - 1|
  std::vector<long double> term_by_order;  // x0 term truncated at 3..K
  bool increasing_in_order = false;
  long double min_grid_distance = 0;  // min over grid |x + x^(r+1)A(x,-1) - 1|
  long double max_alternating_abs = 0;  // max over grid |A(x, -1)|
  long double positive_at_x0 = 0;       // A_K(x0, +1)
  bool alternating_dominated = false;   // max |A(x,-1)| < A(x0, 1)
  long double tail_bound = 0;  // C (rate * rho_max)^(K+1) / (1 - rate rho_max)
};

// Numerical probe of the zero-free region for the anchored series evaluated
// at z = -1 on circles |x| = rho for each rho in `moduli` (all must lie in
// (0, 1/phi_r)).  Truncation error is reported, never absorbed.
ZeroFreeReport probe_zero_free(const PqSpec& spec, int K,
                               const std::vector<long double>& moduli,
                               int threads = 0);

}  // namespace zeckphi
