#pragma once

#include <cstdint>
#include <vector>

#include "zeckphi/errors.hpp"

namespace zeckphi {

// Parameters for the two-multiplier digit-sum function
//   f(n) = s_phi(p n) + s_phi(q n),
// a separation radius r, and a modulus m for the parity-witness search.
struct PqSpec {
  std::uint64_t p = 2;
  std::uint64_t q = 3;
  int r = 0;
  std::uint64_t m = 2;
};

// Throws ValidationError unless q > p >= 2, r >= 0, m >= 2.  The identity
// escape hatch admits p == q == 1 (f collapses to s_phi), used to sanity-check
// the machinery against the plain digit sum.
void validate_pq(const PqSpec& spec, bool allow_identity = false);

// s_phi(p n) + s_phi(q n).  Throws CapacityError when q n is out of range.
std::uint64_t f_value(std::uint64_t n, const PqSpec& spec);

// Smallest r >= 0 with phi^(r-3) > q, decided by exact sign evaluation.
// This radius is sufficient for both quasi-additivity identities.
int analytic_radius(std::uint64_t q);

struct PairViolation {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint64_t f_sum = 0;    // f(n1 + n2)
  std::uint64_t f_parts = 0;  // f(n1) + f(n2)
};

struct ShiftViolation {
  std::uint64_t n = 0;
  std::uint64_t f_n = 0;
  std::uint64_t f_shift = 0;  // f(S(n))
};

struct DominationViolation {
  std::uint64_t n = 0;
  int low_clear_q = 0;  // max l with v(q n, l) = 0
  int low_clear_p = 0;  // max l with v(p n, l) = 0
};

// Additivity over separated pairs: every way of cutting the expansion of an
// n < bound into a low and a high block whose index gap is at least 2r+2
// yields an r-separated pair (n1, n2); collect those with
// f(n1 + n2) != f(n1) + f(n2).  Violations come back in increasing order of
// n1 + n2 regardless of the worker count.
std::vector<PairViolation> check_separated_additivity(const PqSpec& spec,
                                                      std::uint64_t bound,
                                                      int threads = 0);

// Shift invariance: all n < bound whose digits clear below index r
// (vacuous for r < 2) but f(S(n)) != f(n).
std::vector<ShiftViolation> check_shift_compatibility(const PqSpec& spec,
                                                      std::uint64_t bound,
                                                      int threads = 0);

// Multiplying by the larger factor never clears more low digits: all
// n < bound with v(n, k) = 0 where the lowest digit index of q n exceeds the
// lowest digit index of p n.  Requires phi^(k-1) > 2q (exact test), else
// DomainError.
std::vector<DominationViolation> check_low_digit_domination(
    const PqSpec& spec, int k, std::uint64_t bound, int threads = 0);

struct RadiusReport {
  bool found = false;
  int r = -1;            // smallest clean radius, when found
  int analytic_r = 0;    // sufficient radius from the exact sign test
  std::uint64_t pairs_tested = 0;   // at the found radius
  std::uint64_t shifts_tested = 0;  // at the found radius
};

// Smallest r <= r_max passing both checks at the given bound; search failure
// is reported in the result, not thrown.
RadiusReport min_quasi_additive_radius(std::uint64_t p, std::uint64_t q,
                                       std::uint64_t bound, int r_max,
                                       bool allow_identity = false,
                                       int threads = 0);

enum class WitnessFilter {
  kUnconstrained,   // parity condition only
  kSeparated,       // digits clear below r, and no cut with gap >= 2r+2
  kSeparatedLowBlock  // additionally v(n, r+1) = F_r: lowest digit exactly at r
};

struct Witness {
  std::uint64_t n = 0;
  std::vector<int> indices;
  std::uint64_t f = 0;
  std::uint64_t f_mod_m = 0;
};

struct WitnessReport {
  bool found_zero = false;     // witness with f(n) = 0 mod m
  bool found_nonzero = false;  // witness with f(n) != 0 mod m
  Witness zero;
  Witness nonzero;
  std::uint64_t scanned = 0;
};

// Scan n = 1, 2, ... < horizon for the first n in the filter class with
// f(n) = 0 mod m and the first with f(n) != 0 mod m.  Failure to find either
// below the horizon is reported in the result, not thrown.
WitnessReport find_parity_witnesses(const PqSpec& spec, std::uint64_t horizon,
                                    WitnessFilter filter);

}  // namespace zeckphi
