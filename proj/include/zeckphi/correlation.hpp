#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zeckphi/errors.hpp"
#include "zeckphi/genfun.hpp"
#include "zeckphi/quasiadd.hpp"

namespace zeckphi {

enum class MultiplicativeKind { kMoebius, kLiouville, kCustom };

// A bounded multiplicative weight: the Möbius or Liouville function, or a
// completely multiplicative function given by a unimodular value per prime
// (primes missing from the map default to +1).
struct MultiplicativeSpec {
  MultiplicativeKind kind = MultiplicativeKind::kMoebius;
  std::map<std::uint64_t, std::complex<double>> prime_values;

  std::string name() const;
};

void validate_multiplicative(const MultiplicativeSpec& spec);

// mu(n) for 0 <= n < N (index 0 is a zero sentinel), segmented sieve with
// rem-division; segments are processed in parallel and written to disjoint
// slices, so the output never depends on the worker count.
std::vector<std::int8_t> moebius_sieve(std::uint64_t N,
                                       std::uint64_t segment_size = 1 << 20,
                                       int threads = 0);

// lambda(n) (+-1 by parity of the prime factor count), same engine.
std::vector<std::int8_t> liouville_sieve(std::uint64_t N,
                                         std::uint64_t segment_size = 1 << 20,
                                         int threads = 0);

// Serial reference implementations over a least-prime-factor table — a
// different algorithm kept for cross-checks and the benchmark.
std::vector<std::int8_t> moebius_reference_sieve(std::uint64_t N);
std::vector<std::int8_t> liouville_reference_sieve(std::uint64_t N);

// Completely multiplicative extension of the custom prime values.
std::vector<std::complex<double>> custom_values(const MultiplicativeSpec& spec,
                                                std::uint64_t N,
                                                std::uint64_t segment_size =
                                                    1 << 20,
                                                int threads = 0);

struct FitResult {
  double fitted_exponent = 0;  // least-squares slope of log|sum| on k log phi
  double eta_hat = 0;          // 1 - fitted_exponent
  double residual = 0;         // max absolute deviation from the fitted line
  int used_blocks = 0;
  std::vector<int> zero_block_ks;  // excluded from the regression
};

// Throws InsufficientDataError when fewer than 8 nonzero blocks remain.
FitResult fit_decay_exponent(
    const std::vector<std::pair<int, double>>& block_sums);
FitResult fit_decay_exponent(
    const std::vector<std::pair<int, std::int64_t>>& block_sums);

struct CorrelationReport {
  std::uint64_t N = 0;
  std::string spec_name;
  // (checkpoint, sum over n < checkpoint); exact integers for the integer
  // kinds, stored widened so one report type covers the custom kind too.
  std::vector<std::pair<std::uint64_t, std::complex<double>>> partial_sums;
  // (k, sum over the complete block F_{k-1} <= n < F_k).
  std::vector<std::pair<int, std::complex<double>>> block_sums;
  bool has_fit = false;
  FitResult fit;
};

// CSV rows (k_or_checkpoint, sum, abs_sum, normalized): checkpoint rows
// normalize by the checkpoint, block rows by the block size.
std::string report_csv(const CorrelationReport& report);
// JSON summary: N, spec, fitted_exponent, eta_hat, residual, plus the raw
// partial and block sums.
std::string report_json(const CorrelationReport& report);

// Sum of m(n) * (-1)^(s_phi(n)) for 1 <= n < N.  The sign comes from the
// morphic stream (amortized O(1) per step) and is spot-checked against the
// arithmetic route at `spot_checks` seeded random positions.
CorrelationReport sum_theorem1(const MultiplicativeSpec& m, std::uint64_t N,
                               const std::vector<std::uint64_t>& checkpoints,
                               int threads = 0, std::uint64_t seed = 1,
                               int spot_checks = 256);

// Sum of (-1)^(f(n)) for 1 <= n < N with f(n) = s_phi(pn) + s_phi(qn),
// chunk-parallel with deterministic merge.
CorrelationReport sum_pq(const PqSpec& spec, std::uint64_t N,
                         const std::vector<std::uint64_t>& checkpoints,
                         int threads = 0);

// Per-block sums of (-1)^(f(n + offset_value(L, k))) for k_lo <= k <= k_hi.
std::vector<std::pair<int, std::int64_t>> sum_with_offset(
    const PqSpec& spec, const OffsetSet& L, int k_lo, int k_hi,
    int threads = 0, bool relaxed_offsets = false);

}  // namespace zeckphi
