#include "zeckphi/quasiadd.hpp"

#include <limits>

#include "zeckphi/golden.hpp"
#include "zeckphi/parallel.hpp"
#include "zeckphi/zeck.hpp"

namespace zeckphi {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t n) {
  if (a != 0 && n > std::numeric_limits<std::uint64_t>::max() / a) {
    throw CapacityError("multiplier product overflows");
  }
  return a * n;
}

// Lowest digit index of n > 0, i.e. the largest l with v(n, l) = 0.
int lowest_index(std::uint64_t n) { return zeck_encode(n).indices.back(); }

// Digits clear below index r; vacuous for r < 2 since digits start at 2.
bool low_digits_clear(std::uint64_t n, int r) {
  return r < 2 || v_below(n, r) == 0;
}

}  // namespace

void validate_pq(const PqSpec& spec, bool allow_identity) {
  if (spec.r < 0) throw ValidationError("separation radius must be >= 0");
  if (spec.m < 2) throw ValidationError("modulus must be >= 2");
  if (allow_identity && spec.p == 1 && spec.q == 1) return;
  if (spec.p < 2) throw ValidationError("p must be >= 2");
  if (spec.q <= spec.p) throw ValidationError("q must exceed p");
}

std::uint64_t f_value(std::uint64_t n, const PqSpec& spec) {
  return s_phi(checked_mul(spec.p, n)) + s_phi(checked_mul(spec.q, n));
}

int analytic_radius(std::uint64_t q) {
  if (q == 0) throw ValidationError("q must be positive");
  const GoldenNum target{static_cast<std::int64_t>(q), 0};
  for (int r = 0; r <= 200; ++r) {
    GoldenNum power = r >= 3 ? phi_pow(r - 3) : inv_phi_pow(3 - r);
    if (golden_sign(golden_sub(power, target)) > 0) return r;
  }
  throw CapacityError("radius search exceeded table range");
}

std::vector<PairViolation> check_separated_additivity(const PqSpec& spec,
                                                      std::uint64_t bound,
                                                      int threads) {
  validate_pq(spec, true);
  auto per_chunk = map_chunks<std::vector<PairViolation>>(
      std::uint64_t{1}, bound, threads,
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<PairViolation> found;
        for (std::uint64_t n = lo; n < hi; ++n) {
          ZeckRep rep = zeck_encode(n);
          const auto& idx = rep.indices;  // decreasing
          for (std::size_t cut = 1; cut < idx.size(); ++cut) {
            // High block idx[0..cut), low block idx[cut..).
            if (idx[cut - 1] - idx[cut] < 2 * spec.r + 2) continue;
            std::uint64_t high = 0, low = 0;
            for (std::size_t i = 0; i < idx.size(); ++i) {
              (i < cut ? high : low) += fib(idx[i]);
            }
            std::uint64_t whole = f_value(n, spec);
            std::uint64_t parts = f_value(low, spec) + f_value(high, spec);
            if (whole != parts) {
              found.push_back(PairViolation{low, high, whole, parts});
            }
          }
        }
        return found;
      });
  std::vector<PairViolation> out;
  for (auto& part : per_chunk) {
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<ShiftViolation> check_shift_compatibility(const PqSpec& spec,
                                                      std::uint64_t bound,
                                                      int threads) {
  validate_pq(spec, true);
  auto per_chunk = map_chunks<std::vector<ShiftViolation>>(
      std::uint64_t{1}, bound, threads,
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<ShiftViolation> found;
        for (std::uint64_t n = lo; n < hi; ++n) {
          if (!low_digits_clear(n, spec.r)) continue;
          std::uint64_t fn = f_value(n, spec);
          std::uint64_t fs = f_value(shift_S(n), spec);
          if (fn != fs) found.push_back(ShiftViolation{n, fn, fs});
        }
        return found;
      });
  std::vector<ShiftViolation> out;
  for (auto& part : per_chunk) {
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<DominationViolation> check_low_digit_domination(
    const PqSpec& spec, int k, std::uint64_t bound, int threads) {
  validate_pq(spec, true);
  if (k < 2) throw DomainError("index must be >= 2");
  // Hypothesis phi^(k-1) > 2q, decided exactly.
  GoldenNum margin = golden_sub(
      phi_pow(k - 1), GoldenNum{static_cast<std::int64_t>(2 * spec.q), 0});
  if (golden_sign(margin) <= 0) {
    throw DomainError("need phi^(k-1) > 2q for the low-digit bound");
  }
  auto per_chunk = map_chunks<std::vector<DominationViolation>>(
      std::uint64_t{1}, bound, threads,
      [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<DominationViolation> found;
        for (std::uint64_t n = lo; n < hi; ++n) {
          if (v_below(n, k) != 0) continue;
          int clear_q = lowest_index(checked_mul(spec.q, n));
          int clear_p = lowest_index(checked_mul(spec.p, n));
          if (clear_q > clear_p) {
            found.push_back(DominationViolation{n, clear_q, clear_p});
          }
        }
        return found;
      });
  std::vector<DominationViolation> out;
  for (auto& part : per_chunk) {
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

RadiusReport min_quasi_additive_radius(std::uint64_t p, std::uint64_t q,
                                       std::uint64_t bound, int r_max,
                                       bool allow_identity, int threads) {
  RadiusReport report;
  report.analytic_r = analytic_radius(q);
  for (int r = 0; r <= r_max; ++r) {
    PqSpec spec{p, q, r, 2};
    validate_pq(spec, allow_identity);
    if (!check_separated_additivity(spec, bound, threads).empty()) continue;
    if (!check_shift_compatibility(spec, bound, threads).empty()) continue;
    report.found = true;
    report.r = r;
    // Count the instances the clean radius was checked against.
    for (std::uint64_t n = 1; n < bound; ++n) {
      const auto& idx = zeck_encode(n).indices;
      for (std::size_t cut = 1; cut < idx.size(); ++cut) {
        if (idx[cut - 1] - idx[cut] >= 2 * r + 2) ++report.pairs_tested;
      }
      if (low_digits_clear(n, r)) ++report.shifts_tested;
    }
    break;
  }
  return report;
}

WitnessReport find_parity_witnesses(const PqSpec& spec, std::uint64_t horizon,
                                    WitnessFilter filter) {
  validate_pq(spec, true);
  if (filter == WitnessFilter::kSeparatedLowBlock && spec.r < 2) {
    throw ValidationError("low-block filter needs r >= 2");
  }
  WitnessReport report;
  for (std::uint64_t n = 1; n < horizon; ++n) {
    if (report.found_zero && report.found_nonzero) break;
    ++report.scanned;
    if (filter != WitnessFilter::kUnconstrained) {
      if (!low_digits_clear(n, spec.r)) continue;
      if (decompose_indecomposable(n, spec.r).size() != 1) continue;
      if (filter == WitnessFilter::kSeparatedLowBlock &&
          v_below(n, spec.r + 1) != fib(spec.r)) {
        continue;
      }
    }
    std::uint64_t f = f_value(n, spec);
    std::uint64_t residue = f % spec.m;
    Witness w{n, zeck_encode(n).indices, f, residue};
    if (residue == 0 && !report.found_zero) {
      report.found_zero = true;
      report.zero = w;
    } else if (residue != 0 && !report.found_nonzero) {
      report.found_nonzero = true;
      report.nonzero = w;
    }
  }
  return report;
}

}  // namespace zeckphi
