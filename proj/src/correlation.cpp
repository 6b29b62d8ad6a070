#include "zeckphi/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "json.hpp"
#include "zeckphi/morphic.hpp"
#include "zeckphi/parallel.hpp"
#include "zeckphi/zeck.hpp"

namespace zeckphi {
namespace {

constexpr std::uint64_t kSieveCap = 1'000'000'000;     // segmented engines
constexpr std::uint64_t kReferenceCap = 100'000'000;   // serial LPF table

std::uint64_t sqrt_floor(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

void check_sieve_args(std::uint64_t N, std::uint64_t segment_size) {
  if (N > kSieveCap)
    throw ValidationError("sieve bound " + std::to_string(N) +
                          " exceeds the 1e9 cap");
  if (segment_size == 0)
    throw ValidationError("segment size must be positive");
}

// Shared segmented engine.  Each segment keeps the undivided remainder of n
// and a running sign; crossing off a prime flips the sign per division (or
// zeroes it on a square factor in square-free mode), and a remainder > 1
// after all primes up to sqrt(N) is one more prime factor.
std::vector<std::int8_t> segmented_sign_sieve(std::uint64_t N,
                                              std::uint64_t segment_size,
                                              int threads, bool square_free) {
  check_sieve_args(N, segment_size);
  std::vector<std::int8_t> out(N, 1);
  if (N == 0) return out;
  out[0] = 0;
  if (N <= 2) return out;
  const auto primes = primes_up_to(sqrt_floor(N - 1));
  const auto nseg =
      static_cast<std::int64_t>((N + segment_size - 1) / segment_size);
  const int nt = resolve_threads(threads);
  (void)nt;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (std::int64_t s = 0; s < nseg; ++s) {
    const std::uint64_t lo = static_cast<std::uint64_t>(s) * segment_size;
    const std::uint64_t hi = std::min<std::uint64_t>(N, lo + segment_size);
    std::vector<std::uint64_t> rem(hi - lo);
    for (std::uint64_t n = lo; n < hi; ++n) rem[n - lo] = n;
    for (std::uint64_t p : primes) {
      std::uint64_t start = ((lo + p - 1) / p) * p;
      if (start < p) start = p;  // never treat n = 0 as a multiple
      for (std::uint64_t j = start; j < hi; j += p) {
        auto& r = rem[j - lo];
        auto& sign = out[j];
        if (square_free) {
          r /= p;
          sign = static_cast<std::int8_t>(-sign);
          if (r % p == 0) {
            sign = 0;  // sticky: further flips keep it zero
            do r /= p; while (r % p == 0);
          }
        } else {
          do {
            r /= p;
            sign = static_cast<std::int8_t>(-sign);
          } while (r % p == 0);
        }
      }
    }
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n)
      if (rem[n - lo] > 1) out[n] = static_cast<std::int8_t>(-out[n]);
  }
  return out;
}

// Least prime factor for 0 <= n < N by a linear sieve; the serial baseline.
std::vector<std::uint32_t> lpf_table(std::uint64_t N) {
  if (N > kReferenceCap)
    throw ValidationError("reference sieve bound " + std::to_string(N) +
                          " exceeds the 1e8 cap");
  std::vector<std::uint32_t> lpf(N, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i < N; ++i) {
    if (lpf[i] == 0) {
      lpf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t p : primes) {
      if (p > lpf[i] || i * p >= N) break;
      lpf[i * p] = p;
    }
  }
  return lpf;
}

std::complex<double> prime_value(const MultiplicativeSpec& spec,
                                 std::uint64_t p) {
  const auto it = spec.prime_values.find(p);
  return it == spec.prime_values.end() ? std::complex<double>(1.0, 0.0)
                                       : it->second;
}

void check_checkpoints(const std::vector<std::uint64_t>& checkpoints,
                       std::uint64_t N) {
  std::uint64_t prev = 0;
  for (std::uint64_t cp : checkpoints) {
    if (cp < 1 || cp > N)
      throw ValidationError("checkpoint " + std::to_string(cp) +
                            " outside [1, N]");
    if (cp <= prev)
      throw ValidationError("checkpoints must be strictly increasing");
    prev = cp;
  }
}

// Smallest block index k >= 3 with n < F_k (so F_{k-1} <= n < F_k); blocks
// above the Fibonacci table are unreachable and reported as table end + 1.
int block_index(std::uint64_t n) {
  int k = 3;
  while (k <= FibTable::kMax64 && n >= fib(k)) ++k;
  return k;
}

std::uint64_t block_boundary(int k) {
  return k <= FibTable::kMax64 ? fib(k) : UINT64_MAX;
}

double fib_block_size(int k) {
  return static_cast<double>(fib(k - 2));
}

std::string format_real(double x) {
  if (std::abs(x) < 9.007199254740992e15 && x == std::floor(x)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f", x);
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_value(std::complex<double> v) {
  if (v.imag() == 0.0) return format_real(v.real());
  return format_real(v.real()) + (v.imag() < 0 ? "-" : "+") +
         format_real(std::abs(v.imag())) + "i";
}

void fit_or_skip(CorrelationReport& report) {
  std::vector<std::pair<int, double>> magnitudes;
  int nonzero = 0;
  for (const auto& [k, sum] : report.block_sums) {
    magnitudes.emplace_back(k, std::abs(sum));
    if (std::abs(sum) != 0.0) ++nonzero;
  }
  if (nonzero >= 8) {
    report.fit = fit_decay_exponent(magnitudes);
    report.has_fit = true;
  }
}

}  // namespace

std::string MultiplicativeSpec::name() const {
  switch (kind) {
    case MultiplicativeKind::kMoebius: return "moebius";
    case MultiplicativeKind::kLiouville: return "liouville";
    case MultiplicativeKind::kCustom: return "custom";
  }
  return "unknown";
}

void validate_multiplicative(const MultiplicativeSpec& spec) {
  if (spec.kind != MultiplicativeKind::kCustom && !spec.prime_values.empty())
    throw ValidationError("prime values are only meaningful for the custom "
                          "kind");
  for (const auto& [p, v] : spec.prime_values) {
    if (!is_prime_u64(p))
      throw ValidationError("custom key " + std::to_string(p) +
                            " is not prime");
    if (std::abs(std::abs(v) - 1.0) > 1e-9)
      throw ValidationError("custom value at p = " + std::to_string(p) +
                            " is not unimodular");
  }
}

std::vector<std::int8_t> moebius_sieve(std::uint64_t N,
                                       std::uint64_t segment_size,
                                       int threads) {
  return segmented_sign_sieve(N, segment_size, threads, /*square_free=*/true);
}

std::vector<std::int8_t> liouville_sieve(std::uint64_t N,
                                         std::uint64_t segment_size,
                                         int threads) {
  return segmented_sign_sieve(N, segment_size, threads, /*square_free=*/false);
}

std::vector<std::int8_t> moebius_reference_sieve(std::uint64_t N) {
  const auto lpf = lpf_table(N);
  std::vector<std::int8_t> out(N, 0);
  if (N > 1) out[1] = 1;
  for (std::uint64_t n = 2; n < N; ++n) {
    std::uint64_t m = n;
    std::int8_t mu = 1;
    while (m > 1) {
      const std::uint64_t p = lpf[m];
      m /= p;
      if (m % p == 0) {
        mu = 0;
        break;
      }
      mu = static_cast<std::int8_t>(-mu);
    }
    out[n] = mu;
  }
  return out;
}

std::vector<std::int8_t> liouville_reference_sieve(std::uint64_t N) {
  const auto lpf = lpf_table(N);
  std::vector<std::int8_t> out(N, 0);
  if (N > 1) out[1] = 1;
  for (std::uint64_t n = 2; n < N; ++n) {
    std::uint64_t m = n;
    std::int8_t sign = 1;
    while (m > 1) {
      sign = static_cast<std::int8_t>(-sign);
      m /= lpf[m];
    }
    out[n] = sign;
  }
  return out;
}

std::vector<std::complex<double>> custom_values(const MultiplicativeSpec& spec,
                                                std::uint64_t N,
                                                std::uint64_t segment_size,
                                                int threads) {
  validate_multiplicative(spec);
  check_sieve_args(N, segment_size);
  std::vector<std::complex<double>> out(N, {1.0, 0.0});
  if (N == 0) return out;
  out[0] = 0.0;
  if (N <= 2) return out;
  const auto primes = primes_up_to(sqrt_floor(N - 1));
  const auto nseg =
      static_cast<std::int64_t>((N + segment_size - 1) / segment_size);
  const int nt = resolve_threads(threads);
  (void)nt;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (std::int64_t s = 0; s < nseg; ++s) {
    const std::uint64_t lo = static_cast<std::uint64_t>(s) * segment_size;
    const std::uint64_t hi = std::min<std::uint64_t>(N, lo + segment_size);
    std::vector<std::uint64_t> rem(hi - lo);
    for (std::uint64_t n = lo; n < hi; ++n) rem[n - lo] = n;
    for (std::uint64_t p : primes) {
      const std::complex<double> vp = prime_value(spec, p);
      std::uint64_t start = ((lo + p - 1) / p) * p;
      if (start < p) start = p;
      for (std::uint64_t j = start; j < hi; j += p) {
        auto& r = rem[j - lo];
        do {
          r /= p;
          out[j] *= vp;
        } while (r % p == 0);
      }
    }
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n)
      if (rem[n - lo] > 1) out[n] *= prime_value(spec, rem[n - lo]);
  }
  return out;
}

FitResult fit_decay_exponent(
    const std::vector<std::pair<int, double>>& block_sums) {
  FitResult fit;
  const double log_phi = std::log((1.0 + std::sqrt(5.0)) / 2.0);
  std::vector<double> xs, ys;
  for (const auto& [k, sum] : block_sums) {
    if (sum == 0.0) {
      fit.zero_block_ks.push_back(k);
      continue;
    }
    xs.push_back(k * log_phi);
    ys.push_back(std::log(std::abs(sum)));
  }
  if (xs.size() < 8)
    throw InsufficientDataError("decay fit needs at least 8 nonzero block "
                                "sums, have " + std::to_string(xs.size()));
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0)
    throw InsufficientDataError("decay fit needs distinct block indices");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  fit.fitted_exponent = slope;
  fit.eta_hat = 1.0 - slope;
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.residual =
        std::max(fit.residual, std::abs(ys[i] - (intercept + slope * xs[i])));
  fit.used_blocks = static_cast<int>(xs.size());
  return fit;
}

FitResult fit_decay_exponent(
    const std::vector<std::pair<int, std::int64_t>>& block_sums) {
  std::vector<std::pair<int, double>> widened;
  widened.reserve(block_sums.size());
  for (const auto& [k, sum] : block_sums)
    widened.emplace_back(k, static_cast<double>(sum));
  return fit_decay_exponent(widened);
}

CorrelationReport sum_theorem1(const MultiplicativeSpec& m, std::uint64_t N,
                               const std::vector<std::uint64_t>& checkpoints,
                               int threads, std::uint64_t seed,
                               int spot_checks) {
  validate_multiplicative(m);
  if (N == 0) throw ValidationError("horizon must be positive");
  if (N > kSieveCap)
    throw ValidationError("horizon exceeds the 1e9 sieve cap");
  check_checkpoints(checkpoints, N);
  if (spot_checks < 0) throw ValidationError("spot check count negative");

  CorrelationReport report;
  report.N = N;
  report.spec_name = m.name();

  const bool integer_kind = m.kind != MultiplicativeKind::kCustom;
  std::vector<std::int8_t> weights;
  std::vector<std::complex<double>> weights_c;
  if (m.kind == MultiplicativeKind::kMoebius)
    weights = moebius_sieve(N, 1 << 20, threads);
  else if (m.kind == MultiplicativeKind::kLiouville)
    weights = liouville_sieve(N, 1 << 20, threads);
  else
    weights_c = custom_values(m, N, 1 << 20, threads);

  FixedPointStream stream(parity_morphism());
  int code[256] = {};
  for (const auto& [letter, value] : parity_coding().out)
    code[static_cast<unsigned char>(letter)] = value;

  std::int64_t total_i = 0, block_i = 0;
  std::complex<double> total_c = 0, block_c = 0;
  int k_cur = 3;
  std::uint64_t boundary = block_boundary(k_cur);
  std::size_t cp_idx = 0;

  const auto record_checkpoint = [&](std::uint64_t cp) {
    report.partial_sums.emplace_back(
        cp, integer_kind ? std::complex<double>(static_cast<double>(total_i))
                         : total_c);
  };
  const auto close_block = [&] {
    report.block_sums.emplace_back(
        k_cur, integer_kind ? std::complex<double>(static_cast<double>(block_i))
                            : block_c);
    block_i = 0;
    block_c = 0;
    boundary = block_boundary(++k_cur);
  };

  for (std::uint64_t n = 1; n < N; ++n) {
    while (n >= boundary) close_block();
    while (cp_idx < checkpoints.size() && checkpoints[cp_idx] == n) {
      record_checkpoint(n);
      ++cp_idx;
    }
    const int sign = code[static_cast<unsigned char>(stream.letter_at(n))]
                         ? -1
                         : 1;
    if (integer_kind) {
      const std::int64_t term = sign * weights[n];
      total_i += term;
      block_i += term;
    } else {
      const std::complex<double> term =
          static_cast<double>(sign) * weights_c[n];
      total_c += term;
      block_c += term;
    }
  }
  if (N >= boundary) close_block();
  while (cp_idx < checkpoints.size()) {
    record_checkpoint(checkpoints[cp_idx]);
    ++cp_idx;
  }

  if (spot_checks > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> position(0, N - 1);
    for (int i = 0; i < spot_checks; ++i) {
      const std::uint64_t n = position(rng);
      const int from_stream =
          code[static_cast<unsigned char>(stream.letter_at(n))];
      if (from_stream != (s_phi(n) & 1))
        throw DomainError("parity stream disagrees with the digit count at "
                          "n = " + std::to_string(n));
    }
  }

  fit_or_skip(report);
  return report;
}

namespace {

// One chunk of a (-1)^{f(n)} scan: chunk total, per-block partial totals,
// and the within-chunk prefix sum at every checkpoint inside (lo, hi].
struct PqChunk {
  std::int64_t total = 0;
  std::vector<std::pair<int, std::int64_t>> blocks;
  std::vector<std::pair<std::uint64_t, std::int64_t>> checkpoint_prefixes;
};

}  // namespace

CorrelationReport sum_pq(const PqSpec& spec, std::uint64_t N,
                         const std::vector<std::uint64_t>& checkpoints,
                         int threads) {
  validate_pq(spec, /*allow_identity=*/true);
  if (N == 0) throw ValidationError("horizon must be positive");
  check_checkpoints(checkpoints, N);
  if (N > 1) f_value(N - 1, spec);  // surfaces capacity errors up front

  CorrelationReport report;
  report.N = N;
  report.spec_name = "pq(" + std::to_string(spec.p) + "," +
                     std::to_string(spec.q) + ")";

  const auto chunks = map_chunks<PqChunk>(
      1, N, threads, [&](std::uint64_t lo, std::uint64_t hi) {
        PqChunk chunk;
        auto cp = std::upper_bound(checkpoints.begin(), checkpoints.end(), lo);
        int k = block_index(lo);
        std::uint64_t boundary = block_boundary(k);
        std::int64_t block_acc = 0;
        const auto close_block = [&] {
          chunk.blocks.emplace_back(k, block_acc);
          block_acc = 0;
          boundary = block_boundary(++k);
        };
        for (std::uint64_t n = lo; n < hi; ++n) {
          while (n >= boundary) close_block();
          while (cp != checkpoints.end() && *cp == n) {
            chunk.checkpoint_prefixes.emplace_back(n, chunk.total);
            ++cp;
          }
          const std::int64_t term = (f_value(n, spec) & 1) ? -1 : 1;
          chunk.total += term;
          block_acc += term;
        }
        chunk.blocks.emplace_back(k, block_acc);
        if (cp != checkpoints.end() && *cp == hi)
          chunk.checkpoint_prefixes.emplace_back(hi, chunk.total);
        return chunk;
      });

  std::int64_t running = 0;
  std::vector<std::int64_t> block_totals(FibTable::kMax64 + 2, 0);
  for (const auto& chunk : chunks) {
    for (const auto& [cp, prefix] : chunk.checkpoint_prefixes)
      report.partial_sums.emplace_back(
          cp, std::complex<double>(static_cast<double>(running + prefix)));
    running += chunk.total;
    for (const auto& [k, partial] : chunk.blocks)
      block_totals[static_cast<std::size_t>(k)] += partial;
  }
  if (!checkpoints.empty() && checkpoints.front() == 1)
    report.partial_sums.emplace(report.partial_sums.begin(), 1,
                                std::complex<double>(0.0));

  for (int k = 3; k <= FibTable::kMax64 && fib(k) <= N; ++k)
    report.block_sums.emplace_back(
        k, std::complex<double>(
               static_cast<double>(block_totals[static_cast<std::size_t>(k)])));

  fit_or_skip(report);
  return report;
}

std::vector<std::pair<int, std::int64_t>> sum_with_offset(
    const PqSpec& spec, const OffsetSet& L, int k_lo, int k_hi, int threads,
    bool relaxed_offsets) {
  validate_pq(spec, /*allow_identity=*/true);
  validate_offsets(L, spec.r, relaxed_offsets);
  if (k_lo < 3 || k_hi < k_lo)
    throw ValidationError("block range must satisfy 3 <= k_lo <= k_hi");
  // Largest argument overall; throws CapacityError here, outside the
  // parallel region, if the table cannot cover the range.
  const std::uint64_t top_offset = offset_value(L, k_hi);
  if (top_offset > max_encodable() || fib(k_hi) - 1 > max_encodable() - top_offset)
    throw CapacityError("offset block range exceeds encodable values");
  f_value(fib(k_hi) - 1 + top_offset, spec);

  std::vector<std::pair<int, std::int64_t>> out(
      static_cast<std::size_t>(k_hi - k_lo + 1));
  const int nt = resolve_threads(threads);
  (void)nt;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (int k = k_lo; k <= k_hi; ++k) {
    const std::uint64_t offset = offset_value(L, k);
    std::int64_t acc = 0;
    for (std::uint64_t n = fib(k - 1); n < fib(k); ++n)
      acc += (f_value(n + offset, spec) & 1) ? -1 : 1;
    out[static_cast<std::size_t>(k - k_lo)] = {k, acc};
  }
  return out;
}

std::string report_csv(const CorrelationReport& report) {
  std::ostringstream csv;
  csv << "k_or_checkpoint,sum,abs_sum,normalized\n";
  for (const auto& [cp, sum] : report.partial_sums)
    csv << cp << ',' << format_value(sum) << ',' << format_real(std::abs(sum))
        << ',' << format_real(std::abs(sum) / static_cast<double>(cp)) << '\n';
  for (const auto& [k, sum] : report.block_sums)
    csv << k << ',' << format_value(sum) << ',' << format_real(std::abs(sum))
        << ',' << format_real(std::abs(sum) / fib_block_size(k)) << '\n';
  return csv.str();
}

std::string report_json(const CorrelationReport& report) {
  nlohmann::json j;
  j["N"] = report.N;
  j["spec"] = report.spec_name;
  auto partials = nlohmann::json::array();
  for (const auto& [cp, sum] : report.partial_sums) {
    nlohmann::json row;
    row["checkpoint"] = cp;
    row["sum"] = format_value(sum);
    row["abs_sum"] = std::abs(sum);
    row["normalized"] = std::abs(sum) / static_cast<double>(cp);
    partials.push_back(row);
  }
  j["partial_sums"] = partials;
  auto blocks = nlohmann::json::array();
  for (const auto& [k, sum] : report.block_sums) {
    nlohmann::json row;
    row["k"] = k;
    row["sum"] = format_value(sum);
    row["abs_sum"] = std::abs(sum);
    row["normalized"] = std::abs(sum) / fib_block_size(k);
    blocks.push_back(row);
  }
  j["block_sums"] = blocks;
  if (report.has_fit) {
    j["fitted_exponent"] = report.fit.fitted_exponent;
    j["eta_hat"] = report.fit.eta_hat;
    j["residual"] = report.fit.residual;
    j["used_blocks"] = report.fit.used_blocks;
    j["zero_block_ks"] = report.fit.zero_block_ks;
  }
  return j.dump(2);
}

}  // namespace zeckphi
