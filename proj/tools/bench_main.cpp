// Wall-clock comparison of the OpenMP kernels against the serial references
// that the tests use.  Every variant's result is cross-checked before the
// timing is reported, so a speedup never hides a wrong answer.
//
// Usage: bench [sieve_n] [sum_n] [reps]   (defaults 10^7, 10^6, 3)

#include <chrono>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "zeckphi/correlation.hpp"
#include "zeckphi/parallel.hpp"
#include "zeckphi/quasiadd.hpp"

namespace {

using namespace zeckphi;

template <typename Fn>
double best_seconds(int reps, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double s = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    if (s < best) best = s;
  }
  return best;
}

std::uint64_t checksum(const std::vector<std::int8_t>& values) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int8_t v : values) {
    h ^= static_cast<std::uint8_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

void row(const char* kernel, std::uint64_t n, const char* config,
         double seconds, double baseline) {
  std::printf("%-26s %10llu  %-16s %8.3fs  %6.2fx\n", kernel,
              static_cast<unsigned long long>(n), config, seconds,
              baseline / seconds);
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t sieve_n =
      argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10000000ull;
  const std::uint64_t sum_n =
      argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1000000ull;
  const int reps = argc > 3 ? std::atoi(argv[3]) : 3;
  const int threads = resolve_threads(0);

  std::printf("reps %d (best shown), %d thread%s resolved for the parallel "
              "variants\n\n",
              reps, threads, threads == 1 ? "" : "s");
  std::printf("%-26s %10s  %-16s %9s  %7s\n", "kernel", "n", "config", "best",
              "speedup");

  try {
    {
      std::vector<std::int8_t> ref, seg1, segt;
      const double t_ref = best_seconds(
          reps, [&] { ref = moebius_reference_sieve(sieve_n); });
      const double t_seg1 = best_seconds(
          reps, [&] { seg1 = moebius_sieve(sieve_n, 1 << 20, 1); });
      const double t_segt = best_seconds(
          reps, [&] { segt = moebius_sieve(sieve_n, 1 << 20, threads); });
      if (ref != seg1 || seg1 != segt) {
        std::fprintf(stderr, "moebius variants disagree\n");
        return 1;
      }
      row("moebius sieve", sieve_n, "serial reference", t_ref, t_ref);
      row("moebius sieve", sieve_n, "segmented, 1t", t_seg1, t_ref);
      row("moebius sieve", sieve_n,
          ("segmented, " + std::to_string(threads) + "t").c_str(), t_segt,
          t_ref);
      std::printf("%-26s results agree, checksum %016llx\n", "",
                  static_cast<unsigned long long>(checksum(ref)));
    }

    {
      std::vector<std::int8_t> ref, seg1, segt;
      const double t_ref = best_seconds(
          reps, [&] { ref = liouville_reference_sieve(sieve_n); });
      const double t_seg1 = best_seconds(
          reps, [&] { seg1 = liouville_sieve(sieve_n, 1 << 20, 1); });
      const double t_segt = best_seconds(
          reps, [&] { segt = liouville_sieve(sieve_n, 1 << 20, threads); });
      if (ref != seg1 || seg1 != segt) {
        std::fprintf(stderr, "liouville variants disagree\n");
        return 1;
      }
      row("liouville sieve", sieve_n, "serial reference", t_ref, t_ref);
      row("liouville sieve", sieve_n, "segmented, 1t", t_seg1, t_ref);
      row("liouville sieve", sieve_n,
          ("segmented, " + std::to_string(threads) + "t").c_str(), t_segt,
          t_ref);
      std::printf("%-26s results agree, checksum %016llx\n", "",
                  static_cast<unsigned long long>(checksum(ref)));
    }

    {
      PqSpec spec;
      spec.p = 2;
      spec.q = 3;
      spec.r = 0;
      spec.m = 2;
      std::int64_t direct = 0;
      const double t_direct = best_seconds(reps, [&] {
        std::int64_t s = 0;
        for (std::uint64_t n = 1; n < sum_n; ++n) {
          s += (f_value(n, spec) & 1) ? -1 : +1;
        }
        direct = s;
      });
      CorrelationReport rep1, rept;
      const double t_chunk1 = best_seconds(
          reps, [&] { rep1 = sum_pq(spec, sum_n, {sum_n}, 1); });
      const double t_chunkt = best_seconds(
          reps, [&] { rept = sum_pq(spec, sum_n, {sum_n}, threads); });
      const std::int64_t got1 =
          static_cast<std::int64_t>(rep1.partial_sums.back().second.real());
      const std::int64_t gott =
          static_cast<std::int64_t>(rept.partial_sums.back().second.real());
      if (direct != got1 || got1 != gott) {
        std::fprintf(stderr, "signed digit-sum variants disagree\n");
        return 1;
      }
      row("signed digit-sum sum", sum_n, "serial loop", t_direct, t_direct);
      row("signed digit-sum sum", sum_n, "chunked, 1t", t_chunk1, t_direct);
      row("signed digit-sum sum", sum_n,
          ("chunked, " + std::to_string(threads) + "t").c_str(), t_chunkt,
          t_direct);
      std::printf("%-26s results agree, sum %lld\n", "",
                  static_cast<long long>(direct));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bench failed: %s\n", e.what());
    return 1;
  }
  return 0;
}
