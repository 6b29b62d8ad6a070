#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zeckphi {

// Worker count to use: an explicit request wins, then the ZECKPHI_THREADS
// environment variable, then the OpenMP default, then 1.
inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ZECKPHI_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Fixed chunk width for parallel range scans.  Chunk boundaries depend only
// on the range, never on the worker count, so merged results are identical
// no matter how many threads run.
inline constexpr std::uint64_t kChunkWidth = std::uint64_t{1} << 16;

// Applies fn(lo, hi) to consecutive chunks of [begin, end) and returns the
// per-chunk results in ascending chunk order.
template <class T, class Fn>
std::vector<T> map_chunks(std::uint64_t begin, std::uint64_t end, int threads,
                          Fn fn) {
  if (end <= begin) return {};
  const std::uint64_t nchunks = (end - begin + kChunkWidth - 1) / kChunkWidth;
  std::vector<T> out(static_cast<std::size_t>(nchunks));
  const int nt = resolve_threads(threads);
  (void)nt;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
    const std::uint64_t lo = begin + static_cast<std::uint64_t>(c) * kChunkWidth;
    const std::uint64_t hi = std::min<std::uint64_t>(end, lo + kChunkWidth);
    out[static_cast<std::size_t>(c)] = fn(lo, hi);
  }
  return out;
}

}  // namespace zeckphi
