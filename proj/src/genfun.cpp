#include "zeckphi/genfun.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <set>

#include "zeckphi/parallel.hpp"
#include "zeckphi/zeck.hpp"

namespace zeckphi {

namespace {

using boost::multiprecision::cpp_int;

// Largest gap between consecutive digit indices, 0 for at most one digit.
int max_gap(const std::vector<int>& indices) {
  int gap = 0;
  for (std::size_t i = 1; i < indices.size(); ++i) {
    gap = std::max(gap, indices[i - 1] - indices[i]);
  }
  return gap;
}

std::int64_t checked_coeff(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw CapacityError("series coefficient overflows");
  }
  return static_cast<std::int64_t>(v);
}

// c = a * b mod x^(K+1), exact.
std::vector<std::int64_t> mul_trunc(const std::vector<std::int64_t>& a,
                                    const std::vector<std::int64_t>& b) {
  const std::size_t K = a.size() - 1;
  std::vector<std::int64_t> out(K + 1, 0);
  for (std::size_t i = 0; i <= K; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j <= K; ++j) {
      out[i + j] = checked_coeff(static_cast<__int128>(a[i]) * b[j] +
                                 static_cast<__int128>(out[i + j]));
    }
  }
  return out;
}

// Multiplicative inverse mod x^(K+1); requires unit constant term.
std::vector<std::int64_t> invert_trunc(const std::vector<std::int64_t>& d) {
  if (d[0] != 1 && d[0] != -1) {
    throw ValidationError("series inverse needs a unit constant term");
  }
  const std::size_t K = d.size() - 1;
  std::vector<std::int64_t> e(K + 1, 0);
  e[0] = d[0];
  for (std::size_t k = 1; k <= K; ++k) {
    __int128 acc = 0;
    for (std::size_t j = 1; j <= k; ++j) {
      acc += static_cast<__int128>(d[j]) * e[k - j];
    }
    e[k] = checked_coeff(-acc * d[0]);
  }
  return e;
}

std::vector<std::int64_t> eval_series(const TruncatedSeries& s, int z) {
  std::vector<std::int64_t> out(s.K + 1, 0);
  for (int k = 0; k <= s.K; ++k) out[k] = s.coeffs[k].eval(z);
  return out;
}

// Sign of P(p / 2^s) where P(x) = x^(2r+2) - x^(2r+1) - x^(2r) + 1,
// computed exactly: sign of p^(2r+2) - p^(2r+1) 2^s - p^(2r) 2^(2s) + 2^(s(2r+2)).
int dyadic_sign(const cpp_int& p, int s, int r) {
  cpp_int p2r = pow(p, 2 * r);
  cpp_int two_s = cpp_int(1) << s;
  cpp_int val = p2r * p * p - p2r * p * two_s - p2r * two_s * two_s;
  val += cpp_int(1) << (s * (2 * r + 2));
  if (val == 0) return 0;
  return val > 0 ? 1 : -1;
}

std::string dyadic_decimal(cpp_int a, int s, int digits) {
  cpp_int ip = a >> s;
  cpp_int rem = a - (ip << s);
  std::string out = ip.str();
  out += '.';
  for (int i = 0; i < digits; ++i) {
    rem *= 10;
    cpp_int d = rem >> s;
    out += static_cast<char>('0' + d.convert_to<int>());
    rem -= d << s;
  }
  return out;
}

long double dyadic_to_ld(const cpp_int& a, int s) {
  return std::ldexp(a.convert_to<long double>(), -s);
}

}  // namespace

void validate_offsets(const OffsetSet& L, int r, bool relaxed) {
  const auto& e = L.elems;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 1) throw ValidationError("offsets must be positive");
    if (i > 0 && e[i] <= e[i - 1] + 1) {
      throw ValidationError("offsets must ascend with gaps of at least 2");
    }
  }
  if (relaxed || e.empty()) return;
  if (e[0] > 2 * r) throw ValidationError("first offset must be <= 2r");
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i] > e[i - 1] + 2 * r + 1) {
      throw ValidationError("offset gaps must be <= 2r+1");
    }
  }
}

std::uint64_t offset_value(const OffsetSet& L, int k) {
  std::uint64_t total = 0;
  for (int l : L.elems) {
    std::uint64_t term = fib(k + l);
    if (total > std::numeric_limits<std::uint64_t>::max() - term) {
      throw CapacityError("offset sum overflows");
    }
    total += term;
  }
  return total;
}

std::vector<std::uint64_t> enumerate_indecomposable(int r, int k) {
  if (r < 0) throw ValidationError("radius must be >= 0");
  if (k < 3) throw DomainError("lengths start at 3");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = fib(k - 1); n < fib(k); ++n) {
    if (max_gap(zeck_encode(n).indices) <= 2 * r + 1) out.push_back(n);
  }
  return out;
}

std::vector<std::uint64_t> enumerate_anchored(int r, int k) {
  if (r < 2) throw DomainError("anchor position must be a digit index (>= 2)");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n : enumerate_indecomposable(r, k)) {
    if (zeck_encode(n).indices.back() == r) out.push_back(n);
  }
  return out;
}

std::int64_t ZPoly::eval(int z) const {
  if (z != 1 && z != -1) throw ValidationError("evaluation point must be +-1");
  std::int64_t acc = 0;
  for (std::size_t e = 0; e < c.size(); ++e) {
    acc += (z == 1 || e % 2 == 0) ? c[e] : -c[e];
  }
  return acc;
}

TruncatedSeries build_series(SeriesKind kind, const PqSpec& spec,
                             const OffsetSet& L, int K, int threads) {
  validate_pq(spec, true);
  if (K > kMaxSeriesOrder) {
    throw CapacityError("truncation order beyond enumeration range");
  }
  if (K < 3) throw ValidationError("truncation order must be >= 3");
  const bool anchored = kind == SeriesKind::kAnchored ||
                        kind == SeriesKind::kAnchoredOffset;
  const bool offset = kind == SeriesKind::kAnchoredOffset ||
                      kind == SeriesKind::kIndecomposableOffset ||
                      kind == SeriesKind::kBlockDirect;
  if (anchored && spec.r < 2) {
    throw DomainError("anchored series need r >= 2");
  }

  TruncatedSeries s;
  s.K = K;
  s.coeffs.assign(K + 1, ZPoly{});
  const int nt = resolve_threads(threads);
  (void)nt;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (int k = 3; k <= K; ++k) {
    ZPoly poly;
    const std::uint64_t shift = offset ? offset_value(L, k) : 0;
    for (std::uint64_t n = fib(k - 1); n < fib(k); ++n) {
      if (kind != SeriesKind::kBlockDirect) {
        const auto rep = zeck_encode(n);
        if (max_gap(rep.indices) > 2 * spec.r + 1) continue;
        if (anchored && rep.indices.back() != spec.r) continue;
      }
      const std::uint64_t e = f_value(n + shift, spec);
      if (poly.c.size() <= e) poly.c.resize(e + 1, 0);
      ++poly.c[e];
    }
    s.coeffs[k] = std::move(poly);
  }
  return s;
}

IdentityReport verify_identity(const PqSpec& spec, const OffsetSet& L, int K,
                               int z_eval, int threads) {
  validate_pq(spec, true);
  validate_offsets(L, spec.r);
  if (z_eval != 1 && z_eval != -1) {
    throw ValidationError("evaluation point must be +-1");
  }
  if (spec.r < 2) throw DomainError("identity needs r >= 2");
  const int r = spec.r;
  const OffsetSet empty;

  auto A = eval_series(build_series(SeriesKind::kAnchored, spec, empty, K,
                                    threads), z_eval);
  auto C = eval_series(build_series(SeriesKind::kIndecomposable, spec, empty,
                                    K, threads), z_eval);
  auto AL = eval_series(build_series(SeriesKind::kAnchoredOffset, spec, L, K,
                                     threads), z_eval);
  auto DL = eval_series(build_series(SeriesKind::kIndecomposableOffset, spec,
                                     L, K, threads), z_eval);
  auto H = eval_series(build_series(SeriesKind::kBlockDirect, spec, L, K,
                                    threads), z_eval);

  // den = 1 - x - x^(r+1) A
  std::vector<std::int64_t> den(K + 1, 0);
  den[0] = 1;
  den[1] -= 1;
  for (int k = r + 1; k <= K; ++k) den[k] -= A[k - (r + 1)];

  // num = x^(r+1) C A_L
  auto prod = mul_trunc(C, AL);
  std::vector<std::int64_t> num(K + 1, 0);
  for (int k = r + 1; k <= K; ++k) num[k] = prod[k - (r + 1)];

  auto rhs = mul_trunc(num, invert_trunc(den));
  for (int k = 0; k <= K; ++k) {
    rhs[k] = checked_coeff(static_cast<__int128>(rhs[k]) + DL[k]);
  }

  IdentityReport report;
  report.lhs = H;
  report.rhs = rhs;
  for (int k = 0; k <= K; ++k) {
    std::int64_t diff = std::llabs(H[k] - rhs[k]);
    if (diff > report.max_abs_discrepancy) {
      report.max_abs_discrepancy = diff;
    }
    if (diff != 0 && report.first_bad_k < 0) report.first_bad_k = k;
  }
  return report;
}

RootEnclosure phi_r_root(int r, long double tol) {
  if (r < 1) throw ValidationError("growth rate defined for r >= 1");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");

  // lo = 1 + 1/256: P dips negative just right of its root at 1.
  int s = 8;
  cpp_int a = 257;
  if (dyadic_sign(a, s, r) >= 0) {
    throw DomainError("left bracket failed to certify");
  }
  // hi: largest dyadic below phi at growing scale until the sign goes
  // positive; phi itself has P(phi) = 1 > 0.
  int s_hi = 8;
  cpp_int b;
  for (;; s_hi += 4) {
    if (s_hi > 400) throw CapacityError("right bracket search ran away");
    b = (cpp_int(1) << s_hi) + sqrt(cpp_int(5) << (2 * s_hi));
    b >>= 1;  // floor(phi 2^s_hi)
    if (dyadic_sign(b, s_hi, r) > 0) break;
  }
  // Common scale.
  if (s < s_hi) {
    a <<= (s_hi - s);
    s = s_hi;
  } else {
    b <<= (s - s_hi);
  }

  while (std::ldexp((b - a).convert_to<long double>(), -s) > tol) {
    cpp_int mid = a + b;  // at scale s + 1
    a <<= 1;
    b <<= 1;
    ++s;
    int sign = dyadic_sign(mid, s, r);
    if (sign == 0) throw DomainError("dyadic midpoint cannot be a root");
    (sign < 0 ? a : b) = mid;
  }

  RootEnclosure out;
  out.r = r;
  out.lo = dyadic_to_ld(a, s);
  out.hi = dyadic_to_ld(b, s);
  out.lo_decimal = dyadic_decimal(a, s, 15);
  out.hi_decimal = dyadic_decimal(b, s, 15);
  out.sign_change_certified =
      dyadic_sign(a, s, r) < 0 && dyadic_sign(b, s, r) > 0;
  return out;
}

CountGrowthReport check_count_growth(int r, int k_max) {
  if (r < 0) throw ValidationError("radius must be >= 0");
  if (k_max < 3 || k_max > 60) {
    throw ValidationError("length cap must lie in [3, 60]");
  }

  CountGrowthReport report;
  report.r = r;
  report.k_max = k_max;

  // comp[m]: compositions of m into parts from {2, ..., 2r+1} — the gap
  // alphabet between consecutive digit indices.
  std::vector<std::uint64_t> comp(k_max + 1, 0);
  comp[0] = 1;
  for (int m = 1; m <= k_max; ++m) {
    for (int g = 2; g <= std::min(2 * r + 1, m); ++g) comp[m] += comp[m - g];
  }

  auto& ind = report.indecomposable_counts;
  ind.assign(k_max + 1, 0);
  for (int k = 3; k <= k_max; ++k) {
    // Lowest index ranges over [2, k-1]; gaps fill the rest.
    for (int m = 0; m <= k - 3; ++m) ind[k] += comp[m];
  }

  if (r >= 2) {
    auto& anc = report.anchored_counts;
    anc.assign(k_max + 1, 0);
    for (int k = 3; k <= k_max; ++k) {
      if (k - 1 - r >= 0) anc[k] = comp[k - 1 - r];
    }
  }

  // Linear recurrence route: g_k = [k=3] + g_{k-1} + g_{k-2} - g_{k-2r-2}.
  auto& cf = report.closed_form_counts;
  cf.assign(k_max + 1, 0);
  auto at = [&](int j) -> std::uint64_t { return j >= 3 ? cf[j] : 0; };
  for (int k = 3; k <= k_max; ++k) {
    cf[k] = (k == 3 ? 1 : 0) + at(k - 1) + at(k - 2) - at(k - 2 * r - 2);
    if (cf[k] != ind[k]) report.matches_closed_form = false;
  }

  for (int k = 3; k + 1 <= k_max; ++k) {
    report.ratios.push_back(ind[k] == 0
                                ? 0.0
                                : static_cast<double>(ind[k + 1]) /
                                      static_cast<double>(ind[k]));
  }

  for (int k = 3; k <= std::min(k_max, 20); ++k) {
    if (enumerate_indecomposable(r, k).size() != ind[k]) {
      report.matches_enumeration = false;
    }
    if (r >= 2 &&
        enumerate_anchored(r, k).size() != report.anchored_counts[k]) {
      report.matches_enumeration = false;
    }
  }

  if (r == 0) {
    report.growth_rate = 1.0;
  } else {
    RootEnclosure rate = phi_r_root(r, 1e-12L);
    report.growth_rate = static_cast<double>((rate.lo + rate.hi) / 2);
  }
  const int fit_at = std::min(report.fit_at, k_max);
  report.fit_at = fit_at;
  long double c_fit = 0;
  for (int k = 3; k <= fit_at; ++k) {
    c_fit = std::max(c_fit, static_cast<long double>(ind[k]) /
                                std::pow(static_cast<long double>(
                                             report.growth_rate),
                                         k));
  }
  report.fitted_constant = static_cast<double>(c_fit);
  for (int k = 3; k <= k_max; ++k) {
    long double bound =
        c_fit * std::pow(static_cast<long double>(report.growth_rate), k);
    if (static_cast<long double>(ind[k]) > bound) {
      report.bound_violations.push_back(k);
    }
  }
  return report;
}

ZeroFreeReport probe_zero_free(const PqSpec& spec, int K,
                               const std::vector<long double>& moduli,
                               int threads) {
  validate_pq(spec, true);
  if (spec.r < 2) throw DomainError("probe needs an anchored series (r >= 2)");
  if (K > kMaxSeriesOrder) {
    throw CapacityError("truncation order beyond enumeration range");
  }
  if (K < 3) throw ValidationError("truncation order must be >= 3");
  if (moduli.empty()) throw ValidationError("no sample moduli given");

  RootEnclosure rate = phi_r_root(spec.r, 1e-12L);
  const long double rate_mid = (rate.lo + rate.hi) / 2;
  for (long double rho : moduli) {
    if (!(rho > 0) || rho * rate.hi >= 1) {
      throw ValidationError("sample moduli must lie in (0, 1/phi_r)");
    }
  }

  TruncatedSeries series =
      build_series(SeriesKind::kAnchored, spec, OffsetSet{}, K, threads);
  std::vector<std::int64_t> plus(K + 1, 0), minus(K + 1, 0);
  for (int k = 0; k <= K; ++k) {
    plus[k] = series.coeffs[k].eval(1);
    minus[k] = series.coeffs[k].eval(-1);
  }

  ZeroFreeReport report;
  report.K = K;
  report.x0 = (std::sqrt(5.0L) - 1) / 2;
  const long double x0 = report.x0;

  long double x0_pow = x0 * x0 * x0;  // x0^3, first live order
  long double partial = 0;
  const long double lead = std::pow(x0, spec.r + 1);
  for (int k = 3; k <= K; ++k) {
    partial += static_cast<long double>(plus[k]) * x0_pow;
    x0_pow *= x0;
    report.term_by_order.push_back(lead * partial);
  }
  report.x0_term = report.term_by_order.back();
  report.x0_value = x0 + report.x0_term;
  report.x0_distance = std::fabs(report.x0_value - 1);
  report.increasing_in_order = true;
  for (std::size_t i = 1; i < report.term_by_order.size(); ++i) {
    if (report.term_by_order[i] < report.term_by_order[i - 1]) {
      report.increasing_in_order = false;
    }
  }

  using Cplx = std::complex<long double>;
  report.min_grid_distance = std::numeric_limits<long double>::max();
  report.max_alternating_abs = 0;
  const int kAngles = 64;
  for (long double rho : moduli) {
    for (int j = 0; j < kAngles; ++j) {
      const long double theta =
          2 * 3.14159265358979323846L * j / kAngles;
      const Cplx x = std::polar(rho, theta);
      Cplx value = 0;
      for (int k = K; k >= 0; --k) {
        value = value * x + static_cast<long double>(minus[k]);
      }
      report.max_alternating_abs =
          std::max(report.max_alternating_abs, std::abs(value));
      const Cplx expr = x + std::pow(x, spec.r + 1) * value - Cplx{1, 0};
      report.min_grid_distance =
          std::min(report.min_grid_distance, std::abs(expr));
    }
  }

  long double at_x0 = 0;
  for (int k = K; k >= 0; --k) {
    at_x0 = at_x0 * x0 + static_cast<long double>(plus[k]);
  }
  report.positive_at_x0 = at_x0;
  report.alternating_dominated = report.max_alternating_abs < at_x0;

  // Tail mass beyond the truncation, from the growth bound on the counts.
  long double rho_star = x0;
  for (long double rho : moduli) rho_star = std::max(rho_star, rho);
  CountGrowthReport growth = check_count_growth(spec.r, 40);
  const long double q = rate_mid * rho_star;
  report.tail_bound = static_cast<long double>(growth.fitted_constant) *
                      std::pow(q, K + 1) / (1 - q);
  return report;
}

}  // namespace zeckphi
