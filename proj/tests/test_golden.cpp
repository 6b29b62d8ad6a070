#include "zeckphi/golden.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "zeckphi/zeck.hpp"

using namespace zeckphi;

namespace {

const long double kPhi = (1.0L + std::sqrt(5.0L)) / 2.0L;

GoldenNum interval_length(const GoldenInterval& w) {
  return golden_sub(w.hi, w.lo);
}

}  // namespace

TEST_SUITE("golden") {

TEST_CASE("ring law examples") {
  GoldenNum phi{0, 1};
  CHECK(golden_eq(golden_mul(phi, phi), GoldenNum{1, 1}));  // phi^2 = phi + 1
  CHECK(golden_eq(golden_add(GoldenNum{1, 0}, phi), GoldenNum{1, 1}));
  GoldenNum phim1{-1, 1};
  CHECK(golden_eq(golden_mul(phim1, phim1), GoldenNum{2, -1}));
}

TEST_CASE("ring laws on a grid") {
  std::vector<GoldenNum> sample;
  for (std::int64_t a = -3; a <= 3; ++a) {
    for (std::int64_t b = -3; b <= 3; ++b) sample.push_back(GoldenNum{a, b});
  }
  for (const auto& x : sample) {
    for (const auto& y : sample) {
      CHECK(golden_eq(golden_mul(x, y), golden_mul(y, x)));
      CHECK(golden_eq(golden_add(x, y), golden_add(y, x)));
      for (const auto& z : sample) {
        CHECK(golden_eq(golden_mul(x, golden_add(y, z)),
                        golden_add(golden_mul(x, y), golden_mul(x, z))));
      }
    }
  }
}

TEST_CASE("sign examples and float cross-check") {
  CHECK(golden_sign(GoldenNum{0, 0}) == 0);
  CHECK(golden_sign(GoldenNum{-1, 1}) == +1);  // phi - 1 > 0
  CHECK(golden_sign(GoldenNum{5, -3}) == +1);  // 5 - 3 phi > 0
  CHECK(golden_sign(GoldenNum{-5, 3}) == -1);
  CHECK(golden_sign(GoldenNum{1, -1}) == -1);  // 1 - phi < 0
  CHECK(golden_sign(GoldenNum{2, -1}) == +1);  // 2 - phi > 0
  for (std::int64_t a = -200; a <= 200; a += 7) {
    for (std::int64_t b = -200; b <= 200; b += 3) {
      long double val = static_cast<long double>(a) +
                        static_cast<long double>(b) * kPhi;
      int expect = (a == 0 && b == 0) ? 0 : (val > 0 ? +1 : -1);
      CHECK(golden_sign(GoldenNum{a, b}) == expect);
    }
  }
}

TEST_CASE("coefficient capacity is enforced") {
  GoldenNum big{kGoldenCoeffCap, 0};
  CHECK_THROWS_AS(golden_add(big, GoldenNum{1, 0}), CapacityError);
  CHECK_THROWS_AS(golden_mul(big, GoldenNum{2, 0}), CapacityError);
  CHECK_NOTHROW(golden_add(big, GoldenNum{0, 0}));
}

TEST_CASE("exact floor") {
  CHECK(golden_floor(GoldenNum{3, 0}) == 3);
  CHECK(golden_floor(GoldenNum{0, 1}) == 1);
  CHECK(golden_floor(GoldenNum{0, 2}) == 3);
  CHECK(golden_floor(GoldenNum{0, -1}) == -2);
  CHECK(golden_floor(GoldenNum{1, -1}) == -1);
  for (std::int64_t a = -50; a <= 50; ++a) {
    for (std::int64_t b = -50; b <= 50; ++b) {
      long double val = static_cast<long double>(a) +
                        static_cast<long double>(b) * kPhi;
      CHECK(golden_floor(GoldenNum{a, b}) ==
            static_cast<std::int64_t>(std::floor(val)));
    }
  }
}

TEST_CASE("signed distance examples") {
  CHECK(golden_eq(signed_dist(GoldenNum{3, 0}), GoldenNum{0, 0}));
  CHECK(golden_eq(signed_dist(GoldenNum{0, 1}), GoldenNum{-2, 1}));
  CHECK(golden_eq(signed_dist(GoldenNum{0, 2}), GoldenNum{-3, 2}));
}

TEST_CASE("signed distance law on a grid") {
  for (std::int64_t a = -40; a <= 40; ++a) {
    for (std::int64_t b = -40; b <= 40; ++b) {
      GoldenNum x{a, b};
      GoldenNum d = signed_dist(x);
      // d differs from x by an integer.
      CHECK(d.b == x.b);
      // -1/2 <= d < 1/2 under exact comparison.
      GoldenNum two_d_plus_1 = golden_add(golden_scale(2, d), GoldenNum{1, 0});
      GoldenNum two_d_minus_1 = golden_sub(golden_scale(2, d), GoldenNum{1, 0});
      CHECK(golden_sign(two_d_plus_1) >= 0);
      CHECK(golden_sign(two_d_minus_1) < 0);
    }
  }
}

TEST_CASE("powers of phi and its inverse") {
  CHECK(golden_eq(phi_pow(0), GoldenNum{1, 0}));
  CHECK(golden_eq(phi_pow(1), GoldenNum{0, 1}));
  CHECK(golden_eq(inv_phi_pow(0), GoldenNum{1, 0}));
  CHECK(golden_eq(inv_phi_pow(1), GoldenNum{-1, 1}));
  for (int k = 0; k <= 40; ++k) {
    CHECK(golden_eq(golden_mul(phi_pow(k), inv_phi_pow(k)), GoldenNum{1, 0}));
  }
  // (phi - 1)^k shrinks: strictly positive, strictly decreasing.
  for (int k = 1; k <= 40; ++k) {
    CHECK(golden_sign(inv_phi_pow(k)) == +1);
    CHECK(golden_sign(golden_sub(inv_phi_pow(k - 1), inv_phi_pow(k))) == +1);
  }
}

TEST_CASE("detection window construction") {
  // u = 0 always takes the wide branch.
  GoldenInterval w = interval_Rk(5, 0);
  CHECK(golden_eq(w.lo, golden_neg(inv_phi_pow(4))));
  CHECK(golden_eq(w.hi, inv_phi_pow(5)));
  CHECK(w.lo_closed);
  CHECK_FALSE(w.hi_closed);

  // k = 3, u = 1: F_2 = 1 <= u, narrow branch, center -phi.
  w = interval_Rk(3, 1);
  CHECK(golden_eq(w.lo, golden_sub(GoldenNum{0, -1}, inv_phi_pow(4))));
  CHECK(golden_eq(w.hi, golden_add(GoldenNum{0, -1}, inv_phi_pow(3))));

  // k = 4, u = 2: F_3 = 2 <= u, narrow branch, center +2 phi.
  w = interval_Rk(4, 2);
  CHECK(golden_eq(w.lo, golden_sub(GoldenNum{0, 2}, inv_phi_pow(5))));
  CHECK(golden_eq(w.hi, golden_add(GoldenNum{0, 2}, inv_phi_pow(4))));

  CHECK_THROWS_AS(interval_Rk(1, 0), DomainError);
  CHECK_THROWS_AS(interval_Rk(5, 5), DomainError);   // F_5 = 5
  CHECK_THROWS_AS(interval_Rk(5, 99), DomainError);
}

TEST_CASE("windows tile the circle exactly") {
  for (int k = 2; k <= 12; ++k) {
    // Total length is exactly 1.
    GoldenNum total{0, 0};
    std::vector<GoldenInterval> windows;
    for (std::uint64_t u = 0; u < fib(k); ++u) {
      windows.push_back(interval_Rk(k, u));
      total = golden_add(total, interval_length(windows.back()));
    }
    CHECK(golden_eq(total, GoldenNum{1, 0}));

    // Pairwise disjoint modulo 1.
    for (std::size_t i = 0; i < windows.size(); ++i) {
      for (std::size_t j = i + 1; j < windows.size(); ++j) {
        const auto& I = windows[i];
        const auto& J = windows[j];
        GoldenNum delta = golden_sub(J.lo, I.lo);
        std::int64_t m = golden_floor(delta);
        GoldenNum frac = golden_sub(delta, GoldenNum{m, 0});  // [0, 1)
        bool same_lo = golden_sign(frac) == 0;
        // J.lo inside [I.lo, I.hi), or I.lo inside [J.lo, J.hi)?
        bool j_in_i = golden_sign(golden_sub(frac, interval_length(I))) < 0;
        GoldenNum one_minus = golden_sub(GoldenNum{1, 0}, frac);
        bool i_in_j =
            !same_lo &&
            golden_sign(golden_sub(one_minus, interval_length(J))) < 0;
        CHECK_FALSE(same_lo);
        CHECK_FALSE(j_in_i);
        CHECK_FALSE(i_in_j);
      }
    }
  }
}

TEST_CASE("membership respects open and closed ends") {
  GoldenInterval w{GoldenNum{0, 0}, GoldenNum{-1, 1}, true, false};  // [0, phi-1)
  CHECK(contains_mod1(w, GoldenNum{0, 0}));
  CHECK(contains_mod1(w, GoldenNum{5, 0}));          // integer translate
  CHECK_FALSE(contains_mod1(w, GoldenNum{-1, 1}));   // hi end open
  CHECK(contains_mod1(w, GoldenNum{-3, 2}));         // 2 phi - 3 ~ 0.236
  w.hi_closed = true;
  CHECK(contains_mod1(w, GoldenNum{-1, 1}));
  w.lo_closed = false;
  CHECK_FALSE(contains_mod1(w, GoldenNum{7, 0}));
}

TEST_CASE("digit detection examples") {
  for (int k = 2; k <= 10; ++k) CHECK(detect_low_digits(0, k) == 0);
  CHECK(detect_low_digits(17, 5) == 4);
  CHECK(detect_low_digits(8, 6) == 0);
  CHECK(detect_low_digits(12, 4) == v_below(12, 4));
}

TEST_CASE("digit detection equals the digit value at small scale") {
  for (std::uint64_t n = 0; n < 3000; ++n) {
    for (int k = 2; k <= 14; ++k) {
      REQUIRE(detect_low_digits(n, k) == v_below(n, k));
    }
  }
}

TEST_CASE("detection windows identify a unique digit value") {
  for (std::uint64_t n = 0; n < 377; ++n) {
    for (int k = 2; k <= 9; ++k) {
      const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
      int matches = 0;
      std::uint64_t matched = fib(k);
      for (std::uint64_t u = 0; u < fib(k); ++u) {
        GoldenNum x{0, sign * static_cast<std::int64_t>(n)};
        GoldenNum center{0, sign * static_cast<std::int64_t>(u)};
        if (contains_mod1(interval_Rk(k, u), x)) {
          ++matches;
          matched = u;
        }
        (void)center;
      }
      REQUIRE(matches == 1);
      REQUIRE(matched == v_below(n, k));
    }
  }
}

TEST_CASE("exact floor of n*phi") {
  const std::int64_t expected[10] = {0, 1, 3, 4, 6, 8, 9, 11, 12, 14};
  for (std::int64_t n = 0; n < 10; ++n) CHECK(floor_n_phi(n) == expected[n]);
  for (std::int64_t n = 0; n < 100000; ++n) {
    CHECK(floor_n_phi(n) ==
          static_cast<std::int64_t>(
              std::floor(static_cast<long double>(n) * kPhi)));
  }
  CHECK_THROWS_AS(floor_n_phi(-1), DomainError);
}

}  // TEST_SUITE
