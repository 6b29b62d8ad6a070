#include "zeckphi/genfun.hpp"

#include <cstdint>
#include <set>
#include <vector>

#include "doctest.h"
#include "zeckphi/zeck.hpp"

using namespace zeckphi;

namespace {

const PqSpec kTwoThree{2, 3, 6, 2};

}  // namespace

TEST_SUITE("genfun") {

TEST_CASE("offset sums") {
  CHECK(offset_value(OffsetSet{}, 7) == 0);
  CHECK(offset_value(OffsetSet{{2}}, 3) == 5);        // F_5
  CHECK(offset_value(OffsetSet{{1, 3}}, 4) == 18);    // F_5 + F_7
  CHECK_THROWS_AS(offset_value(OffsetSet{{80}}, 20), CapacityError);
}

TEST_CASE("offset validation, strict and relaxed") {
  CHECK_NOTHROW(validate_offsets(OffsetSet{}, 6));
  CHECK_NOTHROW(validate_offsets(OffsetSet{{1}}, 6));
  CHECK_NOTHROW(validate_offsets(OffsetSet{{2, 5}}, 6));
  CHECK_THROWS_AS(validate_offsets(OffsetSet{{0, 3}}, 6), ValidationError);
  CHECK_THROWS_AS(validate_offsets(OffsetSet{{3, 1}}, 6), ValidationError);
  CHECK_THROWS_AS(validate_offsets(OffsetSet{{1, 2}}, 6), ValidationError);
  CHECK_THROWS_AS(validate_offsets(OffsetSet{{1, 2}}, 6, true),
                  ValidationError);  // gap of 1 is never allowed
  // Upper bounds apply only in strict mode.
  CHECK_THROWS_AS(validate_offsets(OffsetSet{{13}}, 6), ValidationError);
  CHECK_NOTHROW(validate_offsets(OffsetSet{{13}}, 6, true));
  CHECK_THROWS_AS(validate_offsets(OffsetSet{{1, 16}}, 6), ValidationError);
  CHECK_NOTHROW(validate_offsets(OffsetSet{{1, 16}}, 6, true));
}

TEST_CASE("enumeration of unsplittable block members") {
  CHECK(enumerate_indecomposable(1, 3) == std::vector<std::uint64_t>{1});
  CHECK(enumerate_indecomposable(1, 4) == std::vector<std::uint64_t>{2});
  for (int r = 0; r <= 3; ++r) {
    for (int k = 3; k <= 15; ++k) {
      auto members = enumerate_indecomposable(r, k);
      // A single digit can never split.
      CHECK(members.front() == fib(k - 1));
      if (r == 0) CHECK(members.size() == 1);
    }
  }
}

TEST_CASE("enumeration of anchored members") {
  CHECK(enumerate_anchored(2, 3) == std::vector<std::uint64_t>{1});
  CHECK(enumerate_anchored(2, 4).empty());
  CHECK_THROWS_AS(enumerate_anchored(1, 5), DomainError);
  for (int k = 3; k <= 12; ++k) {
    for (std::uint64_t n : enumerate_anchored(3, k)) {
      CHECK(digit(n, 3) == 1);
      CHECK(v_below(n, 3) == 0);
    }
  }
}

TEST_CASE("series coefficients at small orders") {
  auto s = build_series(SeriesKind::kIndecomposable, kTwoThree, {}, 6);
  // Order 3 holds only n=1 with f(1) = 2.
  CHECK(s.coeffs[3].c == std::vector<std::int64_t>{0, 0, 1});
  // Order 4 holds only n=2 with f(2) = 4.
  CHECK(s.coeffs[4].c == std::vector<std::int64_t>{0, 0, 0, 0, 1});

  auto h = build_series(SeriesKind::kBlockDirect, kTwoThree, {}, 12);
  CHECK(h.coeffs[3].c == std::vector<std::int64_t>{0, 0, 1});
  CHECK(h.coeffs[4].c == std::vector<std::int64_t>{0, 0, 0, 0, 1});
  // At z=1 each order counts its whole block: F_{k-2}.
  for (int k = 3; k <= 12; ++k) CHECK(h.coeffs[k].eval(1) ==
                                      static_cast<std::int64_t>(fib(k - 2)));

  CHECK_THROWS_AS(build_series(SeriesKind::kBlockDirect, kTwoThree, {}, 33),
                  CapacityError);
  CHECK_THROWS_AS(build_series(SeriesKind::kAnchored, PqSpec{2, 3, 1, 2}, {},
                               6),
                  DomainError);
}

TEST_CASE("empty offset set collapses the offset series") {
  auto plain = build_series(SeriesKind::kAnchored, kTwoThree, {}, 14);
  auto offset = build_series(SeriesKind::kAnchoredOffset, kTwoThree, {}, 14);
  for (int k = 0; k <= 14; ++k) CHECK(plain.coeffs[k].c == offset.coeffs[k].c);
}

TEST_CASE("series construction is deterministic across worker counts") {
  auto one = build_series(SeriesKind::kBlockDirect, kTwoThree, {{1}}, 14, 1);
  auto four = build_series(SeriesKind::kBlockDirect, kTwoThree, {{1}}, 14, 4);
  for (int k = 0; k <= 14; ++k) CHECK(one.coeffs[k].c == four.coeffs[k].c);
}

TEST_CASE("rational form reproduces the block series exactly") {
  for (int z : {1, -1}) {
    auto report = verify_identity(kTwoThree, {}, 18, z);
    CHECK(report.max_abs_discrepancy == 0);
    CHECK(report.first_bad_k == -1);
  }
  auto report = verify_identity(kTwoThree, {{1}}, 16, 1);
  CHECK(report.max_abs_discrepancy == 0);
  report = verify_identity(kTwoThree, {{2, 5}}, 16, -1);
  CHECK(report.max_abs_discrepancy == 0);
}

TEST_CASE("rational form also holds for the plain digit sum") {
  PqSpec identity{1, 1, 2, 2};
  for (int z : {1, -1}) {
    auto report = verify_identity(identity, {}, 16, z);
    CHECK(report.max_abs_discrepancy == 0);
  }
}

TEST_CASE("growth-rate root enclosures") {
  const double frozen[5] = {1.5341577449142669, 1.5900053739013639,
                            1.6079827279282011, 1.6143068232571485,
                            1.6166296843945727};
  double prev = 1.0;
  for (int r = 2; r <= 6; ++r) {
    RootEnclosure e = phi_r_root(r, 1e-10L);
    CHECK(e.sign_change_certified);
    CHECK(static_cast<double>(e.hi - e.lo) <= 1e-10);
    CHECK(static_cast<double>(e.lo) > 1.0);
    CHECK(static_cast<double>(e.hi) < 1.6180339887498949);
    const double v = frozen[r - 2];
    CHECK(static_cast<double>(e.lo) <= v);
    CHECK(v <= static_cast<double>(e.hi));
    CHECK(static_cast<double>(e.lo) > prev);
    prev = static_cast<double>(e.hi);
  }
  RootEnclosure tight = phi_r_root(2, 1e-6L);
  CHECK(static_cast<double>(tight.lo) < 1.54);
  CHECK(static_cast<double>(tight.hi) > 1.53);
  CHECK(tight.lo_decimal.substr(0, 8) == "1.534157");
  CHECK_THROWS_AS(phi_r_root(0, 1e-6L), ValidationError);
}

TEST_CASE("per-length counts at radius two") {
  CountGrowthReport report = check_count_growth(2, 60);
  const std::uint64_t frozen_ind[18] = {1,  1,  2,   3,   5,   8,
                                        12, 19, 29,  45,  69,  106,
                                        163, 250, 384, 589, 904, 1387};
  const std::uint64_t frozen_anc[18] = {1,  0,  1,  1,  2,   3,   4,  7, 10,
                                        16, 24, 37, 57, 87, 134, 205, 315, 483};
  for (int k = 3; k <= 20; ++k) {
    CHECK(report.indecomposable_counts[k] == frozen_ind[k - 3]);
    CHECK(report.anchored_counts[k] == frozen_anc[k - 3]);
  }
  CHECK(report.matches_enumeration);
  CHECK(report.matches_closed_form);
  CHECK(report.bound_violations.empty());
  CHECK(report.growth_rate == doctest::Approx(1.5341577449).epsilon(1e-9));
  CHECK(report.fitted_constant == doctest::Approx(0.2769427).epsilon(1e-5));
  // Ratios settle near the root by k = 40.
  for (std::size_t i = 37; i < report.ratios.size(); ++i) {
    CHECK(report.ratios[i] > report.growth_rate - 0.02);
    CHECK(report.ratios[i] < report.growth_rate + 0.02);
  }
}

TEST_CASE("counts when the gap constraint is vacuous") {
  // 2r+1 >= k: every block member qualifies, so counts are block sizes.
  CountGrowthReport report = check_count_growth(30, 20);
  for (int k = 3; k <= 20; ++k) {
    CHECK(report.indecomposable_counts[k] == fib(k - 2));
  }
  CHECK(report.matches_enumeration);
}

TEST_CASE("counts at radius zero are all one") {
  CountGrowthReport report = check_count_growth(0, 30);
  for (int k = 3; k <= 30; ++k) CHECK(report.indecomposable_counts[k] == 1);
  CHECK(report.growth_rate == 1.0);
  CHECK_THROWS_AS(check_count_growth(2, 61), ValidationError);
  CHECK_THROWS_AS(check_count_growth(-1, 40), ValidationError);
}

TEST_CASE("zero-free probe at radius two") {
  PqSpec spec{2, 3, 2, 2};
  ZeroFreeReport report = probe_zero_free(
      spec, 25, {0.3L, 0.5L, (std::sqrt(5.0L) - 1) / 2});
  CHECK(static_cast<double>(report.x0_term) ==
        doctest::Approx(0.276307).epsilon(1e-4));
  CHECK(static_cast<double>(report.x0_value) ==
        doctest::Approx(0.894341).epsilon(1e-4));
  CHECK(static_cast<double>(report.x0_distance) ==
        doctest::Approx(0.105659).epsilon(1e-4));
  CHECK(report.increasing_in_order);
  CHECK(static_cast<double>(report.min_grid_distance) > 0.0);
  CHECK(report.alternating_dominated);
  CHECK(static_cast<double>(report.tail_bound) > 0.0);

  CHECK_THROWS_AS(probe_zero_free(spec, 25, {0.7L}), ValidationError);
  CHECK_THROWS_AS(probe_zero_free(spec, 40, {0.3L}), CapacityError);
  CHECK_THROWS_AS(probe_zero_free(PqSpec{2, 3, 1, 2}, 20, {0.3L}),
                  DomainError);
}

TEST_CASE("every integer maps to exactly one part tuple") {
  // The decomposition grammar behind the rational form: distinct integers
  // give distinct part tuples, and the tuple reassembles its integer.
  std::set<std::vector<std::uint64_t>> seen;
  std::uint64_t total = 0;
  for (int k = 3; k <= 16; ++k) {
    for (std::uint64_t n = fib(k - 1); n < fib(k); ++n) {
      auto parts = decompose_indecomposable(n, 6);
      std::vector<std::uint64_t> key;
      std::uint64_t value = 0;
      for (const auto& part : parts) {
        key.push_back(part.part);
        key.push_back(static_cast<std::uint64_t>(part.shift));
        std::uint64_t block = part.part;
        for (int j = 0; j < part.shift; ++j) block = shift_S(block);
        value += block;
      }
      REQUIRE(value == n);
      seen.insert(key);
      ++total;
    }
  }
  CHECK(seen.size() == total);
}

}  // TEST_SUITE
