#include "zeckphi/zeck.hpp"

#include <cstdint>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

using namespace zeckphi;

TEST_SUITE("zeck") {

TEST_CASE("fibonacci table basics") {
  CHECK(fib(0) == 0);
  CHECK(fib(1) == 1);
  CHECK(fib(2) == 1);
  CHECK(fib(10) == 55);
  CHECK(fib(92) == 7540113804746346429ULL);
  CHECK_THROWS_AS(fib(93), CapacityError);
  CHECK_THROWS_AS(fib(-1), CapacityError);
  CHECK_THROWS_AS(FibTable(93), CapacityError);
  FibTable small(10);
  CHECK(small.max_index() == 10);
  CHECK(small.at(10) == 55);
  CHECK_THROWS_AS(small.at(11), CapacityError);
}

TEST_CASE("table recurrence holds everywhere") {
  const auto& vals = fib_table().values();
  for (std::size_t k = 2; k < vals.size(); ++k) {
    CHECK(vals[k] == vals[k - 1] + vals[k - 2]);
  }
  CHECK(fib_table().max_index() == FibTable::kMax64);
}

TEST_CASE("encode examples") {
  CHECK(zeck_encode(0).indices.empty());
  CHECK(zeck_encode(4).indices == std::vector<int>{4, 2});
  CHECK(zeck_encode(17).indices == std::vector<int>{7, 4, 2});
}

TEST_CASE("decode examples and validation") {
  CHECK(zeck_decode(ZeckRep{{}}) == 0);
  CHECK(zeck_decode(ZeckRep{{2}}) == 1);
  CHECK(zeck_decode(ZeckRep{{7, 4, 2}}) == 17);
  CHECK_THROWS_AS(zeck_decode(ZeckRep{{3, 2}}), ValidationError);   // adjacent
  CHECK_THROWS_AS(zeck_decode(ZeckRep{{1}}), ValidationError);      // below 2
  CHECK_THROWS_AS(zeck_decode(ZeckRep{{4, 4}}), ValidationError);   // repeated
  CHECK_THROWS_AS(zeck_decode(ZeckRep{{2, 7}}), ValidationError);   // ascending
}

TEST_CASE("round trip and non-adjacency for n < 10^6") {
  for (std::uint64_t n = 0; n < 1000000; ++n) {
    ZeckRep rep = zeck_encode(n);
    for (std::size_t i = 0; i < rep.indices.size(); ++i) {
      CHECK(rep.indices[i] >= 2);
      if (i > 0) CHECK(rep.indices[i - 1] - rep.indices[i] >= 2);
    }
    REQUIRE(zeck_decode(rep) == n);
  }
}

TEST_CASE("encode matches an independent greedy reference") {
  for (std::uint64_t n : {0ULL, 1ULL, 55ULL, 56ULL, 832040ULL,
                          987654321987654321ULL, 7540113804746346428ULL}) {
    CHECK(zeck_encode(n).indices == testing::greedy_indices_reference(n));
  }
}

TEST_CASE("encode capacity boundary") {
  const std::uint64_t top = max_encodable();
  CHECK(zeck_decode(zeck_encode(top)) == top);
  CHECK(zeck_encode(top).indices.front() == 92);
  CHECK_THROWS_AS(zeck_encode(top + 1), CapacityError);
  CHECK_THROWS_AS(s_phi(top + 1), CapacityError);
}

TEST_CASE("digit count examples") {
  CHECK(s_phi(0) == 0);
  CHECK(s_phi(12) == 3);  // 12 = 8 + 3 + 1
  CHECK(s_phi(17) == 3);  // 17 = 13 + 3 + 1
}

TEST_CASE("digit count equals minimal summand count below 10^5") {
  for (std::uint64_t n = 0; n < testing::kMinOracleBound; ++n) {
    REQUIRE(s_phi(n) == testing::s_phi_min_oracle(n));
  }
  CHECK_THROWS_AS(testing::s_phi_min_oracle(testing::kMinOracleBound + 1),
                  CapacityError);
}

TEST_CASE("parity prefix of the digit count") {
  const int expected[24] = {0, 1, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0,
                            1, 1, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0};
  for (int n = 0; n < 24; ++n) {
    CHECK(s_phi(static_cast<std::uint64_t>(n)) % 2 == expected[n]);
  }
}

TEST_CASE("digit examples") {
  CHECK(digit(17, 7) == 1);
  CHECK(digit(17, 3) == 0);
  CHECK(digit(0, 5) == 0);
  CHECK_THROWS_AS(digit(17, 1), DomainError);
}

TEST_CASE("low-digit value examples") {
  CHECK(v_below(17, 5) == 4);  // F_4 + F_2
  CHECK(v_below(17, 2) == 0);
  CHECK(v_below(12345, 2) == 0);
  CHECK(v_below(8, 6) == 0);  // 8 = F_6 alone
  CHECK_THROWS_AS(v_below(8, 1), DomainError);
  for (std::uint64_t n = 0; n < 2000; ++n) {
    for (int k = 2; k <= 20; ++k) {
      CHECK(v_below(n, k) < fib(k));
    }
  }
}

TEST_CASE("shift examples and invariance") {
  CHECK(shift_S(0) == 0);
  CHECK(shift_S(1) == 2);                 // F_2 -> F_3
  CHECK(shift_S(4) == 7);                 // F_4 + F_2 -> F_5 + F_3
  CHECK(shift_S(fib(91)) == fib(92));
  CHECK_THROWS_AS(shift_S(fib(92)), CapacityError);
  for (std::uint64_t n = 0; n < 1000000; ++n) {
    REQUIRE(s_phi(shift_S(n)) == s_phi(n));
  }
}

TEST_CASE("additivity of the digit count on 0-separated pairs") {
  // Any cut of a Zeckendorf expansion yields a 0-separated pair, and the
  // digit count must add across the cut.
  for (std::uint64_t n = 1; n < 100000; ++n) {
    ZeckRep rep = zeck_encode(n);
    for (std::size_t cut = 1; cut < rep.indices.size(); ++cut) {
      std::uint64_t high = 0, low = 0;
      for (std::size_t i = 0; i < rep.indices.size(); ++i) {
        (i < cut ? high : low) += fib(rep.indices[i]);
      }
      int k = rep.indices[cut] + 1;  // slot between the two blocks
      REQUIRE(is_r_separated(low, high, SeparationSpec{0, k}));
      REQUIRE(s_phi(low) + s_phi(high) == s_phi(n));
    }
  }
}

TEST_CASE("separation examples") {
  CHECK(is_r_separated(1, 5, SeparationSpec{0, 4}));
  CHECK_FALSE(is_r_separated(1, 2, SeparationSpec{0, 3}));
  CHECK(is_r_separated(0, 21, SeparationSpec{2, 5}));  // zero has no digits
  CHECK(is_r_separated(0, 0, SeparationSpec{3, 7}));
  CHECK_FALSE(is_r_separated(5, 55, SeparationSpec{1, 5}));  // n1 digit at 5
  CHECK_THROWS_AS(is_r_separated(1, 5, SeparationSpec{-1, 4}), ValidationError);
  CHECK_THROWS_AS(is_r_separated(1, 5, SeparationSpec{0, 1}), ValidationError);
}

TEST_CASE("decomposition examples") {
  // 56 = F_2 + F_10: the gap of 7 zeros >= 2*1 + 1 splits it.
  auto parts = decompose_indecomposable(56, 1);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].part == 1);
  CHECK(parts[0].shift == 0);
  CHECK(parts[1].part == 1);
  CHECK(parts[1].shift == 8);

  // 4 = F_2 + F_4: a single zero between the ones, no split at r = 1.
  parts = decompose_indecomposable(4, 1);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].part == 4);
  CHECK(parts[0].shift == 0);

  CHECK_THROWS_AS(decompose_indecomposable(0, 1), DomainError);
}

TEST_CASE("decomposition soundness for n < 10^5, r in {1,2,3}") {
  for (int r = 1; r <= 3; ++r) {
    for (std::uint64_t n = 1; n < 100000; ++n) {
      auto parts = decompose_indecomposable(n, r);
      std::uint64_t reassembled = 0;
      for (const auto& piece : parts) {
        // Each part must itself be indecomposable at the same radius.
        REQUIRE(decompose_indecomposable(piece.part, r).size() == 1);
        std::uint64_t shifted = piece.part;
        for (int s = 0; s < piece.shift; ++s) shifted = shift_S(shifted);
        reassembled += shifted;
      }
      REQUIRE(reassembled == n);
    }
  }
}

TEST_CASE("shifted blocks of a decomposition are pairwise separated") {
  for (std::uint64_t n = 1; n < 20000; ++n) {
    const int r = 2;
    auto parts = decompose_indecomposable(n, r);
    std::vector<std::uint64_t> blocks;
    for (const auto& piece : parts) {
      std::uint64_t shifted = piece.part;
      for (int s = 0; s < piece.shift; ++s) shifted = shift_S(shifted);
      blocks.push_back(shifted);
    }
    for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
      // The low block's top index and the next block's bottom index straddle
      // a window of width r on both sides of some position k.
      int top = zeck_encode(blocks[i]).indices.front();
      bool found = false;
      for (int k = top + 1; k <= top + 2 * r + 2 && !found; ++k) {
        if (k >= 2) found = is_r_separated(blocks[i], blocks[i + 1],
                                           SeparationSpec{r, k});
      }
      REQUIRE(found);
    }
  }
}

}  // TEST_SUITE
