#pragma once

#include <cstdint>
#include <vector>

#include "zeckphi/errors.hpp"

namespace zeckphi {

// Fibonacci numbers F_0 = 0, F_1 = 1, F_k = F_{k-1} + F_{k-2}, precomputed up
// to a fixed index.  Values are 64-bit unsigned; construction fails loudly
// instead of wrapping (F_92 is the last Fibonacci number that fits).
class FibTable {
 public:
  static constexpr int kMax64 = 92;

  explicit FibTable(int max_index = kMax64);

  // F_k, or CapacityError if k is outside [0, max_index].
  std::uint64_t at(int k) const;

  int max_index() const { return static_cast<int>(values_.size()) - 1; }
  const std::vector<std::uint64_t>& values() const { return values_; }

 private:
  std::vector<std::uint64_t> values_;
};

// Shared read-only table covering every 64-bit Fibonacci number.
const FibTable& fib_table();

// F_k from the shared table.
std::uint64_t fib(int k);

// Largest value the digit operations accept: F_92 + F_91 - 1, the biggest
// integer whose expansion stays within the shared table.  Digit operations
// throw CapacityError above it.
std::uint64_t max_encodable();

// Zeckendorf representation: n = sum of F_i over `indices`, where the indices
// are strictly decreasing, all >= 2, and no two are adjacent.  The empty list
// represents 0.
struct ZeckRep {
  std::vector<int> indices;
};

// Greedy encoding (largest Fibonacci number first).  Uniqueness of the
// representation guarantees this matches any other correct method.
ZeckRep zeck_encode(std::uint64_t n);

// Sum of F_i over rep.indices.  ValidationError if the index list is not
// strictly decreasing with gaps >= 2, or contains an index < 2.
std::uint64_t zeck_decode(const ZeckRep& rep);

// Number of Zeckendorf digits of n (the minimal number of Fibonacci summands).
int s_phi(std::uint64_t n);

// The i-th Zeckendorf digit of n (0 or 1).  DomainError if i < 2.
int digit(std::uint64_t n, int i);

// Value of the digits of n strictly below position k:
// v(n, k) = sum over indices i < k of F_i.  Always < F_k.  DomainError if k < 2.
std::uint64_t v_below(std::uint64_t n, int k);

// Digit shift: every index incremented by one, so F_i contributions become
// F_{i+1}.  Preserves the digit count.  CapacityError if an index would leave
// the table.
std::uint64_t shift_S(std::uint64_t n);

// Window for separation tests: digits of the low part must vanish at and
// above k - r, digits of the high part at and below k + r.
struct SeparationSpec {
  int r = 0;  // margin, >= 0
  int k = 2;  // position, >= 2
};

// True iff digit(n1, i) = 0 for all i >= k - r and digit(n2, i) = 0 for all
// i <= k + r.  ValidationError on an invalid spec.
bool is_r_separated(std::uint64_t n1, std::uint64_t n2,
                    const SeparationSpec& spec);

// One block of a separated decomposition: the block's digits moved down so
// its lowest index is 2, plus the shift that restores the original position.
struct ShiftedPart {
  std::uint64_t part = 0;  // normalized block value
  int shift = 0;           // how many times to shift up when reassembling
};

// Splits n at every gap of >= 2r + 1 zeros between consecutive ones; the
// resulting blocks have no internal r-separated split, and shifted copies of
// distinct blocks are pairwise r-separated.  Applying shift_S `shift` times
// to each part and summing reproduces n.  Parts are listed low block first.
// DomainError if n = 0.
std::vector<ShiftedPart> decompose_indecomposable(std::uint64_t n, int r);

}  // namespace zeckphi
