#include "zeckphi/zeck.hpp"

#include <algorithm>

namespace zeckphi {

FibTable::FibTable(int max_index) {
  if (max_index < 1) throw ValidationError("FibTable needs max_index >= 1");
  if (max_index > kMax64) {
    // Capped so that the sum of any two table entries still fits 64 bits;
    // one index higher and shifting the top entry would silently wrap.
    throw CapacityError("Fibonacci table capped at index " +
                        std::to_string(kMax64));
  }
  values_.reserve(static_cast<std::size_t>(max_index) + 1);
  values_.push_back(0);
  values_.push_back(1);
  for (int k = 2; k <= max_index; ++k) {
    std::uint64_t next = 0;
    if (__builtin_add_overflow(values_[k - 1], values_[k - 2], &next)) {
      throw CapacityError("Fibonacci number at index " + std::to_string(k) +
                          " exceeds 64-bit capacity");
    }
    values_.push_back(next);
  }
}

std::uint64_t FibTable::at(int k) const {
  if (k < 0 || k > max_index()) {
    throw CapacityError("Fibonacci index " + std::to_string(k) +
                        " outside table capacity [0, " +
                        std::to_string(max_index()) + "]");
  }
  return values_[static_cast<std::size_t>(k)];
}

const FibTable& fib_table() {
  static const FibTable table;
  return table;
}

std::uint64_t fib(int k) { return fib_table().at(k); }

std::uint64_t max_encodable() {
  // Largest value whose expansion stays within the table: all the odd (or
  // all the even) positions up to the top index set, which telescopes to
  // F_93 - 1 = F_92 + F_91 - 1.
  static const std::uint64_t bound = fib(92) + fib(91) - 1;
  return bound;
}

namespace {

// Largest k with F_k <= n, for n >= 1.
int top_index(std::uint64_t n) {
  const auto& vals = fib_table().values();
  auto it = std::upper_bound(vals.begin() + 2, vals.end(), n);
  return static_cast<int>(it - vals.begin()) - 1;
}

// Walks the greedy expansion of n, calling visit(index) for each digit in
// descending index order.
template <class Visit>
void for_each_digit(std::uint64_t n, Visit visit) {
  if (n == 0) return;
  if (n > max_encodable()) {
    throw CapacityError("value " + std::to_string(n) +
                        " exceeds the largest encodable value " +
                        std::to_string(max_encodable()));
  }
  const auto& vals = fib_table().values();
  int k = top_index(n);
  while (n > 0) {
    while (vals[static_cast<std::size_t>(k)] > n) --k;
    visit(k);
    n -= vals[static_cast<std::size_t>(k)];
    k -= 2;  // non-adjacency: the next digit is at least two below
  }
}

}  // namespace

ZeckRep zeck_encode(std::uint64_t n) {
  ZeckRep rep;
  for_each_digit(n, [&](int k) { rep.indices.push_back(k); });
  return rep;
}

std::uint64_t zeck_decode(const ZeckRep& rep) {
  std::uint64_t total = 0;
  int prev = 0;
  bool first = true;
  for (int i : rep.indices) {
    if (i < 2) {
      throw ValidationError("Zeckendorf index " + std::to_string(i) +
                            " below minimum position 2");
    }
    if (!first && prev - i < 2) {
      throw ValidationError(
          "Zeckendorf indices must be strictly decreasing with gaps >= 2; "
          "got " +
          std::to_string(prev) + " followed by " + std::to_string(i));
    }
    total += fib(i);  // cannot overflow: indices <= 92 are distinct, non-adjacent
    prev = i;
    first = false;
  }
  return total;
}

int s_phi(std::uint64_t n) {
  int count = 0;
  for_each_digit(n, [&](int) { ++count; });
  return count;
}

int digit(std::uint64_t n, int i) {
  if (i < 2) throw DomainError("digit position must be >= 2");
  int found = 0;
  for_each_digit(n, [&](int k) {
    if (k == i) found = 1;
  });
  return found;
}

std::uint64_t v_below(std::uint64_t n, int k) {
  if (k < 2) throw DomainError("digit position must be >= 2");
  std::uint64_t value = 0;
  for_each_digit(n, [&](int i) {
    if (i < k) value += fib(i);
  });
  return value;
}

std::uint64_t shift_S(std::uint64_t n) {
  const int max_index = fib_table().max_index();
  std::uint64_t total = 0;
  for_each_digit(n, [&](int i) {
    if (i + 1 > max_index) {
      throw CapacityError("digit shift leaves the Fibonacci table");
    }
    std::uint64_t shifted = fib(i + 1);
    if (__builtin_add_overflow(total, shifted, &total)) {
      throw CapacityError("digit shift overflows 64 bits");
    }
  });
  return total;
}

bool is_r_separated(std::uint64_t n1, std::uint64_t n2,
                    const SeparationSpec& spec) {
  if (spec.r < 0) throw ValidationError("separation margin must be >= 0");
  if (spec.k < 2) throw ValidationError("separation position must be >= 2");
  bool ok = true;
  for_each_digit(n1, [&](int i) {
    if (i >= spec.k - spec.r) ok = false;
  });
  if (!ok) return false;
  for_each_digit(n2, [&](int i) {
    if (i <= spec.k + spec.r) ok = false;
  });
  return ok;
}

std::vector<ShiftedPart> decompose_indecomposable(std::uint64_t n, int r) {
  if (n == 0) throw DomainError("cannot decompose 0");
  if (r < 0) throw ValidationError("separation margin must be >= 0");

  std::vector<int> ascending;
  for_each_digit(n, [&](int i) { ascending.push_back(i); });
  std::reverse(ascending.begin(), ascending.end());

  // Cut between consecutive ones whenever at least 2r + 1 zeros lie between
  // them, i.e. the index difference is >= 2r + 2.
  std::vector<ShiftedPart> parts;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= ascending.size(); ++i) {
    if (i == ascending.size() ||
        ascending[i] - ascending[i - 1] >= 2 * r + 2) {
      const int shift = ascending[start] - 2;
      std::uint64_t value = 0;
      for (std::size_t j = start; j < i; ++j) value += fib(ascending[j] - shift);
      parts.push_back(ShiftedPart{value, shift});
      start = i;
    }
  }
  return parts;
}

}  // namespace zeckphi
