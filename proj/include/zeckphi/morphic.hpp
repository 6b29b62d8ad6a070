#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zeckphi/errors.hpp"

namespace zeckphi {

// A substitution on a finite alphabet of single characters.
struct Morphism {
  std::map<char, std::string> rules;
  char seed = 0;
};

// A letter-to-digit output coding.
struct Coding {
  std::map<char, int> out;
};

// Throws ValidationError unless every rule maps into the alphabet, the seed
// rule starts with the seed, and the seed rule has length >= 2 (so the fixed
// point is infinite and self-reading expansion makes progress).
void validate_prolongable(const Morphism& m);

// Lazily generated fixed point sigma^inf(seed), with an optional coding.
class FixedPointStream {
 public:
  explicit FixedPointStream(Morphism m);

  // Letter at position n (0-based), growing the buffer on demand.
  char letter_at(std::uint64_t n);
  // First `count` letters.
  std::string prefix(std::uint64_t count);

 private:
  void grow_to(std::uint64_t size);

  Morphism m_;
  std::string word_;
  std::uint64_t expand_pos_ = 0;
};

// The four-letter system whose coded fixed point is the digit-sum parity:
//   a -> ab, b -> c, c -> cd, d -> a   with coding a,d -> 0 and b,c -> 1.
Morphism parity_morphism();
Coding parity_coding();

// The 0 -> 01, 1 -> 0 system generating the golden-rotation word.
Morphism fibonacci_morphism();

// Coded prefix of a fixed point.
std::vector<int> coded_prefix(const Morphism& m, const Coding& c,
                              std::uint64_t count);

// Parity of the Zeckendorf digit sum, read off the coded fixed point.
std::vector<int> parity_prefix(std::uint64_t count);

// x_n = 2 + floor(n phi) - floor((n+1) phi) for n >= 1, computed exactly.
// Throws DomainError for n = 0.
int fibonacci_word(std::uint64_t n);

// One witness that two subsequences n -> t(k^lambda1 n) and
// n -> t(k^lambda2 n) of the parity sequence differ.
struct KernelWitness {
  int lambda1 = 0;
  int lambda2 = 0;
  std::uint64_t n = 0;      // first position where they differ
  bool found = false;
};

// For each unordered pair from `lambdas`, search n < horizon for a position
// where the two k-power subsequences of the parity sequence disagree.
// Throws CapacityError if k^lambda * horizon cannot be represented.
std::vector<KernelWitness> kkernel_distinctness(
    int k, const std::vector<int>& lambdas, std::uint64_t horizon);

}  // namespace zeckphi
