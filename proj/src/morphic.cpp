#include "zeckphi/morphic.hpp"

#include <limits>
#include <utility>

#include "zeckphi/golden.hpp"
#include "zeckphi/zeck.hpp"

namespace zeckphi {

void validate_prolongable(const Morphism& m) {
  if (m.rules.empty()) throw ValidationError("morphism has no rules");
  if (m.rules.find(m.seed) == m.rules.end()) {
    throw ValidationError("seed letter has no rule");
  }
  for (const auto& [letter, image] : m.rules) {
    if (image.empty()) {
      throw ValidationError(std::string("empty rule for '") + letter + "'");
    }
    for (char c : image) {
      if (m.rules.find(c) == m.rules.end()) {
        throw ValidationError(std::string("rule output '") + c +
                              "' is outside the alphabet");
      }
    }
  }
  const std::string& seed_rule = m.rules.at(m.seed);
  if (seed_rule.front() != m.seed) {
    throw ValidationError("seed rule must start with the seed letter");
  }
  if (seed_rule.size() < 2) {
    throw ValidationError("seed rule must have length at least 2");
  }
}

FixedPointStream::FixedPointStream(Morphism m) : m_(std::move(m)) {
  validate_prolongable(m_);
  word_ = m_.rules.at(m_.seed);
  expand_pos_ = 1;
}

void FixedPointStream::grow_to(std::uint64_t size) {
  if (size > word_.capacity()) word_.reserve(size + 8);
  // Self-reading expansion: the word is its own image under the rules, so
  // appending rule(word[expand_pos]) extends the common prefix.
  while (word_.size() < size) {
    word_ += m_.rules.at(word_[expand_pos_]);
    ++expand_pos_;
  }
}

char FixedPointStream::letter_at(std::uint64_t n) {
  grow_to(n + 1);
  return word_[n];
}

std::string FixedPointStream::prefix(std::uint64_t count) {
  grow_to(count);
  return word_.substr(0, count);
}

Morphism parity_morphism() {
  Morphism m;
  m.rules = {{'a', "ab"}, {'b', "c"}, {'c', "cd"}, {'d', "a"}};
  m.seed = 'a';
  return m;
}

Coding parity_coding() {
  Coding c;
  c.out = {{'a', 0}, {'b', 1}, {'c', 1}, {'d', 0}};
  return c;
}

Morphism fibonacci_morphism() {
  Morphism m;
  m.rules = {{'0', "01"}, {'1', "0"}};
  m.seed = '0';
  return m;
}

std::vector<int> coded_prefix(const Morphism& m, const Coding& c,
                              std::uint64_t count) {
  FixedPointStream stream(m);
  std::string letters = stream.prefix(count);
  std::vector<int> out;
  out.reserve(letters.size());
  for (char letter : letters) {
    auto it = c.out.find(letter);
    if (it == c.out.end()) {
      throw ValidationError(std::string("coding does not cover '") + letter +
                            "'");
    }
    out.push_back(it->second);
  }
  return out;
}

std::vector<int> parity_prefix(std::uint64_t count) {
  return coded_prefix(parity_morphism(), parity_coding(), count);
}

int fibonacci_word(std::uint64_t n) {
  if (n == 0) throw DomainError("fibonacci_word is defined for n >= 1");
  if (n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) - 1) {
    throw CapacityError("fibonacci_word position too large");
  }
  const auto sn = static_cast<std::int64_t>(n);
  return static_cast<int>(2 + floor_n_phi(sn) - floor_n_phi(sn + 1));
}

std::vector<KernelWitness> kkernel_distinctness(
    int k, const std::vector<int>& lambdas, std::uint64_t horizon) {
  if (k < 2) throw ValidationError("kernel base k must be at least 2");
  if (lambdas.empty()) throw ValidationError("no exponents given");
  for (int lam : lambdas) {
    if (lam < 0) throw ValidationError("exponents must be nonnegative");
  }

  // k^lambda, guarding the later k^lambda * n products.
  std::vector<std::uint64_t> powers;
  for (int lam : lambdas) {
    std::uint64_t p = 1;
    for (int i = 0; i < lam; ++i) {
      if (p > std::numeric_limits<std::uint64_t>::max() / k) {
        throw CapacityError("k^lambda overflows");
      }
      p *= static_cast<std::uint64_t>(k);
    }
    if (horizon != 0 &&
        p > std::numeric_limits<std::uint64_t>::max() / horizon) {
      throw CapacityError("k^lambda * horizon overflows");
    }
    powers.push_back(p);
  }

  std::vector<KernelWitness> out;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
      KernelWitness w;
      w.lambda1 = lambdas[i];
      w.lambda2 = lambdas[j];
      for (std::uint64_t n = 0; n < horizon; ++n) {
        int t1 = static_cast<int>(s_phi(powers[i] * n) % 2);
        int t2 = static_cast<int>(s_phi(powers[j] * n) % 2);
        if (t1 != t2) {
          w.n = n;
          w.found = true;
          break;
        }
      }
      out.push_back(w);
    }
  }
  return out;
}

}  // namespace zeckphi
