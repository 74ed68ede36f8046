#pragma once

#include <cstdint>
#include <vector>

namespace vig {

// Modular arithmetic on 64-bit operands; intermediates are widened to 128
// bits so no combination of inputs can overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Smallest prime strictly greater than n.  Bertrand's postulate keeps the
// result within 2n + 2, so search cost is negligible next to generation.
std::uint64_t next_prime_above(std::uint64_t n);

// Distinct prime factors by trial division, ascending.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

// Smallest primitive root modulo prime p.
std::uint64_t primitive_root(std::uint64_t p);

// Parameters of the multiplicative-group permutation of [1, n]: the powers
// g^1, g^2, ..., g^(p-1) modulo p enumerate [1, p-1] exactly once, and the
// subsequence of values <= n is a permutation of [1, n].  Each value costs
// O(1) amortized because p <= 2n + 2 bounds the skip rate.
struct PermutationGenerator {
  std::uint64_t n = 0;  // domain size
  std::uint64_t p = 0;  // prime modulus, p > n
  std::uint64_t g = 0;  // primitive root of p

  // Requires n >= 1.  n == 1 degenerates to p = 2, g = 1.
  static PermutationGenerator make(std::uint64_t n);
};

// Streams the permutation.  The underlying power sequence has period p - 1,
// so after n emitted values the cursor begins an identical pass over [1, n];
// callers cycle a column's domain simply by continuing to call next().
// phase rotates the start point within the cycle without replaying it.
class PermutationCursor {
 public:
  PermutationCursor() = default;
  explicit PermutationCursor(const PermutationGenerator& gen, std::uint64_t phase = 0)
      : n_(gen.n), p_(gen.p), g_(gen.g), state_(pow_mod(gen.g, phase % (gen.p - 1) + 1, gen.p)) {}

  std::uint64_t next() {
    while (state_ > n_) state_ = mul_mod(state_, g_, p_);
    std::uint64_t out = state_;
    state_ = mul_mod(state_, g_, p_);
    return out;
  }

 private:
  std::uint64_t n_ = 1;
  std::uint64_t p_ = 2;
  std::uint64_t g_ = 1;
  std::uint64_t state_ = 1;
};

}  // namespace vig
