#include "vig/prng.hpp"

#include "vig/error.hpp"

namespace vig {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t acc = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // Miller-Rabin with the first twelve primes as witnesses is deterministic
  // for all n < 3.3e24, which covers the 64-bit range.
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_above(std::uint64_t n) {
  if (n < 2) return 2;
  std::uint64_t candidate = n + 1;
  if ((candidate & 1) == 0) ++candidate;
  while (!is_prime(candidate)) candidate += 2;
  return candidate;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q != 0) continue;
    factors.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  std::uint64_t order = p - 1;
  std::vector<std::uint64_t> factors = distinct_prime_factors(order);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool generates = true;
    for (std::uint64_t q : factors) {
      if (pow_mod(g, order / q, p) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  throw Error(ErrorKind::Internal, "no primitive root found for " + std::to_string(p));
}

PermutationGenerator PermutationGenerator::make(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::Internal, "permutation domain must be nonempty");
  if (n == 1) return PermutationGenerator{1, 2, 1};
  std::uint64_t p = next_prime_above(n);
  return PermutationGenerator{n, p, primitive_root(p)};
}

}  // namespace vig
