#include "fairx/crypto/prime.hpp"

#include <vector>

namespace fairx {

namespace {

const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long kLimit = 2000;
    std::vector<bool> composite(kLimit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(const BigInt& n, const BigInt& n_minus_1, const BigInt& odd,
                        unsigned long twos, const BigInt& base) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), odd.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < twos; ++i) {
    x = (x * x) % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool is_probable_prime(const BigInt& n, Rng& rng, int rounds) {
  if (n < 2) return false;
  for (unsigned long p : small_primes()) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) return false;
  }
  BigInt n_minus_1 = n - 1;
  BigInt odd = n_minus_1;
  unsigned long twos = mpz_scan1(odd.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), twos);
  BigInt upper = n - 2;
  for (int i = 0; i < rounds; ++i) {
    BigInt base = rng.between(2, upper);
    if (!miller_rabin_round(n, n_minus_1, odd, twos, base)) return false;
  }
  return true;
}

BigInt generate_prime(std::size_t bits, Rng& rng, const std::optional<BigInt>& coprime_to) {
  if (bits < 2) throw CryptoError("prime bit-length must be at least 2");
  const std::size_t budget = 200 * bits + 1000;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    BigInt candidate = rng.bits(bits);
    mpz_setbit(candidate.get_mpz_t(), bits - 1);
    if (bits > 2) mpz_setbit(candidate.get_mpz_t(), 0);
    if (!is_probable_prime(candidate, rng)) continue;
    if (coprime_to && gcd(candidate, *coprime_to) != 1) continue;
    return candidate;
  }
  throw CryptoError("prime generation exhausted its retry budget for " + std::to_string(bits) +
                    "-bit constraints");
}

}  // namespace fairx
