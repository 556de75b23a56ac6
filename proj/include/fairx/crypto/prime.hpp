#pragma once

#include <optional>

#include "fairx/crypto/bigint.hpp"
#include "fairx/crypto/random.hpp"

namespace fairx {

inline constexpr int kMillerRabinRounds = 64;

// Trial division by small primes, then Miller-Rabin with random bases.
// 64 rounds bound the error for composites by 4^-64.
bool is_probable_prime(const BigInt& n, Rng& rng, int rounds = kMillerRabinRounds);

// A prime with exactly `bits` bits, coprime to `coprime_to` when given.
// Throws CryptoError when no such prime turns up within the retry budget.
BigInt generate_prime(std::size_t bits, Rng& rng, const std::optional<BigInt>& coprime_to = {});

}  // namespace fairx
