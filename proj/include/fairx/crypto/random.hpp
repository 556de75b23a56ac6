#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "fairx/common/bytes.hpp"
#include "fairx/crypto/bigint.hpp"

namespace fairx {

// Seedable random source. Every random choice in the library is drawn from
// one of these so that runs replay bit-exactly. Independent streams are
// derived from (seed, label) so that adding draws to one role does not
// perturb another.
//
// Not a CSPRNG: the stream is a Mersenne twister, which is fine for a
// simulation but not for keys that must resist a real attacker.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::string_view label = "");

  std::uint64_t next_u64() { return engine_(); }

  Bytes bytes(std::size_t count);

  // Uniform integer in [0, 2^bits).
  BigInt bits(std::size_t bits);

  // Uniform integer in [0, bound). bound must be positive.
  BigInt below(const BigInt& bound);

  // Uniform integer in [lo, hi].
  BigInt between(const BigInt& lo, const BigInt& hi);

  // A child stream labelled relative to this one.
  Rng fork(std::string_view label);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fairx
