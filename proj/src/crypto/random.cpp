#include "fairx/crypto/random.hpp"

#include <array>

#include "fairx/crypto/hash.hpp"

namespace fairx {

namespace {
std::mt19937_64 make_engine(std::uint64_t seed, std::string_view label) {
  Digest d = hash(ByteView(reinterpret_cast<const std::uint8_t*>(label.data()), label.size()));
  std::array<std::uint32_t, 10> words{};
  words[0] = static_cast<std::uint32_t>(seed);
  words[1] = static_cast<std::uint32_t>(seed >> 32);
  for (std::size_t i = 0; i < 8; ++i) {
    words[2 + i] = read_u32_be(ByteView(d.bytes).subspan(i * 4, 4));
  }
  std::seed_seq seq(words.begin(), words.end());
  return std::mt19937_64(seq);
}
}  // namespace

Rng::Rng(std::uint64_t seed, std::string_view label) : engine_(make_engine(seed, label)) {}

Bytes Rng::bytes(std::size_t count) {
  Bytes out;
  out.reserve(count + 8);
  while (out.size() < count) {
    std::uint64_t w = engine_();
    for (int i = 0; i < 8 && out.size() < count; ++i) {
      out.push_back(static_cast<std::uint8_t>(w >> (56 - 8 * i)));
    }
  }
  return out;
}

BigInt Rng::bits(std::size_t bits) {
  if (bits == 0) return 0;
  Bytes raw = bytes((bits + 7) / 8);
  std::size_t excess = raw.size() * 8 - bits;
  raw[0] &= static_cast<std::uint8_t>(0xff >> excess);
  return int_from_bytes(raw);
}

BigInt Rng::below(const BigInt& bound) {
  if (bound <= 0) throw CryptoError("random bound must be positive");
  std::size_t nbits = bit_length(bound);
  // Rejection sampling keeps the draw uniform.
  for (;;) {
    BigInt v = bits(nbits);
    if (v < bound) return v;
  }
}

BigInt Rng::between(const BigInt& lo, const BigInt& hi) {
  if (hi < lo) throw CryptoError("empty random range");
  BigInt span = hi - lo + 1;
  return lo + below(span);
}

Rng Rng::fork(std::string_view label) { return Rng(engine_(), label); }

}  // namespace fairx
