#pragma once

#include <gmpxx.h>

#include <cstddef>

#include "fairx/common/bytes.hpp"

namespace fairx {

using BigInt = mpz_class;

// Minimal big-endian magnitude. Zero encodes as a single 0x00 byte.
Bytes int_to_bytes(const BigInt& v);

// Big-endian magnitude padded on the left to exactly `width` bytes.
Bytes int_to_bytes_padded(const BigInt& v, std::size_t width);

BigInt int_from_bytes(ByteView bytes);

std::size_t bit_length(const BigInt& v);

BigInt mod_inverse(const BigInt& a, const BigInt& m);

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace fairx
