#include "fairx/crypto/bigint.hpp"

namespace fairx {

Bytes int_to_bytes(const BigInt& v) {
  if (sgn(v) < 0) throw CryptoError("cannot encode a negative integer");
  if (v == 0) return Bytes{0x00};
  std::size_t count = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  Bytes out(count);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(written);
  return out;
}

Bytes int_to_bytes_padded(const BigInt& v, std::size_t width) {
  Bytes raw = v == 0 ? Bytes{} : int_to_bytes(v);
  if (raw.size() > width) throw CryptoError("integer does not fit in requested width");
  Bytes out(width - raw.size(), 0x00);
  out.insert(out.end(), raw.begin(), raw.end());
  return out;
}

BigInt int_from_bytes(ByteView bytes) {
  BigInt out;
  if (bytes.empty()) return out;
  mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return out;
}

std::size_t bit_length(const BigInt& v) {
  if (v == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw CryptoError("value has no inverse modulo m");
  }
  return r;
}

}  // namespace fairx
