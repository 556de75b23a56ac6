#include "fairx/crypto/hash.hpp"

#include <openssl/evp.h>

#include <memory>

namespace fairx {

namespace {
const EVP_MD* evp_for(HashAlgorithm alg) {
  switch (alg) {
    case HashAlgorithm::Sha256:
      return EVP_sha256();
    case HashAlgorithm::Sha1:
      return EVP_sha1();
  }
  throw CryptoError("unknown hash algorithm");
}
}  // namespace

std::string_view hash_name(HashAlgorithm alg) {
  return alg == HashAlgorithm::Sha1 ? "sha1" : "sha256";
}

std::size_t digest_size(HashAlgorithm alg) {
  return static_cast<std::size_t>(EVP_MD_get_size(evp_for(alg)));
}

Digest hash(ByteView data, HashAlgorithm alg) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx) throw CryptoError("EVP_MD_CTX_new failed");
  Digest d;
  d.bytes.resize(digest_size(alg));
  unsigned int len = 0;
  if (EVP_DigestInit_ex(ctx.get(), evp_for(alg), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), d.bytes.data(), &len) != 1) {
    throw CryptoError("digest computation failed");
  }
  d.bytes.resize(len);
  return d;
}

}  // namespace fairx
