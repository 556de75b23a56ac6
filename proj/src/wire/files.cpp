#include "fairx/wire/files.hpp"

#include <fstream>
#include <iterator>

#include "fairx/crypto/canonical.hpp"

namespace fairx {

namespace {

constexpr std::string_view kPublicKey = "FXPK";
constexpr std::string_view kKeyPair = "FXSK";
constexpr std::string_view kCertificate = "FXCT";
constexpr std::string_view kRegistry = "FXRG";
constexpr std::string_view kSession = "FXSS";

Bytes with_magic(std::string_view magic, ByteView body) {
  Bytes out = to_bytes(magic);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

ByteView strip_magic(std::string_view magic, ByteView bytes) {
  if (bytes.size() < magic.size() ||
      !std::equal(magic.begin(), magic.end(), bytes.begin(),
                  [](char c, std::uint8_t b) { return static_cast<std::uint8_t>(c) == b; })) {
    throw DecodeError("not a " + std::string(magic) + " file");
  }
  return bytes.subspan(magic.size());
}

bool has_magic(std::string_view magic, ByteView bytes) {
  try {
    strip_magic(magic, bytes);
    return true;
  } catch (const DecodeError&) {
    return false;
  }
}

}  // namespace

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, ByteView bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("short write to " + path.string());
}

Bytes encode_public_key(const RsaPublicKey& pk) {
  return with_magic(kPublicKey, CanonicalWriter().integer(pk.e).integer(pk.n).take());
}

RsaPublicKey decode_public_key(ByteView bytes) {
  CanonicalReader r(strip_magic(kPublicKey, bytes));
  RsaPublicKey pk;
  pk.e = r.integer();
  pk.n = r.integer();
  r.expect_end();
  if (!pk.well_formed()) throw DecodeError("malformed public key");
  return pk;
}

Bytes encode_key_pair(const RsaKeyPair& kp) {
  return with_magic(kKeyPair, CanonicalWriter()
                                  .integer(kp.pub.e)
                                  .integer(kp.priv.d)
                                  .integer(kp.pub.n)
                                  .integer(kp.p)
                                  .integer(kp.q)
                                  .take());
}

RsaKeyPair decode_key_pair(ByteView bytes) {
  CanonicalReader r(strip_magic(kKeyPair, bytes));
  RsaKeyPair kp;
  kp.pub.e = r.integer();
  kp.priv.d = r.integer();
  kp.pub.n = r.integer();
  kp.priv.n = kp.pub.n;
  kp.p = r.integer();
  kp.q = r.integer();
  r.expect_end();
  if (kp.p * kp.q != kp.pub.n) throw DecodeError("key pair factors do not match its modulus");
  return kp;
}

Bytes encode_certificate(const SharedKeyCertificate& cert) {
  return with_magic(kCertificate, cert.serialize());
}

SharedKeyCertificate decode_certificate(ByteView bytes) {
  return SharedKeyCertificate::deserialize(strip_magic(kCertificate, bytes));
}

Bytes encode_registry(const CertRegistry& reg) { return with_magic(kRegistry, reg.serialize()); }

CertRegistry decode_registry(ByteView bytes) {
  return CertRegistry::deserialize(strip_magic(kRegistry, bytes));
}

Bytes encode_session(const PartyASession& s) { return with_magic(kSession, s.serialize()); }

PartyASession decode_session(ByteView bytes) {
  return PartyASession::deserialize(strip_magic(kSession, bytes));
}

RsaPublicKey load_public_key(const std::filesystem::path& path) {
  Bytes bytes = read_file(path);
  if (has_magic(kKeyPair, bytes)) return decode_key_pair(bytes).pub;
  return decode_public_key(bytes);
}

RsaKeyPair load_key_pair(const std::filesystem::path& path) {
  return decode_key_pair(read_file(path));
}

SharedKeyCertificate load_certificate(const std::filesystem::path& path) {
  return decode_certificate(read_file(path));
}

CertRegistry load_registry(const std::filesystem::path& path) {
  return decode_registry(read_file(path));
}

}  // namespace fairx
