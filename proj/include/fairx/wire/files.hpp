#pragma once

#include <filesystem>

#include "fairx/cert/shared_cert.hpp"
#include "fairx/protocol/party_a.hpp"

namespace fairx {

// On-disk artifacts: a 4-byte magic, then the canonical encoding.
//   FXPK public key, FXSK key pair, FXCT certificate,
//   FXRG certificate registry, FXSS P_a dispute session.
Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, ByteView bytes);

Bytes encode_public_key(const RsaPublicKey& pk);
RsaPublicKey decode_public_key(ByteView bytes);
Bytes encode_key_pair(const RsaKeyPair& kp);
RsaKeyPair decode_key_pair(ByteView bytes);
Bytes encode_certificate(const SharedKeyCertificate& cert);
SharedKeyCertificate decode_certificate(ByteView bytes);
Bytes encode_registry(const CertRegistry& reg);
CertRegistry decode_registry(ByteView bytes);
Bytes encode_session(const PartyASession& s);
PartyASession decode_session(ByteView bytes);

// A public-key file, or the public half of a key-pair file.
RsaPublicKey load_public_key(const std::filesystem::path& path);
RsaKeyPair load_key_pair(const std::filesystem::path& path);
SharedKeyCertificate load_certificate(const std::filesystem::path& path);
CertRegistry load_registry(const std::filesystem::path& path);

}  // namespace fairx
