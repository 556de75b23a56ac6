#pragma once

#include <cstdint>
#include <memory>

#include "fairx/cert/shared_cert.hpp"
#include "fairx/protocol/params.hpp"

namespace fairx {

struct ScenarioConfig {
  std::size_t rsa_bits = 2048;
  // 0 picks min(128, rsa_bits / 2) so that toy moduli still leave room for
  // a blinding prime.
  std::size_t sym_key_bits = 0;
  std::size_t shared_key_margin = kDefaultSharedKeyMargin;
  std::uint64_t seed = 1;
  HashAlgorithm hash = HashAlgorithm::Sha256;
  std::uint64_t timeout_ticks = 1;
  // Empty documents are replaced by seed-derived defaults.
  Bytes doc_a;
  Bytes doc_b;

  ProtocolParams params() const;
};

// Keys, certificate and documents for one P_a / P_b / STTP triple. All of
// it is derived from the seed, so separate processes given the same config
// build the same world.
struct World {
  ScenarioConfig config;
  PartyId a_id{"P_a"};
  PartyId b_id{"P_b"};
  SttpIdentity sttp;
  RsaKeyPair a_keys;
  RsaKeyPair b_keys;
  SharedKeyCertificate cert;
  std::shared_ptr<CertRegistry> registry;
  Bytes doc_a;
  Bytes doc_b;
};

World make_world(const ScenarioConfig& config);

Bytes default_document(std::uint64_t seed, std::string_view who);

}  // namespace fairx
