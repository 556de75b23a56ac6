#include "fairx/harness/world.hpp"

namespace fairx {

ProtocolParams ScenarioConfig::params() const {
  ProtocolParams p;
  p.hash = hash;
  p.sym_key_bits = sym_key_bits != 0 ? sym_key_bits : std::min<std::size_t>(128, rsa_bits / 2);
  return p;
}

Bytes default_document(std::uint64_t seed, std::string_view who) {
  std::string header = "document of " + std::string(who) + " / seed " + std::to_string(seed) + "\n";
  Bytes doc = to_bytes(header);
  Rng rng(seed, "document-" + std::string(who));
  Bytes body = rng.bytes(192);
  doc.insert(doc.end(), body.begin(), body.end());
  return doc;
}

World make_world(const ScenarioConfig& config) {
  World w;
  w.config = config;
  Rng sttp_rng(config.seed, "keygen-sttp");
  Rng a_rng(config.seed, "keygen-a");
  Rng b_rng(config.seed, "keygen-b");
  Rng cert_rng(config.seed, "issue-cert");
  w.sttp = SttpIdentity{PartyId{"STTP"}, generate_rsa_keypair(config.rsa_bits, sttp_rng)};
  w.a_keys = generate_rsa_keypair(config.rsa_bits, a_rng);
  w.b_keys = generate_rsa_keypair(config.rsa_bits, b_rng);
  w.cert = issue_shared_certificate(w.sttp, w.b_keys.pub, w.b_id, cert_rng,
                                    config.shared_key_margin, config.hash);
  w.registry = std::make_shared<CertRegistry>();
  w.registry->append({w.b_id, w.b_keys.pub, w.cert});
  w.doc_a = config.doc_a.empty() ? default_document(config.seed, "P_a") : config.doc_a;
  w.doc_b = config.doc_b.empty() ? default_document(config.seed, "P_b") : config.doc_b;
  return w;
}

}  // namespace fairx
