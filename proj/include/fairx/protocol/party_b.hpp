#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairx/common/party_id.hpp"
#include "fairx/protocol/messages.hpp"
#include "fairx/protocol/params.hpp"

namespace fairx {

enum class PhaseB { Setup, Advertised, AwaitingEM2, Completed, Withheld, TimedOut };

std::string_view to_string(PhaseB p);

struct PartyBConfig {
  PartyId id;
  RsaKeyPair keys;
  PartyId peer_id;
  RsaPublicKey peer_pk;
  RsaPublicKey sttp_pk;
  SharedKeyCertificate cert;
  Bytes document;
  ProtocolParams params;
};

// The document owner who opens the exchange. B picks both session keys,
// sends E-M1, and releases r_b in E-M3 once E-M2 matches heD_a.
class PartyB {
 public:
  PartyB(PartyBConfig cfg, Rng rng, PartyBConduct conduct = {});

  // Setup: choose k_b and k_a, publish heD_b, ek_b and enc.pk_a(k_a).
  SetupOffer make_offer();
  void accept_reply(const SetupReply& reply);

  MessageEM1 build_em1();

  // E-M3 when enc.k_a(D_a) hashes to heD_a, nothing otherwise. Messages
  // arriving outside AwaitingEM2 are ignored.
  std::optional<MessageEM3> process_em2(const MessageEM2& msg);
  void on_em2_timeout();

  // Returns true when the delivery gave B the document.
  bool process_dr2(const MessageDR2& msg);

  PhaseB phase() const { return phase_; }
  const PartyId& id() const { return cfg_.id; }
  const std::optional<Bytes>& received_document() const { return received_; }
  const Advertisement& advertisement() const { return adv_; }
  const std::vector<std::string>& notes() const { return notes_; }

  // Secrets, for tests that inspect what other roles could have learned.
  const SymmetricKey& k_a() const { return k_a_; }
  const SymmetricKey& k_b() const { return k_b_; }
  const std::optional<VreOutput>& vre() const { return vre_; }

 private:
  bool accept_ciphertext(const Bytes& enc_da, std::string_view via);

  PartyBConfig cfg_;
  Rng rng_;
  PartyBConduct conduct_;
  PhaseB phase_ = PhaseB::Setup;
  SymmetricKey k_a_;
  SymmetricKey k_b_;
  Advertisement adv_;
  std::optional<VreOutput> vre_;
  std::optional<Bytes> received_;
  std::vector<std::string> notes_;
};

}  // namespace fairx
