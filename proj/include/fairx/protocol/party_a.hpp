#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fairx/common/party_id.hpp"
#include "fairx/protocol/messages.hpp"
#include "fairx/protocol/params.hpp"

namespace fairx {

enum class PhaseA {
  Setup,
  AwaitingEM1,
  AwaitingEM3,
  Completed,
  Aborted,
  WalkedAway,
  Disputing,
  DisputeRejected,
  Unresolved,
};

std::string_view to_string(PhaseA p);

struct PartyAConfig {
  PartyId id;
  RsaKeyPair keys;
  PartyId peer_id;
  RsaPublicKey peer_pk;
  RsaPublicKey sttp_pk;
  Bytes document;
  ProtocolParams params;
};

// Everything P_a needs to pursue a dispute and finish the exchange without
// its private key: what it learned in setup and E-M1 plus the ciphertext it
// committed to. Persisted by the CLI between `exchange` and `dispute`.
struct PartyASession {
  PartyId self_id;
  PartyId peer_id;
  RsaPublicKey pk_b;
  RsaPublicKey sttp_pk;
  HashAlgorithm hash = HashAlgorithm::Sha256;
  Advertisement adv;
  SharedKeyCertificate cert;
  Bytes enc_db;
  VrePublic vre;
  AuthorizationToken s_b;
  Bytes enc_da;

  Bytes serialize() const;
  static PartyASession deserialize(ByteView bytes);
};

MessageDR1 build_dr1(const PartyASession& s);

// Validates r_b against Y_b, unblinds k_b = X_b / r_b and decrypts D_b.
// Returns nothing when r_b is inconsistent.
std::optional<Bytes> recover_document(const PartyASession& s, const BigInt& r_b);

struct Em1Outcome {
  int failed_check = 0;  // 0 when all six checks passed
  std::optional<MessageEM2> em2;
  std::optional<MessageDR1> dr1;
};

struct Em3Outcome {
  bool recovered = false;
  std::optional<MessageDR1> dr1;
};

// The receiver of E-M1. A verifies the six E-M1 checks, answers with its own
// document under k_a, and falls back to the STTP if r_b never arrives or is
// wrong.
class PartyA {
 public:
  PartyA(PartyAConfig cfg, Rng rng, PartyAConduct conduct = {});

  SetupReply accept_offer(const SetupOffer& offer);

  Em1Outcome process_em1(const MessageEM1& msg);
  Em3Outcome process_em3(const MessageEM3& msg);
  std::optional<MessageDR1> on_em3_timeout();

  void process_dr3(const MessageDR3& msg);
  void process_sttp_error(int failed_check, const std::string& reason);
  void on_dr3_timeout();

  PhaseA phase() const { return phase_; }
  const PartyId& id() const { return cfg_.id; }
  int failed_check() const { return failed_check_; }
  const std::optional<Bytes>& received_document() const { return received_; }
  const PartyASession& session() const { return session_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const SymmetricKey& k_a() const { return k_a_; }
  bool sttp_misbehaved() const { return sttp_misbehaved_; }

 private:
  std::optional<MessageDR1> begin_dispute();
  Bytes deviated_em2_ciphertext();

  PartyAConfig cfg_;
  Rng rng_;
  PartyAConduct conduct_;
  PhaseA phase_ = PhaseA::Setup;
  SymmetricKey k_a_;
  PartyASession session_;
  int failed_check_ = 0;
  bool sttp_misbehaved_ = false;
  std::optional<Bytes> received_;
  std::vector<std::string> notes_;
};

}  // namespace fairx
