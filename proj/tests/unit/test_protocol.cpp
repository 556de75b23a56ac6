#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "golden.hpp"

#include "fairx/protocol/party_a.hpp"
#include "fairx/protocol/party_b.hpp"
#include "fairx/protocol/sttp.hpp"
#include "fairx/protocol/token.hpp"
#include "fairx/crypto/canonical.hpp"

#include <algorithm>
#include <random>

using namespace fairx;

namespace {

struct Fixture {
  Rng rng{11, "protocol-fixture"};
  SttpIdentity sttp{PartyId{"T"}, generate_rsa_keypair(64, rng)};
  RsaKeyPair a_keys = generate_rsa_keypair(64, rng);
  RsaKeyPair b_keys = generate_rsa_keypair(64, rng);
  PartyId a_id{"P_a"};
  PartyId b_id{"P_b"};
  SharedKeyCertificate cert = issue_shared_certificate(sttp, b_keys.pub, b_id, rng);
  std::shared_ptr<CertRegistry> registry = std::make_shared<CertRegistry>();
  ProtocolParams params{HashAlgorithm::Sha256, 32};
  Bytes doc_a = to_bytes("document held by a");
  Bytes doc_b = to_bytes("document held by b, a little longer");

  Fixture() { registry->append({b_id, b_keys.pub, cert}); }

  PartyA make_a(PartyAConduct c = {}) {
    return PartyA(PartyAConfig{a_id, a_keys, b_id, b_keys.pub, sttp.pk(), doc_a, params},
                  Rng(5, "a"), c);
  }
  PartyB make_b(PartyBConduct c = {}) {
    return PartyB(PartyBConfig{b_id, b_keys, a_id, a_keys.pub, sttp.pk(), cert, doc_b, params},
                  Rng(5, "b"), c);
  }
  SttpRole make_sttp(SttpConduct c = {}) { return SttpRole(sttp, registry, params, c); }
};

void setup(PartyA& a, PartyB& b) { b.accept_reply(a.accept_offer(b.make_offer())); }

}  // namespace

TEST_CASE("message serialization round-trips every type") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b();
  setup(a, b);
  MessageEM1 em1 = b.build_em1();
  Em1Outcome o = a.process_em1(em1);
  REQUIRE(o.em2);
  auto em3 = b.process_em2(*o.em2);
  REQUIRE(em3);
  MessageDR1 dr1 = build_dr1(a.session());
  std::vector<ExchangeMessage> all{em1, *o.em2, *em3, dr1, MessageDR2{o.em2->enc_da},
                                   MessageDR3{em3->r_b}};
  for (std::size_t i = 0; i < all.size(); ++i) {
    Bytes wire = serialize_message(all[i]);
    CHECK(wire[0] == i + 1);
    CHECK(deserialize_message(wire) == all[i]);
    // Truncation anywhere is a decode error, never a crash.
    for (std::size_t cut = 0; cut < wire.size(); cut += 7) {
      CHECK_THROWS_AS(deserialize_message(ByteView(wire.data(), cut)), DecodeError);
    }
  }
}

TEST_CASE("message layout is stable") {
  MessageEM3 em3{BigInt(0x1234)};
  MessageDR2 dr2{Bytes{0xaa, 0xbb}};
  std::string text = to_hex(serialize_message(em3)) + "\n" + to_hex(serialize_message(dr2)) + "\n";
  CHECK(to_hex(serialize_message(em3)) == "03000000021234");
  CHECK(to_hex(serialize_message(dr2)) == "0500000002aabb");
  CHECK(matches_golden("messages.hex", text));
}

TEST_CASE("unknown message tags are rejected") {
  Bytes wire{0x07, 0, 0, 0, 1, 0x01};
  CHECK_THROWS_AS(deserialize_message(wire), UnknownMessageType);
  CHECK_THROWS_AS(parse_message_type(0x00), UnknownMessageType);
  CHECK_THROWS_AS(deserialize_message(Bytes{}), DecodeError);
  CHECK(parse_message_type(0x06) == MessageType::DR3);
}

TEST_CASE("pair encryption spans blocks and rejects tampering") {
  Fixture f;
  BigInt x = f.b_keys.pub.n - 1;
  BigInt z = f.cert.pk_bt.n * f.b_keys.pub.n - 1;
  EncryptedPair enc = encrypt_pair(x, z, f.a_keys.pub);
  CHECK(enc.blocks.size() > 1);
  CHECK(EncryptedPair::deserialize(enc.serialize()) == enc);
  CHECK(decrypt_pair(enc, f.a_keys.priv) == std::pair<BigInt, BigInt>{x, z});
  enc.plain_length += 1;
  CHECK_THROWS_AS(decrypt_pair(enc, f.a_keys.priv), DecodeError);
}

TEST_CASE("honest exchange completes without the STTP") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b();
  setup(a, b);
  CHECK(b.advertisement().he_da == a.session().adv.he_da);
  Em1Outcome o = a.process_em1(b.build_em1());
  CHECK(o.failed_check == 0);
  CHECK_FALSE(o.dr1);
  REQUIRE(o.em2);
  auto em3 = b.process_em2(*o.em2);
  REQUIRE(em3);
  CHECK(b.received_document() == f.doc_a);
  Em3Outcome r = a.process_em3(*em3);
  CHECK(r.recovered);
  CHECK(a.received_document() == f.doc_b);
  CHECK(a.phase() == PhaseA::Completed);
  CHECK(b.phase() == PhaseB::Completed);
}

TEST_CASE("each malformed E-M1 fails its check") {
  const std::pair<Em1Mutation, int> cases[] = {
      {Em1Mutation::TokenYa, 1},      {Em1Mutation::TokenPa, 1},
      {Em1Mutation::CertSignature, 2}, {Em1Mutation::EncDb, 3},
      {Em1Mutation::XbOverflow, 4},   {Em1Mutation::ZbForeignKey, 4},
      {Em1Mutation::XbPlusOne, 5},    {Em1Mutation::YbForeignBlind, 5},
  };
  Fixture f;
  for (auto [mutation, check] : cases) {
    CAPTURE(to_string(mutation));
    PartyA a = f.make_a();
    PartyB b = f.make_b({mutation});
    setup(a, b);
    Em1Outcome o = a.process_em1(b.build_em1());
    CHECK(o.failed_check == check);
    CHECK_FALSE(o.em2);
    CHECK_FALSE(o.dr1);
    CHECK(a.phase() == PhaseA::Aborted);
  }
}

TEST_CASE("Z_b agreeing mod n_b but not mod n_bt fails check 6") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b();
  setup(a, b);
  MessageEM1 em1 = b.build_em1();
  VrePublic v = b.vre()->pub;
  v.z_b = (v.z_b + f.b_keys.pub.n) % (f.b_keys.pub.n * f.cert.pk_bt.n);
  em1.enc_xz = encrypt_pair(v.x_b, v.z_b, f.a_keys.pub);
  CHECK(a.process_em1(em1).failed_check == 6);
}

TEST_CASE("a substituted enc.pk_a(k_a) passes the checks but yields a useless key") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b({Em1Mutation::EncKa});
  setup(a, b);
  Em1Outcome o = a.process_em1(b.build_em1());
  REQUIRE(o.em2);
  CHECK_FALSE(b.process_em2(*o.em2));
  CHECK_FALSE(b.received_document());
}

TEST_CASE("E-M2 deviations are refused by P_b") {
  Fixture f;
  for (auto dev : {Em2Deviation::WrongKey, Em2Deviation::WrongDocument,
                   Em2Deviation::WrongDocumentWrongKey}) {
    CAPTURE(to_string(dev));
    PartyA a = f.make_a({dev});
    PartyB b = f.make_b();
    setup(a, b);
    Em1Outcome o = a.process_em1(b.build_em1());
    REQUIRE(o.em2);
    CHECK_FALSE(b.process_em2(*o.em2));
    CHECK_FALSE(b.received_document());
    CHECK(b.phase() == PhaseB::Withheld);
    // A disputes; the STTP refuses because S_b does not cover the ciphertext.
    auto dr1 = a.on_em3_timeout();
    REQUIRE(dr1);
    auto decision = f.make_sttp().process_dr1(a.id(), *dr1);
    REQUIRE(std::holds_alternative<Rejection>(decision));
    CHECK(std::get<Rejection>(decision).failed_check == 1);
  }
}

TEST_CASE("corrupt E-M3 falls back to the STTP") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b({.corrupt_em3 = true});
  setup(a, b);
  auto em2 = a.process_em1(b.build_em1()).em2;
  auto em3 = b.process_em2(*em2);
  REQUIRE(em3);
  CHECK(em3->r_b == b.vre()->secret.r_b + 2);
  Em3Outcome r = a.process_em3(*em3);
  CHECK_FALSE(r.recovered);
  REQUIRE(r.dr1);
  auto decision = f.make_sttp().process_dr1(a.id(), *r.dr1);
  REQUIRE(std::holds_alternative<Resolution>(decision));
  const auto& res = std::get<Resolution>(decision);
  CHECK(res.to_requester.r_b == b.vre()->secret.r_b);
  a.process_dr3(res.to_requester);
  CHECK(a.received_document() == f.doc_b);
}

TEST_CASE("STTP resolves a withheld E-M3 for both sides") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b({.withhold_em3 = true});
  setup(a, b);
  auto em2 = a.process_em1(b.build_em1()).em2;
  CHECK_FALSE(b.process_em2(*em2));
  CHECK(b.received_document() == f.doc_a);  // B already has D_a: unfair until resolved
  auto dr1 = a.on_em3_timeout();
  REQUIRE(dr1);
  SttpRole t = f.make_sttp();
  auto decision = t.process_dr1(a.id(), *dr1);
  REQUIRE(std::holds_alternative<Resolution>(decision));
  const auto& res = std::get<Resolution>(decision);
  CHECK(res.subject == f.b_id);
  REQUIRE(res.to_subject);
  CHECK(res.to_subject->enc_da == em2->enc_da);
  a.process_dr3(res.to_requester);
  CHECK(a.received_document() == f.doc_b);
  CHECK_FALSE(b.process_dr2(*res.to_subject));  // nothing new for B

  SUBCASE("replaying DR-M1 gives the same answer") {
    auto again = t.process_dr1(a.id(), *dr1);
    REQUIRE(std::holds_alternative<Resolution>(again));
    CHECK(std::get<Resolution>(again).to_requester == res.to_requester);
    CHECK(std::get<Resolution>(again).to_subject == res.to_subject);
  }
  SUBCASE("DR-M3 and DR-M2 are idempotent") {
    a.process_dr3(res.to_requester);
    CHECK(a.phase() == PhaseA::Completed);
    CHECK(a.received_document() == f.doc_b);
    CHECK_FALSE(b.process_dr2(*res.to_subject));
    CHECK(b.received_document() == f.doc_a);
  }
  SUBCASE("a different requester is refused") {
    auto other = t.process_dr1(PartyId{"intruder"}, *dr1);
    REQUIRE(std::holds_alternative<Rejection>(other));
    CHECK(std::get<Rejection>(other).failed_check == 1);
  }
}

TEST_CASE("malformed DR-M1 fields are rejected") {
  const std::pair<Dr1Mutation, int> cases[] = {
      {Dr1Mutation::JunkEncDa, 1},
      {Dr1Mutation::ForeignYb, 1},
      {Dr1Mutation::CorruptToken, 1},
      {Dr1Mutation::CorruptCert, 1},  // W_bt is signed by S_b too
  };
  Fixture f;
  for (auto [mutation, check] : cases) {
    CAPTURE(to_string(mutation));
    PartyA a = f.make_a({.dr1 = mutation});
    PartyB b = f.make_b();
    setup(a, b);
    Em1Outcome o = a.process_em1(b.build_em1());
    CHECK_FALSE(o.em2);
    REQUIRE(o.dr1);
    auto decision = f.make_sttp().process_dr1(a.id(), *o.dr1);
    REQUIRE(std::holds_alternative<Rejection>(decision));
    CHECK(std::get<Rejection>(decision).failed_check == check);
    a.process_sttp_error(check, "refused");
    CHECK(a.phase() == PhaseA::DisputeRejected);
  }
}

TEST_CASE("a forged certificate re-signed by P_b fails STTP check 2") {
  Fixture f;
  PartyA a = f.make_a({.premature_dispute = true});
  PartyB b = f.make_b();
  setup(a, b);
  auto dr1 = a.process_em1(b.build_em1()).dr1;
  REQUIRE(dr1);
  dr1->cert.w_bt += 1;
  dr1->s_b = make_authorization_token(f.b_keys.priv, dr1->cert, dr1->y_b, hash(dr1->enc_da),
                                      a.id());
  auto decision = f.make_sttp().process_dr1(a.id(), *dr1);
  REQUIRE(std::holds_alternative<Rejection>(decision));
  CHECK(std::get<Rejection>(decision).failed_check == 2);
}

TEST_CASE("an STTP that never issued the certificate rejects with check 0") {
  Fixture f;
  PartyA a = f.make_a({.premature_dispute = true});
  PartyB b = f.make_b();
  setup(a, b);
  auto dr1 = a.process_em1(b.build_em1()).dr1;
  REQUIRE(dr1);
  SttpRole stranger(f.sttp, std::make_shared<CertRegistry>(), f.params);
  auto decision = stranger.process_dr1(a.id(), *dr1);
  REQUIRE(std::holds_alternative<Rejection>(decision));
  CHECK(std::get<Rejection>(decision).failed_check == 0);
}

TEST_CASE("premature dispute still gives both parties their documents") {
  Fixture f;
  PartyA a = f.make_a({.premature_dispute = true});
  PartyB b = f.make_b();
  setup(a, b);
  auto dr1 = a.process_em1(b.build_em1()).dr1;
  REQUIRE(dr1);
  auto decision = f.make_sttp().process_dr1(a.id(), *dr1);
  REQUIRE(std::holds_alternative<Resolution>(decision));
  const auto& res = std::get<Resolution>(decision);
  CHECK(b.process_dr2(*res.to_subject));
  a.process_dr3(res.to_requester);
  CHECK(a.received_document() == f.doc_b);
  CHECK(b.received_document() == f.doc_a);
}

TEST_CASE("STTP audit log never carries X_b or the session keys") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b({.withhold_em3 = true});
  setup(a, b);
  auto em2 = a.process_em1(b.build_em1()).em2;
  b.process_em2(*em2);
  SttpRole t = f.make_sttp();
  t.process_dr1(a.id(), *a.on_em3_timeout());
  CHECK(t.audit_log().size() == 3);
  Bytes snap = t.state_snapshot();
  for (const BigInt& secret : {b.vre()->pub.x_b, b.k_b().k, b.k_a().k}) {
    Bytes needle = CanonicalWriter().integer(secret).take();
    CHECK(std::search(snap.begin(), snap.end(), needle.begin(), needle.end()) == snap.end());
  }
}

TEST_CASE("parties ignore messages outside their phase") {
  Fixture f;
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    PartyA a = f.make_a();
    PartyB b = f.make_b();
    setup(a, b);
    PartyA a2 = f.make_a();
    PartyB b2 = f.make_b();
    setup(a2, b2);
    // Honest material from a parallel run, delivered in random order.
    MessageEM1 em1 = b2.build_em1();
    auto em2 = a2.process_em1(em1).em2;
    auto em3 = b2.process_em2(*em2);
    int em2_sent = 0, dr1_sent = 0;
    bool em1_seen = false;
    for (int step = 0; step < 8; ++step) {
      switch (gen() % 5) {
        case 0: {
          auto o = a.process_em1(em1);
          if (o.em2) {
            CHECK_FALSE(em1_seen);
            ++em2_sent;
          }
          em1_seen = true;
          break;
        }
        case 1: {
          auto r = a.process_em3(*em3);
          if (r.recovered) CHECK(em2_sent == 1);
          if (r.dr1) ++dr1_sent;
          break;
        }
        case 2:
          if (a.on_em3_timeout()) ++dr1_sent;
          break;
        case 3:
          a.process_dr3(MessageDR3{em3->r_b});
          if (em2_sent == 0) CHECK(a.phase() != PhaseA::Completed);
          break;
        case 4:
          // B never produced E-M1 here, so it must ignore E-M2 and DR-M2.
          CHECK_FALSE(b.process_em2(*em2));
          CHECK_FALSE(b.process_dr2(MessageDR2{em2->enc_da}));
          break;
      }
      CHECK(em2_sent <= 1);
      CHECK(dr1_sent <= 1);
    }
    CHECK_FALSE(b.received_document());
  }
}

TEST_CASE("B refuses to build E-M1 before setup") {
  Fixture f;
  PartyB b = f.make_b();
  CHECK_THROWS_AS(b.build_em1(), ProtocolError);
  b.make_offer();
  CHECK_THROWS_AS(b.make_offer(), ProtocolError);
}

TEST_CASE("P_a session survives serialization and finishes the exchange") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b({.withhold_em3 = true});
  setup(a, b);
  auto em2 = a.process_em1(b.build_em1()).em2;
  b.process_em2(*em2);
  PartyASession s = PartyASession::deserialize(a.session().serialize());
  CHECK(s.serialize() == a.session().serialize());
  CHECK(build_dr1(s) == build_dr1(a.session()));
  CHECK(recover_document(s, b.vre()->secret.r_b) == f.doc_b);
  CHECK_FALSE(recover_document(s, b.vre()->secret.r_b + 2));
  Bytes bytes = a.session().serialize();
  bytes.push_back(0);
  CHECK_THROWS_AS(PartyASession::deserialize(bytes), DecodeError);
}

TEST_CASE("session id depends on every advertised field") {
  Fixture f;
  PartyA a = f.make_a();
  PartyB b = f.make_b();
  setup(a, b);
  Advertisement adv = b.advertisement();
  SessionId id = session_id_for(adv);
  CHECK(id == session_id_for(a.session().adv));
  Advertisement m = adv;
  m.ek_b.ek_b += 1;
  CHECK(session_id_for(m) != id);
  m = adv;
  m.he_da.bytes[0] ^= 1;
  CHECK(session_id_for(m) != id);
  m = adv;
  m.enc_ka_for_pa += 1;
  CHECK(session_id_for(m) != id);
}
