// Command-line front end: key and certificate management, simulated runs,
// and the networked roles.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "fairx/harness/matrix.hpp"
#include "fairx/wire/files.hpp"
#include "fairx/wire/party.hpp"
#include "fairx/wire/service.hpp"

using namespace fairx;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kCliMinKeyBits = 16;
constexpr int kExitUnfair = 2;
constexpr int kExitNoDocument = 3;

HashAlgorithm parse_hash(const std::string& name) {
  if (name == "sha256") return HashAlgorithm::Sha256;
  if (name == "sha1") return HashAlgorithm::Sha1;
  throw Error("unknown hash '" + name + "' (sha256 or sha1)");
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

std::string default_sttp() {
  const char* env = std::getenv("FAIRX_STTP");
  return env ? env : "";
}

void write_port(const std::string& path, std::uint16_t port) {
  if (path.empty()) return;
  // Write then rename so a reader never sees a partial file.
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << port << "\n";
  }
  fs::rename(tmp, path);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::trunc);
  out << text;
}

std::vector<AdversaryBehavior> parse_behaviors(const std::vector<std::string>& names) {
  std::vector<AdversaryBehavior> out;
  for (const auto& n : names) out.push_back(AdversaryBehavior::parse(n));
  return out;
}

ProtocolParams params_for(const RsaPublicKey& own, HashAlgorithm hash, std::size_t sym_bits) {
  ScenarioConfig c;
  c.rsa_bits = bit_length(own.n);
  c.hash = hash;
  c.sym_key_bits = sym_bits;
  return c.params();
}

void print_outcome(const ScenarioResult& r) {
  const auto& o = r.outcome;
  std::cout << "verdict: " << to_string(r.verdict.classification) << " (" << r.verdict.detail
            << ")\n";
  std::cout << "messages: " << o.metrics.exchange_messages << "\n";
  std::cout << "dispute messages: " << o.metrics.dispute_messages << "\n";
  std::cout << "P_a: " << to_string(o.a_phase) << ", P_b: " << to_string(o.b_phase) << "\n";
  if (o.abort_reason) std::cout << "reason: " << *o.abort_reason << "\n";
  std::cout << "rsa ops: setup " << o.metrics.rsa_ops_setup << ", exchange "
            << o.metrics.rsa_ops_exchange << " (A " << o.metrics.rsa_exchange_by_actor.at(Actor::A)
            << ", B " << o.metrics.rsa_exchange_by_actor.at(Actor::B) << "), dispute "
            << o.metrics.rsa_ops_dispute << "\n";
  std::cout << "sym ops: exchange " << o.metrics.sym_ops_exchange << ", dispute "
            << o.metrics.sym_ops_dispute << "\n";
  for (const auto& n : o.notes) std::cout << "  " << n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair document exchange with an offline semi-trusted third party"};
  app.require_subcommand(1);

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Generate an RSA key pair");
  std::size_t kg_bits = 2048;
  std::string kg_out;
  std::optional<std::uint64_t> kg_seed;
  keygen->add_option("--bits", kg_bits, "Modulus size")->capture_default_str();
  keygen->add_option("--out", kg_out, "Key-pair file; the public key goes to <out>.pub")
      ->required();
  keygen->add_option("--seed", kg_seed, "Deterministic seed");

  // cert issue
  auto* cert = app.add_subcommand("cert", "Shared-key certificates");
  cert->require_subcommand(1);
  auto* issue = cert->add_subcommand("issue", "Issue C_bt for a subject public key");
  std::string ci_sttp_key, ci_subject_pk, ci_subject_id = "P_b", ci_out, ci_registry, ci_hash = "sha256";
  std::optional<std::uint64_t> ci_seed;
  std::size_t ci_margin = kDefaultSharedKeyMargin;
  issue->add_option("--sttp-key", ci_sttp_key, "STTP key-pair file")->required();
  issue->add_option("--subject-pk", ci_subject_pk, "Subject public key")->required();
  issue->add_option("--subject-id", ci_subject_id)->capture_default_str();
  issue->add_option("--out", ci_out, "Certificate file")->required();
  issue->add_option("--registry", ci_registry, "Registry file to append to (created if absent)");
  issue->add_option("--margin", ci_margin, "Extra bits of n_bt over n_b")->capture_default_str();
  issue->add_option("--hash", ci_hash)->capture_default_str();
  issue->add_option("--seed", ci_seed);

  // provision
  auto* provision =
      app.add_subcommand("provision", "Write the seed-derived keys, certificate and documents");
  std::string pv_dir;
  std::size_t pv_bits = 2048;
  std::uint64_t pv_seed = 1;
  std::string pv_hash = "sha256";
  provision->add_option("--dir", pv_dir)->required();
  provision->add_option("--key-bits", pv_bits)->capture_default_str();
  provision->add_option("--seed", pv_seed)->capture_default_str();
  provision->add_option("--hash", pv_hash)->capture_default_str();

  // advertise
  auto* advertise = app.add_subcommand("advertise", "Compute P_b's setup offer for a document");
  std::string ad_key, ad_doc, ad_peer_pk, ad_out, ad_hash = "sha256";
  std::uint64_t ad_seed = 1;
  std::size_t ad_sym_bits = 0;
  advertise->add_option("--key", ad_key, "P_b key-pair file")->required();
  advertise->add_option("--doc", ad_doc)->required();
  advertise->add_option("--peer-pk", ad_peer_pk)->required();
  advertise->add_option("--out", ad_out, "Write the serialized offer here");
  advertise->add_option("--seed", ad_seed)->capture_default_str();
  advertise->add_option("--sym-bits", ad_sym_bits);
  advertise->add_option("--hash", ad_hash)->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Run scenarios in the simulator");
  std::string rn_scenario;
  bool rn_matrix = false, rn_ext = false, rn_jsonl = false;
  std::size_t rn_bits = 2048;
  std::uint64_t rn_seed = 1;
  unsigned rn_threads = 1;
  std::uint64_t rn_ticks = 1;
  std::string rn_hash = "sha256", rn_transcript;
  auto* rn_sc_opt = run->add_option("--scenario", rn_scenario, "e.g. honest, B:withhold-EM3");
  auto* rn_mx_opt = run->add_flag("--matrix", rn_matrix, "Run every single-deviation scenario");
  rn_sc_opt->excludes(rn_mx_opt);
  run->add_flag("--extensions", rn_ext, "Add the byzantine-STTP composites to --matrix");
  run->add_option("--key-bits", rn_bits)->capture_default_str();
  run->add_option("--seed", rn_seed)->capture_default_str();
  run->add_option("--threads", rn_threads)->capture_default_str();
  run->add_option("--timeout-ticks", rn_ticks)->capture_default_str();
  run->add_option("--hash", rn_hash)->capture_default_str();
  run->add_flag("--jsonl", rn_jsonl, "Machine-readable output");
  run->add_option("--transcript-out", rn_transcript, "Write the scenario transcript here");

  // report
  auto* report = app.add_subcommand("report", "Compare measured costs with published figures");
  bool rp_metrics = false, rp_jsonl = false;
  std::size_t rp_bits = 2048;
  std::uint64_t rp_seed = 1;
  report->add_flag("--metrics", rp_metrics)->required();
  report->add_option("--key-bits", rp_bits)->capture_default_str();
  report->add_option("--seed", rp_seed)->capture_default_str();
  report->add_flag("--jsonl", rp_jsonl);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the STTP dispute service");
  std::string sv_key, sv_registry, sv_listen = "127.0.0.1:7400", sv_port_file, sv_transcript,
                                   sv_id = "STTP", sv_hash = "sha256";
  std::vector<std::string> sv_behaviors;
  serve->add_option("--key", sv_key, "STTP key-pair file")->required();
  serve->add_option("--registry", sv_registry)->required();
  serve->add_option("--listen", sv_listen)->capture_default_str();
  serve->add_option("--port-file", sv_port_file, "Write the bound port here");
  serve->add_option("--transcript", sv_transcript, "Append dispute traffic here");
  serve->add_option("--id", sv_id)->capture_default_str();
  serve->add_option("--hash", sv_hash)->capture_default_str();
  serve->add_option("--behavior", sv_behaviors, "STTP deviation (testing)");

  // exchange
  auto* exchange = app.add_subcommand("exchange", "Take part in a live exchange");
  std::string ex_role, ex_peer, ex_listen, ex_sttp = default_sttp(), ex_doc, ex_key, ex_peer_pk,
                       ex_sttp_pk, ex_cert, ex_out, ex_transcript, ex_session, ex_port_file,
                       ex_id, ex_peer_id, ex_hash = "sha256";
  std::uint64_t ex_seed = 1;
  std::size_t ex_sym_bits = 0;
  int ex_timeout = 2000;
  std::vector<std::string> ex_behaviors;
  exchange->add_option("--role", ex_role)->required()->check(CLI::IsMember({"a", "b"}));
  exchange->add_option("--peer", ex_peer, "P_b address (role a)");
  exchange->add_option("--listen", ex_listen, "Listen address (role b)");
  exchange->add_option("--sttp", ex_sttp, "STTP address, default $FAIRX_STTP");
  exchange->add_option("--doc", ex_doc, "Document to exchange")->required();
  exchange->add_option("--key", ex_key, "Own key-pair file")->required();
  exchange->add_option("--peer-pk", ex_peer_pk)->required();
  exchange->add_option("--sttp-pk", ex_sttp_pk)->required();
  exchange->add_option("--cert", ex_cert, "Own shared-key certificate (role b)");
  exchange->add_option("--out", ex_out, "Write the received document here");
  exchange->add_option("--transcript-out", ex_transcript);
  exchange->add_option("--session-out", ex_session, "Dispute session file (role a)");
  exchange->add_option("--port-file", ex_port_file, "Write the bound port here (role b)");
  exchange->add_option("--id", ex_id, "Own identity, default P_a / P_b");
  exchange->add_option("--peer-id", ex_peer_id);
  exchange->add_option("--seed", ex_seed)->capture_default_str();
  exchange->add_option("--sym-bits", ex_sym_bits);
  exchange->add_option("--timeout-ms", ex_timeout)->capture_default_str();
  exchange->add_option("--hash", ex_hash)->capture_default_str();
  exchange->add_option("--behavior", ex_behaviors, "Deviation for this role (testing)");

  // dispute
  auto* dispute = app.add_subcommand("dispute", "Ask the STTP to finish an exchange");
  std::string dp_session, dp_sttp = default_sttp(), dp_out;
  int dp_timeout = 5000;
  dispute->add_option("--session", dp_session)->required();
  dispute->add_option("--sttp", dp_sttp, "STTP address, default $FAIRX_STTP");
  dispute->add_option("--out", dp_out, "Write the recovered document here");
  dispute->add_option("--timeout-ms", dp_timeout)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (keygen->parsed()) {
      if (kg_bits < kCliMinKeyBits) {
        throw Error("--bits must be at least " + std::to_string(kCliMinKeyBits));
      }
      Rng rng(kg_seed.value_or(fresh_seed()), "keygen");
      RsaKeyPair kp = generate_rsa_keypair(kg_bits, rng);
      write_file(kg_out, encode_key_pair(kp));
      write_file(kg_out + ".pub", encode_public_key(kp.pub));
      std::cout << "wrote " << kg_out << " and " << kg_out << ".pub (" << kg_bits << " bits)\n";
      return 0;
    }

    if (issue->parsed()) {
      SttpIdentity sttp{PartyId{"STTP"}, load_key_pair(ci_sttp_key)};
      RsaPublicKey subject = load_public_key(ci_subject_pk);
      Rng rng(ci_seed.value_or(fresh_seed()), "issue-cert");
      auto c = issue_shared_certificate(sttp, subject, PartyId{ci_subject_id}, rng, ci_margin,
                                        parse_hash(ci_hash));
      write_file(ci_out, encode_certificate(c));
      if (!ci_registry.empty()) {
        CertRegistry reg;
        if (fs::exists(ci_registry)) reg = load_registry(ci_registry);
        reg.append({c.subject_id, subject, c});
        write_file(ci_registry, encode_registry(reg));
      }
      std::cout << "issued certificate for " << ci_subject_id << ", n_bt "
                << bit_length(c.pk_bt.n) << " bits\n";
      return 0;
    }

    if (provision->parsed()) {
      ScenarioConfig cfg;
      cfg.rsa_bits = pv_bits;
      cfg.seed = pv_seed;
      cfg.hash = parse_hash(pv_hash);
      World w = make_world(cfg);
      fs::path dir(pv_dir);
      fs::create_directories(dir);
      write_file(dir / "a.key", encode_key_pair(w.a_keys));
      write_file(dir / "a.pub", encode_public_key(w.a_keys.pub));
      write_file(dir / "b.key", encode_key_pair(w.b_keys));
      write_file(dir / "b.pub", encode_public_key(w.b_keys.pub));
      write_file(dir / "sttp.key", encode_key_pair(w.sttp.keypair));
      write_file(dir / "sttp.pub", encode_public_key(w.sttp.pk()));
      write_file(dir / "b.cert", encode_certificate(w.cert));
      write_file(dir / "registry", encode_registry(*w.registry));
      write_file(dir / "doc_a", w.doc_a);
      write_file(dir / "doc_b", w.doc_b);
      std::cout << "provisioned " << dir.string() << "\n";
      return 0;
    }

    if (advertise->parsed()) {
      RsaKeyPair keys = load_key_pair(ad_key);
      PartyBConfig cfg{PartyId{"P_b"}, keys, PartyId{"P_a"}, load_public_key(ad_peer_pk), {}, {},
                       read_file(ad_doc), params_for(keys.pub, parse_hash(ad_hash), ad_sym_bits)};
      PartyB b(cfg, Rng(ad_seed, "party-b"));
      SetupOffer offer = b.make_offer();
      std::cout << "heD_b: " << to_hex(offer.he_db.bytes) << "\n";
      std::cout << "ek_b: " << to_hex(int_to_bytes(offer.ek_b.ek_b)) << "\n";
      std::cout << "enc.pk_a(k_a): " << to_hex(int_to_bytes(offer.enc_ka)) << "\n";
      if (!ad_out.empty()) write_file(ad_out, offer.serialize());
      return 0;
    }

    if (run->parsed()) {
      if (rn_bits < kMinRsaBits) throw Error("--key-bits too small");
      ScenarioConfig cfg;
      cfg.rsa_bits = rn_bits;
      cfg.seed = rn_seed;
      cfg.timeout_ticks = rn_ticks;
      cfg.hash = parse_hash(rn_hash);
      if (rn_matrix) {
        MatrixReport rep = run_matrix(cfg, rn_ext, rn_threads);
        std::cout << (rn_jsonl ? rep.jsonl() : rep.text());
        return rep.unfair_count() == 0 ? 0 : kExitUnfair;
      }
      if (rn_scenario.empty()) throw Error("give --scenario <name> or --matrix");
      ScenarioResult r = run_scenario(cfg, parse_scenario(rn_scenario));
      write_text(rn_transcript, to_text(r.outcome.transcript));
      if (rn_jsonl) {
        std::cout << to_text(r.outcome.transcript);
      } else {
        print_outcome(r);
      }
      return 0;
    }

    if (report->parsed()) {
      ScenarioConfig cfg;
      cfg.rsa_bits = rp_bits;
      cfg.seed = rp_seed;
      World w = make_world(cfg);
      ScenarioResult honest = run_scenario(w, {});
      ScenarioResult disp = run_scenario(w, parse_scenario("B:withhold-EM3"));
      MetricsComparison cmp = collect_metrics(honest.outcome, &disp.outcome);
      std::cout << (rp_jsonl ? cmp.jsonl() : cmp.text());
      return 0;
    }

    if (serve->parsed()) {
      auto reg = std::make_shared<CertRegistry>(load_registry(sv_registry));
      RoleConducts conducts = conducts_for(parse_behaviors(sv_behaviors));
      ServiceOptions opts;
      if (!sv_transcript.empty()) opts.transcript_path = sv_transcript;
      ProtocolParams params;
      params.hash = parse_hash(sv_hash);
      SttpService service(SttpIdentity{PartyId{sv_id}, load_key_pair(sv_key)}, reg, params,
                          conducts.sttp, opts);
      std::uint16_t port = service.bind(Endpoint::parse(sv_listen));
      write_port(sv_port_file, port);
      std::cerr << "sttp listening on port " << port << "\n";
      service.serve();
      return 0;
    }

    if (exchange->parsed()) {
      const bool is_a = ex_role == "a";
      RsaKeyPair keys = load_key_pair(ex_key);
      RsaPublicKey peer_pk = load_public_key(ex_peer_pk);
      RsaPublicKey sttp_pk = load_public_key(ex_sttp_pk);
      PartyId self{ex_id.empty() ? (is_a ? "P_a" : "P_b") : ex_id};
      PartyId peer{ex_peer_id.empty() ? (is_a ? "P_b" : "P_a") : ex_peer_id};
      ProtocolParams params = params_for(keys.pub, parse_hash(ex_hash), ex_sym_bits);
      RoleConducts conducts = conducts_for(parse_behaviors(ex_behaviors));
      std::optional<Endpoint> sttp;
      if (!ex_sttp.empty()) sttp = Endpoint::parse(ex_sttp);
      NetOptions opts;
      opts.timeout_ms = ex_timeout;

      NetRun net;
      std::optional<Bytes> received;
      std::string phase;
      std::vector<std::string> notes;
      if (is_a) {
        if (ex_peer.empty()) throw Error("role a needs --peer");
        PartyA a(PartyAConfig{self, keys, peer, peer_pk, sttp_pk, read_file(ex_doc), params},
                 Rng(ex_seed, "party-a"), conducts.a);
        std::optional<fs::path> session_out;
        if (!ex_session.empty()) session_out = ex_session;
        net = run_party_a(a, Socket::connect(Endpoint::parse(ex_peer), ex_timeout), sttp, opts,
                          session_out);
        received = a.received_document();
        phase = to_string(a.phase());
        notes = a.notes();
      } else {
        if (ex_listen.empty()) throw Error("role b needs --listen");
        if (ex_cert.empty()) throw Error("role b needs --cert");
        PartyB b(PartyBConfig{self, keys, peer, peer_pk, sttp_pk, load_certificate(ex_cert),
                              read_file(ex_doc), params},
                 Rng(ex_seed, "party-b"), conducts.b);
        Socket listener = Socket::listen(Endpoint::parse(ex_listen));
        write_port(ex_port_file, listener.local_port());
        auto peer_sock = listener.accept(ex_timeout * 10);
        if (!peer_sock) throw TransportError("no peer connected");
        net = run_party_b(b, std::move(*peer_sock), sttp, opts);
        received = b.received_document();
        phase = to_string(b.phase());
        notes = b.notes();
      }
      write_text(ex_transcript, to_text(net.transcript));
      for (const auto& n : net.log) std::cerr << "transport: " << n << "\n";
      for (const auto& n : notes) std::cout << "  " << n << "\n";
      std::cout << "phase: " << phase << "\n";
      std::cout << "messages: " << net.transcript.size() << "\n";
      if (!received) {
        std::cout << "document: not received\n";
        return kExitNoDocument;
      }
      if (!ex_out.empty()) write_file(ex_out, *received);
      std::cout << "document: received (" << received->size() << " bytes)\n";
      return 0;
    }

    if (dispute->parsed()) {
      if (dp_sttp.empty()) throw Error("no STTP address: pass --sttp or set FAIRX_STTP");
      PartyASession s = decode_session(read_file(dp_session));
      if (s.enc_da.empty()) throw Error("session has no committed enc.k_a(D_a)");
      NetOptions opts;
      opts.timeout_ms = dp_timeout;
      DisputeReply r = request_dispute(Endpoint::parse(dp_sttp), s.self_id,
                                       session_id_for(s.adv), build_dr1(s), opts);
      if (r.error) {
        std::cout << "rejected at check " << r.error->failed_check << ": " << r.error->reason
                  << "\n";
        return kExitNoDocument;
      }
      if (!r.dr3) {
        std::cout << "no answer from the STTP\n";
        return kExitNoDocument;
      }
      auto doc = recover_document(s, r.dr3->r_b);
      if (!doc) {
        std::cout << "DR-M3 carries an inconsistent r_b (STTP misbehavior)\n";
        return kExitNoDocument;
      }
      if (!dp_out.empty()) write_file(dp_out, *doc);
      std::cout << "document: received (" << doc->size() << " bytes)\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
