#include "fairx/harness/matrix.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace fairx {

std::string scenario_name(const std::vector<AdversaryBehavior>& behaviors) {
  if (behaviors.empty()) return "honest";
  std::string out;
  for (const auto& b : behaviors) {
    if (!out.empty()) out += "+";
    out += b.name();
  }
  return out;
}

std::vector<AdversaryBehavior> parse_scenario(const std::string& name) {
  std::vector<AdversaryBehavior> out;
  if (name == "honest") return out;
  std::size_t start = 0;
  while (start <= name.size()) {
    std::size_t plus = name.find('+', start);
    if (plus == std::string::npos) plus = name.size();
    out.push_back(AdversaryBehavior::parse(std::string_view(name).substr(start, plus - start)));
    start = plus + 1;
  }
  return out;
}

std::vector<ScenarioSpec> scenario_matrix(bool include_extensions) {
  std::vector<ScenarioSpec> specs;
  auto add = [&](std::vector<AdversaryBehavior> bs, bool ext = false) {
    specs.push_back({scenario_name(bs), std::move(bs), ext});
  };
  using A = AdversaryAction;
  add({});
  for (Em1Mutation m :
       {Em1Mutation::EncDb, Em1Mutation::CertSignature, Em1Mutation::TokenYa, Em1Mutation::TokenPa,
        Em1Mutation::XbPlusOne, Em1Mutation::XbOverflow, Em1Mutation::ZbForeignKey,
        Em1Mutation::YbForeignBlind, Em1Mutation::EncKa}) {
    add({{A::MalformedEM1, m}});
  }
  for (A a : {A::WithholdEM3, A::CorruptEM3, A::WrongKeyEM2, A::WrongDocEM2,
              A::WrongDocWrongKeyEM2, A::AbsentEM2, A::PrematureDispute}) {
    add({{a}});
  }
  for (Dr1Mutation m : {Dr1Mutation::JunkEncDa, Dr1Mutation::ForeignYb, Dr1Mutation::CorruptToken,
                        Dr1Mutation::CorruptCert}) {
    add({{A::MalformedDR1, Em1Mutation::None, m}});
  }
  // Alone, an STTP deviation never triggers: nobody disputes.
  add({{A::CorruptDR3}});
  add({{A::WithholdDR2}});
  if (include_extensions) {
    add({{A::WithholdEM3}, {A::CorruptDR3}}, true);
    add({{A::WithholdEM3}, {A::WithholdDR2}}, true);
    add({{A::CorruptEM3}, {A::CorruptDR3}}, true);
    add({{A::PrematureDispute}, {A::WithholdDR2}}, true);
  }
  return specs;
}

MatrixReport run_matrix(const World& world, const std::vector<ScenarioSpec>& specs,
                        unsigned threads) {
  MatrixReport report;
  report.config = world.config;
  report.rows.resize(specs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        ScenarioResult r = run_scenario(world, specs[i].behaviors);
        MatrixRow& row = report.rows[i];
        row.spec = specs[i];
        row.verdict = r.verdict;
        row.metrics = r.outcome.metrics;
        row.a_phase = to_string(r.outcome.a_phase);
        row.b_phase = to_string(r.outcome.b_phase);
        row.abort_reason = r.outcome.abort_reason.value_or("");
        row.sttp_misbehavior_detected = r.outcome.sttp_misbehavior_detected;
        row.sttp_leaks = find_sttp_leaks(r.outcome);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return report;
}

MatrixReport run_matrix(const ScenarioConfig& config, bool include_extensions, unsigned threads) {
  return run_matrix(make_world(config), scenario_matrix(include_extensions), threads);
}

std::size_t MatrixReport::unfair_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) {
    if (!r.spec.extension && r.verdict.classification == Verdict::Unfair) ++n;
  }
  return n;
}

std::size_t MatrixReport::leak_count() const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.sttp_leaks.size();
  return n;
}

std::string MatrixReport::text() const {
  std::ostringstream out;
  out << "key bits " << config.rsa_bits << ", seed " << config.seed << ", hash "
      << hash_name(config.hash) << "\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-48s %-17s %4s %4s %5s %5s  %s\n", "scenario", "verdict", "exch",
                "disp", "rsaE", "rsaD", "note");
  out << buf;
  for (const auto& r : rows) {
    std::string name = r.spec.name + (r.spec.extension ? " (ext)" : "");
    std::string note = r.abort_reason;
    if (!r.sttp_leaks.empty()) note += " LEAK";
    std::snprintf(buf, sizeof buf, "%-48s %-17s %4llu %4llu %5llu %5llu  %s\n", name.c_str(),
                  std::string(to_string(r.verdict.classification)).c_str(),
                  static_cast<unsigned long long>(r.metrics.exchange_messages),
                  static_cast<unsigned long long>(r.metrics.dispute_messages),
                  static_cast<unsigned long long>(r.metrics.rsa_ops_exchange),
                  static_cast<unsigned long long>(r.metrics.rsa_ops_dispute), note.c_str());
    out << buf;
  }
  out << "scenarios " << rows.size() << ", unfair " << unfair_count() << ", sttp leaks "
      << leak_count() << "\n";
  return out.str();
}

std::string MatrixReport::jsonl() const {
  std::string out;
  for (const auto& r : rows) {
    nlohmann::ordered_json j = {
        {"scenario", r.spec.name},
        {"extension", r.spec.extension},
        {"verdict", to_string(r.verdict.classification)},
        {"detail", r.verdict.detail},
        {"exchange_messages", r.metrics.exchange_messages},
        {"dispute_messages", r.metrics.dispute_messages},
        {"rsa_ops_exchange", r.metrics.rsa_ops_exchange},
        {"rsa_ops_dispute", r.metrics.rsa_ops_dispute},
        {"sym_ops_exchange", r.metrics.sym_ops_exchange},
        {"a_phase", r.a_phase},
        {"b_phase", r.b_phase},
        {"abort_reason", r.abort_reason},
        {"sttp_misbehavior_detected", r.sttp_misbehavior_detected},
        {"sttp_leaks", r.sttp_leaks},
    };
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace fairx
