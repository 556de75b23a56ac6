#include "fairx/harness/behavior.hpp"

#include <array>
#include <utility>

namespace fairx {

namespace {

struct ActionName {
  AdversaryAction action;
  AdversaryRole role;
  std::string_view name;
};

constexpr std::array<ActionName, 11> kActions{{
    {AdversaryAction::MalformedEM1, AdversaryRole::B, "malformed-EM1"},
    {AdversaryAction::WithholdEM3, AdversaryRole::B, "withhold-EM3"},
    {AdversaryAction::CorruptEM3, AdversaryRole::B, "corrupt-EM3"},
    {AdversaryAction::WrongKeyEM2, AdversaryRole::A, "wrong-key-EM2"},
    {AdversaryAction::WrongDocEM2, AdversaryRole::A, "wrong-doc-EM2"},
    {AdversaryAction::WrongDocWrongKeyEM2, AdversaryRole::A, "wrong-doc-wrong-key-EM2"},
    {AdversaryAction::AbsentEM2, AdversaryRole::A, "absent-EM2"},
    {AdversaryAction::PrematureDispute, AdversaryRole::A, "premature-dispute"},
    {AdversaryAction::MalformedDR1, AdversaryRole::A, "malformed-DR1"},
    {AdversaryAction::CorruptDR3, AdversaryRole::Sttp, "corrupt-DR3"},
    {AdversaryAction::WithholdDR2, AdversaryRole::Sttp, "withhold-DR2"},
}};

const ActionName& lookup(AdversaryAction a) {
  for (const auto& entry : kActions) {
    if (entry.action == a) return entry;
  }
  throw ProtocolError("unknown adversary action");
}

std::string_view role_prefix(AdversaryRole r) {
  switch (r) {
    case AdversaryRole::A: return "A";
    case AdversaryRole::B: return "B";
    case AdversaryRole::Sttp: return "STTP";
  }
  return "?";
}

constexpr std::array<Em1Mutation, 9> kEm1Fields{
    Em1Mutation::EncDb,     Em1Mutation::CertSignature, Em1Mutation::TokenYa,
    Em1Mutation::TokenPa,   Em1Mutation::XbPlusOne,     Em1Mutation::XbOverflow,
    Em1Mutation::ZbForeignKey, Em1Mutation::YbForeignBlind, Em1Mutation::EncKa};

constexpr std::array<Dr1Mutation, 4> kDr1Fields{Dr1Mutation::JunkEncDa, Dr1Mutation::ForeignYb,
                                                Dr1Mutation::CorruptToken, Dr1Mutation::CorruptCert};

}  // namespace

AdversaryRole AdversaryBehavior::role() const { return lookup(action).role; }

std::string AdversaryBehavior::name() const {
  const auto& entry = lookup(action);
  std::string out = std::string(role_prefix(entry.role)) + ":" + std::string(entry.name);
  if (action == AdversaryAction::MalformedEM1) out += "[" + std::string(to_string(em1_field)) + "]";
  if (action == AdversaryAction::MalformedDR1) out += "[" + std::string(to_string(dr1_field)) + "]";
  return out;
}

AdversaryBehavior AdversaryBehavior::parse(std::string_view text) {
  std::string_view field;
  if (auto open = text.find('['); open != std::string_view::npos) {
    if (text.back() != ']') throw ProtocolError("unterminated field selector in behavior");
    field = text.substr(open + 1, text.size() - open - 2);
    text = text.substr(0, open);
  }
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ProtocolError("behavior must look like ROLE:action");
  std::string_view role = text.substr(0, colon);
  std::string_view action = text.substr(colon + 1);
  for (const auto& entry : kActions) {
    if (entry.name != action || role_prefix(entry.role) != role) continue;
    AdversaryBehavior b{entry.action};
    if (entry.action == AdversaryAction::MalformedEM1) {
      for (auto f : kEm1Fields) {
        if (to_string(f) == field) b.em1_field = f;
      }
      if (b.em1_field == Em1Mutation::None) throw ProtocolError("unknown E-M1 field selector");
    } else if (entry.action == AdversaryAction::MalformedDR1) {
      for (auto f : kDr1Fields) {
        if (to_string(f) == field) b.dr1_field = f;
      }
      if (b.dr1_field == Dr1Mutation::None) throw ProtocolError("unknown DR-M1 field selector");
    } else if (!field.empty()) {
      throw ProtocolError("behavior takes no field selector");
    }
    return b;
  }
  throw ProtocolError("unknown behavior " + std::string(text));
}

RoleConducts conducts_for(const std::vector<AdversaryBehavior>& behaviors) {
  RoleConducts c;
  for (const auto& b : behaviors) {
    switch (b.action) {
      case AdversaryAction::MalformedEM1:
        if (b.em1_field == Em1Mutation::None) throw ProtocolError("malformed-EM1 needs a field");
        c.b.em1 = b.em1_field;
        break;
      case AdversaryAction::WithholdEM3: c.b.withhold_em3 = true; break;
      case AdversaryAction::CorruptEM3: c.b.corrupt_em3 = true; break;
      case AdversaryAction::WrongKeyEM2: c.a.em2 = Em2Deviation::WrongKey; break;
      case AdversaryAction::WrongDocEM2: c.a.em2 = Em2Deviation::WrongDocument; break;
      case AdversaryAction::WrongDocWrongKeyEM2:
        c.a.em2 = Em2Deviation::WrongDocumentWrongKey;
        break;
      case AdversaryAction::AbsentEM2:
        c.a.em2 = Em2Deviation::Absent;
        c.a.auto_dispute = false;
        break;
      case AdversaryAction::PrematureDispute: c.a.premature_dispute = true; break;
      case AdversaryAction::MalformedDR1:
        if (b.dr1_field == Dr1Mutation::None) throw ProtocolError("malformed-DR1 needs a field");
        c.a.dr1 = b.dr1_field;
        break;
      case AdversaryAction::CorruptDR3: c.sttp.corrupt_dr3 = true; break;
      case AdversaryAction::WithholdDR2: c.sttp.withhold_dr2 = true; break;
    }
  }
  return c;
}

}  // namespace fairx
