#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fairx/protocol/params.hpp"

namespace fairx {

enum class AdversaryRole { A, B, Sttp };

enum class AdversaryAction {
  MalformedEM1,
  WithholdEM3,
  CorruptEM3,
  WrongKeyEM2,
  WrongDocEM2,
  WrongDocWrongKeyEM2,
  AbsentEM2,
  PrematureDispute,
  MalformedDR1,
  CorruptDR3,
  WithholdDR2,
};

// One deviation by one role. MalformedEM1 and MalformedDR1 carry the field
// they tamper with.
struct AdversaryBehavior {
  AdversaryAction action;
  Em1Mutation em1_field = Em1Mutation::None;
  Dr1Mutation dr1_field = Dr1Mutation::None;

  AdversaryRole role() const;
  // e.g. "B:malformed-EM1[cert-sig]", "A:premature-dispute"
  std::string name() const;
  static AdversaryBehavior parse(std::string_view text);

  friend bool operator==(const AdversaryBehavior&, const AdversaryBehavior&) = default;
};

struct RoleConducts {
  PartyAConduct a;
  PartyBConduct b;
  SttpConduct sttp;
};

// Throws ProtocolError for behaviors that do not reference a valid deviation
// point (a malformed message with no field selected).
RoleConducts conducts_for(const std::vector<AdversaryBehavior>& behaviors);

}  // namespace fairx
