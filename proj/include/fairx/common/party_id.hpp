#pragma once

#include <compare>
#include <string>

namespace fairx {

struct PartyId {
  std::string value;

  friend auto operator<=>(const PartyId&, const PartyId&) = default;
};

}  // namespace fairx
