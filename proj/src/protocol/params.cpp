#include "fairx/protocol/params.hpp"

namespace fairx {

std::string_view to_string(Em1Mutation m) {
  switch (m) {
    case Em1Mutation::None: return "none";
    case Em1Mutation::EncDb: return "enc-db";
    case Em1Mutation::CertSignature: return "cert-sig";
    case Em1Mutation::TokenYa: return "token-ya";
    case Em1Mutation::TokenPa: return "token-pa";
    case Em1Mutation::XbPlusOne: return "xb-plus-one";
    case Em1Mutation::XbOverflow: return "xb-overflow";
    case Em1Mutation::ZbForeignKey: return "zb-foreign-key";
    case Em1Mutation::YbForeignBlind: return "yb-foreign-blind";
    case Em1Mutation::EncKa: return "enc-ka";
  }
  return "?";
}

std::string_view to_string(Em2Deviation d) {
  switch (d) {
    case Em2Deviation::None: return "none";
    case Em2Deviation::WrongKey: return "wrong-key";
    case Em2Deviation::WrongDocument: return "wrong-doc";
    case Em2Deviation::WrongDocumentWrongKey: return "wrong-doc-wrong-key";
    case Em2Deviation::Absent: return "absent";
  }
  return "?";
}

std::string_view to_string(Dr1Mutation m) {
  switch (m) {
    case Dr1Mutation::None: return "none";
    case Dr1Mutation::JunkEncDa: return "junk-enc-da";
    case Dr1Mutation::ForeignYb: return "foreign-yb";
    case Dr1Mutation::CorruptToken: return "corrupt-token";
    case Dr1Mutation::CorruptCert: return "corrupt-cert";
  }
  return "?";
}

}  // namespace fairx
