#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "fairx/cert/shared_cert.hpp"
#include "fairx/crypto/hash.hpp"
#include "fairx/vre/vre.hpp"

namespace fairx {

class UnknownMessageType : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

enum class MessageType : std::uint8_t {
  EM1 = 0x01,
  EM2 = 0x02,
  EM3 = 0x03,
  DR1 = 0x04,
  DR2 = 0x05,
  DR3 = 0x06,
};

std::string_view to_string(MessageType t);
MessageType parse_message_type(std::uint8_t tag);

inline bool is_dispute_message(MessageType t) { return t >= MessageType::DR1; }

// S_b: P_b's signature over canonical([C_bt, Y_b, Y_a, P_a]).
struct AuthorizationToken {
  BigInt s_b;
  friend bool operator==(const AuthorizationToken&, const AuthorizationToken&) = default;
};

// enc.pk_a(X_b + Z_b): canonical([X_b, Z_b]) cut into blocks of
// floor((bits(n_a)-1)/8) bytes, each block RSA-encrypted under pk_a.
struct EncryptedPair {
  std::uint32_t plain_length = 0;
  std::vector<BigInt> blocks;

  Bytes serialize() const;
  static EncryptedPair deserialize(ByteView bytes);

  friend bool operator==(const EncryptedPair&, const EncryptedPair&) = default;
};

std::size_t pair_block_bytes(const RsaPublicKey& pk);
EncryptedPair encrypt_pair(const BigInt& x_b, const BigInt& z_b, const RsaPublicKey& pk_a);
// Throws DecodeError if the blocks do not decode to a canonical pair.
std::pair<BigInt, BigInt> decrypt_pair(const EncryptedPair& enc, const RsaPrivateKey& sk_a);

struct MessageEM1 {
  Bytes enc_db;
  SharedKeyCertificate cert;
  EncryptedPair enc_xz;
  BigInt y_b;
  AuthorizationToken s_b;
  BigInt enc_ka;

  friend bool operator==(const MessageEM1&, const MessageEM1&) = default;
};

struct MessageEM2 {
  Bytes enc_da;
  friend bool operator==(const MessageEM2&, const MessageEM2&) = default;
};

struct MessageEM3 {
  BigInt r_b;
  friend bool operator==(const MessageEM3&, const MessageEM3&) = default;
};

// X_b is deliberately absent: the STTP never sees the blinded key.
struct MessageDR1 {
  SharedKeyCertificate cert;
  Bytes enc_da;
  BigInt y_b;
  AuthorizationToken s_b;
  friend bool operator==(const MessageDR1&, const MessageDR1&) = default;
};

struct MessageDR2 {
  Bytes enc_da;
  friend bool operator==(const MessageDR2&, const MessageDR2&) = default;
};

struct MessageDR3 {
  BigInt r_b;
  friend bool operator==(const MessageDR3&, const MessageDR3&) = default;
};

using ExchangeMessage =
    std::variant<MessageEM1, MessageEM2, MessageEM3, MessageDR1, MessageDR2, MessageDR3>;

MessageType type_of(const ExchangeMessage& msg);

// Canonical encoding of the message fields, without the type tag.
Bytes encode_body(const ExchangeMessage& msg);
ExchangeMessage decode_body(MessageType type, ByteView body);

// [1-byte type tag][canonical body]
Bytes serialize_message(const ExchangeMessage& msg);
ExchangeMessage deserialize_message(ByteView bytes);

// Pre-exchange material. P_b sends the offer, P_a answers with heD_a.
struct SetupOffer {
  Digest he_db;
  KeyCommitment ek_b;
  BigInt enc_ka;

  Bytes serialize() const;
  static SetupOffer deserialize(ByteView bytes);
};

struct SetupReply {
  Digest he_da;

  Bytes serialize() const;
  static SetupReply deserialize(ByteView bytes);
};

struct Advertisement {
  Digest he_db;
  KeyCommitment ek_b;
  Digest he_da;
  BigInt enc_ka_for_pa;
};

// 16 bytes naming one exchange, derived from its advertisement.
using SessionId = std::array<std::uint8_t, 16>;
SessionId session_id_for(const Advertisement& adv);

}  // namespace fairx
