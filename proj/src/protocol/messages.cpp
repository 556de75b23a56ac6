#include "fairx/protocol/messages.hpp"

#include "fairx/crypto/canonical.hpp"

namespace fairx {

std::string_view to_string(MessageType t) {
  switch (t) {
    case MessageType::EM1: return "E-M1";
    case MessageType::EM2: return "E-M2";
    case MessageType::EM3: return "E-M3";
    case MessageType::DR1: return "DR-M1";
    case MessageType::DR2: return "DR-M2";
    case MessageType::DR3: return "DR-M3";
  }
  return "?";
}

MessageType parse_message_type(std::uint8_t tag) {
  if (tag < 0x01 || tag > 0x06) {
    throw UnknownMessageType("unknown message type tag " + std::to_string(tag));
  }
  return static_cast<MessageType>(tag);
}

Bytes EncryptedPair::serialize() const {
  CanonicalWriter w;
  w.integer(BigInt(static_cast<unsigned long>(plain_length)));
  for (const auto& b : blocks) w.integer(b);
  return w.take();
}

EncryptedPair EncryptedPair::deserialize(ByteView bytes) {
  CanonicalReader r(bytes);
  EncryptedPair out;
  BigInt len = r.integer();
  if (len > 0xffffffffUL) throw DecodeError("pair length out of range");
  out.plain_length = static_cast<std::uint32_t>(len.get_ui());
  while (!r.done()) out.blocks.push_back(r.integer());
  return out;
}

std::size_t pair_block_bytes(const RsaPublicKey& pk) {
  std::size_t width = (bit_length(pk.n) - 1) / 8;
  if (width == 0) throw CryptoError("modulus too small to carry a byte block");
  return width;
}

EncryptedPair encrypt_pair(const BigInt& x_b, const BigInt& z_b, const RsaPublicKey& pk_a) {
  Bytes plain = CanonicalWriter().integer(x_b).integer(z_b).take();
  const std::size_t width = pair_block_bytes(pk_a);
  EncryptedPair out;
  out.plain_length = static_cast<std::uint32_t>(plain.size());
  for (std::size_t pos = 0; pos < plain.size(); pos += width) {
    std::size_t len = std::min(width, plain.size() - pos);
    BigInt block = int_from_bytes(ByteView(plain).subspan(pos, len));
    out.blocks.push_back(rsa_encrypt(pk_a, block, "enc.pk_a(X_b+Z_b) block"));
  }
  return out;
}

std::pair<BigInt, BigInt> decrypt_pair(const EncryptedPair& enc, const RsaPrivateKey& sk_a) {
  const std::size_t width = pair_block_bytes(RsaPublicKey{3, sk_a.n});
  const std::size_t expected_blocks = (enc.plain_length + width - 1) / width;
  if (enc.blocks.size() != expected_blocks) throw DecodeError("pair block count mismatch");
  Bytes plain;
  plain.reserve(enc.plain_length);
  for (std::size_t i = 0; i < enc.blocks.size(); ++i) {
    if (enc.blocks[i] >= sk_a.n) throw DecodeError("pair block outside the modulus");
    std::size_t len = std::min<std::size_t>(width, enc.plain_length - i * width);
    BigInt block = rsa_decrypt(sk_a, enc.blocks[i], "enc.pk_a(X_b+Z_b) block");
    Bytes raw = int_to_bytes_padded(block, len);
    plain.insert(plain.end(), raw.begin(), raw.end());
  }
  CanonicalReader r(plain);
  BigInt x = r.integer();
  BigInt z = r.integer();
  r.expect_end();
  return {x, z};
}

MessageType type_of(const ExchangeMessage& msg) {
  return static_cast<MessageType>(msg.index() + 1);
}

namespace {

struct BodyEncoder {
  Bytes operator()(const MessageEM1& m) const {
    return CanonicalWriter()
        .bytes(m.enc_db)
        .bytes(m.cert.serialize())
        .bytes(m.enc_xz.serialize())
        .integer(m.y_b)
        .integer(m.s_b.s_b)
        .integer(m.enc_ka)
        .take();
  }
  Bytes operator()(const MessageEM2& m) const { return CanonicalWriter().bytes(m.enc_da).take(); }
  Bytes operator()(const MessageEM3& m) const { return CanonicalWriter().integer(m.r_b).take(); }
  Bytes operator()(const MessageDR1& m) const {
    return CanonicalWriter()
        .bytes(m.cert.serialize())
        .bytes(m.enc_da)
        .integer(m.y_b)
        .integer(m.s_b.s_b)
        .take();
  }
  Bytes operator()(const MessageDR2& m) const { return CanonicalWriter().bytes(m.enc_da).take(); }
  Bytes operator()(const MessageDR3& m) const { return CanonicalWriter().integer(m.r_b).take(); }
};

}  // namespace

Bytes encode_body(const ExchangeMessage& msg) { return std::visit(BodyEncoder{}, msg); }

ExchangeMessage decode_body(MessageType type, ByteView body) {
  CanonicalReader r(body);
  ExchangeMessage out;
  switch (type) {
    case MessageType::EM1: {
      MessageEM1 m;
      m.enc_db = r.bytes();
      m.cert = SharedKeyCertificate::deserialize(r.bytes());
      m.enc_xz = EncryptedPair::deserialize(r.bytes());
      m.y_b = r.integer();
      m.s_b.s_b = r.integer();
      m.enc_ka = r.integer();
      out = std::move(m);
      break;
    }
    case MessageType::EM2:
      out = MessageEM2{r.bytes()};
      break;
    case MessageType::EM3:
      out = MessageEM3{r.integer()};
      break;
    case MessageType::DR1: {
      MessageDR1 m;
      m.cert = SharedKeyCertificate::deserialize(r.bytes());
      m.enc_da = r.bytes();
      m.y_b = r.integer();
      m.s_b.s_b = r.integer();
      out = std::move(m);
      break;
    }
    case MessageType::DR2:
      out = MessageDR2{r.bytes()};
      break;
    case MessageType::DR3:
      out = MessageDR3{r.integer()};
      break;
    default:
      throw UnknownMessageType("unknown message type");
  }
  r.expect_end();
  return out;
}

Bytes serialize_message(const ExchangeMessage& msg) {
  Bytes out{static_cast<std::uint8_t>(type_of(msg))};
  Bytes body = encode_body(msg);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

ExchangeMessage deserialize_message(ByteView bytes) {
  if (bytes.empty()) throw DecodeError("empty message");
  return decode_body(parse_message_type(bytes[0]), bytes.subspan(1));
}

Bytes SetupOffer::serialize() const {
  return CanonicalWriter().bytes(he_db.bytes).integer(ek_b.ek_b).integer(enc_ka).take();
}

SetupOffer SetupOffer::deserialize(ByteView bytes) {
  CanonicalReader r(bytes);
  SetupOffer o;
  o.he_db = Digest{r.bytes()};
  o.ek_b = KeyCommitment{r.integer()};
  o.enc_ka = r.integer();
  r.expect_end();
  return o;
}

Bytes SetupReply::serialize() const { return CanonicalWriter().bytes(he_da.bytes).take(); }

SetupReply SetupReply::deserialize(ByteView bytes) {
  CanonicalReader r(bytes);
  SetupReply o{Digest{r.bytes()}};
  r.expect_end();
  return o;
}

SessionId session_id_for(const Advertisement& adv) {
  Bytes payload = CanonicalWriter()
                      .bytes(adv.he_db.bytes)
                      .integer(adv.ek_b.ek_b)
                      .bytes(adv.he_da.bytes)
                      .integer(adv.enc_ka_for_pa)
                      .take();
  Digest d = hash(payload, HashAlgorithm::Sha256);
  SessionId id{};
  std::copy_n(d.bytes.begin(), id.size(), id.begin());
  return id;
}

}  // namespace fairx
