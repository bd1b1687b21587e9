#include "trse/core.hpp"

#include <algorithm>

#include "trse/hash.hpp"
#include "trse/wire.hpp"

namespace trse {
namespace {

constexpr int kMaxNonceDraws = 256;

// The per-member bases of the chain: X_i = P_i + Q + (G + R), Y_i = P_i + Q.
struct ChainBases {
  Point x;
  Point y;
};

ChainBases Bases(const Point& member, const Point& tag, const Point& g_plus_r) {
  Point y = member + tag;
  Point x = y + g_plus_r;
  return {std::move(x), std::move(y)};
}

}  // namespace

void RingPublic::Validate() const {
  if (keys.empty()) throw std::invalid_argument("ring must have at least one member");
  if (keys.size() != ids.size()) throw std::invalid_argument("ring keys and ids differ in length");
  if (keys.size() > 0xFFFF) throw std::invalid_argument("ring too large");
  for (const Point& p : keys) {
    if (p.IsIdentity()) throw std::invalid_argument("ring contains the identity point");
  }
}

Bytes RingPublic::Encode() const {
  Validate();
  ByteWriter w;
  w.U8(wire::kVersion);
  w.U16(static_cast<uint16_t>(keys.size()));
  for (size_t i = 0; i < keys.size(); ++i) {
    w.String16(ids[i]);
    w.Raw(keys[i].EncodeFixed());
  }
  return std::move(w).take();
}

RingPublic RingPublic::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  const uint16_t n = r.U16();
  if (n == 0) throw DecodeError("ring: no members");
  RingPublic ring;
  for (uint16_t i = 0; i < n; ++i) {
    ring.ids.push_back(r.String16());
    ring.keys.push_back(wire::ReadPoint(r, curve));
    if (ring.keys.back().IsIdentity()) throw DecodeError("ring: identity member key");
  }
  r.ExpectDone("ring");
  return ring;
}

Bytes Ciphertext::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.U16(static_cast<uint16_t>(responses.size()));
  for (const Point* p : {&tag, &c1, &c2, &h}) w.Raw(p->EncodeFixed());
  w.U32(static_cast<uint32_t>(masked.size()));
  w.Raw(masked);
  w.Raw(chain_seed.Encode());
  for (const Scalar& s : responses) w.Raw(s.Encode());
  return std::move(w).take();
}

Ciphertext Ciphertext::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  const uint16_t n = r.U16();
  if (n == 0) throw DecodeError("ciphertext: empty ring");
  Point tag = wire::ReadPoint(r, curve);
  Point c1 = wire::ReadPoint(r, curve);
  Point c2 = wire::ReadPoint(r, curve);
  Point h = wire::ReadPoint(r, curve);
  const uint32_t len = r.U32();
  if (len == 0 || len > kMaxMessageBytes) throw DecodeError("ciphertext: bad message length");
  const auto masked = r.Raw(len);
  Scalar seed = wire::ReadScalar(r, curve);
  std::vector<Scalar> responses;
  for (uint16_t i = 0; i < n; ++i) responses.push_back(wire::ReadScalar(r, curve));
  r.ExpectDone("ciphertext");
  return Ciphertext{std::move(tag), std::move(c1), std::move(c2),     std::move(h),
                    Bytes(masked.begin(), masked.end()), std::move(seed), std::move(responses)};
}

size_t Ciphertext::EncodedSize(const Curve& curve, size_t n, size_t message_len) {
  return 1 + 2 + 4 * curve.point_bytes() + 4 + message_len + (n + 1) * curve.scalar_bytes();
}

Ciphertext Signcrypt(const Ring& ring, const UserKeyPair& signer, const Point& ypub,
                     std::span<const uint8_t> message, RandomSource& rng,
                     SigncryptSecrets* secrets) {
  const RingPublic& members = ring.members;
  members.Validate();
  const size_t n = members.size();
  const size_t a = ring.signer_index;
  if (a >= n || !(members.keys[a] == signer.pub) || members.ids[a] != signer.id) {
    throw std::invalid_argument("signer is not at the given ring position");
  }
  if (message.empty() || message.size() > kMaxMessageBytes) {
    throw std::invalid_argument("message must be 1.." + std::to_string(kMaxMessageBytes) +
                                " bytes");
  }
  const Curve& curve = ypub.curve();
  const Scalar one = Scalar::FromU64(curve, 1);
  if ((one + signer.d).IsZero()) throw std::invalid_argument("degenerate signing key (1 + d = 0)");
  const Scalar inv_one_plus_d = (one + signer.d).Inverse();

  const Point g = curve.Generator();
  const Point ring_base = HashRingToPoint(members.keys);
  const Point g_plus_r = g + ring_base;
  const Point tag = signer.d * ring_base;

  const Scalar r = Scalar::RandomNonZero(curve, rng);
  Point c1 = r * g;
  Point c2 = signer.pub + r * ypub;

  for (int attempt = 0; attempt < kMaxNonceDraws; ++attempt) {
    const Scalar h = Scalar::RandomNonZero(curve, rng);
    Point h_point = h * g;
    Bytes masked(message.begin(), message.end());
    XorInto(masked, Keystream(signer.id, h_point, members.ids, members.keys, ypub,
                              8 * message.size()));

    const Scalar k = HashNonce(h, tag);
    std::vector<Scalar> c(n, Scalar(curve));
    std::vector<Scalar> s(n, Scalar(curve));
    c[(a + 1) % n] = HashChain(c1, c2, signer.pub, tag, k * g_plus_r, masked, ypub, h_point);
    for (size_t step = 1; step < n; ++step) {
      const size_t i = (a + step) % n;
      s[i] = Scalar::RandomNonZero(curve, rng);
      const ChainBases b = Bases(members.keys[i], tag, g_plus_r);
      const Point z = StrausDoubleMul(s[i], b.x, c[i], b.y);
      c[(i + 1) % n] = HashChain(c1, c2, members.keys[i], tag, z, masked, ypub, h_point);
    }
    s[a] = inv_one_plus_d * (k - c[a] * signer.d);
    if (s[a].IsZero()) continue;

    if (secrets != nullptr) *secrets = SigncryptSecrets{h, r, k, a};
    return Ciphertext{tag, std::move(c1), std::move(c2), std::move(h_point), std::move(masked),
                      std::move(c[0]), std::move(s)};
  }
  throw std::runtime_error("signcrypt: could not draw a usable nonce");
}

bool Verify(const RingPublic& ring, const Point& ypub, const Ciphertext& ct) {
  ring.Validate();
  const size_t n = ring.size();
  if (ct.ring_size() != n) {
    throw std::invalid_argument("ciphertext has " + std::to_string(ct.ring_size()) +
                                " responses for a ring of " + std::to_string(n));
  }
  if (ct.chain_seed.IsZero()) return false;
  if (std::any_of(ct.responses.begin(), ct.responses.end(), [](const Scalar& s) { return s.IsZero(); })) {
    return false;
  }
  if (ct.tag.IsIdentity() || ct.c1.IsIdentity() || ct.h.IsIdentity() || ct.masked.empty()) {
    return false;
  }

  const Curve& curve = ypub.curve();
  const Point ring_base = HashRingToPoint(ring.keys);
  const Point g_plus_r = curve.Generator() + ring_base;
  Scalar c = ct.chain_seed;
  for (size_t i = 0; i < n; ++i) {
    const ChainBases b = Bases(ring.keys[i], ct.tag, g_plus_r);
    const Point z = StrausDoubleMul(ct.responses[i], b.x, c, b.y);
    c = HashChain(ct.c1, ct.c2, ring.keys[i], ct.tag, z, ct.masked, ypub, ct.h);
  }
  return c == ct.chain_seed;
}

Bytes Decrypt(const Ciphertext& ct, std::string_view signer_id, const RingPublic& ring,
              const Point& ypub) {
  if (std::find(ring.ids.begin(), ring.ids.end(), signer_id) == ring.ids.end()) {
    throw std::invalid_argument("identity is not a ring member");
  }
  if (!Verify(ring, ypub, ct)) throw ProtocolReject("ciphertext does not verify");
  Bytes out = ct.masked;
  XorInto(out, Keystream(signer_id, ct.h, ring.ids, ring.keys, ypub, 8 * out.size()));
  return out;
}

bool Link(const Ciphertext& a, const RingPublic& ring_a, const Ciphertext& b,
          const RingPublic& ring_b) {
  ring_a.Validate();
  ring_b.Validate();
  if (!(HashRingToPoint(ring_a.keys) == HashRingToPoint(ring_b.keys))) {
    throw std::invalid_argument("ciphertexts were made for different rings; tags are incomparable");
  }
  return a.tag == b.tag;
}

}  // namespace trse
