#include "trse/identity.hpp"

#include <sstream>

#include "trse/hash.hpp"
#include "trse/wire.hpp"

namespace trse {
namespace {

constexpr int kMaxDraws = 256;
constexpr std::string_view kRegistryMagic = "trse-registry";
constexpr std::string_view kRegistryTag = "TRSE-REG";

Scalar XCoordinateScalar(const Point& p) {
  const auto xy = p.Affine();
  return Scalar::FromBytesReduce(p.curve(), xy->first);
}

Bytes RegistryRecord(const IdentityRecord& rec) {
  ByteWriter w;
  w.String16(rec.id);
  w.Raw(rec.pub.EncodeFixed());
  return std::move(w).take();
}

Bytes ChainStep(const Curve& curve, const Bytes& prev, const Bytes& record) {
  Bytes payload = prev;
  payload.insert(payload.end(), record.begin(), record.end());
  return DomainHash(curve, kRegistryTag, 0, payload);
}

Bytes ChainStart(const Curve& curve) { return DomainHash(curve, kRegistryTag, 0, ToBytes(curve.id())); }

}  // namespace

Bytes PartialPrivateKey::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.String16(id);
  w.Raw(nonce_point.EncodeFixed());
  w.Raw(z.EncodeFixed());
  return std::move(w).take();
}

PartialPrivateKey PartialPrivateKey::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  std::string id = r.String16();
  Point a = wire::ReadPoint(r, curve);
  Point z = wire::ReadPoint(r, curve);
  r.ExpectDone("partial key");
  if (z.IsIdentity()) throw DecodeError("partial key: z is the identity");
  return PartialPrivateKey{std::move(id), std::move(a), std::move(z)};
}

Bytes UserKeyPair::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.String16(id);
  w.Raw(x.Encode());
  w.Raw(beta.Encode());
  w.Raw(d.Encode());
  w.Raw(pub.EncodeFixed());
  return std::move(w).take();
}

UserKeyPair UserKeyPair::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  std::string id = r.String16();
  Scalar x = wire::ReadScalar(r, curve);
  Scalar beta = wire::ReadScalar(r, curve);
  Scalar d = wire::ReadScalar(r, curve);
  Point pub = wire::ReadPoint(r, curve);
  r.ExpectDone("key pair");
  if (d.IsZero() || !(d * curve.Generator() == pub)) {
    throw DecodeError("key pair: public key does not match private key");
  }
  return UserKeyPair{std::move(id), std::move(x), std::move(beta), std::move(d), std::move(pub)};
}

std::optional<PartialPrivateKey> IssuePartialKeyWithNonce(const Scalar& s, const Point& ypub,
                                                          std::string_view id,
                                                          const Scalar& alpha) {
  const Scalar factor = s + alpha;
  if (factor.IsZero()) return std::nullopt;
  const Point a = alpha * ypub.curve().Generator();
  const Point phi = HashIdentityToPoint(id, ypub, a);
  return PartialPrivateKey{std::string(id), a, factor * phi};
}

PartialPrivateKey IssuePartialKey(const Scalar& s, const Point& ypub, std::string_view id,
                                  RandomSource& rng) {
  const Curve& curve = ypub.curve();
  if (!(s * curve.Generator() == ypub)) {
    throw std::invalid_argument("master secret does not match Y_pub");
  }
  for (int i = 0; i < kMaxDraws; ++i) {
    if (auto key = IssuePartialKeyWithNonce(s, ypub, id, Scalar::RandomNonZero(curve, rng))) {
      return *std::move(key);
    }
  }
  throw std::runtime_error("partial key issuance: no usable alpha");
}

std::optional<UserKeyPair> DeriveFullKeyWithBlinding(const PartialPrivateKey& partial,
                                                     const Scalar& x, const Scalar& beta) {
  if (partial.z.IsIdentity()) throw std::invalid_argument("partial key z is the identity");
  const Point blinded = (x + beta) * partial.z;
  if (blinded.IsIdentity()) return std::nullopt;
  Scalar d = XCoordinateScalar(blinded);
  // 1 + d = 0 would make the signing response undefined.
  if (d.IsZero() || (d + Scalar::FromU64(d.curve(), 1)).IsZero()) return std::nullopt;
  Point pub = d * d.curve().Generator();
  return UserKeyPair{partial.id, x, beta, std::move(d), std::move(pub)};
}

UserKeyPair DeriveFullKey(const PartialPrivateKey& partial, const Scalar& x, RandomSource& rng) {
  const Curve& curve = partial.z.curve();
  for (int i = 0; i < kMaxDraws; ++i) {
    if (auto key = DeriveFullKeyWithBlinding(partial, x, Scalar::RandomNonZero(curve, rng))) {
      return *std::move(key);
    }
  }
  throw std::runtime_error("full key derivation: no usable blinding value");
}

UserKeyPair GeneratePlainKey(const Curve& curve, std::string_view id, RandomSource& rng) {
  const Scalar minus_one = -Scalar::FromU64(curve, 1);
  Scalar d = Scalar::RandomNonZero(curve, rng);
  while (d == minus_one) d = Scalar::RandomNonZero(curve, rng);
  Point pub = d * curve.Generator();
  return UserKeyPair{std::string(id), Scalar(curve), Scalar(curve), std::move(d), std::move(pub)};
}

void Registry::Append(std::string id, const Point& pub) {
  if (id.empty() || id.size() > 0xFFFF) throw std::invalid_argument("identity must be 1..65535 bytes");
  if (pub.IsIdentity()) throw std::invalid_argument("cannot register the identity point");
  if (&pub.curve() != curve_) throw std::invalid_argument("public key on a different curve");
  if (by_id_.contains(id)) throw std::invalid_argument("identity already registered: " + id);
  Bytes key = pub.Encode();
  if (by_point_.contains(key)) {
    throw std::invalid_argument("public key already registered under another identity");
  }
  by_id_.emplace(id, records_.size());
  by_point_.emplace(std::move(key), records_.size());
  records_.push_back(IdentityRecord{std::move(id), pub});
}

std::optional<std::string> Registry::LookupByPoint(const Point& pub) const {
  const auto it = by_point_.find(pub.Encode());
  if (it == by_point_.end()) return std::nullopt;
  return records_[it->second].id;
}

std::optional<Point> Registry::LookupById(std::string_view id) const {
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return records_[it->second].pub;
}

std::string Registry::Serialize() const {
  std::string out = std::string(kRegistryMagic) + " 1 " + curve_->id() + "\n";
  Bytes chain = ChainStart(*curve_);
  for (const IdentityRecord& rec : records_) {
    const Bytes record = RegistryRecord(rec);
    chain = ChainStep(*curve_, chain, record);
    out += ToHex(record) + " " + ToHex(chain) + "\n";
  }
  return out;
}

Registry Registry::Parse(const Curve& curve, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw DecodeError("registry: missing header");
  std::istringstream header(line);
  std::string magic, version, curve_id;
  header >> magic >> version >> curve_id;
  if (magic != kRegistryMagic || version != "1") throw DecodeError("registry: bad header");
  if (curve_id != curve.id()) throw DecodeError("registry: curve mismatch");

  Registry reg(curve);
  Bytes chain = ChainStart(curve);
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const size_t space = line.find(' ');
    if (space == std::string::npos) throw DecodeError("registry: malformed line " + std::to_string(line_no));
    const Bytes record = FromHex(std::string_view(line).substr(0, space));
    chain = ChainStep(curve, chain, record);
    if (FromHex(std::string_view(line).substr(space + 1)) != chain) {
      throw DecodeError("registry: hash chain broken at line " + std::to_string(line_no));
    }
    ByteReader r(record);
    std::string id = r.String16();
    Point pub = wire::ReadPoint(r, curve);
    r.ExpectDone("registry record");
    try {
      reg.Append(std::move(id), pub);
    } catch (const std::invalid_argument& e) {
      throw DecodeError(std::string("registry: ") + e.what());
    }
  }
  return reg;
}

}  // namespace trse
