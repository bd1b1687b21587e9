#include "trse/confirm.hpp"

#include "trse/hash.hpp"
#include "trse/wire.hpp"

namespace trse {
namespace {

Scalar ReadScalarRecord(const Curve& curve, std::span<const uint8_t> bytes, const char* what) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  Scalar v = wire::ReadScalar(r, curve);
  r.ExpectDone(what);
  return v;
}

Bytes ScalarRecord(const Scalar& v) {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.Raw(v.Encode());
  return std::move(w).take();
}

}  // namespace

Bytes ConfirmProof::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.Raw(e.Encode());
  w.Raw(eta.Encode());
  w.Raw(p.EncodeFixed());
  w.Raw(q.EncodeFixed());
  return std::move(w).take();
}

ConfirmProof ConfirmProof::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  Scalar e = wire::ReadScalar(r, curve);
  Scalar eta = wire::ReadScalar(r, curve);
  Point p = wire::ReadPoint(r, curve);
  Point q = wire::ReadPoint(r, curve);
  r.ExpectDone("confirm proof");
  return ConfirmProof{std::move(e), std::move(eta), std::move(p), std::move(q)};
}

ConfirmProof ConfirmProveUnchecked(const UserKeyPair& prover, const Ciphertext& ct,
                                   const RingPublic& ring, RandomSource& rng) {
  const Curve& curve = prover.pub.curve();
  const Point g = curve.Generator();
  const Point ring_base = HashRingToPoint(ring.keys);
  const Scalar r = Scalar::RandomNonZero(curve, rng);
  Point p = r * g;
  Point q = r * ring_base;
  Scalar eta = HashConfirm(g, ring_base, ct.tag, prover.pub, p, q);
  Scalar e = r + eta * prover.d;
  return ConfirmProof{std::move(e), std::move(eta), std::move(p), std::move(q)};
}

ConfirmProof ConfirmProve(const UserKeyPair& prover, const Ciphertext& ct, const RingPublic& ring,
                          RandomSource& rng) {
  ring.Validate();
  if (!(prover.d * HashRingToPoint(ring.keys) == ct.tag)) {
    throw ProtocolReject("prover's key did not produce this ciphertext's tag");
  }
  return ConfirmProveUnchecked(prover, ct, ring, rng);
}

bool ConfirmVerify(const ConfirmProof& proof, const Point& prover_pub, const Ciphertext& ct,
                   const RingPublic& ring) {
  ring.Validate();
  const Curve& curve = prover_pub.curve();
  const Point g = curve.Generator();
  const Point ring_base = HashRingToPoint(ring.keys);
  if (!(HashConfirm(g, ring_base, ct.tag, prover_pub, proof.p, proof.q) == proof.eta)) {
    return false;
  }
  return proof.e * g == proof.p + proof.eta * prover_pub &&
         proof.e * ring_base == proof.q + proof.eta * ct.tag;
}

Bytes DenyCommitment::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.Raw(d.EncodeFixed());
  w.Raw(t1.EncodeFixed());
  w.Raw(t2.EncodeFixed());
  return std::move(w).take();
}

DenyCommitment DenyCommitment::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  Point d = wire::ReadPoint(r, curve);
  Point t1 = wire::ReadPoint(r, curve);
  Point t2 = wire::ReadPoint(r, curve);
  r.ExpectDone("deny commitment");
  return DenyCommitment{std::move(d), std::move(t1), std::move(t2)};
}

Bytes EncodeDenyChallenge(const Scalar& c) { return ScalarRecord(c); }
Scalar DecodeDenyChallenge(const Curve& curve, std::span<const uint8_t> bytes) {
  return ReadScalarRecord(curve, bytes, "deny challenge");
}
Bytes EncodeDenyResponse(const Scalar& s) { return ScalarRecord(s); }
Scalar DecodeDenyResponse(const Curve& curve, std::span<const uint8_t> bytes) {
  return ReadScalarRecord(curve, bytes, "deny response");
}

DenyProver DenyProver::StartWithNonce(const UserKeyPair& prover, const Ciphertext& ct,
                                      const RingPublic& ring, const Scalar& k) {
  ring.Validate();
  const Point ring_base = HashRingToPoint(ring.keys);
  Point d = ct.tag - prover.d * ring_base;
  if (d.IsIdentity()) throw ProtocolReject("denial failed: prover is signer");
  const Point g = prover.pub.curve().Generator();
  DenyCommitment commitment{std::move(d), k * g, k * ring_base};
  return DenyProver(std::move(commitment), k, prover.d);
}

DenyProver DenyProver::Start(const UserKeyPair& prover, const Ciphertext& ct,
                             const RingPublic& ring, RandomSource& rng) {
  return StartWithNonce(prover, ct, ring, Scalar::RandomNonZero(prover.pub.curve(), rng));
}

Scalar DenyProver::Respond(const Scalar& c) {
  if (answered_) throw std::logic_error("deny session already answered a challenge");
  answered_ = true;
  return k_ + c * d_;
}

Scalar DenyChallenge(const Curve& curve, RandomSource& rng) {
  return Scalar::RandomNonZero(curve, rng);
}

Bytes DenyTranscript::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.Raw(commitment.d.EncodeFixed());
  w.Raw(commitment.t1.EncodeFixed());
  w.Raw(commitment.t2.EncodeFixed());
  w.Raw(c.Encode());
  w.Raw(s.Encode());
  return std::move(w).take();
}

DenyTranscript DenyTranscript::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  Point d = wire::ReadPoint(r, curve);
  Point t1 = wire::ReadPoint(r, curve);
  Point t2 = wire::ReadPoint(r, curve);
  Scalar c = wire::ReadScalar(r, curve);
  Scalar s = wire::ReadScalar(r, curve);
  r.ExpectDone("deny transcript");
  return DenyTranscript{DenyCommitment{std::move(d), std::move(t1), std::move(t2)}, std::move(c),
                        std::move(s)};
}

const char* ToString(DenyVerdict v) {
  switch (v) {
    case DenyVerdict::kAccept: return "accept";
    case DenyVerdict::kReject: return "reject";
    case DenyVerdict::kDenialFailed: return "denial-failed: prover is signer";
  }
  return "?";
}

DenyVerdict DenyVerify(const DenyTranscript& transcript, const Point& prover_pub,
                       const Ciphertext& ct, const RingPublic& ring) {
  ring.Validate();
  const DenyCommitment& m = transcript.commitment;
  if (m.d.IsIdentity()) return DenyVerdict::kDenialFailed;
  const Point g = prover_pub.curve().Generator();
  const Point ring_base = HashRingToPoint(ring.keys);
  const bool ok = transcript.s * g == m.t1 + transcript.c * prover_pub &&
                  transcript.s * ring_base == m.t2 + transcript.c * (ct.tag - m.d);
  return ok ? DenyVerdict::kAccept : DenyVerdict::kReject;
}

}  // namespace trse
