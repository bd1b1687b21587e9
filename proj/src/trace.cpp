#include "trse/trace.hpp"

#include <algorithm>
#include <vector>

#include "trse/hash.hpp"
#include "trse/wire.hpp"

namespace trse {
namespace {

Scalar DleqChallenge(const Point& c1, const Point& vi, const Point& d, const Point& a1,
                     const Point& a2) {
  const Curve& curve = c1.curve();
  HashInput in;
  in.AddPoint(curve.Generator()).AddPoint(c1).AddPoint(vi).AddPoint(d).AddPoint(a1).AddPoint(a2);
  return HashToNonZeroScalar(curve, HashKind::kDleq, kTagDleq, in);
}

}  // namespace

Bytes DecryptionShare::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.U16(index);
  w.Raw(d.EncodeFixed());
  w.Raw(proof.a1.EncodeFixed());
  w.Raw(proof.a2.EncodeFixed());
  w.Raw(proof.e.Encode());
  w.Raw(proof.z.Encode());
  return std::move(w).take();
}

DecryptionShare DecryptionShare::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  const PartyIndex index = r.U16();
  if (index == 0) throw DecodeError("decryption share: index 0");
  Point d = wire::ReadPoint(r, curve);
  Point a1 = wire::ReadPoint(r, curve);
  Point a2 = wire::ReadPoint(r, curve);
  Scalar e = wire::ReadScalar(r, curve);
  Scalar z = wire::ReadScalar(r, curve);
  r.ExpectDone("decryption share");
  return DecryptionShare{index, std::move(d),
                         DleqProof{std::move(a1), std::move(a2), std::move(e), std::move(z)}};
}

Point ShareVerificationKey(PartyIndex i, std::span<const VssCommitment> commitments) {
  if (i == 0) throw std::invalid_argument("supervisor index must be at least 1");
  return CommittedShareImage(commitments, i);
}

DecryptionShare MakeDecryptionShare(const GlobalShare& share, const Point& c1, RandomSource& rng) {
  if (c1.IsIdentity()) throw std::invalid_argument("C1 is the identity");
  const Curve& curve = c1.curve();
  const Point g = curve.Generator();
  const Point vi = share.value * g;
  Point d = share.value * c1;
  const Scalar w = Scalar::RandomNonZero(curve, rng);
  Point a1 = w * g;
  Point a2 = w * c1;
  Scalar e = DleqChallenge(c1, vi, d, a1, a2);
  Scalar z = w + e * share.value;
  return DecryptionShare{share.index, std::move(d),
                         DleqProof{std::move(a1), std::move(a2), std::move(e), std::move(z)}};
}

bool VerifyDecryptionShare(const DecryptionShare& ds, const Point& vi, const Point& c1) {
  if (c1.IsIdentity() || ds.proof.e.IsZero()) return false;
  if (!(DleqChallenge(c1, vi, ds.d, ds.proof.a1, ds.proof.a2) == ds.proof.e)) return false;
  const Point g = c1.curve().Generator();
  return ds.proof.z * g == ds.proof.a1 + ds.proof.e * vi &&
         ds.proof.z * c1 == ds.proof.a2 + ds.proof.e * ds.d;
}

TraceResult AggregateTrace(std::span<const DecryptionShare> shares,
                           std::span<const VssCommitment> commitments, size_t t,
                           const Ciphertext& ct, const Registry& registry) {
  if (t == 0) throw std::invalid_argument("threshold must be at least 1");
  if (shares.size() < t) {
    throw std::invalid_argument("tracing needs " + std::to_string(t) + " decryption shares, got " +
                                std::to_string(shares.size()));
  }
  std::vector<PartyIndex> set;
  for (const DecryptionShare& ds : shares) {
    if (std::find(set.begin(), set.end(), ds.index) != set.end()) {
      throw std::invalid_argument("duplicate decryption share index " + std::to_string(ds.index));
    }
    set.push_back(ds.index);
    if (!VerifyDecryptionShare(ds, ShareVerificationKey(ds.index, commitments), ct.c1)) {
      throw ProtocolReject("decryption share " + std::to_string(ds.index) + " has an invalid proof");
    }
  }
  set.resize(t);

  const Curve& curve = ct.c1.curve();
  std::vector<ScalarPoint> terms;
  for (size_t j = 0; j < t; ++j) {
    terms.push_back({LagrangeCoefficient(curve, set, shares[j].index), shares[j].d});
  }
  Point signer = ct.c2 - Msm(curve, terms);
  auto id = registry.LookupByPoint(signer);
  return TraceResult{std::move(signer), std::move(id)};
}

}  // namespace trse
