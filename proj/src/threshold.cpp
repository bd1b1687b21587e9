#include "trse/threshold.hpp"

#include <algorithm>
#include <string>

#include "trse/wire.hpp"

namespace trse {

DkgAbort::DkgAbort(PartyIndex d, PartyIndex r)
    : std::runtime_error("supervisor " + std::to_string(d) + " dealt an invalid share to " +
                         std::to_string(r)),
      dealer(d),
      recipient(r) {}

Bytes VssCommitment::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.U16(index);
  w.U16(static_cast<uint16_t>(points.size()));
  for (const Point& p : points) w.Raw(p.EncodeFixed());
  return std::move(w).take();
}

VssCommitment VssCommitment::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  VssCommitment out;
  out.index = r.U16();
  const uint16_t count = r.U16();
  if (out.index == 0 || count == 0) throw DecodeError("commitment: bad index or empty");
  for (uint16_t w = 0; w < count; ++w) out.points.push_back(wire::ReadPoint(r, curve));
  r.ExpectDone("commitment");
  return out;
}

Bytes ShareMessage::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.U16(from);
  w.U16(to);
  w.Raw(value.Encode());
  return std::move(w).take();
}

ShareMessage ShareMessage::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  const PartyIndex from = r.U16();
  const PartyIndex to = r.U16();
  ShareMessage out{from, to, wire::ReadScalar(r, curve)};
  r.ExpectDone("share message");
  return out;
}

Bytes GlobalShare::Encode() const {
  ByteWriter w;
  w.U8(wire::kVersion);
  w.U16(index);
  w.Raw(value.Encode());
  return std::move(w).take();
}

GlobalShare GlobalShare::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  wire::ExpectVersion(r);
  const PartyIndex index = r.U16();
  if (index == 0) throw DecodeError("global share: index 0");
  GlobalShare out{index, wire::ReadScalar(r, curve)};
  r.ExpectDone("global share");
  return out;
}

LocalDeal GenerateLocalPolynomial(const Curve& curve, PartyIndex k, size_t t, RandomSource& rng) {
  if (t == 0) throw std::invalid_argument("threshold must be at least 1");
  if (k == 0) throw std::invalid_argument("supervisor index must be at least 1");
  LocalDeal deal;
  deal.polynomial.index = k;
  deal.commitment.index = k;
  const Point g = curve.Generator();
  for (size_t w = 0; w < t; ++w) {
    Scalar a = Scalar::Random(curve, rng);
    deal.commitment.points.push_back(a * g);
    deal.polynomial.coefficients.push_back(std::move(a));
  }
  return deal;
}

ShareMessage DealShare(const LocalPolynomial& poly, PartyIndex i) {
  if (i == 0) throw std::invalid_argument("refusing to evaluate the secret at 0");
  if (poly.coefficients.empty()) throw std::invalid_argument("empty polynomial");
  const Curve& curve = poly.coefficients.front().curve();
  const Scalar x = Scalar::FromU64(curve, i);
  Scalar acc(curve);
  for (auto it = poly.coefficients.rbegin(); it != poly.coefficients.rend(); ++it) {
    acc = acc * x + *it;
  }
  return ShareMessage{poly.index, i, std::move(acc)};
}

Point CommittedShareImage(std::span<const VssCommitment> commitments, PartyIndex i) {
  if (commitments.empty() || commitments.front().points.empty()) {
    throw std::invalid_argument("no commitments");
  }
  const Curve& curve = commitments.front().points.front().curve();
  const Scalar x = Scalar::FromU64(curve, i);
  std::vector<ScalarPoint> terms;
  for (const VssCommitment& com : commitments) {
    Scalar power = Scalar::FromU64(curve, 1);
    for (const Point& c : com.points) {
      terms.push_back({power, c});
      power *= x;
    }
  }
  return Msm(curve, terms);
}

bool VerifyShare(const ShareMessage& msg, const VssCommitment& com) {
  if (msg.from != com.index) {
    throw std::invalid_argument("share and commitment come from different supervisors");
  }
  if (msg.to == 0) return false;
  const Curve& curve = msg.value.curve();
  const VssCommitment single[] = {com};
  return msg.value * curve.Generator() == CommittedShareImage(single, msg.to);
}

GlobalShare AggregateGlobalShare(std::span<const ShareMessage> msgs) {
  if (msgs.empty()) throw std::invalid_argument("no share messages");
  std::vector<PartyIndex> dealers;
  Scalar sum(msgs.front().value.curve());
  for (const ShareMessage& m : msgs) {
    if (m.to != msgs.front().to) throw std::invalid_argument("messages for different recipients");
    if (std::find(dealers.begin(), dealers.end(), m.from) != dealers.end()) {
      throw std::invalid_argument("duplicate dealer " + std::to_string(m.from));
    }
    dealers.push_back(m.from);
    sum += m.value;
  }
  return GlobalShare{msgs.front().to, std::move(sum)};
}

Scalar LagrangeCoefficient(const Curve& curve, std::span<const PartyIndex> set, PartyIndex i) {
  std::vector<PartyIndex> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate index in interpolation set");
  }
  if (!sorted.empty() && sorted.front() == 0) throw std::invalid_argument("index 0 in set");
  if (!std::binary_search(sorted.begin(), sorted.end(), i)) {
    throw std::invalid_argument("index not in interpolation set");
  }
  Scalar num = Scalar::FromU64(curve, 1);
  Scalar den = Scalar::FromU64(curve, 1);
  const Scalar xi = Scalar::FromU64(curve, i);
  for (PartyIndex j : sorted) {
    if (j == i) continue;
    const Scalar xj = Scalar::FromU64(curve, j);
    num *= xj;
    den *= xj - xi;
  }
  // On tiny groups two indices can coincide mod l.
  if (den.IsZero()) throw std::invalid_argument("indices collide modulo the group order");
  return num * den.Inverse();
}

Scalar ReconstructSecret(std::span<const GlobalShare> shares, size_t t) {
  if (t == 0) throw std::invalid_argument("threshold must be at least 1");
  if (shares.size() < t) {
    throw std::invalid_argument("need " + std::to_string(t) + " shares, got " +
                                std::to_string(shares.size()));
  }
  const auto used = shares.first(t);
  std::vector<PartyIndex> set;
  for (const GlobalShare& s : used) set.push_back(s.index);
  const Curve& curve = used.front().value.curve();
  Scalar secret(curve);
  for (const GlobalShare& s : used) {
    secret += LagrangeCoefficient(curve, set, s.index) * s.value;
  }
  return secret;
}

DkgResult RunDkg(const Curve& curve, size_t t, size_t n, RandomSource& rng,
                 const ShareTransit& in_transit) {
  if (t == 0 || t > n) throw std::invalid_argument("need 1 <= t <= N");
  if (n > 0xFFFF) throw std::invalid_argument("too many supervisors");

  std::vector<LocalDeal> deals;
  std::vector<VssCommitment> commitments;
  std::vector<GlobalShare> shares;
  for (size_t k = 1; k <= n; ++k) {
    deals.push_back(GenerateLocalPolynomial(curve, static_cast<PartyIndex>(k), t, rng));
    commitments.push_back(deals.back().commitment);
  }

  for (size_t i = 1; i <= n; ++i) {
    std::vector<ShareMessage> inbox;
    for (const LocalDeal& deal : deals) {
      ShareMessage msg = DealShare(deal.polynomial, static_cast<PartyIndex>(i));
      if (in_transit) in_transit(msg);
      if (msg.from != deal.commitment.index || !VerifyShare(msg, deal.commitment)) {
        throw DkgAbort(deal.commitment.index, static_cast<PartyIndex>(i));
      }
      inbox.push_back(std::move(msg));
    }
    shares.push_back(AggregateGlobalShare(inbox));
  }
  Point ypub = CommittedShareImage(commitments, 0);
  return DkgResult{t, std::move(commitments), std::move(shares), std::move(ypub)};
}

}  // namespace trse
