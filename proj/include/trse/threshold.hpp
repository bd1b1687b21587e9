#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "trse/bytes.hpp"
#include "trse/group.hpp"
#include "trse/random.hpp"

namespace trse {

// Supervisor indices are 1-based; 0 is the evaluation point of the secret.
using PartyIndex = uint16_t;

struct LocalPolynomial {
  PartyIndex index = 0;
  std::vector<Scalar> coefficients;  // a_0 .. a_{t-1}

  size_t threshold() const { return coefficients.size(); }
};

struct VssCommitment {
  PartyIndex index = 0;
  std::vector<Point> points;  // C_w = a_w * G

  Bytes Encode() const;
  static VssCommitment Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

struct ShareMessage {
  PartyIndex from = 0;
  PartyIndex to = 0;
  Scalar value;

  Bytes Encode() const;
  static ShareMessage Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

struct GlobalShare {
  PartyIndex index = 0;
  Scalar value;

  Bytes Encode() const;
  static GlobalShare Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

// A dealer was caught sending a share inconsistent with its commitment.
class DkgAbort : public std::runtime_error {
 public:
  DkgAbort(PartyIndex dealer, PartyIndex recipient);
  PartyIndex dealer;
  PartyIndex recipient;
};

struct LocalDeal {
  LocalPolynomial polynomial;
  VssCommitment commitment;
};

// t random coefficients and their commitments. t = 0 -> invalid_argument.
LocalDeal GenerateLocalPolynomial(const Curve& curve, PartyIndex k, size_t t, RandomSource& rng);

// s_{k,i} = f_k(i) by Horner. i = 0 -> invalid_argument.
ShareMessage DealShare(const LocalPolynomial& poly, PartyIndex i);

// Feldman check s*G == sum_{w=0}^{t-1} i^w C_w. Throws invalid_argument when
// msg.from does not match the commitment's dealer.
bool VerifyShare(const ShareMessage& msg, const VssCommitment& com);

// s_i = sum_k s_{k,i}. All messages must target the same recipient and come
// from distinct dealers.
GlobalShare AggregateGlobalShare(std::span<const ShareMessage> msgs);

// lambda_i = prod_{j in F, j != i} j / (j - i), interpolating at 0.
Scalar LagrangeCoefficient(const Curve& curve, std::span<const PartyIndex> set, PartyIndex i);

// Lagrange interpolation at 0 from at least t shares with distinct indices.
// Only the first t shares are used.
Scalar ReconstructSecret(std::span<const GlobalShare> shares, size_t t);

// sum_k sum_w i^w C_{k,w}: the public image s_i*G of supervisor i's share.
// Index 0 gives Y_pub = sum_k C_{k,0}.
Point CommittedShareImage(std::span<const VssCommitment> commitments, PartyIndex i);

struct DkgResult {
  size_t threshold = 0;
  std::vector<VssCommitment> commitments;  // one per dealer, ordered 1..N
  std::vector<GlobalShare> shares;         // one per supervisor, ordered 1..N
  Point ypub;
};

// In-process (t, N) ceremony: every supervisor deals to every other, every
// share is checked against its dealer's commitment, and any failure aborts
// the whole run with DkgAbort. `in_transit` may rewrite messages (tests).
using ShareTransit = std::function<void(ShareMessage&)>;
DkgResult RunDkg(const Curve& curve, size_t t, size_t n, RandomSource& rng,
                 const ShareTransit& in_transit = {});

}  // namespace trse
