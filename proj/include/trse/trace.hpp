#pragma once

#include <optional>
#include <span>
#include <string>

#include "trse/core.hpp"
#include "trse/group.hpp"
#include "trse/identity.hpp"
#include "trse/threshold.hpp"

// Threshold opening of the identity escrow (C1, C2). Nothing in here takes or
// returns the master secret; supervisors only ever use their own share s_i.
namespace trse {

// Chaum-Pedersen proof that log_G(V_i) = log_C1(D_i).
struct DleqProof {
  Point a1;  // w*G
  Point a2;  // w*C1
  Scalar e;
  Scalar z;  // w + e*s_i
};

struct DecryptionShare {
  PartyIndex index = 0;
  Point d;  // s_i * C1
  DleqProof proof;

  // ver(1) || index(2) || D || A1 || A2 || e || z
  Bytes Encode() const;
  static DecryptionShare Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

// V_i = s_i*G from the published commitments. Throws on an empty set.
Point ShareVerificationKey(PartyIndex i, std::span<const VssCommitment> commitments);

// D_i = s_i*C1 plus its proof. Throws invalid_argument if C1 is the identity.
DecryptionShare MakeDecryptionShare(const GlobalShare& share, const Point& c1, RandomSource& rng);

bool VerifyDecryptionShare(const DecryptionShare& ds, const Point& vi, const Point& c1);

struct TraceResult {
  Point signer_pub;                // P' = C2 - sum lambda_i D_i
  std::optional<std::string> id;   // nullopt: P' is not registered
};

// Checks every share's proof against its V_i (ProtocolReject naming the first
// bad index), then combines the first t distinct shares. Fewer than t shares
// or duplicate indices -> invalid_argument.
TraceResult AggregateTrace(std::span<const DecryptionShare> shares,
                           std::span<const VssCommitment> commitments, size_t t,
                           const Ciphertext& ct, const Registry& registry);

}  // namespace trse
