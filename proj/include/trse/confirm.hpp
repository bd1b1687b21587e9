#pragma once

#include <span>

#include "trse/core.hpp"
#include "trse/group.hpp"
#include "trse/identity.hpp"
#include "trse/random.hpp"

namespace trse {

// Non-interactive proof that the prover's key produced the tag:
// eG = P + eta*P_A and eR = Q + eta*Q_A with eta = H4(G, R, Q_A, P_A, P, Q).
struct ConfirmProof {
  Scalar e;
  Scalar eta;
  Point p;
  Point q;

  // ver(1) || e || eta || P || Q
  Bytes Encode() const;
  static ConfirmProof Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

// Refuses (ProtocolReject) unless d * H1(L) equals the ciphertext's tag.
ConfirmProof ConfirmProve(const UserKeyPair& prover, const Ciphertext& ct, const RingPublic& ring,
                          RandomSource& rng);
// Skips the ownership check. Only useful for demonstrating that a forced
// proof from the wrong key fails verification.
ConfirmProof ConfirmProveUnchecked(const UserKeyPair& prover, const Ciphertext& ct,
                                   const RingPublic& ring, RandomSource& rng);

bool ConfirmVerify(const ConfirmProof& proof, const Point& prover_pub, const Ciphertext& ct,
                   const RingPublic& ring);

// --- Denial -----------------------------------------------------------------
//
// Interactive: the prover sends (D, T1, T2), the verifier answers with a fresh
// challenge c, the prover responds s = k + c*d_i. Each message is its own
// framed record.

struct DenyCommitment {
  Point d;   // Q_A - d_i*R
  Point t1;  // k*G
  Point t2;  // k*R

  Bytes Encode() const;
  static DenyCommitment Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

Bytes EncodeDenyChallenge(const Scalar& c);
Scalar DecodeDenyChallenge(const Curve& curve, std::span<const uint8_t> bytes);
Bytes EncodeDenyResponse(const Scalar& s);
Scalar DecodeDenyResponse(const Curve& curve, std::span<const uint8_t> bytes);

// Holds the witness k for one session. Single-use: a second Respond() throws,
// since two answers for one commitment reveal the private key.
class DenyProver {
 public:
  // ProtocolReject("denial failed: prover is signer") when D is the identity.
  static DenyProver Start(const UserKeyPair& prover, const Ciphertext& ct, const RingPublic& ring,
                          RandomSource& rng);
  static DenyProver StartWithNonce(const UserKeyPair& prover, const Ciphertext& ct,
                                   const RingPublic& ring, const Scalar& k);

  const DenyCommitment& commitment() const { return commitment_; }
  Scalar Respond(const Scalar& c);

 private:
  DenyProver(DenyCommitment commitment, Scalar k, Scalar d)
      : commitment_(std::move(commitment)), k_(std::move(k)), d_(std::move(d)) {}
  DenyCommitment commitment_;
  Scalar k_;
  Scalar d_;
  bool answered_ = false;
};

Scalar DenyChallenge(const Curve& curve, RandomSource& rng);

struct DenyTranscript {
  DenyCommitment commitment;
  Scalar c;
  Scalar s;

  // ver(1) || D || T1 || T2 || c || s
  Bytes Encode() const;
  static DenyTranscript Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

enum class DenyVerdict { kAccept, kReject, kDenialFailed };
const char* ToString(DenyVerdict v);

// kDenialFailed when D is the identity; otherwise checks sG = T1 + c*P_i and
// sR = T2 + c*(Q_A - D).
DenyVerdict DenyVerify(const DenyTranscript& transcript, const Point& prover_pub,
                       const Ciphertext& ct, const RingPublic& ring);

}  // namespace trse
