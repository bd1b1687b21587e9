#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "trse/bytes.hpp"
#include "trse/group.hpp"
#include "trse/identity.hpp"
#include "trse/random.hpp"

namespace trse {

inline constexpr size_t kMaxMessageBytes = 4096;

// A well-formed request the protocol says no to (verification failure,
// refused proof, ...). Distinct from DecodeError and invalid_argument.
class ProtocolReject : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What verifiers see: L = [P_1..P_n] and U = [ID_1..ID_n], same order.
struct RingPublic {
  std::vector<Point> keys;
  std::vector<std::string> ids;

  size_t size() const { return keys.size(); }
  // Throws invalid_argument on empty or mismatched L/U.
  void Validate() const;
  Bytes Encode() const;
  static RingPublic Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

struct Ring {
  RingPublic members;
  size_t signer_index = 0;  // 0-based position of the signer in L
};

// sigma = (Q_A, C1, C2, H, E, c_1, s_1..s_n).
struct Ciphertext {
  Point tag;  // Q_A = d_A * H1(L)
  Point c1;   // r*G
  Point c2;   // P_A + r*Ypub
  Point h;    // h*G, needed to rebuild the keystream
  Bytes masked;
  Scalar chain_seed;  // c_1
  std::vector<Scalar> responses;

  size_t ring_size() const { return responses.size(); }

  // ver(1) || n(2) || Q_A || C1 || C2 || H || |E|(4) || E || c_1 || s_1..s_n
  Bytes Encode() const;
  static Ciphertext Decode(const Curve& curve, std::span<const uint8_t> bytes);
  static size_t EncodedSize(const Curve& curve, size_t n, size_t message_len);
};

// Signer-side values, surfaced only so tests can check the algebra.
struct SigncryptSecrets {
  Scalar h;
  Scalar r;
  Scalar k;
  size_t signer_index;
};

// Throws invalid_argument when the signer's key or id is not at
// ring.signer_index, the message is empty or longer than kMaxMessageBytes, or
// 1 + d_A = 0.
Ciphertext Signcrypt(const Ring& ring, const UserKeyPair& signer, const Point& ypub,
                     std::span<const uint8_t> message, RandomSource& rng,
                     SigncryptSecrets* secrets = nullptr);

// Recomputes the n-step chain from c_1 and accepts iff it closes. Throws
// invalid_argument when the ring size does not match the ciphertext.
bool Verify(const RingPublic& ring, const Point& ypub, const Ciphertext& ct);

// E xor H5(signer_id, H, U, L, Ypub). Throws ProtocolReject if the ciphertext
// does not verify and invalid_argument if signer_id is not in U.
Bytes Decrypt(const Ciphertext& ct, std::string_view signer_id, const RingPublic& ring,
              const Point& ypub);

// Same signer iff the tags match. Tags are only comparable under the same
// ring base R = H1(L); throws invalid_argument otherwise.
bool Link(const Ciphertext& a, const RingPublic& ring_a, const Ciphertext& b,
          const RingPublic& ring_b);

}  // namespace trse
