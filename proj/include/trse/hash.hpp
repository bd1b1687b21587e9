#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "trse/bytes.hpp"
#include "trse/group.hpp"
#include "trse/op_counter.hpp"

namespace trse {

// Typed, injective serialization of hash inputs.
//
//   version(1) || item*
//   item = type(1) || length(4, BE) || body
//
// Lists carry a 4-byte element count and frame every element the same way,
// so two distinct item sequences never produce the same byte stream.
class HashInput {
 public:
  static constexpr uint8_t kVersion = 1;

  enum class ItemType : uint8_t {
    kBytes = 1,
    kPoint = 2,
    kScalar = 3,
    kPointList = 4,
    kIdentity = 5,
    kIdentityList = 6,
  };

  HashInput() { out_.push_back(kVersion); }

  HashInput& AddBytes(std::span<const uint8_t> data);
  HashInput& AddPoint(const Point& p);
  HashInput& AddScalar(const Scalar& s);
  HashInput& AddPointList(std::span<const Point> points);
  HashInput& AddIdentity(std::string_view id);
  HashInput& AddIdentityList(std::span<const std::string> ids);

  const Bytes& bytes() const { return out_; }

 private:
  void Frame(ItemType type, std::span<const uint8_t> body);
  Bytes out_;
};

inline constexpr std::string_view kTagH0 = "TRSE-H0";
inline constexpr std::string_view kTagH1 = "TRSE-H1";
inline constexpr std::string_view kTagH2 = "TRSE-H2";
inline constexpr std::string_view kTagH3 = "TRSE-H3";
inline constexpr std::string_view kTagH4 = "TRSE-H4";
inline constexpr std::string_view kTagH5 = "TRSE-H5";
inline constexpr std::string_view kTagDleq = "TRSE-DLEQ";

// SM3 on the SM2 curve, SHA-256 elsewhere. 32-byte digest.
Bytes BaseHash(const Curve& curve, std::span<const uint8_t> data);

// BaseHash(len(tag) || tag || counter(4, BE) || payload)
Bytes DomainHash(const Curve& curve, std::string_view tag, uint32_t counter,
                 std::span<const uint8_t> payload);

// Try-and-increment: counter-indexed digests taken mod q as x, even-y root.
// Throws std::runtime_error after 256 failed candidates.
Point HashToPoint(const Curve& curve, HashKind kind, std::string_view tag,
                  const HashInput& input);

// Digest mod l, re-hashed with the next counter while the result is zero.
Scalar HashToNonZeroScalar(const Curve& curve, HashKind kind, std::string_view tag,
                           const HashInput& input);

// Identity-bound point for partial key issuance: H0(id || Ypub || alpha*G).
Point HashIdentityToPoint(std::string_view id, const Point& ypub, const Point& nonce_point);

// Ring base point R = H1(L). Order-sensitive; throws on an empty ring.
Point HashRingToPoint(std::span<const Point> ring);

// k = H2(h || Q)
Scalar HashNonce(const Scalar& h, const Point& tag);

// c_{i+1} = H3(C1 || C2 || P_i || Q || Z_i || E || Ypub || H). H is appended so
// the keystream point shipped in the ciphertext is bound by the chain too.
Scalar HashChain(const Point& c1, const Point& c2, const Point& member, const Point& tag,
                 const Point& z, std::span<const uint8_t> masked, const Point& ypub,
                 const Point& h);

// eta = H4(G, R, Q_A, P_A, P, Q)
Scalar HashConfirm(const Point& g, const Point& ring_base, const Point& tag,
                   const Point& prover_pub, const Point& commit_g, const Point& commit_r);

// Counter-mode keystream H5(ID || H || U || L || Ypub) of exactly out_bits bits.
// out_bits must be a positive multiple of 8.
Bytes Keystream(std::string_view id, const Point& nonce_point, std::span<const std::string> ids,
                std::span<const Point> ring, const Point& ypub, size_t out_bits);

}  // namespace trse
