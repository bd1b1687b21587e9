#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trse/bytes.hpp"
#include "trse/group.hpp"
#include "trse/random.hpp"

namespace trse {

// Issued by the supervision center over a secure channel. The nonce point
// A = alpha*G travels with it so anyone can recompute phi = H0(id, Ypub, A).
struct PartialPrivateKey {
  std::string id;
  Point nonce_point;  // A
  Point z;            // (s + alpha) * phi

  Bytes Encode() const;
  static PartialPrivateKey Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

// Full user key. d is the x-coordinate of (x + beta) * z reduced mod l, and
// pub = d*G. Plain keys (no partial key) carry x = beta = 0.
struct UserKeyPair {
  std::string id;
  Scalar x;
  Scalar beta;
  Scalar d;
  Point pub;

  Bytes Encode() const;
  // Rejects records whose pub does not equal d*G.
  static UserKeyPair Decode(const Curve& curve, std::span<const uint8_t> bytes);
};

// Draws alpha until s + alpha != 0 and returns (id, alpha*G, (s+alpha)*phi).
// Throws invalid_argument if s*G != ypub.
PartialPrivateKey IssuePartialKey(const Scalar& s, const Point& ypub, std::string_view id,
                                  RandomSource& rng);
// Deterministic core with a caller-chosen alpha; nullopt when s + alpha = 0.
std::optional<PartialPrivateKey> IssuePartialKeyWithNonce(const Scalar& s, const Point& ypub,
                                                          std::string_view id,
                                                          const Scalar& alpha);

// Samples beta until (x + beta)*z is a point whose reduced x-coordinate d
// satisfies d != 0 and 1 + d != 0. Gives up after 256 draws.
UserKeyPair DeriveFullKey(const PartialPrivateKey& partial, const Scalar& x, RandomSource& rng);
// One attempt with a fixed beta; nullopt on a degenerate draw.
std::optional<UserKeyPair> DeriveFullKeyWithBlinding(const PartialPrivateKey& partial,
                                                     const Scalar& x, const Scalar& beta);

// P = d*G from a uniformly random d (the plain key flavor for other ring members).
UserKeyPair GeneratePlainKey(const Curve& curve, std::string_view id, RandomSource& rng);

struct IdentityRecord {
  std::string id;
  Point pub;
};

// Append-only id <-> public key map; injective in both directions.
//
// File form, one record per line after a header:
//   trse-registry 1 <curve-id>
//   <hex(len16 || id || point33)> <hex(chain_i)>
// where chain_i = H(chain_{i-1} || record) and chain_0 = H(curve-id) under the
// profile's base hash with tag "TRSE-REG". Loading recomputes the chain.
class Registry {
 public:
  explicit Registry(const Curve& curve) : curve_(&curve) {}

  // Throws invalid_argument on an empty or duplicate id, an identity point, or
  // a point already registered under another id.
  void Append(std::string id, const Point& pub);

  std::optional<std::string> LookupByPoint(const Point& pub) const;
  std::optional<Point> LookupById(std::string_view id) const;

  const std::vector<IdentityRecord>& records() const { return records_; }
  size_t size() const { return records_.size(); }
  const Curve& curve() const { return *curve_; }

  std::string Serialize() const;
  // DecodeError on malformed lines, wrong curve, or a broken hash chain.
  static Registry Parse(const Curve& curve, std::string_view text);

 private:
  const Curve* curve_;
  std::vector<IdentityRecord> records_;
  std::map<std::string, size_t, std::less<>> by_id_;
  std::map<Bytes, size_t> by_point_;
};

}  // namespace trse
