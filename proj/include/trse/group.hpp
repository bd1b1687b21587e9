#pragma once

#include <openssl/bn.h>
#include <openssl/ec.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trse/bytes.hpp"
#include "trse/random.hpp"

namespace trse {

// Short Weierstrass curve y^2 = x^3 + ax + b over F_q. All values are hex.
struct CurveParams {
  std::string id;
  std::string field_prime;
  std::string a;
  std::string b;
  std::string gx;
  std::string gy;
  std::string order;
  uint32_t cofactor = 1;
};

class Point;
class Scalar;

namespace detail {
struct BnDeleter {
  void operator()(BIGNUM* bn) const;
};
struct PointDeleter {
  void operator()(EC_POINT* p) const;
};
struct GroupDeleter {
  void operator()(EC_GROUP* g) const;
};
using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;
BN_CTX* ThreadBnCtx();
struct PointAccess;
}  // namespace detail

// A prime-order curve group. Instances are immutable and must outlive every
// Scalar and Point created from them; the built-in profiles live forever.
class Curve {
 public:
  enum class Validation {
    kFull,          // nonsingular, G on curve, order*G = O, order prime, cofactor 1
    kGroupLawOnly,  // drops the prime-order and cofactor requirements
  };

  explicit Curve(CurveParams params, Validation validation = Validation::kFull);
  Curve(const Curve&) = delete;
  Curve& operator=(const Curve&) = delete;

  // "sm2p256v1", "secp256k1" or "toy97"; throws std::invalid_argument otherwise.
  static const Curve& Get(std::string_view id);
  static const Curve& Sm2();
  static const Curve& Secp256k1();
  static const Curve& Toy97();

  const std::string& id() const { return params_.id; }
  const CurveParams& params() const { return params_; }
  // SM3 is the base hash on the SM2 curve; SHA-256 elsewhere.
  bool uses_sm3() const { return params_.id == "sm2p256v1"; }

  size_t field_bytes() const { return field_bytes_; }
  size_t scalar_bytes() const { return scalar_bytes_; }
  size_t point_bytes() const { return field_bytes_ + 1; }
  size_t order_bits() const;

  Point Generator() const;
  Point Identity() const;

  const EC_GROUP* group() const { return group_.get(); }
  const BIGNUM* order() const { return order_.get(); }
  const BIGNUM* field_prime() const { return prime_.get(); }

  // Affine table of d * 16^j * G (d = 1..15), 15 entries per window j.
  // Built on first use; shared read-only afterwards.
  const std::vector<detail::PointPtr>& GeneratorTable() const;

 private:
  CurveParams params_;
  std::unique_ptr<EC_GROUP, detail::GroupDeleter> group_;
  detail::BnPtr prime_;
  detail::BnPtr order_;
  size_t field_bytes_ = 0;
  size_t scalar_bytes_ = 0;
  mutable std::once_flag generator_once_;
  mutable std::vector<detail::PointPtr> generator_table_;
};

// Element of Z_l, always reduced.
class Scalar {
 public:
  explicit Scalar(const Curve& curve);  // zero
  Scalar(const Scalar& other);
  Scalar& operator=(const Scalar& other);
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(Scalar&&) noexcept = default;
  ~Scalar() = default;

  static Scalar FromU64(const Curve& curve, uint64_t v);
  // Interprets big-endian bytes of any length and reduces mod l.
  static Scalar FromBytesReduce(const Curve& curve, std::span<const uint8_t> bytes);
  // Exactly scalar_bytes() long and < l, else DecodeError.
  static Scalar Decode(const Curve& curve, std::span<const uint8_t> bytes);
  static Scalar Random(const Curve& curve, RandomSource& rng);
  static Scalar RandomNonZero(const Curve& curve, RandomSource& rng);

  Bytes Encode() const;
  std::string ToHex() const { return trse::ToHex(Encode()); }
  uint64_t ToU64() const;  // throws if it does not fit

  bool IsZero() const;
  bool IsOne() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  // Throws std::domain_error on zero.
  Scalar Inverse() const;
  bool operator==(const Scalar& o) const;

  const Curve& curve() const { return *curve_; }
  const BIGNUM* bn() const { return value_.get(); }

 private:
  Scalar(const Curve& curve, detail::BnPtr value);
  const Curve* curve_;
  detail::BnPtr value_;
};

// Group element; either the identity or an affine/projective point on the curve.
class Point {
 public:
  explicit Point(const Curve& curve);  // identity
  Point(const Point& other);
  Point& operator=(const Point& other);
  Point(Point&&) noexcept = default;
  Point& operator=(Point&&) noexcept = default;
  ~Point() = default;

  // Compressed SEC1: 0x02/0x03 || x; identity is the single byte 0x00.
  Bytes Encode() const;
  static Point Decode(const Curve& curve, std::span<const uint8_t> bytes);
  // Fixed-width slot of point_bytes(); identity is all zero bytes.
  Bytes EncodeFixed() const;
  static Point DecodeFixed(const Curve& curve, std::span<const uint8_t> bytes);
  // Throws DecodeError if (x, y) is not on the curve.
  static Point FromAffine(const Curve& curve, std::span<const uint8_t> x,
                          std::span<const uint8_t> y);
  // x with the even-y root, if x is a valid abscissa.
  static std::optional<Point> LiftX(const Curve& curve, std::span<const uint8_t> x);
  // Uniform-ish random non-identity point via random abscissa sampling.
  static Point Random(const Curve& curve, RandomSource& rng);

  // Big-endian field_bytes() coordinates; nullopt for the identity.
  std::optional<std::pair<Bytes, Bytes>> Affine() const;
  std::string ToHex() const { return trse::ToHex(Encode()); }

  bool IsIdentity() const;
  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point operator-() const;
  Point& operator+=(const Point& o) { return *this = *this + o; }
  Point Double() const;
  bool operator==(const Point& o) const;

  const Curve& curve() const { return *curve_; }
  const EC_POINT* raw() const { return point_.get(); }

 private:
  friend struct detail::PointAccess;
  Point(const Curve& curve, detail::PointPtr p);
  const Curve* curve_;
  detail::PointPtr point_;
};

struct ScalarPoint {
  Scalar scalar;
  Point point;
};

// k * P with a fixed 4-bit window; multiples of G use the precomputed comb
// table instead (no doublings).
Point ScalarMul(const Scalar& k, const Point& p);
inline Point operator*(const Scalar& k, const Point& p) { return ScalarMul(k, p); }

// a*X + b*Y in one pass: joint 2-bit window over both scalars with a shared
// doubling chain and a 15-entry table of i*X + j*Y.
Point StrausDoubleMul(const Scalar& a, const Point& x, const Scalar& b, const Point& y);

// Sum of k_i * P_i. Naive for one pair, Straus for two, Pippenger otherwise.
// The empty sum is the identity.
Point Msm(const Curve& curve, std::span<const ScalarPoint> pairs);
// Explicit strategies, used by the benchmarks and the equivalence tests.
Point MsmNaive(const Curve& curve, std::span<const ScalarPoint> pairs);
Point MsmPippenger(const Curve& curve, std::span<const ScalarPoint> pairs);
// Bucket width minimizing (bits / c) * (m + 2^(c+1) + c).
unsigned PippengerWindow(size_t pair_count, size_t scalar_bits);

}  // namespace trse
