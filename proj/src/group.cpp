#include "trse/group.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>

#include <array>
#include <bit>
#include <stdexcept>

#include "trse/op_counter.hpp"

namespace trse {
namespace detail {

void BnDeleter::operator()(BIGNUM* bn) const { BN_free(bn); }
void PointDeleter::operator()(EC_POINT* p) const { EC_POINT_free(p); }
void GroupDeleter::operator()(EC_GROUP* g) const { EC_GROUP_free(g); }

BN_CTX* ThreadBnCtx() {
  struct Holder {
    BN_CTX* ctx = BN_CTX_new();
    ~Holder() { BN_CTX_free(ctx); }
  };
  thread_local Holder holder;
  if (holder.ctx == nullptr) {
    throw std::bad_alloc();
  }
  return holder.ctx;
}

struct PointAccess {
  static Point Wrap(const Curve& curve, PointPtr p) { return Point(curve, std::move(p)); }
};

}  // namespace detail

namespace {

using detail::BnPtr;
using detail::PointAccess;
using detail::PointPtr;
using detail::ThreadBnCtx;

BnPtr NewBn() {
  BnPtr bn(BN_new());
  if (!bn) throw std::bad_alloc();
  return bn;
}

BnPtr BnFromHex(const std::string& hex) {
  BIGNUM* raw = nullptr;
  if (BN_hex2bn(&raw, hex.c_str()) == 0 || raw == nullptr) {
    throw std::invalid_argument("invalid hex curve parameter: " + hex);
  }
  return BnPtr(raw);
}

PointPtr NewPoint(const EC_GROUP* group) {
  PointPtr p(EC_POINT_new(group));
  if (!p) throw std::bad_alloc();
  return p;
}

void Check(int rc, const char* what) {
  if (rc != 1) {
    throw std::runtime_error(std::string("OpenSSL failure in ") + what);
  }
}

void RawAdd(const EC_GROUP* g, EC_POINT* r, const EC_POINT* a, const EC_POINT* b) {
  Check(EC_POINT_add(g, r, a, b, ThreadBnCtx()), "EC_POINT_add");
}

void RawDbl(const EC_GROUP* g, EC_POINT* r) {
  Check(EC_POINT_dbl(g, r, r, ThreadBnCtx()), "EC_POINT_dbl");
}

// Batch-normalizes precomputed table entries to Z = 1 so the main loops use
// mixed additions.
void MakeAffine(const EC_GROUP* g, std::span<EC_POINT*> points) {
  if (points.empty()) return;
  // Deprecated in 3.0 but still the only batch-normalization entry point.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wdeprecated-declarations"
  Check(EC_POINTs_make_affine(g, points.size(), points.data(), ThreadBnCtx()),
        "EC_POINTs_make_affine");
#pragma GCC diagnostic pop
}

void RequireSameCurve(const Curve& a, const Curve& b) {
  if (&a != &b) {
    throw std::invalid_argument("operands belong to different curves");
  }
}

// Fixed-width big-endian image of a scalar with cheap bit/window extraction.
class ScalarBits {
 public:
  explicit ScalarBits(const Scalar& k) : bytes_(k.Encode()), bits_(BN_num_bits(k.bn())) {}

  size_t bit_length() const { return bits_; }

  unsigned Window(size_t lsb, unsigned width) const {
    unsigned v = 0;
    for (unsigned j = 0; j < width; ++j) {
      v |= Bit(lsb + j) << j;
    }
    return v;
  }

 private:
  unsigned Bit(size_t i) const {
    if (i >= bytes_.size() * 8) return 0;
    return (bytes_[bytes_.size() - 1 - i / 8] >> (i % 8)) & 1U;
  }

  Bytes bytes_;
  size_t bits_;
};

// Function-local so the profiles are usable during other TUs' static init.
CurveParams Sm2Params() {
  return {
    "sm2p256v1",
    "FFFFFFFEFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF00000000FFFFFFFFFFFFFFFF",
    "FFFFFFFEFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFF00000000FFFFFFFFFFFFFFFC",
    "28E9FA9E9D9F5E344D5A9E4BCF6509A7F39789F515AB8F92DDBCBD414D940E93",
    "32C4AE2C1F1981195F9904466A39C9948FE30BBFF2660BE1715A4589334C74C7",
    "BC3736A2F4F6779C59BDCEE36B692153D0A9877CC62A474002DF32E52139F0A0",
    "FFFFFFFEFFFFFFFFFFFFFFFFFFFFFFFF7203DF6B21C6052B53BBF40939D54123",
    1,
  };
}

CurveParams Secp256k1Params() {
  return {
    "secp256k1",
    "FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEFFFFFC2F",
    "0",
    "7",
    "79BE667EF9DCBBAC55A06295CE870B07029BFCDB2DCE28D959F2815B16F81798",
    "483ADA7726A3C4655DA4FBFC0E1108A8FD17B448A68554199C47D08FFB10D4B8",
    "FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141",
    1,
  };
}

// y^2 = x^3 + x + 4 over F_97 has 89 points, so every non-identity point generates.
CurveParams Toy97Params() { return {"toy97", "61", "1", "4", "0", "2", "59", 1}; }

}  // namespace

// ---------------------------------------------------------------------------
// Curve

Curve::Curve(CurveParams params, Validation validation) : params_(std::move(params)) {
  BN_CTX* ctx = ThreadBnCtx();
  prime_ = BnFromHex(params_.field_prime);
  order_ = BnFromHex(params_.order);
  BnPtr a = BnFromHex(params_.a);
  BnPtr b = BnFromHex(params_.b);
  BnPtr gx = BnFromHex(params_.gx);
  BnPtr gy = BnFromHex(params_.gy);

  if (BN_check_prime(prime_.get(), ctx, nullptr) != 1) {
    throw std::invalid_argument("field modulus is not prime");
  }

  // 4a^3 + 27b^2 != 0 mod q
  BnPtr lhs = NewBn(), rhs = NewBn(), tmp = NewBn();
  Check(BN_mod_sqr(tmp.get(), a.get(), prime_.get(), ctx), "BN_mod_sqr");
  Check(BN_mod_mul(lhs.get(), tmp.get(), a.get(), prime_.get(), ctx), "BN_mod_mul");
  Check(BN_mul_word(lhs.get(), 4), "BN_mul_word");
  Check(BN_mod_sqr(rhs.get(), b.get(), prime_.get(), ctx), "BN_mod_sqr");
  Check(BN_mul_word(rhs.get(), 27), "BN_mul_word");
  Check(BN_mod_add(tmp.get(), lhs.get(), rhs.get(), prime_.get(), ctx), "BN_mod_add");
  if (BN_is_zero(tmp.get())) {
    throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0");
  }

  group_.reset(EC_GROUP_new_curve_GFp(prime_.get(), a.get(), b.get(), ctx));
  if (!group_) {
    throw std::invalid_argument("curve rejected by EC backend");
  }
  PointPtr g = NewPoint(group_.get());
  if (EC_POINT_set_affine_coordinates(group_.get(), g.get(), gx.get(), gy.get(), ctx) != 1 ||
      EC_POINT_is_on_curve(group_.get(), g.get(), ctx) != 1) {
    throw std::invalid_argument("base point is not on the curve");
  }
  BnPtr cofactor = NewBn();
  Check(BN_set_word(cofactor.get(), params_.cofactor), "BN_set_word");
  if (EC_GROUP_set_generator(group_.get(), g.get(), order_.get(), cofactor.get()) != 1) {
    throw std::invalid_argument("generator/order rejected by EC backend");
  }

  PointPtr check = NewPoint(group_.get());
  Check(EC_POINT_mul(group_.get(), check.get(), nullptr, g.get(), order_.get(), ctx),
        "EC_POINT_mul");
  if (EC_POINT_is_at_infinity(group_.get(), check.get()) != 1) {
    throw std::invalid_argument("order * G is not the identity");
  }
  if (validation == Validation::kFull) {
    if (BN_check_prime(order_.get(), ctx, nullptr) != 1) {
      throw std::invalid_argument("group order is not prime");
    }
    if (params_.cofactor != 1) {
      throw std::invalid_argument("cofactor must be 1");
    }
  }

  field_bytes_ = static_cast<size_t>(BN_num_bytes(prime_.get()));
  scalar_bytes_ = static_cast<size_t>(BN_num_bytes(order_.get()));
}

size_t Curve::order_bits() const { return static_cast<size_t>(BN_num_bits(order_.get())); }

const Curve& Curve::Sm2() {
  static const Curve curve(Sm2Params());
  return curve;
}

const Curve& Curve::Secp256k1() {
  static const Curve curve(Secp256k1Params());
  return curve;
}

const Curve& Curve::Toy97() {
  static const Curve curve(Toy97Params());
  return curve;
}

const Curve& Curve::Get(std::string_view id) {
  if (id == "sm2p256v1") return Sm2();
  if (id == "secp256k1") return Secp256k1();
  if (id == "toy97") return Toy97();
  throw std::invalid_argument("unknown curve profile: " + std::string(id));
}

Point Curve::Generator() const {
  PointPtr p(EC_POINT_dup(EC_GROUP_get0_generator(group_.get()), group_.get()));
  if (!p) throw std::bad_alloc();
  return PointAccess::Wrap(*this, std::move(p));
}

Point Curve::Identity() const { return Point(*this); }

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(const Curve& curve) : curve_(&curve), value_(NewBn()) { BN_zero(value_.get()); }

Scalar::Scalar(const Curve& curve, BnPtr value) : curve_(&curve), value_(std::move(value)) {}

Scalar::Scalar(const Scalar& other) : curve_(other.curve_), value_(BN_dup(other.value_.get())) {
  if (!value_) throw std::bad_alloc();
}

Scalar& Scalar::operator=(const Scalar& other) {
  if (this != &other) {
    curve_ = other.curve_;
    value_.reset(BN_dup(other.value_.get()));
    if (!value_) throw std::bad_alloc();
  }
  return *this;
}

Scalar Scalar::FromU64(const Curve& curve, uint64_t v) {
  BnPtr bn = NewBn();
  Check(BN_set_word(bn.get(), v), "BN_set_word");
  Check(BN_nnmod(bn.get(), bn.get(), curve.order(), ThreadBnCtx()), "BN_nnmod");
  return Scalar(curve, std::move(bn));
}

Scalar Scalar::FromBytesReduce(const Curve& curve, std::span<const uint8_t> bytes) {
  BnPtr bn(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  if (!bn) throw std::bad_alloc();
  Check(BN_nnmod(bn.get(), bn.get(), curve.order(), ThreadBnCtx()), "BN_nnmod");
  return Scalar(curve, std::move(bn));
}

Scalar Scalar::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  if (bytes.size() != curve.scalar_bytes()) {
    throw DecodeError("scalar has wrong length");
  }
  BnPtr bn(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  if (!bn) throw std::bad_alloc();
  if (BN_cmp(bn.get(), curve.order()) >= 0) {
    throw DecodeError("scalar is not reduced modulo the group order");
  }
  return Scalar(curve, std::move(bn));
}

Scalar Scalar::Random(const Curve& curve, RandomSource& rng) {
  const size_t bits = curve.order_bits();
  Bytes buf(curve.scalar_bytes());
  const unsigned top_bits = bits % 8 == 0 ? 8 : bits % 8;
  const auto mask = static_cast<uint8_t>((1U << top_bits) - 1);
  for (;;) {
    rng.Fill(buf);
    buf[0] &= mask;
    BnPtr bn(BN_bin2bn(buf.data(), static_cast<int>(buf.size()), nullptr));
    if (!bn) throw std::bad_alloc();
    if (BN_cmp(bn.get(), curve.order()) < 0) {
      return Scalar(curve, std::move(bn));
    }
  }
}

Scalar Scalar::RandomNonZero(const Curve& curve, RandomSource& rng) {
  for (;;) {
    Scalar s = Random(curve, rng);
    if (!s.IsZero()) return s;
  }
}

Bytes Scalar::Encode() const {
  Bytes out(curve_->scalar_bytes());
  Check(BN_bn2binpad(value_.get(), out.data(), static_cast<int>(out.size())) ==
                static_cast<int>(out.size())
            ? 1
            : 0,
        "BN_bn2binpad");
  return out;
}

uint64_t Scalar::ToU64() const {
  if (BN_num_bits(value_.get()) > 64) {
    throw std::out_of_range("scalar does not fit in 64 bits");
  }
  const Bytes b = Encode();
  uint64_t v = 0;
  for (uint8_t byte : b) v = (v << 8) | byte;
  return v;
}

bool Scalar::IsZero() const { return BN_is_zero(value_.get()); }
bool Scalar::IsOne() const { return BN_is_one(value_.get()); }

Scalar Scalar::operator+(const Scalar& o) const {
  RequireSameCurve(*curve_, *o.curve_);
  BnPtr r = NewBn();
  Check(BN_mod_add(r.get(), value_.get(), o.value_.get(), curve_->order(), ThreadBnCtx()),
        "BN_mod_add");
  return Scalar(*curve_, std::move(r));
}

Scalar Scalar::operator-(const Scalar& o) const {
  RequireSameCurve(*curve_, *o.curve_);
  BnPtr r = NewBn();
  Check(BN_mod_sub(r.get(), value_.get(), o.value_.get(), curve_->order(), ThreadBnCtx()),
        "BN_mod_sub");
  return Scalar(*curve_, std::move(r));
}

Scalar Scalar::operator*(const Scalar& o) const {
  RequireSameCurve(*curve_, *o.curve_);
  BnPtr r = NewBn();
  Check(BN_mod_mul(r.get(), value_.get(), o.value_.get(), curve_->order(), ThreadBnCtx()),
        "BN_mod_mul");
  return Scalar(*curve_, std::move(r));
}

Scalar Scalar::operator-() const { return Scalar(*curve_) - *this; }

Scalar Scalar::Inverse() const {
  if (IsZero()) {
    throw std::domain_error("inverse of zero scalar");
  }
  ++ThreadOpCounter().inversions;
  BnPtr r(BN_mod_inverse(nullptr, value_.get(), curve_->order(), ThreadBnCtx()));
  if (!r) throw std::runtime_error("BN_mod_inverse failed");
  return Scalar(*curve_, std::move(r));
}

bool Scalar::operator==(const Scalar& o) const {
  return curve_ == o.curve_ && BN_cmp(value_.get(), o.value_.get()) == 0;
}

// ---------------------------------------------------------------------------
// Point

Point::Point(const Curve& curve) : curve_(&curve), point_(NewPoint(curve.group())) {
  Check(EC_POINT_set_to_infinity(curve.group(), point_.get()), "EC_POINT_set_to_infinity");
}

Point::Point(const Curve& curve, PointPtr p) : curve_(&curve), point_(std::move(p)) {}

Point::Point(const Point& other)
    : curve_(other.curve_), point_(EC_POINT_dup(other.point_.get(), other.curve_->group())) {
  if (!point_) throw std::bad_alloc();
}

Point& Point::operator=(const Point& other) {
  if (this != &other) {
    curve_ = other.curve_;
    point_.reset(EC_POINT_dup(other.point_.get(), other.curve_->group()));
    if (!point_) throw std::bad_alloc();
  }
  return *this;
}

Bytes Point::Encode() const {
  if (IsIdentity()) return Bytes{0x00};
  Bytes out(curve_->point_bytes());
  const size_t len = EC_POINT_point2oct(curve_->group(), point_.get(), POINT_CONVERSION_COMPRESSED,
                                        out.data(), out.size(), ThreadBnCtx());
  if (len != out.size()) {
    throw std::runtime_error("EC_POINT_point2oct failed");
  }
  return out;
}

Point Point::Decode(const Curve& curve, std::span<const uint8_t> bytes) {
  if (bytes.size() == 1 && bytes[0] == 0x00) {
    return Point(curve);
  }
  if (bytes.size() != curve.point_bytes()) {
    throw DecodeError("point encoding has wrong length");
  }
  if (bytes[0] != 0x02 && bytes[0] != 0x03) {
    throw DecodeError("invalid point prefix");
  }
  PointPtr p = NewPoint(curve.group());
  if (EC_POINT_oct2point(curve.group(), p.get(), bytes.data(), bytes.size(), ThreadBnCtx()) !=
      1) {
    throw DecodeError("point is not on the curve");
  }
  return Point(curve, std::move(p));
}

Bytes Point::EncodeFixed() const {
  if (IsIdentity()) return Bytes(curve_->point_bytes(), 0x00);
  return Encode();
}

Point Point::DecodeFixed(const Curve& curve, std::span<const uint8_t> bytes) {
  if (bytes.size() != curve.point_bytes()) {
    throw DecodeError("point slot has wrong length");
  }
  if (bytes[0] == 0x00) {
    for (uint8_t b : bytes) {
      if (b != 0) throw DecodeError("malformed identity encoding");
    }
    return Point(curve);
  }
  return Decode(curve, bytes);
}

Point Point::FromAffine(const Curve& curve, std::span<const uint8_t> x,
                        std::span<const uint8_t> y) {
  BnPtr bx(BN_bin2bn(x.data(), static_cast<int>(x.size()), nullptr));
  BnPtr by(BN_bin2bn(y.data(), static_cast<int>(y.size()), nullptr));
  if (!bx || !by) throw std::bad_alloc();
  PointPtr p = NewPoint(curve.group());
  if (EC_POINT_set_affine_coordinates(curve.group(), p.get(), bx.get(), by.get(),
                                      ThreadBnCtx()) != 1) {
    throw DecodeError("affine coordinates are not on the curve");
  }
  return Point(curve, std::move(p));
}

std::optional<Point> Point::LiftX(const Curve& curve, std::span<const uint8_t> x) {
  if (x.size() != curve.field_bytes()) {
    throw std::invalid_argument("abscissa has wrong length");
  }
  Bytes enc;
  enc.reserve(x.size() + 1);
  enc.push_back(0x02);
  enc.insert(enc.end(), x.begin(), x.end());
  PointPtr p = NewPoint(curve.group());
  if (EC_POINT_oct2point(curve.group(), p.get(), enc.data(), enc.size(), ThreadBnCtx()) != 1) {
    return std::nullopt;
  }
  return Point(curve, std::move(p));
}

Point Point::Random(const Curve& curve, RandomSource& rng) {
  Bytes x(curve.field_bytes());
  BnPtr bx = NewBn();
  for (;;) {
    rng.Fill(x);
    BN_bin2bn(x.data(), static_cast<int>(x.size()), bx.get());
    Check(BN_nnmod(bx.get(), bx.get(), curve.field_prime(), ThreadBnCtx()), "BN_nnmod");
    Check(BN_bn2binpad(bx.get(), x.data(), static_cast<int>(x.size())) > 0 ? 1 : 0,
          "BN_bn2binpad");
    Bytes sign(1);
    rng.Fill(sign);
    if (auto p = LiftX(curve, x)) {
      return (sign[0] & 1) ? -*p : *p;
    }
  }
}

std::optional<std::pair<Bytes, Bytes>> Point::Affine() const {
  if (IsIdentity()) return std::nullopt;
  BnPtr x = NewBn(), y = NewBn();
  Check(EC_POINT_get_affine_coordinates(curve_->group(), point_.get(), x.get(), y.get(),
                                        ThreadBnCtx()),
        "EC_POINT_get_affine_coordinates");
  Bytes bx(curve_->field_bytes()), by(curve_->field_bytes());
  BN_bn2binpad(x.get(), bx.data(), static_cast<int>(bx.size()));
  BN_bn2binpad(y.get(), by.data(), static_cast<int>(by.size()));
  return std::make_pair(std::move(bx), std::move(by));
}

bool Point::IsIdentity() const {
  return EC_POINT_is_at_infinity(curve_->group(), point_.get()) == 1;
}

Point Point::operator+(const Point& o) const {
  RequireSameCurve(*curve_, *o.curve_);
  ++ThreadOpCounter().point_adds;
  PointPtr r = NewPoint(curve_->group());
  RawAdd(curve_->group(), r.get(), point_.get(), o.point_.get());
  return Point(*curve_, std::move(r));
}

Point Point::operator-() const {
  PointPtr r(EC_POINT_dup(point_.get(), curve_->group()));
  if (!r) throw std::bad_alloc();
  Check(EC_POINT_invert(curve_->group(), r.get(), ThreadBnCtx()), "EC_POINT_invert");
  return Point(*curve_, std::move(r));
}

Point Point::operator-(const Point& o) const { return *this + (-o); }

Point Point::Double() const {
  PointPtr r(EC_POINT_dup(point_.get(), curve_->group()));
  if (!r) throw std::bad_alloc();
  RawDbl(curve_->group(), r.get());
  return Point(*curve_, std::move(r));
}

bool Point::operator==(const Point& o) const {
  if (curve_ != o.curve_) return false;
  const int rc = EC_POINT_cmp(curve_->group(), point_.get(), o.point_.get(), ThreadBnCtx());
  if (rc < 0) throw std::runtime_error("EC_POINT_cmp failed");
  return rc == 0;
}

// ---------------------------------------------------------------------------
// Multiplication kernels

namespace {

constexpr unsigned kScalarMulWindow = 4;

PointPtr ScalarMulRaw(const Curve& curve, const ScalarBits& k, const EC_POINT* p) {
  const EC_GROUP* g = curve.group();
  PointPtr acc = NewPoint(g);
  Check(EC_POINT_set_to_infinity(g, acc.get()), "EC_POINT_set_to_infinity");
  if (k.bit_length() == 0 || EC_POINT_is_at_infinity(g, p) == 1) {
    return acc;
  }

  constexpr size_t kTable = 1U << kScalarMulWindow;
  std::array<PointPtr, kTable> table;
  table[1].reset(EC_POINT_dup(p, g));
  for (size_t i = 2; i < kTable; ++i) {
    table[i] = NewPoint(g);
    RawAdd(g, table[i].get(), table[i - 1].get(), p);
  }
  std::array<EC_POINT*, kTable - 1> raw;
  for (size_t i = 1; i < kTable; ++i) raw[i - 1] = table[i].get();
  MakeAffine(g, raw);

  const size_t windows = (k.bit_length() + kScalarMulWindow - 1) / kScalarMulWindow;
  bool started = false;
  for (size_t w = windows; w-- > 0;) {
    if (started) {
      for (unsigned d = 0; d < kScalarMulWindow; ++d) RawDbl(g, acc.get());
    }
    const unsigned digit = k.Window(w * kScalarMulWindow, kScalarMulWindow);
    if (digit != 0) {
      RawAdd(g, acc.get(), acc.get(), table[digit].get());
      started = true;
    }
  }
  return acc;
}

PointPtr GeneratorMulRaw(const Curve& curve, const ScalarBits& k) {
  const EC_GROUP* g = curve.group();
  const auto& table = curve.GeneratorTable();
  PointPtr acc = NewPoint(g);
  Check(EC_POINT_set_to_infinity(g, acc.get()), "EC_POINT_set_to_infinity");
  const size_t windows = (k.bit_length() + kScalarMulWindow - 1) / kScalarMulWindow;
  for (size_t w = 0; w < windows; ++w) {
    const unsigned digit = k.Window(w * kScalarMulWindow, kScalarMulWindow);
    if (digit != 0) RawAdd(g, acc.get(), acc.get(), table[w * 15 + digit - 1].get());
  }
  return acc;
}

}  // namespace

const std::vector<PointPtr>& Curve::GeneratorTable() const {
  std::call_once(generator_once_, [this] {
    const EC_GROUP* g = group_.get();
    const size_t windows = (order_bits() + kScalarMulWindow - 1) / kScalarMulWindow;
    PointPtr base(EC_POINT_dup(EC_GROUP_get0_generator(g), g));
    std::vector<PointPtr> table;
    for (size_t w = 0; w < windows; ++w) {
      for (unsigned d = 1; d <= 15; ++d) {
        PointPtr e = NewPoint(g);
        if (d == 1) {
          Check(EC_POINT_copy(e.get(), base.get()), "EC_POINT_copy");
        } else {
          RawAdd(g, e.get(), table.back().get(), base.get());
        }
        table.push_back(std::move(e));
      }
      for (unsigned d = 0; d < kScalarMulWindow; ++d) RawDbl(g, base.get());
    }
    std::vector<EC_POINT*> raw;
    for (auto& e : table) {
      if (EC_POINT_is_at_infinity(g, e.get()) != 1) raw.push_back(e.get());
    }
    MakeAffine(g, raw);
    generator_table_ = std::move(table);
  });
  return generator_table_;
}

Point ScalarMul(const Scalar& k, const Point& p) {
  RequireSameCurve(k.curve(), p.curve());
  ++ThreadOpCounter().scalar_mults;
  const Curve& curve = p.curve();
  const EC_GROUP* g = curve.group();
  if (EC_POINT_cmp(g, p.raw(), EC_GROUP_get0_generator(g), ThreadBnCtx()) == 0) {
    return PointAccess::Wrap(curve, GeneratorMulRaw(curve, ScalarBits(k)));
  }
  return PointAccess::Wrap(curve, ScalarMulRaw(curve, ScalarBits(k), p.raw()));
}

Point StrausDoubleMul(const Scalar& a, const Point& x, const Scalar& b, const Point& y) {
  RequireSameCurve(a.curve(), x.curve());
  RequireSameCurve(b.curve(), y.curve());
  RequireSameCurve(x.curve(), y.curve());
  auto& counter = ThreadOpCounter();
  counter.scalar_mults += 2;
  ++counter.straus_calls;

  const Curve& curve = x.curve();
  const EC_GROUP* g = curve.group();
  const ScalarBits ka(a), kb(b);
  PointPtr acc = NewPoint(g);
  Check(EC_POINT_set_to_infinity(g, acc.get()), "EC_POINT_set_to_infinity");
  const size_t bits = std::max(ka.bit_length(), kb.bit_length());
  if (bits == 0) {
    return PointAccess::Wrap(curve, std::move(acc));
  }

  // table[i][j] = i*X + j*Y for i, j in [0, 3].
  std::array<std::array<PointPtr, 4>, 4> table;
  for (auto& row : table) {
    for (auto& cell : row) cell = NewPoint(g);
  }
  Check(EC_POINT_set_to_infinity(g, table[0][0].get()), "EC_POINT_set_to_infinity");
  Check(EC_POINT_copy(table[1][0].get(), x.raw()), "EC_POINT_copy");
  Check(EC_POINT_copy(table[0][1].get(), y.raw()), "EC_POINT_copy");
  Check(EC_POINT_dbl(g, table[2][0].get(), x.raw(), ThreadBnCtx()), "EC_POINT_dbl");
  Check(EC_POINT_dbl(g, table[0][2].get(), y.raw(), ThreadBnCtx()), "EC_POINT_dbl");
  RawAdd(g, table[3][0].get(), table[2][0].get(), x.raw());
  RawAdd(g, table[0][3].get(), table[0][2].get(), y.raw());
  for (int i = 1; i < 4; ++i) {
    for (int j = 1; j < 4; ++j) {
      RawAdd(g, table[i][j].get(), table[i][0].get(), table[0][j].get());
    }
  }
  std::vector<EC_POINT*> raw;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (EC_POINT_is_at_infinity(g, table[i][j].get()) != 1) raw.push_back(table[i][j].get());
    }
  }
  MakeAffine(g, raw);

  const size_t columns = (bits + 1) / 2;
  bool started = false;
  for (size_t c = columns; c-- > 0;) {
    if (started) {
      RawDbl(g, acc.get());
      RawDbl(g, acc.get());
    }
    const unsigned da = ka.Window(2 * c, 2);
    const unsigned db = kb.Window(2 * c, 2);
    if (da != 0 || db != 0) {
      RawAdd(g, acc.get(), acc.get(), table[da][db].get());
      started = true;
    }
  }
  return PointAccess::Wrap(curve, std::move(acc));
}

Point MsmNaive(const Curve& curve, std::span<const ScalarPoint> pairs) {
  auto& counter = ThreadOpCounter();
  ++counter.msm_calls;
  counter.scalar_mults += pairs.size();
  PointPtr acc = NewPoint(curve.group());
  Check(EC_POINT_set_to_infinity(curve.group(), acc.get()), "EC_POINT_set_to_infinity");
  for (const auto& [k, p] : pairs) {
    RequireSameCurve(k.curve(), curve);
    RequireSameCurve(p.curve(), curve);
    PointPtr term = ScalarMulRaw(curve, ScalarBits(k), p.raw());
    RawAdd(curve.group(), acc.get(), acc.get(), term.get());
  }
  return PointAccess::Wrap(curve, std::move(acc));
}

unsigned PippengerWindow(size_t pair_count, size_t scalar_bits) {
  unsigned best = 1;
  double best_cost = -1;
  for (unsigned c = 1; c <= 16; ++c) {
    const double windows = static_cast<double>((scalar_bits + c - 1) / c);
    const double cost =
        windows * (static_cast<double>(pair_count) + static_cast<double>(1ULL << (c + 1)) + c);
    if (best_cost < 0 || cost < best_cost) {
      best_cost = cost;
      best = c;
    }
  }
  return best;
}

Point MsmPippenger(const Curve& curve, std::span<const ScalarPoint> pairs) {
  const EC_GROUP* g = curve.group();
  auto& counter = ThreadOpCounter();
  ++counter.msm_calls;
  counter.scalar_mults += pairs.size();

  std::vector<ScalarBits> digits;
  digits.reserve(pairs.size());
  size_t bits = 0;
  for (const auto& [k, p] : pairs) {
    RequireSameCurve(k.curve(), curve);
    RequireSameCurve(p.curve(), curve);
    digits.emplace_back(k);
    bits = std::max(bits, digits.back().bit_length());
  }

  PointPtr acc = NewPoint(g);
  Check(EC_POINT_set_to_infinity(g, acc.get()), "EC_POINT_set_to_infinity");
  if (bits == 0) {
    return PointAccess::Wrap(curve, std::move(acc));
  }

  const unsigned c = PippengerWindow(pairs.size(), bits);
  const size_t bucket_count = (size_t{1} << c) - 1;
  std::vector<PointPtr> buckets(bucket_count);
  std::vector<bool> used(bucket_count);
  for (auto& b : buckets) b = NewPoint(g);
  PointPtr running = NewPoint(g);
  PointPtr window_sum = NewPoint(g);

  const size_t windows = (bits + c - 1) / c;
  bool started = false;
  for (size_t w = windows; w-- > 0;) {
    if (started) {
      for (unsigned d = 0; d < c; ++d) RawDbl(g, acc.get());
    }
    std::fill(used.begin(), used.end(), false);
    for (size_t i = 0; i < pairs.size(); ++i) {
      const unsigned digit = digits[i].Window(w * c, c);
      if (digit == 0) continue;
      EC_POINT* bucket = buckets[digit - 1].get();
      if (used[digit - 1]) {
        RawAdd(g, bucket, bucket, pairs[i].point.raw());
      } else {
        Check(EC_POINT_copy(bucket, pairs[i].point.raw()), "EC_POINT_copy");
        used[digit - 1] = true;
      }
    }
    // sum_j j * B_j via running suffix sums.
    Check(EC_POINT_set_to_infinity(g, running.get()), "EC_POINT_set_to_infinity");
    Check(EC_POINT_set_to_infinity(g, window_sum.get()), "EC_POINT_set_to_infinity");
    bool any = false;
    for (size_t j = bucket_count; j-- > 0;) {
      if (used[j]) {
        RawAdd(g, running.get(), running.get(), buckets[j].get());
        any = true;
      }
      if (any) {
        RawAdd(g, window_sum.get(), window_sum.get(), running.get());
      }
    }
    if (any) {
      RawAdd(g, acc.get(), acc.get(), window_sum.get());
      started = true;
    }
  }
  return PointAccess::Wrap(curve, std::move(acc));
}

Point Msm(const Curve& curve, std::span<const ScalarPoint> pairs) {
  if (pairs.empty()) {
    ++ThreadOpCounter().msm_calls;
    return curve.Identity();
  }
  if (pairs.size() == 1) {
    return ScalarMul(pairs[0].scalar, pairs[0].point);
  }
  if (pairs.size() == 2) {
    return StrausDoubleMul(pairs[0].scalar, pairs[0].point, pairs[1].scalar, pairs[1].point);
  }
  return MsmPippenger(curve, pairs);
}

}  // namespace trse
