#include "trse/hash.hpp"

#include <openssl/bn.h>
#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace trse {
namespace {

constexpr uint32_t kMaxHashAttempts = 256;

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

void Count(HashKind kind) {
  auto& counter = ThreadOpCounter();
  ++counter.by_kind[static_cast<size_t>(kind)];
  if (kind == HashKind::kH0 || kind == HashKind::kH1) {
    ++counter.hash_to_point;
  } else {
    ++counter.hash_evals;
  }
}

void AppendU32(Bytes& out, uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<uint8_t>(v >> shift));
}

const Curve& CurveOf(std::span<const Point> points) {
  if (points.empty()) {
    throw std::invalid_argument("point list must not be empty");
  }
  return points.front().curve();
}

}  // namespace

void HashInput::Frame(ItemType type, std::span<const uint8_t> body) {
  out_.push_back(static_cast<uint8_t>(type));
  AppendU32(out_, static_cast<uint32_t>(body.size()));
  out_.insert(out_.end(), body.begin(), body.end());
}

HashInput& HashInput::AddBytes(std::span<const uint8_t> data) {
  Frame(ItemType::kBytes, data);
  return *this;
}

HashInput& HashInput::AddPoint(const Point& p) {
  Frame(ItemType::kPoint, p.Encode());
  return *this;
}

HashInput& HashInput::AddScalar(const Scalar& s) {
  Frame(ItemType::kScalar, s.Encode());
  return *this;
}

HashInput& HashInput::AddPointList(std::span<const Point> points) {
  Bytes body;
  AppendU32(body, static_cast<uint32_t>(points.size()));
  for (const Point& p : points) {
    const Bytes enc = p.Encode();
    body.push_back(static_cast<uint8_t>(ItemType::kPoint));
    AppendU32(body, static_cast<uint32_t>(enc.size()));
    body.insert(body.end(), enc.begin(), enc.end());
  }
  Frame(ItemType::kPointList, body);
  return *this;
}

HashInput& HashInput::AddIdentity(std::string_view id) {
  Frame(ItemType::kIdentity, std::span(reinterpret_cast<const uint8_t*>(id.data()), id.size()));
  return *this;
}

HashInput& HashInput::AddIdentityList(std::span<const std::string> ids) {
  Bytes body;
  AppendU32(body, static_cast<uint32_t>(ids.size()));
  for (const std::string& id : ids) {
    body.push_back(static_cast<uint8_t>(ItemType::kIdentity));
    AppendU32(body, static_cast<uint32_t>(id.size()));
    body.insert(body.end(), id.begin(), id.end());
  }
  Frame(ItemType::kIdentityList, body);
  return *this;
}

Bytes BaseHash(const Curve& curve, std::span<const uint8_t> data) {
  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx) throw std::bad_alloc();
  const EVP_MD* md = curve.uses_sm3() ? EVP_sm3() : EVP_sha256();
  Bytes out(EVP_MAX_MD_SIZE);
  unsigned int len = 0;
  if (EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1) {
    throw std::runtime_error("digest computation failed");
  }
  out.resize(len);
  return out;
}

Bytes DomainHash(const Curve& curve, std::string_view tag, uint32_t counter,
                 std::span<const uint8_t> payload) {
  if (tag.size() > 0xFF) {
    throw std::invalid_argument("domain tag too long");
  }
  Bytes pre;
  pre.reserve(1 + tag.size() + 4 + payload.size());
  pre.push_back(static_cast<uint8_t>(tag.size()));
  pre.insert(pre.end(), tag.begin(), tag.end());
  AppendU32(pre, counter);
  pre.insert(pre.end(), payload.begin(), payload.end());
  return BaseHash(curve, pre);
}

Point HashToPoint(const Curve& curve, HashKind kind, std::string_view tag,
                  const HashInput& input) {
  Count(kind);
  BN_CTX* ctx = detail::ThreadBnCtx();
  detail::BnPtr x(BN_new());
  if (!x) throw std::bad_alloc();
  Bytes x_bytes(curve.field_bytes());
  for (uint32_t counter = 0; counter < kMaxHashAttempts; ++counter) {
    const Bytes digest = DomainHash(curve, tag, counter, input.bytes());
    BN_bin2bn(digest.data(), static_cast<int>(digest.size()), x.get());
    if (BN_nnmod(x.get(), x.get(), curve.field_prime(), ctx) != 1) {
      throw std::runtime_error("BN_nnmod failed");
    }
    BN_bn2binpad(x.get(), x_bytes.data(), static_cast<int>(x_bytes.size()));
    if (auto p = Point::LiftX(curve, x_bytes)) {
      return *std::move(p);
    }
  }
  throw std::runtime_error("hash-to-point exhausted its attempts; curve parameters are broken");
}

Scalar HashToNonZeroScalar(const Curve& curve, HashKind kind, std::string_view tag,
                           const HashInput& input) {
  Count(kind);
  for (uint32_t counter = 0; counter < kMaxHashAttempts; ++counter) {
    Scalar s = Scalar::FromBytesReduce(curve, DomainHash(curve, tag, counter, input.bytes()));
    if (!s.IsZero()) return s;
  }
  throw std::runtime_error("hash-to-scalar exhausted its attempts");
}

Point HashIdentityToPoint(std::string_view id, const Point& ypub, const Point& nonce_point) {
  HashInput in;
  in.AddIdentity(id).AddPoint(ypub).AddPoint(nonce_point);
  return HashToPoint(ypub.curve(), HashKind::kH0, kTagH0, in);
}

Point HashRingToPoint(std::span<const Point> ring) {
  const Curve& curve = CurveOf(ring);
  HashInput in;
  in.AddPointList(ring);
  return HashToPoint(curve, HashKind::kH1, kTagH1, in);
}

Scalar HashNonce(const Scalar& h, const Point& tag) {
  HashInput in;
  in.AddScalar(h).AddPoint(tag);
  return HashToNonZeroScalar(tag.curve(), HashKind::kH2, kTagH2, in);
}

Scalar HashChain(const Point& c1, const Point& c2, const Point& member, const Point& tag,
                 const Point& z, std::span<const uint8_t> masked, const Point& ypub,
                 const Point& h) {
  HashInput in;
  in.AddPoint(c1).AddPoint(c2).AddPoint(member).AddPoint(tag).AddPoint(z).AddBytes(masked);
  in.AddPoint(ypub).AddPoint(h);
  return HashToNonZeroScalar(c1.curve(), HashKind::kH3, kTagH3, in);
}

Scalar HashConfirm(const Point& g, const Point& ring_base, const Point& tag,
                   const Point& prover_pub, const Point& commit_g, const Point& commit_r) {
  HashInput in;
  in.AddPoint(g).AddPoint(ring_base).AddPoint(tag).AddPoint(prover_pub).AddPoint(commit_g).AddPoint(
      commit_r);
  return HashToNonZeroScalar(g.curve(), HashKind::kH4, kTagH4, in);
}

Bytes Keystream(std::string_view id, const Point& nonce_point, std::span<const std::string> ids,
                std::span<const Point> ring, const Point& ypub, size_t out_bits) {
  if (out_bits == 0 || out_bits % 8 != 0) {
    throw std::invalid_argument("keystream length must be a positive multiple of 8 bits");
  }
  Count(HashKind::kH5);
  const Curve& curve = ypub.curve();
  HashInput in;
  in.AddIdentity(id).AddPoint(nonce_point).AddIdentityList(ids).AddPointList(ring).AddPoint(ypub);

  const size_t out_len = out_bits / 8;
  Bytes out;
  out.reserve(out_len + 32);
  for (uint32_t block = 0; out.size() < out_len; ++block) {
    const Bytes digest = DomainHash(curve, kTagH5, block, in.bytes());
    out.insert(out.end(), digest.begin(), digest.end());
  }
  out.resize(out_len);
  return out;
}

}  // namespace trse
