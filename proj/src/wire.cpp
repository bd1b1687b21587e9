#include "trse/wire.hpp"

#include <string>

namespace trse::wire {

void ExpectVersion(ByteReader& r) {
  const uint8_t v = r.U8();
  if (v != kVersion) throw DecodeError("unsupported format version " + std::to_string(v));
}

Point ReadPoint(ByteReader& r, const Curve& curve) {
  return Point::DecodeFixed(curve, r.Raw(curve.point_bytes()));
}

Scalar ReadScalar(ByteReader& r, const Curve& curve) {
  return Scalar::Decode(curve, r.Raw(curve.scalar_bytes()));
}

}  // namespace trse::wire
