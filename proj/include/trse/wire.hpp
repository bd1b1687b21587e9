#pragma once

#include <span>

#include "trse/bytes.hpp"
#include "trse/group.hpp"

// Helpers shared by the binary record formats. Every record starts with a
// format-version byte; points occupy fixed point_bytes() slots and scalars
// fixed scalar_bytes() slots.
namespace trse::wire {

inline constexpr uint8_t kVersion = 1;

void ExpectVersion(ByteReader& r);
Point ReadPoint(ByteReader& r, const Curve& curve);
Scalar ReadScalar(ByteReader& r, const Curve& curve);

}  // namespace trse::wire
