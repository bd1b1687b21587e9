#pragma once

// Brute-force reference arithmetic on small-prime curves, written with plain
// integers and the textbook affine group law. Shares no code with the library.

#include <cstdint>
#include <optional>
#include <vector>

#include "trse/group.hpp"

namespace trse::testing {

struct ToyPoint {
  int64_t x = 0;
  int64_t y = 0;
  bool infinity = true;

  bool operator==(const ToyPoint&) const = default;
};

class ToyCurveOracle {
 public:
  ToyCurveOracle(int64_t q, int64_t a, int64_t b) : q_(q), a_(a), b_(b) {}

  int64_t Mod(int64_t v) const { return ((v % q_) + q_) % q_; }

  int64_t Inv(int64_t v) const {
    // Fermat; q is prime.
    int64_t result = 1, base = Mod(v), e = q_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % q_;
      base = base * base % q_;
      e >>= 1;
    }
    return result;
  }

  std::vector<ToyPoint> Enumerate() const {
    std::vector<ToyPoint> out{ToyPoint{}};
    for (int64_t x = 0; x < q_; ++x) {
      for (int64_t y = 0; y < q_; ++y) {
        if (Mod(y * y - (x * x * x + a_ * x + b_)) == 0) out.push_back({x, y, false});
      }
    }
    return out;
  }

  ToyPoint Add(const ToyPoint& p, const ToyPoint& r) const {
    if (p.infinity) return r;
    if (r.infinity) return p;
    if (p.x == r.x && Mod(p.y + r.y) == 0) return ToyPoint{};
    int64_t lambda;
    if (p.x == r.x && p.y == r.y) {
      lambda = Mod((3 * p.x * p.x + a_) * Inv(2 * p.y));
    } else {
      lambda = Mod((r.y - p.y) * Inv(r.x - p.x));
    }
    const int64_t x3 = Mod(lambda * lambda - p.x - r.x);
    const int64_t y3 = Mod(lambda * (p.x - x3) - p.y);
    return {x3, y3, false};
  }

  // k-fold repeated addition.
  ToyPoint Mul(uint64_t k, const ToyPoint& p) const {
    ToyPoint acc;
    for (uint64_t i = 0; i < k; ++i) acc = Add(acc, p);
    return acc;
  }

 private:
  int64_t q_, a_, b_;
};

inline ToyPoint ToToy(const Point& p) {
  const auto xy = p.Affine();
  if (!xy) return ToyPoint{};
  auto to_int = [](const Bytes& b) {
    int64_t v = 0;
    for (uint8_t byte : b) v = (v << 8) | byte;
    return v;
  };
  return {to_int(xy->first), to_int(xy->second), false};
}

inline Point FromToy(const Curve& curve, const ToyPoint& p) {
  if (p.infinity) return curve.Identity();
  Bytes x(curve.field_bytes()), y(curve.field_bytes());
  for (size_t i = 0; i < x.size(); ++i) {
    x[x.size() - 1 - i] = static_cast<uint8_t>(p.x >> (8 * i));
    y[y.size() - 1 - i] = static_cast<uint8_t>(p.y >> (8 * i));
  }
  return Point::FromAffine(curve, x, y);
}

}  // namespace trse::testing
