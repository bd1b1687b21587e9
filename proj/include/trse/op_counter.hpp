#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace trse {

enum class HashKind : uint8_t { kH0 = 0, kH1, kH2, kH3, kH4, kH5, kDleq, kCount };

// Per-thread tallies of the cost categories used in the cost tables:
// point additions, scalar multiplications, hash evaluations, hash-to-point
// calls and modular inversions. Only public API entry points count; the
// additions and doublings inside a multiplication kernel are not tallied.
//
// A Straus kernel counts as two scalar multiplications (plus one
// straus_calls); an MSM over m pairs counts as m.
struct OpCounter {
  uint64_t point_adds = 0;
  uint64_t scalar_mults = 0;
  uint64_t straus_calls = 0;
  uint64_t msm_calls = 0;
  uint64_t hash_evals = 0;
  uint64_t hash_to_point = 0;
  uint64_t inversions = 0;
  std::array<uint64_t, static_cast<size_t>(HashKind::kCount)> by_kind{};

  uint64_t hashes(HashKind kind) const { return by_kind[static_cast<size_t>(kind)]; }

  OpCounter operator-(const OpCounter& o) const;
  bool operator==(const OpCounter&) const = default;
};

OpCounter& ThreadOpCounter();

// Measures the counter delta over a lexical region.
class OpCountScope {
 public:
  OpCountScope() : start_(ThreadOpCounter()) {}
  OpCounter counts() const { return ThreadOpCounter() - start_; }

 private:
  OpCounter start_;
};

}  // namespace trse
