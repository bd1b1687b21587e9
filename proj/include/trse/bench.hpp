#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trse/group.hpp"
#include "trse/op_counter.hpp"

namespace trse::bench {

enum class LoopStrategy { kNaive, kStraus };
enum class MsmStrategy { kNaive, kPippenger };

std::string_view Name(LoopStrategy s);
std::string_view Name(MsmStrategy s);

struct BenchRow {
  std::string scenario;
  size_t n = 0;
  std::string strategy;
  uint64_t median_ns = 0;
  size_t reps = 0;
  std::string curve;
};

// "scenario,n,strategy,median_ns,reps,curve" plus one line per row.
std::string ToCsv(std::span<const BenchRow> rows);
std::string ToTable(std::span<const BenchRow> rows);

// Median of `reps` timed runs after one untimed warmup. reps < 11 is raised to 11.
template <typename Fn>
uint64_t MedianNanos(size_t reps, Fn&& fn);
// Alternates a and b each repetition; returns both medians.
template <typename FnA, typename FnB>
std::pair<uint64_t, uint64_t> PairedMedianNanos(size_t reps, FnA&& a, FnB&& b);

// The ring-signing chain with its sequential dependency intact:
//   Z_i = s_i (P_i + Q + G + R) + c_i (P_i + Q),  c_{i+1} = H3(..., Z_i, ...)
// Inputs are drawn from `seed`, so both strategies see identical values.
// Returns every Z_i; the strategies must agree exactly.
std::vector<Point> RunSigningLoop(const Curve& curve, size_t n, LoopStrategy strategy,
                                  uint64_t seed);

// n >= 2. Cross-checks against the naive loop before timing; throws
// std::logic_error if the outputs differ.
BenchRow BenchSigningLoop(const Curve& curve, size_t n, LoopStrategy strategy, size_t reps,
                          uint64_t seed = 1);

// point_count >= 1 random (scalar, point) pairs; cross-checked against the
// naive sum before timing.
BenchRow BenchMsm(const Curve& curve, size_t point_count, MsmStrategy strategy, size_t reps,
                  uint64_t seed = 1);

// Paired runs: naive and optimized repetitions alternate so that machine
// noise lands on both sides of the ratio. Same cross-checks as above.
struct Comparison {
  BenchRow baseline;
  BenchRow optimized;
  double ratio() const {
    return static_cast<double>(optimized.median_ns) / static_cast<double>(baseline.median_ns);
  }
};
Comparison CompareSigningLoop(const Curve& curve, size_t n, size_t reps, uint64_t seed = 1);
Comparison CompareMsm(const Curve& curve, size_t point_count, size_t reps, uint64_t seed = 1);

enum class Phase { kSigncrypt, kVerify, kConfirm, kDeny };
std::string_view Name(Phase p);

// Exact counter deltas for one run of a protocol phase on a ring of n
// (confirm and deny include both prover and verifier sides).
OpCounter CountOps(const Curve& curve, Phase phase, size_t n, uint64_t seed = 1);

struct SizeReport {
  size_t n = 0;
  size_t message_len = 0;
  size_t scalar_bytes = 0;
  size_t point_bytes = 0;
  size_t ciphertext_total = 0;     // as serialized
  size_t ciphertext_header = 0;    // version, n, |E|
  size_t ciphertext_payload = 0;   // total minus header
  size_t ciphertext_formula = 0;   // (n+1)|Z| + |E| + 4|G|
  size_t ciphertext_table = 0;     // (n+1)|Z| + |E| + 3|G|, i.e. without H
  size_t confirm_payload = 0;      // serialized minus version byte
  size_t confirm_formula = 0;      // 2|Z| + 2|G|
  size_t deny_payload = 0;
  size_t deny_formula = 0;         // 2|Z| + 3|G|
};

// Serializes real objects and reports their sizes next to the formulas.
SizeReport ReportSizes(const Curve& curve, size_t n, size_t message_len, uint64_t seed = 1);
std::string ToTable(const SizeReport& r);

}  // namespace trse::bench

#include "trse/bench_inl.hpp"
