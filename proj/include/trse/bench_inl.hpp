#pragma once

#include <algorithm>
#include <chrono>
#include <utility>
#include <vector>

namespace trse::bench {

namespace detail {

template <typename Fn>
uint64_t TimeOnce(Fn& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  const auto stop = std::chrono::steady_clock::now();
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count());
}

inline uint64_t Median(std::vector<uint64_t> samples) {
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
  return samples[samples.size() / 2];
}

}  // namespace detail

template <typename Fn>
uint64_t MedianNanos(size_t reps, Fn&& fn) {
  reps = std::max<size_t>(reps, 11);
  fn();  // warmup
  std::vector<uint64_t> samples;
  for (size_t i = 0; i < reps; ++i) samples.push_back(detail::TimeOnce(fn));
  return detail::Median(std::move(samples));
}

template <typename FnA, typename FnB>
std::pair<uint64_t, uint64_t> PairedMedianNanos(size_t reps, FnA&& a, FnB&& b) {
  reps = std::max<size_t>(reps, 11);
  a();
  b();
  std::vector<uint64_t> sa, sb;
  for (size_t i = 0; i < reps; ++i) {
    sa.push_back(detail::TimeOnce(a));
    sb.push_back(detail::TimeOnce(b));
  }
  return {detail::Median(std::move(sa)), detail::Median(std::move(sb))};
}

}  // namespace trse::bench
