#include "trse/op_counter.hpp"

namespace trse {

OpCounter OpCounter::operator-(const OpCounter& o) const {
  OpCounter d;
  d.point_adds = point_adds - o.point_adds;
  d.scalar_mults = scalar_mults - o.scalar_mults;
  d.straus_calls = straus_calls - o.straus_calls;
  d.msm_calls = msm_calls - o.msm_calls;
  d.hash_evals = hash_evals - o.hash_evals;
  d.hash_to_point = hash_to_point - o.hash_to_point;
  d.inversions = inversions - o.inversions;
  for (size_t i = 0; i < by_kind.size(); ++i) d.by_kind[i] = by_kind[i] - o.by_kind[i];
  return d;
}

OpCounter& ThreadOpCounter() {
  thread_local OpCounter counter;
  return counter;
}

}  // namespace trse
