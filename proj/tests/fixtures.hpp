#pragma once

#include <string>
#include <vector>

#include "trse/core.hpp"
#include "trse/identity.hpp"
#include "trse/threshold.hpp"

namespace trse::testing {

// A center with a (t, N) shared master key and n registered users, all with
// certificateless keys.
struct World {
  const Curve* curve;
  DkgResult dkg;
  Scalar master;  // test-side only
  std::vector<UserKeyPair> users;
  Registry registry;

  const Point& ypub() const { return dkg.ypub; }

  RingPublic RingOf(const std::vector<size_t>& members) const {
    RingPublic ring;
    for (size_t m : members) {
      ring.keys.push_back(users[m].pub);
      ring.ids.push_back(users[m].id);
    }
    return ring;
  }

  // The first n users, in order.
  RingPublic FirstRing(size_t n) const {
    std::vector<size_t> m;
    for (size_t i = 0; i < n; ++i) m.push_back(i);
    return RingOf(m);
  }
};

inline World MakeWorld(const Curve& curve, size_t users, RandomSource& rng, size_t t = 1,
                       size_t n_supervisors = 1) {
  DkgResult dkg = RunDkg(curve, t, n_supervisors, rng);
  Scalar master = ReconstructSecret(dkg.shares, t);
  World w{&curve, std::move(dkg), std::move(master), {}, Registry(curve)};
  for (size_t i = 0; i < users; ++i) {
    const std::string id = "user-" + std::to_string(i);
    const PartialPrivateKey partial = IssuePartialKey(w.master, w.ypub(), id, rng);
    w.users.push_back(DeriveFullKey(partial, Scalar::RandomNonZero(curve, rng), rng));
    w.registry.Append(id, w.users.back().pub);
  }
  return w;
}

inline Bytes RandomMessage(RandomSource& rng, size_t len) {
  Bytes m(len);
  rng.Fill(m);
  return m;
}

}  // namespace trse::testing
