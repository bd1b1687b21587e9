#include "trse/bench.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "trse/confirm.hpp"
#include "trse/core.hpp"
#include "trse/hash.hpp"
#include "trse/identity.hpp"
#include "trse/threshold.hpp"

namespace trse::bench {
namespace {

struct LoopInputs {
  std::vector<Point> keys;
  Point tag;
  Point g_plus_r;
  Point c1, c2, ypub, h;
  Bytes masked;
  std::vector<Scalar> s;
  Scalar c_start;
};

LoopInputs MakeLoopInputs(const Curve& curve, size_t n, uint64_t seed) {
  SeededRandom rng(seed);
  std::vector<Point> keys;
  for (size_t i = 0; i < n; ++i) keys.push_back(Point::Random(curve, rng));
  const Point ring_base = HashRingToPoint(keys);
  Point tag = Scalar::RandomNonZero(curve, rng) * ring_base;
  std::vector<Scalar> s;
  for (size_t i = 0; i < n; ++i) s.push_back(Scalar::RandomNonZero(curve, rng));
  Bytes masked(32);
  rng.Fill(masked);
  return LoopInputs{std::move(keys),
                    std::move(tag),
                    curve.Generator() + ring_base,
                    Point::Random(curve, rng),
                    Point::Random(curve, rng),
                    Point::Random(curve, rng),
                    Point::Random(curve, rng),
                    std::move(masked),
                    std::move(s),
                    Scalar::RandomNonZero(curve, rng)};
}

std::vector<Point> SigningLoop(const LoopInputs& in, LoopStrategy strategy) {
  std::vector<Point> zs;
  zs.reserve(in.keys.size());
  Scalar c = in.c_start;
  for (size_t i = 0; i < in.keys.size(); ++i) {
    const Point y = in.keys[i] + in.tag;
    const Point x = y + in.g_plus_r;
    Point z = strategy == LoopStrategy::kStraus ? StrausDoubleMul(in.s[i], x, c, y)
                                                : in.s[i] * x + c * y;
    c = HashChain(in.c1, in.c2, in.keys[i], in.tag, z, in.masked, in.ypub, in.h);
    zs.push_back(std::move(z));
  }
  return zs;
}

std::vector<ScalarPoint> MakeMsmInputs(const Curve& curve, size_t count, uint64_t seed) {
  SeededRandom rng(seed);
  std::vector<ScalarPoint> pairs;
  for (size_t i = 0; i < count; ++i) {
    pairs.push_back({Scalar::Random(curve, rng), Point::Random(curve, rng)});
  }
  return pairs;
}

// n certificateless users under a 1-of-1 center; signer at position 0.
struct Setting {
  Point ypub;
  std::vector<UserKeyPair> users;
  RingPublic ring;
};

Setting MakeSetting(const Curve& curve, size_t n, RandomSource& rng) {
  const DkgResult dkg = RunDkg(curve, 1, 1, rng);
  const Scalar master = ReconstructSecret(dkg.shares, 1);
  Setting out{dkg.ypub, {}, {}};
  for (size_t i = 0; i < n; ++i) {
    const std::string id = "member-" + std::to_string(i);
    const PartialPrivateKey partial = IssuePartialKey(master, dkg.ypub, id, rng);
    out.users.push_back(DeriveFullKey(partial, Scalar::RandomNonZero(curve, rng), rng));
    out.ring.keys.push_back(out.users.back().pub);
    out.ring.ids.push_back(id);
  }
  return out;
}

}  // namespace

std::string_view Name(LoopStrategy s) { return s == LoopStrategy::kStraus ? "straus" : "naive"; }
std::string_view Name(MsmStrategy s) { return s == MsmStrategy::kPippenger ? "pippenger" : "naive"; }

std::string_view Name(Phase p) {
  switch (p) {
    case Phase::kSigncrypt: return "signcrypt";
    case Phase::kVerify: return "verify";
    case Phase::kConfirm: return "confirm";
    case Phase::kDeny: return "deny";
  }
  return "?";
}

std::string ToCsv(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << "scenario,n,strategy,median_ns,reps,curve\n";
  for (const BenchRow& r : rows) {
    out << r.scenario << ',' << r.n << ',' << r.strategy << ',' << r.median_ns << ',' << r.reps
        << ',' << r.curve << '\n';
  }
  return out.str();
}

std::string ToTable(std::span<const BenchRow> rows) {
  std::ostringstream out;
  out << std::left << std::setw(14) << "scenario" << std::right << std::setw(6) << "n"
      << std::setw(12) << "strategy" << std::setw(14) << "median_ms" << std::setw(6) << "reps"
      << "  curve\n";
  for (const BenchRow& r : rows) {
    out << std::left << std::setw(14) << r.scenario << std::right << std::setw(6) << r.n
        << std::setw(12) << r.strategy << std::setw(14) << std::fixed << std::setprecision(4)
        << static_cast<double>(r.median_ns) / 1e6 << std::setw(6) << r.reps << "  " << r.curve
        << '\n';
  }
  return out.str();
}

std::vector<Point> RunSigningLoop(const Curve& curve, size_t n, LoopStrategy strategy,
                                  uint64_t seed) {
  return SigningLoop(MakeLoopInputs(curve, n, seed), strategy);
}

BenchRow BenchSigningLoop(const Curve& curve, size_t n, LoopStrategy strategy, size_t reps,
                          uint64_t seed) {
  if (n < 2) throw std::invalid_argument("signing-loop benchmark needs n >= 2");
  const LoopInputs in = MakeLoopInputs(curve, n, seed);
  if (strategy != LoopStrategy::kNaive &&
      SigningLoop(in, strategy) != SigningLoop(in, LoopStrategy::kNaive)) {
    throw std::logic_error("signing loop: strategies disagree");
  }
  const uint64_t ns = MedianNanos(reps, [&] { (void)SigningLoop(in, strategy); });
  return BenchRow{"signing_loop", n, std::string(Name(strategy)), ns, std::max<size_t>(reps, 11),
                  curve.id()};
}

BenchRow BenchMsm(const Curve& curve, size_t point_count, MsmStrategy strategy, size_t reps,
                  uint64_t seed) {
  if (point_count == 0) throw std::invalid_argument("msm benchmark needs at least one point");
  const std::vector<ScalarPoint> pairs = MakeMsmInputs(curve, point_count, seed);
  auto run = [&](MsmStrategy s) {
    return s == MsmStrategy::kPippenger ? MsmPippenger(curve, pairs) : MsmNaive(curve, pairs);
  };
  if (strategy != MsmStrategy::kNaive && !(run(strategy) == run(MsmStrategy::kNaive))) {
    throw std::logic_error("msm: strategies disagree");
  }
  const uint64_t ns = MedianNanos(reps, [&] { (void)run(strategy); });
  return BenchRow{"msm", point_count, std::string(Name(strategy)), ns, std::max<size_t>(reps, 11),
                  curve.id()};
}

Comparison CompareSigningLoop(const Curve& curve, size_t n, size_t reps, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("signing-loop benchmark needs n >= 2");
  const LoopInputs in = MakeLoopInputs(curve, n, seed);
  if (SigningLoop(in, LoopStrategy::kStraus) != SigningLoop(in, LoopStrategy::kNaive)) {
    throw std::logic_error("signing loop: strategies disagree");
  }
  const auto [naive, straus] =
      PairedMedianNanos(reps, [&] { (void)SigningLoop(in, LoopStrategy::kNaive); },
                        [&] { (void)SigningLoop(in, LoopStrategy::kStraus); });
  reps = std::max<size_t>(reps, 11);
  return Comparison{BenchRow{"signing_loop", n, "naive", naive, reps, curve.id()},
                    BenchRow{"signing_loop", n, "straus", straus, reps, curve.id()}};
}

Comparison CompareMsm(const Curve& curve, size_t point_count, size_t reps, uint64_t seed) {
  if (point_count == 0) throw std::invalid_argument("msm benchmark needs at least one point");
  const std::vector<ScalarPoint> pairs = MakeMsmInputs(curve, point_count, seed);
  if (!(MsmPippenger(curve, pairs) == MsmNaive(curve, pairs))) {
    throw std::logic_error("msm: strategies disagree");
  }
  const auto [naive, pippenger] = PairedMedianNanos(
      reps, [&] { (void)MsmNaive(curve, pairs); }, [&] { (void)MsmPippenger(curve, pairs); });
  reps = std::max<size_t>(reps, 11);
  return Comparison{BenchRow{"msm", point_count, "naive", naive, reps, curve.id()},
                    BenchRow{"msm", point_count, "pippenger", pippenger, reps, curve.id()}};
}

OpCounter CountOps(const Curve& curve, Phase phase, size_t n, uint64_t seed) {
  if (n == 0) throw std::invalid_argument("ring size must be at least 1");
  if ((phase == Phase::kDeny) && n < 2) throw std::invalid_argument("deny needs a non-signer");
  SeededRandom rng(seed);
  const Setting st = MakeSetting(curve, n, rng);
  const Bytes message(32, 0x5A);

  if (phase == Phase::kSigncrypt) {
    OpCountScope scope;
    (void)Signcrypt({st.ring, 0}, st.users[0], st.ypub, message, rng);
    return scope.counts();
  }
  const Ciphertext ct = Signcrypt({st.ring, 0}, st.users[0], st.ypub, message, rng);
  OpCountScope scope;
  switch (phase) {
    case Phase::kVerify:
      if (!Verify(st.ring, st.ypub, ct)) throw std::logic_error("honest ciphertext rejected");
      break;
    case Phase::kConfirm: {
      const ConfirmProof proof = ConfirmProve(st.users[0], ct, st.ring, rng);
      if (!ConfirmVerify(proof, st.users[0].pub, ct, st.ring)) {
        throw std::logic_error("honest confirmation rejected");
      }
      break;
    }
    case Phase::kDeny: {
      DenyProver prover = DenyProver::Start(st.users[1], ct, st.ring, rng);
      const Scalar c = DenyChallenge(curve, rng);
      const DenyTranscript t{prover.commitment(), c, prover.Respond(c)};
      if (DenyVerify(t, st.users[1].pub, ct, st.ring) != DenyVerdict::kAccept) {
        throw std::logic_error("honest denial rejected");
      }
      break;
    }
    case Phase::kSigncrypt:
      break;
  }
  return scope.counts();
}

SizeReport ReportSizes(const Curve& curve, size_t n, size_t message_len, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("size report needs n >= 2 (deny needs a non-signer)");
  SeededRandom rng(seed);
  const Setting st = MakeSetting(curve, n, rng);
  const Ciphertext ct =
      Signcrypt({st.ring, 0}, st.users[0], st.ypub, Bytes(message_len, 0x42), rng);
  const ConfirmProof proof = ConfirmProve(st.users[0], ct, st.ring, rng);
  DenyProver prover = DenyProver::Start(st.users[1], ct, st.ring, rng);
  const Scalar c = DenyChallenge(curve, rng);
  const DenyTranscript deny{prover.commitment(), c, prover.Respond(c)};

  SizeReport r;
  r.n = n;
  r.message_len = message_len;
  r.scalar_bytes = curve.scalar_bytes();
  r.point_bytes = curve.point_bytes();
  r.ciphertext_total = ct.Encode().size();
  r.ciphertext_header = 1 + 2 + 4;
  r.ciphertext_payload = r.ciphertext_total - r.ciphertext_header;
  r.ciphertext_formula = (n + 1) * r.scalar_bytes + message_len + 4 * r.point_bytes;
  r.ciphertext_table = (n + 1) * r.scalar_bytes + message_len + 3 * r.point_bytes;
  r.confirm_payload = proof.Encode().size() - 1;
  r.confirm_formula = 2 * r.scalar_bytes + 2 * r.point_bytes;
  r.deny_payload = deny.Encode().size() - 1;
  r.deny_formula = 2 * r.scalar_bytes + 3 * r.point_bytes;
  return r;
}

std::string ToTable(const SizeReport& r) {
  std::ostringstream out;
  out << "n=" << r.n << " |M|=" << r.message_len << " |Z|=" << r.scalar_bytes
      << " |G|=" << r.point_bytes << "\n"
      << "ciphertext  total " << r.ciphertext_total << " = header " << r.ciphertext_header
      << " + payload " << r.ciphertext_payload << " (formula (n+1)|Z|+|E|+4|G| = "
      << r.ciphertext_formula << "; without H: " << r.ciphertext_table << ", delta "
      << r.ciphertext_payload - r.ciphertext_table << ")\n"
      << "confirm     payload " << r.confirm_payload << " (2|Z|+2|G| = " << r.confirm_formula
      << ")\n"
      << "deny        payload " << r.deny_payload << " (2|Z|+3|G| = " << r.deny_formula << ")\n";
  return out.str();
}

}  // namespace trse::bench
