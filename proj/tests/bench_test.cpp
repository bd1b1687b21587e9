#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trse/bench.hpp"

using namespace trse;
using namespace trse::bench;

TEST_CASE("signing loop strategies agree") {
  for (const Curve* curve : {&Curve::Secp256k1(), &Curve::Sm2()}) {
    for (size_t n : {2, 3, 10}) {
      for (uint64_t seed = 1; seed <= 3; ++seed) {
        CHECK(RunSigningLoop(*curve, n, LoopStrategy::kNaive, seed) ==
              RunSigningLoop(*curve, n, LoopStrategy::kStraus, seed));
      }
    }
  }
}

TEST_CASE("bench rows") {
  const Curve& curve = Curve::Secp256k1();
  const BenchRow loop = BenchSigningLoop(curve, 2, LoopStrategy::kStraus, 3);
  CHECK(loop.reps == 11);
  CHECK(loop.median_ns > 0);
  CHECK(loop.curve == curve.id());
  CHECK_THROWS_AS(BenchSigningLoop(curve, 1, LoopStrategy::kNaive, 11), std::invalid_argument);

  const BenchRow single = BenchMsm(curve, 1, MsmStrategy::kPippenger, 11);
  CHECK(single.n == 1);
  CHECK(single.strategy == "pippenger");
  CHECK_THROWS_AS(BenchMsm(curve, 0, MsmStrategy::kNaive, 11), std::invalid_argument);

  const Comparison cmp = CompareMsm(curve, 8, 11);
  CHECK(cmp.baseline.strategy == "naive");
  CHECK(cmp.ratio() > 0.0);

  const BenchRow rows[] = {loop, single};
  const std::string csv = ToCsv(rows);
  CHECK(csv.rfind("scenario,n,strategy,median_ns,reps,curve\n", 0) == 0);
  CHECK(csv.find("signing_loop,2,straus,") != std::string::npos);
  CHECK(csv.find("msm,1,pippenger,") != std::string::npos);
}

TEST_CASE("single-point msm matches scalar multiplication") {
  const Curve& curve = Curve::Secp256k1();
  SeededRandom rng(11);
  for (int i = 0; i < 20; ++i) {
    const Scalar k = Scalar::Random(curve, rng);
    const Point p = Point::Random(curve, rng);
    const ScalarPoint pair[] = {{k, p}};
    CHECK(MsmPippenger(curve, pair) == k * p);
    CHECK(MsmNaive(curve, pair) == k * p);
  }
}

// Frozen regression values; a change here is a change to the protocol's cost.
TEST_CASE("operation counts") {
  const Curve& curve = Curve::Secp256k1();
  for (size_t n : {1, 2, 5, 10}) {
    const OpCounter s = CountOps(curve, Phase::kSigncrypt, n);
    CHECK(s.scalar_mults == 2 * n + 3);
    CHECK(s.straus_calls == n - 1);
    CHECK(s.hashes(HashKind::kH3) == n);
    CHECK(s.inversions == 1);
    CHECK(s.hash_to_point == 1);

    const OpCounter v = CountOps(curve, Phase::kVerify, n);
    CHECK(v.hashes(HashKind::kH3) == n);
    CHECK(v.straus_calls == n);
    CHECK(v.scalar_mults == 2 * n);
    CHECK(v.point_adds == 2 * n + 1);
    CHECK(v.inversions == 0);
  }
  const OpCounter s10 = CountOps(curve, Phase::kSigncrypt, 10);
  CHECK(s10.point_adds == 20);
  CHECK(s10.hash_evals == 12);

  const OpCounter c = CountOps(curve, Phase::kConfirm, 4);
  CHECK(c.scalar_mults == 7);
  CHECK(c.point_adds == 2);
  CHECK(c.hash_evals == 2);
  CHECK(c.hash_to_point == 3);

  const OpCounter d = CountOps(curve, Phase::kDeny, 4);
  CHECK(d.scalar_mults == 7);
  CHECK(d.point_adds == 4);
  CHECK(d.hash_to_point == 2);
  CHECK_THROWS_AS(CountOps(curve, Phase::kDeny, 1), std::invalid_argument);
}

TEST_CASE("serialized sizes") {
  for (const Curve* curve : {&Curve::Sm2(), &Curve::Secp256k1()}) {
    const SizeReport r = ReportSizes(*curve, 10, 32);
    CHECK(r.scalar_bytes == 32);
    CHECK(r.point_bytes == 33);
    CHECK(r.ciphertext_payload == 11 * 32 + 32 + 4 * 33);
    CHECK(r.ciphertext_payload == r.ciphertext_formula);
    CHECK(r.ciphertext_total == r.ciphertext_payload + 7);
    CHECK(r.ciphertext_payload - r.ciphertext_table == 33);
    CHECK(r.confirm_payload == 2 * 32 + 2 * 33);
    CHECK(r.deny_payload == 2 * 32 + 3 * 33);
    CHECK(r.confirm_payload == r.confirm_formula);
    CHECK(r.deny_payload == r.deny_formula);
  }
  const SizeReport big = ReportSizes(Curve::Sm2(), 3, 1000);
  CHECK(big.ciphertext_payload == 4 * 32 + 1000 + 4 * 33);
  CHECK(ToTable(big).find("delta 33") != std::string::npos);
}
