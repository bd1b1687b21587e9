#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "subsets.hpp"
#include "trse/threshold.hpp"

using namespace trse;
using trse::testing::Subsets;

namespace {

const Curve& kCurve = Curve::Secp256k1();

Scalar S(uint64_t v) { return Scalar::FromU64(kCurve, v); }

LocalPolynomial Poly(std::vector<uint64_t> coeffs) {
  LocalPolynomial p;
  p.index = 1;
  for (uint64_t c : coeffs) p.coefficients.push_back(S(c));
  return p;
}

// Naive sum of a_w * i^w.
Scalar EvaluateNaive(const LocalPolynomial& p, uint64_t i) {
  Scalar acc(kCurve);
  for (size_t w = 0; w < p.coefficients.size(); ++w) {
    Scalar power = S(1);
    for (size_t e = 0; e < w; ++e) power *= S(i);
    acc += p.coefficients[w] * power;
  }
  return acc;
}

}  // namespace

TEST_CASE("local polynomial generation") {
  SeededRandom rng(1);
  CHECK_THROWS_AS(GenerateLocalPolynomial(kCurve, 1, 0, rng), std::invalid_argument);

  const LocalDeal deal = GenerateLocalPolynomial(kCurve, 3, 4, rng);
  REQUIRE(deal.polynomial.coefficients.size() == 4);
  for (size_t w = 0; w < 4; ++w) {
    CHECK(deal.commitment.points[w] == deal.polynomial.coefficients[w] * kCurve.Generator());
  }

  SeededRandom a(42), b(42);
  const LocalDeal da = GenerateLocalPolynomial(kCurve, 1, 3, a);
  const LocalDeal db = GenerateLocalPolynomial(kCurve, 1, 3, b);
  CHECK(da.polynomial.coefficients == db.polynomial.coefficients);
  CHECK(da.commitment.points == db.commitment.points);
}

TEST_CASE("share dealing") {
  CHECK(DealShare(Poly({1, 2}), 3).value == S(7));
  const LocalPolynomial constant = Poly({9});
  for (PartyIndex i = 1; i < 6; ++i) CHECK(DealShare(constant, i).value == S(9));
  CHECK_THROWS_AS(DealShare(constant, 0), std::invalid_argument);

  SeededRandom rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const LocalDeal deal = GenerateLocalPolynomial(kCurve, 1, 1 + trial % 6, rng);
    for (PartyIndex i = 1; i <= 7; ++i) {
      CHECK(DealShare(deal.polynomial, i).value == EvaluateNaive(deal.polynomial, i));
    }
  }
}

TEST_CASE("Feldman share verification") {
  SeededRandom rng(3);
  for (size_t t = 1; t <= 4; ++t) {
    const LocalDeal deal = GenerateLocalPolynomial(kCurve, 2, t, rng);
    for (PartyIndex i = 1; i <= 6; ++i) {
      ShareMessage msg = DealShare(deal.polynomial, i);
      CHECK(VerifyShare(msg, deal.commitment));
      for (uint64_t delta : {1ULL, 2ULL, 1000ULL, 0xFFFFFFFFULL}) {
        ShareMessage bad = msg;
        bad.value += S(delta);
        CHECK_FALSE(VerifyShare(bad, deal.commitment));
      }
      ShareMessage redirected = msg;
      redirected.to = static_cast<PartyIndex>(i % 6 + 1);
      if (t > 1) CHECK_FALSE(VerifyShare(redirected, deal.commitment));
    }
  }
  const LocalDeal deal = GenerateLocalPolynomial(kCurve, 2, 2, rng);
  ShareMessage wrong_dealer = DealShare(deal.polynomial, 1);
  wrong_dealer.from = 5;
  CHECK_THROWS_AS(VerifyShare(wrong_dealer, deal.commitment), std::invalid_argument);
}

TEST_CASE("global share aggregation") {
  const ShareMessage a{1, 4, S(10)}, b{2, 4, S(20)}, c{3, 4, S(12)};
  const std::vector<ShareMessage> one = {a};
  CHECK(AggregateGlobalShare(one).value == S(10));
  const std::vector<ShareMessage> three = {a, b, c};
  const GlobalShare g = AggregateGlobalShare(three);
  CHECK(g.index == 4);
  CHECK(g.value == S(42));
  const std::vector<ShareMessage> dup = {a, b, a};
  CHECK_THROWS_AS(AggregateGlobalShare(dup), std::invalid_argument);

  SeededRandom rng(4);
  for (int run = 0; run < 10; ++run) {
    const DkgResult dkg = RunDkg(kCurve, 3, 5, rng);
    for (const GlobalShare& s : dkg.shares) {
      CHECK(s.value * kCurve.Generator() == CommittedShareImage(dkg.commitments, s.index));
    }
  }
}

TEST_CASE("Lagrange coefficients") {
  const std::vector<PartyIndex> f1 = {1};
  CHECK(LagrangeCoefficient(kCurve, f1, 1) == S(1));
  const std::vector<PartyIndex> f12 = {1, 2};
  CHECK(LagrangeCoefficient(kCurve, f12, 1) == S(2));
  CHECK(LagrangeCoefficient(kCurve, f12, 2) == -S(1));

  CHECK_THROWS_AS(LagrangeCoefficient(kCurve, f12, 3), std::invalid_argument);
  const std::vector<PartyIndex> dup = {1, 2, 2};
  CHECK_THROWS_AS(LagrangeCoefficient(kCurve, dup, 1), std::invalid_argument);

  SeededRandom rng(5);
  for (size_t t = 1; t <= 5; ++t) {
    const LocalDeal deal = GenerateLocalPolynomial(kCurve, 1, t, rng);
    for (const auto& subset : Subsets(7, t)) {
      std::vector<PartyIndex> set(subset.begin(), subset.end());
      Scalar sum(kCurve), interp(kCurve);
      for (PartyIndex i : set) {
        const Scalar lambda = LagrangeCoefficient(kCurve, set, i);
        sum += lambda;
        interp += lambda * DealShare(deal.polynomial, i).value;
      }
      CHECK(sum.IsOne());
      CHECK(interp == deal.polynomial.coefficients[0]);
    }
  }
}

TEST_CASE("secret reconstruction") {
  const std::vector<GlobalShare> hand = {{1, S(8)}, {2, S(11)}};
  CHECK(ReconstructSecret(hand, 2) == S(5));
  const std::vector<GlobalShare> single = {{1, S(77)}};
  CHECK(ReconstructSecret(single, 1) == S(77));
  CHECK_THROWS_AS(ReconstructSecret(single, 2), std::invalid_argument);
}

TEST_CASE("DKG ceremonies reconstruct the committed secret from every subset") {
  SeededRandom rng(6);
  for (size_t n = 1; n <= 7; ++n) {
    for (size_t t = 1; t <= n; ++t) {
      const DkgResult dkg = RunDkg(kCurve, t, n, rng);
      Point sum_c0(kCurve);
      for (const VssCommitment& c : dkg.commitments) sum_c0 += c.points[0];
      CHECK(dkg.ypub == sum_c0);
      for (const auto& subset : Subsets(n, t)) {
        std::vector<GlobalShare> chosen;
        for (PartyIndex i : subset) chosen.push_back(dkg.shares[i - 1]);
        const Scalar s = ReconstructSecret(chosen, t);
        CHECK(s * kCurve.Generator() == dkg.ypub);
      }
    }
  }
}

TEST_CASE("DKG aborts on every single tampered share") {
  SeededRandom rng(7);
  const size_t n = 4, t = 2;
  for (PartyIndex from = 1; from <= n; ++from) {
    for (PartyIndex to = 1; to <= n; ++to) {
      const auto tamper = [&](ShareMessage& m) {
        if (m.from == from && m.to == to) m.value += S(1);
      };
      try {
        RunDkg(kCurve, t, n, rng, tamper);
        FAIL("tampered DKG completed");
      } catch (const DkgAbort& e) {
        CHECK(e.dealer == from);
        CHECK(e.recipient == to);
      }
    }
  }
  CHECK_THROWS_AS(RunDkg(kCurve, 0, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(RunDkg(kCurve, 4, 3, rng), std::invalid_argument);
}

TEST_CASE("share and commitment encodings roundtrip") {
  SeededRandom rng(8);
  const DkgResult dkg = RunDkg(Curve::Sm2(), 2, 3, rng);
  const Curve& curve = Curve::Sm2();
  for (const VssCommitment& c : dkg.commitments) {
    const Bytes enc = c.Encode();
    CHECK(enc.size() == 1 + 2 + 2 + 2 * 33);
    const VssCommitment back = VssCommitment::Decode(curve, enc);
    CHECK(back.index == c.index);
    CHECK(back.points == c.points);
  }
  for (const GlobalShare& s : dkg.shares) {
    const Bytes enc = s.Encode();
    CHECK(enc.size() == 1 + 2 + 32);
    const GlobalShare back = GlobalShare::Decode(curve, enc);
    CHECK(back.index == s.index);
    CHECK(back.value == s.value);
  }
  const ShareMessage msg{1, 2, Scalar::FromU64(curve, 99)};
  const ShareMessage back = ShareMessage::Decode(curve, msg.Encode());
  CHECK(back.from == 1);
  CHECK(back.to == 2);
  CHECK(back.value == msg.value);

  Bytes truncated = dkg.shares[0].Encode();
  truncated.pop_back();
  CHECK_THROWS_AS(GlobalShare::Decode(curve, truncated), DecodeError);
  Bytes bad_version = dkg.shares[0].Encode();
  bad_version[0] = 9;
  CHECK_THROWS_AS(GlobalShare::Decode(curve, bad_version), DecodeError);
}
