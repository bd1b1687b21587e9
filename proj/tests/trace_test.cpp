#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "subsets.hpp"
#include "trse/trace.hpp"

using namespace trse;
using namespace trse::testing;

TEST_CASE("share verification keys") {
  const Curve& curve = Curve::Secp256k1();
  SeededRandom rng(1);
  const DkgResult dkg = RunDkg(curve, 3, 5, rng);
  for (const GlobalShare& s : dkg.shares) {
    CHECK(ShareVerificationKey(s.index, dkg.commitments) == s.value * curve.Generator());
  }
  const DkgResult single = RunDkg(curve, 1, 1, rng);
  CHECK(ShareVerificationKey(1, single.commitments) == single.commitments[0].points[0]);

  std::vector<VssCommitment> tampered = dkg.commitments;
  tampered[2].points[1] += curve.Generator();
  CHECK_FALSE(ShareVerificationKey(2, tampered) == dkg.shares[1].value * curve.Generator());
  CHECK_THROWS(ShareVerificationKey(1, std::span<const VssCommitment>{}));
}

TEST_CASE("DLEQ completeness and soundness") {
  const Curve& curve = Curve::Secp256k1();
  SeededRandom rng(2);
  const DkgResult dkg = RunDkg(curve, 2, 3, rng);
  const GlobalShare& share = dkg.shares[0];
  const Point vi = ShareVerificationKey(1, dkg.commitments);

  int honest = 0, perturbed_accepts = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point c1 = Scalar::RandomNonZero(curve, rng) * curve.Generator();
    DecryptionShare ds = MakeDecryptionShare(share, c1, rng);
    honest += VerifyDecryptionShare(ds, vi, c1);
    const Scalar delta = Scalar::RandomNonZero(curve, rng);
    switch (i % 5) {
      case 0: ds.d += delta * curve.Generator(); break;
      case 1: ds.proof.a1 += delta * curve.Generator(); break;
      case 2: ds.proof.a2 += delta * curve.Generator(); break;
      case 3: ds.proof.e += delta; break;
      case 4: ds.proof.z += delta; break;
    }
    perturbed_accepts += VerifyDecryptionShare(ds, vi, c1);
  }
  CHECK(honest == 10000);
  CHECK(perturbed_accepts == 0);
}

TEST_CASE("DLEQ rejects a share made with the wrong secret or key") {
  const Curve& curve = Curve::Sm2();
  SeededRandom rng(3);
  const DkgResult dkg = RunDkg(curve, 2, 3, rng);
  const Point c1 = Scalar::RandomNonZero(curve, rng) * curve.Generator();
  const GlobalShare off_by_one{1, dkg.shares[0].value + Scalar::FromU64(curve, 1)};
  const DecryptionShare ds = MakeDecryptionShare(off_by_one, c1, rng);
  CHECK_FALSE(VerifyDecryptionShare(ds, ShareVerificationKey(1, dkg.commitments), c1));

  const DecryptionShare good = MakeDecryptionShare(dkg.shares[0], c1, rng);
  CHECK(VerifyDecryptionShare(good, ShareVerificationKey(1, dkg.commitments), c1));
  CHECK_FALSE(VerifyDecryptionShare(good, ShareVerificationKey(2, dkg.commitments), c1));

  // Byte-level tamper sweep over the encoded share.
  const Bytes enc = good.Encode();
  for (size_t pos = 0; pos < enc.size(); ++pos) {
    Bytes bad = enc;
    bad[pos] ^= 0x01;
    bool accepted = false;
    try {
      const DecryptionShare parsed = DecryptionShare::Decode(curve, bad);
      accepted = VerifyDecryptionShare(parsed, ShareVerificationKey(parsed.index, dkg.commitments), c1);
    } catch (const std::exception&) {
    }
    CHECK_FALSE(accepted);
  }
  CHECK_THROWS_AS(MakeDecryptionShare(dkg.shares[0], curve.Identity(), rng), std::invalid_argument);
}

TEST_CASE("single supervisor degenerate case") {
  const Curve& curve = Curve::Secp256k1();
  SeededRandom rng(4);
  World w = MakeWorld(curve, 2, rng);
  const Ciphertext ct = Signcrypt({w.FirstRing(2), 1}, w.users[1], w.ypub(), ToBytes("m"), rng);
  const DecryptionShare ds = MakeDecryptionShare(w.dkg.shares[0], ct.c1, rng);
  CHECK(ds.d == w.master * ct.c1);
  CHECK(ct.c2 - ds.d == w.users[1].pub);
}

TEST_CASE("threshold tracing recovers the signer from every t-subset") {
  const Curve& curve = Curve::Secp256k1();
  SeededRandom rng(5);
  for (size_t n = 1; n <= 5; ++n) {
    for (size_t t = 1; t <= n; ++t) {
      const World w = MakeWorld(curve, 3, rng, t, n);
      const size_t signer = (n + t) % 3;
      const Ciphertext ct = Signcrypt({w.FirstRing(3), signer}, w.users[signer], w.ypub(),
                                      ToBytes("trace me"), rng);
      std::vector<DecryptionShare> all;
      for (const GlobalShare& s : w.dkg.shares) all.push_back(MakeDecryptionShare(s, ct.c1, rng));

      for (const auto& subset : Subsets(n, t)) {
        std::vector<DecryptionShare> chosen;
        for (PartyIndex i : subset) chosen.push_back(all[i - 1]);
        const TraceResult r = AggregateTrace(chosen, w.dkg.commitments, t, ct, w.registry);
        CHECK(r.signer_pub == w.users[signer].pub);
        CHECK(r.id == w.users[signer].id);
      }
      if (t > 1) {
        const std::vector<DecryptionShare> short_set(all.begin(), all.begin() + (t - 1));
        CHECK_THROWS_AS(AggregateTrace(short_set, w.dkg.commitments, t, ct, w.registry),
                        std::invalid_argument);
      }
    }
  }
}

TEST_CASE("tracing rejects bad shares and reports unknown signers") {
  const Curve& curve = Curve::Sm2();
  SeededRandom rng(6);
  const World w = MakeWorld(curve, 3, rng, 2, 3);
  const Ciphertext ct = Signcrypt({w.FirstRing(3), 0}, w.users[0], w.ypub(), ToBytes("x"), rng);
  std::vector<DecryptionShare> shares;
  for (const GlobalShare& s : w.dkg.shares) shares.push_back(MakeDecryptionShare(s, ct.c1, rng));

  std::vector<DecryptionShare> corrupted = shares;
  corrupted[1].d += curve.Generator();
  CHECK_THROWS_AS(AggregateTrace(corrupted, w.dkg.commitments, 2, ct, w.registry), ProtocolReject);

  std::vector<DecryptionShare> dup = {shares[0], shares[0]};
  CHECK_THROWS_AS(AggregateTrace(dup, w.dkg.commitments, 2, ct, w.registry), std::invalid_argument);

  const Registry empty(curve);
  const TraceResult r = AggregateTrace(shares, w.dkg.commitments, 2, ct, empty);
  CHECK(r.signer_pub == w.users[0].pub);
  CHECK_FALSE(r.id.has_value());
}

TEST_CASE("decryption share encoding") {
  const Curve& curve = Curve::Sm2();
  SeededRandom rng(7);
  const DkgResult dkg = RunDkg(curve, 1, 2, rng);
  const Point c1 = Point::Random(curve, rng);
  const DecryptionShare ds = MakeDecryptionShare(dkg.shares[1], c1, rng);
  const Bytes enc = ds.Encode();
  CHECK(enc.size() == 1 + 2 + 3 * 33 + 2 * 32);
  const DecryptionShare back = DecryptionShare::Decode(curve, enc);
  CHECK(back.index == 2);
  CHECK(back.Encode() == enc);
}
