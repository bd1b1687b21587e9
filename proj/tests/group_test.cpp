#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <vector>

#include "toy_oracle.hpp"
#include "trse/group.hpp"
#include "trse/op_counter.hpp"

using namespace trse;
using trse::testing::FromToy;
using trse::testing::ToToy;
using trse::testing::ToyCurveOracle;
using trse::testing::ToyPoint;

namespace {

const CurveParams kToy23{"toy23", "61", "2", "3", "0", "A", "64", 1};

const Curve& Toy23() {
  static const Curve curve(kToy23, Curve::Validation::kGroupLawOnly);
  return curve;
}

Bytes Hex(std::string_view s) { return FromHex(s); }

}  // namespace

TEST_CASE("curve profiles validate and match the named OpenSSL groups") {
  for (auto [curve, nid] : {std::pair{&Curve::Sm2(), NID_sm2},
                            std::pair{&Curve::Secp256k1(), NID_secp256k1}}) {
    EC_GROUP* named = EC_GROUP_new_by_curve_name(nid);
    REQUIRE(named != nullptr);
    CHECK(EC_GROUP_cmp(named, curve->group(), nullptr) == 0);
    EC_GROUP_free(named);
    CHECK(curve->field_bytes() == 32);
    CHECK(curve->scalar_bytes() == 32);
    CHECK(curve->point_bytes() == 33);
  }
  CHECK(Curve::Toy97().field_bytes() == 1);
  CHECK(Curve::Toy97().order_bits() == 7);
  CHECK(&Curve::Get("toy97") == &Curve::Toy97());
  CHECK_THROWS_AS(Curve::Get("p256"), std::invalid_argument);
}

TEST_CASE("curve validation rejects broken parameters") {
  // 4a^3 + 27b^2 = 0 for a = 0, b = 0.
  CHECK_THROWS_AS(Curve(CurveParams{"bad", "61", "0", "0", "0", "0", "59", 1}),
                  std::invalid_argument);
  // Composite group order only passes the group-law-only validation.
  CHECK_THROWS_AS(Curve{kToy23}, std::invalid_argument);
  CHECK_NOTHROW(Toy23());
  // Base point off the curve.
  CHECK_THROWS_AS(Curve(CurveParams{"bad", "61", "1", "4", "0", "3", "59", 1}),
                  std::invalid_argument);
}

TEST_CASE("point_add trivial cases") {
  for (const Curve* c : {&Curve::Sm2(), &Curve::Secp256k1(), &Curve::Toy97()}) {
    const Point g = c->Generator();
    CHECK(c->Identity() + g == g);
    CHECK((g + (-g)).IsIdentity());
    CHECK(g - g == c->Identity());
    CHECK(g.Double() == g + g);
  }
}

TEST_CASE("point_add matches the exhaustive addition table on y^2 = x^3 + 2x + 3 mod 97") {
  const ToyCurveOracle oracle(97, 2, 3);
  const auto points = oracle.Enumerate();
  REQUIRE(points.size() == 100);
  std::vector<Point> lib;
  for (const auto& p : points) lib.push_back(FromToy(Toy23(), p));
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = 0; j < points.size(); ++j) {
      const ToyPoint want = oracle.Add(points[i], points[j]);
      REQUIRE(ToToy(lib[i] + lib[j]) == want);
    }
  }
}

TEST_CASE("scalar_mul basics") {
  for (const Curve* c : {&Curve::Sm2(), &Curve::Secp256k1(), &Curve::Toy97()}) {
    const Point g = c->Generator();
    CHECK(ScalarMul(Scalar(*c), g).IsIdentity());
    CHECK(ScalarMul(Scalar::FromU64(*c, 1), g) == g);
    CHECK(ScalarMul(Scalar::FromU64(*c, 2), g) == g.Double());
    CHECK(ScalarMul(Scalar::FromU64(*c, 7), c->Identity()).IsIdentity());
  }
}

TEST_CASE("scalar_mul matches repeated addition for every toy97 element and scalar") {
  const ToyCurveOracle oracle(97, 1, 4);
  const auto points = oracle.Enumerate();
  REQUIRE(points.size() == 89);
  const Curve& c = Curve::Toy97();
  for (const auto& tp : points) {
    const Point p = FromToy(c, tp);
    ToyPoint want;  // k * P accumulated incrementally = repeated addition
    for (uint64_t k = 0; k < 89; ++k) {
      REQUIRE(ToToy(ScalarMul(Scalar::FromU64(c, k), p)) == want);
      want = oracle.Add(want, tp);
    }
    CHECK(want.infinity);  // 89 * P
  }
}

TEST_CASE("order times any point is the identity") {
  SeededRandom rng(7);
  for (const Curve* c : {&Curve::Sm2(), &Curve::Secp256k1(), &Curve::Toy97()}) {
    const Scalar minus_one = -Scalar::FromU64(*c, 1);
    for (int i = 0; i < 100; ++i) {
      const Point p = Point::Random(*c, rng);
      CHECK((minus_one * p + p).IsIdentity());
    }
  }
}

TEST_CASE("group laws hold on random triples") {
  SeededRandom rng(11);
  const Curve& c = Curve::Secp256k1();
  for (int i = 0; i < 10000; ++i) {
    const Point a = Point::Random(c, rng);
    const Point b = Point::Random(c, rng);
    const Point d = Point::Random(c, rng);
    REQUIRE((a + b) + d == a + (b + d));
    REQUIRE(a + b == b + a);
    REQUIRE(a + c.Identity() == a);
    REQUIRE((a + (-a)).IsIdentity());
  }
}

TEST_CASE("straus_double_mul") {
  SeededRandom rng(3);
  for (const Curve* c : {&Curve::Sm2(), &Curve::Secp256k1()}) {
    const Point g = c->Generator();
    const Scalar zero(*c), one = Scalar::FromU64(*c, 1);
    CHECK(StrausDoubleMul(zero, g, zero, g.Double()).IsIdentity());
    CHECK(StrausDoubleMul(one, g, zero, g) == g);
    const int trials = c == &Curve::Secp256k1() ? 1000 : 200;
    for (int i = 0; i < trials; ++i) {
      const Scalar a = Scalar::Random(*c, rng), b = Scalar::Random(*c, rng);
      const Point x = Point::Random(*c, rng), y = Point::Random(*c, rng);
      REQUIRE(StrausDoubleMul(a, x, b, y) == ScalarMul(a, x) + ScalarMul(b, y));
    }
    // Same base, opposite scalars cancel.
    const Scalar a = Scalar::Random(*c, rng);
    CHECK(StrausDoubleMul(a, g, -a, g).IsIdentity());
  }
}

TEST_CASE("straus_double_mul on every toy97 pair of elements") {
  const ToyCurveOracle oracle(97, 1, 4);
  const auto points = oracle.Enumerate();
  const Curve& c = Curve::Toy97();
  SeededRandom rng(5);
  for (const auto& tx : points) {
    for (const auto& ty : points) {
      const Scalar a = Scalar::Random(c, rng), b = Scalar::Random(c, rng);
      const ToyPoint want = oracle.Add(oracle.Mul(a.ToU64(), tx), oracle.Mul(b.ToU64(), ty));
      REQUIRE(ToToy(StrausDoubleMul(a, FromToy(c, tx), b, FromToy(c, ty))) == want);
    }
  }
}

TEST_CASE("msm") {
  const Curve& c = Curve::Secp256k1();
  SeededRandom rng(9);
  CHECK(Msm(c, {}).IsIdentity());
  const std::vector<ScalarPoint> one{{Scalar::FromU64(c, 1), c.Generator()}};
  CHECK(Msm(c, one) == c.Generator());

  for (size_t n : {10, 30, 50, 90}) {
    std::vector<ScalarPoint> pairs;
    Point want = c.Identity();
    for (size_t i = 0; i < 2 * n; ++i) {
      pairs.push_back({Scalar::Random(c, rng), Point::Random(c, rng)});
      want = want + ScalarMul(pairs.back().scalar, pairs.back().point);
    }
    CHECK(Msm(c, pairs) == want);
    CHECK(MsmPippenger(c, pairs) == want);
    CHECK(MsmNaive(c, pairs) == want);
  }

  // Repeated points and zero scalars land in shared/empty buckets.
  std::vector<ScalarPoint> dup;
  const Point p = Point::Random(c, rng);
  for (int i = 0; i < 20; ++i) dup.push_back({Scalar::FromU64(c, i % 3), p});
  CHECK(MsmPippenger(c, dup) == ScalarMul(Scalar::FromU64(c, 19), p));
}

TEST_CASE("msm on toy97 agrees with the oracle for every element") {
  const ToyCurveOracle oracle(97, 1, 4);
  const auto points = oracle.Enumerate();
  const Curve& c = Curve::Toy97();
  SeededRandom rng(13);
  for (size_t start = 0; start < points.size(); ++start) {
    std::vector<ScalarPoint> pairs;
    ToyPoint want;
    for (size_t j = 0; j < 7; ++j) {
      const auto& tp = points[(start + j * 13) % points.size()];
      const Scalar k = Scalar::Random(c, rng);
      pairs.push_back({k, FromToy(c, tp)});
      want = oracle.Add(want, oracle.Mul(k.ToU64(), tp));
    }
    REQUIRE(ToToy(Msm(c, pairs)) == want);
    REQUIRE(ToToy(MsmNaive(c, pairs)) == want);
  }
}

TEST_CASE("pippenger window grows with the point count") {
  CHECK(PippengerWindow(3, 256) <= PippengerWindow(20, 256));
  CHECK(PippengerWindow(20, 256) <= PippengerWindow(180, 256));
  CHECK(PippengerWindow(180, 256) >= 4);
}

TEST_CASE("point encoding") {
  const Curve& c = Curve::Sm2();
  SeededRandom rng(17);
  CHECK(c.Identity().Encode() == Bytes{0x00});
  CHECK(Point::Decode(c, Bytes{0x00}).IsIdentity());
  CHECK(c.Identity().EncodeFixed() == Bytes(33, 0));
  CHECK(Point::DecodeFixed(c, Bytes(33, 0)).IsIdentity());

  for (int i = 0; i < 1000; ++i) {
    const Point p = Point::Random(c, rng);
    const Bytes enc = p.Encode();
    REQUIRE(enc.size() == 33);
    REQUIRE(Point::Decode(c, enc) == p);
    REQUIRE(Point::DecodeFixed(c, p.EncodeFixed()) == p);
  }

  // Random abscissas not on the curve must be rejected; roughly half are.
  int rejected = 0;
  for (int i = 0; i < 200; ++i) {
    Bytes enc(33);
    rng.Fill(enc);
    enc[0] = 0x02;
    if (!Point::LiftX(c, std::span(enc).subspan(1))) {
      CHECK_THROWS_AS(Point::Decode(c, enc), DecodeError);
      ++rejected;
    }
  }
  CHECK(rejected > 50);

  const Bytes good = c.Generator().Encode();
  Bytes bad_prefix = good;
  bad_prefix[0] = 0x04;
  CHECK_THROWS_AS(Point::Decode(c, bad_prefix), DecodeError);
  CHECK_THROWS_AS(Point::Decode(c, std::span(good).first(32)), DecodeError);
  CHECK_THROWS_AS(Point::Decode(c, Bytes{}), DecodeError);
  CHECK_THROWS_AS(Point::DecodeFixed(c, Bytes{0x00}), DecodeError);
  Bytes bad_identity(33, 0);
  bad_identity[5] = 1;
  CHECK_THROWS_AS(Point::DecodeFixed(c, bad_identity), DecodeError);
  // x >= q
  Bytes big(33, 0xFF);
  big[0] = 0x02;
  CHECK_THROWS_AS(Point::Decode(c, big), DecodeError);
}

TEST_CASE("scalar arithmetic and encoding") {
  const Curve& c = Curve::Secp256k1();
  SeededRandom rng(19);
  for (int i = 0; i < 200; ++i) {
    const Scalar a = Scalar::RandomNonZero(c, rng), b = Scalar::Random(c, rng);
    REQUIRE((a * a.Inverse()).IsOne());
    REQUIRE(a + b - b == a);
    REQUIRE(Scalar::Decode(c, a.Encode()) == a);
    REQUIRE((a + (-a)).IsZero());
  }
  CHECK_THROWS_AS(Scalar(c).Inverse(), std::domain_error);
  // l itself is not a canonical encoding.
  CHECK_THROWS_AS(Scalar::Decode(c, Hex("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364141")),
                  DecodeError);
  CHECK_THROWS_AS(Scalar::Decode(c, Bytes(31)), DecodeError);
  CHECK(Scalar::FromBytesReduce(c, Hex("FFFFFFFFFFFFFFFFFFFFFFFFFFFFFFFEBAAEDCE6AF48A03BBFD25E8CD0364142"))
            .IsOne());
  CHECK(Scalar::FromU64(Curve::Toy97(), 90).ToU64() == 1);
}

TEST_CASE("op counter tallies kernel entry points") {
  const Curve& c = Curve::Secp256k1();
  const Point g = c.Generator();
  const Scalar two = Scalar::FromU64(c, 2);
  OpCountScope scope;
  (void)ScalarMul(two, g);
  (void)StrausDoubleMul(two, g, two, g);
  (void)(g + g);
  (void)two.Inverse();
  const OpCounter n = scope.counts();
  CHECK(n.scalar_mults == 3);
  CHECK(n.straus_calls == 1);
  CHECK(n.point_adds == 1);
  CHECK(n.inversions == 1);
}
