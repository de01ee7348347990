#include <random>

#include "doctest.h"
#include "sod/bbw.hpp"

using namespace sod;

namespace {

const HomFactor kGr24(2, 4, "Gr24");
const HomFactor kGr23(2, 3, "Gr23");
const HomFactor kP3(1, 4, "P3");

GradedSpace on(const HomFactor& f, const std::string& bundle) {
  std::vector<HomFactor> space{f};
  return bbw_product(space, parse_bundle(space, bundle));
}

FactorWeights random_weights(std::mt19937& rng, const HomFactor& f, int lo,
                             int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  auto draw = [&](int len) {
    std::vector<int> v(len);
    for (auto& x : v) x = d(rng);
    std::sort(v.begin(), v.end(), std::greater<>());
    return Weight(v);
  };
  return {draw(f.k), draw(f.quotient_rank())};
}

}  // namespace

TEST_CASE("bbw_factor conformance values") {
  GradedSpace a = on(kGr24, "S2U_W(-1)");
  CHECK(a.dims().size() == 1);
  CHECK(a.dim(2) == 1);

  GradedSpace b = on(kGr24, "S3U_W");
  CHECK(b.dims().size() == 1);
  CHECK(b.dim(2) == 4);
  // the dual of the vector representation up to a determinant character
  CHECK(b.reps().at(2).multiplicity(Weight{0, -1, -1, -1}) == 1);

  CHECK(on(kGr24, "O(-g)").is_zero());

  GradedSpace d = on(kGr24, "S2U(-g)");
  CHECK(d.dims().size() == 1);
  CHECK(d.dim(2) == 1);

  GradedSpace e = on(kP3, "O(-4)");
  CHECK(e.dims().size() == 1);
  CHECK(e.dim(3) == 1);
}

TEST_CASE("bbw_factor basic sections") {
  CHECK(on(kGr24, "O(g)").dim(0) == 6);
  CHECK(on(kGr24, "O").dim(0) == 1);
  CHECK(on(kGr24, "V/U").dim(0) == 4);
  CHECK(on(kGr24, "Q*").is_zero());
  CHECK(on(kGr24, "U*").dim(0) == 4);
  CHECK(on(kGr24, "U").is_zero());
  CHECK(on(kGr24, "O(-4g)").dim(4) == 1);
  CHECK(on(kP3, "O(1)").dim(0) == 4);
  CHECK(on(kGr23, "O(-3)").dim(2) == 1);
}

TEST_CASE("bbw_factor rejects mismatched weights") {
  FactorWeights bad{Weight{1, 0, 0}, Weight{0}};
  CHECK_THROWS_AS(bbw_factor(kGr24, bad), std::invalid_argument);
  FactorWeights reducible{Weight{0, 1}, Weight{0, 0}};
  CHECK_THROWS_AS(bbw_factor(kGr24, reducible), std::invalid_argument);
}

TEST_CASE("bbw_product examples") {
  std::vector<HomFactor> gp{kGr24, kP3};
  GradedSpace trivial = bbw_product(gp, parse_bundle(gp, "O x O"));
  CHECK(trivial.dim(0) == 1);
  CHECK(trivial.dims().size() == 1);

  for (const char* tail : {"O", "O(3)", "O(-4)", "O(-2)"})
    CHECK(bbw_product(gp, parse_bundle(gp, std::string("O(-g) x ") + tail))
              .is_zero());

  std::vector<HomFactor> gg{kGr24, kGr24};
  GradedSpace prod = bbw_product(gg, parse_bundle(gg, "O(-3g) x S3U_W"));
  GradedSpace first = on(kGr24, "O(-3g)");
  GradedSpace second = on(kGr24, "S3U_W");
  CHECK(first.is_zero());
  CHECK(prod.is_zero());
  GradedSpace prod2 = bbw_product(gg, parse_bundle(gg, "O(-4g) x S3U_W"));
  CHECK(prod2.dim(4 + 2) == on(kGr24, "O(-4g)").dim(4) * second.dim(2));

  CHECK_THROWS_AS(bbw_product(gp, parse_bundle(std::vector<HomFactor>{kGr24},
                                               "O")),
                  std::invalid_argument);
}

TEST_CASE("bbw: single nonzero degree and Serre duality on every factor") {
  std::mt19937 rng(20261019);
  for (const HomFactor& f : {kP3, HomFactor(1, 3, "P2"), kGr23, kGr24}) {
    const int n = f.n;
    for (int trial = 0; trial < 500; ++trial) {
      FactorWeights w = random_weights(rng, f, -6, 6);
      GradedSpace h = bbw_factor(f, w);
      CHECK(h.dims().size() <= 1);
      // E^* (x) omega, omega = O(-n)
      FactorWeights dual{dualize(w.sub).shifted(-n), dualize(w.quot)};
      GradedSpace hd = bbw_factor(f, dual);
      for (int i = 0; i <= f.dim(); ++i)
        CHECK(h.dim(i) == hd.dim(f.dim() - i));
    }
  }
}

TEST_CASE("staircase rule") {
  std::map<std::pair<int, int>, Integer> t;
  t[{0, 0}] = 1;
  t[{-1, 2}] = 1;
  CHECK(staircase_disjoint(t));  // total degrees 0 and 1, but arrow goes the other way
  t[{1, 0}] = 1;                 // d1 from (0,0) to (1,0)
  CHECK_FALSE(staircase_disjoint(t));
  std::map<std::pair<int, int>, Integer> u;
  u[{-2, 2}] = 1;
  u[{0, 1}] = 1;  // d2: (-2,2) -> (0,1)
  CHECK_FALSE(staircase_disjoint(u));
}

TEST_CASE("parse_bundle") {
  std::vector<HomFactor> g{kGr24};
  auto b = parse_bundle(g, "S2U(-g)");
  REQUIRE(b.terms().size() == 1);
  CHECK(b.terms()[0].parts[0].sub == Weight{-1, -3});
  CHECK(parse_bundle(g, "[1,1|0,0]").terms()[0].parts[0].sub == Weight{1, 1});
  CHECK(parse_bundle(g, "4*O(-3g)").rank(g) == 4);
  CHECK_THROWS(parse_bundle(g, "Z(1)"));
  CHECK_THROWS(parse_bundle(g, "O x O"));
  CHECK(parse_bundle(g, "S2U").rank(g) == 3);
  CHECK(parse_bundle(std::vector<HomFactor>{kP3}, "V/U").rank(
            std::vector<HomFactor>{kP3}) == 3);
}

TEST_CASE("tensor canonicalization") {
  std::vector<HomFactor> g{kGr24};
  auto uu = parse_bundle(g, "U*").tensor(parse_bundle(g, "U*"));
  CHECK(uu.terms().size() == 2);
  CHECK(uu.rank(g) == 4);
  auto twisted = parse_bundle(g, "S2U").tensor(parse_bundle(g, "O(-g)"));
  CHECK(twisted == parse_bundle(g, "S2U(-g)"));
}
