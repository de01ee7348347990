#include <random>

#include "doctest.h"
#include "sod/chow.hpp"

using namespace sod;

namespace {

const HomFactor kGr24(2, 4, "Gr24");
const HomFactor kGr23(2, 3, "Gr23");
const HomFactor kP3(1, 4, "P3");

Integer chi_of(const HomogeneousVariety& X, const std::string& bundle) {
  auto b = parse_bundle(X.factors(), bundle);
  return chi(X.ring(), X.chern_character(b));
}

Integer bbw_chi(const std::vector<HomFactor>& space, const std::string& bundle) {
  return bbw_product(space, parse_bundle(space, bundle)).euler_characteristic();
}

// chi(P^3, O(a)) = binomial(a+3, 3) as a polynomial in a.
Integer binom3(int a) { return Integer((a + 3) * (a + 2) * (a + 1)) / 6; }

}  // namespace

TEST_CASE("Schubert calculus on Gr(2,4)") {
  auto g = grassmannian_ring(kGr24);
  const ChowRing& r = *g.ring;
  CHECK(r.rank() == 6);
  CHECK(r.check_table());
  ChowClass s1 = r.basis("s1");
  CHECK(r.degree(r.pow(s1, 4)) == 2);
  CHECK(r.mul(s1, s1) == r.basis("s2") + r.basis("s11"));
  CHECK(r.mul(r.basis("s2"), r.basis("s11")).is_zero());
  CHECK(r.degree(r.mul(r.basis("s2"), r.basis("s2"))) == 1);
  CHECK(pieri({1, 0}, 1, 2, 4).size() == 2);
}

TEST_CASE("Chern characters of tautological bundles") {
  HomogeneousVariety G({kGr24});
  const ChowRing& r = G.ring();
  std::vector<HomFactor> sp{kGr24};
  ChowClass s1 = r.basis("s1");
  CHECK(G.chern_character(parse_bundle(sp, "O(g)")) == r.exp(s1));
  ChowClass chU = G.chern_character(parse_bundle(sp, "U"));
  CHECK(r.part(chU, 0) == Rational(2) * r.one());
  CHECK(r.part(chU, 1) == -s1);
  ChowClass chS2 = G.chern_character(parse_bundle(sp, "S2U"));
  CHECK(r.part(chS2, 0) == Rational(3) * r.one());
  CHECK(r.part(chS2, 1) == Rational(-3) * s1);
  // V = U + V/U is trivial
  ChowClass chQ = G.chern_character(parse_bundle(sp, "V/U"));
  CHECK(chU + chQ == Rational(4) * r.one());
}

TEST_CASE("HRR examples") {
  HomogeneousVariety P({kP3});
  HomogeneousVariety G({kGr24});
  CHECK(chi_of(P, "O(1)") == 4);
  CHECK(chi_of(P, "O(-4)") == -1);
  CHECK(chi_of(G, "O(g)") == 6);
  CHECK(chi_of(G, "O") == 1);
  for (int a = -6; a <= 6; ++a)
    CHECK(chi_of(P, "O(" + std::to_string(a) + ")") == binom3(a));
  ChowRing p3 = projective_ring(3);
  for (int a = -6; a <= 6; ++a)
    CHECK(chi(p3, p3.exp(Rational(a) * p3.basis("h"))) == binom3(a));
}

TEST_CASE("HRR agrees with BBW on random homogeneous bundles") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-4, 4);
  for (const auto& space : std::vector<std::vector<HomFactor>>{
           {kGr24}, {kP3}, {kGr23}, {kGr24, kP3}}) {
    HomogeneousVariety X(space);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<FactorWeights> parts;
      for (const auto& f : space) {
        auto draw = [&](int len) {
          std::vector<int> v(len);
          for (auto& x : v) x = d(rng);
          std::sort(v.begin(), v.end(), std::greater<>());
          return Weight(v);
        };
        parts.push_back({draw(f.k), draw(f.quotient_rank())});
      }
      auto b = EquivariantBundle::irreducible(parts);
      CHECK(chi(X.ring(), X.chern_character(b)) ==
            bbw_product(space, b).euler_characteristic());
    }
  }
  CHECK(bbw_chi({kGr24}, "S2U(-g)") == 1);
}

TEST_CASE("numerical Serre duality on Gr(2,4)") {
  HomogeneousVariety G({kGr24});
  std::vector<HomFactor> sp{kGr24};
  const ChowRing& r = G.ring();
  ChowClass omega = G.chern_character(parse_bundle(sp, "O(-4g)"));
  for (const char* a : {"O", "U", "S2U(-g)", "V/U(2g)"})
    for (const char* b : {"O(g)", "U*", "Q*(-g)"}) {
      ChowClass ca = G.chern_character(parse_bundle(sp, a));
      ChowClass cb = G.chern_character(parse_bundle(sp, b));
      CHECK(euler_pairing(r, ca, cb) ==
            euler_pairing(r, cb, r.mul(ca, omega)));
    }
}

TEST_CASE("blowup of P3 at points") {
  for (int N : {0, 1, 3, 10}) {
    ChowRing y = blowup_ring(N);
    CHECK(y.check_table());
    ChowClass H = y.basis("h");
    CHECK(chi(y, y.one()) == 1);
    CHECK(y.degree(*y.chern()) == 4 + 2 * N);
    ChowClass c1 = y.part(*y.chern(), 1);
    CHECK(y.degree(y.pow(c1, 3)) == 64 - 8 * N);
    CHECK(y.part(*y.chern(), 2) == Rational(6) * y.basis("h2"));
    if (N > 0) {
      ChowClass e1 = y.basis("e1");
      CHECK(chi(y, y.exp(-e1)) == 0);
      CHECK(y.degree(y.pow(e1, 3)) == 1);
      // chi(O_E(j)) = chi(P^2, O(j))
      for (int j = -3; j <= 3; ++j) {
        ChowClass oe = y.mul(y.exp(Rational(-j) * e1),
                             y.one() - y.exp(-e1));
        CHECK(chi(y, oe) == Integer((j + 2) * (j + 1) / 2));
      }
    }
    for (int a = -3; a <= 3; ++a)
      CHECK(chi(y, y.exp(Rational(a) * H)) == binom3(a));
  }
}

TEST_CASE("double cover ring") {
  ChowRing p3 = projective_ring(3);
  ChowRing x = double_cover_ring(p3, Rational(2) * p3.basis("h"));
  ChowClass h = x.basis("h");
  CHECK(x.degree(x.pow(h, 3)) == 2);
  CHECK(chi(x, x.one()) == 1);
  // chi_X(f*E) = chi(E) + chi(E(-H))
  for (int a = -3; a <= 3; ++a)
    CHECK(chi(x, x.exp(Rational(a) * h)) == binom3(a) + binom3(a - 2));
}

TEST_CASE("non-integral Euler characteristic is reported") {
  ChowRing p3 = projective_ring(3);
  CHECK_THROWS_AS(chi(p3, Rational(1, 2) * p3.one()), NonIntegralEuler);
}
