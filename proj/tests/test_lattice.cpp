#include <random>

#include "doctest.h"
#include "sod/lattice.hpp"

using namespace sod;

namespace {

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.size(), IntVec(b.empty() ? 0 : b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < out[i].size(); ++j)
        out[i][j] += a[i][k] * b[k][j];
  return out;
}

// Determinant by cofactor expansion (small matrices only).
Integer det(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer d = 0;
  for (std::size_t c = 0; c < n; ++c) {
    IntMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      IntVec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    d += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
  }
  return d;
}

KLattice p3_lattice() {
  auto ring = std::make_shared<const ChowRing>(projective_ring(3));
  std::vector<ChowClass> basis;
  std::vector<std::string> labels;
  for (int k = 0; k <= 3; ++k) {
    basis.push_back(ring->exp(Rational(k) * ring->basis("h")));
    labels.push_back("O(" + std::to_string(k) + ")");
  }
  KLattice lat = KLattice::ambient("P3", ring, labels, basis);
  lat.set_operator("omega", lat.multiplication_matrix(
                                ring->exp(Rational(-4) * ring->basis("h"))));
  lat.set_operator("omega^-1", lat.multiplication_matrix(
                                   ring->exp(Rational(4) * ring->basis("h"))));
  return lat;
}

}  // namespace

TEST_CASE("Smith normal form") {
  IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  SmithForm s = smith_normal_form(a);
  CHECK(s.rank == 3);
  CHECK(s.D[0][0] == 2);
  CHECK(s.D[1][1] == 6);
  CHECK(s.D[2][2] == 12);
  CHECK(mul(mul(s.U, a), s.V) == s.D);
  CHECK(abs(det(s.U)) == 1);
  CHECK(abs(det(s.V)) == 1);

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix m(3, IntVec(4));
    for (auto& row : m)
      for (auto& x : row) x = d(rng);
    SmithForm t = smith_normal_form(m);
    CHECK(mul(mul(t.U, m), t.V) == t.D);
    for (std::size_t i = 0; i + 1 < t.rank; ++i)
      CHECK(t.D[i + 1][i + 1] % t.D[i][i] == 0);
  }
}

TEST_CASE("relation membership") {
  std::vector<IntVec> rels{{2, 0, 0}, {0, 3, 0}};
  CHECK(relation_membership(rels, {0, 0, 0}).member);
  CHECK(relation_membership({}, {0, 0}).member);
  Membership m = relation_membership(rels, {4, -3, 0});
  CHECK(m.member);
  CHECK(m.certificate == IntVec{2, -1});
  CHECK_FALSE(relation_membership(rels, {1, 0, 0}).member);
  CHECK_FALSE(relation_membership(rels, {0, 0, 1}).member);
  // a fresh generator untouched by the relations
  CHECK_FALSE(relation_membership({{1, -1, 0}}, {0, 0, 1}).member);
}

TEST_CASE("ambient lattice of P3") {
  KLattice lat = p3_lattice();
  Collection c;
  for (int k = 0; k <= 3; ++k) c.positions.push_back(Position::single(lat.basis(k)));
  GramResult g = gram(lat, c);
  CHECK(g.verdict == Verdict::Exceptional);
  const int binom[] = {1, 4, 10, 20};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) CHECK(*g.matrix[i][j] == binom[j - i]);

  // single class
  Collection one;
  one.positions.push_back(Position::single(lat.basis(0)));
  CHECK(gram(lat, one).verdict == Verdict::Exceptional);

  // reversed order is not exceptional
  Collection rev;
  rev.positions.push_back(Position::single(lat.basis(1)));
  rev.positions.push_back(Position::single(lat.basis(0)));
  CHECK(gram(lat, rev).verdict == Verdict::NotExceptional);

  KClass O = lat.basis(0), O1 = lat.basis(1);
  // L_O O(1) = O(1) - 4 O, the class of Omega(1)[1]
  KClass l = mutate_left(lat, O, O1);
  CHECK(l.v == IntVec{-4, 1, 0, 0});
  CHECK(mutate_right(lat, O, l).v == O1.v);
  // chi(E,F) = 0 leaves F unchanged
  CHECK(mutate_left(lat, O1, O).v == O.v);
  CHECK_THROWS_AS(mutate_left(lat, Integer(2) * O, O1), std::invalid_argument);

  // Serre translation: O(3) -> O(-1) = 4O - 6O(1) + 4O(2) - O(3)
  KClass t = serre_translate(lat, lat.basis(3), Direction::Left);
  CHECK(t.v == IntVec{4, -6, 4, -1});
  CHECK(serre_translate(lat, t, Direction::Right).v == lat.basis(3).v);
}

TEST_CASE("formal lattice with relations") {
  KLattice f("formal", KLattice::Backend::Formal, {"a", "b", "c"});
  f.add_relation({1, -1, -1});
  CHECK(f.equal(f.basis(0), f.basis(1) + f.basis(2)));
  CHECK(f.equal_up_to_sign(-f.basis(0), f.basis(1) + f.basis(2)));
  CHECK_FALSE(f.equal(f.basis(0), f.basis(1)));
  CHECK_FALSE(f.chi(f.basis(0), f.basis(1)).has_value());
  f.set_pairing(0, 0, 1, "AXIOM");
  CHECK(is_exceptional(f, f.basis(0)));
  CHECK_THROWS_AS(mutate_left(f, f.basis(0), f.basis(1)), UnknownPairing);
  // identity Serre automorphism
  IntMatrix id(3, IntVec(3));
  for (int i = 0; i < 3; ++i) id[i][i] = 1;
  f.set_operator("omega", id);
  CHECK(serre_translate(f, f.basis(2), Direction::Left).v == f.basis(2).v);
  CHECK_THROWS(serre_translate(f, f.basis(2), Direction::Right));
}

TEST_CASE("swap_positions twice is the identity") {
  Collection c;
  c.positions.push_back(Position::block("A"));
  c.positions.push_back(Position::block("B"));
  Collection d = swap_positions(swap_positions(c, 0), 0);
  CHECK(d.positions[0].name == "A");
  CHECK(d.positions[1].name == "B");
  CHECK_THROWS(swap_positions(c, 1));
}
