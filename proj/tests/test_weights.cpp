#include <map>

#include "doctest.h"
#include "sod/weights.hpp"

using namespace sod;

namespace {

// Number of semistandard tableaux of the given shape with entries in 1..n.
long count_ssyt(const std::vector<int>& shape, int n) {
  std::vector<std::vector<int>> rows;
  for (int len : shape) rows.emplace_back(len, 0);
  std::vector<std::pair<int, int>> cells;
  for (std::size_t r = 0; r < shape.size(); ++r)
    for (int c = 0; c < shape[r]; ++c) cells.emplace_back(r, c);
  long count = 0;
  auto fill = [&](auto&& self, std::size_t idx) -> void {
    if (idx == cells.size()) {
      ++count;
      return;
    }
    auto [r, c] = cells[idx];
    for (int v = 1; v <= n; ++v) {
      if (c > 0 && rows[r][c - 1] > v) continue;
      if (r > 0 && rows[r - 1][c] >= v) continue;
      rows[r][c] = v;
      self(self, idx + 1);
    }
  };
  fill(fill, 0);
  return count;
}

// GL(2) character as a map exponent-pair -> multiplicity.
using Character = std::map<std::pair<int, int>, long>;

Character gl2_character(const Weight& w) {
  Character ch;
  for (int i = 0; i <= w[0] - w[1]; ++i) ch[{w[0] - i, w[1] + i}] += 1;
  return ch;
}

WeightSum decompose_gl2(Character ch) {
  WeightSum out;
  while (!ch.empty()) {
    // highest weight = lexicographically largest exponent
    auto top = ch.rbegin()->first;
    long m = ch.rbegin()->second;
    out.add(Weight{top.first, top.second}, m);
    for (const auto& [e, k] : gl2_character(Weight{top.first, top.second})) {
      ch[e] -= k * m;
      if (ch[e] == 0) ch.erase(e);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("weyl_dim examples") {
  CHECK(weyl_dim(4, Weight{1, 0, 0, 0}) == 4);
  CHECK(weyl_dim(2, Weight{2, 0}) == 3);
  CHECK(weyl_dim(4, Weight{1, 1, 0, 0}) == count_ssyt({1, 1}, 4));
  CHECK(count_ssyt({1, 1}, 4) == 6);
  CHECK_THROWS_AS(weyl_dim(2, Weight{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(weyl_dim(3, Weight{1, 0}), std::invalid_argument);
}

TEST_CASE("weyl_dim agrees with tableau counting") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= a; ++b)
      for (int c = 0; c <= b; ++c)
        CHECK(weyl_dim(4, Weight{a, b, c, 0}) ==
              count_ssyt({a, b, c}, 4));
}

TEST_CASE("dualize") {
  CHECK(dualize(Weight{2, 0}) == Weight{0, -2});
  CHECK(dualize(Weight{1, 1}) == Weight{-1, -1});
  CHECK(dualize(Weight{3, 1}) == Weight{-1, -3});
  CHECK(dualize(dualize(Weight{5, 2, -1})) == Weight{5, 2, -1});
}

TEST_CASE("tensor_rank2 examples") {
  WeightSum vv = tensor_rank2(Weight{1, 0}, Weight{1, 0});
  CHECK(vv.multiplicity(Weight{2, 0}) == 1);
  CHECK(vv.multiplicity(Weight{1, 1}) == 1);
  CHECK(vv.distinct() == 2);

  WeightSum det = tensor_rank2(Weight{3, 3}, Weight{2, -1});
  CHECK(det.distinct() == 1);
  CHECK(det.multiplicity(Weight{5, 2}) == 1);

  WeightSum s2s2 = tensor_rank2(Weight{2, 0}, Weight{2, 0});
  WeightSum oracle;
  {
    Character a = gl2_character(Weight{2, 0});
    Character prod;
    for (const auto& [e1, m1] : a)
      for (const auto& [e2, m2] : a)
        prod[{e1.first + e2.first, e1.second + e2.second}] += m1 * m2;
    oracle = decompose_gl2(prod);
  }
  CHECK(s2s2 == oracle);
  CHECK(s2s2.multiplicity(Weight{4, 0}) == 1);
  CHECK(s2s2.multiplicity(Weight{3, 1}) == 1);
  CHECK(s2s2.multiplicity(Weight{2, 2}) == 1);

  CHECK_THROWS_AS(tensor_rank2(Weight{0, 1}, Weight{1, 0}),
                  std::invalid_argument);
}

TEST_CASE("weight properties over the GL(2) box [-4,4]") {
  std::vector<Weight> ws;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= a; ++b) ws.push_back(Weight{a, b});
  for (const auto& a : ws) {
    CHECK(weyl_dim(dualize(a)) == weyl_dim(a));
    for (const auto& b : ws) {
      WeightSum ab = tensor_rank2(a, b);
      Integer total = 0;
      for (const auto& [w, m] : ab.terms()) total += m * weyl_dim(w);
      CHECK(total == weyl_dim(a) * weyl_dim(b));
      CHECK(ab == tensor_rank2(b, a));
    }
  }
}

TEST_CASE("parse_weight") {
  CHECK(parse_weight("(1,0,-2)") == Weight{1, 0, -2});
  CHECK(parse_weight("[3 3]") == Weight{3, 3});
  CHECK_THROWS(parse_weight("(1,a)"));
}
