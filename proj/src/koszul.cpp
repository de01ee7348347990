#include <array>

#include "sod/catalog.hpp"

namespace sod {

namespace {

const HomFactor kGr24(2, 4, "Gr24");
const HomFactor kP3(1, 4, "P3");
const HomFactor kP2(1, 3, "P2");

EquivariantBundle sum_of(std::span<const HomFactor> space,
                         std::initializer_list<const char*> pieces) {
  EquivariantBundle out;
  for (const char* p : pieces) out.add(parse_bundle(space, p));
  out.canonicalize();
  return out;
}

}  // namespace

TermComplex koszul_m() {
  const std::array<HomFactor, 2> a{kGr24, kP3};
  return {{0, sum_of(a, {"O x O"})},
          {-1, sum_of(a, {"S2U x O(-1)"})},
          {-2, sum_of(a, {"S2U(-1) x O(-2)"})},
          {-3, sum_of(a, {"O(-3) x O(-3)"})}};
}

TermComplex koszul_s_tilde() {
  const std::array<HomFactor, 2> s{kGr24, HomFactor(2, 4, "Gr24W")};
  return {
      {0, sum_of(s, {"O x O"})},
      {-1, sum_of(s, {"S2U x U_W"})},
      {-2, sum_of(s, {"S2U(-1) x S2U_W", "S4U x O(-1)", "O(-2) x O(-1)"})},
      {-3, sum_of(s, {"O(-3) x S3U_W", "S4U(-1) x U_W(-1)",
                      "S2U(-2) x U_W(-1)"})},
      {-4, sum_of(s, {"S2U(-3) x S2U_W(-1)", "S4U(-2) x O(-2)",
                      "O(-4) x O(-2)"})},
      {-5, sum_of(s, {"S2U(-4) x U_W(-2)"})},
      {-6, sum_of(s, {"O(-6) x O(-3)"})}};
}

TermComplex koszul_s() {
  const std::array<HomFactor, 2> s{kGr24, HomFactor(2, 4, "Gr24W")};
  const std::array<std::size_t, 1> along{1};
  return pushforward_complex(s, koszul_s_tilde(), along).complex;
}

TermComplex koszul_plane() {
  const std::array<HomFactor, 1> g{kGr24};
  return {{0, parse_bundle(g, "O")},
          {-1, parse_bundle(g, "U")},
          {-2, parse_bundle(g, "O(-1)")}};
}

HyperResult plane_cohomology(const EquivariantBundle& gr24_bundle, int j) {
  const std::array<HomFactor, 1> g{kGr24};
  const std::array<int, 1> tw{j};
  return hypercohomology(g, tensor_complex(koszul_plane(),
                                           gr24_bundle.twisted(tw)));
}

namespace {

GradedSpace projective_line_bundle(const HomFactor& f, int a) {
  return bbw_factor(f, line_weights(f, a));
}

std::optional<GradedSpace> blowup_rec(LineOnBlowup d) {
  const int n = static_cast<int>(d.b.size());
  for (int i = 0; i < n; ++i) {
    if (d.b[i] <= 2) continue;
    // 0 -> O(D - e_i) -> O(D) -> O_E(-b_i) -> 0
    LineOnBlowup smaller = d;
    --smaller.b[i];
    auto a = blowup_rec(smaller);
    if (!a) return std::nullopt;
    GradedSpace c = projective_line_bundle(kP2, -d.b[i]);
    for (const auto& [t, dim] : c.dims())
      if (dim != 0 && a->dim(t + 1) != 0) return std::nullopt;
    GradedSpace out;
    out.add(*a);
    out.add(c);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (d.b[i] >= 0) continue;
    // 0 -> O(D) -> O(D + e_i) -> O_E(-b_i - 1) -> 0
    LineOnBlowup bigger = d;
    ++bigger.b[i];
    auto b = blowup_rec(bigger);
    if (!b) return std::nullopt;
    GradedSpace c = projective_line_bundle(kP2, -d.b[i] - 1);
    const bool in_range =
        std::all_of(bigger.b.begin(), bigger.b.end(),
                    [](int x) { return x >= 0 && x <= 2; });
    std::map<int, Integer> rank;  // rank of H^t(D + e_i) -> H^t(E, ...)
    for (const auto& [t, dim] : c.dims()) {
      if (dim == 0 || b->dim(t) == 0) continue;
      // evaluation of sections of O(a) at the blown-up point
      if (t == 0 && d.b[i] == -1 && in_range && d.a >= 0)
        rank[0] = 1;
      else
        return std::nullopt;
    }
    GradedSpace out;
    for (int t = 0; t <= 3; ++t) {
      Integer r_t = rank.count(t) ? rank[t] : Integer(0);
      Integer r_prev = rank.count(t - 1) ? rank[t - 1] : Integer(0);
      Integer dim = (b->dim(t) - r_t) + (c.dim(t - 1) - r_prev);
      if (dim != 0) out.add_dim(t, dim);
    }
    return out;
  }
  return projective_line_bundle(kP3, d.a);
}

}  // namespace

std::optional<GradedSpace> blowup_line_cohomology(const LineOnBlowup& d) {
  return blowup_rec(d);
}

}  // namespace sod
