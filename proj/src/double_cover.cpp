#include "varieties_internal.hpp"

namespace sod {

namespace {

// label (x) O(-H) on the base
std::string minus_half_branch(const std::string& base, const std::string& label) {
  auto [head, twist] = detail::split_label(label);
  if (base == "P3") {
    const int k = twist.empty() ? 0 : std::stoi(twist);
    return head + "(" + std::to_string(k - 2) + ")";
  }
  return head + "(" + (twist.empty() ? "" : twist) + "-H)";
}

struct CoverSetup {
  ChowRing cover;
  const Variety* base;
};

CoverSetup make_cover(const Catalog& catalog, const std::string& base) {
  if (base == "P3") {
    ChowRing p3 = projective_ring(3);
    ChowClass h = p3.basis("h");
    return {double_cover_ring(p3, Rational(2) * h), &catalog.variety("P3")};
  }
  if (base == "Y") {
    const Variety& y = catalog.variety("Y");
    const ChowRing& r = y.lattice().ring();
    ChowClass half = Rational(2) * r.basis("h");
    for (int i = 1; i <= y.family_size(); ++i)
      half -= r.basis("e" + std::to_string(i));
    return {double_cover_ring(r, half), &y};
  }
  throw std::invalid_argument("double cover base must be P3 or Y");
}

std::optional<GradedSpace> decided(const ExtAnswer& e) {
  if (e.tag == Evidence::BBW || e.tag == Evidence::RULE ||
      e.tag == Evidence::AXIOM)
    return e.value;
  return std::nullopt;
}

}  // namespace

DoubleCoverReport double_cover_check(const Catalog& catalog,
                                     const std::string& base,
                                     const std::vector<std::string>& labels) {
  CoverSetup setup = make_cover(catalog, base);
  const Variety& v = *setup.base;
  DoubleCoverReport rep;

  // The doubled collection E(-H)..., E... on the base; exceptional there
  // makes f*E... exceptional on the cover.
  std::vector<std::vector<ResolvedObject>> positions;
  std::vector<std::vector<ResolvedObject>> twisted_partner;  // member (x) O(-H)
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& l : labels) {
      const std::string lab = pass == 0 ? minus_half_branch(base, l) : l;
      rep.doubled_labels.push_back(lab);
      positions.push_back(v.resolve_family(lab));
      twisted_partner.push_back(v.resolve_family(minus_half_branch(base, lab)));
    }

  bool undetermined = false, violated = false;
  const GradedSpace unit = GradedSpace::concentrated(0, 1);
  for (std::size_t p = 0; p < positions.size(); ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      // Hom(later, earlier) = 0, families orthogonal, members exceptional
      for (std::size_t i = 0; i < positions[p].size(); ++i)
        for (std::size_t j = 0; j < positions[q].size(); ++j) {
          const bool same = p == q && i == j;
          ++rep.pairs_checked;
          auto e = decided(
              ext_oracle(catalog, v, positions[p][i], positions[q][j]));
          if (!e) {
            undetermined = true;
            rep.notes.push_back("undecided: Ext(" + positions[p][i].label + ", " +
                                positions[q][j].label + ")");
            continue;
          }
          if (same ? !(*e == unit) : !e->is_zero()) {
            violated = true;
            rep.notes.push_back("Ext(" + positions[p][i].label + ", " +
                                positions[q][j].label + ") = " + e->str());
          }
        }
    }
  rep.verdict = violated       ? Verdict::NotExceptional
                : undetermined ? Verdict::Undetermined
                               : Verdict::Exceptional;

  // chi_X via the Chow ring of the cover against chi(A,B) + chi(A,B(-H)).
  const std::size_t half = labels.size();
  for (std::size_t p = half; p < positions.size(); ++p)
    for (std::size_t q = half; q < positions.size(); ++q)
      for (std::size_t i = 0; i < positions[p].size(); ++i)
        for (std::size_t j = 0; j < positions[q].size(); ++j) {
          const auto& a = positions[p][i];
          const auto& b = positions[q][j];
          ChowClass ca(v.lattice().to_ch(a.cls).coeffs());
          ChowClass cb(v.lattice().to_ch(b.cls).coeffs());
          const Integer lhs = euler_pairing(setup.cover, ca, cb);
          const Integer rhs = v.lattice().chi_or_throw(a.cls, b.cls) +
                              v.lattice().chi_or_throw(a.cls, twisted_partner[q][j].cls);
          if (lhs != rhs) {
            ++rep.identity_failures;
            rep.notes.push_back("chi identity fails for (" + a.label + ", " +
                                b.label + "): " + lhs.get_str() + " vs " +
                                rhs.get_str());
          }
        }
  return rep;
}

}  // namespace sod
