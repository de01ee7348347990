#include <array>

#include "varieties_internal.hpp"

namespace sod::detail {

namespace {

const HomFactor kGr24(2, 4, "Gr24");
const HomFactor kGr23(2, 3, "Gr23");
const HomFactor kP3(1, 4, "P3");

// Single homogeneous factor: P^3 or Gr(2,4), Beilinson/Kapranov basis.
class SingleFactor : public Variety {
 public:
  SingleFactor(const HomFactor& f, std::string name, std::string canonical,
               std::vector<std::string> basis_labels, int omega_twist,
               const std::string& hyperplane)
      : Variety(std::move(name), f.dim()), hv_({f}) {
    canonical_ = std::move(canonical);
    std::vector<ChowClass> chs;
    for (const auto& l : basis_labels)
      chs.push_back(hv_.chern_character(parse_bundle(hv_.factors(), l)));
    lattice_ = std::make_shared<KLattice>(
        KLattice::ambient(name_, hv_.ring_ptr(), basis_labels, chs));
    const ChowClass h = hv_.ring().basis(1);
    lattice_->set_operator(
        "omega", lattice_->multiplication_matrix(
                     hv_.ring().exp(Rational(omega_twist) * h)));
    lattice_->set_operator(
        "omega^-1", lattice_->multiplication_matrix(
                        hv_.ring().exp(Rational(-omega_twist) * h)));
    lattice_->set_operator(hyperplane,
                           lattice_->multiplication_matrix(hv_.ring().exp(h)));
    lattice_->set_operator(hyperplane + "^-1",
                           lattice_->multiplication_matrix(hv_.ring().exp(-h)));
    for (const auto& l : basis_labels) named_.push_back({l, "basis bundle"});
  }

  ResolvedObject resolve(const std::string& label) const override {
    EquivariantBundle b = parse_bundle(hv_.factors(), label);
    return {label, lattice_->from_ch(hv_.chern_character(b), label), b};
  }

  ExtAnswer graded_ext(const ResolvedObject& a,
                       const ResolvedObject& b) const override {
    ExtAnswer out;
    auto* ea = std::get_if<EquivariantBundle>(&a.realization);
    auto* eb = std::get_if<EquivariantBundle>(&b.realization);
    if (!ea || !eb) return out;
    out.value = bbw_product(hv_.factors(), ea->dual().tensor(*eb));
    out.tag = Evidence::BBW;
    out.method = "Borel-Bott-Weil on " + name_;
    return out;
  }

 private:
  HomogeneousVariety hv_;
};

const std::array<const char*, 6> kKapranov{"O", "U*", "S2U*", "O(g)", "U*(g)",
                                           "O(2g)"};

// M: zero locus of S^2U^* (x) O(h) on A = Gr(2,V) x P(W), plus the planes.
class ModuliM : public Variety {
 public:
  explicit ModuliM(int nodes) : Variety("M", 4), a_({kGr24, kP3}) {
    canonical_ = "-g-h";
    family_size_ = nodes;
    const ChowRing& ring = a_.ring();
    kos_ = ring.zero();
    for (const auto& [pos, bundle] : koszul_m()) {
      ChowClass c = a_.chern_character(bundle);
      kos_ += pos % 2 ? -c : c;
    }
    std::vector<std::string> labels;
    for (const char* lam : kKapranov)
      for (int j = 0; j <= 3; ++j) {
        std::string l = std::string(lam) + " x O(" + std::to_string(j) + "h)";
        labels.push_back(l);
        ambient_ch_.push_back(a_.chern_character(parse_bundle(a_.factors(), l)));
        ambient_.push_back({lam, j});
      }
    for (int i = 1; i <= nodes; ++i)
      for (int j = kPlaneMin; j <= kPlaneMax; ++j)
        labels.push_back(plane_label(i, j));
    lattice_ = std::make_shared<KLattice>("M", KLattice::Backend::Mixed, labels);
    fill_gram();
    fill_operators();
    named_ = {{"O(ag+bh), U, U*, V/U, S2U, ... (twists in g, h, e = 3g-h)",
               "restrictions of equivariant bundles on Gr(2,V) x P(W)"},
              {"S_k(twist)", "S_{2k} = [O(kh)] + [O(g+(k-1)h)], S_{2k+1} = V/U(kh)"},
              {"O_Sigma_i(j)", "planes, O_Sigma(1) = O(g)|Sigma, j in [-2,1]"}};
  }

  ResolvedObject resolve(const std::string& label) const override {
    auto [base, twist] = split_label(label);
    if (base.starts_with("O_Sigma_")) {
      const int i = std::stoi(base.substr(8));
      const int j = twist.empty() ? 0 : std::stoi(twist);
      if (i < 1 || i > family_size_ || j < kPlaneMin || j > kPlaneMax)
        throw std::invalid_argument("plane sheaf '" + label +
                                    "' outside the catalog range");
      return {plane_label(i, j), lattice_->basis(plane_label(i, j)),
              PlaneSheaf{i, j}};
    }
    auto lin = twist.empty() ? std::map<std::string, int>{} : parse_linear(twist);
    int g = 0, h = 0;
    for (const auto& [sym, c] : lin) {
      if (sym == "g") g += c;
      else if (sym == "h") h += c;
      else if (sym == "e") { g += 3 * c; h -= c; }  // e = 3g - h
      else throw std::invalid_argument("unknown twist symbol '" + sym + "' on M");
    }
    const std::string canon_twist =
        format_linear({{"g", g}, {"h", h}}, {"g", "h"});
    auto canon = [&](const std::string& b) {
      return canon_twist.empty() ? b : b + "(" + canon_twist + ")";
    };
    if (base.starts_with("S_")) {
      const int k = std::stoi(base.substr(2));
      const int m = (k - (k % 2 + 2) % 2) / 2;  // floor(k/2)
      if ((k % 2 + 2) % 2 == 1) {
        auto b = bundle("V/U", g, h + m);
        return {canon(base), class_of(b), b};
      }
      KClass c = class_of(bundle("O", g, h + m)) +
                 class_of(bundle("O", g + 1, h + m - 1));
      return {canon(base), c, std::monostate{}};
    }
    auto b = bundle(base, g, h);
    return {canon(base), class_of(b), b};
  }

  std::string twist_label(const std::string& label,
                          const std::string& line) const override {
    auto [base, twist] = split_label(label);
    if (base.starts_with("O_Sigma_")) {
      int dg = 0;
      for (const auto& [sym, c] : parse_linear(line)) {
        if (sym == "g") dg += c;
        else if (sym == "e") dg += 3 * c;
        else if (sym != "h")
          throw std::invalid_argument("unknown twist symbol '" + sym + "' on M");
      }
      const int j = twist.empty() ? 0 : std::stoi(twist);
      return base + "(" + std::to_string(j + dg) + ")";
    }
    return resolve(Variety::twist_label(label, line)).label;
  }

  ExtAnswer graded_ext(const ResolvedObject& a,
                       const ResolvedObject& b) const override {
    ExtAnswer out;
    auto* ea = std::get_if<EquivariantBundle>(&a.realization);
    auto* eb = std::get_if<EquivariantBundle>(&b.realization);
    auto* pa = std::get_if<PlaneSheaf>(&a.realization);
    auto* pb = std::get_if<PlaneSheaf>(&b.realization);
    if (ea && eb) {
      HyperResult r = hypercohomology(
          a_.factors(), tensor_complex(koszul_m(), ea->dual().tensor(*eb)));
      if (r.determinate()) {
        out.value = r.value;
        out.tag = Evidence::BBW;
        out.method = "Koszul resolution of O_M on Gr(2,V) x P(W)";
      } else {
        out.method = "Koszul spectral sequence " + r.str();
      }
      return out;
    }
    if (ea && pb) return to_plane(*ea, pb->j);
    if (pa && eb) {
      out = to_plane(*eb, pa->j - 1);
      if (out.value) out.value = serre_dual(*out.value, 4);
      out.method = "Serre duality on M (omega|Sigma = O(-1)); " + out.method;
      return out;
    }
    if (pa && pb) {
      if (pa->i != pb->i) {
        out.value = GradedSpace();
        out.tag = Evidence::RULE;
        out.method = "disjoint supports";
      } else if (pa->j == pb->j) {
        out.value = GradedSpace::concentrated(0, 1);
        out.tag = Evidence::AXIOM;
        out.axioms = {"m-decomposition"};
        out.method = "the plane sheaves are exceptional";
      }
    }
    return out;
  }

  std::vector<std::pair<std::string, std::string>> koszul_data() const override {
    std::vector<std::pair<std::string, std::string>> out;
    const std::array<HomFactor, 2> s{kGr24, HomFactor(2, 4, "Gr24W")};
    const std::array<HomFactor, 1> g{kGr24};
    for (const auto& [p, b] : koszul_m())
      out.push_back({"O_M on Gr(2,V) x P(W), position " + std::to_string(p),
                     b.str(a_.factors())});
    for (const auto& [p, b] : koszul_s_tilde())
      out.push_back({"O_S~ on Gr(2,V) x Gr(2,W), position " + std::to_string(p),
                     b.str(s)});
    for (const auto& [p, b] : koszul_s())
      out.push_back({"O_S on Gr(2,V), position " + std::to_string(p), b.str(g)});
    for (const auto& [p, b] : koszul_plane())
      out.push_back({"Gr(2,3) in Gr(2,4), position " + std::to_string(p),
                     b.str(g)});
    return out;
  }

  const HomogeneousVariety& ambient() const { return a_; }

 private:
  static constexpr int kPlaneMin = -2, kPlaneMax = 1;

  static std::string plane_label(int i, int j) {
    return "O_Sigma_" + std::to_string(i) + "(" + std::to_string(j) + ")";
  }

  EquivariantBundle bundle(const std::string& base, int g, int h) const {
    std::string first = base;
    if (g) first += "(" + std::to_string(g) + ")";
    std::string second = h ? "O(" + std::to_string(h) + ")" : "O";
    return parse_bundle(a_.factors(), first + " x " + second);
  }

  KClass class_of(const EquivariantBundle& b) const {
    return class_of_ch(a_.chern_character(b));
  }

  KClass class_of_ch(const ChowClass& ch) const {
    std::vector<std::vector<Rational>> cols;
    for (const auto& c : ambient_ch_) cols.push_back(c.coeffs());
    auto x = rational_solve(cols, ch.coeffs());
    if (!x) throw std::logic_error("M: class outside the ambient span");
    KClass out = lattice_->zero();
    for (std::size_t i = 0; i < x->size(); ++i) {
      Rational r = (*x)[i];
      r.canonicalize();
      if (r.get_den() != 1) throw std::logic_error("M: non-integral class");
      out.v[i] = r.get_num();
    }
    return out;
  }

  // Ext(E, O_Sigma(j)) = H(Sigma, E^*|Sigma (j)), E on A; h|Sigma = 0.
  ExtAnswer to_plane(const EquivariantBundle& e, int j) const {
    ExtAnswer out;
    EquivariantBundle restricted;
    const EquivariantBundle dual = e.dual();
    for (const auto& t : dual.terms()) {
      BundleTerm r;
      r.parts = {t.parts[0]};
      r.coefficient = t.coefficient;
      r.shift = t.shift;
      const auto& p = t.parts[1];
      Integer rank = weyl_dim(p.sub) * weyl_dim(p.quot);
      r.multiplicity = t.multiplicity * rank.get_si();
      restricted.add(r);
    }
    HyperResult r = plane_cohomology(restricted, j);
    if (r.determinate()) {
      out.value = r.value;
      out.tag = Evidence::BBW;
      out.method = "Koszul resolution of Gr(2,3) in Gr(2,4)";
    } else {
      out.method = "plane Koszul spectral sequence " + r.str();
    }
    return out;
  }

  void fill_gram() {
    const ChowRing& ring = a_.ring();
    const std::size_t na = ambient_ch_.size();
    for (std::size_t x = 0; x < na; ++x)
      for (std::size_t y = 0; y < na; ++y)
        lattice_->set_pairing(
            x, y, euler_pairing(ring, ambient_ch_[x], ring.mul(ambient_ch_[y], kos_)),
            "HRR");
    // chi(x, O_Sigma(j)) = chi(Gr(2,3), x^*|(j)); chi(O_Sigma(j), x) by Serre
    auto restricted_chi = [&](std::size_t x, int j) {
      EquivariantBundle b = parse_bundle(std::array<HomFactor, 1>{kGr24},
                                         ambient_[x].first);
      const FactorWeights& w = b.terms()[0].parts[0];
      FactorWeights r{dualize(w.sub).shifted(j), Weight{0}};
      return bbw_factor(kGr23, r).euler_characteristic();
    };
    for (int i = 1; i <= family_size_; ++i)
      for (int j = kPlaneMin; j <= kPlaneMax; ++j) {
        const std::size_t p = lattice_->index(plane_label(i, j));
        for (std::size_t x = 0; x < na; ++x) {
          lattice_->set_pairing(x, p, restricted_chi(x, j), "RULE");
          lattice_->set_pairing(p, x, restricted_chi(x, j - 1), "RULE");
        }
        for (int k = 1; k <= family_size_; ++k)
          for (int l = kPlaneMin; l <= kPlaneMax; ++l) {
            const std::size_t q = lattice_->index(plane_label(k, l));
            if (k != i)
              lattice_->set_pairing(p, q, 0, "RULE");
            else if (l == j)
              lattice_->set_pairing(p, q, 1, "AXIOM");
          }
      }
  }

  void fill_operators() {
    const ChowRing& ring = a_.ring();
    const ChowClass g = a_.pullback(0, a_.factor_ring(0).ring->basis("s1"));
    const ChowClass h = a_.pullback(1, a_.factor_ring(1).ring->basis("s1"));
    auto op = [&](const std::string& name, int dg, int dh) {
      const std::size_t n = lattice_->rank(), na = ambient_ch_.size();
      IntMatrix m(n, IntVec(n));
      std::vector<bool> domain(n, true);
      ChowClass line = ring.exp(Rational(dg) * g + Rational(dh) * h);
      for (std::size_t c = 0; c < na; ++c) {
        KClass col = class_of_ch(ring.mul(ambient_ch_[c], line));
        for (std::size_t r = 0; r < n; ++r) m[r][c] = col.v[r];
      }
      for (int i = 1; i <= family_size_; ++i)
        for (int j = kPlaneMin; j <= kPlaneMax; ++j) {
          const std::size_t c = lattice_->index(plane_label(i, j));
          const int target = j + dg;  // h restricts trivially
          if (target < kPlaneMin || target > kPlaneMax) {
            domain[c] = false;
            continue;
          }
          m[lattice_->index(plane_label(i, target))][c] = 1;
        }
      lattice_->set_operator(name, std::move(m), std::move(domain));
    };
    op("g", 1, 0);
    op("g^-1", -1, 0);
    op("h", 0, 1);
    op("h^-1", 0, -1);
    op("omega", -1, -1);
    op("omega^-1", 1, 1);
  }

  HomogeneousVariety a_;
  ChowClass kos_;
  std::vector<ChowClass> ambient_ch_;
  std::vector<std::pair<std::string, int>> ambient_;
};

}  // namespace

std::shared_ptr<Variety> make_projective_space() {
  return std::make_shared<SingleFactor>(
      kP3, "P3", "-4h",
      std::vector<std::string>{"O(-3)", "O(-2)", "O(-1)", "O"}, -4, "h");
}

std::shared_ptr<Variety> make_grassmannian() {
  return std::make_shared<SingleFactor>(
      kGr24, "Gr24", "-4g",
      std::vector<std::string>(kKapranov.begin(), kKapranov.end()), -4, "g");
}

std::shared_ptr<Variety> make_m(int nodes) {
  return std::make_shared<ModuliM>(nodes);
}

}  // namespace sod::detail
