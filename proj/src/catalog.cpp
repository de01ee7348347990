#include <json.hpp>
#include <sstream>

#include "varieties_internal.hpp"

namespace sod {

namespace {

Axiom ext_axiom(std::string id, std::string statement, std::string anchor,
                std::string variety, std::string a, std::string b,
                GradedSpace value) {
  Axiom x{std::move(id), "ext", std::move(statement), std::move(anchor),
          std::move(variety), std::move(a), std::move(b), std::move(value)};
  return x;
}

Axiom plain_axiom(std::string id, std::string kind, std::string statement,
                  std::string anchor) {
  Axiom x;
  x.id = std::move(id);
  x.kind = std::move(kind);
  x.statement = std::move(statement);
  x.anchor = std::move(anchor);
  return x;
}

}  // namespace

Catalog::Catalog(int nodes) : nodes_(nodes) {
  if (nodes < 0 || nodes > 16)
    throw std::invalid_argument("node count must lie in [0, 16]");
  varieties_["P3"] = detail::make_projective_space();
  varieties_["Gr24"] = detail::make_grassmannian();
  varieties_["M"] = detail::make_m(nodes);
  varieties_["Y"] = detail::make_y(nodes);
  varieties_["X'"] = detail::make_xprime(nodes);

  axioms_ = {
      plain_axiom("imported-collections", "decomposition",
                  "the Beilinson collection on P3, the Kapranov collection on "
                  "Gr(2,4), the blowup collection O(-3h), O(-2h), O(-h), O, "
                  "{O_E_i}, {O_E_i(1)} on Y, and the blowup decomposition "
                  "<A_X+, O(-h), O, {O_Q_i(-1,0)}, {O_Q_i}> of X' are full",
                  "standard collections"),
      plain_axiom("m-decomposition", "decomposition",
                  "D(M) = <O(-2g), O(-g), V/U(-g), O, V/U, O(g), Psi0(D(S))>; "
                  "the plane sheaves O_Sigma_i(j) are exceptional",
                  "decomposition of the moduli space"),
      plain_axiom("block-functor", "block",
                  "mutating the embedded block Psi_k(D(S)) through an "
                  "exceptional object gives another fully faithful image Psi_k+1",
                  "block mutation"),
      plain_axiom("enriques-orthogonal", "decomposition",
                  "Psi2(D(S)) = <{O_Sigma_i(-1)}, Psi2(A_S(2g))> with A_S the "
                  "orthogonal to the plane images",
                  "Enriques-type splitting"),
      plain_axiom("spinor-identification", "identification",
                  "the cones O(-g)+O(-h) and O(h-g)+O are the spinor-type "
                  "objects S_0(-g) and S_2(-g)",
                  "identification phi"),
      ext_axiom("rho-vanishing",
                "Ext(O(-h), S_2(-g)) = 0 via the projection to the base",
                "vanishing rho", "M", "O(-h)", "S_2(-g)", GradedSpace()),
  };
}

const Variety& Catalog::variety(const std::string& name) const {
  auto it = varieties_.find(name);
  if (it == varieties_.end())
    throw std::invalid_argument("unknown variety '" + name + "'");
  return *it->second;
}

std::vector<std::string> Catalog::variety_names() const {
  return {"P3", "Gr24", "M", "Y", "X'"};
}

void Catalog::register_axiom(Axiom a) {
  if (a.kind == "ext") {
    if (!a.value) throw std::invalid_argument("ext axiom '" + a.id + "' needs a value");
    const Variety& v = variety(a.variety);
    v.resolve(a.a);
    v.resolve(a.b);
  }
  for (auto& x : axioms_)
    if (x.id == a.id) {
      x = std::move(a);
      return;
    }
  axioms_.push_back(std::move(a));
}

const Axiom& Catalog::axiom(const std::string& id) const {
  for (const auto& a : axioms_)
    if (a.id == id) return a;
  throw std::invalid_argument("unknown axiom '" + id + "'");
}

std::optional<Axiom> Catalog::find_ext_axiom(const std::string& variety_name,
                                             const std::string& a,
                                             const std::string& b) const {
  const Variety& v = variety(variety_name);
  const std::string ca = v.resolve(a).label, cb = v.resolve(b).label;
  for (const auto& x : axioms_) {
    if (x.kind != "ext" || x.variety != variety_name) continue;
    if (v.resolve(x.a).label == ca && v.resolve(x.b).label == cb) return x;
  }
  return std::nullopt;
}

std::string Catalog::listing(bool json) const {
  if (json) {
    nlohmann::ordered_json out;
    out["nodes"] = nodes_;
    for (const auto& name : variety_names()) {
      const Variety& v = variety(name);
      nlohmann::ordered_json j;
      j["dim"] = v.dim();
      j["canonical_class"] = v.canonical_class();
      j["family_size"] = v.family_size();
      j["lattice_rank"] = v.lattice().rank();
      j["lattice_basis"] = v.lattice().labels();
      j["relations"] = v.lattice().relations().size();
      for (const auto& [pattern, what] : v.named_objects())
        j["objects"].push_back({{"pattern", pattern}, {"meaning", what}});
      for (const auto& [what, term] : v.koszul_data())
        j["koszul"].push_back({{"term", what}, {"bundle", term}});
      out["varieties"][name] = j;
    }
    for (const auto& a : axioms_) {
      nlohmann::ordered_json j{{"id", a.id},
                               {"kind", a.kind},
                               {"statement", a.statement},
                               {"anchor", a.anchor}};
      if (a.kind == "ext") {
        j["variety"] = a.variety;
        j["a"] = a.a;
        j["b"] = a.b;
        j["value"] = a.value->str();
      }
      out["axioms"].push_back(j);
    }
    return out.dump(2);
  }
  std::ostringstream os;
  os << "catalog (N = " << nodes_ << ")\n";
  for (const auto& name : variety_names()) {
    const Variety& v = variety(name);
    os << "\n" << name << ": dim " << v.dim() << ", K = " << v.canonical_class()
       << ", lattice rank " << v.lattice().rank();
    if (!v.lattice().relations().empty())
      os << " (" << v.lattice().relations().size() << " relations)";
    os << "\n";
    for (const auto& [pattern, what] : v.named_objects())
      os << "  " << pattern << " : " << what << "\n";
    for (const auto& [what, term] : v.koszul_data())
      os << "  koszul " << what << " : " << term << "\n";
  }
  os << "\naxioms\n";
  for (const auto& a : axioms_)
    os << "  " << a.id << " [" << a.kind << "] " << a.statement << "\n";
  return os.str();
}

ExtAnswer ext_oracle(const Catalog& catalog, const Variety& v,
                     const ResolvedObject& a, const ResolvedObject& b) {
  ExtAnswer out = v.graded_ext(a, b);
  auto lattice_chi = v.lattice().chi(a.cls, b.cls);
  if (out.value) {
    out.chi = out.value->euler_characteristic();
    return out;
  }
  if (auto ax = catalog.find_ext_axiom(v.name(), a.label, b.label)) {
    out.value = ax->value;
    out.tag = Evidence::AXIOM;
    out.axioms = {ax->id};
    out.chi = out.value->euler_characteristic();
    out.method = ax->statement;
    return out;
  }
  if (lattice_chi) {
    out.chi = lattice_chi;
    out.tag = Evidence::CHI_ONLY;
    if (out.method.empty()) out.method = "Euler pairing of classes";
    return out;
  }
  out.tag = Evidence::UNKNOWN;
  return out;
}

ExtAnswer ext_oracle(const Catalog& catalog, const std::string& variety,
                     const std::string& a, const std::string& b) {
  const Variety& v = catalog.variety(variety);
  return ext_oracle(catalog, v, v.resolve(a), v.resolve(b));
}

}  // namespace sod
