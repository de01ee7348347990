#include "varieties_internal.hpp"

namespace sod::detail {

namespace {

// Twist text on a blowup: h, H = 2h - sum e, e = sum e_i, e_k.
LineOnBlowup parse_blowup_twist(const std::string& twist, int n) {
  LineOnBlowup d{0, std::vector<int>(n, 0)};
  if (twist.empty()) return d;
  for (const auto& [sym, c] : parse_linear(twist)) {
    if (sym == "h") {
      d.a += c;
    } else if (sym == "H") {
      d.a += 2 * c;
      for (auto& b : d.b) b -= c;
    } else if (sym == "e") {
      for (auto& b : d.b) b += c;
    } else if (sym.starts_with("e_")) {
      const int k = std::stoi(sym.substr(2));
      if (k < 1 || k > n)
        throw std::invalid_argument("exceptional divisor index out of range: " +
                                    sym);
      d.b[k - 1] += c;
    } else {
      throw std::invalid_argument("unknown twist symbol '" + sym + "'");
    }
  }
  return d;
}

int divisor_index(const std::string& base, const std::string& prefix, int n) {
  const int k = std::stoi(base.substr(prefix.size()));
  if (k < 1 || k > n)
    throw std::invalid_argument("divisor index out of range in '" + base + "'");
  return k;
}

ExtAnswer rule(std::optional<GradedSpace> v, std::string method) {
  ExtAnswer out;
  if (v) {
    out.value = std::move(v);
    out.tag = Evidence::RULE;
  }
  out.method = std::move(method);
  return out;
}

// Y: blowup of P^3 at N points, exceptional divisors E_i = P^2.
class BlowupY : public Variety {
 public:
  explicit BlowupY(int nodes) : Variety("Y", 3) {
    canonical_ = "-4h+2e";
    family_size_ = nodes;
    ring_ = std::make_shared<ChowRing>(blowup_ring(nodes));
    std::vector<std::string> labels{"O(-3h)", "O(-2h)", "O(-h)", "O"};
    for (int i = 1; i <= nodes; ++i) labels.push_back("O_E_" + std::to_string(i));
    for (int i = 1; i <= nodes; ++i)
      labels.push_back("O_E_" + std::to_string(i) + "(1)");
    std::vector<ChowClass> chs;
    for (const auto& l : labels) chs.push_back(ch_of(resolve_realization(l)));
    lattice_ = std::make_shared<KLattice>(
        KLattice::ambient("Y", ring_, labels, chs));
    LineOnBlowup omega{-4, std::vector<int>(nodes, 2)};
    LineOnBlowup omega_inv{4, std::vector<int>(nodes, -2)};
    lattice_->set_operator("omega",
                           lattice_->multiplication_matrix(line_ch(omega)));
    lattice_->set_operator("omega^-1",
                           lattice_->multiplication_matrix(line_ch(omega_inv)));
    named_ = {{"O(ah + b e + c H + d e_k)", "line bundles; H = 2h - e, e = sum e_i"},
              {"O_E_k(j)", "O(j) on the exceptional plane E_k"}};
  }

  ResolvedObject resolve(const std::string& label) const override {
    Realization r = resolve_realization(label);
    return {label, lattice_->from_ch(ch_of(r), label), r};
  }

  std::string twist_label(const std::string& label,
                          const std::string& line) const override {
    auto [base, twist] = split_label(label);
    if (!base.starts_with("O_E_")) return Variety::twist_label(label, line);
    const std::string idx = base.substr(4);
    int j = twist.empty() ? 0 : std::stoi(twist);
    // restriction to E = P^2: h -> 0, e_k -> -1 on its own divisor, H -> 1
    for (const auto& [sym, c] : parse_linear(line)) {
      if (sym == "H") j += c;
      else if (sym == "e") j -= c;
      else if (sym.starts_with("e_")) {
        if (idx == "i")
          throw std::invalid_argument("twist by " + sym + " on a family pattern");
        if (sym.substr(2) == idx) j -= c;
      } else if (sym != "h") {
        throw std::invalid_argument("unknown twist symbol '" + sym + "'");
      }
    }
    return base + "(" + std::to_string(j) + ")";
  }

  ExtAnswer graded_ext(const ResolvedObject& a,
                       const ResolvedObject& b) const override {
    auto* la = std::get_if<LineOnBlowup>(&a.realization);
    auto* lb = std::get_if<LineOnBlowup>(&b.realization);
    auto* da = std::get_if<DivisorSheaf>(&a.realization);
    auto* db = std::get_if<DivisorSheaf>(&b.realization);
    if (la && lb) {
      LineOnBlowup d{lb->a - la->a, lb->b};
      for (std::size_t i = 0; i < d.b.size(); ++i) d.b[i] -= la->b[i];
      return rule(blowup_line_cohomology(d),
                  "Leray for the blowup and divisor sequences");
    }
    if (la && db)
      return rule(plane_line_cohomology(db->j + la->b[db->i - 1]),
                  "restriction to E_i, O(e_i)|E_i = O(-1)");
    if (da && lb)
      return rule(serre_dual(plane_line_cohomology(da->j - 2 + lb->b[da->i - 1]), 3),
                  "Serre duality, omega_Y|E_i = O(-2)");
    if (da && db) {
      if (da->i != db->i) return rule(GradedSpace(), "disjoint supports");
      const int m = db->j - da->j;
      return rule(divisor_self_ext(plane_line_cohomology(m),
                                   plane_line_cohomology(m - 1)),
                  "local-to-global, normal bundle O(-1)");
    }
    return {};
  }

 private:
  Realization resolve_realization(const std::string& label) const {
    auto [base, twist] = split_label(label);
    if (base.starts_with("O_E_")) {
      const int k = divisor_index(base, "O_E_", family_size_);
      return DivisorSheaf{k, twist.empty() ? 0 : std::stoi(twist)};
    }
    if (base != "O") throw std::invalid_argument("unknown object on Y: " + label);
    return parse_blowup_twist(twist, family_size_);
  }

  ChowClass line_ch(const LineOnBlowup& d) const {
    ChowClass x = Rational(d.a) * ring_->basis("h");
    for (std::size_t i = 0; i < d.b.size(); ++i)
      x += Rational(d.b[i]) * ring_->basis("e" + std::to_string(i + 1));
    return ring_->exp(x);
  }

  ChowClass ch_of(const Realization& r) const {
    if (auto* l = std::get_if<LineOnBlowup>(&r)) return line_ch(*l);
    const auto& d = std::get<DivisorSheaf>(r);
    ChowClass e = ring_->basis("e" + std::to_string(d.i));
    return ring_->mul(ring_->exp(Rational(-d.j) * e), ring_->one() - ring_->exp(-e));
  }

  std::shared_ptr<ChowRing> ring_;
};

// X': blowup of the nodal double solid at its nodes, Q_i = P^1 x P^1.
class XPrime : public Variety {
 public:
  explicit XPrime(int nodes) : Variety("X'", 3) {
    canonical_ = "-2h+e";
    family_size_ = nodes;
    std::vector<std::string> labels{"O(-h)", "O"};
    for (int i = 1; i <= nodes; ++i) {
      const std::string s = std::to_string(i);
      labels.push_back("O_Q_" + s + "(-1,0)");
      labels.push_back("O_Q_" + s);
      labels.push_back("O(-e_" + s + ")");
    }
    lattice_ = std::make_shared<KLattice>("X'", KLattice::Backend::Formal, labels);
    fill_gram();
    for (int i = 1; i <= nodes; ++i) {
      const std::string s = std::to_string(i);
      IntVec r(labels.size());
      r[lattice_->index("O_Q_" + s)] = 1;
      r[lattice_->index("O")] = -1;
      r[lattice_->index("O(-e_" + s + ")")] = 1;
      lattice_->add_relation(r);
    }
    named_ = {{"O(-h), O, O(-e_k)", "pullbacks and exceptional twists"},
              {"O_Q_k(x,y)", "O(x,y) on Q_k; generators (x,y) = (-1,0), (0,0)"}};
  }

  ResolvedObject resolve(const std::string& label) const override {
    Realization r = resolve_realization(label);
    std::string key;
    if (auto* q = std::get_if<QuadricSheaf>(&r)) {
      key = "O_Q_" + std::to_string(q->i);
      if (q->x || q->y)
        key += "(" + std::to_string(q->x) + "," + std::to_string(q->y) + ")";
    } else {
      key = format_blowup_line(std::get<LineOnBlowup>(r));
      if (key.starts_with("O(-1h)")) key = "O(-h)";
    }
    if (!lattice_->find(key))
      throw std::invalid_argument("object '" + label +
                                  "' has no class in the X' lattice");
    return {label, lattice_->basis(key).named(label), r};
  }

  ExtAnswer graded_ext(const ResolvedObject& a,
                       const ResolvedObject& b) const override {
    return graded(a.realization, b.realization);
  }

 private:
  ExtAnswer graded(const Realization& ra, const Realization& rb) const {
    auto* la = std::get_if<LineOnBlowup>(&ra);
    auto* lb = std::get_if<LineOnBlowup>(&rb);
    auto* qa = std::get_if<QuadricSheaf>(&ra);
    auto* qb = std::get_if<QuadricSheaf>(&rb);
    HomFactor p3(1, 4, "P3");
    if (la && lb) {
      if (la->b != lb->b) return {};
      const int d = lb->a - la->a;
      GradedSpace v = bbw_factor(p3, line_weights(p3, d));
      v.add(bbw_factor(p3, line_weights(p3, d - 2)));
      return rule(v, "double cover pushforward O + O(-2h), rational singularities");
    }
    if (la && qb)
      return rule(quadric_cohomology(qb->x + la->b[qb->i - 1],
                                     qb->y + la->b[qb->i - 1]),
                  "restriction to Q_i, O(e_i)|Q_i = O(-1,-1)");
    if (qa && lb)
      return rule(serre_dual(quadric_cohomology(qa->x - 1 + lb->b[qa->i - 1],
                                                qa->y - 1 + lb->b[qa->i - 1]),
                             3),
                  "Serre duality, omega|Q_i = O(-1,-1)");
    if (qa && qb) {
      if (qa->i != qb->i) return rule(GradedSpace(), "disjoint supports");
      const int x = qb->x - qa->x, y = qb->y - qa->y;
      return rule(divisor_self_ext(quadric_cohomology(x, y),
                                   quadric_cohomology(x - 1, y - 1)),
                  "local-to-global, normal bundle O(-1,-1)");
    }
    return {};
  }

  Realization resolve_realization(const std::string& label) const {
    auto [base, twist] = split_label(label);
    if (base.starts_with("O_Q_")) {
      const int k = divisor_index(base, "O_Q_", family_size_);
      QuadricSheaf q{k, 0, 0};
      if (!twist.empty()) {
        auto comma = twist.find(',');
        if (comma == std::string::npos)
          throw std::invalid_argument("O_Q twist needs two entries: " + label);
        q.x = std::stoi(twist.substr(0, comma));
        q.y = std::stoi(twist.substr(comma + 1));
      }
      return q;
    }
    if (base != "O") throw std::invalid_argument("unknown object on X': " + label);
    LineOnBlowup d = parse_blowup_twist(twist, family_size_);
    return d;
  }

  // Entries among O(-h), O, O_Q(-1,0), O_Q from the rule table; entries
  // with O(-e_i) through [O(-e_i)] = [O] - [O_Q_i].
  void fill_gram() {
    const std::size_t n = lattice_->rank();
    std::vector<std::vector<std::pair<std::size_t, int>>> expansion(n);
    std::vector<std::size_t> primary;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& l = lattice_->labels()[i];
      if (l.starts_with("O(-e_")) {
        const std::string k = l.substr(5, l.size() - 6);
        expansion[i] = {{lattice_->index("O"), 1},
                        {lattice_->index("O_Q_" + k), -1}};
      } else {
        expansion[i] = {{i, 1}};
        primary.push_back(i);
      }
    }
    std::map<std::pair<std::size_t, std::size_t>, Integer> base;
    for (auto i : primary)
      for (auto j : primary) {
        ExtAnswer e = graded(resolve_realization(lattice_->labels()[i]),
                             resolve_realization(lattice_->labels()[j]));
        if (!e.value)
          throw std::logic_error("X': undetermined generator pairing");
        base[{i, j}] = e.value->euler_characteristic();
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Integer sum = 0;
        for (auto [a, ca] : expansion[i])
          for (auto [b, cb] : expansion[j]) sum += ca * cb * base[{a, b}];
        lattice_->set_pairing(i, j, sum, "RULE");
      }
  }
};

}  // namespace

std::shared_ptr<Variety> make_y(int nodes) {
  return std::make_shared<BlowupY>(nodes);
}

std::shared_ptr<Variety> make_xprime(int nodes) {
  return std::make_shared<XPrime>(nodes);
}

}  // namespace sod::detail
