#include <set>

#include "sod/replay.hpp"
#include "varieties_internal.hpp"

namespace sod {

namespace {

// "O(-e_1)[1]" -> {"O(-e_1)", 1}
std::pair<std::string, int> split_shift(const std::string& label) {
  if (label.empty() || label.back() != ']') return {label, 0};
  const auto open = label.rfind('[');
  if (open == std::string::npos || open == 0) return {label, 0};
  try {
    std::size_t used = 0;
    const std::string inner = label.substr(open + 1, label.size() - open - 2);
    const int k = std::stoi(inner, &used);
    if (used != inner.size()) return {label, 0};
    return {label.substr(0, open), k};
  } catch (const std::exception&) {
    return {label, 0};
  }
}

std::string with_shift(const std::string& label, int k) {
  return k == 0 ? label : label + "[" + std::to_string(k) + "]";
}

bool identified(const KClass& c) { return !c.name.empty() && c.name[0] != '~'; }

const char* kStatusOrder[] = {"PROVED", "ASSUMED", "CHI-ONLY", "UNCHECKED",
                              "FAILED"};

int severity(const std::string& status) {
  for (int i = 0; i < 5; ++i)
    if (status == kStatusOrder[i]) return i;
  return 4;
}

class Engine {
 public:
  Engine(const Catalog& catalog, const Scenario& s, const ReplayOptions& o)
      : catalog_(catalog), scenario_(s), options_(o),
        v_(catalog.variety(s.variety)), l_(v_.lattice()) {}

  Transcript run() {
    Transcript t;
    t.scenario = scenario_.name;
    t.variety = scenario_.variety;
    t.target = scenario_.target;
    t.notes = scenario_.notes;
    for (const auto& id : scenario_.assumptions) {
      const Axiom& ax = axiom_or_throw(id);
      allowed_.insert(id);
      t.start_checks.push_back(
          {"axiom " + id + ": " + ax.statement, "AXIOM", "ASSUMED", ""});
    }
    for (const auto& p : scenario_.start) state_.positions.push_back(make_position(p));
    t.start_checks.push_back(gram_check());
    bool ok = std::all_of(t.start_checks.begin(), t.start_checks.end(),
                          [&](const Check& c) { return acceptable(c); });
    if (!ok) t.steps.push_back({"start", "start", "", {}, {}, {}, false,
                                "the starting collection is not verified"});

    for (const auto& step : scenario_.steps) {
      if (!ok) break;
      StepRecord rec = run_step(step);
      ok = rec.pass;
      t.steps.push_back(std::move(rec));
    }
    for (const auto& p : state_.positions) t.final_positions.push_back(describe(p));
    t.final_match = ok && compare_final(t.final_detail);
    if (!ok) t.final_detail.push_back("replay stopped at a failed step");

    std::set<std::string> ax;
    auto collect = [&](const std::vector<Check>& cs) {
      for (const auto& c : cs) {
        if (c.status == "CHI-ONLY") t.chi_only.push_back(c.statement);
      }
    };
    collect(t.start_checks);
    for (const auto& s : t.steps) collect(s.checks);
    t.axioms_used.assign(used_axioms_.begin(), used_axioms_.end());
    t.pass = ok && t.final_match;
    return t;
  }

 private:
  const Axiom& axiom_or_throw(const std::string& id) {
    try {
      used_axioms_.insert(id);
      return catalog_.axiom(id);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
  }

  bool acceptable(const Check& c) const {
    if (c.status == "PROVED" || c.status == "ASSUMED") return true;
    return c.status == "CHI-ONLY" && !options_.strict;
  }

  // -- positions -----------------------------------------------------------

  KClass resolve_class(const std::string& label) const {
    auto [base, k] = split_shift(label);
    ResolvedObject r = v_.resolve(base);
    KClass c = k % 2 ? -r.cls : r.cls;
    c.name = with_shift(r.label, k);
    return c;
  }

  Position make_position(const std::string& text) const {
    try {
      if (text.starts_with("[") && text.ends_with("]"))
        return Position::block(text.substr(1, text.size() - 2));
      if (text.starts_with("{") && text.ends_with("}")) {
        const std::string inner = text.substr(1, text.size() - 2);
        auto [pattern, k] = split_shift(inner);
        std::vector<KClass> members;
        for (const auto& r : v_.resolve_family(pattern)) {
          KClass c = k % 2 ? -r.cls : r.cls;
          c.name = with_shift(r.label, k);
          members.push_back(std::move(c));
        }
        return Position::family(inner, std::move(members));
      }
      return Position::single(resolve_class(text));
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError("cannot resolve position '" + text + "' on " +
                          v_.name() + ": " + e.what());
    }
  }

  static std::string describe(const Position& p) {
    if (p.is_block()) {
      return p.annotation.empty() ? "[" + p.name + "]"
                                  : "[" + p.name + "] (" + p.annotation + ")";
    }
    return p.label();
  }

  std::vector<std::string> snapshot() const {
    std::vector<std::string> out;
    for (const auto& p : state_.positions) out.push_back(describe(p));
    return out;
  }

  std::size_t position_index(std::size_t one_based) const {
    if (one_based == 0 || one_based > state_.positions.size())
      throw ScenarioError("position " + std::to_string(one_based) +
                          " out of range (collection has " +
                          std::to_string(state_.positions.size()) + ")");
    return one_based - 1;
  }

  // -- evidence ------------------------------------------------------------

  ExtAnswer ext_between(const std::string& a, const std::string& b) const {
    auto [ba, ka] = split_shift(a);
    auto [bb, kb] = split_shift(b);
    ExtAnswer e = ext_oracle(catalog_, v_.name(), ba, bb);
    if (e.value) e.value = e.value->shifted(ka - kb);
    if (e.chi && (ka - kb) % 2) e.chi = -*e.chi;
    return e;
  }

  // status of one oracle answer against an expected value
  Check classify(const std::string& statement, const ExtAnswer& e,
                 const GradedSpace& expected) const {
    Check c{statement, to_string(e.tag), "", ""};
    switch (e.tag) {
      case Evidence::BBW:
      case Evidence::RULE:
        c.status = *e.value == expected ? "PROVED" : "FAILED";
        if (c.status == "FAILED") c.detail = "computed " + format_graded(*e.value);
        break;
      case Evidence::AXIOM: {
        for (const auto& id : e.axioms)
          if (!allowed_.count(id)) {
            c.status = "UNCHECKED";
            c.detail = "axiom " + id + " not listed for this step";
            return c;
          }
        c.status = *e.value == expected ? "ASSUMED" : "FAILED";
        c.detail = "axiom " + [&] {
          std::string s;
          for (const auto& id : e.axioms) s += (s.empty() ? "" : ", ") + id;
          return s;
        }();
        break;
      }
      case Evidence::CHI_ONLY:
        c.status = *e.chi == expected.euler_characteristic() ? "CHI-ONLY" : "FAILED";
        c.detail = "chi = " + e.chi->get_str();
        break;
      case Evidence::UNKNOWN:
        c.status = "UNCHECKED";
        c.detail = e.method.empty() ? "no strategy applies" : e.method;
        break;
    }
    return c;
  }

  // several pair answers folded into one statement
  Check aggregate(const std::string& statement, const std::vector<Check>& parts) const {
    Check out{statement, "", "PROVED", ""};
    std::set<std::string> tags;
    for (const auto& c : parts) {
      tags.insert(c.tag);
      if (severity(c.status) > severity(out.status)) {
        out.status = c.status;
        out.detail = c.statement + (c.detail.empty() ? "" : ": " + c.detail);
      } else if (out.detail.empty() && !c.detail.empty() &&
                 c.status == out.status && c.status != "PROVED") {
        out.detail = c.detail;
      }
    }
    for (const auto& t : tags) out.tag += (out.tag.empty() ? "" : "/") + t;
    if (parts.size() > 1 && out.detail.empty())
      out.detail = std::to_string(parts.size()) + " pairs";
    return out;
  }

  Check ext_check(const std::string& a, const std::string& b,
                  const GradedSpace& expected) const {
    auto [pa, ka] = split_shift(a);
    auto [pb, kb] = split_shift(b);
    std::vector<ResolvedObject> ra = v_.resolve_family(pa), rb = v_.resolve_family(pb);
    std::vector<std::pair<std::string, std::string>> pairs;
    const bool fa = ra.size() > 1 || pa.find("_i") != std::string::npos;
    const bool fb = rb.size() > 1 || pb.find("_i") != std::string::npos;
    if (fa && fb) {
      for (std::size_t i = 0; i < ra.size(); ++i)
        pairs.push_back({ra[i].label, rb[i].label});
    } else {
      for (const auto& x : ra)
        for (const auto& y : rb) pairs.push_back({x.label, y.label});
    }
    std::vector<Check> parts;
    for (const auto& [x, y] : pairs) {
      const std::string s = "Ext(" + with_shift(x, ka) + ", " + with_shift(y, kb) +
                            ") = " + format_graded(expected);
      parts.push_back(classify(s, ext_between(with_shift(x, ka), with_shift(y, kb)),
                               expected));
    }
    return aggregate("Ext(" + a + ", " + b + ") = " + format_graded(expected), parts);
  }

  Check requirement_check(const Requirement& r) {
    switch (r.kind) {
      case Requirement::Kind::Axiom: {
        const Axiom& ax = axiom_or_throw(r.id);
        return {"axiom " + r.id + ": " + ax.statement, "AXIOM", "ASSUMED", ""};
      }
      case Requirement::Kind::Certificate: {
        if (r.id != "fs") throw ScenarioError("unknown certificate '" + r.id + "'");
        Transcript fs = check_prop_fs(catalog_);
        for (const auto& a : fs.axioms_used) used_axioms_.insert(a);
        return {"certificate fs: plane identification from the exact sequences",
                "CERTIFICATE", fs.pass ? "PROVED" : "FAILED",
                fs.pass ? "" : "certificate check failed"};
      }
      case Requirement::Kind::Ext:
        try {
          return ext_check(r.a, r.b, *r.value);
        } catch (const std::invalid_argument& e) {
          throw ScenarioError("requirement '" + r.text + "': " + e.what());
        }
    }
    return {};
  }

  Check gram_check() const {
    GramResult g = gram(l_, state_);
    Check c{"Gram matrix of the explicit classes is unitriangular", "LATTICE", "", ""};
    switch (g.verdict) {
      case Verdict::Exceptional: c.status = "PROVED"; break;
      case Verdict::NotExceptional: c.status = "FAILED"; break;
      case Verdict::Undetermined:
        c.status = "UNCHECKED";
        c.detail = "pairing entries missing";
        break;
    }
    if (g.qualified) c.detail += (c.detail.empty() ? "" : "; ") +
                                 std::string("abstract blocks skipped");
    return c;
  }

  // -- steps ---------------------------------------------------------------

  StepRecord run_step(const Step& step) {
    StepRecord rec{step.id, step.kind, step.label, {}, snapshot(), {}, true, ""};
    step_axioms_.clear();
    for (const auto& r : step.requires_)
      if (r.kind == Requirement::Kind::Axiom) step_axioms_.insert(r.id);
    std::set<std::string> saved = allowed_;
    allowed_.insert(step_axioms_.begin(), step_axioms_.end());

    for (const auto& r : step.requires_) rec.checks.push_back(requirement_check(r));

    if (step.kind == "mutate_left" || step.kind == "mutate_right")
      mutate(step, rec);
    else if (step.kind == "serre_translate")
      translate(step, rec);
    else if (step.kind == "swap_orthogonal")
      swap(step, rec);
    else if (step.kind == "twist_all")
      twist(step, rec);
    else if (step.kind == "insert_block")
      insert(step, rec);
    else if (step.kind == "identify")
      identify(step, rec);
    else
      throw ScenarioError("unknown step kind '" + step.kind + "'");

    rec.checks.push_back(gram_check());
    rec.after = snapshot();
    allowed_ = saved;
    for (const auto& c : rec.checks)
      if (!acceptable(c)) {
        rec.pass = false;
        if (rec.message.empty()) rec.message = "failed: " + c.statement;
      }
    return rec;
  }

  Check block_passage(const Position& block, const Position& other,
                      const std::string& how) const {
    Check c{"block " + block.name + " " + how + " " + other.label(), "AXIOM",
            "ASSUMED", ""};
    if (!step_axioms_.count("block-functor")) {
      c.tag = "UNCHECKED";
      c.status = "UNCHECKED";
      c.detail = "block moves need axiom block-functor";
    }
    return c;
  }

  void rename_block(Position& p, const std::string& as, const std::string& note) {
    if (!as.empty()) {
      if (!(as.starts_with("[") && as.ends_with("]")))
        throw ScenarioError("'as' must name a block: " + as);
      p.name = as.substr(1, as.size() - 2);
      p.annotation.clear();
    } else {
      p.annotation = note + (p.annotation.empty() ? "" : " o " + p.annotation);
    }
  }

  void mutate(const Step& step, StepRecord& rec) {
    const bool left = step.kind == "mutate_left";
    std::size_t p = position_index(step.index);
    for (std::size_t k = 0; k < step.count; ++k) {
      if (left ? p == 0 : p + 1 >= state_.positions.size())
        throw ScenarioError("step " + step.id + ": nothing to pass");
      const std::size_t q = left ? p - 1 : p + 1;
      Position& mover = state_.positions[p];
      const Position& other = state_.positions[q];
      if (mover.is_block()) {
        if (other.is_block()) throw ScenarioError("two adjacent blocks cannot be mutated");
        rec.checks.push_back(block_passage(mover, other, left ? "passes left of" : "passes right of"));
        rename_block(mover, "", std::string(left ? "L_" : "R_") + other.label());
      } else {
        if (other.is_block())
          throw ScenarioError("step " + step.id +
                              ": cannot mutate an explicit object through a block");
        if (other.members.size() > 1 && mover.members.size() > 1)
          throw ScenarioError("step " + step.id + ": family through family");
        const std::string op = left ? "L_" : "R_";
        std::vector<std::string> formulas;
        for (auto& f : mover.members) {
          // coefficients -chi(E_k, F) (left) or -chi(F, E_k) (right)
          std::set<std::string> coeffs;
          for (const auto& e : other.members) {
            Integer c = left ? l_.chi_or_throw(e, f) : l_.chi_or_throw(f, e);
            coeffs.insert(Integer(-c).get_str());
          }
          std::string coeff = coeffs.size() == 1 ? *coeffs.begin() : "mixed";
          formulas.push_back(f.name + (coeff.starts_with("-") ? " - " + coeff.substr(1)
                                                              : " + " + coeff) +
                             (other.members.size() > 1 ? " sum " : " ") +
                             other.label());
          KClass out = other.members.size() == 1
                           ? (left ? mutate_left(l_, other.members[0], f)
                                   : mutate_right(l_, other.members[0], f))
                           : (left ? mutate_left(l_, other.members, f)
                                   : mutate_right(l_, other.members, f));
          out.name = "~" + op + "{" + other.label() + "}(" + f.name + ")";
          f = std::move(out);
        }
        const std::string shown = mover.members.size() == 1
                                      ? mover.members[0].name.substr(1)
                                      : op + "{" + other.label() + "}(" + mover.name + ")";
        rec.checks.push_back({shown + " = " + formulas.front() +
                                  (formulas.size() > 1 ? " (each member)" : ""),
                              "LATTICE", "PROVED", ""});
        mover.name = "~" + shown;
      }
      std::swap(state_.positions[p], state_.positions[q]);
      p = q;
    }
    Position& moved = state_.positions[p];
    if (!step.as.empty()) {
      if (!moved.is_block())
        throw ScenarioError("step " + step.id + ": use identify for explicit objects");
      rename_block(moved, step.as, "");
    }
  }

  std::string twisted_name(const std::string& name, const std::string& line) const {
    auto [base, k] = split_shift(name);
    return with_shift(v_.twist_label(base, line), k);
  }

  // re-label a translated/twisted explicit position and verify the classes
  Check relabel(Position& pos, const std::string& line, const std::string& what) {
    Check c{what + " " + pos.label(), "LATTICE", "PROVED", ""};
    for (auto& m : pos.members) {
      if (!identified(m)) {
        m.name = "~" + line + "(" + m.name.substr(1) + ")";
        continue;
      }
      const std::string nl = twisted_name(m.name, line);
      if (!l_.equal(resolve_class(nl), m)) {
        c.status = "FAILED";
        c.detail = "class of " + nl + " differs from the computed twist";
      }
      m.name = resolve_class(nl).name;
    }
    if (pos.members.size() == 1) {
      pos.name = pos.members[0].name;
    } else if (identified(pos.members[0])) {
      auto [pattern, k] = split_shift(pos.name);
      pos.name = with_shift(v_.twist_label(pattern, line), k);
    }
    c.statement += " -> " + pos.label();
    return c;
  }

  void translate(const Step& step, StepRecord& rec) {
    const bool left = step.direction == "left";
    auto& ps = state_.positions;
    if (step.count > ps.size()) throw ScenarioError("serre_translate count too large");
    const std::string canon = v_.canonical_class();
    const std::string line = left ? canon : detail::negate_linear(canon);
    std::vector<Position> moved;
    if (left) {
      moved.assign(ps.end() - static_cast<long>(step.count), ps.end());
      ps.erase(ps.end() - static_cast<long>(step.count), ps.end());
    } else {
      moved.assign(ps.begin(), ps.begin() + static_cast<long>(step.count));
      ps.erase(ps.begin(), ps.begin() + static_cast<long>(step.count));
    }
    std::size_t blocks = 0;
    for (auto& p : moved) {
      if (p.is_block()) {
        ++blocks;
        p = serre_translate(l_, p, left ? Direction::Left : Direction::Right);
        if (!step.as.empty()) rename_block(p, step.as, "");
        continue;
      }
      for (auto& m : p.members) {
        const std::string keep = m.name;
        m = serre_translate(l_, m, left ? Direction::Left : Direction::Right);
        m.name = keep;
      }
      rec.checks.push_back(relabel(p, line, "twist by O(" + line + ")"));
    }
    if (blocks > 1 && !step.as.empty())
      throw ScenarioError("step " + step.id + ": 'as' is ambiguous with several blocks");
    if (left)
      ps.insert(ps.begin(), moved.begin(), moved.end());
    else
      ps.insert(ps.end(), moved.begin(), moved.end());
  }

  void swap(const Step& step, StepRecord& rec) {
    const std::size_t i = position_index(step.index);
    if (i + 1 >= state_.positions.size())
      throw ScenarioError("step " + step.id + ": no position to the right");
    const Position& a = state_.positions[i];
    const Position& b = state_.positions[i + 1];
    const std::string statement = "Ext(" + a.label() + ", " + b.label() + ") = 0";
    if (a.is_block() || b.is_block()) {
      Check c{statement, "AXIOM", "ASSUMED", ""};
      if (step_axioms_.empty()) {
        c.tag = c.status = "UNCHECKED";
        c.detail = "orthogonality with a block needs a listed axiom";
      }
      rec.checks.push_back(c);
    } else {
      std::vector<Check> parts;
      for (const auto& x : a.members)
        for (const auto& y : b.members) {
          if (!identified(x) || !identified(y)) {
            parts.push_back({"Ext(" + x.name + ", " + y.name + ") = 0", "UNCHECKED",
                             "UNCHECKED", "object not identified"});
            continue;
          }
          parts.push_back(classify("Ext(" + x.name + ", " + y.name + ") = 0",
                                   ext_between(x.name, y.name), GradedSpace()));
        }
      Check c = aggregate(statement, parts);
      c.statement += " (exchange condition)";
      rec.checks.push_back(c);
    }
    std::swap(state_.positions[i], state_.positions[i + 1]);
  }

  void twist(const Step& step, StepRecord& rec) {
    if (!l_.has_operator(step.line))
      throw ScenarioError("no twist operator '" + step.line + "' on " + v_.name());
    std::size_t blocks = 0;
    for (auto& p : state_.positions) {
      if (p.is_block()) {
        ++blocks;
        rename_block(p, step.as, "T(" + step.line + ")");
        continue;
      }
      for (auto& m : p.members) {
        const std::string keep = m.name;
        try {
          m = l_.apply(step.line, m);
        } catch (const std::exception& e) {
          throw ScenarioError("twist of " + keep + ": " + e.what());
        }
        m.name = keep;
      }
      rec.checks.push_back(relabel(p, step.line, "twist by O(" + step.line + ")"));
    }
    if (blocks > 1 && !step.as.empty())
      throw ScenarioError("step " + step.id + ": 'as' is ambiguous with several blocks");
  }

  void insert(const Step& step, StepRecord&) {
    const std::size_t i = position_index(step.index);
    if (!state_.positions[i].is_block())
      throw ScenarioError("step " + step.id + ": insert_block replaces a block");
    std::vector<Position> repl;
    for (const auto& t : step.positions) repl.push_back(make_position(t));
    auto& ps = state_.positions;
    ps.erase(ps.begin() + static_cast<long>(i));
    ps.insert(ps.begin() + static_cast<long>(i), repl.begin(), repl.end());
  }

  void identify(const Step& step, StepRecord& rec) {
    const std::size_t i = position_index(step.index);
    Position& cur = state_.positions[i];
    if (cur.is_block()) throw ScenarioError("step " + step.id + ": identify a block");
    Position want = make_position(step.as);
    if (want.is_block() || want.members.size() != cur.members.size())
      throw ScenarioError("step " + step.id + ": identification has the wrong shape");
    Check c{"class of " + cur.label() + " equals " + want.label(), "LATTICE",
            "PROVED", ""};
    for (std::size_t k = 0; k < cur.members.size(); ++k) {
      if (l_.equal(cur.members[k], want.members[k])) continue;
      c.status = "FAILED";
      c.detail = l_.equal_up_to_sign(cur.members[k], want.members[k])
                     ? want.members[k].name + " matches only up to an odd shift"
                     : "computed " + l_.format(cur.members[k]);
      break;
    }
    rec.checks.push_back(c);
    if (c.status == "PROVED") cur = want;
  }

  bool compare_final(std::vector<std::string>& detail) const {
    if (scenario_.target.empty()) return true;
    if (scenario_.target.size() != state_.positions.size()) {
      detail.push_back("length " + std::to_string(state_.positions.size()) +
                       ", expected " + std::to_string(scenario_.target.size()));
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < scenario_.target.size(); ++i) {
      const Position want = make_position(scenario_.target[i]);
      const Position& got = state_.positions[i];
      bool same = want.is_block() == got.is_block();
      if (same && want.is_block()) same = want.name == got.name;
      if (same && !want.is_block()) {
        same = want.members.size() == got.members.size();
        for (std::size_t k = 0; same && k < want.members.size(); ++k)
          same = l_.equal_up_to_sign(want.members[k], got.members[k]);
      }
      if (!same) {
        ok = false;
        detail.push_back("position " + std::to_string(i + 1) + ": " +
                         describe(got) + " vs " + scenario_.target[i]);
      }
    }
    if (ok) detail.push_back("all " + std::to_string(state_.positions.size()) +
                             " positions agree class by class (up to shift)");
    return ok;
  }

  const Catalog& catalog_;
  const Scenario& scenario_;
  ReplayOptions options_;
  const Variety& v_;
  const KLattice& l_;
  Collection state_;
  std::set<std::string> allowed_, step_axioms_, used_axioms_;
};

}  // namespace

Transcript run_scenario(const Catalog& catalog, const Scenario& scenario,
                        const ReplayOptions& options) {
  if (scenario.variety.empty()) {
    if (!scenario.steps.empty() || !scenario.start.empty() || !scenario.target.empty())
      throw ScenarioError("scenario without a variety");
    Transcript t;
    t.scenario = scenario.name;
    return t;
  }
  try {
    catalog.variety(scenario.variety);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  return Engine(catalog, scenario, options).run();
}

}  // namespace sod
