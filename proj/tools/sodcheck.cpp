#include <CLI11.hpp>
#include <json.hpp>

#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "sod/catalog.hpp"
#include "sod/properties.hpp"
#include "sod/replay.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace sod;

namespace {

struct Options {
  bool json = false;
  bool strict = false;
  int nodes = 10;
  std::string catalog_path;
  std::string scenario_dir = SOD_SCENARIO_DIR;
};

// Thrown for a completed computation whose verdict is FAIL.
struct Failed {};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Override file: {"nodes": 10, "axioms": [{"id", "kind", "statement",
// "anchor", "variety", "a", "b", "value"}]}.
Catalog load_catalog(const Options& o) {
  int nodes = o.nodes;
  ordered_json data;
  if (!o.catalog_path.empty()) {
    try {
      data = ordered_json::parse(slurp(o.catalog_path));
    } catch (const ordered_json::exception& e) {
      throw std::invalid_argument(std::string("catalog file: ") + e.what());
    }
    if (data.contains("nodes")) nodes = data["nodes"].get<int>();
  }
  Catalog c(nodes);
  if (data.contains("axioms")) {
    for (const auto& j : data["axioms"]) {
      Axiom a;
      a.id = j.at("id").get<std::string>();
      a.kind = j.value("kind", "ext");
      a.statement = j.value("statement", "");
      a.anchor = j.value("anchor", "");
      a.variety = j.value("variety", "");
      a.a = j.value("a", "");
      a.b = j.value("b", "");
      if (j.contains("value")) a.value = parse_graded(j["value"].get<std::string>());
      c.register_axiom(std::move(a));
    }
  }
  return c;
}

ordered_json graded_json(const GradedSpace& g) {
  ordered_json j = ordered_json::object();
  for (const auto& [deg, dim] : g.dims()) j[std::to_string(deg)] = dim.get_str();
  return j;
}

void emit(const Options& o, const ordered_json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::vector<std::string> split_positions(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto b = item.find_first_not_of(' '), e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  if (out.empty()) throw std::invalid_argument("no positions given");
  return out;
}

void cmd_bbw(const Options& o, const std::string& space_text,
             const std::string& bundle_text) {
  auto space = parse_space(space_text);
  GradedSpace g = bbw_product(space, parse_bundle(space, bundle_text));
  emit(o,
       {{"space", space_text},
        {"bundle", bundle_text},
        {"cohomology", graded_json(g)},
        {"chi", g.euler_characteristic().get_str()}},
       g.str() + "\n");
}

struct NamedComplex {
  std::vector<HomFactor> space;
  TermComplex complex;
};

NamedComplex named_complex(const std::string& name) {
  const HomFactor gr24(2, 4, "Gr24");
  if (name == "M") return {{gr24, HomFactor(1, 4, "P3")}, koszul_m()};
  if (name == "S~") return {{gr24, HomFactor(2, 4, "Gr24W")}, koszul_s_tilde()};
  if (name == "S") return {{gr24}, koszul_s()};
  if (name == "plane") return {{gr24}, koszul_plane()};
  throw std::invalid_argument("unknown complex '" + name +
                              "' (expected M, S, S~ or plane)");
}

void cmd_hyper(const Options& o, const std::string& name,
               const std::string& twist) {
  NamedComplex c = named_complex(name);
  TermComplex complex = c.complex;
  if (!twist.empty()) complex = tensor_complex(complex, parse_bundle(c.space, twist));
  HyperResult r = hypercohomology(c.space, complex);
  ordered_json j{{"complex", name}, {"twist", twist}, {"determinate", r.determinate()}};
  if (r.value) j["cohomology"] = graded_json(*r.value);
  for (const auto& [pq, dim] : r.table)
    j["e1"].push_back({pq.first, pq.second, dim.get_str()});
  emit(o, j, r.str() + "\n");
}

void cmd_chi(const Options& o, const Catalog& cat, const std::string& variety,
             const std::string& label) {
  const Variety& v = cat.variety(variety);
  auto chi = v.lattice().chi(v.resolve("O").cls, v.resolve(label).cls);
  if (!chi) throw std::invalid_argument("no Euler pairing available for " + label);
  emit(o, {{"variety", variety}, {"object", label}, {"chi", chi->get_str()}},
       "chi(" + label + ") = " + chi->get_str() + "\n");
}

void cmd_pair(const Options& o, const Catalog& cat, const std::string& variety,
              const std::string& a, const std::string& b) {
  ExtAnswer ans = ext_oracle(cat, variety, a, b);
  ordered_json j{{"variety", variety}, {"a", a}, {"b", b}, {"tag", to_string(ans.tag)}};
  if (ans.chi) j["chi"] = ans.chi->get_str();
  if (ans.value) j["ext"] = format_graded(*ans.value);
  if (!ans.axioms.empty()) j["axioms"] = ans.axioms;
  std::string text = "chi(" + a + ", " + b + ") = " +
                     (ans.chi ? ans.chi->get_str() : std::string("?")) + "\n";
  text += "Ext(" + a + ", " + b + ") = " +
          (ans.value ? format_graded(*ans.value) : std::string("?")) + "  [" +
          to_string(ans.tag) + "]\n";
  emit(o, j, text);
}

void cmd_mutate(const Options& o, const Catalog& cat, const std::string& variety,
                const std::string& side, const std::string& e,
                const std::string& f) {
  if (side != "left" && side != "right")
    throw std::invalid_argument("direction must be left or right");
  const Variety& v = cat.variety(variety);
  const KLattice& l = v.lattice();
  KClass ce = v.resolve(e).cls, cf = v.resolve(f).cls;
  ce.name.clear();
  cf.name.clear();
  KClass out = side == "left" ? mutate_left(l, ce, cf) : mutate_right(l, ce, cf);
  const std::string op = (side == "left" ? "L_" : "R_") + e + "(" + f + ")";
  emit(o,
       {{"variety", variety},
        {"mutation", op},
        {"coordinates", [&] {
           std::vector<std::string> v;
           for (const auto& x : out.v) v.push_back(x.get_str());
           return v;
         }()},
        {"basis", l.labels()},
        {"class", l.format(out)}},
       op + " = " + l.format(out) + "\n");
}

void cmd_gram(const Options& o, const Catalog& cat, const std::string& variety,
              const std::string& positions) {
  const Variety& v = cat.variety(variety);
  Collection c;
  for (const auto& p : split_positions(positions)) {
    if (p.front() == '[') {
      c.positions.push_back(Position::block(p));
      continue;
    }
    const std::string label =
        p.front() == '{' && p.back() == '}' ? p.substr(1, p.size() - 2) : p;
    std::vector<KClass> members;
    for (const auto& r : v.resolve_family(label)) members.push_back(r.cls.named(r.label));
    c.positions.push_back(members.size() == 1 ? Position::single(members[0])
                                              : Position::family(p, members));
  }
  GramResult g = gram(v.lattice(), c);
  ordered_json j{{"variety", variety}, {"labels", g.labels},
                 {"verdict", to_string(g.verdict)}, {"qualified", g.qualified}};
  std::ostringstream os;
  for (std::size_t r = 0; r < g.matrix.size(); ++r) {
    std::vector<std::string> row;
    for (const auto& x : g.matrix[r]) row.push_back(x ? x->get_str() : "?");
    j["matrix"].push_back(row);
    os << g.labels[r] << ":";
    for (const auto& x : row) os << " " << x;
    os << "\n";
  }
  os << "verdict: " << to_string(g.verdict)
     << (g.qualified ? " (abstract blocks skipped)" : "") << "\n";
  emit(o, j, os.str());
  if (g.verdict == Verdict::NotExceptional) throw Failed{};
}

int cmd_replay(const Options& o, const Catalog& cat, const std::string& path) {
  Scenario s = load_scenario(path);
  Transcript t = run_scenario(cat, s, {o.strict});
  std::cout << (o.json ? t.json() + "\n" : t.text());
  return t.pass ? 0 : 1;
}

struct Outcome {
  std::string kind, name;
  bool pass;
  std::string detail;
};

int cmd_verify_all(const Options& o, const Catalog& cat) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Outcome> results;
  std::set<std::string> axioms_used;

  std::vector<fs::path> files;
  if (!fs::is_directory(o.scenario_dir))
    throw std::invalid_argument("scenario directory '" + o.scenario_dir + "' not found");
  for (const auto& e : fs::directory_iterator(o.scenario_dir)) {
    const auto ext = e.path().extension();
    if (ext == ".sod" || ext == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    Transcript t = run_scenario(cat, load_scenario(f.string()), {o.strict});
    const bool negative = f.filename().string().find("negative") != std::string::npos;
    for (const auto& a : t.axioms_used) axioms_used.insert(a);
    std::string detail = negative ? "expected to fail" : "";
    for (const auto& s : t.steps)
      if (!s.pass) detail += (detail.empty() ? "" : "; ") + ("step " + s.id + ": " + s.message);
    results.push_back({"scenario", f.filename().string(), t.pass != negative, detail});
  }

  {
    Transcript t = check_prop_fs(cat);
    std::string detail;
    bool ok = t.pass;
    for (const char* r : {"ppsk", "ppsu", "ipf", "ips"}) {
      const bool dropped_fails = !check_prop_fs(cat, {r}).pass;
      ok = ok && dropped_fails;
      detail += std::string(detail.empty() ? "" : ", ") + "without " + r +
                (dropped_fails ? " fails" : " still passes");
    }
    results.push_back({"certificate", "fs", ok, detail});
  }

  for (const char* v : {"P3", "Gr24"})
    for (const auto& r : mutation_properties(cat, v, 100, 20240601)) {
      std::string detail = std::to_string(r.instances) + " instances";
      for (const auto& c : r.counterexamples) detail += "; " + c;
      results.push_back({"property", r.property + " on " + r.variety, r.pass(), detail});
    }

  const std::vector<std::pair<std::string, std::vector<std::string>>> covers = {
      {"P3", {"O(-1)", "O"}}, {"Y", {"O(-h)", "O(-e_i)", "O"}}};
  for (const auto& [base, labels] : covers) {
    DoubleCoverReport r = double_cover_check(cat, base, labels);
    results.push_back({"double-cover", base, r.pass(),
                       std::to_string(r.pairs_checked) + " pairs, " +
                           std::to_string(r.identity_failures) +
                           " identity failures"});
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool all = true;
  for (const auto& r : results) all = all && r.pass;

  if (o.json) {
    ordered_json j;
    for (const auto& r : results)
      j["results"].push_back(
          {{"kind", r.kind}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    j["axioms_used"] = axioms_used;
    j["seconds"] = seconds;
    j["result"] = all ? "PASS" : "FAIL";
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.kind << " " << r.name;
      if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
      std::cout << "\n";
    }
    std::cout << "axioms used:";
    for (const auto& a : axioms_used) std::cout << " " << a;
    std::cout << "\n";
    for (const auto& a : axioms_used) std::cout << "  " << a << ": " << cat.axiom(a).statement << "\n";
    std::ostringstream secs;
    secs.precision(2);
    secs << std::fixed << seconds;
    std::cout << "result: " << (all ? "PASS" : "FAIL") << " in " << secs.str() << " s\n";
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sodcheck: exceptional collections, mutations and proof replay"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");
  app.add_flag("--strict", o.strict, "treat chi-only evidence as failure");
  app.add_option("--nodes", o.nodes, "number of blown-up points / nodes")
      ->check(CLI::Range(0, 16));
  app.add_option("--catalog", o.catalog_path, "catalog override file (JSON)");
  app.add_option("--scenarios", o.scenario_dir, "scenario directory for verify-all");

  std::string a1, a2, a3, a4;
  auto* bbw = app.add_subcommand("bbw", "cohomology of a homogeneous bundle");
  bbw->add_option("space", a1, "e.g. Gr24, P3, \"Gr24 x P3\"")->required();
  bbw->add_option("bundle", a2, "e.g. \"S2U(-g)\", \"U x O(1)\"")->required();

  auto* hyper = app.add_subcommand("hyper", "hypercohomology of a Koszul complex");
  hyper->add_option("complex", a1, "M, S, S~ or plane")->required();
  hyper->add_option("twist", a2, "bundle to tensor with");

  auto* chi = app.add_subcommand("chi", "Euler characteristic of an object");
  chi->add_option("variety", a1)->required();
  chi->add_option("object", a2)->required();

  auto* pair = app.add_subcommand("pair", "Euler pairing and graded Ext");
  pair->add_option("variety", a1)->required();
  pair->add_option("A", a2)->required();
  pair->add_option("B", a3)->required();

  auto* mutate = app.add_subcommand("mutate", "class of a mutation L_E F or R_E F");
  mutate->add_option("variety", a1)->required();
  mutate->add_option("direction", a2, "left or right")->required();
  mutate->add_option("E", a3)->required();
  mutate->add_option("F", a4)->required();

  auto* gramc = app.add_subcommand("gram", "Gram matrix of a collection");
  gramc->add_option("variety", a1)->required();
  gramc->add_option("positions", a2, "\"O(-1) ; O ; {O_E_i}\"")->required();

  auto* catalog = app.add_subcommand("catalog", "list varieties and axioms");
  auto* replay = app.add_subcommand("replay", "replay a scenario file");
  replay->add_option("file", a1)->required();
  auto* verify = app.add_subcommand("verify-all", "scenarios, certificate and property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (bbw->parsed()) {
      cmd_bbw(o, a1, a2);
      return 0;
    }
    if (hyper->parsed()) {
      cmd_hyper(o, a1, a2);
      return 0;
    }
    const Catalog cat = load_catalog(o);
    if (chi->parsed()) cmd_chi(o, cat, a1, a2);
    if (pair->parsed()) cmd_pair(o, cat, a1, a2, a3);
    if (mutate->parsed()) cmd_mutate(o, cat, a1, a2, a3, a4);
    if (gramc->parsed()) cmd_gram(o, cat, a1, a2);
    if (catalog->parsed()) std::cout << cat.listing(o.json) << (o.json ? "\n" : "");
    if (replay->parsed()) return cmd_replay(o, cat, a1);
    if (verify->parsed()) return cmd_verify_all(o, cat);
    return 0;
  } catch (const Failed&) {
    return 1;
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
