#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sod/replay.hpp"

namespace sod {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_positions(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::size_t parse_index(const std::string& tok, int line) {
  try {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used == tok.size() && v >= 1) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw ScenarioError("line " + std::to_string(line) +
                      ": expected a positive index, got '" + tok + "'");
}

Requirement parse_requirement(const std::string& body, int line) {
  Requirement r;
  r.text = body;
  if (body.starts_with("axiom ")) {
    r.kind = Requirement::Kind::Axiom;
    r.id = trim(body.substr(6));
    return r;
  }
  if (body.starts_with("certificate ")) {
    r.kind = Requirement::Kind::Certificate;
    r.id = trim(body.substr(12));
    return r;
  }
  if (!body.starts_with("ext(")) {
    throw ScenarioError("line " + std::to_string(line) +
                        ": unknown requirement '" + body + "'");
  }
  int depth = 0;
  std::size_t comma = std::string::npos, close = std::string::npos;
  for (std::size_t i = 3; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    if (body[i] == ')' && --depth == 0) {
      close = i;
      break;
    }
    if (body[i] == ',' && depth == 1 && comma == std::string::npos) comma = i;
  }
  const auto eq = close == std::string::npos ? close : body.find('=', close);
  if (comma == std::string::npos || eq == std::string::npos)
    throw ScenarioError("line " + std::to_string(line) +
                        ": malformed ext requirement '" + body + "'");
  r.kind = Requirement::Kind::Ext;
  r.a = trim(body.substr(4, comma - 4));
  r.b = trim(body.substr(comma + 1, close - comma - 1));
  try {
    r.value = parse_graded(trim(body.substr(eq + 1)));
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("line " + std::to_string(line) + ": " + e.what());
  }
  return r;
}

Step parse_step(const std::string& rest, const std::string& comment, int line) {
  std::istringstream in(rest);
  Step s;
  in >> s.id >> s.kind;
  s.label = comment;
  std::string tail;
  std::getline(in, tail);
  tail = trim(tail);
  auto take_as = [&](std::string& t) {
    const auto p = t.find(" as ");
    if (p != std::string::npos) {
      s.as = trim(t.substr(p + 4));
      t = trim(t.substr(0, p));
    } else if (t.starts_with("as ")) {
      s.as = trim(t.substr(3));
      t.clear();
    }
  };
  std::vector<std::string> toks;
  auto tokens = [&](const std::string& t) {
    toks.clear();
    std::istringstream ts(t);
    for (std::string x; ts >> x;) toks.push_back(x);
  };
  const std::string where = "line " + std::to_string(line) + ": ";
  if (s.kind == "mutate_left" || s.kind == "mutate_right") {
    take_as(tail);
    tokens(tail);
    if (toks.empty() || toks.size() > 2)
      throw ScenarioError(where + s.kind + " takes <index> [<count>]");
    s.index = parse_index(toks[0], line);
    if (toks.size() == 2) s.count = parse_index(toks[1], line);
  } else if (s.kind == "serre_translate") {
    take_as(tail);
    tokens(tail);
    if (toks.size() != 2 || (toks[0] != "left" && toks[0] != "right"))
      throw ScenarioError(where + "serre_translate takes left|right <count>");
    s.direction = toks[0];
    s.count = parse_index(toks[1], line);
  } else if (s.kind == "swap_orthogonal") {
    tokens(tail);
    if (toks.size() != 1)
      throw ScenarioError(where + "swap_orthogonal takes <index>");
    s.index = parse_index(toks[0], line);
  } else if (s.kind == "twist_all") {
    take_as(tail);
    if (tail.empty()) throw ScenarioError(where + "twist_all needs a line bundle");
    s.line = tail;
  } else if (s.kind == "insert_block") {
    const auto eq = tail.find('=');
    if (eq == std::string::npos)
      throw ScenarioError(where + "insert_block takes <index> = <positions>");
    s.index = parse_index(trim(tail.substr(0, eq)), line);
    s.positions = split_positions(tail.substr(eq + 1));
    if (s.positions.empty())
      throw ScenarioError(where + "insert_block needs positions");
  } else if (s.kind == "identify") {
    take_as(tail);
    tokens(tail);
    if (toks.size() != 1 || s.as.empty())
      throw ScenarioError(where + "identify takes <index> as <position>");
    s.index = parse_index(toks[0], line);
  } else {
    throw ScenarioError(where + "unknown step kind '" + s.kind + "'");
  }
  return s;
}

void validate(const Scenario& s) {
  for (const auto& st : s.steps) {
    if (st.kind != "identify") continue;
    const bool has_evidence =
        std::any_of(st.requires_.begin(), st.requires_.end(), [](const auto& r) {
          return r.kind != Requirement::Kind::Certificate;
        });
    if (!has_evidence)
      throw ScenarioError("step " + st.id +
                          ": identify needs an ext or axiom requirement");
  }
}

std::string json_string(const json& j, const char* key) {
  return j.contains(key) ? j.at(key).get<std::string>() : std::string();
}

}  // namespace

GradedSpace parse_graded(const std::string& text) {
  GradedSpace g;
  const std::string t = trim(text);
  if (t == "0") return g;
  std::stringstream ss(t);
  std::string term;
  while (std::getline(ss, term, '+')) {
    term = trim(term);
    if (term.empty() || term[0] != 'C')
      throw std::invalid_argument("malformed graded value '" + text + "'");
    std::size_t i = 1;
    long dim = 1;
    int degree = 0;
    if (i < term.size() && term[i] == '^') {
      std::size_t used = 0;
      dim = std::stol(term.substr(i + 1), &used);
      i += 1 + used;
    }
    if (i < term.size()) {
      if (term[i] != '[' || term.back() != ']')
        throw std::invalid_argument("malformed graded value '" + text + "'");
      degree = -std::stoi(term.substr(i + 1, term.size() - i - 2));
    }
    g.add_dim(degree, dim);
  }
  return g;
}

std::string format_graded(const GradedSpace& g) {
  if (g.is_zero()) return "0";
  std::string out;
  for (const auto& [t, d] : g.dims()) {
    if (d == 0) continue;
    if (!out.empty()) out += " + ";
    out += "C";
    if (d != 1) out += "^" + d.get_str();
    if (t != 0) out += "[" + std::to_string(-t) + "]";
  }
  return out.empty() ? "0" : out;
}

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string comment;
    if (auto h = raw.find('#'); h != std::string::npos) {
      comment = trim(raw.substr(h + 1));
      raw = raw.substr(0, h);
    }
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto sp = raw.find(' ');
    const std::string key = raw.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : trim(raw.substr(sp));
    if (key == "scenario") {
      s.name = rest;
    } else if (key == "variety") {
      s.variety = rest;
    } else if (key == "describe") {
      s.description += (s.description.empty() ? "" : " ") + rest;
    } else if (key == "assume") {
      s.assumptions.push_back(rest);
    } else if (key == "start") {
      s.start = split_positions(rest);
    } else if (key == "target") {
      s.target = split_positions(rest);
    } else if (key == "note") {
      s.notes.push_back(rest);
    } else if (key == "step") {
      s.steps.push_back(parse_step(rest, comment, line));
    } else if (key == "require") {
      if (s.steps.empty())
        throw ScenarioError("line " + std::to_string(line) +
                            ": require before any step");
      s.steps.back().requires_.push_back(parse_requirement(rest, line));
    } else {
      throw ScenarioError("line " + std::to_string(line) + ": unknown directive '" +
                          key + "'");
    }
  }
  validate(s);
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["scenario"] = s.name;
  j["variety"] = s.variety;
  j["describe"] = s.description;
  j["assume"] = s.assumptions;
  j["start"] = s.start;
  j["steps"] = json::array();
  for (const auto& st : s.steps) {
    json x;
    x["id"] = st.id;
    x["kind"] = st.kind;
    if (st.index) x["index"] = st.index;
    if (st.kind == "mutate_left" || st.kind == "mutate_right" ||
        st.kind == "serre_translate")
      x["count"] = st.count;
    if (!st.direction.empty()) x["direction"] = st.direction;
    if (!st.line.empty()) x["line"] = st.line;
    if (!st.as.empty()) x["as"] = st.as;
    if (!st.positions.empty()) x["positions"] = st.positions;
    if (!st.label.empty()) x["label"] = st.label;
    x["require"] = json::array();
    for (const auto& r : st.requires_) x["require"].push_back(r.text);
    j["steps"].push_back(x);
  }
  j["target"] = s.target;
  j["notes"] = s.notes;
  return j.dump(2);
}

Scenario scenario_from_json(const std::string& json_text) {
  Scenario s;
  try {
    const json j = json::parse(json_text);
    s.name = json_string(j, "scenario");
    s.variety = json_string(j, "variety");
    s.description = json_string(j, "describe");
    if (j.contains("assume")) s.assumptions = j.at("assume").get<std::vector<std::string>>();
    if (j.contains("start")) s.start = j.at("start").get<std::vector<std::string>>();
    if (j.contains("target")) s.target = j.at("target").get<std::vector<std::string>>();
    if (j.contains("notes")) s.notes = j.at("notes").get<std::vector<std::string>>();
    for (const auto& x : j.value("steps", json::array())) {
      Step st;
      st.id = json_string(x, "id");
      st.kind = json_string(x, "kind");
      st.index = x.value("index", std::size_t{0});
      st.count = x.value("count", std::size_t{1});
      st.direction = json_string(x, "direction");
      st.line = json_string(x, "line");
      st.as = json_string(x, "as");
      st.label = json_string(x, "label");
      if (x.contains("positions"))
        st.positions = x.at("positions").get<std::vector<std::string>>();
      for (const auto& r : x.value("require", json::array()))
        st.requires_.push_back(parse_requirement(r.get<std::string>(), 0));
      s.steps.push_back(std::move(st));
    }
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("malformed scenario JSON: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ScenarioError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  if (path.ends_with(".json")) return scenario_from_json(buf.str());
  return parse_scenario(buf.str());
}

namespace {

json check_json(const Check& c) {
  return {{"statement", c.statement},
          {"tag", c.tag},
          {"status", c.status},
          {"detail", c.detail}};
}

void check_text(std::ostream& os, const Check& c) {
  os << "    [" << c.status << " " << c.tag << "] " << c.statement;
  if (!c.detail.empty()) os << " -- " << c.detail;
  os << "\n";
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& x : v) out += (out.empty() ? "" : ", ") + x;
  return out;
}

}  // namespace

std::string Transcript::text() const {
  std::ostringstream os;
  os << "scenario " << scenario;
  if (!variety.empty()) os << " on " << variety;
  os << "\n";
  if (!start_checks.empty()) {
    os << "  start\n";
    for (const auto& c : start_checks) check_text(os, c);
  }
  for (const auto& s : steps) {
    os << "  step " << s.id << " " << s.kind;
    if (!s.label.empty()) os << " (" << s.label << ")";
    os << ": " << (s.pass ? "PASS" : "FAIL") << "\n";
    if (!s.before.empty() || !s.after.empty()) {
      os << "    before: " << join(s.before) << "\n";
      os << "    after:  " << join(s.after) << "\n";
    }
    for (const auto& c : s.checks) check_text(os, c);
    if (!s.message.empty()) os << "    " << s.message << "\n";
  }
  if (!target.empty() || !final_positions.empty()) {
    os << "  final:  " << join(final_positions) << "\n";
    os << "  target: " << join(target) << "\n";
    os << "  final comparison: " << (final_match ? "MATCH" : "MISMATCH") << "\n";
    for (const auto& d : final_detail) os << "    " << d << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  os << "  axioms used: " << (axioms_used.empty() ? "none" : join(axioms_used))
     << "\n";
  os << "  chi-only evidence: " << (chi_only.empty() ? "none" : join(chi_only))
     << "\n";
  os << "result: " << (pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string Transcript::json() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario;
  j["variety"] = variety;
  j["start_checks"] = nlohmann::ordered_json::array();
  for (const auto& c : start_checks) j["start_checks"].push_back(check_json(c));
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& s : steps) {
    nlohmann::ordered_json x{{"id", s.id},
                             {"kind", s.kind},
                             {"label", s.label},
                             {"verdict", s.pass ? "PASS" : "FAIL"},
                             {"before", s.before},
                             {"after", s.after},
                             {"message", s.message}};
    x["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) x["checks"].push_back(check_json(c));
    j["steps"].push_back(x);
  }
  j["final"] = final_positions;
  j["target"] = target;
  j["final_match"] = final_match;
  j["final_detail"] = final_detail;
  j["notes"] = notes;
  j["summary"] = {{"axioms_used", axioms_used},
                  {"chi_only", chi_only},
                  {"steps", steps.size()},
                  {"result", pass ? "PASS" : "FAIL"}};
  return j.dump(2);
}

}  // namespace sod
