#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sod/catalog.hpp"

namespace sod {

/// Evidence a step asks for.
///   require ext(A, B) = C[-1]     graded Ext through the oracle
///   require axiom <id>            an imported statement from the registry
///   require certificate fs        the Euler-identity certificate
struct Requirement {
  enum class Kind { Ext, Axiom, Certificate };
  Kind kind = Kind::Ext;
  std::string a, b;                    // Ext
  std::optional<GradedSpace> value;    // Ext
  std::string id;                      // Axiom / Certificate
  std::string text;                    // as written
};

struct Step {
  std::string id;
  std::string kind;  // mutate_left mutate_right serre_translate swap_orthogonal
                     // twist_all insert_block identify
  std::size_t index = 0;  // 1-based position
  std::size_t count = 1;  // positions passed / translated
  std::string direction;  // serre_translate: left | right
  std::string line;       // twist_all
  std::string as;         // new block name or identification
  std::vector<std::string> positions;  // insert_block
  std::string label;             // free text after '#'
  std::vector<Requirement> requires_;
};

struct Scenario {
  std::string name;
  std::string variety;
  std::string description;
  std::vector<std::string> assumptions;  // axiom ids justifying the start
  std::vector<std::string> start;
  std::vector<Step> steps;
  std::vector<std::string> target;
  std::vector<std::string> notes;
};

/// Text grammar (one directive per line, '#' starts a comment):
///
///   scenario <name>
///   variety <name>
///   describe <text>
///   assume <axiom-id>
///   start <position> ; <position> ; ...
///   step <id> <kind> <arguments> [# label]
///     require ext(<label>, <label>) = <graded>
///     require axiom <id>
///     require certificate fs
///   target <position> ; ...
///   note <text>
///
/// Positions: a label ("O(-h)", shifts as "O(-e_1)[1]"), a family
/// "{O_E_i(-1)}" over i = 1..N, or an abstract block "[Psi0(D(S))]".
/// Step arguments by kind:
///   mutate_left <i> [<count>] [as <block>]     P_i moves left past count
///   mutate_right <i> [<count>] [as <block>]    P_i moves right past count
///   serre_translate left|right <count> [as <block>]
///   swap_orthogonal <i>                        exchange P_i and P_i+1
///   twist_all <line> [as <block>]
///   insert_block <i> = <position> ; ...        expand the block P_i
///   identify <i> as <position>
/// Graded values: 0, C, C^4, C[-1], C^2[-3] + C, ... (C[-k] sits in degree k).
Scenario parse_scenario(const std::string& text);
Scenario scenario_from_json(const std::string& json_text);
std::string scenario_to_json(const Scenario& s);
/// By extension: ".json" as JSON, anything else as text.
Scenario load_scenario(const std::string& path);

GradedSpace parse_graded(const std::string& text);
std::string format_graded(const GradedSpace& g);

struct Check {
  std::string statement;
  std::string tag;     // BBW RULE AXIOM CHI-ONLY UNCHECKED LATTICE CERTIFICATE
  std::string status;  // PROVED ASSUMED CHI-ONLY FAILED UNCHECKED
  std::string detail;
};

struct StepRecord {
  std::string id;
  std::string kind;
  std::string label;
  std::vector<Check> checks;
  std::vector<std::string> before, after;
  bool pass = true;
  std::string message;
};

struct Transcript {
  std::string scenario;
  std::string variety;
  std::vector<Check> start_checks;
  std::vector<StepRecord> steps;
  std::vector<std::string> final_positions;
  std::vector<std::string> target;
  bool final_match = true;
  std::vector<std::string> final_detail;
  std::vector<std::string> axioms_used;
  std::vector<std::string> chi_only;
  std::vector<std::string> notes;
  bool pass = true;

  std::string text() const;
  std::string json() const;
};

struct ReplayOptions {
  bool strict = false;  // CHI-ONLY evidence fails
};

/// Thrown for malformed scenarios (exit status 2 in the command line tool).
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Transcript run_scenario(const Catalog& catalog, const Scenario& scenario,
                        const ReplayOptions& options = {});

/// Formal K-group certificate for the plane identification: the four
/// exact-sequence relations imply the Euler identity; `drop` removes the
/// named relations (ppsk, ppsu, ipf, ips) for leave-one-out runs.
Transcript check_prop_fs(const Catalog& catalog,
                         const std::vector<std::string>& drop = {});

}  // namespace sod
