#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sod/bbw.hpp"
#include "sod/chow.hpp"
#include "sod/lattice.hpp"

namespace sod {

enum class Evidence { BBW, RULE, AXIOM, CHI_ONLY, UNKNOWN };
std::string to_string(Evidence e);

/// An imported statement, used only where a transcript says so.
struct Axiom {
  std::string id;
  std::string kind;  // "ext" | "identification" | "block" | "decomposition"
  std::string statement;
  std::string anchor;
  // kind == "ext": Ext^*(a, b) = value on `variety`
  std::string variety, a, b;
  std::optional<GradedSpace> value;
};

/// O(a h + sum_i b_i e_i) on a blowup of points.
struct LineOnBlowup {
  int a = 0;
  std::vector<int> b;
  bool operator==(const LineOnBlowup&) const = default;
};
/// O_{E_i}(j): E_i = P^2 exceptional divisor of Y.
struct DivisorSheaf {
  int i = 0, j = 0;
};
/// O_{Q_i}(x, y): Q_i = P^1 x P^1 exceptional divisor of X'.
struct QuadricSheaf {
  int i = 0, x = 0, y = 0;
};
/// O_{Sigma_i}(j): Sigma_i = P^2 plane in M, with O_Sigma(1) = O(g)|Sigma.
struct PlaneSheaf {
  int i = 0, j = 0;
};

using Realization = std::variant<std::monostate, EquivariantBundle, LineOnBlowup,
                                 DivisorSheaf, QuadricSheaf, PlaneSheaf>;

struct ResolvedObject {
  std::string label;
  KClass cls;
  Realization realization;
};

struct ExtAnswer {
  std::optional<GradedSpace> value;
  Evidence tag = Evidence::UNKNOWN;
  std::optional<Integer> chi;
  std::string method;
  std::vector<std::string> axioms;

  std::string str() const;
};

class Variety {
 public:
  Variety(std::string name, int dim) : name_(std::move(name)), dim_(dim) {}
  virtual ~Variety() = default;

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const KLattice& lattice() const { return *lattice_; }
  const std::string& canonical_class() const { return canonical_; }
  /// Number of members of indexed families (exceptional divisors, planes).
  int family_size() const { return family_size_; }
  const std::vector<std::pair<std::string, std::string>>& named_objects() const {
    return named_;
  }

  virtual ResolvedObject resolve(const std::string& label) const = 0;
  /// Expand an "_i" family label into its members; plain labels give one.
  std::vector<ResolvedObject> resolve_family(const std::string& label) const;
  /// Strategy-specific graded computation (BBW or RULE); UNKNOWN otherwise.
  virtual ExtAnswer graded_ext(const ResolvedObject& a,
                               const ResolvedObject& b) const = 0;
  /// Label of label (x) O(line), e.g. ("O(-2g)", "g+h") -> "O(-g+h)"; works
  /// on "_i" family patterns. Shift suffixes are not handled here.
  virtual std::string twist_label(const std::string& label,
                                  const std::string& line) const;
  /// Catalog listing of the Koszul data, if any.
  virtual std::vector<std::pair<std::string, std::string>> koszul_data() const {
    return {};
  }

 protected:
  std::string name_;
  int dim_;
  std::string canonical_;
  int family_size_ = 0;
  std::shared_ptr<KLattice> lattice_;
  std::vector<std::pair<std::string, std::string>> named_;
};

class Catalog {
 public:
  explicit Catalog(int nodes = 10);

  int nodes() const { return nodes_; }
  const Variety& variety(const std::string& name) const;
  std::vector<std::string> variety_names() const;
  const std::vector<Axiom>& axioms() const { return axioms_; }
  const Axiom& axiom(const std::string& id) const;
  /// Add an axiom, replacing one with the same id.
  void register_axiom(Axiom a);
  std::optional<Axiom> find_ext_axiom(const std::string& variety,
                                      const std::string& a,
                                      const std::string& b) const;

  /// Machine-readable listing (JSON text) or plain text.
  std::string listing(bool json) const;

 private:
  int nodes_;
  std::map<std::string, std::shared_ptr<Variety>> varieties_;
  std::vector<Axiom> axioms_;
};

/// Strategy order: graded (BBW/Koszul or rule table), axiom registry,
/// chi-only from the lattice pairing, UNKNOWN.
ExtAnswer ext_oracle(const Catalog& catalog, const Variety& v,
                     const ResolvedObject& a, const ResolvedObject& b);
ExtAnswer ext_oracle(const Catalog& catalog, const std::string& variety,
                     const std::string& a, const std::string& b);

/// Koszul resolution of O_M on Gr(2,V) x P(W), M = zeros of S^2U^* (x) O(h).
TermComplex koszul_m();
/// Resolution of O_S on Gr(2,V) from the pushforward along Gr(2,W).
TermComplex koszul_s();
/// Koszul resolution of O_{S~} on Gr(2,V) x Gr(2,W), transcribed.
TermComplex koszul_s_tilde();
/// Koszul resolution of Gr(2,3) in Gr(2,4).
TermComplex koszul_plane();
/// H^*(Sigma, E|Sigma (x) O(j)) for E on Gr(2,4) via koszul_plane.
HyperResult plane_cohomology(const EquivariantBundle& gr24_bundle, int j);

/// Line bundle cohomology on the blowup of P^3 at N points; nullopt when
/// the exact-sequence recursion cannot decide a connecting map.
std::optional<GradedSpace> blowup_line_cohomology(const LineOnBlowup& d);

struct DoubleCoverReport {
  Verdict verdict = Verdict::Undetermined;
  std::vector<std::string> doubled_labels;
  std::size_t pairs_checked = 0;
  std::size_t identity_failures = 0;
  std::vector<std::string> notes;
  bool pass() const {
    return verdict == Verdict::Exceptional && identity_failures == 0;
  }
};

/// Base "P3" (collection of O(k h) labels, H = 2h) or "Y" (labels on Y,
/// H = 2h - sum e_i). Checks the doubled collection E(-H)..., E... for
/// exceptionality and the induced pairing identity on the double cover
/// against an independent Chow-ring computation of the cover.
DoubleCoverReport double_cover_check(const Catalog& catalog,
                                     const std::string& base,
                                     const std::vector<std::string>& labels);

}  // namespace sod
