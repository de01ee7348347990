#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sod/chow.hpp"
#include "sod/weights.hpp"

namespace sod {

using IntVec = std::vector<Integer>;
using IntMatrix = std::vector<IntVec>;  // row-major

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
struct SmithForm {
  IntMatrix D, U, V;
  std::size_t rank = 0;
};
SmithForm smith_normal_form(const IntMatrix& A);

struct Membership {
  bool member = false;
  IntVec certificate;  // target = sum_j certificate[j] * relations[j]
};
/// Is `target` in the Z-span of `relations` (all vectors of equal length)?
Membership relation_membership(const std::vector<IntVec>& relations,
                               const IntVec& target);

/// Solve sum_j x_j * columns[j] = target over Q; nullopt if not in the span.
std::optional<std::vector<Rational>> rational_solve(
    const std::vector<std::vector<Rational>>& columns,
    const std::vector<Rational>& target);

/// Thrown when a pairing entry needed by a computation is not registered.
struct UnknownPairing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct KClass {
  IntVec v;
  std::string name;

  KClass() = default;
  KClass(IntVec coords, std::string label = {})
      : v(std::move(coords)), name(std::move(label)) {}

  bool is_zero() const;
  KClass& operator+=(const KClass& o);
  KClass& operator-=(const KClass& o);
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  friend KClass operator*(const Integer& s, KClass a);
  KClass operator-() const;
  KClass named(std::string n) const { KClass c = *this; c.name = std::move(n); return c; }
};

/// Free abelian group on labelled generators with a partial Euler pairing,
/// a relation subgroup, and integer-matrix operators (twists, Serre).
class KLattice {
 public:
  enum class Backend { Ambient, Formal, Mixed };

  KLattice(std::string name, Backend backend, std::vector<std::string> labels);

  /// Ambient lattice: basis given by Chern characters; full Gram by HRR.
  static KLattice ambient(std::string name, std::shared_ptr<const ChowRing> ring,
                          std::vector<std::string> labels,
                          std::vector<ChowClass> basis_ch);

  const std::string& name() const { return name_; }
  Backend backend() const { return backend_; }
  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(const std::string& label) const;
  std::size_t index(const std::string& label) const;

  KClass zero() const { return KClass(IntVec(rank())); }
  KClass basis(std::size_t i) const;
  KClass basis(const std::string& label) const { return basis(index(label)); }

  void set_pairing(std::size_t i, std::size_t j, const Integer& value,
                   std::string tag);
  std::optional<Integer> entry(std::size_t i, std::size_t j) const;
  const std::string& entry_tag(std::size_t i, std::size_t j) const;
  /// chi(a, b); nullopt if a needed entry is missing.
  std::optional<Integer> chi(const KClass& a, const KClass& b) const;
  /// Like chi but throws UnknownPairing.
  Integer chi_or_throw(const KClass& a, const KClass& b) const;
  /// Provenance tags of the entries that chi(a,b) used.
  std::vector<std::string> chi_tags(const KClass& a, const KClass& b) const;

  void add_relation(IntVec r);
  const std::vector<IntVec>& relations() const { return relations_; }
  /// Equality in the quotient by the relations.
  bool equal(const KClass& a, const KClass& b) const;
  /// a == b or a == -b modulo relations.
  bool equal_up_to_sign(const KClass& a, const KClass& b) const;

  /// `domain` marks the generators the operator is defined on (all if empty);
  /// applying it to a class supported elsewhere throws.
  void set_operator(const std::string& name, IntMatrix m,
                    std::vector<bool> domain = {});
  bool has_operator(const std::string& name) const;
  /// Column convention: result = M * v.
  KClass apply(const std::string& name, const KClass& c) const;

  /// Ambient backend only.
  bool has_ring() const { return ring_ != nullptr; }
  const ChowRing& ring() const;
  const ChowClass& basis_ch(std::size_t i) const { return basis_ch_.at(i); }
  KClass from_ch(const ChowClass& ch, std::string name = {}) const;
  ChowClass to_ch(const KClass& c) const;
  /// Matrix of multiplication by a Chern character (e.g. a line bundle).
  IntMatrix multiplication_matrix(const ChowClass& ch) const;

  std::string format(const KClass& c) const;

 private:
  std::string name_;
  Backend backend_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::optional<Integer>>> gram_;
  std::vector<std::vector<std::string>> tags_;
  std::vector<IntVec> relations_;
  std::map<std::string, IntMatrix> operators_;
  std::map<std::string, std::vector<bool>> domains_;
  std::shared_ptr<const ChowRing> ring_;
  std::vector<ChowClass> basis_ch_;
};

/// One slot of a tracked decomposition: a completely orthogonal family of
/// explicit classes (a single class is a family of size one) or an opaque
/// abstract block.
struct Position {
  enum class Kind { Family, Block };
  Kind kind = Kind::Family;
  std::string name;
  std::vector<KClass> members;
  std::string annotation;  // blocks: functor/twist annotation

  static Position single(KClass c);
  static Position family(std::string name, std::vector<KClass> members);
  static Position block(std::string name, std::string annotation = {});
  bool is_block() const { return kind == Kind::Block; }
  std::string label() const;
};

struct Collection {
  std::vector<Position> positions;

  std::size_t size() const { return positions.size(); }
  bool has_blocks() const;
  std::vector<KClass> explicit_classes() const;
};

enum class Verdict { Exceptional, NotExceptional, Undetermined };
std::string to_string(Verdict v);

struct GramResult {
  std::vector<std::string> labels;
  std::vector<std::vector<std::optional<Integer>>> matrix;
  Verdict verdict = Verdict::Undetermined;
  bool qualified = false;  // abstract blocks were skipped
};

/// Gram matrix chi(E_i, E_j) of the explicit classes; exceptional iff
/// unitriangular and families are internally orthogonal.
GramResult gram(const KLattice& lattice, const Collection& c);

bool is_exceptional(const KLattice& lattice, const KClass& e);
/// [L_E F] = [F] - chi(E,F)[E].
KClass mutate_left(const KLattice& lattice, const KClass& e, const KClass& f);
/// [R_E F] = [F] - chi(F,E)[E].
KClass mutate_right(const KLattice& lattice, const KClass& e, const KClass& f);
/// Through a completely orthogonal family.
KClass mutate_left(const KLattice& lattice, const std::vector<KClass>& family,
                   const KClass& f);
KClass mutate_right(const KLattice& lattice, const std::vector<KClass>& family,
                    const KClass& f);

enum class Direction { Left, Right };
/// Left: tensor with omega; right: with omega^{-1}. Uses the operators
/// "omega" and "omega^-1" of the lattice.
KClass serre_translate(const KLattice& lattice, const KClass& c, Direction d);
Position serre_translate(const KLattice& lattice, const Position& p,
                         Direction d);

/// Exchange positions i and i+1 (certification is the caller's job).
Collection swap_positions(const Collection& c, std::size_t i);

}  // namespace sod
