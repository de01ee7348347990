#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sod/weights.hpp"

namespace sod {

/// Grassmannian Gr(k,n) of k-dimensional subspaces, with a display tag.
/// Gr(1,n) is the projective space of lines.
struct HomFactor {
  int k = 1;
  int n = 2;
  std::string name;

  HomFactor() = default;
  HomFactor(int k_, int n_, std::string name_ = {});

  int dim() const { return k * (n - k); }
  int quotient_rank() const { return n - k; }
  bool operator==(const HomFactor& o) const { return k == o.k && n == o.n; }
};

/// Gr24, Gr23, P3, P2, P1 (and GrKN in general).
HomFactor parse_factor(const std::string& tag);
std::vector<HomFactor> parse_space(const std::string& text);

/// Weight data of an irreducible homogeneous bundle on one Grassmannian
/// factor: Sigma^sub U^* (x) Sigma^quot (V/U)^*.
struct FactorWeights {
  Weight sub;
  Weight quot;

  Weight full() const { return sub.concat(quot); }
  bool dominant() const { return sub.dominant() && quot.dominant(); }
  bool operator==(const FactorWeights&) const = default;
  auto operator<=>(const FactorWeights&) const = default;
};

/// Trivial weights on a factor.
FactorWeights trivial_weights(const HomFactor& f);
/// Line bundle O(a) (a-th power of the Pluecker bundle det U^*).
FactorWeights line_weights(const HomFactor& f, int a);

/// One box-tensor term: coefficient (x) F_1 [x] ... [x] F_m [shift].
/// The coefficient is an irreducible representation of an auxiliary product
/// of GL factors (e.g. W^* after a pushforward); empty means trivial.
struct BundleTerm {
  std::vector<FactorWeights> parts;
  std::vector<Weight> coefficient;
  long multiplicity = 1;
  int shift = 0;

  Integer coefficient_dim() const;
  bool operator==(const BundleTerm&) const = default;
  auto operator<=>(const BundleTerm&) const = default;
};

/// Formal sum of irreducible box-tensor terms on a product of factors.
class EquivariantBundle {
 public:
  EquivariantBundle() = default;
  explicit EquivariantBundle(std::vector<BundleTerm> terms);

  static EquivariantBundle structure_sheaf(std::span<const HomFactor> space);
  static EquivariantBundle irreducible(std::vector<FactorWeights> parts,
                                       long multiplicity = 1);

  const std::vector<BundleTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  void add(BundleTerm term);
  void add(const EquivariantBundle& other);

  /// Rank on the given space (counts coefficient dimensions too).
  Integer rank(std::span<const HomFactor> space) const;

  EquivariantBundle dual() const;
  /// Twist every term by line bundles O(twists[i]) on factor i.
  EquivariantBundle twisted(std::span<const int> twists) const;
  /// Tensor product, canonicalized into irreducible terms.
  EquivariantBundle tensor(const EquivariantBundle& other) const;

  /// Merge equal terms and sort.
  void canonicalize();

  std::string str(std::span<const HomFactor> space) const;

  bool operator==(const EquivariantBundle&) const = default;

 private:
  std::vector<BundleTerm> terms_;
};

/// Bundle notation on a product space. Factors are separated by " x ";
/// each factor piece is an optional "k*" multiplicity, a base name
/// (O, U, U*, S<k>U, S<k>U*, Q, Q*, V/U, U^perp, or an explicit weight
/// "[a,b|c,d]") and an optional twist "(-g)", "(2)", "(-1h)".
EquivariantBundle parse_bundle(std::span<const HomFactor> space,
                               const std::string& text);

/// Cohomology: degree -> representation content and dimension.
class GradedSpace {
 public:
  void add(int degree, const Weight& w, long multiplicity, const Integer& dim);
  void add_dim(int degree, const Integer& dim);
  void add(const GradedSpace& other, int degree_shift = 0);

  bool is_zero() const { return dims_.empty(); }
  Integer dim(int degree) const;
  const std::map<int, Integer>& dims() const { return dims_; }
  const std::map<int, WeightSum>& reps() const { return reps_; }
  Integer euler_characteristic() const;
  GradedSpace shifted(int degree_shift) const;

  /// "degree 2: dim 1" lines; "0" when zero.
  std::string str() const;

  bool operator==(const GradedSpace& o) const { return dims_ == o.dims_; }

  static GradedSpace concentrated(int degree, const Integer& dim);

 private:
  std::map<int, Integer> dims_;
  std::map<int, WeightSum> reps_;
};

/// Bounded complex of equivariant bundles indexed by cohomological position
/// (the resolved sheaf sits to the right of position 0).
using TermComplex = std::map<int, EquivariantBundle>;

/// Borel-Bott-Weil on a single Grassmannian.
GradedSpace bbw_factor(const HomFactor& space, const FactorWeights& term);
/// Kuenneth over a product, summed over terms with their shifts.
GradedSpace bbw_product(std::span<const HomFactor> space,
                        const EquivariantBundle& bundle);

/// Nonzero E1 positions (p, q) and a staircase check: true when no
/// differential d_r: (p,q) -> (p+r, q-r+1), r >= 1, connects two entries.
bool staircase_disjoint(const std::map<std::pair<int, int>, Integer>& table);

struct PushforwardResult {
  std::vector<HomFactor> space;  // remaining factors
  TermComplex complex;
  bool determinate = true;
  std::map<std::pair<int, int>, Integer> table;  // (position, degree) -> dim
};

/// Termwise pushforward along the factors listed in `along`.
PushforwardResult pushforward_complex(std::span<const HomFactor> space,
                                      const TermComplex& complex,
                                      std::span<const std::size_t> along);

struct HyperResult {
  std::optional<GradedSpace> value;  // empty when indeterminate
  std::map<std::pair<int, int>, Integer> table;
  bool determinate() const { return value.has_value(); }
  std::string str() const;
};

/// Hypercohomology of a bounded complex of equivariant bundles.
HyperResult hypercohomology(std::span<const HomFactor> space,
                            const TermComplex& complex);

/// Complex (x) bundle, termwise.
TermComplex tensor_complex(const TermComplex& complex,
                           const EquivariantBundle& bundle);

/// Rank of each term.
std::map<int, Integer> term_ranks(std::span<const HomFactor> space,
                                  const TermComplex& complex);

}  // namespace sod
