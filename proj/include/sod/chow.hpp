#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sod/bbw.hpp"
#include "sod/weights.hpp"

namespace sod {

/// Rational coefficients over the basis of a ChowRing.
class ChowClass {
 public:
  ChowClass() = default;
  explicit ChowClass(std::size_t rank) : coeffs_(rank) {}
  explicit ChowClass(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t size() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  ChowClass& operator+=(const ChowClass& o);
  ChowClass& operator-=(const ChowClass& o);
  ChowClass& operator*=(const Rational& s);
  friend ChowClass operator+(ChowClass a, const ChowClass& b) { return a += b; }
  friend ChowClass operator-(ChowClass a, const ChowClass& b) { return a -= b; }
  friend ChowClass operator*(const Rational& s, ChowClass a) { return a *= s; }
  ChowClass operator-() const { return Rational(-1) * *this; }
  bool operator==(const ChowClass&) const = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Finite-rank graded commutative Q-algebra with a degree functional on the
/// top codimension: the rational Chow ring of a smooth projective variety,
/// plus its Todd class (and total Chern class when known).
class ChowRing {
 public:
  ChowRing(std::string name, int dim, std::vector<std::string> labels,
           std::vector<int> codims);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  int codim(std::size_t i) const { return codims_[i]; }
  std::size_t index(const std::string& label) const;

  /// Structure constants: basis[i] * basis[j] = product.
  void set_product(std::size_t i, std::size_t j, ChowClass product);
  void set_degree(std::size_t i, const Rational& d);

  ChowClass zero() const { return ChowClass(rank()); }
  ChowClass one() const;
  ChowClass basis(std::size_t i) const;
  ChowClass basis(const std::string& label) const { return basis(index(label)); }

  ChowClass mul(const ChowClass& a, const ChowClass& b) const;
  ChowClass pow(const ChowClass& a, int k) const;
  /// Part of codimension exactly k.
  ChowClass part(const ChowClass& a, int k) const;
  /// exp of a class; the codim-0 part must vanish.
  ChowClass exp(const ChowClass& a) const;
  /// Multiplicative inverse of a class with unit codim-0 part.
  ChowClass inverse(const ChowClass& a) const;
  /// ch(E) -> ch(E^*): sign (-1)^codim.
  ChowClass dual(const ChowClass& a) const;
  Rational degree(const ChowClass& a) const;

  /// Associativity and commutativity of the stored table; degree of a point.
  bool check_table() const;

  void set_todd(ChowClass td) { todd_ = std::move(td); }
  const ChowClass& todd() const { return todd_; }
  void set_chern(ChowClass c) { chern_ = std::move(c); }
  const std::optional<ChowClass>& chern() const { return chern_; }

  std::string format(const ChowClass& a) const;

 private:
  std::string name_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<int> codims_;
  std::vector<std::vector<ChowClass>> table_;
  std::vector<Rational> degree_;
  ChowClass todd_;
  std::optional<ChowClass> chern_;
};

/// Todd class from the Chern character of the tangent bundle.
ChowClass todd_from_ch(const ChowRing& ring, const ChowClass& ch_tangent);
/// Todd class from the total Chern class (dimension <= 3).
ChowClass todd_from_chern(const ChowRing& ring, const ChowClass& c);

/// Chow ring of Gr(k,n) in the Schubert basis (partitions in the k x (n-k)
/// box), structure constants from Pieri + Giambelli, together with the
/// Chern classes of U^* and (V/U)^* used for Chern characters.
struct GrassmannianRing {
  HomFactor factor;
  std::shared_ptr<const ChowRing> ring;
  std::vector<ChowClass> c_sub;   // c_i(U^*), i = 0..k
  std::vector<ChowClass> c_quot;  // c_j((V/U)^*), j = 0..n-k

  ChowClass chern_character(const FactorWeights& w) const;
};

GrassmannianRing grassmannian_ring(const HomFactor& f);

/// Partitions in the k x (n-k) box, in the basis order of grassmannian_ring.
std::vector<std::vector<int>> schubert_basis(int k, int n);
/// Pieri: sigma_lambda * sigma_j in the k x (n-k) box.
std::vector<std::vector<int>> pieri(const std::vector<int>& lambda, int j,
                                    int k, int n);

/// Tensor product of rings; basis index = i * b.rank() + j.
ChowRing product_ring(const ChowRing& a, const ChowRing& b);
ChowClass outer(const ChowRing& a, const ChowClass& x, const ChowRing& b,
                const ChowClass& y);

/// A product of catalog Grassmannians with its Chow ring and Todd class.
class HomogeneousVariety {
 public:
  explicit HomogeneousVariety(std::vector<HomFactor> factors);

  const std::vector<HomFactor>& factors() const { return factors_; }
  const ChowRing& ring() const { return *ring_; }
  std::shared_ptr<const ChowRing> ring_ptr() const { return ring_; }
  const GrassmannianRing& factor_ring(std::size_t i) const { return factor_rings_[i]; }

  ChowClass chern_character(const EquivariantBundle& bundle) const;
  /// Class of a factor-i class pulled back to the product.
  ChowClass pullback(std::size_t i, const ChowClass& x) const;

 private:
  std::vector<HomFactor> factors_;
  std::vector<GrassmannianRing> factor_rings_;
  std::shared_ptr<const ChowRing> ring_;
};

/// Thrown when Riemann-Roch produces a non-integer: an internal
/// consistency failure.
struct NonIntegralEuler : std::logic_error {
  using std::logic_error::logic_error;
};

/// chi = deg(ch * td); asserts integrality.
Integer chi(const ChowRing& ring, const ChowClass& ch);
/// chi(A, B) = deg(ch(A)^* ch(B) td).
Integer euler_pairing(const ChowRing& ring, const ChowClass& a,
                      const ChowClass& b);

/// Blowup of P^3 at N points: basis 1, h, e_i, h^2, e_i^2, pt. Chern class
/// c_1 = 4h - 2 sum e_i, with c_2 pinned by chi(O) = 1 and chi(O(-e_1)) = 0.
ChowRing blowup_ring(int points);
/// Chern classes of P^n (Chern-route Todd class); basis 1, h, ..., h^n.
ChowRing projective_ring(int n);
/// Double cover of `base` branched in a divisor of class 2H: same basis,
/// degree doubled, c(X) = c(Y)(1+H)/(1+2H), Todd class from Chern classes.
ChowRing double_cover_ring(const ChowRing& base, const ChowClass& half_branch);

}  // namespace sod
