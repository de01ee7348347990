#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sod {

using Integer = mpz_class;
using Rational = mpq_class;

/// Highest weight of a GL(n) (or product-group) representation.
///
/// Entries are stored exactly as given; dominance is a property that is
/// checked on demand, never assumed. Determinant twists are folded into the
/// entries, so (1,1) on GL(2) is det and (a,a)+(b,c) is (a+b, a+c).
class Weight {
 public:
  Weight() = default;
  Weight(std::initializer_list<int> entries) : entries_(entries) {}
  explicit Weight(std::vector<int> entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  /// Weakly decreasing.
  bool dominant() const;
  /// All entries equal: a power of the determinant.
  bool is_determinant_power() const;

  Weight operator+(const Weight& other) const;
  Weight shifted(int amount) const;
  Weight concat(const Weight& tail) const;

  std::string str() const;

  auto operator<=>(const Weight&) const = default;

 private:
  std::vector<int> entries_;
};

/// Multiset of weights with strictly positive multiplicities, kept in
/// canonical (lexicographic) order so equality is structural.
class WeightSum {
 public:
  WeightSum() = default;

  void add(const Weight& w, long multiplicity = 1);
  void add(const WeightSum& other, long scale = 1);

  const std::map<Weight, long>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  long multiplicity(const Weight& w) const;
  std::size_t distinct() const { return terms_.size(); }

  std::string str() const;

  bool operator==(const WeightSum&) const = default;

 private:
  std::map<Weight, long> terms_;
};

/// Weyl dimension formula for GL(n). Throws std::invalid_argument on a
/// non-dominant weight or a length mismatch.
Integer weyl_dim(std::size_t n, const Weight& w);
/// Same, using n = w.size().
Integer weyl_dim(const Weight& w);

/// (a_1..a_k) -> (-a_k..-a_1): the weight of the dual representation.
Weight dualize(const Weight& w);

/// Clebsch-Gordan for GL(2).
WeightSum tensor_rank2(const Weight& a, const Weight& b);

/// Tensor product of two GL(r) irreducibles for the cases this engine needs:
/// r <= 2, or either factor a determinant power.
WeightSum tensor_irreducible(const Weight& a, const Weight& b);

/// Parse "(1,0,-2)" / "1,0,-2" / "[1 0 -2]".
Weight parse_weight(const std::string& text);

}  // namespace sod
