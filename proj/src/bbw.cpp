#include "sod/bbw.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sod {

void GradedSpace::add(int degree, const Weight& w, long multiplicity,
                      const Integer& dim) {
  if (dim == 0) return;
  if (dim < 0) throw std::invalid_argument("negative graded dimension");
  dims_[degree] += dim;
  reps_[degree].add(w, multiplicity);
}

void GradedSpace::add_dim(int degree, const Integer& dim) {
  if (dim == 0) return;
  if (dim < 0) throw std::invalid_argument("negative graded dimension");
  dims_[degree] += dim;
}

void GradedSpace::add(const GradedSpace& other, int degree_shift) {
  for (const auto& [d, n] : other.dims_) dims_[d + degree_shift] += n;
  for (const auto& [d, r] : other.reps_) reps_[d + degree_shift].add(r);
}

Integer GradedSpace::dim(int degree) const {
  auto it = dims_.find(degree);
  return it == dims_.end() ? Integer(0) : it->second;
}

Integer GradedSpace::euler_characteristic() const {
  Integer chi = 0;
  for (const auto& [d, n] : dims_) chi += (d % 2 == 0) ? n : Integer(-n);
  return chi;
}

GradedSpace GradedSpace::shifted(int degree_shift) const {
  GradedSpace out;
  out.add(*this, degree_shift);
  return out;
}

GradedSpace GradedSpace::concentrated(int degree, const Integer& dim) {
  GradedSpace g;
  g.add_dim(degree, dim);
  return g;
}

std::string GradedSpace::str() const {
  if (dims_.empty()) return "zero in all degrees";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, n] : dims_) {
    if (!first) os << '\n';
    first = false;
    os << "degree " << d << ": dim " << n;
    auto it = reps_.find(d);
    if (it != reps_.end() && !it->second.empty())
      os << "  " << it->second.str();
  }
  return os.str();
}

namespace {

struct FactorCohomology {
  int degree;
  Weight highest;
  Integer dim;
};

std::optional<FactorCohomology> bbw_irreducible(const HomFactor& space,
                                                const FactorWeights& term) {
  if (static_cast<int>(term.sub.size()) != space.k ||
      static_cast<int>(term.quot.size()) != space.quotient_rank())
    throw std::invalid_argument("bbw: weight " + term.sub.str() + "|" +
                                term.quot.str() + " does not fit " +
                                space.name);
  if (!term.dominant())
    throw std::invalid_argument("bbw: bundle " + term.sub.str() + "|" +
                                term.quot.str() + " is not irreducible");
  const int n = space.n;
  std::vector<int> v = term.full().entries();
  for (int i = 0; i < n; ++i) v[i] += n - 1 - i;
  int inversions = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (v[i] == v[j]) return std::nullopt;
      if (v[i] < v[j]) ++inversions;
    }
  std::sort(v.begin(), v.end(), std::greater<>());
  for (int i = 0; i < n; ++i) v[i] -= n - 1 - i;
  Weight lambda(std::move(v));
  return FactorCohomology{inversions, lambda, weyl_dim(n, lambda)};
}

}  // namespace

GradedSpace bbw_factor(const HomFactor& space, const FactorWeights& term) {
  GradedSpace out;
  if (auto c = bbw_irreducible(space, term))
    out.add(c->degree, c->highest, 1, c->dim);
  return out;
}

GradedSpace bbw_product(std::span<const HomFactor> space,
                        const EquivariantBundle& bundle) {
  GradedSpace out;
  for (const auto& t : bundle.terms()) {
    if (t.parts.size() != space.size())
      throw std::invalid_argument("bbw_product: bundle has " +
                                  std::to_string(t.parts.size()) +
                                  " factors, space has " +
                                  std::to_string(space.size()));
    if (t.multiplicity < 0)
      throw std::invalid_argument("bbw_product: negative multiplicity");
    int degree = -t.shift;
    Weight label;
    for (const auto& c : t.coefficient) label = label.concat(c);
    Integer dim = t.multiplicity * t.coefficient_dim();
    bool vanishes = false;
    for (std::size_t i = 0; i < space.size() && !vanishes; ++i) {
      auto c = bbw_irreducible(space[i], t.parts[i]);
      if (!c) {
        vanishes = true;
        break;
      }
      degree += c->degree;
      label = label.concat(c->highest);
      dim *= c->dim;
    }
    if (!vanishes) out.add(degree, label, t.multiplicity, dim);
  }
  return out;
}

bool staircase_disjoint(const std::map<std::pair<int, int>, Integer>& table) {
  for (const auto& [a, da] : table) {
    if (da == 0) continue;
    for (const auto& [b, db] : table) {
      if (db == 0) continue;
      const int r = b.first - a.first;
      if (r >= 1 && b.second == a.second - r + 1) return false;
    }
  }
  return true;
}

PushforwardResult pushforward_complex(std::span<const HomFactor> space,
                                      const TermComplex& complex,
                                      std::span<const std::size_t> along) {
  std::set<std::size_t> pushed(along.begin(), along.end());
  for (auto i : pushed)
    if (i >= space.size())
      throw std::invalid_argument("pushforward: factor index out of range");
  PushforwardResult result;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (!pushed.count(i)) result.space.push_back(space[i]);

  for (const auto& [position, bundle] : complex) {
    for (const auto& t : bundle.terms()) {
      if (t.parts.size() != space.size())
        throw std::invalid_argument("pushforward: term does not fit space");
      int q = 0;
      Integer dim = 1;
      BundleTerm image;
      image.coefficient = t.coefficient;
      image.multiplicity = t.multiplicity;
      image.shift = t.shift;
      bool vanishes = false;
      for (std::size_t i = 0; i < space.size(); ++i) {
        if (!pushed.count(i)) {
          image.parts.push_back(t.parts[i]);
          continue;
        }
        auto c = bbw_irreducible(space[i], t.parts[i]);
        if (!c) {
          vanishes = true;
          break;
        }
        q += c->degree;
        dim *= c->dim;
        if (c->highest != Weight(std::vector<int>(space[i].n, 0)))
          image.coefficient.push_back(c->highest);
      }
      if (vanishes) continue;
      result.table[{position, q}] += dim * t.multiplicity;
      result.complex[position + q].add(image);
    }
  }
  result.determinate = staircase_disjoint(result.table);
  return result;
}

std::string HyperResult::str() const {
  if (!value) {
    std::ostringstream os;
    os << "indeterminate; E1 entries (position, degree):";
    for (const auto& [pq, d] : table)
      os << " (" << pq.first << ',' << pq.second << ")=" << d;
    return os.str();
  }
  return value->str();
}

HyperResult hypercohomology(std::span<const HomFactor> space,
                            const TermComplex& complex) {
  HyperResult result;
  GradedSpace total;
  for (const auto& [position, bundle] : complex) {
    GradedSpace g = bbw_product(space, bundle);
    for (const auto& [q, d] : g.dims()) result.table[{position, q}] += d;
    total.add(g, position);
  }
  if (staircase_disjoint(result.table)) result.value = std::move(total);
  return result;
}

TermComplex tensor_complex(const TermComplex& complex,
                           const EquivariantBundle& bundle) {
  TermComplex out;
  for (const auto& [p, b] : complex) {
    auto t = b.tensor(bundle);
    if (!t.empty()) out[p] = std::move(t);
  }
  return out;
}

std::map<int, Integer> term_ranks(std::span<const HomFactor> space,
                                  const TermComplex& complex) {
  std::map<int, Integer> out;
  for (const auto& [p, b] : complex) out[p] = b.rank(space);
  return out;
}

}  // namespace sod
