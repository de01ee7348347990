#include "sod/weights.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace sod {

bool Weight::dominant() const {
  for (std::size_t i = 0; i + 1 < entries_.size(); ++i)
    if (entries_[i] < entries_[i + 1]) return false;
  return true;
}

bool Weight::is_determinant_power() const {
  return std::adjacent_find(entries_.begin(), entries_.end(),
                            std::not_equal_to<>()) == entries_.end();
}

Weight Weight::operator+(const Weight& other) const {
  if (other.size() != size())
    throw std::invalid_argument("weight length mismatch: " + str() + " + " +
                                other.str());
  Weight out = *this;
  for (std::size_t i = 0; i < size(); ++i) out.entries_[i] += other[i];
  return out;
}

Weight Weight::shifted(int amount) const {
  Weight out = *this;
  for (auto& e : out.entries_) e += amount;
  return out;
}

Weight Weight::concat(const Weight& tail) const {
  Weight out = *this;
  out.entries_.insert(out.entries_.end(), tail.entries_.begin(),
                      tail.entries_.end());
  return out;
}

std::string Weight::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << entries_[i];
  }
  os << ')';
  return os.str();
}

void WeightSum::add(const Weight& w, long multiplicity) {
  if (multiplicity == 0) return;
  long& m = terms_[w];
  m += multiplicity;
  if (m < 0)
    throw std::invalid_argument("negative multiplicity for " + w.str());
  if (m == 0) terms_.erase(w);
}

void WeightSum::add(const WeightSum& other, long scale) {
  for (const auto& [w, m] : other.terms_) add(w, m * scale);
}

long WeightSum::multiplicity(const Weight& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

std::string WeightSum::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, m] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (m != 1) os << m << '*';
    os << w.str();
  }
  return os.str();
}

Integer weyl_dim(std::size_t n, const Weight& w) {
  if (w.size() != n)
    throw std::invalid_argument("weyl_dim: weight " + w.str() +
                                " does not have length " + std::to_string(n));
  if (!w.dominant())
    throw std::invalid_argument("weyl_dim: weight " + w.str() +
                                " is not dominant");
  Integer num = 1, den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      num *= w[i] - w[j] + static_cast<int>(j - i);
      den *= static_cast<int>(j - i);
    }
  return num / den;
}

Integer weyl_dim(const Weight& w) { return weyl_dim(w.size(), w); }

Weight dualize(const Weight& w) {
  std::vector<int> out(w.entries().rbegin(), w.entries().rend());
  for (auto& e : out) e = -e;
  return Weight(std::move(out));
}

WeightSum tensor_rank2(const Weight& a, const Weight& b) {
  if (a.size() != 2 || b.size() != 2)
    throw std::invalid_argument("tensor_rank2: weights must have length 2");
  if (!a.dominant() || !b.dominant())
    throw std::invalid_argument("tensor_rank2: non-dominant input " + a.str() +
                                " or " + b.str());
  WeightSum out;
  const int top = std::min(a[0] - a[1], b[0] - b[1]);
  for (int i = 0; i <= top; ++i)
    out.add(Weight{a[0] + b[0] - i, a[1] + b[1] + i});
  return out;
}

WeightSum tensor_irreducible(const Weight& a, const Weight& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("tensor: rank mismatch " + a.str() + " vs " +
                                b.str());
  WeightSum out;
  if (a.empty()) {
    out.add(a);
    return out;
  }
  if (a.is_determinant_power() || b.is_determinant_power()) {
    if (!a.dominant() || !b.dominant())
      throw std::invalid_argument("tensor: non-dominant input");
    out.add(a + b);
    return out;
  }
  if (a.size() == 2) return tensor_rank2(a, b);
  throw std::invalid_argument("tensor: general Littlewood-Richardson for " +
                              a.str() + " x " + b.str() + " not supported");
}

Weight parse_weight(const std::string& text) {
  std::string cleaned;
  for (char c : text)
    cleaned += (c == '(' || c == ')' || c == '[' || c == ']' || c == ',')
                   ? ' '
                   : c;
  std::istringstream is(cleaned);
  std::vector<int> entries;
  int v;
  while (is >> v) entries.push_back(v);
  if (!is.eof()) throw std::invalid_argument("malformed weight: " + text);
  return Weight(std::move(entries));
}

}  // namespace sod
