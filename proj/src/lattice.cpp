#include "sod/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace sod {

namespace {

IntMatrix identity(std::size_t n) {
  IntMatrix m(n, IntVec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  std::swap(m[a], m[b]);
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// row a += q * row b
void add_row(IntMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
  for (std::size_t j = 0; j < m[a].size(); ++j) m[a][j] += q * m[b][j];
}

void add_col(IntMatrix& m, std::size_t a, std::size_t b, const Integer& q) {
  for (auto& row : m) row[a] += q * row[b];
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
  SmithForm s;
  const std::size_t m = A.size();
  const std::size_t n = m ? A[0].size() : 0;
  s.D = A;
  s.U = identity(m);
  s.V = identity(n);
  IntMatrix& D = s.D;

  std::size_t t = 0;
  while (t < std::min(m, n)) {
    // smallest nonzero entry of the trailing block becomes the pivot
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (D[i][j] != 0 &&
            (!best || abs(D[i][j]) < abs(D[best->first][best->second])))
          best = {i, j};
    if (!best) break;
    swap_rows(D, t, best->first);
    swap_rows(s.U, t, best->first);
    swap_cols(D, t, best->second);
    swap_cols(s.V, t, best->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D[i][t] == 0) continue;
        Integer q = D[i][t] / D[t][t];
        add_row(D, i, t, -q);
        add_row(s.U, i, t, -q);
        if (D[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D[t][j] == 0) continue;
        Integer q = D[t][j] / D[t][t];
        add_col(D, j, t, -q);
        add_col(s.V, j, t, -q);
        if (D[t][j] != 0) clean = false;
      }
      if (!clean) {
        // a remainder is smaller than the pivot: bring it up and repeat
        for (std::size_t i = t + 1; i < m; ++i)
          if (D[i][t] != 0 && abs(D[i][t]) < abs(D[t][t])) {
            swap_rows(D, t, i);
            swap_rows(s.U, t, i);
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (D[t][j] != 0 && abs(D[t][j]) < abs(D[t][t])) {
            swap_cols(D, t, j);
            swap_cols(s.V, t, j);
          }
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            add_row(D, t, i, 1);
            add_row(s.U, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (D[t][t] < 0) {
      for (auto& x : D[t]) x = -x;
      for (auto& x : s.U[t]) x = -x;
    }
    ++t;
  }
  s.rank = t;
  return s;
}

Membership relation_membership(const std::vector<IntVec>& relations,
                               const IntVec& target) {
  Membership out;
  const std::size_t m = target.size(), n = relations.size();
  out.certificate.assign(n, 0);
  if (std::all_of(target.begin(), target.end(),
                  [](const Integer& x) { return x == 0; })) {
    out.member = true;
    return out;
  }
  if (n == 0) return out;
  IntMatrix A(m, IntVec(n));
  for (std::size_t j = 0; j < n; ++j) {
    if (relations[j].size() != m)
      throw std::invalid_argument("relation_membership: length mismatch");
    for (std::size_t i = 0; i < m; ++i) A[i][j] = relations[j][i];
  }
  SmithForm s = smith_normal_form(A);
  IntVec y(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) y[i] += s.U[i][k] * target[k];
  IntVec z(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < s.rank) {
      if (y[i] % s.D[i][i] != 0) return out;
      z[i] = y[i] / s.D[i][i];
    } else if (y[i] != 0) {
      return out;
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) out.certificate[j] += s.V[j][k] * z[k];
  for (std::size_t i = 0; i < m; ++i) {
    Integer sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += A[i][j] * out.certificate[j];
    if (sum != target[i])
      throw std::logic_error("relation_membership: certificate check failed");
  }
  out.member = true;
  return out;
}

std::optional<std::vector<Rational>> rational_solve(
    const std::vector<std::vector<Rational>>& columns,
    const std::vector<Rational>& target) {
  const std::size_t n = columns.size(), m = target.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = columns[j].at(i);
    a[i][n] = target[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t p = row;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col] / a[row][col];
      for (std::size_t j = col; j <= n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (a[i][n] != 0) return std::nullopt;
  std::vector<Rational> x(n);
  for (std::size_t r = 0; r < pivot_col.size(); ++r)
    x[pivot_col[r]] = a[r][n] / a[r][pivot_col[r]];
  return x;
}

// --- KClass ----------------------------------------------------------------

bool KClass::is_zero() const {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

KClass& KClass::operator+=(const KClass& o) {
  if (o.v.size() != v.size()) throw std::invalid_argument("KClass rank mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  name.clear();
  return *this;
}

KClass& KClass::operator-=(const KClass& o) {
  if (o.v.size() != v.size()) throw std::invalid_argument("KClass rank mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  name.clear();
  return *this;
}

KClass operator*(const Integer& s, KClass a) {
  for (auto& x : a.v) x *= s;
  a.name.clear();
  return a;
}

KClass KClass::operator-() const { return Integer(-1) * *this; }

// --- KLattice --------------------------------------------------------------

KLattice::KLattice(std::string name, Backend backend,
                   std::vector<std::string> labels)
    : name_(std::move(name)),
      backend_(backend),
      labels_(std::move(labels)),
      gram_(labels_.size(),
            std::vector<std::optional<Integer>>(labels_.size())),
      tags_(labels_.size(), std::vector<std::string>(labels_.size())) {}

KLattice KLattice::ambient(std::string name,
                           std::shared_ptr<const ChowRing> ring,
                           std::vector<std::string> labels,
                           std::vector<ChowClass> basis_ch) {
  if (labels.size() != basis_ch.size())
    throw std::invalid_argument("KLattice::ambient: labels/basis mismatch");
  KLattice lat(std::move(name), Backend::Ambient, std::move(labels));
  for (std::size_t i = 0; i < basis_ch.size(); ++i)
    for (std::size_t j = 0; j < basis_ch.size(); ++j)
      lat.set_pairing(i, j, euler_pairing(*ring, basis_ch[i], basis_ch[j]),
                      "HRR");
  lat.ring_ = std::move(ring);
  lat.basis_ch_ = std::move(basis_ch);
  return lat;
}

std::optional<std::size_t> KLattice::find(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t KLattice::index(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw std::invalid_argument("no generator '" + label + "' in lattice " +
                              name_);
}

KClass KLattice::basis(std::size_t i) const {
  KClass c = zero();
  c.v.at(i) = 1;
  c.name = labels_[i];
  return c;
}

void KLattice::set_pairing(std::size_t i, std::size_t j, const Integer& value,
                           std::string tag) {
  gram_.at(i).at(j) = value;
  tags_[i][j] = std::move(tag);
}

std::optional<Integer> KLattice::entry(std::size_t i, std::size_t j) const {
  return gram_.at(i).at(j);
}

const std::string& KLattice::entry_tag(std::size_t i, std::size_t j) const {
  return tags_.at(i).at(j);
}

std::optional<Integer> KLattice::chi(const KClass& a, const KClass& b) const {
  if (a.v.size() != rank() || b.v.size() != rank())
    throw std::invalid_argument("chi: class does not belong to " + name_);
  Integer sum = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a.v[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (b.v[j] == 0) continue;
      if (!gram_[i][j]) return std::nullopt;
      sum += a.v[i] * b.v[j] * *gram_[i][j];
    }
  }
  return sum;
}

Integer KLattice::chi_or_throw(const KClass& a, const KClass& b) const {
  if (auto x = chi(a, b)) return *x;
  throw UnknownPairing("pairing chi(" + format(a) + ", " + format(b) +
                       ") not available in " + name_);
}

std::vector<std::string> KLattice::chi_tags(const KClass& a,
                                            const KClass& b) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a.v[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j)
      if (b.v[j] != 0 && gram_[i][j] &&
          std::find(out.begin(), out.end(), tags_[i][j]) == out.end())
        out.push_back(tags_[i][j]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void KLattice::add_relation(IntVec r) {
  if (r.size() != rank()) throw std::invalid_argument("relation length");
  relations_.push_back(std::move(r));
}

bool KLattice::equal(const KClass& a, const KClass& b) const {
  KClass d = a - b;
  if (d.is_zero()) return true;
  return relation_membership(relations_, d.v).member;
}

bool KLattice::equal_up_to_sign(const KClass& a, const KClass& b) const {
  return equal(a, b) || equal(a, -b);
}

void KLattice::set_operator(const std::string& name, IntMatrix m,
                            std::vector<bool> domain) {
  if (m.size() != rank()) throw std::invalid_argument("operator size");
  if (domain.empty()) domain.assign(rank(), true);
  operators_[name] = std::move(m);
  domains_[name] = std::move(domain);
}

bool KLattice::has_operator(const std::string& name) const {
  return operators_.count(name) > 0;
}

KClass KLattice::apply(const std::string& name, const KClass& c) const {
  auto it = operators_.find(name);
  if (it == operators_.end())
    throw std::invalid_argument("no operator '" + name + "' on " + name_);
  const auto& domain = domains_.at(name);
  for (std::size_t j = 0; j < rank(); ++j)
    if (c.v[j] != 0 && !domain[j])
      throw std::invalid_argument("operator '" + name + "' undefined on [" +
                                  labels_[j] + "]");
  KClass out = zero();
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j)
      if (c.v[j] != 0 && it->second[i][j] != 0)
        out.v[i] += it->second[i][j] * c.v[j];
  return out;
}

const ChowRing& KLattice::ring() const {
  if (!ring_) throw std::logic_error(name_ + " has no Chow ring");
  return *ring_;
}

KClass KLattice::from_ch(const ChowClass& ch, std::string name) const {
  std::vector<std::vector<Rational>> cols;
  for (const auto& b : basis_ch_) cols.push_back(b.coeffs());
  auto x = rational_solve(cols, ch.coeffs());
  if (!x) throw std::invalid_argument("class not in the span of " + name_);
  KClass out = zero();
  for (std::size_t i = 0; i < rank(); ++i) {
    Rational r = (*x)[i];
    r.canonicalize();
    if (r.get_den() != 1)
      throw std::invalid_argument("class is not integral in " + name_);
    out.v[i] = r.get_num();
  }
  out.name = std::move(name);
  return out;
}

ChowClass KLattice::to_ch(const KClass& c) const {
  ChowClass out = ring().zero();
  for (std::size_t i = 0; i < rank(); ++i)
    if (c.v[i] != 0) out += Rational(c.v[i]) * basis_ch_[i];
  return out;
}

IntMatrix KLattice::multiplication_matrix(const ChowClass& ch) const {
  IntMatrix m(rank(), IntVec(rank()));
  for (std::size_t j = 0; j < rank(); ++j) {
    KClass col = from_ch(ring().mul(basis_ch_[j], ch));
    for (std::size_t i = 0; i < rank(); ++i) m[i][j] = col.v[i];
  }
  return m;
}

std::string KLattice::format(const KClass& c) const {
  if (!c.name.empty()) return c.name;
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c.v.size(); ++i) {
    const Integer& x = c.v[i];
    if (x == 0) continue;
    if (first) {
      if (x < 0) os << '-';
    } else {
      os << (x < 0 ? " - " : " + ");
    }
    first = false;
    Integer ax = abs(x);
    if (ax != 1) os << ax.get_str() << '*';
    os << '[' << (i < labels_.size() ? labels_[i] : "?") << ']';
  }
  if (first) os << '0';
  return os.str();
}

// --- collections -------------------------------------------------------------

Position Position::single(KClass c) {
  Position p;
  p.name = c.name;
  p.members.push_back(std::move(c));
  return p;
}

Position Position::family(std::string name, std::vector<KClass> members) {
  Position p;
  p.name = std::move(name);
  p.members = std::move(members);
  return p;
}

Position Position::block(std::string name, std::string annotation) {
  Position p;
  p.kind = Kind::Block;
  p.name = std::move(name);
  p.annotation = std::move(annotation);
  return p;
}

std::string Position::label() const {
  if (is_block()) return "[" + name + "]";
  if (members.size() == 1 && name == members[0].name) return name;
  return "{" + name + "}";
}

bool Collection::has_blocks() const {
  return std::any_of(positions.begin(), positions.end(),
                     [](const Position& p) { return p.is_block(); });
}

std::vector<KClass> Collection::explicit_classes() const {
  std::vector<KClass> out;
  for (const auto& p : positions)
    if (!p.is_block()) out.insert(out.end(), p.members.begin(), p.members.end());
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Exceptional: return "exceptional";
    case Verdict::NotExceptional: return "not exceptional";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

GramResult gram(const KLattice& lattice, const Collection& c) {
  GramResult r;
  r.qualified = c.has_blocks();
  std::vector<KClass> classes;
  std::vector<std::size_t> family_of;
  for (std::size_t p = 0; p < c.positions.size(); ++p) {
    const auto& pos = c.positions[p];
    if (pos.is_block()) continue;
    for (const auto& m : pos.members) {
      classes.push_back(m);
      family_of.push_back(p);
      r.labels.push_back(lattice.format(m));
    }
  }
  const std::size_t n = classes.size();
  r.matrix.assign(n, std::vector<std::optional<Integer>>(n));
  bool unknown = false, bad = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      r.matrix[i][j] = lattice.chi(classes[i], classes[j]);
      const bool must_vanish =
          i > j || (i < j && family_of[i] == family_of[j]);
      if (!r.matrix[i][j]) {
        if (i == j || must_vanish) unknown = true;
        continue;
      }
      if (i == j && *r.matrix[i][j] != 1) bad = true;
      if (must_vanish && *r.matrix[i][j] != 0) bad = true;
    }
  r.verdict = bad       ? Verdict::NotExceptional
              : unknown ? Verdict::Undetermined
                        : Verdict::Exceptional;
  return r;
}

bool is_exceptional(const KLattice& lattice, const KClass& e) {
  auto x = lattice.chi(e, e);
  return x && *x == 1;
}

namespace {

void require_exceptional(const KLattice& lattice, const KClass& e) {
  if (!is_exceptional(lattice, e))
    throw std::invalid_argument("mutation through non-exceptional class " +
                                lattice.format(e));
}

}  // namespace

KClass mutate_left(const KLattice& lattice, const KClass& e, const KClass& f) {
  require_exceptional(lattice, e);
  return f - lattice.chi_or_throw(e, f) * e;
}

KClass mutate_right(const KLattice& lattice, const KClass& e, const KClass& f) {
  require_exceptional(lattice, e);
  return f - lattice.chi_or_throw(f, e) * e;
}

KClass mutate_left(const KLattice& lattice, const std::vector<KClass>& family,
                   const KClass& f) {
  KClass out = f;
  for (const auto& e : family) {
    require_exceptional(lattice, e);
    out -= lattice.chi_or_throw(e, f) * e;
  }
  return out;
}

KClass mutate_right(const KLattice& lattice, const std::vector<KClass>& family,
                    const KClass& f) {
  KClass out = f;
  for (const auto& e : family) {
    require_exceptional(lattice, e);
    out -= lattice.chi_or_throw(f, e) * e;
  }
  return out;
}

KClass serre_translate(const KLattice& lattice, const KClass& c, Direction d) {
  const std::string op = d == Direction::Left ? "omega" : "omega^-1";
  if (!lattice.has_operator(op))
    throw std::invalid_argument("no canonical class registered on " +
                                lattice.name());
  return lattice.apply(op, c);
}

Position serre_translate(const KLattice& lattice, const Position& p,
                         Direction d) {
  Position out = p;
  if (p.is_block()) {
    const std::string t = d == Direction::Left ? "T(omega)" : "T(omega^-1)";
    out.annotation = p.annotation.empty() ? t : t + " o " + p.annotation;
    return out;
  }
  for (auto& m : out.members) m = serre_translate(lattice, m, d);
  return out;
}

Collection swap_positions(const Collection& c, std::size_t i) {
  if (i + 1 >= c.positions.size())
    throw std::out_of_range("swap_positions: index out of range");
  Collection out = c;
  std::swap(out.positions[i], out.positions[i + 1]);
  return out;
}

}  // namespace sod
