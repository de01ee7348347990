#include "sod/chow.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sod {

bool ChowClass::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Rational& r) { return r == 0; });
}

ChowClass& ChowClass::operator+=(const ChowClass& o) {
  if (coeffs_.empty()) coeffs_.resize(o.size());
  if (o.size() != size()) throw std::invalid_argument("ChowClass rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] += o[i];
  return *this;
}

ChowClass& ChowClass::operator-=(const ChowClass& o) {
  if (coeffs_.empty()) coeffs_.resize(o.size());
  if (o.size() != size()) throw std::invalid_argument("ChowClass rank mismatch");
  for (std::size_t i = 0; i < size(); ++i) coeffs_[i] -= o[i];
  return *this;
}

ChowClass& ChowClass::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

ChowRing::ChowRing(std::string name, int dim, std::vector<std::string> labels,
                   std::vector<int> codims)
    : name_(std::move(name)),
      dim_(dim),
      labels_(std::move(labels)),
      codims_(std::move(codims)),
      table_(labels_.size(),
             std::vector<ChowClass>(labels_.size(), ChowClass(labels_.size()))),
      degree_(labels_.size()),
      todd_(labels_.size()) {
  if (labels_.size() != codims_.size())
    throw std::invalid_argument("ChowRing: labels/codims mismatch");
}

std::size_t ChowRing::index(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw std::invalid_argument("no basis class '" + label + "' in " + name_);
  return static_cast<std::size_t>(it - labels_.begin());
}

void ChowRing::set_product(std::size_t i, std::size_t j, ChowClass product) {
  if (product.size() != rank())
    throw std::invalid_argument("set_product: rank mismatch");
  table_[i][j] = product;
  table_[j][i] = std::move(product);
}

void ChowRing::set_degree(std::size_t i, const Rational& d) { degree_[i] = d; }

ChowClass ChowRing::one() const {
  for (std::size_t i = 0; i < rank(); ++i)
    if (codims_[i] == 0) return basis(i);
  throw std::logic_error("ChowRing without unit");
}

ChowClass ChowRing::basis(std::size_t i) const {
  ChowClass c(rank());
  c[i] = 1;
  return c;
}

ChowClass ChowRing::mul(const ChowClass& a, const ChowClass& b) const {
  ChowClass out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j) {
      if (b[j] == 0 || codims_[i] + codims_[j] > dim_) continue;
      const Rational s = a[i] * b[j];
      const ChowClass& t = table_[i][j];
      for (std::size_t k = 0; k < rank(); ++k)
        if (t[k] != 0) out[k] += s * t[k];
    }
  }
  return out;
}

ChowClass ChowRing::pow(const ChowClass& a, int k) const {
  ChowClass out = one();
  for (int i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

ChowClass ChowRing::part(const ChowClass& a, int k) const {
  ChowClass out(rank());
  for (std::size_t i = 0; i < rank(); ++i)
    if (codims_[i] == k) out[i] = a[i];
  return out;
}

ChowClass ChowRing::exp(const ChowClass& a) const {
  if (!part(a, 0).is_zero())
    throw std::invalid_argument("exp: class has a codimension-0 part");
  ChowClass out = one(), term = one();
  for (int k = 1; k <= dim_; ++k) {
    term = Rational(1, k) * mul(term, a);
    out += term;
  }
  return out;
}

ChowClass ChowRing::inverse(const ChowClass& a) const {
  ChowClass nil = a - one();
  if (!part(nil, 0).is_zero())
    throw std::invalid_argument("inverse: codimension-0 part must be 1");
  ChowClass out = one(), term = one();
  for (int k = 1; k <= dim_; ++k) {
    term = -mul(term, nil);
    out += term;
  }
  return out;
}

ChowClass ChowRing::dual(const ChowClass& a) const {
  ChowClass out = a;
  for (std::size_t i = 0; i < rank(); ++i)
    if (codims_[i] % 2) out[i] = -out[i];
  return out;
}

Rational ChowRing::degree(const ChowClass& a) const {
  Rational d = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    if (a[i] != 0) d += a[i] * degree_[i];
  return d;
}

bool ChowRing::check_table() const {
  bool has_point = false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (codims_[i] == dim_ && degree_[i] != 0) has_point = true;
  if (!has_point) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) {
      if (!(table_[i][j] == table_[j][i])) return false;
      for (std::size_t k = 0; k < rank(); ++k)
        if (!(mul(mul(basis(i), basis(j)), basis(k)) ==
              mul(basis(i), mul(basis(j), basis(k)))))
          return false;
    }
  return true;
}

std::string ChowRing::format(const ChowClass& a) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << a[i].get_str() << '*' << labels_[i];
  }
  if (first) os << '0';
  return os.str();
}

namespace {

// Power series in one variable truncated at degree n.
using Series = std::vector<Rational>;

Series series_mul(const Series& a, const Series& b) {
  Series out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// log(z / (1 - e^{-z})) up to z^n.
Series log_todd_series(int n) {
  Series g(n + 1);  // (1 - e^{-z}) / z
  Integer fact = 1;
  for (int m = 0; m <= n; ++m) {
    fact *= m + 1;
    g[m] = Rational((m % 2 ? -1 : 1), 1) / Rational(fact);
  }
  Series u = g;
  u[0] = 0;
  Series logg(n + 1), power(n + 1);
  power[0] = 1;
  for (int k = 1; k <= n; ++k) {
    power = series_mul(power, u);
    for (int m = 0; m <= n; ++m)
      logg[m] += Rational(k % 2 ? 1 : -1, k) * power[m];
  }
  for (auto& c : logg) c = -c;
  return logg;
}

}  // namespace

ChowClass todd_from_ch(const ChowRing& ring, const ChowClass& ch_tangent) {
  Series f = log_todd_series(ring.dim());
  ChowClass log_td(ring.rank());
  Integer fact = 1;
  for (int m = 1; m <= ring.dim(); ++m) {
    fact *= m;
    log_td += (f[m] * Rational(fact)) * ring.part(ch_tangent, m);
  }
  return ring.exp(log_td);
}

ChowClass todd_from_chern(const ChowRing& ring, const ChowClass& c) {
  if (ring.dim() > 3)
    throw std::invalid_argument("todd_from_chern: dimension > 3");
  ChowClass c1 = ring.part(c, 1), c2 = ring.part(c, 2);
  ChowClass td = ring.one();
  td += Rational(1, 2) * c1;
  td += Rational(1, 12) * (ring.mul(c1, c1) + c2);
  td += Rational(1, 24) * ring.mul(c1, c2);
  return ring.part(td, 0) + ring.part(td, 1) + ring.part(td, 2) +
         ring.part(td, 3);
}

// --- Grassmannians -------------------------------------------------------

std::vector<std::vector<int>> schubert_basis(int k, int n) {
  const int w = n - k;
  std::vector<std::vector<int>> out;
  std::vector<int> lambda(k, 0);
  std::function<void(int, int)> rec = [&](int row, int bound) {
    if (row == k) {
      out.push_back(lambda);
      return;
    }
    for (int v = 0; v <= bound; ++v) {
      lambda[row] = v;
      rec(row + 1, v);
    }
  };
  rec(0, w);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = std::accumulate(a.begin(), a.end(), 0);
    int sb = std::accumulate(b.begin(), b.end(), 0);
    if (sa != sb) return sa < sb;
    return a > b;
  });
  return out;
}

std::vector<std::vector<int>> pieri(const std::vector<int>& lambda, int j,
                                    int k, int n) {
  const int w = n - k;
  std::vector<std::vector<int>> out;
  std::vector<int> mu(k);
  std::function<void(int, int)> rec = [&](int row, int left) {
    if (row == k) {
      if (left == 0) out.push_back(mu);
      return;
    }
    const int upper = row == 0 ? w : lambda[row - 1];
    for (int v = lambda[row]; v <= upper && v - lambda[row] <= left; ++v) {
      mu[row] = v;
      rec(row + 1, left - (v - lambda[row]));
    }
  };
  if (j < 0 || j > w) return out;
  rec(0, j);
  return out;
}

namespace {

std::string schubert_label(const std::vector<int>& lambda) {
  std::string s = "s";
  for (int v : lambda)
    if (v) s += std::to_string(v);
  return s == "s" ? "1" : s;
}

// Polynomial in r variables, exponent vector -> coefficient.
using Poly = std::map<std::vector<int>, Rational>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Poly elementary(int r, int i) {
  Poly p;
  std::vector<int> e(r, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r) {
      if (left == 0) p[e] += 1;
      return;
    }
    for (int v = 0; v <= std::min(1, left); ++v) {
      e[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, i);
  return p;
}

// Contents (weights of the torus) of the GL(r) irreducible with dominant
// highest weight w, with multiplicity.
std::map<std::vector<int>, long> character(const Weight& w) {
  const int r = static_cast<int>(w.size());
  const int base = w[r - 1];
  std::vector<int> shape(r);
  for (int i = 0; i < r; ++i) shape[i] = w[i] - base;
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < r; ++i)
    for (int c = 0; c < shape[i]; ++c) cells.emplace_back(i, c);
  std::vector<std::vector<int>> tab(r);
  for (int i = 0; i < r; ++i) tab[i].assign(shape[i], 0);
  std::map<std::vector<int>, long> out;
  std::vector<int> content(r, base);
  std::function<void(std::size_t)> fill = [&](std::size_t idx) {
    if (idx == cells.size()) {
      out[content] += 1;
      return;
    }
    auto [row, col] = cells[idx];
    int lo = 1;
    if (col > 0) lo = std::max(lo, tab[row][col - 1]);
    if (row > 0) lo = std::max(lo, tab[row - 1][col] + 1);
    for (int v = lo; v <= r; ++v) {
      tab[row][col] = v;
      ++content[v - 1];
      fill(idx + 1);
      --content[v - 1];
    }
  };
  fill(0);
  return out;
}

// ch of the Schur functor of a rank-r bundle with Chern classes c[0..r],
// truncated at ring.dim(), via moments of the character and reduction of
// the resulting symmetric polynomial to elementary symmetric ones.
ChowClass schur_chern_character(const ChowRing& ring, const Weight& w,
                                const std::vector<ChowClass>& c) {
  const int r = static_cast<int>(w.size());
  const int top = ring.dim();
  auto chars = character(w);

  // coefficient of x^a = sum_content prod c_i^{a_i} / prod a_i!
  Poly poly;
  std::vector<int> a(r, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r) {
      Rational moment = 0;
      for (const auto& [content, mult] : chars) {
        Integer prod = mult;
        for (int i = 0; i < r; ++i) {
          Integer p;
          mpz_pow_ui(p.get_mpz_t(), Integer(content[i]).get_mpz_t(), a[i]);
          prod *= p;
        }
        moment += Rational(prod);
      }
      Integer denom = 1;
      for (int i = 0; i < r; ++i) {
        Integer f;
        mpz_fac_ui(f.get_mpz_t(), a[i]);
        denom *= f;
      }
      moment /= Rational(denom);
      if (moment != 0) poly[a] = moment;
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, top);

  std::vector<Poly> e(r + 1);
  for (int i = 1; i <= r; ++i) e[i] = elementary(r, i);

  ChowClass out(ring.rank());
  while (!poly.empty()) {
    auto lead = poly.rbegin()->first;
    Rational coeff = poly.rbegin()->second;
    Poly sub;
    sub[std::vector<int>(r, 0)] = 1;
    ChowClass value = ring.one();
    for (int i = 0; i < r; ++i) {
      const int next = i + 1 < r ? lead[i + 1] : 0;
      const int power = lead[i] - next;
      if (power < 0)
        throw std::logic_error("schur_chern_character: non-symmetric input");
      for (int p = 0; p < power; ++p) {
        sub = poly_mul(sub, e[i + 1]);
        value = ring.mul(value, c[i + 1]);
      }
    }
    for (const auto& [ex, cf] : sub) {
      poly[ex] -= coeff * cf;
      if (poly[ex] == 0) poly.erase(ex);
    }
    out += coeff * value;
  }
  return out;
}

}  // namespace

ChowClass GrassmannianRing::chern_character(const FactorWeights& w) const {
  if (!w.dominant())
    throw std::invalid_argument("chern_character: reducible weights");
  if (static_cast<int>(w.sub.size()) != factor.k ||
      static_cast<int>(w.quot.size()) != factor.quotient_rank())
    throw std::invalid_argument("chern_character: weights do not fit " +
                                factor.name);
  return ring->mul(schur_chern_character(*ring, w.sub, c_sub),
                   schur_chern_character(*ring, w.quot, c_quot));
}

GrassmannianRing grassmannian_ring(const HomFactor& f) {
  const int k = f.k, n = f.n;
  auto basis = schubert_basis(k, n);
  std::vector<std::string> labels;
  std::vector<int> codims;
  for (const auto& l : basis) {
    labels.push_back(schubert_label(l));
    codims.push_back(std::accumulate(l.begin(), l.end(), 0));
  }
  auto ring = std::make_shared<ChowRing>(f.name, f.dim(), labels, codims);
  auto index_of = [&](const std::vector<int>& l) {
    return static_cast<std::size_t>(
        std::find(basis.begin(), basis.end(), l) - basis.begin());
  };
  // multiplication by a special class on coordinate vectors
  auto special = [&](const ChowClass& x, int j) {
    ChowClass out(basis.size());
    if (j == 0) return x;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (x[i] == 0) continue;
      for (const auto& mu : pieri(basis[i], j, k, n)) out[index_of(mu)] += x[i];
    }
    return out;
  };
  // sigma_lambda * x via the Jacobi-Trudi determinant det(sigma_{l_i+j-i})
  auto times_schubert = [&](const std::vector<int>& lambda,
                            const ChowClass& x) {
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    ChowClass out(basis.size());
    do {
      int inversions = 0;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (perm[i] > perm[j]) ++inversions;
      ChowClass term = x;
      bool zero = false;
      for (int i = 0; i < k && !zero; ++i) {
        const int idx = lambda[i] + perm[i] - i;
        if (idx < 0 || idx > n - k) {
          zero = true;
          break;
        }
        term = special(term, idx);
      }
      if (!zero) {
        if (inversions % 2) out -= term;
        else out += term;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  };
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      ChowClass prod = times_schubert(basis[i], ring->basis(j));
      ring->set_product(i, j, prod);
    }
  ring->set_degree(basis.size() - 1, 1);

  GrassmannianRing g;
  g.factor = f;
  g.c_sub.push_back(ring->one());
  for (int i = 1; i <= k; ++i) {
    std::vector<int> l(k, 0);
    for (int r = 0; r < i; ++r) l[r] = 1;
    g.c_sub.push_back(ring->basis(index_of(l)));
  }
  g.c_quot.push_back(ring->one());
  for (int j = 1; j <= n - k; ++j) {
    std::vector<int> l(k, 0);
    l[0] = j;
    ChowClass s = ring->basis(index_of(l));
    g.c_quot.push_back(j % 2 ? -s : s);
  }
  g.ring = ring;

  // tangent bundle Hom(U, V/U) = U^* (x) V/U
  FactorWeights taut = trivial_weights(f);
  taut.sub = Weight(std::vector<int>(k, 0));
  taut.sub[0] = 1;
  FactorWeights quot = trivial_weights(f);
  quot.quot[n - k - 1] = -1;
  ChowClass ch_t = ring->mul(g.chern_character(taut), g.chern_character(quot));
  ring->set_todd(todd_from_ch(*ring, ch_t));
  return g;
}

ChowRing product_ring(const ChowRing& a, const ChowRing& b) {
  std::vector<std::string> labels;
  std::vector<int> codims;
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j) {
      labels.push_back(a.labels()[i] + "*" + b.labels()[j]);
      codims.push_back(a.codim(i) + b.codim(j));
    }
  ChowRing out(a.name() + "x" + b.name(), a.dim() + b.dim(), labels, codims);
  for (std::size_t i1 = 0; i1 < a.rank(); ++i1)
    for (std::size_t j1 = 0; j1 < b.rank(); ++j1)
      for (std::size_t i2 = 0; i2 < a.rank(); ++i2)
        for (std::size_t j2 = 0; j2 < b.rank(); ++j2) {
          std::size_t x = i1 * b.rank() + j1, y = i2 * b.rank() + j2;
          if (y < x) continue;
          out.set_product(x, y,
                          outer(a, a.mul(a.basis(i1), a.basis(i2)), b,
                                b.mul(b.basis(j1), b.basis(j2))));
        }
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < b.rank(); ++j)
      out.set_degree(i * b.rank() + j,
                     a.degree(a.basis(i)) * b.degree(b.basis(j)));
  out.set_todd(outer(a, a.todd(), b, b.todd()));
  return out;
}

ChowClass outer(const ChowRing& a, const ChowClass& x, const ChowRing& b,
                const ChowClass& y) {
  ChowClass out(a.rank() * b.rank());
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < b.rank(); ++j)
      if (y[j] != 0) out[i * b.rank() + j] = x[i] * y[j];
  }
  return out;
}

HomogeneousVariety::HomogeneousVariety(std::vector<HomFactor> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty())
    throw std::invalid_argument("HomogeneousVariety: no factors");
  for (const auto& f : factors_) factor_rings_.push_back(grassmannian_ring(f));
  if (factors_.size() == 1) {
    ring_ = factor_rings_[0].ring;
  } else {
    ChowRing acc = *factor_rings_[0].ring;
    for (std::size_t i = 1; i < factors_.size(); ++i)
      acc = product_ring(acc, *factor_rings_[i].ring);
    ring_ = std::make_shared<ChowRing>(std::move(acc));
  }
}

ChowClass HomogeneousVariety::pullback(std::size_t i, const ChowClass& x) const {
  ChowClass acc = i == 0 ? x : factor_rings_[0].ring->one();
  std::size_t rank = factor_rings_[0].ring->rank();
  for (std::size_t j = 1; j < factors_.size(); ++j) {
    const ChowRing& rj = *factor_rings_[j].ring;
    ChowClass next(rank * rj.rank());
    const ChowClass y = j == i ? x : rj.one();
    for (std::size_t a = 0; a < rank; ++a) {
      if (acc[a] == 0) continue;
      for (std::size_t b = 0; b < rj.rank(); ++b)
        if (y[b] != 0) next[a * rj.rank() + b] = acc[a] * y[b];
    }
    acc = std::move(next);
    rank *= rj.rank();
  }
  return acc;
}

ChowClass HomogeneousVariety::chern_character(
    const EquivariantBundle& bundle) const {
  ChowClass out(ring_->rank());
  for (const auto& t : bundle.terms()) {
    if (t.parts.size() != factors_.size())
      throw std::invalid_argument("chern_character: bundle does not fit " +
                                  ring_->name());
    ChowClass term = ring_->one();
    for (std::size_t i = 0; i < factors_.size(); ++i)
      term = ring_->mul(
          term, pullback(i, factor_rings_[i].chern_character(t.parts[i])));
    Rational scale = Rational(t.multiplicity * t.coefficient_dim());
    if (t.shift % 2) scale = -scale;
    out += scale * term;
  }
  return out;
}

Integer chi(const ChowRing& ring, const ChowClass& ch) {
  Rational value = ring.degree(ring.mul(ch, ring.todd()));
  value.canonicalize();
  if (value.get_den() != 1)
    throw NonIntegralEuler("non-integral Euler characteristic " +
                           value.get_str() + " on " + ring.name());
  return value.get_num();
}

Integer euler_pairing(const ChowRing& ring, const ChowClass& a,
                      const ChowClass& b) {
  return chi(ring, ring.mul(ring.dual(a), b));
}

ChowRing projective_ring(int n) {
  std::vector<std::string> labels;
  std::vector<int> codims;
  for (int i = 0; i <= n; ++i) {
    labels.push_back(i == 0 ? "1" : i == 1 ? "h" : "h" + std::to_string(i));
    codims.push_back(i);
  }
  ChowRing ring("P" + std::to_string(n), n, labels, codims);
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      if (i + j <= n) ring.set_product(i, j, ring.basis(i + j));
  ring.set_degree(n, 1);
  ChowClass c = ring.pow(ring.one() + ring.basis(1), n + 1);
  ring.set_chern(c);
  ring.set_todd(todd_from_chern(ring, c));
  return ring;
}

ChowRing blowup_ring(int points) {
  if (points < 0) throw std::invalid_argument("blowup_ring: negative N");
  const int N = points;
  std::vector<std::string> labels{"1", "h"};
  std::vector<int> codims{0, 1};
  for (int i = 1; i <= N; ++i) {
    labels.push_back("e" + std::to_string(i));
    codims.push_back(1);
  }
  labels.push_back("h2");
  codims.push_back(2);
  for (int i = 1; i <= N; ++i) {
    labels.push_back("e" + std::to_string(i) + "^2");
    codims.push_back(2);
  }
  labels.push_back("pt");
  codims.push_back(3);
  ChowRing ring("Y" + std::to_string(N), 3, labels, codims);
  const std::size_t one = 0, h = 1, h2 = 2 + N, pt = 3 + 2 * N;
  auto e = [&](int i) { return static_cast<std::size_t>(1 + i); };
  auto e2 = [&](int i) { return static_cast<std::size_t>(2 + N + i); };
  for (std::size_t i = 0; i < ring.rank(); ++i)
    ring.set_product(one, i, ring.basis(i));
  ring.set_product(h, h, ring.basis(h2));
  ring.set_product(h, h2, ring.basis(pt));
  for (int i = 1; i <= N; ++i) {
    ring.set_product(e(i), e(i), ring.basis(e2(i)));
    ring.set_product(e(i), e2(i), ring.basis(pt));
  }
  ring.set_degree(pt, 1);

  ChowClass sum_e(ring.rank()), sum_e2(ring.rank());
  for (int i = 1; i <= N; ++i) {
    sum_e += ring.basis(e(i));
    sum_e2 += ring.basis(e2(i));
  }
  const ChowClass c1 = Rational(4) * ring.basis(h) - Rational(2) * sum_e;
  const ChowClass c3 = Rational(4 + 2 * N) * ring.basis(pt);
  auto chern_for = [&](const Rational& alpha, const Rational& beta) {
    return ring.one() + c1 + alpha * ring.basis(h2) + beta * sum_e2 + c3;
  };
  // constraint residuals, affine in (alpha, beta)
  auto residual = [&](const Rational& alpha, const Rational& beta) {
    ChowClass td = todd_from_chern(ring, chern_for(alpha, beta));
    Rational r1 = ring.degree(td) - 1;
    Rational r2 = 0;
    if (N > 0)
      r2 = ring.degree(ring.mul(ring.exp(-ring.basis(e(1))), td));
    return std::pair{r1, r2};
  };
  auto [f1, f2] = residual(0, 0);
  auto [a1, a2] = residual(1, 0);
  auto [b1, b2] = residual(0, 1);
  a1 -= f1; a2 -= f2; b1 -= f1; b2 -= f2;
  Rational alpha, beta = 0;
  if (N == 0) {
    alpha = -f1 / a1;
  } else {
    Rational det = a1 * b2 - a2 * b1;
    if (det == 0) throw std::logic_error("blowup_ring: singular constraints");
    alpha = (-f1 * b2 + f2 * b1) / det;
    beta = (-a1 * f2 + a2 * f1) / det;
  }
  ChowClass c = chern_for(alpha, beta);
  ring.set_chern(c);
  ring.set_todd(todd_from_chern(ring, c));
  return ring;
}

ChowRing double_cover_ring(const ChowRing& base, const ChowClass& half_branch) {
  if (!base.chern())
    throw std::invalid_argument("double_cover_ring: base has no Chern class");
  ChowRing ring = base;
  ChowRing cover("X(" + base.name() + ")", base.dim(), base.labels(),
                 [&] {
                   std::vector<int> c;
                   for (std::size_t i = 0; i < base.rank(); ++i)
                     c.push_back(base.codim(i));
                   return c;
                 }());
  for (std::size_t i = 0; i < base.rank(); ++i)
    for (std::size_t j = i; j < base.rank(); ++j)
      cover.set_product(i, j, base.mul(base.basis(i), base.basis(j)));
  for (std::size_t i = 0; i < base.rank(); ++i)
    cover.set_degree(i, 2 * base.degree(base.basis(i)));
  const ChowClass& H = half_branch;
  ChowClass c = cover.mul(cover.mul(*base.chern(), cover.one() + H),
                          cover.inverse(cover.one() + Rational(2) * H));
  cover.set_chern(c);
  cover.set_todd(todd_from_chern(cover, c));
  return cover;
}

}  // namespace sod
