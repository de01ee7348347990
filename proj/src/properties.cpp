#include "sod/properties.hpp"

#include <random>
#include <sstream>

namespace sod {

namespace {

using Classes = std::vector<KClass>;

// sigma_i: (E_i, E_i+1) -> (L_{E_i} E_i+1, E_i)
Classes sigma(const KLattice& l, Classes c, std::size_t i) {
  const KClass e = c[i];
  c[i] = mutate_left(l, e, c[i + 1]);
  c[i + 1] = e;
  return c;
}

// sigma_i^-1: (E_i, E_i+1) -> (E_i+1, R_{E_i+1} E_i)
Classes sigma_inv(const KLattice& l, Classes c, std::size_t i) {
  const KClass f = c[i + 1];
  c[i + 1] = mutate_right(l, f, c[i]);
  c[i] = f;
  return c;
}

bool same(const KLattice& l, const Classes& a, const Classes& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!l.equal(a[i], b[i])) return false;
  return true;
}

bool unitriangular(const KLattice& l, const Classes& c) {
  Collection col;
  for (const auto& x : c) col.positions.push_back(Position::single(x));
  return gram(l, col).verdict == Verdict::Exceptional;
}

class Recorder {
 public:
  Recorder(std::string property, std::string variety) {
    r_.property = std::move(property);
    r_.variety = std::move(variety);
  }
  void record(bool ok, const std::string& what) {
    ++r_.instances;
    if (ok) return;
    ++r_.failures;
    if (r_.counterexamples.size() < 5) r_.counterexamples.push_back(what);
  }
  PropertyReport report() const { return r_; }

 private:
  PropertyReport r_;
};

}  // namespace

std::vector<PropertyReport> mutation_properties(const Catalog& catalog,
                                                const std::string& variety,
                                                std::size_t instances,
                                                std::uint64_t seed) {
  const Variety& v = catalog.variety(variety);
  const KLattice& l = v.lattice();
  const std::string twist = variety == "P3" ? "h" : "g";
  if (!l.has_operator(twist))
    throw std::invalid_argument("no twist operator on " + variety);

  Classes start;
  for (std::size_t i = 0; i < l.rank(); ++i) start.push_back(l.basis(i));
  const std::size_t n = start.size();

  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };

  Recorder inv("involutivity R o L = id", variety);
  Recorder tri("unitriangularity preserved", variety);
  Recorder braid("braid relation", variety);
  Recorder tens("twist commutes with mutation", variety);

  for (std::size_t k = 0; k < instances; ++k) {
    // random collection from a braid word of length <= 8
    Classes c = start;
    std::ostringstream word;
    const std::size_t len = pick(0, 8);
    for (std::size_t s = 0; s < len; ++s) {
      const std::size_t i = pick(0, n - 2);
      const bool forward = pick(0, 1) == 1;
      c = forward ? sigma(l, c, i) : sigma_inv(l, c, i);
      word << (forward ? "s" : "s^-") << i << " ";
    }
    const std::string w = "word [" + word.str() + "]";
    const std::size_t i = pick(0, n - 2);

    inv.record(same(l, sigma_inv(l, sigma(l, c, i), i), c) &&
                   same(l, sigma(l, sigma_inv(l, c, i), i), c),
               w + " at " + std::to_string(i));

    tri.record(unitriangular(l, c) && unitriangular(l, sigma(l, c, i)) &&
                   unitriangular(l, sigma_inv(l, c, i)),
               w + " at " + std::to_string(i));

    const std::size_t b = pick(0, n - 3);
    bool braid_ok = same(l, sigma(l, sigma(l, sigma(l, c, b), b + 1), b),
                         sigma(l, sigma(l, sigma(l, c, b + 1), b), b + 1));
    if (n >= 4) {
      const std::size_t j = pick(0, n - 2);
      if (j + 1 < b || b + 1 < j)
        braid_ok = braid_ok && same(l, sigma(l, sigma(l, c, b), j),
                                    sigma(l, sigma(l, c, j), b));
    }
    braid.record(braid_ok, w + " at " + std::to_string(b));

    const KClass e = c[i], f = c[i + 1];
    const KClass te = l.apply(twist, e), tf = l.apply(twist, f);
    tens.record(l.equal(mutate_left(l, te, tf), l.apply(twist, mutate_left(l, e, f))) &&
                    l.equal(mutate_right(l, tf, te),
                            l.apply(twist, mutate_right(l, f, e))),
                w + " at " + std::to_string(i));
  }
  return {inv.report(), tri.report(), braid.report(), tens.report()};
}

}  // namespace sod
