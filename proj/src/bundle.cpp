#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "sod/bbw.hpp"

namespace sod {

HomFactor::HomFactor(int k_, int n_, std::string name_)
    : k(k_), n(n_), name(std::move(name_)) {
  if (k < 1 || k >= n)
    throw std::invalid_argument("Gr(" + std::to_string(k) + "," +
                                std::to_string(n) + ") needs 1 <= k < n");
  if (name.empty())
    name = "Gr(" + std::to_string(k) + "," + std::to_string(n) + ")";
}

HomFactor parse_factor(const std::string& tag) {
  if (tag.size() >= 2 && (tag[0] == 'P' || tag[0] == 'p')) {
    const int d = std::stoi(tag.substr(1));
    return HomFactor(1, d + 1, "P" + std::to_string(d));
  }
  if (tag.size() == 4 && tag.rfind("Gr", 0) == 0 && std::isdigit(tag[2]) &&
      std::isdigit(tag[3]))
    return HomFactor(tag[2] - '0', tag[3] - '0', tag);
  throw std::invalid_argument("unknown homogeneous factor '" + tag + "'");
}

std::vector<HomFactor> parse_space(const std::string& text) {
  std::vector<HomFactor> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t cut = text.find('x', start);
    std::string piece = text.substr(start, cut == std::string::npos
                                               ? std::string::npos
                                               : cut - start);
    out.push_back(parse_factor(piece));
    if (cut == std::string::npos) break;
    start = cut + 1;
  }
  return out;
}

FactorWeights trivial_weights(const HomFactor& f) {
  return {Weight(std::vector<int>(f.k, 0)),
          Weight(std::vector<int>(f.quotient_rank(), 0))};
}

FactorWeights line_weights(const HomFactor& f, int a) {
  return {Weight(std::vector<int>(f.k, a)),
          Weight(std::vector<int>(f.quotient_rank(), 0))};
}

Integer BundleTerm::coefficient_dim() const {
  Integer d = 1;
  for (const auto& w : coefficient) d *= weyl_dim(w);
  return d;
}

EquivariantBundle::EquivariantBundle(std::vector<BundleTerm> terms)
    : terms_(std::move(terms)) {
  canonicalize();
}

EquivariantBundle EquivariantBundle::structure_sheaf(
    std::span<const HomFactor> space) {
  BundleTerm t;
  for (const auto& f : space) t.parts.push_back(trivial_weights(f));
  return EquivariantBundle({t});
}

EquivariantBundle EquivariantBundle::irreducible(
    std::vector<FactorWeights> parts, long multiplicity) {
  BundleTerm t;
  t.parts = std::move(parts);
  t.multiplicity = multiplicity;
  return EquivariantBundle({t});
}

void EquivariantBundle::add(BundleTerm term) {
  terms_.push_back(std::move(term));
  canonicalize();
}

void EquivariantBundle::add(const EquivariantBundle& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
}

void EquivariantBundle::canonicalize() {
  std::vector<BundleTerm> out;
  for (const auto& t : terms_) {
    auto key_eq = [&](const BundleTerm& o) {
      return o.parts == t.parts && o.coefficient == t.coefficient &&
             o.shift == t.shift;
    };
    auto it = std::find_if(out.begin(), out.end(), key_eq);
    if (it == out.end())
      out.push_back(t);
    else
      it->multiplicity += t.multiplicity;
  }
  std::erase_if(out, [](const BundleTerm& t) { return t.multiplicity == 0; });
  std::sort(out.begin(), out.end(), [](const BundleTerm& a,
                                       const BundleTerm& b) {
    return std::tie(a.shift, a.parts, a.coefficient) <
           std::tie(b.shift, b.parts, b.coefficient);
  });
  terms_ = std::move(out);
}

Integer EquivariantBundle::rank(std::span<const HomFactor> space) const {
  Integer total = 0;
  for (const auto& t : terms_) {
    if (t.parts.size() != space.size())
      throw std::invalid_argument("bundle/space factor count mismatch");
    Integer r = t.multiplicity * t.coefficient_dim();
    for (std::size_t i = 0; i < space.size(); ++i)
      r *= weyl_dim(space[i].k, t.parts[i].sub) *
           weyl_dim(space[i].quotient_rank(), t.parts[i].quot);
    total += (t.shift % 2 == 0) ? r : Integer(-r);
  }
  return total;
}

EquivariantBundle EquivariantBundle::dual() const {
  std::vector<BundleTerm> out;
  for (const auto& t : terms_) {
    BundleTerm d = t;
    for (auto& p : d.parts) {
      p.sub = dualize(p.sub);
      p.quot = dualize(p.quot);
    }
    for (auto& c : d.coefficient) c = dualize(c);
    d.shift = -t.shift;
    out.push_back(std::move(d));
  }
  return EquivariantBundle(std::move(out));
}

EquivariantBundle EquivariantBundle::twisted(std::span<const int> twists) const {
  std::vector<BundleTerm> out;
  for (auto t : terms_) {
    if (twists.size() != t.parts.size())
      throw std::invalid_argument("twist vector length mismatch");
    for (std::size_t i = 0; i < twists.size(); ++i)
      t.parts[i].sub = t.parts[i].sub.shifted(twists[i]);
    out.push_back(std::move(t));
  }
  return EquivariantBundle(std::move(out));
}

EquivariantBundle EquivariantBundle::tensor(
    const EquivariantBundle& other) const {
  std::vector<BundleTerm> out;
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) {
      if (a.parts.size() != b.parts.size())
        throw std::invalid_argument("tensor: factor count mismatch");
      // expand factor by factor
      std::vector<BundleTerm> partial(1);
      partial[0].multiplicity = a.multiplicity * b.multiplicity;
      partial[0].shift = a.shift + b.shift;
      partial[0].coefficient = a.coefficient;
      partial[0].coefficient.insert(partial[0].coefficient.end(),
                                    b.coefficient.begin(), b.coefficient.end());
      for (std::size_t i = 0; i < a.parts.size(); ++i) {
        WeightSum subs = tensor_irreducible(a.parts[i].sub, b.parts[i].sub);
        WeightSum quots = tensor_irreducible(a.parts[i].quot, b.parts[i].quot);
        std::vector<BundleTerm> next;
        for (const auto& t : partial)
          for (const auto& [ws, ms] : subs.terms())
            for (const auto& [wq, mq] : quots.terms()) {
              BundleTerm n = t;
              n.parts.push_back({ws, wq});
              n.multiplicity *= ms * mq;
              next.push_back(std::move(n));
            }
        partial = std::move(next);
      }
      out.insert(out.end(), partial.begin(), partial.end());
    }
  return EquivariantBundle(std::move(out));
}

std::string EquivariantBundle::str(std::span<const HomFactor> space) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const auto& t = terms_[j];
    if (j) os << " + ";
    if (t.multiplicity != 1) os << t.multiplicity << '*';
    for (const auto& c : t.coefficient) os << "V" << c.str() << "(x)";
    for (std::size_t i = 0; i < t.parts.size(); ++i) {
      if (i) os << " x ";
      os << '[' << t.parts[i].sub.str() << '|' << t.parts[i].quot.str() << ']';
    }
    if (t.shift) os << '[' << t.shift << ']';
  }
  (void)space;
  return os.str();
}

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// "-g", "2", "-3g", "+h", "-1h", "" -> integer
int parse_twist(const std::string& text) {
  int total = 0;
  std::size_t i = 0;
  const std::string s = strip(text);
  if (s.empty()) return 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-' || s[i] == ' ')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    int coeff = start == i ? 1 : std::stoi(s.substr(start, i - start));
    bool letter = false;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
      letter = true;
      ++i;
    }
    if (start == i && !letter)
      throw std::invalid_argument("malformed twist '" + text + "'");
    total += sign * coeff;
  }
  return total;
}

std::vector<int> hook(int size, int lead, int count) {
  std::vector<int> v(size, 0);
  for (int i = 0; i < count && i < size; ++i) v[i] = lead;
  return v;
}

FactorWeights parse_piece(const HomFactor& f, std::string piece, long& mult) {
  piece = strip(piece);
  mult = 1;
  if (auto star = piece.find('*');
      star != std::string::npos && star > 0 &&
      std::all_of(piece.begin(), piece.begin() + star,
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    mult = std::stol(piece.substr(0, star));
    piece = strip(piece.substr(star + 1));
  }
  std::string base = piece;
  int twist = 0;
  if (auto open = piece.rfind('('); open != std::string::npos &&
                                    piece.back() == ')' &&
                                    piece.find('[') == std::string::npos) {
    base = piece.substr(0, open);
    twist = parse_twist(piece.substr(open + 1, piece.size() - open - 2));
  } else if (piece.find('[') != std::string::npos) {
    auto close = piece.find(']');
    base = piece.substr(0, close + 1);
    std::string rest = piece.substr(close + 1);
    if (!rest.empty()) {
      if (rest.front() != '(' || rest.back() != ')')
        throw std::invalid_argument("malformed bundle '" + piece + "'");
      twist = parse_twist(rest.substr(1, rest.size() - 2));
    }
  }
  base = strip(base);
  for (const char* suffix : {"_W", "_V"})
    if (base.size() > 2 && base.ends_with(suffix))
      base.resize(base.size() - 2);

  const int k = f.k, q = f.quotient_rank();
  FactorWeights w = trivial_weights(f);
  if (base == "O" || base.empty()) {
  } else if (base == "U") {
    w.sub = dualize(Weight(hook(k, 1, 1)));
  } else if (base == "U*" || base == "U^*" || base == "U^v") {
    w.sub = Weight(hook(k, 1, 1));
  } else if (base == "Q" || base == "V/U") {
    w.quot = dualize(Weight(hook(q, 1, 1)));
  } else if (base == "Q*" || base == "U^perp") {
    w.quot = Weight(hook(q, 1, 1));
  } else if (base.size() >= 3 && (base[0] == 'S' || base[0] == 'L') &&
             std::isdigit(static_cast<unsigned char>(base[1]))) {
    std::size_t j = 1;
    while (j < base.size() && std::isdigit(static_cast<unsigned char>(base[j]))) ++j;
    const int m = std::stoi(base.substr(1, j - 1));
    std::string tail = base.substr(j);
    bool dual = tail.ends_with("*");
    if (dual) tail.pop_back();
    Weight pos = base[0] == 'S' ? Weight(hook(k, m, 1))
                                : Weight(hook(k, 1, m));
    if (base[0] == 'L' && m > k) throw std::invalid_argument("zero bundle " + base);
    if (tail == "U") {
      w.sub = dual ? pos : dualize(pos);
    } else if (tail == "Q" || tail == "V/U") {
      Weight qpos = base[0] == 'S' ? Weight(hook(q, m, 1)) : Weight(hook(q, 1, m));
      w.quot = dual ? qpos : dualize(qpos);
    } else {
      throw std::invalid_argument("unknown bundle '" + base + "'");
    }
  } else if (base.front() == '[' && base.back() == ']') {
    std::string inner = base.substr(1, base.size() - 2);
    auto bar = inner.find('|');
    w.sub = parse_weight(inner.substr(0, bar));
    w.quot = bar == std::string::npos ? Weight(std::vector<int>(q, 0))
                                      : parse_weight(inner.substr(bar + 1));
    if (static_cast<int>(w.sub.size()) != k ||
        static_cast<int>(w.quot.size()) != q)
      throw std::invalid_argument("weight length mismatch with " + f.name +
                                  " in '" + base + "'");
  } else {
    throw std::invalid_argument("unknown bundle '" + base + "'");
  }
  w.sub = w.sub.shifted(twist);
  return w;
}

}  // namespace

EquivariantBundle parse_bundle(std::span<const HomFactor> space,
                               const std::string& text) {
  std::vector<std::string> pieces;
  std::size_t start = 0;
  const std::string sep = " x ";
  while (true) {
    auto cut = text.find(sep, start);
    pieces.push_back(text.substr(start, cut == std::string::npos
                                            ? std::string::npos
                                            : cut - start));
    if (cut == std::string::npos) break;
    start = cut + sep.size();
  }
  if (pieces.size() != space.size())
    throw std::invalid_argument("bundle '" + text + "' has " +
                                std::to_string(pieces.size()) +
                                " factors, space has " +
                                std::to_string(space.size()));
  BundleTerm t;
  for (std::size_t i = 0; i < space.size(); ++i) {
    long m;
    t.parts.push_back(parse_piece(space[i], pieces[i], m));
    t.multiplicity *= m;
  }
  return EquivariantBundle({t});
}

}  // namespace sod
