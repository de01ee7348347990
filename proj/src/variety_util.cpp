#include <cctype>
#include <sstream>

#include "varieties_internal.hpp"

namespace sod {

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::BBW: return "BBW";
    case Evidence::RULE: return "RULE";
    case Evidence::AXIOM: return "AXIOM";
    case Evidence::CHI_ONLY: return "CHI-ONLY";
    case Evidence::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

std::string ExtAnswer::str() const {
  std::ostringstream os;
  if (value)
    os << value->str();
  else if (chi)
    os << "chi = " << chi->get_str();
  else
    os << "unknown";
  os << " [" << to_string(tag) << "]";
  return os.str();
}

std::vector<ResolvedObject> Variety::resolve_family(
    const std::string& label) const {
  auto pos = label.find("_i");
  const bool family =
      pos != std::string::npos &&
      (pos + 2 == label.size() ||
       !std::isalnum(static_cast<unsigned char>(label[pos + 2])));
  if (!family) return {resolve(label)};
  if (family_size_ == 0)
    throw std::invalid_argument("no indexed families on " + name_);
  std::vector<ResolvedObject> out;
  for (int i = 1; i <= family_size_; ++i) {
    std::string l = label;
    l.replace(pos, 2, "_" + std::to_string(i));
    out.push_back(resolve(l));
  }
  return out;
}

std::string Variety::twist_label(const std::string& label,
                                 const std::string& line) const {
  auto [base, twist] = detail::split_label(label);
  if (twist.empty()) return base + "(" + line + ")";
  const bool signed_line = !line.empty() && (line[0] == '-' || line[0] == '+');
  return base + "(" + twist + (signed_line ? "" : "+") + line + ")";
}

namespace detail {

std::string negate_linear(const std::string& text) {
  std::map<std::string, int> c = parse_linear(text);
  std::vector<std::string> order;
  for (auto& [sym, v] : c) {
    v = -v;
    order.push_back(sym);
  }
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    // h, g before the exceptional symbols
    auto rank = [](const std::string& s) { return s.size() == 1 ? 0 : 1; };
    return std::pair(rank(a), a) < std::pair(rank(b), b);
  });
  return format_linear(c, order);
}

std::map<std::string, int> parse_linear(const std::string& text) {
  std::map<std::string, int> out;
  std::size_t i = 0;
  const std::string& s = text;
  auto skip = [&] {
    while (i < s.size() && s[i] == ' ') ++i;
  };
  skip();
  if (i == s.size()) return out;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    skip();
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw std::invalid_argument("malformed twist '" + text + "'");
    }
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    int coeff = start == i ? 1 : std::stoi(s.substr(start, i - start));
    skip();
    if (i < s.size() && s[i] == '*') ++i;
    skip();
    std::size_t sym = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (sym == i)
      throw std::invalid_argument("malformed twist '" + text + "'");
    out[s.substr(sym, i - sym)] += sign * coeff;
    first = false;
    skip();
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::string format_linear(const std::map<std::string, int>& coeffs,
                          const std::vector<std::string>& order) {
  std::string out;
  auto emit = [&](const std::string& sym, int c) {
    if (c == 0) return;
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (std::abs(c) != 1) out += std::to_string(std::abs(c));
    out += sym;
  };
  for (const auto& sym : order)
    if (auto it = coeffs.find(sym); it != coeffs.end()) emit(sym, it->second);
  for (const auto& [sym, c] : coeffs)
    if (std::find(order.begin(), order.end(), sym) == order.end()) emit(sym, c);
  return out;
}

std::pair<std::string, std::string> split_label(const std::string& label) {
  if (label.empty() || label.back() != ')') return {label, ""};
  int depth = 0;
  for (std::size_t i = label.size(); i-- > 0;) {
    if (label[i] == ')') ++depth;
    if (label[i] == '(' && --depth == 0)
      return {label.substr(0, i), label.substr(i + 1, label.size() - i - 2)};
  }
  throw std::invalid_argument("unbalanced parentheses in '" + label + "'");
}

GradedSpace serre_dual(const GradedSpace& g, int top) {
  GradedSpace out;
  for (const auto& [t, d] : g.dims()) out.add_dim(top - t, d);
  return out;
}

GradedSpace quadric_cohomology(int x, int y) {
  const std::array<HomFactor, 2> q{HomFactor(1, 2, "P1"), HomFactor(1, 2, "P1")};
  return bbw_product(q, EquivariantBundle::irreducible(
                            {line_weights(q[0], x), line_weights(q[1], y)}));
}

GradedSpace plane_line_cohomology(int m) {
  HomFactor p2(1, 3, "P2");
  return bbw_factor(p2, line_weights(p2, m));
}

std::optional<GradedSpace> divisor_self_ext(const GradedSpace& h_l,
                                            const GradedSpace& h_ln) {
  // E2^{p,0} = H^p(L), E2^{p,1} = H^p(L N); d2 : E2^{p,1} -> E2^{p+2,0}
  for (const auto& [p, d] : h_ln.dims())
    if (d != 0 && h_l.dim(p + 2) != 0) return std::nullopt;
  GradedSpace out;
  for (const auto& [p, d] : h_l.dims()) out.add_dim(p, d);
  for (const auto& [p, d] : h_ln.dims()) out.add_dim(p + 1, d);
  return out;
}

std::string format_blowup_line(const LineOnBlowup& d) {
  std::map<std::string, int> c;
  std::vector<std::string> order{"h"};
  if (d.a) c["h"] = d.a;
  for (std::size_t i = 0; i < d.b.size(); ++i) {
    std::string sym = "e_" + std::to_string(i + 1);
    order.push_back(sym);
    if (d.b[i]) c[sym] = d.b[i];
  }
  std::string t = format_linear(c, order);
  return t.empty() ? "O" : "O(" + t + ")";
}

}  // namespace detail
}  // namespace sod
