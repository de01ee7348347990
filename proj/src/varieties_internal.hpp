#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "sod/catalog.hpp"

namespace sod::detail {

/// "2h - g + e_3" -> {g:-1, h:2, e_3:1}. Bare integers are rejected.
std::map<std::string, int> parse_linear(const std::string& text);
/// "-4h+2e" -> "4h-2e".
std::string negate_linear(const std::string& text);
/// "-g+h" style rendering over the given symbol order.
std::string format_linear(const std::map<std::string, int>& coeffs,
                          const std::vector<std::string>& order);

/// "O_E_3(-1)" -> {"O_E_3", "-1"}; no parentheses -> {label, ""}.
std::pair<std::string, std::string> split_label(const std::string& label);

/// Degree t -> top - t (dimensions only): the Serre-dual graded space.
GradedSpace serre_dual(const GradedSpace& g, int top);

/// H^*(P^1 x P^1, O(x, y)).
GradedSpace quadric_cohomology(int x, int y);
/// H^*(P^2, O(m)).
GradedSpace plane_line_cohomology(int m);

/// Ext between two twists of the structure sheaf of a divisor D with normal
/// bundle N: H(D, L) + H(D, L (x) N)[-1], provided the local-to-global
/// differential d2 cannot act; nullopt otherwise.
std::optional<GradedSpace> divisor_self_ext(const GradedSpace& h_l,
                                            const GradedSpace& h_ln);

std::shared_ptr<Variety> make_projective_space();
std::shared_ptr<Variety> make_grassmannian();
std::shared_ptr<Variety> make_m(int nodes);
std::shared_ptr<Variety> make_y(int nodes);
std::shared_ptr<Variety> make_xprime(int nodes);

std::string format_blowup_line(const LineOnBlowup& d);

}  // namespace sod::detail
