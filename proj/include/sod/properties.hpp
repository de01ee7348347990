#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sod/catalog.hpp"

namespace sod {

struct PropertyReport {
  std::string property;
  std::string variety;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<std::string> counterexamples;  // first few only
  bool pass() const { return instances > 0 && failures == 0; }
};

/// Randomized checks of the mutation calculus on the full exceptional
/// collection of a single-factor variety ("P3" or "Gr24"): R o L = id,
/// unitriangularity is preserved, the braid relation, and commutation of
/// mutation with a line bundle twist. Instances are obtained by random
/// braid words applied to the standard collection.
std::vector<PropertyReport> mutation_properties(const Catalog& catalog,
                                                const std::string& variety,
                                                std::size_t instances,
                                                std::uint64_t seed);

}  // namespace sod
