#pragma once

#include <string>
#include <vector>

#include "twistvn/types.hpp"

namespace twistvn {

/// The three symmetric-map conventions: power sums p_k, elementary
/// symmetric e_k, complete homogeneous h_k.
enum class Convention { power, elementary, homogeneous };

std::string to_string(Convention c);
Convention convention_from_string(const std::string& s);

struct SymmetricVector {
  Convention convention = Convention::power;
  std::vector<Complex> values;  // e_1..e_d, p_1..p_d, or h_1..h_d

  int dim() const { return static_cast<int>(values.size()); }
};

// Newton-identity recurrences between the conventions. All are exact
// polynomial identities; no tolerance is involved in the conversion itself.
SymmetricVector power_to_elementary(const SymmetricVector& p);
SymmetricVector elementary_to_power(const SymmetricVector& e);
SymmetricVector elementary_to_homogeneous(const SymmetricVector& e);
SymmetricVector homogeneous_to_elementary(const SymmetricVector& h);

SymmetricVector convert(const SymmetricVector& v, Convention target);

/// Evaluates the chosen symmetric map at the given value vector
/// (a_1..a_d): power -> (sum a, sum a^2, ...), elementary -> (e_1..e_d),
/// homogeneous -> (h_1..h_d).
std::vector<Complex> apply_convention(const std::vector<Complex>& values, Convention c);

}  // namespace twistvn
