#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "twistvn/blaschke.hpp"
#include "twistvn/monodromy.hpp"

namespace twistvn {

/// An equivalence class of local inverses of the twisted map
/// (B1(z1)+B2(z2), B1(z1)^2+B2(z2)^2). Straight classes route each
/// variable to itself: (w1,w2) = (rho(z1), sigma(z2)); crossed classes
/// swap them: (w1,w2) = (zeta(z2), eta(z1)). Each slot is identified by
/// a monodromy orbit of the corresponding one-variable correspondence.
struct LocalInverseClass {
  enum class Kind { straight, crossed };

  Kind kind = Kind::straight;
  int first_orbit = 0;   // straight: orbit of rho in C11, crossed: orbit of zeta in C12
  int second_orbit = 0;  // straight: orbit of sigma in C22, crossed: orbit of eta in C21

  bool operator==(const LocalInverseClass&) const = default;
};

/// Multiset of class ids with non-negative integer multiplicities; the
/// result type of class composition.
struct FormalClassSum {
  std::map<int, long> terms;

  bool operator==(const FormalClassSum&) const = default;
};

struct AnalysisReport {
  NMatrix n;
  int dimension = 0;
  bool abelian_by_table = false;
  bool abelian_by_connectedness = false;
  std::optional<std::pair<int, int>> witness;  // class ids whose compositions differ
  std::optional<std::pair<FormalClassSum, FormalClassSum>> witness_sums;
  double max_residual = 0.0;  // worst tracking residual seen while building monodromy data
  std::uint64_t seed = 0;

  bool operator==(const AnalysisReport&) const;
};

/// Shared-base analysis context for a pair of Blaschke products: monodromy
/// data for all four correspondences Bj(w) = Bk(z) over one base point per
/// variable, the class enumeration, and germ-wise class composition.
///
/// Base points are chosen pseudo-randomly from the seed; if a choice leads
/// to an ill-conditioned configuration the constructor retries with
/// derived seeds (deterministically).
class ClassAlgebra {
 public:
  ClassAlgebra(BlaschkeProduct b1, BlaschkeProduct b2, std::uint64_t seed);
  ~ClassAlgebra();
  ClassAlgebra(ClassAlgebra&&) noexcept;
  ClassAlgebra& operator=(ClassAlgebra&&) noexcept;

  const NMatrix& n() const;
  int dimension() const;
  const std::vector<LocalInverseClass>& classes() const;
  int class_size(int id) const;  // number of germs of the class at the base
  int identity_class() const;

  /// Formal-sum composition class_a o class_b (apply b first). Germ
  /// counts are conserved: sum of multiplicity * class size equals
  /// class_size(a) * class_size(b).
  FormalClassSum compose(int class_a, int class_b) const;

  /// Builds the full composition table new and decides abelianness both by
  /// the table and by connectedness of the cross correspondence; throws
  /// CrossCheckFailure if the two verdicts disagree.
  AnalysisReport analyze() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper: dim V* = n11*n22 + n12^2 via enumerate + count.
int dimension(const BlaschkeProduct& b1, const BlaschkeProduct& b2, std::uint64_t seed);

/// Composition table of the self-classes of one Blaschke product; the
/// cited single-operator theory says it always commutes.
struct SingleMapTable {
  int class_count = 0;
  std::vector<int> class_sizes;
  std::vector<std::vector<FormalClassSum>> table;
  bool commutative = false;
  double max_residual = 0.0;
};

SingleMapTable single_map_table(const BlaschkeProduct& b, std::uint64_t seed);

/// The combinatorial non-commuting witness for d >= 3 twisted Blaschke
/// products: two crossed variable routings whose compositions differ.
/// Rejects d < 3 (no such witness exists for two factors).
struct RoutingWitness {
  std::vector<int> orders;
  std::vector<int> routing_a;     // slot -> source variable, 0-based
  std::vector<int> routing_b;
  std::vector<int> composed_ab;   // routing of T_a o T_b
  std::vector<int> composed_ba;
  bool differ = false;
};

RoutingWitness multi_blaschke_witness(const std::vector<int>& orders);

}  // namespace twistvn
