#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "twistvn/blaschke.hpp"
#include "twistvn/continuation.hpp"

namespace twistvn {

/// Points of the disk over which the correspondence target(w) = source(z)
/// degenerates (or was removed for symmetry). Provenance records which
/// map's critical values generated the point.
struct PuncturePoint {
  Complex z;
  bool from_target_critical = false;  // target(z)-side: z with source(z) in CV(target)
  bool from_source_critical = false;  // z with target(z) in CV(source)
};

struct PunctureSet {
  std::vector<PuncturePoint> points;

  std::vector<Complex> locations() const;
  int size() const { return static_cast<int>(points.size()); }
};

/// All z in the disk with source(z) a critical value of target, union all z
/// with target(z) a critical value of source; deduplicated at 1e-8.
PunctureSet puncture_set(const BlaschkeProduct& target, const BlaschkeProduct& source);

struct OrbitPartition {
  std::vector<std::vector<int>> blocks;  // disjoint, covering {0..n-1}

  int block_count() const { return static_cast<int>(blocks.size()); }
  /// index -> block id
  std::vector<int> block_of(int n) const;
};

struct MonodromyResult {
  Complex base_point;
  Fiber fiber;
  std::vector<Permutation> generators;  // one per puncture
  OrbitPartition orbits;
  int component_count = 0;
  double max_residual = 0.0;
};

/// Loop radius around puncture p: min of 0.1, 0.4 * dist(p, circle),
/// 0.4 * dist(p, other punctures) and half the distance to the base.
double puncture_loop_radius(Complex p, std::span<const Complex> others, Complex base);

/// Monodromy of the correspondence target(w) = source(z) over the disk
/// punctured at the given set, based at the given regular point. One loop
/// generator per puncture; orbits of the generated group give the
/// component count of the correspondence surface.
MonodromyResult monodromy_at_base(const BlaschkeProduct& target, const BlaschkeProduct& source,
                                  const PunctureSet& punctures, Complex base);

/// Same, with a seeded pseudo-random choice of regular base point in the
/// annulus 0.1 <= |z| <= 0.85, at least 0.05 away from every puncture.
MonodromyResult monodromy_group(const BlaschkeProduct& target, const BlaschkeProduct& source,
                                std::uint64_t seed);

/// n[j][k] = component count for the pair (B_{j+1}, B_{k+1}).
/// The off-diagonal symmetry n12 == n21 is asserted.
struct NMatrix {
  std::array<std::array<int, 2>, 2> n{};

  int operator()(int j, int k) const { return n[j][k]; }
};

NMatrix n_matrix(const BlaschkeProduct& b1, const BlaschkeProduct& b2, std::uint64_t seed);

/// Component count of the boundary correspondence
/// {(z,w) in T^2 : b2(w) = b1(z)}, computed by walking z once around the
/// circle and lifting all order(b2) solutions w through the circle covering
/// b2. Independent of the interior tracker; serves as its oracle on the
/// monomial family.
int boundary_walk_count(const BlaschkeProduct& b1, const BlaschkeProduct& b2);

/// Union-find over {0..n-1}.
class DisjointSet {
 public:
  explicit DisjointSet(int n);
  int find(int i);
  void unite(int a, int b);
  int count() const { return count_; }

 private:
  std::vector<int> parent_;
  int count_;
};

}  // namespace twistvn
