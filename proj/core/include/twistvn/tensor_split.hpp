#pragma once

#include <cstdint>
#include <vector>

#include "twistvn/poly.hpp"

namespace twistvn {

enum class SplitVerdict { split, not_split, inconclusive };

const char* to_string(SplitVerdict v);

struct TensorSplitOptions {
  long samples_per_map = 100000;  // parameter samples per point cloud
  double split_threshold = 0.05;
  double merge_threshold = 0.005;
  int pair_subsample = 6000;   // cloud size for 2-coordinate comparisons
  int whole_subsample = 3000;  // cloud size for full-tuple comparisons
};

struct PermutationFinding {
  std::vector<int> perm;  // component index -> compared component index
  bool incompatible = false;
  bool compatible_evidence = false;
  double worst_single = 0.0;  // largest debiased distance over the comparisons
  double worst_pair = 0.0;
  double whole = 0.0;
};

struct TensorSplitResult {
  SplitVerdict verdict = SplitVerdict::inconclusive;
  std::vector<PermutationFinding> findings;  // one per nontrivial permutation
  std::uint64_t seed = 0;
};

/// Sampling-based check of the no-nontrivial-compatible-equation hypothesis
/// for the twisted map built from the component maps F (on its own block of
/// variables) and G (on the other block). Each candidate permutation of the
/// concatenated component tuple is tested by comparing sampled image
/// closures (whole tuple, single coordinates, coordinate pairs) with a
/// debiased nearest-neighbour Hausdorff estimate.
///
/// A permutation is declared incompatible when any comparison exceeds
/// split_threshold; it counts as evidence against splitting when every
/// single-coordinate comparison lies below merge_threshold and nothing
/// exceeds split_threshold.
///
/// Trivial permutations (never tested): the identity, and, when each block
/// has two or more components, the block swap -- for a single component per
/// block the swapped equation is exactly the image-closure test the
/// tensor-split criterion needs, so it is tested.
///
/// F and G must have equal component counts (1 or 2); each component is a
/// polynomial in that block's 1 or 2 disk variables.
TensorSplitResult tensor_split_check(const std::vector<Poly2>& f_components,
                                     const std::vector<Poly2>& g_components, std::uint64_t seed,
                                     const TensorSplitOptions& opts = {});

}  // namespace twistvn
