#pragma once

#include <span>
#include <vector>

#include "twistvn/blaschke.hpp"
#include "twistvn/types.hpp"

namespace twistvn {

/// An ordered fiber {w : target(w) = source(base)} over a base point.
struct Fiber {
  Complex base;
  std::vector<Complex> values;

  int size() const { return static_cast<int>(values.size()); }
};

/// A permutation of {0..n-1}; map[i] = image of i.
struct Permutation {
  std::vector<int> map;

  static Permutation identity(int n);
  int size() const { return static_cast<int>(map.size()); }
  int operator()(int i) const { return map[i]; }
  bool is_identity() const;
  Permutation inverse() const;
  /// (after * before)(i) = after(before(i))
  static Permutation compose(const Permutation& after, const Permutation& before);
  bool operator==(const Permutation&) const = default;
};

/// Paths inside the unit disk along which fibers are tracked. All kinds
/// reduce to a waypoint chain via discretize(); `samples` controls the
/// initial discretization density.
struct PathSpec {
  enum class Kind { segment, arc, loop_around_point, polyline };

  Kind kind = Kind::polyline;
  std::vector<Complex> nodes;  // segment endpoints or polyline waypoints
  Complex center;              // arc / loop_around_point
  double radius = 0.0;
  double angle0 = 0.0;  // arc start angle
  double angle1 = 0.0;  // arc end angle (anti-clockwise when angle1 > angle0)
  Complex base;         // loop_around_point attachment
  int samples = 64;

  static PathSpec segment(Complex a, Complex b, int samples = 32);
  static PathSpec polyline(std::vector<Complex> pts, int samples = 32);
  static PathSpec arc(Complex center, double radius, double a0, double a1, int samples = 64);
  /// Radial approach from `base` to the circle around `p`, one full
  /// anti-clockwise turn, and the radial return. No detour logic; callers
  /// with other punctures in play should build a polyline via
  /// canonical_path().
  static PathSpec loop_around(Complex base, Complex p, double radius, int samples = 64);

  std::vector<Complex> discretize() const;
  bool is_loop() const;

  /// Throws PathTooClose when a waypoint leaves the unit disk or comes
  /// closer than `clearance` to a puncture.
  void validate(std::span<const Complex> punctures, double clearance) const;
};

struct TrackOptions {
  double corrector_tol = 1e-12;
  double residual_tol = 1e-10;
  double separation_floor = 1e-6;
  double collision_floor = 1e-6;
  double min_step = 1e-12;
  int max_newton = 4;
  double crit_tolerance = 1e-8;
};

struct TrackResult {
  Fiber end_fiber;
  Permutation permutation;  // identity unless the path is a loop
  double max_residual = 0.0;
  long steps_taken = 0;
};

/// The order(target)-many solutions w in the disk of target(w) = c, |c| < 1,
/// sorted lexicographically by (re, im). Throws CriticalValueError when c is
/// within crit_tolerance of a critical value of the target.
std::vector<Complex> solve_fiber(const BlaschkeProduct& target, Complex c,
                                 const TrackOptions& opts = {});

Fiber make_fiber(const BlaschkeProduct& target, const BlaschkeProduct& source, Complex base,
                 const TrackOptions& opts = {});

/// Tracks the fiber of target(w) = source(z) along the path. For closed
/// loops the returned permutation sends the index of each start value to
/// the index of the start value its continuation ends at.
TrackResult track(const BlaschkeProduct& target, const BlaschkeProduct& source,
                  const PathSpec& path, const Fiber& start, const TrackOptions& opts = {});

/// Straight path from `from` to `to`, re-routed around each puncture that
/// comes too close by an anti-clockwise circular detour of radius
/// 0.5 * min(|p - from|, |p - to|) (capped to stay inside the disk).
std::vector<Complex> canonical_path(Complex from, Complex to, std::span<const Complex> punctures);

/// Closed loop based at `base` encircling `p` once anti-clockwise: the
/// canonical path to the circle of the given radius, the full circle, and
/// the reverse canonical path.
PathSpec make_puncture_loop(Complex base, Complex p, double radius,
                            std::span<const Complex> punctures, int samples = 64);

/// Continues the germ with value `value` at `from` (target(value) = source(from))
/// along the canonical path to `to`; returns the continued value.
Complex transport_germ(const BlaschkeProduct& target, const BlaschkeProduct& source, Complex from,
                       Complex to, Complex value, std::span<const Complex> punctures,
                       const TrackOptions& opts = {});

}  // namespace twistvn
