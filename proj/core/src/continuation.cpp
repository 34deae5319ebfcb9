#include "twistvn/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twistvn/errors.hpp"
#include "twistvn/poly.hpp"

namespace twistvn {

namespace {

double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double min_pairwise_distance(const std::vector<Complex>& v) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      best = std::min(best, std::abs(v[i] - v[j]));
  return best;
}

void sort_lexicographic(std::vector<Complex>& v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

}  // namespace

Permutation Permutation::identity(int n) {
  Permutation p;
  p.map.resize(n);
  for (int i = 0; i < n; ++i) p.map[i] = i;
  return p;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (map[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.map.resize(size());
  for (int i = 0; i < size(); ++i) p.map[map[i]] = i;
  return p;
}

Permutation Permutation::compose(const Permutation& after, const Permutation& before) {
  Permutation p;
  p.map.resize(before.size());
  for (int i = 0; i < before.size(); ++i) p.map[i] = after.map[before.map[i]];
  return p;
}

PathSpec PathSpec::segment(Complex a, Complex b, int samples) {
  PathSpec p;
  p.kind = Kind::segment;
  p.nodes = {a, b};
  p.samples = samples;
  return p;
}

PathSpec PathSpec::polyline(std::vector<Complex> pts, int samples) {
  PathSpec p;
  p.kind = Kind::polyline;
  p.nodes = std::move(pts);
  p.samples = samples;
  return p;
}

PathSpec PathSpec::arc(Complex center, double radius, double a0, double a1, int samples) {
  PathSpec p;
  p.kind = Kind::arc;
  p.center = center;
  p.radius = radius;
  p.angle0 = a0;
  p.angle1 = a1;
  p.samples = samples;
  return p;
}

PathSpec PathSpec::loop_around(Complex base, Complex p, double radius, int samples) {
  PathSpec spec;
  spec.kind = Kind::loop_around_point;
  spec.base = base;
  spec.center = p;
  spec.radius = radius;
  spec.samples = samples;
  return spec;
}

std::vector<Complex> PathSpec::discretize() const {
  std::vector<Complex> pts;
  switch (kind) {
    case Kind::segment: {
      const int k = std::max(1, samples);
      for (int j = 0; j <= k; ++j)
        pts.push_back(nodes[0] + (nodes[1] - nodes[0]) * (double(j) / k));
      break;
    }
    case Kind::polyline:
      pts = nodes;
      break;
    case Kind::arc: {
      const double span = angle1 - angle0;
      const int k = std::max(8, int(std::ceil(std::abs(span) / (2.0 * kPi) * samples)));
      for (int j = 0; j <= k; ++j)
        pts.push_back(center + std::polar(radius, angle0 + span * (double(j) / k)));
      break;
    }
    case Kind::loop_around_point: {
      const Complex entry = center + radius * unit_dir(base - center);
      const int approach = std::max(4, samples / 4);
      for (int j = 0; j < approach; ++j)
        pts.push_back(base + (entry - base) * (double(j) / approach));
      const double phi0 = std::arg(entry - center);
      const int k = std::max(16, samples);
      for (int j = 0; j <= k; ++j)
        pts.push_back(center + std::polar(radius, phi0 + 2.0 * kPi * (double(j) / k)));
      for (int j = 1; j <= approach; ++j)
        pts.push_back(entry + (base - entry) * (double(j) / approach));
      break;
    }
  }
  return pts;
}

bool PathSpec::is_loop() const {
  auto pts = discretize();
  return pts.size() >= 2 && std::abs(pts.front() - pts.back()) < 1e-12;
}

void PathSpec::validate(std::span<const Complex> punctures, double clearance) const {
  const auto pts = discretize();
  for (Complex z : pts)
    if (std::abs(z) > 1.0 - 1e-9)
      throw PathTooClose("path leaves the unit disk");
  for (std::size_t e = 0; e + 1 < pts.size(); ++e)
    for (Complex p : punctures)
      if (point_segment_distance(p, pts[e], pts[e + 1]) < clearance)
        throw PathTooClose("path too close to a puncture");
}

std::vector<Complex> solve_fiber(const BlaschkeProduct& target, Complex c,
                                 const TrackOptions& opts) {
  if (std::abs(c) >= 1.0 - 1e-12)
    throw std::invalid_argument("solve_fiber: |c| < 1 required");
  for (Complex cv : target.critical_values())
    if (std::abs(c - cv) < opts.crit_tolerance)
      throw CriticalValueError("solve_fiber: c within crit_tolerance of a critical value");

  const auto& rf = target.rational();
  auto p = poly_add(rf.numerator, poly_scale(rf.denominator, -c));
  auto roots = poly_roots(p);
  if (static_cast<int>(roots.size()) != target.order())
    throw NumericalError("solve_fiber: root count != order");

  for (Complex& w : roots) {
    for (int it = 0; it < 2; ++it) {
      Complex f = target.evaluate(w) - c;
      Complex d = target.derivative(w);
      if (std::abs(d) < 1e-14) break;
      w -= f / d;
    }
    if (std::abs(target.evaluate(w) - c) > opts.residual_tol)
      throw NumericalError("solve_fiber: residual too large");
    if (std::abs(w) >= 1.0)
      throw NumericalError("solve_fiber: root outside the unit disk");
  }
  sort_lexicographic(roots);
  if (min_pairwise_distance(roots) < opts.separation_floor)
    throw CriticalValueError("solve_fiber: fiber points below separation floor");
  return roots;
}

Fiber make_fiber(const BlaschkeProduct& target, const BlaschkeProduct& source, Complex base,
                 const TrackOptions& opts) {
  return Fiber{base, solve_fiber(target, source.evaluate(base), opts)};
}

TrackResult track(const BlaschkeProduct& target, const BlaschkeProduct& source,
                  const PathSpec& path, const Fiber& start, const TrackOptions& opts) {
  const auto pts = path.discretize();
  if (pts.size() < 2) throw std::invalid_argument("track: path needs at least two points");
  if (std::abs(pts.front() - start.base) > 1e-9)
    throw std::invalid_argument("track: start fiber not based at path start");
  const int n = start.size();
  if (n != target.order()) throw std::invalid_argument("track: fiber size != target order");

  std::vector<Complex> w = start.values;
  TrackResult result;

  enum class Fail { newton, locality, collision, disk };

  for (std::size_t e = 0; e + 1 < pts.size(); ++e) {
    const Complex a = pts[e], b = pts[e + 1];
    const Complex dz = b - a;
    if (std::abs(dz) < 1e-15) continue;

    double s = 0.0, h = 1.0;
    while (s < 1.0 - 1e-15) {
      h = std::min(h, 1.0 - s);
      const Complex z0 = a + s * dz;
      const Complex z1 = a + (s + h) * dz;
      const Complex c1 = source.evaluate(z1);
      const Complex dsrc = source.derivative(z0) * dz * h;

      // safety radius per sheet: candidates may not leave the basin of
      // their predecessor, which rules out silent sheet swaps
      std::vector<double> guard(n, std::numeric_limits<double>::infinity());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (j != i) guard[i] = std::min(guard[i], 0.35 * std::abs(w[i] - w[j]));

      std::vector<Complex> cand(n);
      bool ok = true;
      Fail why = Fail::newton;
      int worst_iters = 0;
      for (int i = 0; i < n && ok; ++i) {
        Complex wi = w[i];
        const Complex dtw = target.derivative(wi);
        if (std::abs(dtw) > 1e-10) wi += dsrc / dtw;  // Euler predictor
        bool converged = false;
        for (int it = 0; it < opts.max_newton; ++it) {
          const Complex f = target.evaluate(wi) - c1;
          if (std::abs(f) <= opts.corrector_tol) {
            converged = true;
            worst_iters = std::max(worst_iters, it);
            break;
          }
          const Complex d = target.derivative(wi);
          if (std::abs(d) < 1e-14) break;
          wi -= f / d;
        }
        if (!converged && std::abs(target.evaluate(wi) - c1) > opts.corrector_tol) {
          ok = false;
          why = Fail::newton;
        } else if (std::abs(wi - w[i]) > guard[i]) {
          ok = false;
          why = Fail::locality;
        } else {
          cand[i] = wi;
        }
      }

      if (ok && min_pairwise_distance(cand) < opts.collision_floor) {
        ok = false;
        why = Fail::collision;
      }
      if (ok) {
        for (int i = 0; i < n; ++i)
          if (std::abs(cand[i]) >= 1.0) {
            ok = false;
            why = Fail::disk;
          }
      }

      if (!ok) {
        h *= 0.5;
        if (h < opts.min_step) {
          switch (why) {
            case Fail::collision:
              throw PathTooClose("track: fiber values below collision floor");
            case Fail::disk:
              throw NumericalError("track: tracked value left the unit disk");
            default:
              throw TrackingStalled("track: step size underflow");
          }
        }
        continue;
      }

      double res = 0.0;
      for (int i = 0; i < n; ++i)
        res = std::max(res, std::abs(target.evaluate(cand[i]) - c1));
      result.max_residual = std::max(result.max_residual, res);

      w = std::move(cand);
      s += h;
      ++result.steps_taken;
      if (worst_iters <= 2) h = std::min(h * 1.6, 1.0);
    }
  }

  result.end_fiber = Fiber{pts.back(), w};

  if (std::abs(pts.front() - pts.back()) < 1e-12) {
    const double tol = 0.5 * min_pairwise_distance(w);
    Permutation perm;
    perm.map.assign(n, -1);
    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i) {
      int best = -1;
      double best_d = std::numeric_limits<double>::infinity(), second = best_d;
      for (int j = 0; j < n; ++j) {
        const double d = std::abs(w[i] - start.values[j]);
        if (d < best_d) {
          second = best_d;
          best_d = d;
          best = j;
        } else if (d < second) {
          second = d;
        }
      }
      if (best < 0 || best_d >= tol || second < tol)
        throw MatchingAmbiguous("track: ambiguous loop-closure matching");
      if (used[best]) throw MatchingAmbiguous("track: loop-closure matching not a bijection");
      used[best] = true;
      perm.map[i] = best;
    }
    result.permutation = std::move(perm);
  } else {
    result.permutation = Permutation::identity(n);
  }
  return result;
}

std::vector<Complex> canonical_path(Complex from, Complex to,
                                    std::span<const Complex> punctures) {
  std::vector<Complex> pts{from};
  const Complex d = to - from;
  const double len2 = std::norm(d);
  if (len2 < 1e-28) {
    pts.push_back(to);
    return pts;
  }

  struct Detour {
    double t1, t2;
    Complex p;
    double r;
  };
  std::vector<Detour> detours;
  for (Complex p : punctures) {
    const double to_ends = std::min(std::abs(p - from), std::abs(p - to));
    if (to_ends < 1e-12) continue;  // cannot detour around an endpoint
    double r = 0.5 * to_ends;
    r = std::min(r, 0.9 * (1.0 - std::abs(p)));  // keep the detour inside the disk
    if (r <= 0.0) continue;
    if (point_segment_distance(p, from, to) >= r) continue;
    // segment-circle intersection parameters
    const double tq = ((p - from) * std::conj(d)).real() / len2;
    const double dist = std::abs(p - (from + tq * d));
    const double half = std::sqrt(std::max(0.0, r * r - dist * dist) / len2);
    const double t1 = tq - half, t2 = tq + half;
    if (t2 <= 0.0 || t1 >= 1.0) continue;
    if (t1 <= 0.0 || t2 >= 1.0)
      throw PathTooClose("canonical_path: detour circle contains an endpoint");
    detours.push_back({t1, t2, p, r});
  }
  std::sort(detours.begin(), detours.end(),
            [](const Detour& a, const Detour& b) { return a.t1 < b.t1; });
  for (std::size_t i = 0; i + 1 < detours.size(); ++i)
    if (detours[i].t2 > detours[i + 1].t1)
      throw PathTooClose("canonical_path: overlapping detours");

  for (const auto& dt : detours) {
    const Complex z1 = from + dt.t1 * d;
    const Complex z2 = from + dt.t2 * d;
    pts.push_back(z1);
    const double phi1 = std::arg(z1 - dt.p);
    double dphi = std::arg((z2 - dt.p) / (z1 - dt.p));
    if (dphi < 0.0) dphi += 2.0 * kPi;  // detours are always anti-clockwise
    const int k = std::max(8, int(std::ceil(dphi / (2.0 * kPi) * 64)));
    for (int j = 1; j < k; ++j)
      pts.push_back(dt.p + std::polar(dt.r, phi1 + dphi * (double(j) / k)));
    pts.push_back(z2);
  }
  pts.push_back(to);
  return pts;
}

PathSpec make_puncture_loop(Complex base, Complex p, double radius,
                            std::span<const Complex> punctures, int samples) {
  const Complex entry = p + radius * unit_dir(base - p);
  auto approach = canonical_path(base, entry, punctures);

  std::vector<Complex> pts = approach;
  const double phi0 = std::arg(entry - p);
  const int k = std::max(16, samples);
  for (int j = 1; j <= k; ++j)
    pts.push_back(p + std::polar(radius, phi0 + 2.0 * kPi * (double(j) / k)));
  pts.insert(pts.end(), approach.rbegin() + 1, approach.rend());
  return PathSpec::polyline(std::move(pts), samples);
}

Complex transport_germ(const BlaschkeProduct& target, const BlaschkeProduct& source, Complex from,
                       Complex to, Complex value, std::span<const Complex> punctures,
                       const TrackOptions& opts) {
  const Complex c0 = source.evaluate(from);
  if (std::abs(target.evaluate(value) - c0) > 1e-9)
    throw std::invalid_argument("transport_germ: value is not a germ at `from`");
  if (std::abs(from - to) < 1e-14) return value;

  auto fiber = solve_fiber(target, c0, opts);
  int idx = -1;
  const double tol = 0.5 * min_pairwise_distance(fiber);
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    if (std::abs(fiber[i] - value) < std::min(tol, 1e-6)) {
      idx = static_cast<int>(i);
      break;
    }
  }
  if (idx < 0) throw ClassificationError("transport_germ: value does not match a fiber point");
  fiber[idx] = value;

  auto path = PathSpec::polyline(canonical_path(from, to, punctures));
  auto res = track(target, source, path, Fiber{from, fiber}, opts);
  return res.end_fiber.values[idx];
}

}  // namespace twistvn
