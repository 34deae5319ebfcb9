#include "twistvn/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twistvn/errors.hpp"
#include "twistvn/poly.hpp"

namespace twistvn {

namespace {

constexpr double kPunctureDedupTol = 1e-8;
constexpr double kPunctureResidualTol = 1e-9;

std::vector<Complex> dedup(std::vector<Complex> pts, double tol) {
  std::vector<Complex> out;
  for (Complex z : pts) {
    bool found = false;
    for (Complex w : out)
      if (std::abs(z - w) < tol) found = true;
    if (!found) out.push_back(z);
  }
  return out;
}

/// Interior solutions of B(z) = v for an interior value v, without the
/// critical-value guard (v is typically a critical value here).
std::vector<Complex> interior_preimages(const BlaschkeProduct& b, Complex v) {
  const auto& rf = b.rational();
  auto p = poly_add(rf.numerator, poly_scale(rf.denominator, -v));
  auto roots = poly_roots(p);
  std::vector<Complex> out;
  for (Complex z : roots) {
    for (int it = 0; it < 2; ++it) {
      Complex f = b.evaluate(z) - v;
      Complex d = b.derivative(z);
      if (std::abs(d) < 1e-12) break;
      z -= f / d;
    }
    if (std::abs(z) < 1.0 && std::abs(b.evaluate(z) - v) < kPunctureResidualTol)
      out.push_back(z);
  }
  return out;
}

}  // namespace

std::vector<Complex> PunctureSet::locations() const {
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.z);
  return out;
}

PunctureSet puncture_set(const BlaschkeProduct& target, const BlaschkeProduct& source) {
  PunctureSet ps;
  auto add = [&ps](Complex z, bool from_target) {
    for (auto& p : ps.points) {
      if (std::abs(p.z - z) < kPunctureDedupTol) {
        p.from_target_critical |= from_target;
        p.from_source_critical |= !from_target;
        return;
      }
    }
    ps.points.push_back({z, from_target, !from_target});
  };

  // fiber branches where source(z) is a critical value of the target
  for (Complex v : dedup(target.critical_values(), 1e-10))
    for (Complex z : interior_preimages(source, v)) add(z, /*from_target=*/true);
  // symmetric side, removed so the correspondence matches its transpose
  for (Complex v : dedup(source.critical_values(), 1e-10))
    for (Complex z : interior_preimages(target, v)) add(z, /*from_target=*/false);

  std::sort(ps.points.begin(), ps.points.end(), [](const PuncturePoint& a, const PuncturePoint& b) {
    return a.z.real() != b.z.real() ? a.z.real() < b.z.real() : a.z.imag() < b.z.imag();
  });
  return ps;
}

DisjointSet::DisjointSet(int n) : parent_(n), count_(n) {
  for (int i = 0; i < n; ++i) parent_[i] = i;
}

int DisjointSet::find(int i) {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

void DisjointSet::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a != b) {
    parent_[a] = b;
    --count_;
  }
}

std::vector<int> OrbitPartition::block_of(int n) const {
  std::vector<int> out(n, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int i : blocks[b]) out[i] = static_cast<int>(b);
  return out;
}

double puncture_loop_radius(Complex p, std::span<const Complex> others, Complex base) {
  double r = std::min({0.1, 0.4 * (1.0 - std::abs(p)), 0.5 * std::abs(base - p)});
  for (Complex q : others)
    if (std::abs(q - p) > 1e-15) r = std::min(r, 0.4 * std::abs(p - q));
  return r;
}

MonodromyResult monodromy_at_base(const BlaschkeProduct& target, const BlaschkeProduct& source,
                                  const PunctureSet& punctures, Complex base) {
  MonodromyResult res;
  res.base_point = base;
  res.fiber = make_fiber(target, source, base);
  const int n = res.fiber.size();

  const auto locs = punctures.locations();
  for (std::size_t pi = 0; pi < locs.size(); ++pi) {
    const Complex p = locs[pi];
    const double r = puncture_loop_radius(p, locs, base);
    if (r <= 0.0) throw NumericalError("monodromy: degenerate loop radius");

    auto loop = make_puncture_loop(base, p, r, locs);
    loop.validate(locs, std::min(0.25 * r, 0.01));
    auto tr = track(target, source, loop, res.fiber);
    res.max_residual = std::max(res.max_residual, tr.max_residual);
    res.generators.push_back(tr.permutation);
  }

  DisjointSet ds(n);
  for (const auto& g : res.generators)
    for (int i = 0; i < n; ++i) ds.unite(i, g(i));

  std::vector<std::vector<int>> by_root(n);
  for (int i = 0; i < n; ++i) by_root[ds.find(i)].push_back(i);
  for (auto& blk : by_root)
    if (!blk.empty()) res.orbits.blocks.push_back(std::move(blk));
  std::sort(res.orbits.blocks.begin(), res.orbits.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  res.component_count = res.orbits.block_count();
  return res;
}

MonodromyResult monodromy_group(const BlaschkeProduct& target, const BlaschkeProduct& source,
                                std::uint64_t seed) {
  const auto punctures = puncture_set(target, source);
  const auto locs = punctures.locations();
  std::mt19937_64 rng(seed);

  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double r = std::sqrt(0.01 + uniform01(rng) * (0.85 * 0.85 - 0.01));
    const double t = 2.0 * kPi * uniform01(rng);
    const Complex z = std::polar(r, t);

    bool ok = true;
    for (Complex p : locs)
      if (std::abs(z - p) < 0.05) ok = false;
    if (!ok) continue;
    // keep the fiber well-conditioned
    const Complex c = source.evaluate(z);
    for (Complex cv : target.critical_values())
      if (std::abs(c - cv) < 1e-3) ok = false;
    if (!ok) continue;

    try {
      return monodromy_at_base(target, source, punctures, z);
    } catch (const NumericalError&) {
      continue;
    }
  }
  throw NumericalError("monodromy_group: no usable base point after 1000 attempts");
}

NMatrix n_matrix(const BlaschkeProduct& b1, const BlaschkeProduct& b2, std::uint64_t seed) {
  const BlaschkeProduct* b[2] = {&b1, &b2};
  NMatrix m;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      const std::uint64_t s = seed ^ (0x9E3779B97F4A7C15ull * std::uint64_t(j * 2 + k + 1));
      m.n[j][k] = monodromy_group(*b[j], *b[k], s).component_count;
    }
  if (m.n[0][1] != m.n[1][0])
    throw CrossCheckFailure("n_matrix: cross counts n12 and n21 disagree");
  return m;
}

int boundary_walk_count(const BlaschkeProduct& b1, const BlaschkeProduct& b2) {
  const int n = b2.order();
  const Complex z0(1.0, 0.0);
  const auto start = b2.boundary_preimages(b1.evaluate(z0));
  double start_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) start_gap = std::min(start_gap, std::abs(start[i] - start[j]));

  std::vector<Complex> w = start;
  Complex c_prev = b1.evaluate(z0);
  double theta = 0.0;
  double dtheta = 2.0 * kPi / 4096.0;
  long samples = 0;
  const long max_samples = 1L << 20;

  while (theta < 2.0 * kPi - 1e-15) {
    const double step = std::min(dtheta, 2.0 * kPi - theta);
    const double theta_next = theta + step;
    const Complex c = b1.evaluate(std::polar(1.0, theta_next));

    bool ok = std::abs(std::arg(c / c_prev)) <= kPi / 4.0;
    std::vector<Complex> cand(n);
    if (ok) {
      for (int i = 0; i < n && ok; ++i) {
        Complex wi = w[i];
        bool conv = false;
        for (int it = 0; it < 8; ++it) {
          const Complex f = b2.evaluate(wi) - c;
          if (std::abs(f) <= 1e-11) {
            conv = true;
            break;
          }
          const Complex d = b2.derivative(wi);
          if (std::abs(d) < 1e-14) break;
          wi -= f / d;
          wi /= std::abs(wi);
        }
        if (!conv) {
          ok = false;
          break;
        }
        // the lift must move less than half the gap to its neighbours
        double gap = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
          if (j != i) gap = std::min(gap, std::abs(w[j] - w[i]));
        if (n > 1 && std::abs(wi - w[i]) > 0.4 * gap) {
          ok = false;
          break;
        }
        cand[i] = wi;
      }
    }

    if (!ok) {
      dtheta *= 0.5;
      if (++samples > max_samples)
        throw NumericalError("boundary_walk_count: refinement exceeded 2^20 samples");
      continue;
    }
    w = std::move(cand);
    c_prev = c;
    theta = theta_next;
    dtheta = std::min(dtheta * 1.3, 2.0 * kPi / 1024.0);
    if (++samples > max_samples)
      throw NumericalError("boundary_walk_count: refinement exceeded 2^20 samples");
  }

  // match the returned fiber against the marked start fiber
  Permutation perm;
  perm.map.assign(n, -1);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      const double d = std::abs(w[i] - start[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best < 0 || (n > 1 && best_d >= 0.5 * start_gap) || used[best])
      throw MatchingAmbiguous("boundary_walk_count: ambiguous return matching");
    used[best] = true;
    perm.map[i] = best;
  }

  DisjointSet ds(n);
  for (int i = 0; i < n; ++i) ds.unite(i, perm(i));
  return ds.count();
}

}  // namespace twistvn
