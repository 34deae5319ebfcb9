#include "twistvn/tensor_split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "twistvn/types.hpp"

namespace twistvn {

namespace {

// Point clouds are flat double arrays, `dim` reals per point.

double directed_brute(const std::vector<double>& A, const std::vector<double>& B, int dim) {
  const long na = static_cast<long>(A.size()) / dim;
  const long nb = static_cast<long>(B.size()) / dim;
  double worst2 = 0.0;
  for (long a = 0; a < na; ++a) {
    double best2 = std::numeric_limits<double>::infinity();
    const double* pa = &A[a * dim];
    for (long b = 0; b < nb; ++b) {
      const double* pb = &B[b * dim];
      double d2 = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double t = pa[k] - pb[k];
        d2 += t * t;
      }
      if (d2 < best2) {
        best2 = d2;
        if (best2 <= worst2) break;  // cannot raise the running max
      }
    }
    worst2 = std::max(worst2, best2);
  }
  return std::sqrt(worst2);
}

/// Uniform-cell index over a 2D cloud for nearest-neighbour queries.
class Grid2 {
 public:
  explicit Grid2(const std::vector<double>& pts) : pts_(pts) {
    const long n = static_cast<long>(pts.size()) / 2;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (long i = 0; i < n; ++i) {
      x0 = std::min(x0, pts[2 * i]);
      x1 = std::max(x1, pts[2 * i]);
      y0 = std::min(y0, pts[2 * i + 1]);
      y1 = std::max(y1, pts[2 * i + 1]);
    }
    x0_ = x0;
    y0_ = y0;
    cell_ = std::max({(x1 - x0) / 256.0, (y1 - y0) / 256.0, 1e-9});
    nx_ = int((x1 - x0) / cell_) + 2;
    ny_ = int((y1 - y0) / cell_) + 2;
    buckets_.resize(std::size_t(nx_) * ny_);
    for (long i = 0; i < n; ++i) buckets_[cell_of(pts[2 * i], pts[2 * i + 1])].push_back(i);
  }

  double nn_dist(double x, double y) const {
    const int cx = std::clamp(int((x - x0_) / cell_), 0, nx_ - 1);
    const int cy = std::clamp(int((y - y0_) / cell_), 0, ny_ - 1);
    double best2 = std::numeric_limits<double>::infinity();
    const int max_ring = std::max(nx_, ny_);
    for (int ring = 0; ring <= max_ring; ++ring) {
      if (ring > 0) {
        const double reachable = (ring - 1) * cell_;
        if (reachable * reachable > best2) break;
      }
      for (int dx = -ring; dx <= ring; ++dx) {
        for (int dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
          const int gx = cx + dx, gy = cy + dy;
          if (gx < 0 || gy < 0 || gx >= nx_ || gy >= ny_) continue;
          for (long i : buckets_[std::size_t(gx) * ny_ + gy]) {
            const double tx = pts_[2 * i] - x, ty = pts_[2 * i + 1] - y;
            best2 = std::min(best2, tx * tx + ty * ty);
          }
        }
      }
    }
    return std::sqrt(best2);
  }

 private:
  std::size_t cell_of(double x, double y) const {
    const int gx = std::clamp(int((x - x0_) / cell_), 0, nx_ - 1);
    const int gy = std::clamp(int((y - y0_) / cell_), 0, ny_ - 1);
    return std::size_t(gx) * ny_ + gy;
  }

  const std::vector<double>& pts_;
  double x0_ = 0, y0_ = 0, cell_ = 1;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<long>> buckets_;
};

double directed_any(const std::vector<double>& A, const std::vector<double>& B, int dim) {
  if (dim == 2) {
    Grid2 g(B);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < A.size(); i += 2)
      worst = std::max(worst, g.nn_dist(A[i], A[i + 1]));
    return worst;
  }
  return directed_brute(A, B, dim);
}

double symmetric_hausdorff(const std::vector<double>& A, const std::vector<double>& B, int dim) {
  return std::max(directed_any(A, B, dim), directed_any(B, A, dim));
}

void split_halves(const std::vector<double>& X, int dim, std::vector<double>& even,
                  std::vector<double>& odd) {
  const long n = static_cast<long>(X.size()) / dim;
  even.clear();
  odd.clear();
  for (long i = 0; i < n; ++i) {
    auto& dst = (i % 2 == 0) ? even : odd;
    dst.insert(dst.end(), X.begin() + i * dim, X.begin() + (i + 1) * dim);
  }
}

/// Nearest-neighbour Hausdorff estimate with the finite-sample noise floor
/// (half-vs-half self distance) subtracted. Equal closures give values
/// near zero; genuinely different closures keep their distance.
double debiased_distance(const std::vector<double>& A, const std::vector<double>& B, int dim) {
  const double raw = symmetric_hausdorff(A, B, dim);
  std::vector<double> e, o;
  split_halves(A, dim, e, o);
  const double floor_a = symmetric_hausdorff(e, o, dim);
  split_halves(B, dim, e, o);
  const double floor_b = symmetric_hausdorff(e, o, dim);
  return std::max(0.0, raw - std::max(floor_a, floor_b));
}

struct Cloud {
  long n = 0;
  std::vector<std::vector<Complex>> comp;  // [component][sample]
};

Cloud sample_cloud(const std::vector<Poly2>& F, const std::vector<Poly2>& G, int p, long n,
                   std::mt19937_64& rng) {
  Cloud c;
  c.n = n;
  c.comp.assign(2 * p, std::vector<Complex>(n));
  for (long s = 0; s < n; ++s) {
    Complex zA[2] = {}, zB[2] = {};
    for (int v = 0; v < p; ++v) {
      zA[v] = std::polar(std::sqrt(uniform01(rng)), 2.0 * kPi * uniform01(rng));
      zB[v] = std::polar(std::sqrt(uniform01(rng)), 2.0 * kPi * uniform01(rng));
    }
    for (int i = 0; i < p; ++i) {
      c.comp[i][s] = F[i](zA[0], zA[1]);
      c.comp[p + i][s] = G[i](zB[0], zB[1]);
    }
  }
  return c;
}

std::vector<double> pack(const Cloud& c, const std::vector<int>& comps, long stride) {
  std::vector<double> out;
  out.reserve((c.n / stride + 1) * comps.size() * 2);
  for (long s = 0; s < c.n; s += stride) {
    for (int i : comps) {
      out.push_back(c.comp[i][s].real());
      out.push_back(c.comp[i][s].imag());
    }
  }
  return out;
}

}  // namespace

const char* to_string(SplitVerdict v) {
  switch (v) {
    case SplitVerdict::split: return "split";
    case SplitVerdict::not_split: return "not-split";
    case SplitVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

TensorSplitResult tensor_split_check(const std::vector<Poly2>& f_components,
                                     const std::vector<Poly2>& g_components, std::uint64_t seed,
                                     const TensorSplitOptions& opts) {
  const int p = static_cast<int>(f_components.size());
  if (p < 1 || p > 2 || g_components.size() != f_components.size())
    throw std::invalid_argument("tensor_split_check: F and G need equal component counts (1 or 2)");
  const int m = 2 * p;

  std::mt19937_64 rng(seed);
  const Cloud cloud_a = sample_cloud(f_components, g_components, p, opts.samples_per_map, rng);
  const Cloud cloud_b = sample_cloud(f_components, g_components, p, opts.samples_per_map, rng);

  const long pair_stride = std::max(1L, cloud_a.n / opts.pair_subsample);
  const long whole_stride = std::max(1L, cloud_a.n / opts.whole_subsample);

  std::map<std::vector<int>, double> cache;
  auto compare = [&](const std::vector<int>& lhs, const std::vector<int>& rhs) -> double {
    std::vector<int> key{static_cast<int>(lhs.size())};
    key.insert(key.end(), lhs.begin(), lhs.end());
    key.insert(key.end(), rhs.begin(), rhs.end());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const long stride = lhs.size() == 1 ? 1 : (lhs.size() == 2 ? pair_stride : whole_stride);
    const double d = debiased_distance(pack(cloud_a, lhs, stride), pack(cloud_b, rhs, stride),
                                       static_cast<int>(lhs.size()) * 2);
    cache.emplace(std::move(key), d);
    return d;
  };

  std::vector<int> block_swap(m);
  for (int i = 0; i < m; ++i) block_swap[i] = (i + p) % m;

  TensorSplitResult result;
  result.seed = seed;

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  bool all_incompatible = true;
  bool any_compatible = false;
  do {
    bool is_identity = true;
    for (int i = 0; i < m; ++i)
      if (perm[i] != i) is_identity = false;
    if (is_identity) continue;
    if (p >= 2 && perm == block_swap) continue;  // definitionally trivial for two-component blocks

    PermutationFinding f;
    f.perm = perm;

    for (int i = 0; i < m; ++i)
      f.worst_single = std::max(f.worst_single, compare({i}, {perm[i]}));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        f.worst_pair = std::max(f.worst_pair, compare({i, j}, {perm[i], perm[j]}));
    std::vector<int> all(m), image(m);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < m; ++i) image[i] = perm[i];
    f.whole = compare(all, image);

    const double worst_any = std::max({f.worst_single, f.worst_pair, f.whole});
    f.incompatible = worst_any > opts.split_threshold;
    f.compatible_evidence =
        !f.incompatible && f.worst_single < opts.merge_threshold;

    all_incompatible = all_incompatible && f.incompatible;
    any_compatible = any_compatible || f.compatible_evidence;
    result.findings.push_back(std::move(f));
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (all_incompatible)
    result.verdict = SplitVerdict::split;
  else if (any_compatible)
    result.verdict = SplitVerdict::not_split;
  else
    result.verdict = SplitVerdict::inconclusive;
  return result;
}

}  // namespace twistvn
