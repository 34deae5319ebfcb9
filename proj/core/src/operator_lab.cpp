#include "twistvn/operator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "twistvn/errors.hpp"
#include "twistvn/monodromy.hpp"  // DisjointSet

namespace twistvn {

TruncatedOperator mult_matrix(const Poly2& symbol, int N) {
  if (N < 1) throw std::invalid_argument("mult_matrix: N >= 1 required");
  for (const auto& t : symbol.terms())
    if (t.a + t.b >= N)
      throw std::invalid_argument("mult_matrix: symbol total degree must be < N");

  TruncatedBergmanSpace space{N};
  TruncatedOperator op;
  op.N = N;
  op.deg1 = symbol.degree1();
  op.deg2 = symbol.degree2();
  op.matrix = Eigen::MatrixXcd::Zero(space.dim(), space.dim());

  for (const auto& t : symbol.terms()) {
    for (int p = 0; p + t.a < N; ++p)
      for (int q = 0; q + t.b < N; ++q) {
        const double ratio =
            std::sqrt(space.weight(p + t.a, q + t.b) / space.weight(p, q));
        op.matrix(space.index(p + t.a, q + t.b), space.index(p, q)) += t.c * ratio;
      }
  }
  return op;
}

namespace {

struct EquationEntry {
  long unknown;  // r * n + c
  Complex coeff;
};

}  // namespace

CommutantResult joint_commutant_dim(const std::vector<Poly2>& symbols, int N, double tau,
                                    int margin_override) {
  if (symbols.empty()) throw std::invalid_argument("joint_commutant_dim: no symbols");
  int D = 0;
  for (const auto& s : symbols) D = std::max({D, s.degree1(), s.degree2()});
  const int margin = margin_override > 0 ? margin_override : D;
  if (2 * margin >= N)
    throw std::invalid_argument("joint_commutant_dim: margin condition 2D < N violated");

  TruncatedBergmanSpace space{N};
  const int n = space.dim();
  const long unknowns = long(n) * n;

  auto deep = [&](int flat) {
    const int p = flat / N, q = flat % N;
    return p < N - margin && q < N - margin;
  };

  std::vector<Eigen::MatrixXcd> mats;
  for (const auto& s : symbols) mats.push_back(mult_matrix(s, N).matrix);

  // sparse nonzero lists per row / column of each operator
  struct SparseOp {
    std::vector<std::vector<std::pair<int, Complex>>> by_col, by_row;
  };
  auto sparsify = [&](const Eigen::MatrixXcd& M) {
    SparseOp s;
    s.by_col.resize(n);
    s.by_row.resize(n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r)
        if (M(r, c) != Complex(0.0, 0.0)) {
          s.by_col[c].push_back({r, M(r, c)});
          s.by_row[r].push_back({c, M(r, c)});
        }
    return s;
  };

  std::vector<std::vector<EquationEntry>> equations;
  for (const auto& M : mats) {
    const SparseOp sp = sparsify(M);
    // [X, M] on all rows x deep columns
    for (int c = 0; c < n; ++c) {
      if (!deep(c)) continue;
      for (int r = 0; r < n; ++r) {
        std::vector<EquationEntry> eq;
        for (const auto& [k, v] : sp.by_col[c]) eq.push_back({long(r) * n + k, v});
        for (const auto& [k, v] : sp.by_row[r]) eq.push_back({long(k) * n + c, -v});
        if (!eq.empty()) equations.push_back(std::move(eq));
      }
    }
    // [X, M*] on deep rows x all columns; M*(i,j) = conj(M(j,i))
    for (int r = 0; r < n; ++r) {
      if (!deep(r)) continue;
      for (int c = 0; c < n; ++c) {
        std::vector<EquationEntry> eq;
        // (X M*)(r,c) = sum_k X(r,k) conj(M(c,k))
        for (const auto& [k, v] : sp.by_row[c]) eq.push_back({long(r) * n + k, std::conj(v)});
        // (M* X)(r,c) = sum_k conj(M(k,r)) X(k,c)
        for (const auto& [k, v] : sp.by_col[r]) eq.push_back({long(k) * n + c, -std::conj(v)});
        if (!eq.empty()) equations.push_back(std::move(eq));
      }
    }
  }

  // group unknowns into independent blocks by equation co-occurrence
  std::vector<long> touched_map(unknowns, -1);
  std::vector<long> touched;
  for (const auto& eq : equations)
    for (const auto& e : eq)
      if (touched_map[e.unknown] < 0) {
        touched_map[e.unknown] = long(touched.size());
        touched.push_back(e.unknown);
      }
  // untouched unknowns carry no information and are pinned to zero

  DisjointSet ds(static_cast<int>(touched.size()));
  for (const auto& eq : equations)
    for (std::size_t i = 1; i < eq.size(); ++i)
      ds.unite(int(touched_map[eq[0].unknown]), int(touched_map[eq[i].unknown]));

  std::map<int, std::vector<long>> comp_unknowns;  // root -> touched indices
  for (std::size_t i = 0; i < touched.size(); ++i)
    comp_unknowns[ds.find(int(i))].push_back(long(i));
  std::map<int, std::vector<const std::vector<EquationEntry>*>> comp_equations;
  for (const auto& eq : equations)
    comp_equations[ds.find(int(touched_map[eq[0].unknown]))].push_back(&eq);

  auto build_block = [&](const std::vector<long>& unk,
                         const std::vector<const std::vector<EquationEntry>*>& eqs) {
    std::map<long, int> local;
    for (std::size_t i = 0; i < unk.size(); ++i) local[unk[i]] = int(i);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(long(eqs.size()), long(unk.size()));
    for (std::size_t e = 0; e < eqs.size(); ++e)
      for (const auto& entry : *eqs[e])
        A(long(e), local.at(touched_map[entry.unknown])) += entry.coeff;
    return A;
  };

  // pass 1: all singular values, global scale
  double sigma_max = 0.0;
  for (const auto& [root, unk] : comp_unknowns) {
    Eigen::MatrixXcd A = build_block(unk, comp_equations[root]);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    if (svd.singularValues().size() > 0) sigma_max = std::max(sigma_max, svd.singularValues()(0));
  }
  if (sigma_max == 0.0) throw NumericalError("joint_commutant_dim: zero equation system");
  const double thr = tau * sigma_max;

  CommutantResult result;
  result.N = N;
  result.margin = margin;

  // pass 2: nullspace vectors of every equation block, plus the gap of the
  // equation spectrum itself
  struct NullVec {
    const std::vector<long>* unknowns;  // indices into `touched`
    Eigen::VectorXcd coeffs;
  };
  std::vector<NullVec> null_vecs;
  double min_kept = std::numeric_limits<double>::infinity();
  double max_discarded = 0.0;
  for (const auto& [root, unk] : comp_unknowns) {
    Eigen::MatrixXcd A = build_block(unk, comp_equations[root]);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
    long rank = 0;
    for (long i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) >= thr) {
        ++rank;
        min_kept = std::min(min_kept, svd.singularValues()(i));
      } else {
        max_discarded = std::max(max_discarded, svd.singularValues()(i));
      }
    }
    for (long v = rank; v < A.cols(); ++v)
      null_vecs.push_back({&unk, svd.matrixV().col(v)});
  }
  const double gap_equations = max_discarded > 0.0 ? min_kept / max_discarded : 1e18;

  // The equation nullspace still contains directions supported near the
  // truncation boundary, where the interior equations thin out. Compressions
  // of genuine commutant elements are the directions visible on the
  // uncontaminated block, so the dimension is the rank of the nullspace
  // restricted to entries with all four indices below N - 2*margin.
  const int delta = std::max(2, N - 2 * margin);
  std::vector<long> deep_pos(unknowns, -1);
  long deep_count = 0;
  for (int rp = 0; rp < delta; ++rp)
    for (int rq = 0; rq < delta; ++rq)
      for (int cp = 0; cp < delta; ++cp)
        for (int cq = 0; cq < delta; ++cq) {
          const long flat = long(rp * N + rq) * n + (cp * N + cq);
          deep_pos[flat] = deep_count++;
        }

  Eigen::MatrixXcd restricted = Eigen::MatrixXcd::Zero(deep_count, long(null_vecs.size()));
  for (std::size_t v = 0; v < null_vecs.size(); ++v) {
    const auto& nv = null_vecs[v];
    for (std::size_t i = 0; i < nv.unknowns->size(); ++i) {
      const long flat = touched[(*nv.unknowns)[i]];
      if (deep_pos[flat] >= 0) restricted(deep_pos[flat], long(v)) = nv.coeffs(long(i));
    }
  }

  double gap_restriction = 1e18;
  if (null_vecs.empty()) {
    result.dim = 0;
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> rsvd(restricted, Eigen::ComputeFullV);
    const auto& sig = rsvd.singularValues();
    const double rthr = sig.size() > 0 ? tau * std::max(sig(0), 1e-300) : 0.0;
    long rank = 0;
    double rmin_kept = std::numeric_limits<double>::infinity(), rmax_disc = 0.0;
    for (long i = 0; i < sig.size(); ++i) {
      if (sig(i) >= rthr && sig(i) > 0.0) {
        ++rank;
        rmin_kept = std::min(rmin_kept, sig(i));
      } else {
        rmax_disc = std::max(rmax_disc, sig(i));
      }
    }
    if (long(null_vecs.size()) > sig.size()) rmax_disc = std::max(rmax_disc, 0.0);
    gap_restriction = rmax_disc > 0.0 ? rmin_kept / rmax_disc : 1e18;
    result.dim = int(rank);

    // materialize the rank-many combinations with independent deep parts
    for (long i = 0; i < rank; ++i) {
      Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(n, n);
      for (std::size_t v = 0; v < null_vecs.size(); ++v) {
        const Complex c = rsvd.matrixV()(long(v), i);
        if (std::abs(c) < 1e-300) continue;
        const auto& nv = null_vecs[v];
        for (std::size_t j = 0; j < nv.unknowns->size(); ++j) {
          const long flat = touched[(*nv.unknowns)[j]];
          X(flat / n, flat % n) += c * nv.coeffs(long(j));
        }
      }
      result.basis.push_back(std::move(X));
    }
  }

  result.gap = std::min(gap_equations, gap_restriction);
  result.low_confidence = result.gap < 1e4;
  return result;
}

AbelianCheck commutant_abelian_check(const std::vector<Eigen::MatrixXcd>& basis, int restrict_dim,
                                     int N) {
  AbelianCheck out;
  out.abelian = true;
  if (basis.empty()) return out;
  const int n = N * N;
  if (basis.front().rows() != n)
    throw std::invalid_argument("commutant_abelian_check: basis/N mismatch");

  std::vector<int> block;
  for (int p = 0; p < restrict_dim; ++p)
    for (int q = 0; q < restrict_dim; ++q) block.push_back(p * N + q);

  auto restricted = [&](const Eigen::MatrixXcd& M) {
    Eigen::MatrixXcd R(block.size(), block.size());
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = 0; j < block.size(); ++j) R(i, j) = M(block[i], block[j]);
    return R;
  };

  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const Eigen::MatrixXcd comm = basis[i] * basis[j] - basis[j] * basis[i];
      const double ni = std::max(restricted(basis[i]).norm(), 1e-30);
      const double nj = std::max(restricted(basis[j]).norm(), 1e-30);
      const double res = restricted(comm).norm() / (ni * nj);
      out.max_residual = std::max(out.max_residual, res);
    }
  }
  out.abelian = out.max_residual < 1e-6;
  return out;
}

int abelian_check_depth(int k, int l, int N) {
  // products of compressions are exact on columns whose weighted degree
  // keeps every image index inside the truncation
  const int depth = 1 + int(std::floor(double(N - 1) * std::min(k, l) / double(k + l)));
  return std::max(2, std::min(depth, N));
}

std::vector<Poly2> twisted_power_symbols(int k, int l, Convention c) {
  if (k < 1 || l < 1) throw std::invalid_argument("twisted_power_symbols: k,l >= 1");
  Poly2 x = Poly2::monomial(k, 0);   // z1^k
  Poly2 y = Poly2::monomial(0, l);   // z2^l
  switch (c) {
    case Convention::power:
      return {x.plus(y), x.times(x).plus(y.times(y))};
    case Convention::elementary:
      return {x.plus(y), x.times(y)};
    case Convention::homogeneous:
      return {x.plus(y), x.times(x).plus(x.times(y)).plus(y.times(y))};
  }
  throw std::logic_error("twisted_power_symbols: unreachable");
}

}  // namespace twistvn
