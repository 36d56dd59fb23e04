// Copyright 2026 The trpkit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "trpkit/linalg/svd.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "trpkit/common/error.h"

namespace trpkit {
namespace linalg {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
// Singular values at or below this fraction of sigma_max get a completed
// (rather than normalized) left singular vector.
constexpr double kNullSpaceRelTol = 1e-13;
constexpr double kSignTol = 1e-12;

// Column-major scratch matrix used by the Jacobi sweeps.
struct Columns {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  double *col(std::size_t j) { return data.data() + j * rows; }
  const double *col(std::size_t j) const { return data.data() + j * rows; }
};

double Dot(const double *x, const double *y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

// Rotates columns p and q so that they become orthogonal.
void Rotate(double *xp, double *xq, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = xp[i];
    const double b = xq[i];
    xp[i] = c * a - s * b;
    xq[i] = s * a + c * b;
  }
}

// Orthogonalizes x against the first `count` columns of basis (two passes of
// modified Gram-Schmidt) and returns its remaining norm.
double Orthogonalize(std::vector<double> &x, const Columns &basis,
                     std::size_t count) {
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < count; ++j) {
      const double proj = Dot(basis.col(j), x.data(), x.size());
      const double *b = basis.col(j);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= proj * b[i];
    }
  }
  return std::sqrt(Dot(x.data(), x.data(), x.size()));
}

// Builds an orthonormal left basis. Columns with non-negligible singular
// values come from the rotated data; the rest are completed from the
// standard basis.
Columns BuildLeftVectors(const Columns &work,
                         const std::vector<std::size_t> &order,
                         const std::vector<double> &norms) {
  const std::size_t m = work.rows;
  const std::size_t n = order.size();
  Columns u{m, n, std::vector<double>(m * n, 0.0)};
  const double sigma_max = n > 0 ? norms[order[0]] : 0.0;
  std::vector<double> x(m);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = norms[order[j]];
    bool accepted = false;
    if (s > kNullSpaceRelTol * sigma_max && s > 0.0) {
      const double *w = work.col(order[j]);
      for (std::size_t i = 0; i < m; ++i) x[i] = w[i] / s;
      const double rest = Orthogonalize(x, u, j);
      if (rest > 0.5) {
        for (std::size_t i = 0; i < m; ++i) u.col(j)[i] = x[i] / rest;
        accepted = true;
      }
    }
    if (accepted) continue;
    // Completion: standard basis vector with the largest residual.
    double best = -1.0;
    std::vector<double> best_x;
    for (std::size_t e = 0; e < m; ++e) {
      std::fill(x.begin(), x.end(), 0.0);
      x[e] = 1.0;
      const double rest = Orthogonalize(x, u, j);
      if (rest > best + 1e-12) {
        best = rest;
        best_x = x;
      }
    }
    for (std::size_t i = 0; i < m; ++i) u.col(j)[i] = best_x[i] / best;
  }
  return u;
}

// SVD of a matrix with rows >= cols.
SvdFactors TallSvd(const Matrix &a, const SvdOptions &options) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  Columns work{m, n, std::vector<double>(m * n)};
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) work.col(j)[i] = a(i, j);
  }
  Columns v{n, n, std::vector<double>(n * n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) v.col(j)[j] = 1.0;

  const double fro = std::sqrt(Dot(work.data.data(), work.data.data(),
                                   work.data.size()));
  const double rel_tol = static_cast<double>(m) * kEps;
  const double abs_floor =
      (options.off_diagonal_tol * fro) * (options.off_diagonal_tol * fro);

  bool converged = fro == 0.0;
  double residual = 0.0;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    bool rotated = false;
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double *xp = work.col(p);
        double *xq = work.col(q);
        const double alpha = Dot(xp, xp, m);
        const double beta = Dot(xq, xq, m);
        const double gamma = Dot(xp, xq, m);
        off += gamma * gamma;
        if (std::abs(gamma) <=
            std::max(rel_tol * std::sqrt(alpha * beta), abs_floor)) {
          continue;
        }
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        Rotate(xp, xq, m, c, s);
        Rotate(v.col(p), v.col(q), n, c, s);
      }
    }
    residual = std::sqrt(off) / fro;
    converged = !rotated;
  }
  if (!converged) {
    throw NumericalError("one-sided Jacobi SVD did not converge after " +
                             std::to_string(options.max_sweeps) +
                             " sweeps; residual off-diagonal norm " +
                             std::to_string(residual),
                         residual);
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) {
    norms[j] = std::sqrt(Dot(work.col(j), work.col(j), m));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return norms[x] > norms[y];
                   });

  const Columns u = BuildLeftVectors(work, order, norms);

  SvdFactors f;
  f.u = Matrix(m, n);
  f.v = Matrix(n, n);
  f.sigma.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    f.sigma[j] = norms[order[j]];
    for (std::size_t i = 0; i < m; ++i) f.u(i, j) = u.col(j)[i];
    const double *vj = v.col(order[j]);
    for (std::size_t i = 0; i < n; ++i) f.v(i, j) = vj[i];
  }
  return f;
}

void ApplySignConvention(SvdFactors &f) {
  for (std::size_t j = 0; j < f.sigma.size(); ++j) {
    for (std::size_t i = 0; i < f.u.rows(); ++i) {
      const double x = f.u(i, j);
      if (std::abs(x) <= kSignTol) continue;
      if (x < 0.0) {
        for (std::size_t r = 0; r < f.u.rows(); ++r) f.u(r, j) = -f.u(r, j);
        for (std::size_t r = 0; r < f.v.rows(); ++r) f.v(r, j) = -f.v(r, j);
      }
      break;
    }
  }
}

}  // namespace

SvdFactors Svd(const Matrix &a, const SvdOptions &options) {
  if (a.empty()) throw ConfigError("Svd: empty matrix");
  if (!a.AllFinite()) throw NumericalError("Svd: non-finite input");

  SvdFactors f;
  if (a.rows() >= a.cols()) {
    f = TallSvd(a, options);
  } else {
    SvdFactors t = TallSvd(a.Transposed(), options);
    f.u = std::move(t.v);
    f.v = std::move(t.u);
    f.sigma = std::move(t.sigma);
  }
  ApplySignConvention(f);
  return f;
}

std::size_t SelectRank(std::span<const double> sigma, double energy) {
  const std::size_t r = sigma.size();
  if (r == 0) return 0;
  // tail[k] = sum_{j >= k} sigma_j^2, accumulated from the small end.
  std::vector<double> tail(r + 1, 0.0);
  for (std::size_t j = r; j-- > 0;) tail[j] = tail[j + 1] + sigma[j] * sigma[j];
  const double budget = energy * tail[0];
  for (std::size_t k = 1; k <= r; ++k) {
    if (tail[k] <= budget) return k;
  }
  return r;
}

TsvdResult Tsvd(const Matrix &a, double energy) {
  if (!(energy > 0.0 && energy < 1.0)) {
    throw ConfigError("Tsvd: energy ratio must lie in (0, 1), got " +
                      std::to_string(energy));
  }
  SvdFactors full = Svd(a);
  const std::size_t k = SelectRank(full.sigma, energy);

  double total = 0.0;
  double tail = 0.0;
  for (std::size_t j = 0; j < full.sigma.size(); ++j) {
    const double e = full.sigma[j] * full.sigma[j];
    total += e;
    if (j >= k) tail += e;
  }

  TsvdResult out;
  out.rank = k;
  out.full_sigma = full.sigma;
  if (total > 0.0) {
    out.discarded_energy = tail / total;
    out.retained_energy = (total - tail) / total;
  } else {
    out.discarded_energy = 0.0;
    out.retained_energy = 1.0;
  }
  out.factors.sigma.assign(full.sigma.begin(), full.sigma.begin() + k);
  out.factors.u = Matrix(full.u.rows(), k);
  out.factors.v = Matrix(full.v.rows(), k);
  for (std::size_t i = 0; i < full.u.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) out.factors.u(i, j) = full.u(i, j);
  }
  for (std::size_t i = 0; i < full.v.rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) out.factors.v(i, j) = full.v(i, j);
  }
  return out;
}

Matrix Reconstruct(const SvdFactors &f) {
  Matrix scaled_u = f.u;
  for (std::size_t i = 0; i < scaled_u.rows(); ++i) {
    for (std::size_t j = 0; j < f.sigma.size(); ++j) {
      scaled_u(i, j) *= f.sigma[j];
    }
  }
  return MultiplyTransposed(scaled_u, f.v);
}

std::size_t NumericalRank(std::span<const double> sigma, double rel_tol) {
  if (sigma.empty()) return 0;
  const double top = *std::max_element(sigma.begin(), sigma.end());
  if (top <= 0.0) return 0;
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(),
                    [&](double s) { return s > rel_tol * top; }));
}

}  // namespace linalg
}  // namespace trpkit
