// Copyright 2026 The cobalt Authors.
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

// Exact Gaussian process regression over a finite candidate grid.
//
// Everything here is templated on the scalar type in the Eigen style; the
// rest of the library uses the double aliases at the bottom of the file.
// Points are stored row-wise: a grid with N candidates in d dimensions is an
// N x d matrix.

#ifndef COBALT_GP_HPP
#define COBALT_GP_HPP

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cobalt {

/// Raised when a Gram matrix cannot be factorized even at the largest jitter.
class NumericalDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class KernelFamily { SquaredExponential, Matern52 };

inline std::string to_string(KernelFamily family) {
  return family == KernelFamily::Matern52 ? "matern52" : "squared_exponential";
}

inline KernelFamily kernelFamilyFromString(const std::string& name) {
  if (name == "matern52" || name == "matern") return KernelFamily::Matern52;
  if (name == "squared_exponential" || name == "se" || name == "rbf")
    return KernelFamily::SquaredExponential;
  throw std::invalid_argument("unknown kernel family: " + name);
}

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// Stationary kernel with one lengthscale per input dimension (ARD).
template <typename Scalar>
class Kernel {
 public:
  Kernel(KernelFamily family, VectorX<Scalar> lengthscale, Scalar outputscale)
      : family_(family), lengthscale_(std::move(lengthscale)), outputscale_(outputscale) {
    if (lengthscale_.size() == 0 || (lengthscale_.array() <= Scalar(0)).any() ||
        !lengthscale_.allFinite())
      throw std::invalid_argument("kernel lengthscale must be positive and finite");
    if (!(outputscale_ > Scalar(0)) || !std::isfinite(outputscale_))
      throw std::invalid_argument("kernel outputscale must be positive and finite");
  }

  /// Isotropic convenience constructor.
  Kernel(KernelFamily family, Eigen::Index dim, Scalar lengthscale, Scalar outputscale)
      : Kernel(family, VectorX<Scalar>::Constant(dim, lengthscale), outputscale) {}

  KernelFamily family() const { return family_; }
  const VectorX<Scalar>& lengthscale() const { return lengthscale_; }
  Scalar outputscale() const { return outputscale_; }
  Eigen::Index dim() const { return lengthscale_.size(); }

  /// Kernel value as a function of the scaled squared distance r^2.
  Scalar fromScaledSquaredDistance(Scalar r2) const {
    using std::exp;
    using std::sqrt;
    if (family_ == KernelFamily::SquaredExponential) return outputscale_ * exp(Scalar(-0.5) * r2);
    const Scalar s5r = sqrt(Scalar(5) * r2);
    return outputscale_ * (Scalar(1) + s5r + Scalar(5) / Scalar(3) * r2) * exp(-s5r);
  }

  template <typename DerivedA, typename DerivedB>
  Scalar operator()(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) const {
    Scalar r2(0);
    for (Eigen::Index j = 0; j < lengthscale_.size(); ++j) {
      const Scalar d = (a(j) - b(j)) / lengthscale_(j);
      r2 += d * d;
    }
    return fromScaledSquaredDistance(r2);
  }

  Kernel withOutputscale(Scalar outputscale) const { return Kernel(family_, lengthscale_, outputscale); }
  Kernel withLengthscale(VectorX<Scalar> lengthscale) const {
    return Kernel(family_, std::move(lengthscale), outputscale_);
  }

 private:
  KernelFamily family_;
  VectorX<Scalar> lengthscale_;
  Scalar outputscale_;
};

/// Pairwise kernel matrix between the rows of `a` and the rows of `b`.
template <typename Scalar, typename DerivedA, typename DerivedB>
MatrixX<Scalar> gram(const Kernel<Scalar>& kernel, const Eigen::MatrixBase<DerivedA>& a,
                     const Eigen::MatrixBase<DerivedB>& b) {
  if (a.cols() != kernel.dim() || b.cols() != kernel.dim())
    throw std::invalid_argument("gram: point dimension does not match kernel lengthscale");
  MatrixX<Scalar> out(a.rows(), b.rows());
  for (Eigen::Index j = 0; j < b.rows(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = kernel(a.row(i), b.row(j));
  return out;
}

template <typename Scalar>
struct ObservationSet {
  std::vector<Eigen::Index> points;  // grid indices
  std::vector<Scalar> values;
  Scalar noiseVariance = Scalar(1);

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  void validate() const {
    if (points.size() != values.size())
      throw std::invalid_argument("observation points and values differ in length");
    if (!(noiseVariance > Scalar(0))) throw std::invalid_argument("noise variance must be positive");
  }
};

template <typename Scalar>
struct PosteriorTable {
  VectorX<Scalar> mean;
  VectorX<Scalar> stdDev;
  int iteration = 0;
};

/// Affine map between raw observation units and the units the GP works in.
template <typename Scalar>
struct Standardizer {
  Scalar shift = Scalar(0);
  Scalar scale = Scalar(1);

  static constexpr double kMinScale = 1e-6;

  static Standardizer fromValues(const std::vector<Scalar>& values) {
    Standardizer s;
    if (values.empty()) return s;
    Scalar sum(0);
    for (Scalar v : values) sum += v;
    s.shift = sum / Scalar(values.size());
    if (values.size() < 2) return s;
    Scalar ss(0);
    for (Scalar v : values) ss += (v - s.shift) * (v - s.shift);
    s.scale = std::max<Scalar>(std::sqrt(ss / Scalar(values.size() - 1)), Scalar(kMinScale));
    return s;
  }

  Scalar forward(Scalar raw) const { return (raw - shift) / scale; }
  Scalar backward(Scalar standardized) const { return shift + scale * standardized; }
};

namespace detail {

/// Cholesky of `a` with the escalating jitter ladder: a plain attempt, then
/// 1e-10 * mean(diag) growing by x10 up to 1e-4 * mean(diag).
template <typename Scalar>
MatrixX<Scalar> choleskyWithJitter(const MatrixX<Scalar>& a, const std::string& what) {
  const Eigen::Index n = a.rows();
  if (n == 0) return MatrixX<Scalar>(0, 0);
  const Scalar meanDiag = a.diagonal().mean();
  Scalar jitter(0);
  for (int attempt = 0;; ++attempt) {
    MatrixX<Scalar> m = a;
    if (jitter > Scalar(0)) m.diagonal().array() += jitter;
    Eigen::LLT<MatrixX<Scalar>> llt(m);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    jitter = attempt == 0 ? Scalar(1e-10) * meanDiag : jitter * Scalar(10);
    if (jitter > Scalar(1.0000001e-4) * meanDiag)
      throw NumericalDegeneracy("Cholesky factorization failed for " + what +
                                " after maximum jitter escalation");
  }
}

/// log N(y | 0, K + diag(noise)) given the rows' kernel matrix.
template <typename Scalar>
Scalar logEvidence(MatrixX<Scalar> k, const VectorX<Scalar>& noise, const VectorX<Scalar>& y,
                   const std::string& what) {
  k.diagonal() += noise;
  const MatrixX<Scalar> l = choleskyWithJitter(k, what);
  const VectorX<Scalar> alpha = l.template triangularView<Eigen::Lower>().solve(y);
  const Scalar logDet = Scalar(2) * l.diagonal().array().log().sum();
  return Scalar(-0.5) * alpha.squaredNorm() - Scalar(0.5) * logDet -
         Scalar(0.5) * Scalar(y.size()) * std::log(Scalar(2) * std::numbers::pi_v<Scalar>);
}

}  // namespace detail

/// One GP surrogate over a fixed candidate grid.
///
/// The posterior is held as V = L^-1 K(rows, grid) and z = L^-1 y where L is
/// the Cholesky factor of K(rows, rows) + diag(noise). Appending an
/// observation extends L, V and z by one row, so an update costs
/// O(n^2 + n N) instead of a refactorization. Full rebuilds collapse repeated
/// grid indices into one row (mean value, noise / multiplicity), which gives
/// the same posterior.
///
/// Observations may be standardized (shift by the mean, divide by the
/// standard deviation). The standardizer is refreshed only on rebuild, so it
/// stays fixed between hyperparameter refits and appends remain exact.
template <typename Scalar>
class GpSurrogate {
 public:
  using Matrix = MatrixX<Scalar>;
  using Vector = VectorX<Scalar>;

  GpSurrogate(Kernel<Scalar> kernel, std::shared_ptr<const Matrix> grid, Scalar noiseVariance,
              bool standardize = false, std::string name = "gp")
      : kernel_(std::move(kernel)),
        grid_(std::move(grid)),
        noiseVariance_(noiseVariance),
        standardize_(standardize),
        name_(std::move(name)) {
    if (!grid_ || grid_->rows() == 0) throw std::invalid_argument("GP grid must be nonempty");
    if (grid_->cols() != kernel_.dim())
      throw std::invalid_argument("GP grid dimension does not match kernel");
    if (!(noiseVariance_ > Scalar(0))) throw std::invalid_argument("noise variance must be positive");
    obs_.noiseVariance = noiseVariance_;
    resetRows();
  }

  const Kernel<Scalar>& kernel() const { return kernel_; }
  const Matrix& grid() const { return *grid_; }
  std::shared_ptr<const Matrix> sharedGrid() const { return grid_; }
  const ObservationSet<Scalar>& observations() const { return obs_; }
  const Standardizer<Scalar>& standardizer() const { return standardizer_; }
  bool standardizes() const { return standardize_; }
  Scalar noiseVariance() const { return noiseVariance_; }
  Eigen::Index gridSize() const { return grid_->rows(); }
  Eigen::Index rowCount() const { return n_; }
  const std::string& name() const { return name_; }

  /// Appends one observation (raw units) with a rank-one extension.
  void observe(Eigen::Index index, Scalar value) {
    checkIndex(index);
    obs_.points.push_back(index);
    obs_.values.push_back(value);
    appendRow(index, standardizer_.forward(value),
              noiseVariance_ / (standardizer_.scale * standardizer_.scale));
  }

  /// Replaces the kernel and refactorizes from scratch.
  void setKernel(Kernel<Scalar> kernel) {
    if (kernel.dim() != kernel_.dim()) throw std::invalid_argument("kernel dimension changed");
    kernel_ = std::move(kernel);
    rebuild();
  }

  /// Refreshes the standardizer from all observations and refactorizes.
  void rebuild() {
    standardizer_ = standardize_ ? Standardizer<Scalar>::fromValues(obs_.values) : Standardizer<Scalar>{};
    const auto agg = aggregated();
    resetRows();
    if (agg.indices.empty()) return;
    const Eigen::Index n = static_cast<Eigen::Index>(agg.indices.size());
    Matrix rowPoints(n, grid_->cols());
    for (Eigen::Index i = 0; i < n; ++i) rowPoints.row(i) = grid_->row(agg.indices[i]);
    Matrix k = gram(kernel_, rowPoints, rowPoints);
    k.diagonal() += agg.noise;
    ensureCapacity(n);
    L_.topLeftCorner(n, n) = detail::choleskyWithJitter(k, name_);
    const auto lower = L_.topLeftCorner(n, n).template triangularView<Eigen::Lower>();
    V_.topRows(n) = lower.solve(gram(kernel_, rowPoints, *grid_));
    z_.head(n) = lower.solve(agg.values);
    for (Eigen::Index i = 0; i < n; ++i) rowIndex_.push_back(agg.indices[i]);
    n_ = n;
    variance_ = Vector::Constant(gridSize(), kernel_.outputscale()) -
                V_.topRows(n).colwise().squaredNorm().transpose();
  }

  /// Posterior mean in the working (standardized) units.
  Vector standardizedMean() const {
    if (n_ == 0) return Vector::Zero(gridSize());
    return V_.topRows(n_).transpose() * z_.head(n_);
  }

  /// Posterior variance in the working units, clamped at zero.
  Vector standardizedVariance() const { return variance_.cwiseMax(Scalar(0)); }

  /// Posterior mean and standard deviation in raw units.
  PosteriorTable<Scalar> posterior(int iteration = 0) const {
    PosteriorTable<Scalar> table;
    table.iteration = iteration;
    table.mean = (standardizedMean().array() * standardizer_.scale + standardizer_.shift).matrix();
    table.stdDev = standardizedVariance().cwiseSqrt() * standardizer_.scale;
    return table;
  }

  /// The aggregated data in working units, ready for repeated evidence
  /// evaluation under different kernels. `maxPoints` > 0 restricts it to an
  /// evenly spaced subset of the distinct observed indices.
  class Evidence {
   public:
    /// Log marginal likelihood under `kernel`. Differs from the raw-data
    /// evidence only by a kernel-independent constant.
    Scalar operator()(const Kernel<Scalar>& kernel) const {
      const Eigen::Index n = values_.size();
      if (points_.cols() != kernel.dim())
        throw std::invalid_argument("evidence: point dimension does not match kernel lengthscale");
      Matrix k(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = j; i < n; ++i) k(i, j) = kernel(points_.row(i), points_.row(j));
      }
      k.template triangularView<Eigen::StrictlyUpper>() = k.transpose();
      return detail::logEvidence(std::move(k), noise_, values_, name_);
    }

   private:
    friend class GpSurrogate;
    Matrix points_;
    Vector values_, noise_;
    std::string name_;
  };

  Evidence evidence(std::size_t maxPoints = 0) const {
    auto agg = aggregated();
    if (maxPoints > 0 && agg.indices.size() > maxPoints) agg = agg.subsample(maxPoints);
    Evidence e;
    e.points_.resize(static_cast<Eigen::Index>(agg.indices.size()), grid_->cols());
    for (Eigen::Index i = 0; i < e.points_.rows(); ++i) e.points_.row(i) = grid_->row(agg.indices[static_cast<std::size_t>(i)]);
    e.values_ = std::move(agg.values);
    e.noise_ = std::move(agg.noise);
    e.name_ = name_;
    return e;
  }

  /// Log marginal likelihood of the aggregated data under an alternative
  /// kernel; see `evidence`.
  Scalar aggregatedLogEvidence(const Kernel<Scalar>& kernel, std::size_t maxPoints = 0) const {
    return evidence(maxPoints)(kernel);
  }

  std::size_t distinctObservedPoints() const { return aggregated().indices.size(); }

 private:
  struct Aggregate {
    std::vector<Eigen::Index> indices;
    Vector values;  // working units
    Vector noise;   // working units

    Aggregate subsample(std::size_t count) const {
      Aggregate out;
      const std::size_t n = indices.size();
      out.values.resize(static_cast<Eigen::Index>(count));
      out.noise.resize(static_cast<Eigen::Index>(count));
      for (std::size_t i = 0; i < count; ++i) {
        const std::size_t src = count == 1 ? 0 : i * (n - 1) / (count - 1);
        out.indices.push_back(indices[src]);
        out.values(static_cast<Eigen::Index>(i)) = values(static_cast<Eigen::Index>(src));
        out.noise(static_cast<Eigen::Index>(i)) = noise(static_cast<Eigen::Index>(src));
      }
      return out;
    }
  };

  Aggregate aggregated() const {
    std::map<Eigen::Index, std::pair<Scalar, int>> groups;
    for (std::size_t i = 0; i < obs_.points.size(); ++i) {
      auto& g = groups[obs_.points[i]];
      g.first += standardizer_.forward(obs_.values[i]);
      g.second += 1;
    }
    Aggregate agg;
    agg.values.resize(static_cast<Eigen::Index>(groups.size()));
    agg.noise.resize(static_cast<Eigen::Index>(groups.size()));
    const Scalar noise = noiseVariance_ / (standardizer_.scale * standardizer_.scale);
    Eigen::Index i = 0;
    for (const auto& [index, g] : groups) {
      agg.indices.push_back(index);
      agg.values(i) = g.first / Scalar(g.second);
      agg.noise(i) = noise / Scalar(g.second);
      ++i;
    }
    return agg;
  }

  void checkIndex(Eigen::Index index) const {
    if (index < 0 || index >= gridSize()) throw std::out_of_range("observation index outside the grid");
  }

  void resetRows() {
    n_ = 0;
    rowIndex_.clear();
    variance_ = Vector::Constant(gridSize(), kernel_.outputscale());
  }

  void ensureCapacity(Eigen::Index rows) {
    if (rows <= L_.rows()) return;
    const Eigen::Index cap = std::max<Eigen::Index>(rows, std::max<Eigen::Index>(16, 2 * L_.rows()));
    L_.conservativeResize(cap, cap);
    V_.conservativeResize(cap, gridSize());
    z_.conservativeResize(cap);
  }

  void appendRow(Eigen::Index index, Scalar value, Scalar noise) {
    const auto x = grid_->row(index);
    Vector kRows(n_);
    for (Eigen::Index i = 0; i < n_; ++i) kRows(i) = kernel_(grid_->row(rowIndex_[i]), x);
    RowVectorX<Scalar> kGrid(gridSize());
    for (Eigen::Index j = 0; j < gridSize(); ++j) kGrid(j) = kernel_(x, grid_->row(j));

    ensureCapacity(n_ + 1);
    Vector l = kRows;
    if (n_ > 0) L_.topLeftCorner(n_, n_).template triangularView<Eigen::Lower>().solveInPlace(l);
    const Scalar d2 = kernel_.outputscale() + noise - l.squaredNorm();
    if (!(d2 > Scalar(0)) || !std::isfinite(d2)) {
      // Lost positive definiteness in the running factor; fall back to a full
      // factorization, which applies the jitter ladder.
      rebuild();
      return;
    }
    const Scalar d = std::sqrt(d2);
    if (n_ > 0) {
      L_.row(n_).head(n_) = l.transpose();
      L_.col(n_).head(n_).setZero();
    }
    L_(n_, n_) = d;
    RowVectorX<Scalar> vRow = kGrid;
    if (n_ > 0) vRow.noalias() -= l.transpose() * V_.topRows(n_);
    vRow /= d;
    V_.row(n_) = vRow;
    z_(n_) = (value - (n_ > 0 ? l.dot(z_.head(n_)) : Scalar(0))) / d;
    variance_ -= vRow.transpose().cwiseAbs2();
    rowIndex_.push_back(index);
    ++n_;
  }

  Kernel<Scalar> kernel_;
  std::shared_ptr<const Matrix> grid_;
  Scalar noiseVariance_;
  bool standardize_;
  std::string name_;
  ObservationSet<Scalar> obs_;
  Standardizer<Scalar> standardizer_;

  Eigen::Index n_ = 0;
  std::vector<Eigen::Index> rowIndex_;
  Matrix L_;
  Matrix V_;
  Vector z_;
  Vector variance_;
};

/// Posterior of a zero-mean GP given `obs`, evaluated on every grid point.
template <typename Scalar>
PosteriorTable<Scalar> posterior(const Kernel<Scalar>& kernel, const ObservationSet<Scalar>& obs,
                                 const MatrixX<Scalar>& grid) {
  obs.validate();
  GpSurrogate<Scalar> gp(kernel, std::make_shared<const MatrixX<Scalar>>(grid), obs.noiseVariance);
  for (std::size_t i = 0; i < obs.size(); ++i) gp.observe(obs.points[i], obs.values[i]);
  gp.rebuild();
  return gp.posterior(static_cast<int>(obs.size()));
}

/// Returns a copy of `state` with one more observation.
template <typename Scalar>
GpSurrogate<Scalar> incrementalUpdate(GpSurrogate<Scalar> state, Eigen::Index index, Scalar value) {
  state.observe(index, value);
  return state;
}

/// Standard GP log evidence log N(y | 0, K + noise I) over the raw observations.
template <typename Scalar>
Scalar logMarginalLikelihood(const Kernel<Scalar>& kernel, const ObservationSet<Scalar>& obs,
                             const MatrixX<Scalar>& grid) {
  obs.validate();
  if (obs.empty()) throw std::invalid_argument("log marginal likelihood needs observations");
  const Eigen::Index n = static_cast<Eigen::Index>(obs.size());
  MatrixX<Scalar> points(n, grid.cols());
  VectorX<Scalar> y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    points.row(i) = grid.row(obs.points[static_cast<std::size_t>(i)]);
    y(i) = obs.values[static_cast<std::size_t>(i)];
  }
  return detail::logEvidence(gram(kernel, points, points), VectorX<Scalar>(VectorX<Scalar>::Constant(n, obs.noiseVariance)),
                             y, "log marginal likelihood");
}

struct HyperparameterSearch {
  int latticePoints = 7;         // per axis
  double latticeHalfWidth = 3.0;  // in log units around the incumbent
  int starts = 2;                 // best lattice points refined by coordinate descent
  int goldenSteps = 20;           // per coordinate
  double goldenHalfWidth = 1.0;   // log units around each start
  double logBound = 8.0;          // |log offset| from the initial kernel never exceeds this
  std::size_t maxPoints = 128;    // distinct points entering the evidence; 0 = all
};

/// Maximizes the evidence over (log-lengthscale per dimension,
/// log-outputscale). Returns the best kernel seen; the incumbent is always a
/// candidate, so the result is never worse than the current kernel.
template <typename Scalar>
Kernel<Scalar> fitHyperparameters(const GpSurrogate<Scalar>& state, const HyperparameterSearch& search = {}) {
  const Kernel<Scalar>& incumbent = state.kernel();
  if (state.observations().size() < 2) return incumbent;
  const Eigen::Index d = incumbent.dim();
  using Params = VectorX<Scalar>;  // [log lengthscale..., log outputscale]
  Params base(d + 1);
  base.head(d) = incumbent.lengthscale().array().log().matrix();
  base(d) = std::log(incumbent.outputscale());

  auto make = [&](const Params& p) {
    return Kernel<Scalar>(incumbent.family(), p.head(d).array().exp().matrix(), std::exp(p(d)));
  };
  const auto evidence = state.evidence(search.maxPoints);
  auto score = [&](const Params& p) {
    try {
      const Scalar v = evidence(make(p));
      return std::isfinite(v) ? v : -std::numeric_limits<Scalar>::infinity();
    } catch (const NumericalDegeneracy&) {
      return -std::numeric_limits<Scalar>::infinity();
    }
  };

  Params best = base;
  Scalar bestScore = score(base);

  std::vector<std::pair<Scalar, Params>> lattice;
  const int m = search.latticePoints;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const Scalar offL = m == 1 ? Scalar(0) : Scalar(-search.latticeHalfWidth + 2 * search.latticeHalfWidth * a / (m - 1));
      const Scalar offS = m == 1 ? Scalar(0) : Scalar(-search.latticeHalfWidth + 2 * search.latticeHalfWidth * b / (m - 1));
      Params p = base;
      p.head(d).array() += offL;
      p(d) += offS;
      lattice.emplace_back(score(p), p);
    }
  }
  std::stable_sort(lattice.begin(), lattice.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (const auto& [s, p] : lattice) {
    if (s > bestScore) {
      bestScore = s;
      best = p;
    }
  }

  const Scalar invPhi = (std::sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
  const int starts = std::min<int>(search.starts, static_cast<int>(lattice.size()));
  for (int sIdx = 0; sIdx < starts; ++sIdx) {
    Params p = lattice[static_cast<std::size_t>(sIdx)].second;
    Scalar pScore = lattice[static_cast<std::size_t>(sIdx)].first;
    if (!std::isfinite(pScore)) continue;
    for (Eigen::Index c = 0; c <= d; ++c) {
      Scalar lo = std::max<Scalar>(p(c) - Scalar(search.goldenHalfWidth), base(c) - Scalar(search.logBound));
      Scalar hi = std::min<Scalar>(p(c) + Scalar(search.goldenHalfWidth), base(c) + Scalar(search.logBound));
      auto at = [&](Scalar v) {
        Params q = p;
        q(c) = v;
        return std::make_pair(score(q), q);
      };
      Scalar x1 = hi - invPhi * (hi - lo), x2 = lo + invPhi * (hi - lo);
      auto f1 = at(x1), f2 = at(x2);
      for (int step = 0; step < search.goldenSteps; ++step) {
        for (const auto* f : {&f1, &f2}) {
          if (f->first > pScore) {
            pScore = f->first;
            p = f->second;
          }
        }
        if (f1.first >= f2.first) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - invPhi * (hi - lo);
          f1 = at(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + invPhi * (hi - lo);
          f2 = at(x2);
        }
      }
      for (const auto* f : {&f1, &f2}) {
        if (f->first > pScore) {
          pScore = f->first;
          p = f->second;
        }
      }
    }
    if (pScore > bestScore) {
      bestScore = pScore;
      best = p;
    }
  }
  if (best == base) return incumbent;
  return make(best);
}

/// One draw from N(0, K(grid, grid) + jitter), deterministic per seed.
template <typename Scalar>
VectorX<Scalar> samplePrior(const Kernel<Scalar>& kernel, const MatrixX<Scalar>& grid, std::uint64_t seed) {
  if (grid.rows() == 0) throw std::invalid_argument("samplePrior needs a nonempty grid");
  const MatrixX<Scalar> l = detail::choleskyWithJitter(gram(kernel, grid, grid), "prior sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  VectorX<Scalar> z(grid.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = Scalar(normal(rng));
  return l.template triangularView<Eigen::Lower>() * z;
}

using Kerneld = Kernel<double>;
using ObservationSetd = ObservationSet<double>;
using PosteriorTabled = PosteriorTable<double>;
using GpSurrogated = GpSurrogate<double>;
using Standardizerd = Standardizer<double>;

}  // namespace cobalt

#endif  // COBALT_GP_HPP
