// Copyright 2026 The pqc-lens Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pqc_lens/error.hpp"
#include "pqc_lens/parallel.hpp"

namespace pqc_lens {

struct PointLabel {
    std::size_t restart = 0;
    std::size_t step = 0;
    double loss = 0.0;
};

/// Equal-dimension real vectors with optional per-point tags.
struct PointCloud {
    std::vector<std::vector<double>> points;
    std::vector<PointLabel> labels;  // empty or one per point

    std::size_t size() const { return points.size(); }
    std::size_t dimension() const { return points.empty() ? 0 : points.front().size(); }

    void validate(std::size_t min_points) const {
        if (points.size() < min_points)
            throw InvalidArgument("point cloud needs at least " + std::to_string(min_points) + " points");
        for (const auto &p : points) {
            if (p.size() != dimension()) throw InvalidArgument("point cloud vectors differ in dimension");
            for (double v : p)
                if (!std::isfinite(v)) throw InvalidArgument("point cloud contains a non-finite coordinate");
        }
        if (!labels.empty() && labels.size() != points.size())
            throw InvalidArgument("point cloud labels must match the number of points");
    }
};

/// Affine plane (or line) through `origin` spanned by orthonormal `axes`.
struct SubspaceBasis {
    std::vector<double> origin;
    std::vector<std::vector<double>> axes;

    /// origin + sum_k coords[k] * axes[k]
    std::vector<double> point_at(std::span<const double> coords) const {
        std::vector<double> out = origin;
        for (std::size_t k = 0; k < axes.size(); ++k)
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += coords[k] * axes[k][i];
        return out;
    }

    /// Coordinates of the orthogonal projection of x onto the subspace.
    std::vector<double> coordinates_of(std::span<const double> x) const {
        std::vector<double> c(axes.size(), 0.0);
        for (std::size_t k = 0; k < axes.size(); ++k)
            for (std::size_t i = 0; i < origin.size(); ++i) c[k] += (x[i] - origin[i]) * axes[k][i];
        return c;
    }
};

struct PcaResult {
    std::vector<std::vector<double>> embedded;  // one row of `dims` coordinates per point
    SubspaceBasis basis;
    std::vector<double> variances;        // every covariance eigenvalue, descending
    std::vector<double> variance_ratios;  // variances / total variance

    std::size_t rank(double rel_tol = 1e-12) const {
        std::size_t r = 0;
        for (double v : variances) r += v > rel_tol * variances.front();
        return r;
    }
};

namespace detail {

inline void orient_axis(Eigen::Ref<Eigen::VectorXd> axis) {
    for (Eigen::Index i = 0; i < axis.size(); ++i) {
        if (std::abs(axis[i]) > 1e-12) {
            if (axis[i] < 0) axis = -axis;
            return;
        }
    }
}

}  // namespace detail

/// Principal component analysis onto the top `dims` axes. Origin is the mean
/// point; each axis has its first nonzero component positive. Uses the M x M
/// covariance when the dimension does not exceed the point count and the
/// Gram matrix otherwise.
inline PcaResult pca(const PointCloud &cloud, std::size_t dims = 2) {
    cloud.validate(dims + 1);
    const auto n = static_cast<Eigen::Index>(cloud.size());
    const auto m = static_cast<Eigen::Index>(cloud.dimension());
    if (m < static_cast<Eigen::Index>(dims))
        throw InvalidArgument("pca: dimension " + std::to_string(m) + " is below the requested " +
                              std::to_string(dims) + " components");

    Eigen::MatrixXd x(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j) x(i, j) = cloud.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    const Eigen::RowVectorXd mean = x.colwise().mean();
    x.rowwise() -= mean;
    const double denom = static_cast<double>(n - 1);

    Eigen::MatrixXd axes(m, static_cast<Eigen::Index>(dims));
    std::vector<double> variances;
    if (m <= n) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver((x.transpose() * x) / denom);
        const auto &ev = solver.eigenvalues();
        for (Eigen::Index k = m - 1; k >= 0; --k) variances.push_back(std::max(ev[k], 0.0));
        for (std::size_t k = 0; k < dims; ++k)
            axes.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(m - 1 - static_cast<Eigen::Index>(k));
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver((x * x.transpose()) / denom);
        const auto &ev = solver.eigenvalues();
        for (Eigen::Index k = n - 1; k >= 0; --k) variances.push_back(std::max(ev[k], 0.0));
        const double top = std::max(variances.front(), std::numeric_limits<double>::min());
        for (std::size_t k = 0; k < dims; ++k) {
            Eigen::VectorXd axis = Eigen::VectorXd::Zero(m);
            if (variances[k] > 1e-12 * top) {
                axis = x.transpose() * solver.eigenvectors().col(n - 1 - static_cast<Eigen::Index>(k));
            } else {
                // Null direction: complete the basis from the standard vectors.
                for (Eigen::Index e = 0; e < m; ++e) {
                    Eigen::VectorXd cand = Eigen::VectorXd::Unit(m, e);
                    for (std::size_t j = 0; j < k; ++j) cand -= axes.col(static_cast<Eigen::Index>(j)).dot(cand) * axes.col(static_cast<Eigen::Index>(j));
                    if (cand.norm() > 1e-6) {
                        axis = cand;
                        break;
                    }
                }
            }
            for (std::size_t j = 0; j < k; ++j)
                axis -= axes.col(static_cast<Eigen::Index>(j)).dot(axis) * axes.col(static_cast<Eigen::Index>(j));
            axes.col(static_cast<Eigen::Index>(k)) = axis.normalized();
        }
    }

    double total = 0.0;
    for (double v : variances) total += v;
    PcaResult out;
    out.variances = variances;
    if (!(total > 0.0)) throw InvalidArgument("pca: degenerate point cloud (rank 0, zero variance)");
    for (double v : variances) out.variance_ratios.push_back(v / total);

    for (std::size_t k = 0; k < dims; ++k) detail::orient_axis(axes.col(static_cast<Eigen::Index>(k)));
    out.basis.origin.assign(mean.data(), mean.data() + m);
    for (std::size_t k = 0; k < dims; ++k) {
        const Eigen::VectorXd a = axes.col(static_cast<Eigen::Index>(k));
        out.basis.axes.emplace_back(a.data(), a.data() + m);
    }
    const Eigen::MatrixXd proj = x * axes;
    out.embedded.resize(static_cast<std::size_t>(n), std::vector<double>(dims));
    for (Eigen::Index i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dims; ++k)
            out.embedded[static_cast<std::size_t>(i)][k] = proj(i, static_cast<Eigen::Index>(k));
    return out;
}

struct TsneOptions {
    std::size_t dims = 2;
    double perplexity = 30.0;
    std::size_t iterations = 1000;
    double learning_rate = 200.0;
    double early_exaggeration = 12.0;
    std::size_t exaggeration_iterations = 250;
    double initial_momentum = 0.5;
    double final_momentum = 0.8;
    Seed seed = 0;
    bool track_cost = false;  // record KL(P || Q) after every iteration
};

struct TsneResult {
    std::vector<std::vector<double>> embedded;
    std::vector<double> cost_history;  // filled when track_cost is set
};

namespace detail {

// Row-conditional affinities with bandwidths tuned to the target perplexity.
inline Eigen::MatrixXd conditional_affinities(const Eigen::MatrixXd &sq_dist, double perplexity) {
    const Eigen::Index n = sq_dist.rows();
    const double target = std::log(perplexity);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd row(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i) dmin = std::min(dmin, sq_dist(i, j));
        double beta = 1.0, lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 200; ++iter) {
            double sum = 0.0, weighted = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double shifted = sq_dist(i, j) - dmin;
                row[j] = (j == i) ? 0.0 : std::exp(-beta * shifted);
                sum += row[j];
                weighted += row[j] * shifted;
            }
            const double entropy = std::log(sum) + beta * weighted / sum;
            row /= sum;
            const double diff = entropy - target;
            if (std::abs(diff) < 1e-5) break;
            if (diff > 0) {
                lo = beta;
                beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
            } else {
                hi = beta;
                beta = std::isinf(lo) ? beta / 2.0 : 0.5 * (beta + lo);
            }
            if (beta > 1e300 || beta < 1e-300) break;
        }
        p.row(i) = row.transpose();
    }
    return p;
}

inline Eigen::MatrixXd squared_distances(const Eigen::MatrixXd &x) {
    const Eigen::Index n = x.rows();
    Eigen::MatrixXd d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) d(i, j) = (x.row(i) - x.row(j)).squaredNorm();
    return d;
}

}  // namespace detail

/// Exact O(n^2) t-SNE with early exaggeration, momentum switching and
/// per-coordinate adaptive gains. Deterministic for a given seed.
inline TsneResult tsne(const PointCloud &cloud, const TsneOptions &opt = {}) {
    cloud.validate(3);
    const auto n = static_cast<Eigen::Index>(cloud.size());
    if (!(opt.perplexity > 0.0) || !(opt.perplexity < static_cast<double>(n - 1) / 3.0))
        throw InvalidArgument("tsne: perplexity " + std::to_string(opt.perplexity) + " too large for " +
                              std::to_string(n) + " points (must be below (n-1)/3)");
    if (opt.dims < 1) throw InvalidArgument("tsne: need at least one output dimension");
    const auto dims = static_cast<Eigen::Index>(opt.dims);

    Eigen::MatrixXd x(n, static_cast<Eigen::Index>(cloud.dimension()));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < x.cols(); ++j)
            x(i, j) = cloud.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

    const Eigen::MatrixXd conditional = detail::conditional_affinities(detail::squared_distances(x), opt.perplexity);
    Eigen::MatrixXd p = (conditional + conditional.transpose()) / (2.0 * static_cast<double>(n));
    p = p.cwiseMax(1e-12);
    p.diagonal().setZero();

    Rng rng(opt.seed);
    std::normal_distribution<double> normal(0.0, 1e-4);
    Eigen::MatrixXd y(n, dims);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < dims; ++k) y(i, k) = normal(rng);

    Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(n, dims);
    Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, dims);
    Eigen::MatrixXd num(n, n), grad(n, dims);
    TsneResult out;
    for (std::size_t iter = 0; iter < opt.iterations; ++iter) {
        const bool early = iter < opt.exaggeration_iterations;
        const double exaggeration = early ? opt.early_exaggeration : 1.0;
        const double momentum = early ? opt.initial_momentum : opt.final_momentum;

        double num_sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            num(i, i) = 0.0;
            for (Eigen::Index j = i + 1; j < n; ++j) {
                const double v = 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
                num(i, j) = num(j, i) = v;
                num_sum += 2.0 * v;
            }
        }
        grad.setZero();
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                const double q = std::max(num(i, j) / num_sum, 1e-12);
                grad.row(i) += 4.0 * (exaggeration * p(i, j) - q) * num(i, j) * (y.row(i) - y.row(j));
            }
        }
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < dims; ++k) {
                const bool same_sign = (grad(i, k) > 0) == (velocity(i, k) > 0);
                gains(i, k) = std::max(same_sign ? gains(i, k) * 0.8 : gains(i, k) + 0.2, 0.01);
                velocity(i, k) = momentum * velocity(i, k) - opt.learning_rate * gains(i, k) * grad(i, k);
            }
        y += velocity;
        y.rowwise() -= y.colwise().mean();

        if (opt.track_cost) {
            double s = 0.0, cost = 0.0;
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const double q = std::max(1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm()) / s, 1e-12);
                    cost += p(i, j) * std::log(p(i, j) / q);
                }
            out.cost_history.push_back(cost);
        }
    }
    out.embedded.resize(static_cast<std::size_t>(n), std::vector<double>(opt.dims));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < dims; ++k) out.embedded[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = y(i, k);
    return out;
}

}  // namespace pqc_lens
