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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pqc_lens/analyzers/landscape.hpp"
#include "pqc_lens/projection.hpp"
#include "pqc_lens/trainer.hpp"

namespace pqc_lens {

enum class PathMode { PCA, TSNE };

struct PathPoint {
    double x = 0.0;
    double y = 0.0;
    std::size_t restart = 0;
    std::size_t step = 0;
    double loss = 0.0;
};

struct TrainingPath {
    PathMode mode = PathMode::PCA;
    std::vector<PathPoint> points;  // grouped by restart, ordered by step
    std::vector<double> final_losses;  // per restart
    std::optional<LandscapeGrid> overlay;  // loss surface in the same plane (PCA only)
};

/// Pools every parameter vector of every trace and embeds them in 2-D.
/// PCA mode projects onto the overlay's plane when one is given, so that
/// the path can be drawn on top of that landscape.
inline TrainingPath training_path(std::span<const TrainingTrace> traces, PathMode mode,
                                  const std::optional<LandscapeGrid> &overlay = std::nullopt,
                                  TsneOptions tsne_options = {}) {
    if (traces.empty()) throw InvalidArgument("training_path: need at least one trace");
    if (mode == PathMode::TSNE && overlay)
        throw InvalidArgument("training_path: t-SNE has no inverse map, so it cannot be overlaid on a landscape");
    PointCloud cloud;
    TrainingPath path;
    path.mode = mode;
    for (const auto &t : traces) {
        for (std::size_t s = 0; s < t.thetas.size(); ++s) {
            cloud.points.push_back(t.thetas[s]);
            cloud.labels.push_back({t.restart_id, s, t.losses[s]});
        }
        path.final_losses.push_back(t.final_loss());
    }
    if (cloud.size() < 3) throw InvalidArgument("training_path: need at least 3 points in total");
    cloud.validate(3);

    std::vector<std::vector<double>> xy;
    if (mode == PathMode::TSNE) {
        const double limit = static_cast<double>(cloud.size() - 1) / 3.0;
        if (tsne_options.perplexity >= limit) tsne_options.perplexity = 0.9 * limit;
        xy = tsne(cloud, tsne_options).embedded;
    } else if (overlay) {
        if (overlay->basis.origin.size() != cloud.dimension())
            throw InvalidArgument("training_path: overlay lives in a different parameter space");
        for (const auto &p : cloud.points) xy.push_back(overlay->basis.coordinates_of(p));
        path.overlay = overlay;
    } else {
        xy = pca(cloud, std::min<std::size_t>(2, cloud.dimension())).embedded;
    }
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const auto &l = cloud.labels[i];
        path.points.push_back({xy[i][0], xy[i].size() > 1 ? xy[i][1] : 0.0, l.restart, l.step, l.loss});
    }
    return path;
}

}  // namespace pqc_lens
