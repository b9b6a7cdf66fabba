// Copyright 2026 The qtamper Authors
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

#ifndef QTAMPER_DELTA_NET_HPP
#define QTAMPER_DELTA_NET_HPP

#include <cstdint>
#include <vector>

#include "qtamper/matrix.hpp"

namespace qtamper {

struct DeltaNetOptions {
    /// Stop packing after this many consecutive rejected candidates.
    std::size_t rejection_streak = 2000;
    /// Probes per repair round; rounds repeat until one finds no uncovered probe.
    std::size_t repair_probes = 10000;
    /// Independent probes used for the coverage estimate.
    std::size_t verification_probes = 10000;
    std::size_t max_points = 200000;
};

struct DeltaNet {
    Index dim = 0;
    double radius = 0.0;
    std::vector<UnitVector> points;
    double coverage_confidence = 0.0;  ///< fraction of verification probes within radius
    double size_ceiling = 0.0;         ///< (5 / radius)^{2K}
    std::size_t packing_points = 0;    ///< points kept before the repair pass
    double worst_probe_distance = 0.0;
};

inline constexpr Index kMaxNetDimension = 8;

/// (5 / radius)^{2K}
double delta_net_size_ceiling(Index dim, double radius);

/// Greedy random packing in trace distance followed by repair rounds and an
/// independent coverage check. Throws NetConstruction if a verification probe
/// is left uncovered or the ceiling is exceeded, SizeLimit past max_points.
DeltaNet build_delta_net(Index dim, double radius, std::uint64_t seed, const DeltaNetOptions &options = {});

}  // namespace qtamper

#endif
