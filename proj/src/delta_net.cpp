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

#include "qtamper/delta_net.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qtamper/error.hpp"
#include "qtamper/haar.hpp"
#include "qtamper/rng.hpp"

namespace qtamper {

namespace {

// Streams for the three phases of the construction.
constexpr std::uint64_t kPackingStream = 0;
constexpr std::uint64_t kRepairStream = 1;
constexpr double kRepairMargin = 0.9;
constexpr std::uint64_t kVerifyStream = 2;

// Largest |<a|b>|^2 over the net, so distance = 2 sqrt(1 - best).
double best_fidelity(const std::vector<UnitVector> &points, const UnitVector &probe) {
    double best = 0.0;
    for (const auto &p : points) {
        best = std::max(best, std::norm(p.amplitudes().dot(probe.amplitudes())));
        if (best >= 1.0) break;
    }
    return best;
}

double distance_from_fidelity(double f) { return 2.0 * std::sqrt(std::max(0.0, 1.0 - f)); }

}  // namespace

double delta_net_size_ceiling(Index dim, double radius) {
    return std::pow(5.0 / radius, 2.0 * static_cast<double>(dim));
}

DeltaNet build_delta_net(Index dim, double radius, std::uint64_t seed, const DeltaNetOptions &options) {
    if (dim < 1 || dim > kMaxNetDimension) fail(ErrorCode::SizeLimit, "net dimension must lie in 1..8", "dim");
    if (!(radius > 0.0 && radius < 1.0)) fail(ErrorCode::Domain, "net radius must lie in (0, 1)", "delta");

    DeltaNet net;
    net.dim = dim;
    net.radius = radius;
    net.size_ceiling = delta_net_size_ceiling(dim, radius);

    // A candidate is kept when its fidelity with every point is below this.
    const double fidelity_cut = 1.0 - radius * radius / 4.0;
    auto add = [&](UnitVector v) {
        if (net.points.size() >= options.max_points) {
            fail(ErrorCode::SizeLimit, "net exceeds " + std::to_string(options.max_points) + " points", "delta");
        }
        net.points.push_back(std::move(v));
    };

    SeededRng packing(seed, kPackingStream);
    std::size_t streak = 0;
    while (streak < options.rejection_streak) {
        UnitVector candidate = sample_unit_vector(dim, packing);
        if (net.points.empty() || best_fidelity(net.points, candidate) < fidelity_cut) {
            add(std::move(candidate));
            streak = 0;
        } else {
            ++streak;
        }
    }
    net.packing_points = net.points.size();

    // Repair rounds continue on the same stream until a whole round finds no hole.
    // They use a slightly smaller radius so the holes random probes miss shrink too.
    const double repair_radius = kRepairMargin * radius;
    const double repair_cut = 1.0 - repair_radius * repair_radius / 4.0;
    SeededRng repair(seed, kRepairStream);
    for (bool grew = options.repair_probes > 0; grew;) {
        grew = false;
        for (std::size_t i = 0; i < options.repair_probes; ++i) {
            UnitVector probe = sample_unit_vector(dim, repair);
            if (best_fidelity(net.points, probe) < repair_cut) {
                add(std::move(probe));
                grew = true;
            }
        }
    }

    SeededRng verify(seed, kVerifyStream);
    std::size_t covered = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < options.verification_probes; ++i) {
        const UnitVector probe = sample_unit_vector(dim, verify);
        const double dist = distance_from_fidelity(best_fidelity(net.points, probe));
        worst = std::max(worst, dist);
        covered += dist <= radius;
    }
    net.worst_probe_distance = worst;
    net.coverage_confidence =
        options.verification_probes == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(options.verification_probes);

    if (covered < options.verification_probes) {
        std::ostringstream msg;
        msg << "net covers " << covered << " of " << options.verification_probes << " probes with " << net.points.size()
            << " points; worst probe distance " << worst;
        fail(ErrorCode::NetConstruction, msg.str(), "delta");
    }
    if (static_cast<double>(net.points.size()) > net.size_ceiling) {
        fail(ErrorCode::NetConstruction,
             "net has " + std::to_string(net.points.size()) + " points, above the (5/delta)^{2K} ceiling", "delta");
    }
    return net;
}

}  // namespace qtamper
