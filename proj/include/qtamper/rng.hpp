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

#ifndef QTAMPER_RNG_HPP
#define QTAMPER_RNG_HPP

#include <cstdint>
#include <optional>
#include <random>

#include "qtamper/matrix.hpp"

namespace qtamper {

/// Deterministic random stream keyed by (master_seed, stream_id).
///
/// The engine is std::mt19937_64 seeded with SplitMix64(master_seed) xor
/// SplitMix64(stream_id). mt19937_64 output is fully specified by the standard,
/// and every transform on top of it is implemented here rather than through
/// the <random> distributions, so draws are identical across platforms and
/// standard libraries:
///   uniform(): top 53 bits of one engine word, scaled to [0, 1).
///   normal():  Box-Muller on two uniforms, emitting the cosine branch first
///              and caching the sine branch for the next call.
///   complex_normal(): (normal() + i normal()) / sqrt(2), so each component
///              is N(0, 1/2).
/// Changing any of these is a report-format break; bump kTransformVersion.
class SeededRng {
   public:
    static constexpr int kTransformVersion = 1;

    SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }
    double uniform();
    double normal();
    Complex complex_normal();
    /// Uniform integer in [0, n) by rejection; n must be >= 1.
    std::uint64_t uniform_int(std::uint64_t n);

   private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace qtamper

#endif
