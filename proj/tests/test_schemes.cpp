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

#include <gtest/gtest.h>

#include <cmath>

#include "qtamper/channel.hpp"
#include "qtamper/error.hpp"
#include "qtamper/haar.hpp"
#include "qtamper/scheme.hpp"

using namespace qtamper;

namespace {

ComplexMatrix hadamard_power(int n) {
    ComplexMatrix h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    ComplexMatrix out = identity(1);
    for (int i = 0; i < n; ++i) out = kron(out, h);
    return out;
}

}  // namespace

TEST(HaarScheme, EncodeExamples) {
    const HaarScheme id(identity(4), 1);
    EXPECT_NEAR(std::abs(id.encode(0)[0]), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(id.encode(1)[2]), 1.0, 1e-15);
    EXPECT_EQ(id.layout(1), 2);
    EXPECT_DOUBLE_EQ(id.expansion_factor(), 2.0);
    SeededRng rng(1, 0);
    const HaarScheme s = HaarScheme::sample(16, 2, rng);
    EXPECT_LT(std::abs(s.encode(0).amplitudes().dot(s.encode(1).amplitudes())), 1e-10);
    EXPECT_THROW(s.encode(4), Error);
}

TEST(HaarScheme, ConstructionChecks) {
    SeededRng rng(2, 0);
    EXPECT_THROW(HaarScheme(identity(6), 1), Error);
    EXPECT_THROW(HaarScheme(identity(4), 3), Error);
    EXPECT_THROW(HaarScheme(2.0 * identity(4), 1), Error);
}

TEST(Decode, Completeness) {
    SeededRng rng(3, 0);
    for (int k = 0; k <= 4; ++k) {
        const HaarScheme s = HaarScheme::sample(16, k, rng);
        for (std::size_t m = 0; m < s.message_count(); ++m) {
            const auto dist = decode_distribution(s, s.encode(m).projector());
            EXPECT_NEAR(dist.message[m], 1.0, 1e-10);
            EXPECT_NEAR(dist.reject, 0.0, 1e-10);
        }
    }
}

TEST(Decode, MaximallyMixedAndDepolarized) {
    SeededRng rng(4, 0);
    const HaarScheme s = HaarScheme::sample(8, 2, rng);
    const auto mixed = decode_distribution(s, identity(8) / 8.0);
    for (double p : mixed.message) EXPECT_NEAR(p, 1.0 / 8.0, 1e-12);
    EXPECT_NEAR(mixed.reject, 1.0 - 4.0 / 8.0, 1e-12);
    const auto dep = decode_distribution(s, completely_depolarizing_channel(8).apply(s.encode(1).projector()));
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(dep.message[i], mixed.message[i], 1e-12);
}

TEST(Decode, ClosesOnRandomStates) {
    SeededRng rng(5, 0);
    const HaarScheme s = HaarScheme::sample(8, 1, rng);
    for (int i = 0; i < 100; ++i) {
        const auto dist = decode_distribution(s, sample_density_matrix(8, 1 + static_cast<Index>(rng.uniform_int(8)), rng));
        double total = dist.reject;
        for (double p : dist.message) total += p;
        EXPECT_NEAR(total, 1.0, 1e-10);
        EXPECT_GE(dist.reject, -1e-12);
    }
}

TEST(Decode, RejectsInvalidState) {
    SeededRng rng(6, 0);
    const HaarScheme s = HaarScheme::sample(4, 1, rng);
    try {
        decode_distribution(s, identity(4));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidState);
    }
}

TEST(QuantumScheme, ProjectorProperties) {
    SeededRng rng(7, 0);
    const QuantumMessageScheme q(HaarScheme::sample(16, 2, rng));
    const ComplexMatrix &p = q.code_projector();
    EXPECT_LT(max_abs(p * p - p), 1e-10);
    EXPECT_LT(max_abs(p - p.adjoint()), 1e-12);
    EXPECT_NEAR(p.trace().real(), 4.0, 1e-10);
    EXPECT_LT(max_abs(p + q.reject_projector() - identity(16)), 1e-14);
    const ComplexMatrix rotated = code_projector_from_basis(q.base(), sample_haar_unitary(4, rng));
    EXPECT_LT(max_abs(rotated - p), 1e-10);
}

TEST(QuantumScheme, DecodeExamples) {
    SeededRng rng(8, 0);
    const QuantumMessageScheme q(HaarScheme::sample(16, 2, rng));
    const UnitVector v = sample_unit_vector(4, rng);
    const auto ok = quantum_decode(q, q.encode(v).projector());
    EXPECT_NEAR(ok.accept_prob, 1.0, 1e-10);
    ASSERT_TRUE(ok.post_state.has_value());
    EXPECT_LT(max_abs(*ok.post_state - v.projector()), 1e-10);

    const ComplexMatrix outside = q.reject_projector() / 12.0;
    const auto no = quantum_decode(q, outside);
    EXPECT_NEAR(no.accept_prob, 0.0, 1e-10);
    EXPECT_FALSE(no.post_state.has_value());

    EXPECT_NEAR(quantum_decode(q, identity(16) / 16.0).accept_prob, 4.0 / 16.0, 1e-12);
}

TEST(Hadamard, FlatAgainstStateVector) {
    for (int n = 1; n <= 6; ++n) {
        const ComplexMatrix h = hadamard_power(n);
        for (int k = 0; k <= n; ++k) {
            for (std::uint32_t y = 0; y < (1u << n); ++y) {
                const HadamardOutcome o = hadamard_scheme_probabilities(n, k, y, 0);
                for (std::size_t m = 0; m < o.message_probs.size(); ++m) {
                    const double oracle = std::norm(h(static_cast<Index>(m << (n - k)), y));
                    ASSERT_NEAR(o.message_probs[m], oracle, 1e-12);
                    ASSERT_NEAR(o.message_probs[m], std::ldexp(1.0, -n), 1e-12);
                }
            }
        }
    }
}

TEST(Hadamard, Examples) {
    const HadamardOutcome a = hadamard_scheme_probabilities(3, 1, 5, 0);
    EXPECT_NEAR(a.message_probs[1], 0.125, 1e-15);
    EXPECT_NEAR(a.wrong_message, 0.125, 1e-15);
    EXPECT_NEAR(a.bound, 0.5, 1e-15);
    const HadamardOutcome b = hadamard_scheme_probabilities(3, 3, 2, 1);
    EXPECT_NEAR(b.reject, 0.0, 1e-12);
    EXPECT_NEAR(b.wrong_message, 7.0 / 8.0, 1e-12);
    EXPECT_THROW(hadamard_scheme_probabilities(3, 4, 0, 0), Error);
}

TEST(Hadamard, TenBitsAllConstants) {
    for (std::uint32_t y = 0; y < 1024; ++y) {
        const HadamardOutcome o = hadamard_scheme_probabilities(10, 4, y, 3);
        for (double p : o.message_probs) ASSERT_NEAR(p, 1.0 / 1024.0, 1e-12);
        ASSERT_NEAR(o.wrong_message, 15.0 / 1024.0, 1e-12);
        ASSERT_LE(o.wrong_message, o.bound);
    }
}

TEST(Classical, IdentitySchemeBreak) {
    std::vector<std::vector<double>> enc(4, std::vector<double>(4, 0.0));
    std::vector<ClassicalSchemeTable::Decoded> dec(4);
    for (std::uint32_t m = 0; m < 4; ++m) {
        enc[m][m] = 1.0;
        dec[m] = m;
    }
    const ClassicalSchemeTable s(2, 2, enc, dec);
    const BreakCertificate c = break_classical_scheme(s);
    EXPECT_EQ(c.constant, 0u);
    EXPECT_EQ(c.source, 0u);
    EXPECT_EQ(c.victim, 1u);
    EXPECT_DOUBLE_EQ(c.wrong_decode_prob, 1.0);
    EXPECT_DOUBLE_EQ(replay_constant_tampering(s, c.constant, c.victim), 1.0);
}

TEST(Classical, RandomizedEncoder) {
    // Message 0 encodes to codewords 1 or 2 with probability 0.25 / 0.75.
    std::vector<std::vector<double>> enc = {{0, 0.25, 0.75, 0}, {0, 0, 0, 1}};
    std::vector<ClassicalSchemeTable::Decoded> dec = {std::nullopt, 0u, 0u, 1u};
    const ClassicalSchemeTable s(2, 1, enc, dec);
    const BreakCertificate c = break_classical_scheme(s);
    EXPECT_EQ(c.constant, 1u);
    EXPECT_EQ(c.source, 0u);
    EXPECT_EQ(c.victim, 1u);
    EXPECT_DOUBLE_EQ(c.wrong_decode_prob, 1.0);
}

TEST(Classical, TableValidation) {
    std::vector<std::vector<double>> enc = {{0.5, 0.5}, {0.0, 1.0}};
    std::vector<ClassicalSchemeTable::Decoded> dec = {0u, 1u};
    EXPECT_THROW(ClassicalSchemeTable(1, 1, enc, dec), Error);  // codeword 1 of message 0 decodes to 1
    enc = {{1.0}};
    EXPECT_THROW(ClassicalSchemeTable(1, 0, enc, {0u, std::nullopt}), Error);
    const ClassicalSchemeTable single(1, 0, {{1.0, 0.0}}, {0u, std::nullopt});
    try {
        break_classical_scheme(single);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NoVictim);
    }
}

TEST(Classical, RandomTablesAlwaysBroken) {
    SeededRng rng(9, 0);
    for (int i = 0; i < 50; ++i) {
        const int n = 1 + static_cast<int>(rng.uniform_int(6));
        const int k = 1 + static_cast<int>(rng.uniform_int(std::min(n, 3)));
        const ClassicalSchemeTable s = sample_classical_scheme(n, k, rng);
        const BreakCertificate c = break_classical_scheme(s);
        EXPECT_NE(c.source, c.victim);
        EXPECT_GT(s.enc()[c.source][c.constant], 0.0);
        EXPECT_DOUBLE_EQ(replay_constant_tampering(s, c.constant, c.victim), c.wrong_decode_prob);
        EXPECT_DOUBLE_EQ(c.wrong_decode_prob, 1.0);
    }
}
