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
#include <algorithm>
#include <cstring>
#include <string>
#include <vector>

#include "qtamper/qtamper.h"

namespace {

std::string take(char *s) {
    std::string out = s ? s : "";
    qt_string_free(s);
    return out;
}

}  // namespace

TEST(CApi, VersionAndNames) {
    EXPECT_STRNE(qt_version(), "");
    EXPECT_STREQ(qt_status_name(QT_OK), "ok");
    std::vector<std::string> names;
    for (const char *p = qt_command_names(); *p; p += std::strlen(p) + 1) names.emplace_back(p);
    EXPECT_EQ(names.size(), 10u);
    EXPECT_NE(std::find(names.begin(), names.end(), "moments"), names.end());
}

TEST(CApi, RngAndHaar) {
    qt_rng *a = nullptr;
    qt_rng *b = nullptr;
    ASSERT_EQ(qt_rng_create(5, 1, &a), QT_OK);
    ASSERT_EQ(qt_rng_create(5, 1, &b), QT_OK);
    double x = 0, y = 0;
    qt_rng_uniform(a, &x);
    qt_rng_uniform(b, &y);
    EXPECT_EQ(x, y);
    std::vector<double> u(2 * 16);
    ASSERT_EQ(qt_haar_unitary(4, a, u.data()), QT_OK);
    // column norms of U are one
    for (int c = 0; c < 4; ++c) {
        double n = 0;
        for (int r = 0; r < 4; ++r) n += u[2 * (r * 4 + c)] * u[2 * (r * 4 + c)] + u[2 * (r * 4 + c) + 1] * u[2 * (r * 4 + c) + 1];
        EXPECT_NEAR(n, 1.0, 1e-12);
    }
    EXPECT_EQ(qt_haar_unitary(0, a, u.data()), QT_ERR_INVALID_DIMENSION);
    qt_rng_destroy(a);
    qt_rng_destroy(b);
}

TEST(CApi, ChannelRoundTrip) {
    // amplitude damping with gamma 0.3
    const double g = 0.3;
    const double entries[] = {1, 0, 0, 0, 0, 0, std::sqrt(1 - g), 0, 0, 0, std::sqrt(g), 0, 0, 0, 0, 0};
    qt_channel *ch = nullptr;
    ASSERT_EQ(qt_channel_from_kraus(2, 2, 2, entries, &ch), QT_OK);
    int cp = 0, tp = 0;
    ASSERT_EQ(qt_channel_validate(ch, &cp, &tp), QT_OK);
    EXPECT_TRUE(cp);
    EXPECT_TRUE(tp);
    double fe = 0;
    ASSERT_EQ(qt_channel_entanglement_fidelity(ch, &fe), QT_OK);
    EXPECT_NEAR(fe, std::pow((1 + std::sqrt(1 - g)) / 2, 2), 1e-12);
    int rank = 0;
    ASSERT_EQ(qt_channel_min_kraus_rank(ch, &rank), QT_OK);
    EXPECT_EQ(rank, 2);
    qt_channel_destroy(ch);

    qt_channel *dep = nullptr;
    ASSERT_EQ(qt_channel_depolarizing(4, &dep), QT_OK);
    size_t din = 0, dout = 0;
    qt_channel_dims(dep, &din, &dout);
    EXPECT_EQ(din, 4u);
    ASSERT_EQ(qt_channel_min_kraus_rank(dep, &rank), QT_OK);
    EXPECT_EQ(rank, 16);

    qt_rng *rng = nullptr;
    qt_rng_create(3, 0, &rng);
    qt_scheme *scheme = nullptr;
    ASSERT_EQ(qt_scheme_sample(4, 1, rng, &scheme), QT_OK);
    double x = 0;
    ASSERT_EQ(qt_scheme_exact_overlap(scheme, dep, 0, 1, &x), QT_OK);
    EXPECT_NEAR(x, 0.25, 1e-12);
    EXPECT_EQ(qt_scheme_exact_overlap(scheme, dep, 2, 1, &x), QT_ERR_DOMAIN);
    qt_scheme_destroy(scheme);
    qt_rng_destroy(rng);
    qt_channel_destroy(dep);
}

TEST(CApi, JsonChannelAndErrors) {
    qt_channel *ch = nullptr;
    ASSERT_EQ(qt_channel_from_json(R"({"pauli": "XY"})", &ch), QT_OK);
    double fe = 1;
    qt_channel_entanglement_fidelity(ch, &fe);
    EXPECT_NEAR(fe, 0.0, 1e-15);
    qt_channel_destroy(ch);

    EXPECT_EQ(qt_channel_from_json("{not json", &ch), QT_ERR_PARSE);
    EXPECT_EQ(qt_channel_from_json(R"({"kraus": [{"rows": 2, "cols": 2, "entries": [[1,0]]}]})", &ch), QT_ERR_SHAPE);
    EXPECT_NE(std::string(qt_last_error()), "");
    EXPECT_NE(std::string(qt_last_error_field()).find("kraus"), std::string::npos);
    EXPECT_EQ(qt_channel_from_json(nullptr, &ch), QT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, FamilyAudit) {
    qt_family *fam = nullptr;
    ASSERT_EQ(qt_family_from_json(R"({"channels": [{"pauli": "XZ"}, {"pauli": "ZZ"}]})", ".", &fam), QT_OK);
    size_t n = 0;
    qt_family_size(fam, &n);
    EXPECT_EQ(n, 2u);
    char *report = nullptr;
    int pass = -1;
    ASSERT_EQ(qt_family_audit(fam, 0.2, 0.6, &report, &pass), QT_OK);
    const std::string text = take(report);
    EXPECT_NE(text.find("entanglement_fidelity"), std::string::npos);
    EXPECT_EQ(pass, 1);
    EXPECT_EQ(qt_family_audit(fam, 0.4, 0.6, &report, &pass), QT_ERR_DOMAIN);
    qt_family_destroy(fam);
}

TEST(CApi, RunCommand) {
    char *report = nullptr;
    char *csv = nullptr;
    int pass = 0;
    ASSERT_EQ(qt_run_command("beta-check", R"({"d": 4, "trials": 2000, "seed": 3})", &report, &csv, &pass), QT_OK);
    const std::string a = take(report);
    const std::string ca = take(csv);
    EXPECT_EQ(pass, 1);
    EXPECT_NE(a.find("\"schema_version\""), std::string::npos);
    EXPECT_EQ(ca.rfind("seed,trial,s,t,value", 0), 0u);
    ASSERT_EQ(qt_run_command("beta-check", R"({"d": 4, "trials": 2000, "seed": 3})", &report, &csv, &pass), QT_OK);
    EXPECT_EQ(a, take(report));
    EXPECT_EQ(ca, take(csv));

    EXPECT_EQ(qt_run_command("beta-check", R"({"d": 4, "bogus": 1})", &report, &csv, &pass), QT_ERR_INVALID_ARGUMENT);
    EXPECT_STREQ(qt_last_error_field(), "bogus");
    EXPECT_EQ(qt_run_command("no-such", "{}", &report, &csv, &pass), QT_ERR_INVALID_ARGUMENT);
}
