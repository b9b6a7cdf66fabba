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

#include "qtamper/qtamper.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "qtamper/adversary.hpp"
#include "qtamper/channel.hpp"
#include "qtamper/commands.hpp"
#include "qtamper/error.hpp"
#include "qtamper/experiments.hpp"
#include "qtamper/haar.hpp"
#include "qtamper/json_io.hpp"
#include "qtamper/scheme.hpp"

struct qt_rng {
    qtamper::SeededRng rng;
};

struct qt_channel {
    qtamper::QuantumChannel channel;
};

struct qt_family {
    qtamper::AdversarialFamily family;
};

struct qt_scheme {
    qtamper::HaarScheme scheme;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_field;

qt_status record(qt_status status, const std::string &message, const std::string &field) {
    last_error = message;
    last_field = field;
    return status;
}

template <typename Fn>
qt_status guarded(Fn &&fn) {
    try {
        fn();
        last_error.clear();
        last_field.clear();
        return QT_OK;
    } catch (const qtamper::Error &e) {
        return record(static_cast<qt_status>(static_cast<int>(e.code())), e.what(), e.field());
    } catch (const std::bad_alloc &) {
        return record(QT_ERR_SIZE_LIMIT, "out of memory", {});
    } catch (const std::exception &e) {
        return record(QT_ERR_INTERNAL, e.what(), {});
    } catch (...) {
        return record(QT_ERR_INTERNAL, "unknown failure", {});
    }
}

void require(const void *p, const char *field) {
    if (!p) qtamper::fail(qtamper::ErrorCode::InvalidArgument, "null pointer", field);
}

char *copy_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

qtamper::Json parse_json(const char *text, const char *field) {
    require(text, field);
    try {
        return qtamper::Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        qtamper::fail(qtamper::ErrorCode::Parse, std::string("malformed JSON: ") + e.what(), field);
    }
}

}  // namespace

extern "C" {

const char *qt_version(void) { return QTAMPER_VERSION; }

const char *qt_status_name(qt_status status) {
    if (status == QT_OK) return "ok";
    if (status == QT_ERR_INTERNAL) return "internal";
    static thread_local std::string name;
    name = std::string(qtamper::error_code_name(static_cast<qtamper::ErrorCode>(status)));
    return name.c_str();
}

const char *qt_last_error(void) { return last_error.c_str(); }

const char *qt_last_error_field(void) { return last_field.c_str(); }

void qt_string_free(char *s) { std::free(s); }

qt_status qt_rng_create(uint64_t master_seed, uint64_t stream_id, qt_rng **out) {
    return guarded([&] {
        require(out, "out");
        *out = new qt_rng{qtamper::SeededRng(master_seed, stream_id)};
    });
}

void qt_rng_destroy(qt_rng *rng) { delete rng; }

qt_status qt_rng_uniform(qt_rng *rng, double *out) {
    return guarded([&] {
        require(rng, "rng");
        require(out, "out");
        *out = rng->rng.uniform();
    });
}

qt_status qt_haar_unitary(size_t d, qt_rng *rng, double *out) {
    return guarded([&] {
        require(rng, "rng");
        require(out, "out");
        const auto u = qtamper::sample_haar_unitary(static_cast<qtamper::Index>(d), rng->rng);
        for (qtamper::Index r = 0; r < u.rows(); ++r) {
            for (qtamper::Index c = 0; c < u.cols(); ++c) {
                const std::size_t at = 2 * static_cast<std::size_t>(r * u.cols() + c);
                out[at] = u(r, c).real();
                out[at + 1] = u(r, c).imag();
            }
        }
    });
}

qt_status qt_channel_from_kraus(size_t dim_in, size_t dim_out, size_t count, const double *entries, qt_channel **out) {
    return guarded([&] {
        require(entries, "entries");
        require(out, "out");
        if (count == 0) qtamper::fail(qtamper::ErrorCode::InvalidArgument, "need at least one Kraus operator", "count");
        qtamper::check_matrix_size(static_cast<double>(dim_out), static_cast<double>(dim_in), "kraus");
        std::vector<qtamper::ComplexMatrix> kraus;
        const double *p = entries;
        for (size_t i = 0; i < count; ++i) {
            qtamper::ComplexMatrix k(static_cast<qtamper::Index>(dim_out), static_cast<qtamper::Index>(dim_in));
            for (qtamper::Index r = 0; r < k.rows(); ++r) {
                for (qtamper::Index c = 0; c < k.cols(); ++c, p += 2) k(r, c) = {p[0], p[1]};
            }
            kraus.push_back(std::move(k));
        }
        *out = new qt_channel{qtamper::QuantumChannel(static_cast<qtamper::Index>(dim_in), static_cast<qtamper::Index>(dim_out),
                                                      std::move(kraus))};
    });
}

qt_status qt_channel_from_json(const char *json, qt_channel **out) {
    return guarded([&] {
        require(out, "out");
        *out = new qt_channel{qtamper::channel_from_json(parse_json(json, "json"), "channel")};
    });
}

qt_status qt_channel_depolarizing(size_t d, qt_channel **out) {
    return guarded([&] {
        require(out, "out");
        *out = new qt_channel{qtamper::completely_depolarizing_channel(static_cast<qtamper::Index>(d))};
    });
}

void qt_channel_destroy(qt_channel *ch) { delete ch; }

qt_status qt_channel_dims(const qt_channel *ch, size_t *dim_in, size_t *dim_out) {
    return guarded([&] {
        require(ch, "channel");
        if (dim_in) *dim_in = static_cast<size_t>(ch->channel.dim_in());
        if (dim_out) *dim_out = static_cast<size_t>(ch->channel.dim_out());
    });
}

qt_status qt_channel_validate(const qt_channel *ch, int *cp_ok, int *tp_ok) {
    return guarded([&] {
        require(ch, "channel");
        const auto v = qtamper::validate(ch->channel);
        if (cp_ok) *cp_ok = v.cp_ok ? 1 : 0;
        if (tp_ok) *tp_ok = v.tp_ok ? 1 : 0;
    });
}

qt_status qt_channel_entanglement_fidelity(const qt_channel *ch, double *out) {
    return guarded([&] {
        require(ch, "channel");
        require(out, "out");
        *out = qtamper::entanglement_fidelity(ch->channel);
    });
}

qt_status qt_channel_min_kraus_rank(const qt_channel *ch, int *out) {
    return guarded([&] {
        require(ch, "channel");
        require(out, "out");
        *out = qtamper::min_kraus_rank(ch->channel);
    });
}

qt_status qt_family_from_json(const char *json, const char *base_dir, qt_family **out) {
    return guarded([&] {
        require(out, "out");
        const std::filesystem::path base = base_dir ? base_dir : ".";
        *out = new qt_family{qtamper::family_from_json(parse_json(json, "json"), base)};
    });
}

void qt_family_destroy(qt_family *family) { delete family; }

qt_status qt_family_size(const qt_family *family, size_t *out) {
    return guarded([&] {
        require(family, "family");
        require(out, "out");
        *out = family->family.size();
    });
}

qt_status qt_family_audit(const qt_family *family, double alpha, double delta, char **report_json, int *pass) {
    return guarded([&] {
        require(family, "family");
        require(report_json, "report_json");
        const auto audit = qtamper::audit_family(family->family, qtamper::ConstraintProfile{alpha, delta});
        *report_json = copy_string(qtamper::audit_to_json(audit).dump(2));
        if (pass) *pass = audit.theorem_conditions_pass() ? 1 : 0;
    });
}

qt_status qt_scheme_sample(size_t d, int k, qt_rng *rng, qt_scheme **out) {
    return guarded([&] {
        require(rng, "rng");
        require(out, "out");
        *out = new qt_scheme{qtamper::HaarScheme::sample(static_cast<qtamper::Index>(d), k, rng->rng)};
    });
}

void qt_scheme_destroy(qt_scheme *scheme) { delete scheme; }

qt_status qt_scheme_exact_overlap(const qt_scheme *scheme, const qt_channel *ch, size_t s, size_t t, double *out) {
    return guarded([&] {
        require(scheme, "scheme");
        require(ch, "channel");
        require(out, "out");
        *out = qtamper::exact_overlap(scheme->scheme, ch->channel, s, t);
    });
}

qt_status qt_run_command(const char *name, const char *config_json, char **report_json, char **csv, int *pass) {
    return guarded([&] {
        require(name, "name");
        require(report_json, "report_json");
        const qtamper::Json config = config_json ? parse_json(config_json, "config") : qtamper::Json::object();
        const auto result = qtamper::run_command(name, config);
        std::string body = result.report.dump(2);
        body += '\n';
        char *report = copy_string(body);
        if (csv) {
            try {
                *csv = copy_string(result.csv);
            } catch (...) {
                std::free(report);
                throw;
            }
        }
        *report_json = report;
        if (pass) *pass = result.pass ? 1 : 0;
    });
}

const char *qt_command_names(void) {
    static const std::string packed = [] {
        std::string s;
        for (const auto &n : qtamper::command_names()) {
            s += n;
            s += '\0';
        }
        s += '\0';
        return s;
    }();
    return packed.data();
}

}  // extern "C"
