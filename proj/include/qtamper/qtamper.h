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

#ifndef QTAMPER_QTAMPER_H
#define QTAMPER_QTAMPER_H

#include <stddef.h>
#include <stdint.h>

#if defined(QTAMPER_BUILDING_LIBRARY)
#define QT_API __attribute__((visibility("default")))
#else
#define QT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values are stable. */
typedef enum qt_status {
    QT_OK = 0,
    QT_ERR_INVALID_ARGUMENT = 1,
    QT_ERR_INVALID_DIMENSION = 2,
    QT_ERR_SIZE_LIMIT = 3,
    QT_ERR_SHAPE = 4,
    QT_ERR_DOMAIN = 5,
    QT_ERR_INVALID_STATE = 6,
    QT_ERR_UNSUPPORTED_ORDER = 7,
    QT_ERR_PARSE = 8,
    QT_ERR_NO_VICTIM = 9,
    QT_ERR_FAMILY = 10,
    QT_ERR_NET_CONSTRUCTION = 11,
    QT_ERR_NUMERICAL = 12,
    QT_ERR_IO = 13,
    QT_ERR_INTERNAL = 99
} qt_status;

typedef struct qt_rng qt_rng;
typedef struct qt_channel qt_channel;
typedef struct qt_family qt_family;
typedef struct qt_scheme qt_scheme;

QT_API const char *qt_version(void);
QT_API const char *qt_status_name(qt_status status);
/* Message and offending field of the last failed call on this thread. */
QT_API const char *qt_last_error(void);
QT_API const char *qt_last_error_field(void);
QT_API void qt_string_free(char *s);

QT_API qt_status qt_rng_create(uint64_t master_seed, uint64_t stream_id, qt_rng **out);
QT_API void qt_rng_destroy(qt_rng *rng);
QT_API qt_status qt_rng_uniform(qt_rng *rng, double *out);

/* Haar unitary written as d*d interleaved (re, im) pairs in row-major order. */
QT_API qt_status qt_haar_unitary(size_t d, qt_rng *rng, double *out);

/* Kraus operators as count consecutive dim_out x dim_in row-major blocks of (re, im) pairs. */
QT_API qt_status qt_channel_from_kraus(size_t dim_in, size_t dim_out, size_t count, const double *entries, qt_channel **out);
QT_API qt_status qt_channel_from_json(const char *json, qt_channel **out);
QT_API qt_status qt_channel_depolarizing(size_t d, qt_channel **out);
QT_API void qt_channel_destroy(qt_channel *ch);
QT_API qt_status qt_channel_dims(const qt_channel *ch, size_t *dim_in, size_t *dim_out);
QT_API qt_status qt_channel_validate(const qt_channel *ch, int *cp_ok, int *tp_ok);
QT_API qt_status qt_channel_entanglement_fidelity(const qt_channel *ch, double *out);
QT_API qt_status qt_channel_min_kraus_rank(const qt_channel *ch, int *out);

/* base_dir resolves channel file references; may be NULL. */
QT_API qt_status qt_family_from_json(const char *json, const char *base_dir, qt_family **out);
QT_API void qt_family_destroy(qt_family *family);
QT_API qt_status qt_family_size(const qt_family *family, size_t *out);
/* Audit report as JSON (free with qt_string_free); *pass is 1 when all three conditions hold. */
QT_API qt_status qt_family_audit(const qt_family *family, double alpha, double delta, char **report_json, int *pass);

QT_API qt_status qt_scheme_sample(size_t d, int k, qt_rng *rng, qt_scheme **out);
QT_API void qt_scheme_destroy(qt_scheme *scheme);
QT_API qt_status qt_scheme_exact_overlap(const qt_scheme *scheme, const qt_channel *ch, size_t s, size_t t, double *out);

/* Runs a CLI subcommand on a JSON config object. report_json and csv are
 * allocated by the library (csv may be an empty string); *pass is the verdict. */
QT_API qt_status qt_run_command(const char *name, const char *config_json, char **report_json, char **csv, int *pass);
/* NUL-separated list of command names, terminated by an empty string. Static storage. */
QT_API const char *qt_command_names(void);

#ifdef __cplusplus
}
#endif

#endif
