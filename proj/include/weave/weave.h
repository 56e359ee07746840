/* Copyright 2026 The Weave Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

/* C interface to the weave compiler. Handles are opaque and owned by the
 * caller once returned; strings returned through char** are released with
 * weave_string_free. On failure the message is available from
 * weave_last_error() on the same thread. */

#ifndef WEAVE_WEAVE_H
#define WEAVE_WEAVE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#pragma GCC visibility push(default)
#endif

typedef enum weave_status {
    WEAVE_OK = 0,
    WEAVE_E_INVALID = 1,
    WEAVE_E_PARSE = 2,
    WEAVE_E_IO = 3,
    WEAVE_E_LIBRARY = 4,
    WEAVE_E_COMPILE = 5,
    WEAVE_E_INTERNAL = 6
} weave_status;

typedef struct weave_braid weave_braid;
typedef struct weave_library weave_library;
typedef struct weave_compiled weave_compiled;

const char *weave_version(void);
const char *weave_last_error(void);
void weave_string_free(char *s);

/* Braid words. Generators are signed indices: +s for tau_s, -s for its inverse. */
weave_status weave_braid_create(int strands, const int *gens, size_t len, weave_braid **out);
/* Parses BraidFile text; *warp receives the header value or 0 when absent (warp may be NULL). */
weave_status weave_braid_parse(const char *text, weave_braid **out, int *warp);
weave_status weave_braid_read(const char *path, weave_braid **out, int *warp);
/* warp <= 0 omits the warp header. */
weave_status weave_braid_format(const weave_braid *b, int warp, char **out);
void weave_braid_free(weave_braid *b);
int weave_braid_strands(const weave_braid *b);
size_t weave_braid_length(const weave_braid *b);
/* Copies min(cap, length) generators into buf. */
size_t weave_braid_generators(const weave_braid *b, int *buf, size_t cap);
int weave_braid_is_weave(const weave_braid *b, int warp_start);

typedef enum weave_render_format { WEAVE_RENDER_SVG = 0, WEAVE_RENDER_ASCII = 1 } weave_render_format;
/* warp <= 0 draws every strand as weft. */
weave_status weave_render(const weave_braid *b, weave_render_format format, int warp, char **out);

/* Projective distance between the images of two words on the n-anyon basis
 * with total charge 0 (vacuum) or 1 (tau). */
weave_status weave_distance(const weave_braid *a, const weave_braid *b, int charge, double *distance);

/* Report text and pass flag for the model and braid-relation checks. */
weave_status weave_model_check(int chirality_minus, int inject_fault, int *ok, char **report);

/* Injection libraries. */
weave_status weave_library_create(int chirality_minus, weave_library **out);
weave_status weave_library_load(const char *path, weave_library **out);
weave_status weave_library_save(const weave_library *lib, const char *path);
weave_status weave_library_to_json(const weave_library *lib, char **out);
size_t weave_library_size(const weave_library *lib);
void weave_library_free(weave_library *lib);

typedef enum weave_metric { WEAVE_METRIC_FULL = 0, WEAVE_METRIC_SECTOR_TAU = 1 } weave_metric;

typedef struct weave_search_config {
    int max_length;
    double target;
    weave_metric metric;
    int exhaustive_length;
    double match_radius;
    int workers;
} weave_search_config;

void weave_search_config_default(weave_search_config *cfg);

/* Searches for an injection (refining it when the search falls short of the
 * target under the full metric), appends the results to lib and writes a JSON
 * summary. *converged reports whether the target was met. */
weave_status weave_inject(const weave_search_config *cfg, weave_library *lib, int *converged, char **summary_json);

/* Compilation. */
weave_status weave_compile(const weave_braid *braid, double epsilon, const weave_library *lib, int return_home,
                           weave_compiled **out);
weave_status weave_compiled_word(const weave_compiled *c, weave_braid **out);
double weave_compiled_bound(const weave_compiled *c);
weave_status weave_compiled_ledger_json(const weave_compiled *c, char **out);
void weave_compiled_free(weave_compiled *c);

/* Seeded benchmark; table is plain text, json holds the same rows and the fit. */
weave_status weave_bench(int n, int p, const double *eps, size_t n_eps, int trials, uint64_t seed,
                         const weave_library *lib, char **table, char **json);

#if defined(__GNUC__)
#pragma GCC visibility pop
#endif

#ifdef __cplusplus
}
#endif

#endif /* WEAVE_WEAVE_H */
