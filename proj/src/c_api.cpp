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

#include "weave/weave.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "weave/compiler.hpp"
#include "weave/injection.hpp"
#include "weave/io.hpp"

struct weave_braid {
    weave::BraidWord word;
};

struct weave_library {
    weave::InjectionLibrary lib;
};

struct weave_compiled {
    weave::CompiledWeave result;
};

namespace {

thread_local std::string last_error;

weave_status fail(weave_status code, const std::string &msg) {
    last_error = msg;
    return code;
}

char *dup(const std::string &s) {
    char *p = static_cast<char *>(std::malloc(s.size() + 1));
    if (p != nullptr) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

weave_status emit(char **out, const std::string &s) {
    *out = dup(s);
    return *out != nullptr ? WEAVE_OK : fail(WEAVE_E_INTERNAL, "out of memory");
}

// Maps exceptions from the C++ core onto status codes.
template <typename F>
weave_status guard(F &&f) {
    try {
        last_error.clear();
        return f();
    } catch (const weave::ParseError &e) {
        return fail(WEAVE_E_PARSE, e.what());
    } catch (const weave::LibraryError &e) {
        return fail(WEAVE_E_LIBRARY, e.what());
    } catch (const weave::CompileError &e) {
        return fail(WEAVE_E_COMPILE, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(WEAVE_E_INVALID, e.what());
    } catch (const std::out_of_range &e) {
        return fail(WEAVE_E_INVALID, e.what());
    } catch (const std::runtime_error &e) {
        return fail(WEAVE_E_IO, e.what());
    } catch (const std::exception &e) {
        return fail(WEAVE_E_INTERNAL, e.what());
    } catch (...) {
        return fail(WEAVE_E_INTERNAL, "unknown error");
    }
}

#define WEAVE_REQUIRE(cond, what) \
    if (!(cond)) return fail(WEAVE_E_INVALID, what)

weave::Chirality chirality(int minus) { return minus ? weave::Chirality::Minus : weave::Chirality::Plus; }

nlohmann::ordered_json injection_json(const weave::InjectionWeave &inj) {
    return {{"word", inj.word.to_signed()},   {"length", inj.length()},
            {"warp_start", inj.warp_start},   {"warp_end", inj.warp_end},
            {"distance_2d", inj.distance_2d}, {"distance_full", inj.distance_full},
            {"distance_embed", inj.distance_embed}, {"metric", inj.metric_id},
            {"generator", inj.generator},     {"converged", inj.converged}};
}

// Top-level keys one per line with compact values.
std::string dump_flat(const nlohmann::ordered_json &j) {
    std::string out = "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        out += "  " + nlohmann::ordered_json(it.key()).dump() + ": " + it.value().dump();
        out += k + 1 < j.size() ? ",\n" : "\n";
    }
    return out + "}\n";
}

}  // namespace

extern "C" {

const char *weave_version(void) { return weave::kToolVersion; }

const char *weave_last_error(void) { return last_error.c_str(); }

void weave_string_free(char *s) { std::free(s); }

weave_status weave_braid_create(int strands, const int *gens, size_t len, weave_braid **out) {
    WEAVE_REQUIRE(out != nullptr, "null output handle");
    WEAVE_REQUIRE(gens != nullptr || len == 0, "null generator buffer");
    return guard([&] {
        std::vector<int> v(gens, gens + len);
        *out = new weave_braid{weave::BraidWord::from_signed(strands, v)};
        return WEAVE_OK;
    });
}

weave_status weave_braid_parse(const char *text, weave_braid **out, int *warp) {
    WEAVE_REQUIRE(text != nullptr && out != nullptr, "null argument");
    return guard([&] {
        weave::BraidFile f = weave::parse_braid_file(text);
        if (warp != nullptr) *warp = f.warp.value_or(0);
        *out = new weave_braid{std::move(f.word)};
        return WEAVE_OK;
    });
}

weave_status weave_braid_read(const char *path, weave_braid **out, int *warp) {
    WEAVE_REQUIRE(path != nullptr && out != nullptr, "null argument");
    return guard([&] {
        weave::BraidFile f = weave::read_braid_file(path);
        if (warp != nullptr) *warp = f.warp.value_or(0);
        *out = new weave_braid{std::move(f.word)};
        return WEAVE_OK;
    });
}

weave_status weave_braid_format(const weave_braid *b, int warp, char **out) {
    WEAVE_REQUIRE(b != nullptr && out != nullptr, "null argument");
    return guard([&] {
        weave::BraidFile f{b->word, std::nullopt};
        if (warp > 0) {
            if (warp > b->word.strands()) throw std::invalid_argument("warp outside the strand range");
            f.warp = warp;
        }
        return emit(out, weave::format_braid_file(f));
    });
}

void weave_braid_free(weave_braid *b) { delete b; }

int weave_braid_strands(const weave_braid *b) { return b != nullptr ? b->word.strands() : 0; }

size_t weave_braid_length(const weave_braid *b) { return b != nullptr ? b->word.length() : 0; }

size_t weave_braid_generators(const weave_braid *b, int *buf, size_t cap) {
    if (b == nullptr || buf == nullptr) return 0;
    const auto v = b->word.to_signed();
    const size_t n = std::min(cap, v.size());
    std::copy_n(v.begin(), n, buf);
    return n;
}

int weave_braid_is_weave(const weave_braid *b, int warp_start) {
    if (b == nullptr || warp_start < 1 || warp_start > b->word.strands()) return 0;
    return weave::is_weave(b->word, warp_start) ? 1 : 0;
}

weave_status weave_render(const weave_braid *b, weave_render_format format, int warp, char **out) {
    WEAVE_REQUIRE(b != nullptr && out != nullptr, "null argument");
    return guard([&] {
        weave::RenderSpec spec;
        spec.format = format == WEAVE_RENDER_ASCII ? weave::RenderFormat::Ascii : weave::RenderFormat::Svg;
        if (warp > 0) spec.warp = warp;
        return emit(out, weave::render(b->word, spec));
    });
}

weave_status weave_distance(const weave_braid *a, const weave_braid *b, int charge, double *distance) {
    WEAVE_REQUIRE(a != nullptr && b != nullptr && distance != nullptr, "null argument");
    WEAVE_REQUIRE(a->word.strands() == b->word.strands(), "strand counts differ");
    WEAVE_REQUIRE(charge == 0 || charge == 1, "charge must be 0 (vacuum) or 1 (tau)");
    return guard([&] {
        const auto basis =
            weave::enumerate_basis(a->word.strands(), charge == 0 ? weave::Charge::Vacuum : weave::Charge::Tau);
        if (basis.dim() == 0) throw std::invalid_argument("empty fusion space for this charge");
        const weave::Representation rep(basis);
        *distance = weave::projective_distance(rep(a->word), rep(b->word));
        return WEAVE_OK;
    });
}

weave_status weave_model_check(int chirality_minus, int inject_fault, int *ok, char **report) {
    WEAVE_REQUIRE(ok != nullptr && report != nullptr, "null argument");
    return guard([&] {
        weave::ModelCheckOptions opt;
        opt.chirality = chirality(chirality_minus);
        opt.inject_fault = inject_fault != 0;
        const auto rep = weave::model_check(opt);
        *ok = rep.ok() ? 1 : 0;
        return emit(report, rep.to_text());
    });
}

weave_status weave_library_create(int chirality_minus, weave_library **out) {
    WEAVE_REQUIRE(out != nullptr, "null output handle");
    return guard([&] {
        auto *lib = new weave_library{};
        lib->lib.chirality = chirality(chirality_minus);
        *out = lib;
        return WEAVE_OK;
    });
}

weave_status weave_library_load(const char *path, weave_library **out) {
    WEAVE_REQUIRE(path != nullptr && out != nullptr, "null argument");
    return guard([&] {
        *out = new weave_library{weave::load_library(path)};
        return WEAVE_OK;
    });
}

weave_status weave_library_save(const weave_library *lib, const char *path) {
    WEAVE_REQUIRE(lib != nullptr && path != nullptr, "null argument");
    return guard([&] {
        weave::save_library(lib->lib, path);
        return WEAVE_OK;
    });
}

weave_status weave_library_to_json(const weave_library *lib, char **out) {
    WEAVE_REQUIRE(lib != nullptr && out != nullptr, "null argument");
    return guard([&] { return emit(out, weave::library_to_json(lib->lib)); });
}

size_t weave_library_size(const weave_library *lib) { return lib != nullptr ? lib->lib.records.size() : 0; }

void weave_library_free(weave_library *lib) { delete lib; }

void weave_search_config_default(weave_search_config *cfg) {
    if (cfg == nullptr) return;
    const weave::SearchConfig d;
    cfg->max_length = d.max_length;
    cfg->target = d.target_distance;
    cfg->metric = WEAVE_METRIC_FULL;
    cfg->exhaustive_length = d.exhaustive_length;
    cfg->match_radius = d.match_radius;
    cfg->workers = d.workers;
}

weave_status weave_inject(const weave_search_config *cfg, weave_library *lib, int *converged, char **summary_json) {
    WEAVE_REQUIRE(cfg != nullptr && lib != nullptr && converged != nullptr && summary_json != nullptr,
                  "null argument");
    return guard([&] {
        weave::SearchConfig sc;
        sc.max_length = cfg->max_length;
        sc.target_distance = cfg->target;
        sc.metric = cfg->metric == WEAVE_METRIC_SECTOR_TAU ? weave::Metric::SectorTauOnly
                                                           : weave::Metric::TwoSectorFull;
        sc.exhaustive_length = cfg->exhaustive_length;
        sc.match_radius = cfg->match_radius;
        sc.workers = cfg->workers;
        const auto outcome = weave::inject_into_library(sc, lib->lib);
        *converged = outcome.converged ? 1 : 0;
        nlohmann::ordered_json j;
        j["converged"] = outcome.converged;
        j["found_injection"] = outcome.search.found_injection;
        j["candidates_scored"] = outcome.search.candidates_scored;
        j["search_best"] = injection_json(outcome.search.best);
        if (outcome.refined) {
            j["refined"] = injection_json(outcome.refined->injection);
            j["refine_level_errors"] = outcome.refined->level_errors;
        }
        j["records_added"] = outcome.added.size();
        return emit(summary_json, dump_flat(j));
    });
}

weave_status weave_compile(const weave_braid *braid, double epsilon, const weave_library *lib, int return_home,
                           weave_compiled **out) {
    WEAVE_REQUIRE(braid != nullptr && lib != nullptr && out != nullptr, "null argument");
    return guard([&] {
        weave::CompileRequest req;
        req.braid = braid->word;
        req.epsilon = epsilon;
        req.library = lib->lib;
        req.return_home = return_home != 0;
        *out = new weave_compiled{weave::compile(req)};
        return WEAVE_OK;
    });
}

weave_status weave_compiled_word(const weave_compiled *c, weave_braid **out) {
    WEAVE_REQUIRE(c != nullptr && out != nullptr, "null argument");
    return guard([&] {
        *out = new weave_braid{c->result.word};
        return WEAVE_OK;
    });
}

double weave_compiled_bound(const weave_compiled *c) { return c != nullptr ? c->result.budget.guaranteed_bound : 0.0; }

weave_status weave_compiled_ledger_json(const weave_compiled *c, char **out) {
    WEAVE_REQUIRE(c != nullptr && out != nullptr, "null argument");
    return guard([&] {
        const auto &r = c->result;
        nlohmann::ordered_json j;
        j["n"] = r.budget.n;
        j["p"] = r.budget.p;
        j["epsilon"] = r.budget.epsilon;
        j["delta"] = r.budget.delta;
        j["injection_count"] = r.budget.injection_count;
        j["guaranteed_bound"] = r.budget.guaranteed_bound;
        j["achieved_bound"] = r.budget.achieved_bound;
        j["input_length"] = r.length_stats.input_length;
        j["output_length"] = r.length_stats.output_length;
        j["length_ratio"] = r.length_stats.ratio;
        j["plan"] = r.plan.to_string();
        if (r.injection) {
            j["injection"] = injection_json(*r.injection);
        } else {
            j["injection"] = nullptr;
        }
        return emit(out, dump_flat(j));
    });
}

void weave_compiled_free(weave_compiled *c) { delete c; }

weave_status weave_bench(int n, int p, const double *eps, size_t n_eps, int trials, uint64_t seed,
                         const weave_library *lib, char **table, char **json) {
    WEAVE_REQUIRE(eps != nullptr && lib != nullptr && table != nullptr && json != nullptr, "null argument");
    return guard([&] {
        weave::BenchConfig cfg;
        cfg.n = n;
        cfg.p = p;
        cfg.epsilons.assign(eps, eps + n_eps);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.library = lib->lib;
        const auto rep = weave::bench(cfg);
        nlohmann::ordered_json j;
        j["rows"] = nlohmann::ordered_json::array();
        for (const auto &r : rep.rows) {
            j["rows"].push_back({{"n", r.n},
                                 {"p", r.p},
                                 {"epsilon", r.epsilon},
                                 {"trial", r.trial},
                                 {"length", r.length},
                                 {"injections", r.injections},
                                 {"measured", r.measured},
                                 {"bound", r.bound},
                                 {"status", r.status}});
        }
        if (rep.sweep) {
            j["sweep"] = {{"C", rep.sweep->C}, {"alpha", rep.sweep->alpha}, {"rms_residual", rep.sweep->rms_residual}};
        }
        if (rep.fit) {
            j["fit"] = {{"C", rep.fit->fit.C},
                        {"alpha", rep.fit->fit.alpha},
                        {"rms_residual", rep.fit->fit.rms_residual},
                        {"C_envelope", rep.fit->C_envelope},
                        {"worst_ratio", rep.fit->worst_ratio},
                        {"all_within", rep.fit->all_within}};
        } else {
            j["fit"] = nullptr;
            j["fit_error"] = rep.fit_error;
        }
        if (emit(table, rep.to_table()) != WEAVE_OK) return WEAVE_E_INTERNAL;
        if (emit(json, j.dump(2) + "\n") != WEAVE_OK) {
            weave_string_free(*table);
            *table = nullptr;
            return WEAVE_E_INTERNAL;
        }
        return WEAVE_OK;
    });
}

}  // extern "C"
