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

// Command-line driver. Exit codes: 0 success, 1 usage or parse error,
// 2 verification failure, 3 search or injection not converged.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weave/weave.h"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFail = 2;
constexpr int kNotConverged = 3;

struct Exit {
    int code;
};

[[noreturn]] void die(int code, const std::string &msg) {
    std::cerr << "weave: " << msg << '\n';
    throw Exit{code};
}

void check(weave_status st, const std::string &context) {
    if (st == WEAVE_OK) return;
    die(st == WEAVE_E_COMPILE ? kNotConverged : kUsage, context + ": " + weave_last_error());
}

struct BraidDeleter {
    void operator()(weave_braid *b) const { weave_braid_free(b); }
};
struct LibraryDeleter {
    void operator()(weave_library *l) const { weave_library_free(l); }
};
struct CompiledDeleter {
    void operator()(weave_compiled *c) const { weave_compiled_free(c); }
};
struct StringDeleter {
    void operator()(char *s) const { weave_string_free(s); }
};
using Braid = std::unique_ptr<weave_braid, BraidDeleter>;
using Library = std::unique_ptr<weave_library, LibraryDeleter>;
using Compiled = std::unique_ptr<weave_compiled, CompiledDeleter>;
using String = std::unique_ptr<char, StringDeleter>;

Braid read_braid(const std::string &path, int *warp = nullptr) {
    weave_braid *b = nullptr;
    check(weave_braid_read(path.c_str(), &b, warp), path);
    return Braid(b);
}

Library load_library(const std::string &path) {
    weave_library *l = nullptr;
    check(weave_library_load(path.c_str(), &l), path);
    return Library(l);
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) die(kUsage, "cannot write " + path);
}

int charge_code(const std::string &s) {
    if (s == "tau" || s == "1") return 1;
    if (s == "vacuum" || s == "0") return 0;
    die(kUsage, "unknown charge '" + s + "' (use tau or vacuum)");
}

int chirality_code(const std::string &s) {
    if (s == "plus") return 0;
    if (s == "minus") return 1;
    die(kUsage, "unknown chirality '" + s + "' (use plus or minus)");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

// Library with one searched injection, for commands run without --library.
Library default_library() {
    weave_library *l = nullptr;
    check(weave_library_create(0, &l), "library");
    Library lib(l);
    weave_search_config cfg;
    weave_search_config_default(&cfg);
    cfg.max_length = 26;
    int converged = 0;
    char *summary = nullptr;
    check(weave_inject(&cfg, lib.get(), &converged, &summary), "default injection search");
    weave_string_free(summary);
    return lib;
}

struct CompileOpts {
    std::string input;
    double epsilon = 0.0;
    std::string library;
    std::string output;
    bool home = false;
    std::string verify;
};

int cmd_compile(const CompileOpts &o) {
    if (!(o.epsilon > 0.0)) die(kUsage, "--epsilon must be positive");
    Braid braid = read_braid(o.input);
    Library lib = load_library(o.library);
    weave_compiled *c = nullptr;
    check(weave_compile(braid.get(), o.epsilon, lib.get(), o.home ? 1 : 0, &c), "compile");
    Compiled compiled(c);
    weave_braid *w = nullptr;
    check(weave_compiled_word(compiled.get(), &w), "compile");
    Braid word(w);
    char *text = nullptr;
    check(weave_braid_format(word.get(), 1, &text), "format");
    String file(text);
    write_file(o.output, file.get());
    char *ledger = nullptr;
    check(weave_compiled_ledger_json(compiled.get(), &ledger), "ledger");
    String led(ledger);
    std::cout << led.get();

    if (!o.verify.empty()) {
        const auto sep = o.verify.find_first_of(":,");
        if (sep == std::string::npos) die(kUsage, "--verify-n-charge expects N:CHARGE, e.g. 4:tau");
        int n = 0;
        try {
            n = std::stoi(o.verify.substr(0, sep));
        } catch (const std::exception &) {
            die(kUsage, "--verify-n-charge expects N:CHARGE, e.g. 4:tau");
        }
        if (n != weave_braid_strands(braid.get())) {
            die(kUsage, "--verify-n-charge n=" + std::to_string(n) + " does not match the braid's " +
                            std::to_string(weave_braid_strands(braid.get())) + " strands");
        }
        double d = 0.0;
        check(weave_distance(braid.get(), word.get(), charge_code(o.verify.substr(sep + 1)), &d), "verify");
        const bool pass = d <= o.epsilon;
        std::cout << "verify: distance=" << fmt(d) << " epsilon=" << fmt(o.epsilon)
                  << " bound=" << fmt(weave_compiled_bound(compiled.get())) << ' ' << (pass ? "PASS" : "FAIL")
                  << '\n';
        if (!pass) return kVerifyFail;
    }
    return kOk;
}

struct InjectOpts {
    int max_length = 24;
    double target = 5e-2;
    std::string metric = "full";
    std::string out;
    int workers = 1;
    int exhaustive_length = 16;
    double match_radius = 5e-2;
    std::string chirality = "plus";
};

int cmd_inject(const InjectOpts &o) {
    Library lib;
    if (std::filesystem::exists(o.out)) {
        lib = load_library(o.out);
    } else {
        weave_library *l = nullptr;
        check(weave_library_create(chirality_code(o.chirality), &l), "library");
        lib.reset(l);
    }
    weave_search_config cfg;
    weave_search_config_default(&cfg);
    cfg.max_length = o.max_length;
    cfg.target = o.target;
    if (o.metric == "full" || o.metric == "two-sector-full" || o.metric == "two_sector_full") {
        cfg.metric = WEAVE_METRIC_FULL;
    } else if (o.metric == "sector-tau" || o.metric == "sector_tau_only" || o.metric == "tau") {
        cfg.metric = WEAVE_METRIC_SECTOR_TAU;
    } else {
        die(kUsage, "unknown metric '" + o.metric + "' (use full or sector-tau)");
    }
    cfg.workers = o.workers;
    cfg.exhaustive_length = o.exhaustive_length;
    cfg.match_radius = o.match_radius;
    const auto t0 = std::chrono::steady_clock::now();
    int converged = 0;
    char *summary = nullptr;
    check(weave_inject(&cfg, lib.get(), &converged, &summary), "inject");
    String s(summary);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check(weave_library_save(lib.get(), o.out.c_str()), o.out);
    std::cout << s.get();
    std::cerr << "wall time: " << secs << " s\n";
    if (!converged) {
        std::cerr << "weave: target " << o.target << " not reached\n";
        return kNotConverged;
    }
    return kOk;
}

struct VerifyOpts {
    std::string braid;
    std::string weave;
    int n = 0;
    std::string charge = "tau";
    double epsilon = 0.0;
    bool json = false;
};

int cmd_verify(const VerifyOpts &o) {
    if (!(o.epsilon > 0.0)) die(kUsage, "--epsilon must be positive");
    Braid a = read_braid(o.braid);
    Braid b = read_braid(o.weave);
    if (weave_braid_strands(a.get()) != weave_braid_strands(b.get())) {
        die(kUsage, "braid and weave have different strand counts");
    }
    if (o.n != 0 && o.n != weave_braid_strands(a.get())) {
        die(kUsage, "--n " + std::to_string(o.n) + " does not match the files' strand count");
    }
    double d = 0.0;
    check(weave_distance(a.get(), b.get(), charge_code(o.charge), &d), "verify");
    const bool pass = d <= o.epsilon;
    if (o.json) {
        std::cout << "{\n  \"distance\": " << fmt(d) << ",\n  \"epsilon\": " << fmt(o.epsilon)
                  << ",\n  \"pass\": " << (pass ? "true" : "false") << "\n}\n";
    } else {
        std::cout << "distance=" << fmt(d) << " epsilon=" << fmt(o.epsilon) << ' ' << (pass ? "PASS" : "FAIL") << '\n';
    }
    return pass ? kOk : kVerifyFail;
}

struct RenderOpts {
    std::string input;
    std::string format = "svg";
    int warp = -1;
    std::string output;
};

int cmd_render(const RenderOpts &o) {
    int file_warp = 0;
    Braid b = read_braid(o.input, &file_warp);
    const int warp = o.warp >= 0 ? o.warp : file_warp;
    if (o.warp == 0 || warp > weave_braid_strands(b.get())) die(kUsage, "--warp outside the strand range");
    weave_render_format f = WEAVE_RENDER_SVG;
    if (o.format == "ascii") {
        f = WEAVE_RENDER_ASCII;
    } else if (o.format != "svg") {
        die(kUsage, "unknown format '" + o.format + "' (use svg or ascii)");
    }
    char *text = nullptr;
    check(weave_render(b.get(), f, warp, &text), "render");
    String s(text);
    if (o.output.empty()) {
        std::cout << s.get();
    } else {
        write_file(o.output, s.get());
    }
    return kOk;
}

int cmd_model_check(const std::string &chirality, bool fault) {
    int ok = 0;
    char *report = nullptr;
    check(weave_model_check(chirality_code(chirality), fault ? 1 : 0, &ok, &report), "model-check");
    String s(report);
    std::cout << s.get();
    return ok ? kOk : kVerifyFail;
}

struct BenchOpts {
    int n = 4;
    int p = 5;
    std::vector<double> eps{0.1};
    int trials = 1;
    std::uint64_t seed = 1;
    std::string library;
    std::string json;
};

int cmd_bench(const BenchOpts &o) {
    Library lib = o.library.empty() ? default_library() : load_library(o.library);
    char *table = nullptr;
    char *json = nullptr;
    check(weave_bench(o.n, o.p, o.eps.data(), o.eps.size(), o.trials, o.seed, lib.get(), &table, &json), "bench");
    String t(table);
    String j(json);
    std::cout << t.get();
    if (!o.json.empty()) write_file(o.json, j.get());
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Compile braids on Fibonacci anyons into weaves"};
    app.set_version_flag("--version", std::string(weave_version()));
    app.require_subcommand(1);

    CompileOpts co;
    auto *compile = app.add_subcommand("compile", "Rewrite a braid as a weave with warp starting at 1");
    compile->add_option("--input", co.input, "BraidFile to compile")->required();
    compile->add_option("--epsilon", co.epsilon, "Target accuracy")->required();
    compile->add_option("--library", co.library, "Injection library JSON")->required();
    compile->add_option("--output", co.output, "Weave BraidFile to write")->required();
    compile->add_flag("--home", co.home, "Return the warp to position 1 at the end");
    compile->add_option("--verify-n-charge", co.verify, "Verify on the basis N:CHARGE, e.g. 4:tau");

    InjectOpts io;
    auto *inject = app.add_subcommand("inject", "Search for an injection weave and store it");
    inject->add_option("--max-length", io.max_length, "Longest word searched")->capture_default_str();
    inject->add_option("--target", io.target, "Target distance")->capture_default_str();
    inject->add_option("--metric", io.metric, "full or sector-tau")->capture_default_str();
    inject->add_option("--out", io.out, "Library JSON (appended when it exists)")->required();
    inject->add_option("--workers", io.workers, "Search threads")->capture_default_str();
    inject->add_option("--exhaustive-length", io.exhaustive_length, "Longest directly enumerated word")
        ->capture_default_str();
    inject->add_option("--match-radius", io.match_radius, "Half-pair matching radius")->capture_default_str();
    inject->add_option("--chirality", io.chirality, "plus or minus (new libraries)")->capture_default_str();

    VerifyOpts vo;
    auto *verify = app.add_subcommand("verify", "Measure the distance between a braid and a weave");
    verify->add_option("--braid", vo.braid, "Source BraidFile")->required();
    verify->add_option("--weave", vo.weave, "Weave BraidFile")->required();
    verify->add_option("--n", vo.n, "Expected strand count");
    verify->add_option("--charge", vo.charge, "Total charge: tau or vacuum")->capture_default_str();
    verify->add_option("--epsilon", vo.epsilon, "Pass threshold")->required();
    verify->add_flag("--json", vo.json, "Machine-readable output");

    RenderOpts ro;
    auto *render = app.add_subcommand("render", "Draw a braid as SVG or ASCII");
    render->add_option("--input", ro.input, "BraidFile")->required();
    render->add_option("--format", ro.format, "svg or ascii")->capture_default_str();
    render->add_option("--warp", ro.warp, "Highlighted strand (defaults to the file's warp)");
    render->add_option("-o,--output", ro.output, "Output file (stdout when omitted)");

    std::string chirality = "plus";
    bool fault = false;
    auto *model = app.add_subcommand("model-check", "Check the anyon model and braid relations");
    model->add_option("--chirality", chirality, "plus or minus")->capture_default_str();
    model->add_flag("--inject-fault", fault, "Corrupt the F matrix (test hook)")->group("");

    BenchOpts bo;
    std::string eps_list = "0.1";
    auto *benchc = app.add_subcommand("bench", "Compile seeded random braids across an eps grid");
    benchc->add_option("--n", bo.n, "Strands")->capture_default_str();
    benchc->add_option("--p", bo.p, "Generators per braid")->capture_default_str();
    benchc->add_option("--eps-list", eps_list, "Comma-separated eps values")->capture_default_str();
    benchc->add_option("--trials", bo.trials, "Braids per eps")->capture_default_str();
    benchc->add_option("--seed", bo.seed, "Random seed")->capture_default_str();
    benchc->add_option("--library", bo.library, "Injection library (searched when omitted)");
    benchc->add_option("--json", bo.json, "Also write the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*compile) return cmd_compile(co);
        if (*inject) return cmd_inject(io);
        if (*verify) return cmd_verify(vo);
        if (*render) return cmd_render(ro);
        if (*model) return cmd_model_check(chirality, fault);
        if (*benchc) {
            bo.eps.clear();
            std::stringstream ss(eps_list);
            std::string item;
            while (std::getline(ss, item, ',')) {
                try {
                    std::size_t used = 0;
                    bo.eps.push_back(std::stod(item, &used));
                    if (used != item.size()) throw std::invalid_argument(item);
                } catch (const std::exception &) {
                    die(kUsage, "bad --eps-list entry '" + item + "'");
                }
            }
            return cmd_bench(bo);
        }
    } catch (const Exit &e) {
        return e.code;
    }
    return kUsage;
}
