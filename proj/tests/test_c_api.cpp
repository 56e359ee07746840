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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "weave/weave.h"

namespace {

std::string take(char *s) {
    std::string out = s != nullptr ? s : "";
    weave_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("braid handles") {
    const int gens[] = {1, -2, -3, 2, 1};
    weave_braid *b = nullptr;
    REQUIRE(weave_braid_create(4, gens, 5, &b) == WEAVE_OK);
    CHECK(weave_braid_strands(b) == 4);
    CHECK(weave_braid_length(b) == 5);
    std::vector<int> back(5);
    CHECK(weave_braid_generators(b, back.data(), back.size()) == 5);
    CHECK(back == std::vector<int>(gens, gens + 5));
    for (int k = 1; k <= 4; ++k) CHECK(weave_braid_is_weave(b, k) == 0);
    char *text = nullptr;
    REQUIRE(weave_braid_format(b, 1, &text) == WEAVE_OK);
    CHECK(take(text) == "strands: 4\nwarp: 1\n1 -2 -3 2 1\n");
    weave_braid_free(b);

    const int bad[] = {4};
    weave_braid *none = nullptr;
    CHECK(weave_braid_create(4, bad, 1, &none) == WEAVE_E_INVALID);
    CHECK(none == nullptr);
    CHECK(std::string(weave_last_error()).size() > 0);
}

TEST_CASE("parsing reports positions") {
    weave_braid *b = nullptr;
    int warp = -1;
    REQUIRE(weave_braid_parse("strands: 3\nwarp: 2\n1 -2\n", &b, &warp) == WEAVE_OK);
    CHECK(warp == 2);
    weave_braid_free(b);
    CHECK(weave_braid_parse("strands: 3\n1 9\n", &b, &warp) == WEAVE_E_PARSE);
    CHECK(std::string(weave_last_error()).rfind("2:3:", 0) == 0);
    CHECK(weave_braid_read("/nonexistent/file.braid", &b, nullptr) == WEAVE_E_IO);
}

TEST_CASE("model check through the C interface") {
    int ok = 0;
    char *report = nullptr;
    REQUIRE(weave_model_check(0, 0, &ok, &report) == WEAVE_OK);
    CHECK(ok == 1);
    CHECK(take(report).find("model check passed") != std::string::npos);
    REQUIRE(weave_model_check(0, 1, &ok, &report) == WEAVE_OK);
    CHECK(ok == 0);
    weave_string_free(report);
}

TEST_CASE("search, store, compile and verify") {
    weave_library *lib = nullptr;
    REQUIRE(weave_library_create(0, &lib) == WEAVE_OK);
    weave_search_config cfg;
    weave_search_config_default(&cfg);
    cfg.max_length = 26;
    int converged = 0;
    char *summary = nullptr;
    REQUIRE(weave_inject(&cfg, lib, &converged, &summary) == WEAVE_OK);
    CHECK(converged == 1);
    CHECK(take(summary).find("\"records_added\": 1") != std::string::npos);
    CHECK(weave_library_size(lib) == 1);

    const auto path = std::filesystem::temp_directory_path() / "weave_c_api_lib.json";
    REQUIRE(weave_library_save(lib, path.c_str()) == WEAVE_OK);
    weave_library *loaded = nullptr;
    REQUIRE(weave_library_load(path.c_str(), &loaded) == WEAVE_OK);
    char *a = nullptr;
    char *b = nullptr;
    REQUIRE(weave_library_to_json(lib, &a) == WEAVE_OK);
    REQUIRE(weave_library_to_json(loaded, &b) == WEAVE_OK);
    CHECK(take(a) == take(b));
    std::filesystem::remove(path);

    const int gens[] = {1, -2, -3, 2, 1};
    weave_braid *braid = nullptr;
    REQUIRE(weave_braid_create(4, gens, 5, &braid) == WEAVE_OK);
    weave_compiled *c = nullptr;
    REQUIRE(weave_compile(braid, 0.1, loaded, 0, &c) == WEAVE_OK);
    weave_braid *w = nullptr;
    REQUIRE(weave_compiled_word(c, &w) == WEAVE_OK);
    CHECK(weave_braid_is_weave(w, 1) == 1);
    double d = 1.0;
    REQUIRE(weave_distance(braid, w, 1, &d) == WEAVE_OK);
    CHECK(d <= 0.1);
    CHECK(d <= weave_compiled_bound(c));
    char *ledger = nullptr;
    REQUIRE(weave_compiled_ledger_json(c, &ledger) == WEAVE_OK);
    CHECK(take(ledger).find("\"plan\": \"M1;1 t1 M2;2 t2^-1 M3;3 t3^-1 M4;2 t2 M3;1 t1\"") != std::string::npos);

    // A lone tau_1 leaves the warp at position 2, which has no way home.
    weave_braid *three = nullptr;
    REQUIRE(weave_braid_create(3, gens, 1, &three) == WEAVE_OK);
    weave_compiled *home = nullptr;
    CHECK(weave_compile(three, 0.1, loaded, 1, &home) == WEAVE_E_COMPILE);
    CHECK(home == nullptr);
    CHECK(weave_compile(braid, -1.0, loaded, 0, &home) == WEAVE_E_INVALID);
    CHECK(weave_distance(braid, three, 1, &d) == WEAVE_E_INVALID);

    char *svg = nullptr;
    REQUIRE(weave_render(w, WEAVE_RENDER_SVG, 1, &svg) == WEAVE_OK);
    CHECK(take(svg).find("data-warp-positions=\"1 ") != std::string::npos);

    weave_braid_free(three);
    weave_braid_free(w);
    weave_compiled_free(c);
    weave_braid_free(braid);
    weave_library_free(loaded);
    weave_library_free(lib);
}

TEST_CASE("corrupt libraries are rejected") {
    const auto path = std::filesystem::temp_directory_path() / "weave_c_api_bad.json";
    std::FILE *f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs("{\"model\":\"fibonacci\",\"chirality\":\"plus\",\"tool_version\":\"1.0.0\",\"sk_net\":{\"max_length\":24},"
               "\"records\":[{\"word\":[1,2],\"warp_start\":1,\"warp_end\":3,\"length\":2,\"distance_2d\":0,"
               "\"distance_full\":0,\"distance_embed\":0,\"metric\":\"two_sector_full\",\"generator\":\"sk\","
               "\"converged\":true}]}",
               f);
    std::fclose(f);
    weave_library *lib = nullptr;
    CHECK(weave_library_load(path.c_str(), &lib) == WEAVE_E_LIBRARY);
    CHECK(std::string(weave_last_error()).find("record 0") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("bench through the C interface") {
    weave_library *lib = nullptr;
    REQUIRE(weave_library_create(0, &lib) == WEAVE_OK);
    weave_search_config cfg;
    weave_search_config_default(&cfg);
    cfg.max_length = 26;
    int converged = 0;
    char *summary = nullptr;
    REQUIRE(weave_inject(&cfg, lib, &converged, &summary) == WEAVE_OK);
    weave_string_free(summary);
    const double eps[] = {0.1};
    char *t1 = nullptr;
    char *j1 = nullptr;
    char *t2 = nullptr;
    char *j2 = nullptr;
    REQUIRE(weave_bench(4, 5, eps, 1, 2, 5, lib, &t1, &j1) == WEAVE_OK);
    REQUIRE(weave_bench(4, 5, eps, 1, 2, 5, lib, &t2, &j2) == WEAVE_OK);
    CHECK(take(t1) == take(t2));
    CHECK(take(j1) == take(j2));
    weave_library_free(lib);
}
