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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "weave/injection.hpp"

namespace weave {

using nlohmann::ordered_json;

namespace {

bool record_less(const InjectionWeave &a, const InjectionWeave &b) {
    if (a.distance_full != b.distance_full) return a.distance_full < b.distance_full;
    if (a.length() != b.length()) return a.length() < b.length();
    return a.word.to_signed() < b.word.to_signed();
}

ordered_json record_to_json(const InjectionWeave &r) {
    ordered_json j;
    j["word"] = r.word.to_signed();
    j["warp_start"] = r.warp_start;
    j["warp_end"] = r.warp_end;
    j["length"] = r.length();
    j["distance_2d"] = r.distance_2d;
    j["distance_full"] = r.distance_full;
    j["distance_embed"] = r.distance_embed;
    j["metric"] = r.metric_id;
    j["generator"] = r.generator;
    j["converged"] = r.converged;
    return j;
}

void check_close(const std::string &who, const char *field, double stored, double actual) {
    if (!(std::abs(stored - actual) <= 1e-9)) {
        std::ostringstream os;
        os.precision(17);
        os << who << ": " << field << " is " << stored << " but the word gives " << actual;
        throw LibraryError(os.str());
    }
}

InjectionWeave record_from_json(const ordered_json &j, std::size_t index, const ModelConstants &m) {
    const std::string who = "record " + std::to_string(index);
    InjectionWeave stored;
    try {
        stored.word = BraidWord::from_signed(3, j.at("word").get<std::vector<int>>());
        stored.warp_start = j.at("warp_start").get<int>();
        stored.warp_end = j.at("warp_end").get<int>();
        stored.distance_2d = j.at("distance_2d").get<double>();
        stored.distance_full = j.at("distance_full").get<double>();
        stored.distance_embed = j.at("distance_embed").get<double>();
        stored.metric_id = to_string(metric_from_string(j.at("metric").get<std::string>()));
        stored.generator = j.at("generator").get<std::string>();
        stored.converged = j.at("converged").get<bool>();
        if (j.at("length").get<std::size_t>() != stored.length()) {
            throw LibraryError(who + ": length field does not match the word");
        }
    } catch (const LibraryError &) {
        throw;
    } catch (const std::exception &e) {
        throw LibraryError(who + ": " + e.what());
    }
    if (stored.generator != "brute_force" && stored.generator != "sk") {
        throw LibraryError(who + ": unknown generator '" + stored.generator + "'");
    }
    InjectionWeave fresh;
    try {
        fresh = InjectionWeave::from_word(stored.word, stored.warp_start, metric_from_string(stored.metric_id),
                                          stored.generator, m);
    } catch (const std::exception &e) {
        throw LibraryError(who + ": " + e.what());
    }
    if (fresh.warp_end != stored.warp_end) {
        throw LibraryError(who + ": warp_end is " + std::to_string(stored.warp_end) + " but the word ends at " +
                           std::to_string(fresh.warp_end));
    }
    check_close(who, "distance_2d", stored.distance_2d, fresh.distance_2d);
    check_close(who, "distance_full", stored.distance_full, fresh.distance_full);
    check_close(who, "distance_embed", stored.distance_embed, fresh.distance_embed);
    // Keep the stored values so that a load/save cycle is byte-stable.
    return stored;
}

}  // namespace

void InjectionLibrary::add(InjectionWeave rec) {
    records.insert(std::upper_bound(records.begin(), records.end(), rec, record_less), std::move(rec));
}

void InjectionLibrary::sort() { std::stable_sort(records.begin(), records.end(), record_less); }

std::string library_to_json(const InjectionLibrary &lib) {
    // Header fields one per line, each record compact on its own line, so
    // files stay diffable without spreading long words over many lines.
    std::ostringstream os;
    os << "{\n";
    os << "  \"model\": " << ordered_json(lib.model).dump() << ",\n";
    os << "  \"chirality\": " << ordered_json(to_string(lib.chirality)).dump() << ",\n";
    os << "  \"tool_version\": " << ordered_json(lib.tool_version).dump() << ",\n";
    os << "  \"sk_net\": " << ordered_json{{"max_length", lib.sk_net_length}}.dump() << ",\n";
    os << "  \"records\": [";
    for (std::size_t i = 0; i < lib.records.size(); ++i) {
        os << (i ? ",\n    " : "\n    ") << record_to_json(lib.records[i]).dump();
    }
    os << (lib.records.empty() ? "]\n" : "\n  ]\n");
    os << "}\n";
    return os.str();
}

InjectionLibrary library_from_json(const std::string &text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception &e) {
        throw LibraryError(std::string("library is not valid JSON: ") + e.what());
    }
    InjectionLibrary lib;
    try {
        lib.model = j.at("model").get<std::string>();
        lib.chirality = chirality_from_string(j.at("chirality").get<std::string>());
        lib.tool_version = j.at("tool_version").get<std::string>();
        lib.sk_net_length = j.at("sk_net").at("max_length").get<int>();
    } catch (const std::exception &e) {
        throw LibraryError(std::string("library header: ") + e.what());
    }
    if (lib.model != "fibonacci") {
        throw LibraryError("unsupported model '" + lib.model + "'");
    }
    const ModelConstants m = ModelConstants::fibonacci(lib.chirality);
    const auto &recs = j.contains("records") ? j.at("records") : ordered_json::array();
    if (!recs.is_array()) throw LibraryError("records must be an array");
    for (std::size_t i = 0; i < recs.size(); ++i) lib.records.push_back(record_from_json(recs[i], i, m));
    return lib;
}

void save_library(const InjectionLibrary &lib, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw LibraryError("cannot write " + path.string());
    out << library_to_json(lib);
    if (!out) throw LibraryError("failed writing " + path.string());
}

InjectionLibrary load_library(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LibraryError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return library_from_json(buf.str());
}

}  // namespace weave
