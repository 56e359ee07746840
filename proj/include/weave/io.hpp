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

#ifndef WEAVE_IO_HPP
#define WEAVE_IO_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "weave/anyon.hpp"
#include "weave/braid.hpp"
#include "weave/compiler.hpp"
#include "weave/injection.hpp"

namespace weave {

/// `strands: n`, optional `warp: k`, then signed generator indices.
struct BraidFile {
    BraidWord word{2};
    std::optional<int> warp;

    friend bool operator==(const BraidFile &, const BraidFile &) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string &what);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

BraidFile parse_braid_file(const std::string &text);
/// Canonical text: header lines, then at most 32 indices per line, LF endings.
std::string format_braid_file(const BraidFile &file);
BraidFile read_braid_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);

enum class RenderFormat { Svg, Ascii };

struct RenderSpec {
    RenderFormat format = RenderFormat::Svg;
    /// Starting position of the highlighted strand; none draws every strand as weft.
    std::optional<int> warp;
    double spacing = 24.0;
    double step = 28.0;
};

/// Time runs left to right, position 1 at the bottom. In tau_s^{+1} the strand
/// moving up passes over; in tau_s^{-1} it passes under.
std::string render(const BraidWord &w, const RenderSpec &spec);

struct ModelCheckOptions {
    Chirality chirality = Chirality::Plus;
    int max_n = 8;
    /// Test hook: corrupts one F entry so that the check must fail.
    bool inject_fault = false;
};

struct ModelCheckReport {
    ValidationReport model;
    /// Braid relations and generator unitarity, worst over every basis checked.
    ValidationReport braid;

    bool ok() const { return model.ok() && braid.ok(); }
    std::string to_text() const;
};

ModelCheckReport model_check(const ModelCheckOptions &opt = {});

struct BenchConfig {
    int n = 4;
    int p = 5;
    std::vector<double> epsilons{0.1};
    int trials = 1;
    std::uint64_t seed = 1;
    InjectionLibrary library;
    std::shared_ptr<const sk::Net> net;
    /// Refinement targets for the reference scaling fit.
    std::vector<double> sweep_targets{1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 2e-4, 1e-4, 1e-5, 1e-6, 1e-7};
};

struct BenchRow {
    int n = 0;
    int p = 0;
    double epsilon = 0.0;
    int trial = 0;
    std::size_t length = 0;
    std::size_t injections = 0;
    double measured = 0.0;
    double bound = 0.0;
    /// "ok", "fail" (measured above eps or bound) or a compile error message.
    std::string status;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    /// Length against accuracy for refinements of the library's best injection.
    std::optional<ScalingFit> sweep;
    /// Compiled lengths held to the sweep's law.
    std::optional<LengthBoundReport> fit;
    std::string fit_error;

    std::string to_table() const;
};

struct InjectOutcome {
    SearchResult search;
    std::optional<RefineResult> refined;
    bool converged = false;
    /// Records appended to the library (duplicates of existing words are skipped).
    std::vector<InjectionWeave> added;
};

/// Runs the search and, under the full metric, refines a result that falls
/// short of the target. Only genuine injections (warp 1 -> 3) are stored.
InjectOutcome inject_into_library(const SearchConfig &cfg, InjectionLibrary &lib, const RefineConfig &refine = {});

/// Seeded random braid with p generators on n strands.
BraidWord random_braid(int n, int p, std::uint64_t seed);

BenchReport bench(const BenchConfig &cfg);

}  // namespace weave

#endif  // WEAVE_IO_HPP
