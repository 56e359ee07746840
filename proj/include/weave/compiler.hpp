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

#ifndef WEAVE_COMPILER_HPP
#define WEAVE_COMPILER_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "weave/anyon.hpp"
#include "weave/braid.hpp"
#include "weave/injection.hpp"

namespace weave {

namespace sk {
class Net;
}

struct WarpMove {
    int from = 1;
    int to = 1;
};

/// Where the warp sits before step i and where it has to be to execute
/// tau_{s(i)}: odd steps use odd positions, even steps even ones. s_prev = 0 for i = 1.
WarpMove parity_target(int i, int s_prev, int s_i);

/// Chain of embedded injections carrying the warp from `from` to `to`
/// (equal parity). Moving down uses the inverse of the upward chain.
BraidWord multiple_injection(int from, int to, const InjectionWeave &inj, int n);

struct MultipleInjection {
    int from = 1;
    int to = 1;
    int q = 0;

    friend bool operator==(const MultipleInjection &, const MultipleInjection &) = default;
};

struct OriginalGenerator {
    int s = 1;
    int r = 1;

    friend bool operator==(const OriginalGenerator &, const OriginalGenerator &) = default;
};

using PlanSegment = std::variant<MultipleInjection, OriginalGenerator>;

struct CompilePlan {
    std::vector<PlanSegment> segments;
    /// Per-injection accuracy eps / (n p).
    double delta = 0.0;

    std::size_t injection_count() const;
    std::string to_string() const;

    friend bool operator==(const CompilePlan &, const CompilePlan &) = default;
};

/// Emits the plan with `inj` substituted for every injection. An empty
/// injection word stands in for an exact identity (warp bookkeeping only).
BraidWord flatten_plan(const CompilePlan &plan, const InjectionWeave &inj, int n);

struct CompileRequest {
    BraidWord braid{3};
    double epsilon = 0.1;
    InjectionLibrary library;
    bool return_home = false;
    RefineConfig refine;
    /// Optional prebuilt refinement net; built from the library's settings when absent.
    std::shared_ptr<const sk::Net> net;
};

struct BudgetLedger {
    int p = 0;
    int n = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::size_t injection_count = 0;
    /// injection_count * delta.
    double guaranteed_bound = 0.0;
    /// injection_count * (embedded distance of the injection actually used).
    double achieved_bound = 0.0;
};

struct LengthStats {
    std::size_t input_length = 0;
    std::size_t output_length = 0;
    double ratio = 0.0;
};

struct CompiledWeave {
    BraidWord word{3};
    int warp_start = 1;
    CompilePlan plan;
    BudgetLedger budget;
    LengthStats length_stats;
    /// The 1 -> 3 injection that was embedded, when the plan needed one.
    std::optional<InjectionWeave> injection;
};

class CompileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lowest distance_full 1 -> 3 record (inverting 3 -> 1 ones) that refinement accepts.
std::optional<InjectionWeave> refinement_base(const InjectionLibrary &lib);

/// Injection with embedded distance <= delta: the shortest adequate library
/// record, otherwise a refinement of the best library record.
InjectionWeave select_injection(const InjectionLibrary &lib, double delta, const RefineConfig &refine,
                                std::shared_ptr<const sk::Net> &net);

CompiledWeave compile(const CompileRequest &req);

struct VerificationReport {
    double distance = 0.0;
    double guaranteed_bound = 0.0;
    double epsilon = 0.0;
    /// distance <= epsilon.
    bool pass = false;
    /// distance <= guaranteed_bound (up to rounding).
    bool within_bound = false;
};

VerificationReport verify_compilation(const BraidWord &braid, const BraidWord &weave, const FusionBasis &basis,
                                      double epsilon, double guaranteed_bound,
                                      const ModelConstants &m = ModelConstants::fibonacci());

struct LengthSample {
    int n = 3;
    int p = 1;
    double epsilon = 0.1;
    std::size_t length = 0;
};

struct LengthBoundReport {
    /// Least-squares fit of L/(n p) against |log(eps/(n p))|.
    ScalingFit fit;
    /// Smallest C for which every sample obeys L <= C n p |log(eps/(n p))|^alpha.
    double C_envelope = 0.0;
    /// Scaling law the samples are held to, usually an injection refinement sweep.
    ScalingFit reference;
    /// Largest L / (C_ref n p |log(eps/(n p))|^alpha_ref) over the samples.
    double worst_ratio = 0.0;
    bool all_within = false;
};

/// Needs at least 5 samples whose eps span a factor of 10.
LengthBoundReport length_bound_report(const std::vector<LengthSample> &samples, const ScalingFit &reference);

}  // namespace weave

#endif  // WEAVE_COMPILER_HPP
