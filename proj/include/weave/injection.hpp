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

#ifndef WEAVE_INJECTION_HPP
#define WEAVE_INJECTION_HPP

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "weave/anyon.hpp"
#include "weave/braid.hpp"

namespace weave {

inline constexpr const char *kToolVersion = "1.0.0";

enum class Metric { TwoSectorFull, SectorTauOnly };

std::string to_string(Metric m);
/// Accepts "two_sector_full"/"full" and "sector_tau_only"/"sector-tau"/"tau".
Metric metric_from_string(const std::string &s);

/// Distances of a 3-strand word from the identity on the 3-anyon space.
struct InjectionDistances {
    /// Projective distance of the 2-dim total-charge-tau block.
    double sector_tau = 0.0;
    /// Both sectors against one common phase (3x3 block-diagonal matrix).
    double full = 0.0;
    /// Largest distance the word can have once embedded in a wider braid: the
    /// maximum over every relative weighting of the two sectors.
    double embedded = 0.0;
};

InjectionDistances injection_distances(const BraidWord &w, const ModelConstants &m = ModelConstants::fibonacci());
double full_sector_distance(const BraidWord &w, const ModelConstants &m = ModelConstants::fibonacci());

/// A 3-strand weave moving the warp between positions 1 and 3 while acting
/// approximately as the identity.
struct InjectionWeave {
    BraidWord word{3};
    int warp_start = 1;
    int warp_end = 3;
    double distance_2d = 0.0;
    double distance_full = 0.0;
    double distance_embed = 0.0;
    std::string metric_id = "two_sector_full";
    std::string generator = "brute_force";
    bool converged = true;

    std::size_t length() const { return word.length(); }
    double distance(Metric m) const { return m == Metric::SectorTauOnly ? distance_2d : distance_full; }

    /// Scores `word` through the anyon representation; the warp must start at `warp_start`.
    static InjectionWeave from_word(BraidWord word, int warp_start, Metric metric, std::string generator,
                                    const ModelConstants &m = ModelConstants::fibonacci());

    friend bool operator==(const InjectionWeave &, const InjectionWeave &) = default;
};

struct SearchConfig {
    int max_length = 24;
    double target_distance = 5e-2;
    Metric metric = Metric::TwoSectorFull;
    /// Lengths up to this are enumerated directly; longer ones by meet-in-the-middle.
    int exhaustive_length = 16;
    /// Pairs of halves closer than this (in the chosen metric) are always examined.
    double match_radius = 5e-2;
    /// Cap on entries per half table; longer halves are skipped when exceeded.
    std::size_t max_half_entries = 4'000'000;
    int workers = 1;

    void validate() const;
};

struct SearchResult {
    InjectionWeave best;
    bool converged = false;
    /// False when no word of the allowed lengths reaches position 3; `best`
    /// then holds the best weave found with its actual warp endpoint.
    bool found_injection = false;
    std::size_t candidates_scored = 0;
};

SearchResult brute_force_injection(const SearchConfig &cfg, const ModelConstants &m = ModelConstants::fibonacci());

/// Inverse word: warp runs 3 -> 1 with identical distances.
InjectionWeave invert_injection(const InjectionWeave &inj, const ModelConstants &m = ModelConstants::fibonacci());

/// Lower bound on the basin used by refine_injection.
inline constexpr double kRefineBasin = 0.1;

struct RefineConfig {
    /// Longest pureweave used for the base approximation net.
    int net_length = 24;
    int max_depth = 5;
    /// Axis frames tried per commutator decomposition; the best is kept.
    int frames = 4;
};

struct RefineResult {
    InjectionWeave injection;
    bool converged = false;
    /// distance_full after each recursion depth (0 = net lookup only).
    std::vector<double> level_errors;
    std::vector<std::size_t> level_lengths;
};

namespace sk {
class Net;
}

/// Solovay-Kitaev refinement of `base` to distance_full <= target. Throws
/// std::invalid_argument when base.distance_full exceeds kRefineBasin.
RefineResult refine_injection(const InjectionWeave &base, double target, const sk::Net &net,
                              const RefineConfig &cfg = {});

/// Fit of L ~ C |log eps|^alpha.
struct ScalingFit {
    struct Sample {
        double epsilon = 0.0;
        double length = 0.0;
    };
    std::vector<Sample> samples;
    double C = 0.0;
    double alpha = 0.0;
    /// Least-squares residuals in log length.
    std::vector<double> residuals;
    double rms_residual = 0.0;
};

/// Least-squares fit of log L = log C + alpha log|log eps|. Needs two distinct eps.
ScalingFit fit_scaling(std::vector<ScalingFit::Sample> samples);

/// Refines `base` towards each target and fits length against the achieved
/// distance_full. Refinements that land on the same word count once.
ScalingFit sk_sweep(const InjectionWeave &base, const std::vector<double> &targets, const sk::Net &net,
                    const RefineConfig &cfg = {});

struct InjectionLibrary {
    std::string model = "fibonacci";
    Chirality chirality = Chirality::Plus;
    std::string tool_version = kToolVersion;
    /// Longest pureweave in the refinement net; the net itself is rebuilt from this.
    int sk_net_length = 24;
    std::vector<InjectionWeave> records;

    /// Keeps records sorted by distance_full, then length, then word.
    void add(InjectionWeave rec);
    void sort();

    friend bool operator==(const InjectionLibrary &, const InjectionLibrary &) = default;
};

class LibraryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string library_to_json(const InjectionLibrary &lib);
InjectionLibrary library_from_json(const std::string &text);
void save_library(const InjectionLibrary &lib, const std::filesystem::path &path);
/// Re-scores every record; a mismatch above 1e-9 raises LibraryError naming it.
InjectionLibrary load_library(const std::filesystem::path &path);

}  // namespace weave

#endif  // WEAVE_INJECTION_HPP
