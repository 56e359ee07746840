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

#include "weave/injection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "weave/sk.hpp"

namespace weave {

std::string to_string(Metric m) { return m == Metric::SectorTauOnly ? "sector_tau_only" : "two_sector_full"; }

Metric metric_from_string(const std::string &s) {
    if (s == "two_sector_full" || s == "full" || s == "two-sector-full") return Metric::TwoSectorFull;
    if (s == "sector_tau_only" || s == "sector-tau" || s == "tau" || s == "sector-tau-only") {
        return Metric::SectorTauOnly;
    }
    throw std::invalid_argument("unknown metric '" + s + "'");
}

namespace {

// Phase-aligned distances from the two sector blocks of a 3-strand word. The
// squared form sums squares of small numbers, so it stays accurate near 0.
struct SectorScore {
    double tau = 0.0;
    double full = 0.0;
};

double aligned_sq(const Eigen::Matrix2cd &u, Complex u1, double w_vac, Complex phase) {
    const double tau_part = (u - phase * Eigen::Matrix2cd::Identity()).squaredNorm() / 2.0;
    const double vac_part = std::norm(u1 - phase);
    return (1.0 - w_vac) * tau_part + w_vac * vac_part;
}

Complex unit_phase(Complex z) { return std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0); }

// Vacuum-sector weight w in [0, 1]; the 3-anyon space itself has w = 1/3.
double weighted_distance(const Eigen::Matrix2cd &u, Complex u1, double w_vac) {
    const Complex mix = (1.0 - w_vac) * (u.trace() / 2.0) + w_vac * u1;
    return std::sqrt(std::max(0.0, aligned_sq(u, u1, w_vac, unit_phase(mix))));
}

SectorScore score(const Eigen::Matrix2cd &u, Complex u1) {
    return {weighted_distance(u, u1, 0.0), weighted_distance(u, u1, 1.0 / 3.0)};
}

double embedded_distance(const Eigen::Matrix2cd &u, Complex u1) {
    // max over w of 2 - 2|a + w (b - a)|: the point of segment [a, b] closest to 0.
    const Complex a = u.trace() / 2.0;
    const Complex b = u1;
    const Complex ab = b - a;
    double w = 0.0;
    if (std::norm(ab) > 0.0) {
        w = std::clamp(-(std::conj(a) * ab).real() / std::norm(ab), 0.0, 1.0);
    }
    return std::max({weighted_distance(u, u1, 0.0), weighted_distance(u, u1, 1.0), weighted_distance(u, u1, w)});
}

struct Candidate {
    std::vector<Generator> word;
    double distance = std::numeric_limits<double>::infinity();
    long long key = std::numeric_limits<long long>::max();
    int end = 0;

    bool valid() const { return !word.empty() || key != std::numeric_limits<long long>::max(); }
};

long long distance_key(double d) { return std::llround(d * 1e12); }

// Total order: distance (to 1e-12), then length, then signed-integer lexicographic.
bool better(const Candidate &a, const Candidate &b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
}

void offer(Candidate &best, std::vector<Generator> word, double d, int end) {
    Candidate c{std::move(word), d, distance_key(d), end};
    if (!best.valid() || better(c, best)) best = std::move(c);
}

constexpr std::size_t kMaxHalf = 32;

struct HalfEntry {
    std::array<std::int8_t, kMaxHalf> word{};
    std::uint8_t length = 0;
    std::int8_t end = 0;
    std::int16_t exponent = 0;
    Eigen::Matrix2cd u;
    Eigen::Vector4d feature;

    Generator last() const { return Generator::from_signed(word[length - 1]); }
    void append_to(std::vector<Generator> &out) const {
        for (std::size_t k = 0; k < length; ++k) out.push_back(Generator::from_signed(word[k]));
    }
    void append_inverse_to(std::vector<Generator> &out) const {
        for (std::size_t k = length; k-- > 0;) out.push_back(Generator::from_signed(-word[k]));
    }
};

// Every pruned weave word of exactly `length` crossings with the warp starting at `start`.
std::vector<HalfEntry> enumerate_half(const ThreeStrandRep &rep, int start, int length, std::size_t cap) {
    std::vector<HalfEntry> out;
    HalfEntry cur;
    bool overflow = false;
    auto dfs = [&](auto &&self, int pos, const Eigen::Matrix2cd &u, int e, int depth) -> void {
        if (overflow) return;
        if (depth == length) {
            if (out.size() >= cap) {
                overflow = true;
                return;
            }
            cur.length = static_cast<std::uint8_t>(length);
            cur.end = static_cast<std::int8_t>(pos);
            cur.exponent = static_cast<std::int16_t>(e);
            cur.u = u;
            out.push_back(cur);
            return;
        }
        for (int index : {pos - 1, pos}) {
            if (index < 1 || index > 2) continue;
            for (int sign : {-1, 1}) {
                const Generator g{index, sign};
                if (depth > 0 && Generator::from_signed(cur.word[depth - 1]) == g.inverse()) continue;
                cur.word[depth] = static_cast<std::int8_t>(g.as_signed());
                self(self, index == pos ? pos + 1 : pos - 1, rep.generator(g) * u, e + sign, depth + 1);
            }
        }
    };
    dfs(dfs, start, Eigen::Matrix2cd::Identity(), 0, 0);
    if (overflow) out.clear();
    return out;
}

// Grid coordinates for nearest-pair probing. Sector-tau only: the SU(2)
// quaternion of u/sqrt(det u) (defined up to sign). Full: the first row of
// the relative block u * conj(u1), whose Frobenius change is at most 3x the
// full-sector distance.
Eigen::Vector4d feature(const ThreeStrandRep &rep, const HalfEntry &h, Metric metric) {
    if (metric == Metric::SectorTauOnly) {
        const Complex root = std::sqrt(h.u.determinant());
        return sk::to_quaternion(h.u / root);
    }
    const Eigen::Matrix2cd v = rep.relative(h.u, h.exponent);
    return {v(0, 0).real(), v(0, 0).imag(), v(0, 1).real(), v(0, 1).imag()};
}

using CellKey = std::uint64_t;

CellKey cell_key(const std::array<long, 4> &c) {
    CellKey k = 0;
    for (long v : c) k = (k << 16) | static_cast<std::uint16_t>(static_cast<std::int16_t>(v));
    return k;
}

std::array<long, 4> cell_of(const Eigen::Vector4d &f, double h) {
    return {static_cast<long>(std::floor(f[0] / h)), static_cast<long>(std::floor(f[1] / h)),
            static_cast<long>(std::floor(f[2] / h)), static_cast<long>(std::floor(f[3] / h))};
}

double metric_distance(Metric metric, const SectorScore &s) { return metric == Metric::SectorTauOnly ? s.tau : s.full; }

struct Partitioned {
    Candidate best;
    std::size_t scored = 0;
};

// Splits [0, count) into contiguous chunks, one per worker; each worker keeps
// its own best and a single reducer picks the winner under `better`.
template <typename Work>
Partitioned run_partitioned(std::size_t count, int workers, Work work) {
    workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(count, 1))));
    std::vector<Candidate> local(workers);
    std::vector<std::size_t> scored(workers, 0);
    auto chunk = [&](int w) {
        const std::size_t lo = count * w / workers;
        const std::size_t hi = count * (w + 1) / workers;
        work(lo, hi, local[w], scored[w]);
    };
    if (workers == 1) {
        chunk(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
        for (auto &t : pool) t.join();
    }
    Partitioned out;
    for (int w = 0; w < workers; ++w) {
        out.scored += scored[w];
        if (local[w].valid() && (!out.best.valid() || better(local[w], out.best))) out.best = std::move(local[w]);
    }
    return out;
}

void merge(Partitioned &into, Partitioned &&from) {
    into.scored += from.scored;
    if (from.best.valid() && (!into.best.valid() || better(from.best, into.best))) into.best = std::move(from.best);
}

struct Prefix {
    std::vector<Generator> word;
    int pos = 1;
    Eigen::Matrix2cd u;
    int e = 0;
};

// Words from position 1 of length <= max_len, scored when the warp sits at 3.
Partitioned exhaustive_search(const ThreeStrandRep &rep, Metric metric, int max_len, int workers) {
    std::vector<Prefix> prefixes;
    Prefix root{{}, 1, Eigen::Matrix2cd::Identity(), 0};
    auto expand = [&](const Prefix &p) {
        std::vector<Prefix> out;
        for (int index : {p.pos - 1, p.pos}) {
            if (index < 1 || index > 2) continue;
            for (int sign : {-1, 1}) {
                const Generator g{index, sign};
                if (!p.word.empty() && p.word.back() == g.inverse()) continue;
                Prefix q = p;
                q.word.push_back(g);
                q.pos = index == p.pos ? p.pos + 1 : p.pos - 1;
                q.u = rep.generator(g) * p.u;
                q.e += sign;
                out.push_back(std::move(q));
            }
        }
        return out;
    };
    for (auto &a : expand(root)) {
        for (auto &b : expand(a)) prefixes.push_back(std::move(b));
    }
    return run_partitioned(prefixes.size(), workers, [&](std::size_t lo, std::size_t hi, Candidate &best,
                                                         std::size_t &scored) {
        std::vector<Generator> word;
        auto dfs = [&](auto &&self, int pos, const Eigen::Matrix2cd &u, int e) -> void {
            if (pos == 3) {
                ++scored;
                const double d = metric_distance(metric, score(u, rep.sector_vacuum(e)));
                const long long key = distance_key(d);
                if (!best.valid() || key <= best.key) offer(best, word, d, pos);
            }
            if (static_cast<int>(word.size()) == max_len) return;
            for (int index : {pos - 1, pos}) {
                if (index < 1 || index > 2) continue;
                for (int sign : {-1, 1}) {
                    const Generator g{index, sign};
                    if (word.back() == g.inverse()) continue;
                    word.push_back(g);
                    self(self, index == pos ? pos + 1 : pos - 1, rep.generator(g) * u, e + sign);
                    word.pop_back();
                }
            }
        };
        for (std::size_t k = lo; k < hi; ++k) {
            word = prefixes[k].word;
            if (static_cast<int>(word.size()) > max_len) continue;
            dfs(dfs, prefixes[k].pos, prefixes[k].u, prefixes[k].e);
        }
    });
}

// Words of one total length split into two halves that meet in the middle;
// the left half starts at 1, the inverse of the right half starts at 3.
Partitioned meet_in_middle(const ThreeStrandRep &rep, Metric metric, const std::vector<HalfEntry> &left,
                           const std::vector<HalfEntry> &right_inv, double radius, int workers) {
    const double cell = metric == Metric::SectorTauOnly ? radius : 3.0 * radius;
    std::unordered_map<CellKey, std::vector<std::uint32_t>> grid;
    grid.reserve(left.size() * 2);
    std::vector<Eigen::Vector4d> left_features(left.size());
    for (std::size_t i = 0; i < left.size(); ++i) {
        left_features[i] = feature(rep, left[i], metric);
        grid[cell_key(cell_of(left_features[i], cell))].push_back(static_cast<std::uint32_t>(i));
        if (metric == Metric::SectorTauOnly) {
            grid[cell_key(cell_of(-left_features[i], cell))].push_back(static_cast<std::uint32_t>(i));
        }
    }
    return run_partitioned(right_inv.size(), workers, [&](std::size_t lo, std::size_t hi, Candidate &best,
                                                          std::size_t &scored) {
        std::vector<Generator> word;
        for (std::size_t r = lo; r < hi; ++r) {
            const HalfEntry &rh = right_inv[r];
            const auto base = cell_of(feature(rep, rh, metric), cell);
            const Eigen::Matrix2cd rh_adj = rh.u.adjoint();
            std::array<long, 4> c{};
            for (int code = 0; code < 81; ++code) {
                int rest = code;
                for (int k = 0; k < 4; ++k) {
                    c[k] = base[k] + (rest % 3) - 1;
                    rest /= 3;
                }
                auto it = grid.find(cell_key(c));
                if (it == grid.end()) continue;
                for (std::uint32_t li : it->second) {
                    const HalfEntry &lh = left[li];
                    if (lh.end != rh.end) continue;
                    // Left ends with g and the right half begins with g^-1.
                    if (lh.length > 0 && rh.length > 0 && lh.last() == rh.last()) continue;
                    ++scored;
                    const Eigen::Matrix2cd u = rh_adj * lh.u;
                    const double d = metric_distance(metric, score(u, rep.sector_vacuum(lh.exponent - rh.exponent)));
                    const long long key = distance_key(d);
                    if (best.valid() && key > best.key) continue;
                    word.clear();
                    lh.append_to(word);
                    rh.append_inverse_to(word);
                    offer(best, word, d, 3);
                }
            }
        }
    });
}

void check_warp(const BraidWord &w, int warp_start) {
    if (w.strands() != 3) {
        throw std::invalid_argument("an injection weave lives on 3 strands");
    }
    if (!is_weave(w, warp_start)) {
        throw std::invalid_argument("word " + w.to_string() + " is not a weave with warp starting at " +
                                    std::to_string(warp_start));
    }
}

}  // namespace

InjectionDistances injection_distances(const BraidWord &w, const ModelConstants &m) {
    if (w.strands() != 3) {
        throw std::invalid_argument("injection distances are defined for 3-strand words");
    }
    const SectorBlocks blocks = full_rep_unitary(3, w, m);
    const Eigen::Matrix2cd u = blocks.tau;
    const Complex u1 = blocks.vacuum(0, 0);
    const SectorScore s = score(u, u1);
    return {s.tau, s.full, embedded_distance(u, u1)};
}

double full_sector_distance(const BraidWord &w, const ModelConstants &m) {
    if (w.strands() != 3) {
        throw std::invalid_argument("full-sector distance is defined for 3-strand words");
    }
    const SectorBlocks blocks = full_rep_unitary(3, w, m);
    Unitary full = Unitary::Zero(3, 3);
    full.block(0, 0, 2, 2) = blocks.tau;
    full(2, 2) = blocks.vacuum(0, 0);
    return distance_to_identity(full);
}

InjectionWeave InjectionWeave::from_word(BraidWord word, int warp_start, Metric metric, std::string generator,
                                         const ModelConstants &m) {
    check_warp(word, warp_start);
    InjectionWeave inj;
    const InjectionDistances d = injection_distances(word, m);
    inj.warp_start = warp_start;
    inj.warp_end = warp_trace(word, warp_start).final_position();
    inj.word = std::move(word);
    inj.distance_2d = d.sector_tau;
    inj.distance_full = d.full;
    inj.distance_embed = d.embedded;
    inj.metric_id = to_string(metric);
    inj.generator = std::move(generator);
    return inj;
}

void SearchConfig::validate() const {
    if (max_length < 1) throw std::invalid_argument("max_length must be at least 1");
    if (!(target_distance > 0.0)) throw std::invalid_argument("target_distance must be positive");
    if (!(match_radius > 0.0)) throw std::invalid_argument("match_radius must be positive");
    if (exhaustive_length < 0) throw std::invalid_argument("exhaustive_length must be non-negative");
    if (max_length > 2 * static_cast<int>(kMaxHalf)) {
        throw std::invalid_argument("max_length is limited to " + std::to_string(2 * kMaxHalf));
    }
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
}

SearchResult brute_force_injection(const SearchConfig &cfg, const ModelConstants &m) {
    cfg.validate();
    const ThreeStrandRep rep(m);
    SearchResult result;

    if (cfg.max_length < 2) {
        // The warp needs two crossings to reach position 3; report the best single crossing.
        Candidate best;
        for (int sign : {-1, 1}) {
            const Generator g{1, sign};
            const Eigen::Matrix2cd u = rep.generator(g);
            offer(best, {g}, metric_distance(cfg.metric, score(u, rep.sector_vacuum(sign))), 2);
            ++result.candidates_scored;
        }
        result.best = InjectionWeave::from_word(BraidWord(3, best.word), 1, cfg.metric, "brute_force", m);
        result.best.converged = false;
        result.found_injection = false;
        result.converged = false;
        return result;
    }

    const int exhaustive = std::min(cfg.exhaustive_length, cfg.max_length);
    Partitioned total = exhaustive_search(rep, cfg.metric, std::max(exhaustive, 2), cfg.workers);

    std::map<std::pair<int, int>, std::vector<HalfEntry>> tables;
    auto table = [&](int start, int length) -> const std::vector<HalfEntry> & {
        auto key = std::make_pair(start, length);
        auto it = tables.find(key);
        if (it == tables.end()) it = tables.emplace(key, enumerate_half(rep, start, length, cfg.max_half_entries)).first;
        return it->second;
    };
    for (int len = std::max(exhaustive, 2) + 1; len <= cfg.max_length; ++len) {
        if (len % 2 != 0) continue;  // 1 -> 3 needs an even number of crossings
        const int half = len / 2;
        const auto &left = table(1, half);
        const auto &right_inv = table(3, half);
        if (left.empty() || right_inv.empty()) break;  // table cap reached
        // Every pair closer than the radius is examined, so the result is exact
        // once the best so far lies within it; otherwise widen and repeat.
        for (double radius = cfg.match_radius;; radius *= 2.0) {
            merge(total, meet_in_middle(rep, cfg.metric, left, right_inv, radius, cfg.workers));
            if (total.best.valid() && total.best.distance <= radius) break;
            if (radius >= 2.0) break;  // every distance is below sqrt(2)
        }
    }

    result.candidates_scored = total.scored;
    result.found_injection = total.best.valid();
    if (!result.found_injection) {
        throw std::logic_error("no injection candidate despite max_length >= 2");
    }
    result.best = InjectionWeave::from_word(BraidWord(3, total.best.word), 1, cfg.metric, "brute_force", m);
    result.converged = result.best.distance(cfg.metric) <= cfg.target_distance;
    result.best.converged = result.converged;
    return result;
}

InjectionWeave invert_injection(const InjectionWeave &inj, const ModelConstants &m) {
    InjectionWeave out = InjectionWeave::from_word(inverse(inj.word), inj.warp_end, metric_from_string(inj.metric_id),
                                                   inj.generator, m);
    out.converged = inj.converged;
    return out;
}

RefineResult refine_injection(const InjectionWeave &base, double target, const sk::Net &net, const RefineConfig &cfg) {
    if (!(target > 0.0)) {
        throw std::invalid_argument("refinement target must be positive");
    }
    RefineResult result;
    if (base.distance_full <= target) {
        result.injection = base;
        result.converged = true;
        return result;
    }
    if (base.distance_full > kRefineBasin) {
        throw std::invalid_argument("injection distance_full " + std::to_string(base.distance_full) +
                                    " lies outside the refinement basin " + std::to_string(kRefineBasin));
    }
    if (net.base_position() != base.warp_end) {
        throw std::invalid_argument("refinement net is based at position " + std::to_string(net.base_position()) +
                                    " but the injection ends at " + std::to_string(base.warp_end));
    }
    const ThreeStrandRep &rep = net.rep();
    const int e = base.word.exponent_sum();
    if (e % ThreeStrandRep::kPhasePeriod != 0) {
        throw std::invalid_argument("injection exponent sum is not a multiple of 10; no pureweave correction exists");
    }
    // The correction C must satisfy rel(C) rel(base) = I.
    const sk::Su2 goal = rep.relative(rep.sector_tau(base.word.gens()), e).adjoint();

    InjectionWeave best = base;
    double previous = std::numeric_limits<double>::infinity();
    for (int depth = 0; depth <= cfg.max_depth; ++depth) {
        const sk::Approximation fix = sk::solovay_kitaev(net, goal, depth, cfg.frames);
        std::vector<Generator> gens(base.word.gens().begin(), base.word.gens().end());
        gens.insert(gens.end(), fix.word.begin(), fix.word.end());
        InjectionWeave cand = InjectionWeave::from_word(free_reduce(BraidWord(3, std::move(gens))), base.warp_start,
                                                        Metric::TwoSectorFull, "sk", net.constants());
        result.level_errors.push_back(cand.distance_full);
        result.level_lengths.push_back(cand.length());
        if (cand.distance_full < best.distance_full) best = cand;
        if (cand.distance_full <= target) {
            result.injection = std::move(cand);
            result.injection.converged = true;
            result.converged = true;
            return result;
        }
        if (cand.distance_full >= previous) break;  // no longer contracting
        previous = cand.distance_full;
    }
    result.injection = best;
    result.injection.converged = false;
    return result;
}

ScalingFit fit_scaling(std::vector<ScalingFit::Sample> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("scaling fit needs at least 2 samples");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &s : samples) {
        if (!(s.epsilon > 0.0) || s.epsilon >= 1.0 || !(s.length > 0.0)) {
            throw std::invalid_argument("scaling samples need 0 < eps < 1 and positive length");
        }
        x.push_back(std::log(std::abs(std::log(s.epsilon))));
        y.push_back(std::log(s.length));
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i] / n;
        my += y[i] / n;
    }
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 1e-12) {
        throw std::invalid_argument("scaling fit needs samples with distinct eps");
    }
    ScalingFit fit;
    fit.samples = std::move(samples);
    fit.alpha = sxy / sxx;
    const double log_c = my - fit.alpha * mx;
    fit.C = std::exp(log_c);
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (log_c + fit.alpha * x[i]);
        fit.residuals.push_back(r);
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

ScalingFit sk_sweep(const InjectionWeave &base, const std::vector<double> &targets, const sk::Net &net,
                    const RefineConfig &cfg) {
    std::vector<ScalingFit::Sample> samples;
    std::vector<BraidWord> seen;
    for (double t : targets) {
        const RefineResult r = refine_injection(base, t, net, cfg);
        if (std::find(seen.begin(), seen.end(), r.injection.word) != seen.end()) continue;
        seen.push_back(r.injection.word);
        samples.push_back({r.injection.distance_full, static_cast<double>(r.injection.length())});
    }
    return fit_scaling(std::move(samples));
}

}  // namespace weave
