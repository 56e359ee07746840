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

#include "weave/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "weave/sk.hpp"

namespace weave {

namespace {

int parity(int s) { return ((s % 2) + 2) % 2; }

int odd_slot(int s) { return s - parity(s) + 1; }
int even_slot(int s) { return s + parity(s); }

void append(std::vector<Generator> &out, const BraidWord &w) {
    out.insert(out.end(), w.gens().begin(), w.gens().end());
}

}  // namespace

WarpMove parity_target(int i, int s_prev, int s_i) {
    if (i < 1) throw std::invalid_argument("step index starts at 1");
    if (i == 1 && s_prev != 0) throw std::invalid_argument("s(0) is 0 by definition");
    if (i % 2 == 1) return {odd_slot(s_prev), odd_slot(s_i)};
    return {even_slot(s_prev), even_slot(s_i)};
}

BraidWord multiple_injection(int from, int to, const InjectionWeave &inj, int n) {
    if (n < 3) throw std::invalid_argument("injections need at least 3 strands");
    if (from < 1 || from > n || to < 1 || to > n) {
        throw std::invalid_argument("injection endpoints must lie in 1.." + std::to_string(n));
    }
    if (parity(to - from) != 0) {
        throw std::invalid_argument("injection endpoints " + std::to_string(from) + " and " + std::to_string(to) +
                                    " differ in parity");
    }
    if (inj.word.strands() != 3 || inj.warp_start != 1 || inj.warp_end != 3) {
        throw std::invalid_argument("multiple_injection expects a 3-strand injection running 1 -> 3");
    }
    if (to < from) return inverse(multiple_injection(to, from, inj, n));
    std::vector<Generator> gens;
    for (int a = from; a < to; a += 2) append(gens, embed(inj.word, n, a - 1));
    return BraidWord(n, std::move(gens));
}

std::size_t CompilePlan::injection_count() const {
    std::size_t k = 0;
    for (const auto &seg : segments) {
        if (const auto *m = std::get_if<MultipleInjection>(&seg)) k += static_cast<std::size_t>(std::abs(m->q));
    }
    return k;
}

std::string CompilePlan::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto &seg : segments) {
        if (!first) os << ' ';
        first = false;
        if (const auto *m = std::get_if<MultipleInjection>(&seg)) {
            os << 'M' << m->from << ';' << m->to;
        } else {
            const auto &g = std::get<OriginalGenerator>(seg);
            os << 't' << g.s << (g.r < 0 ? "^-1" : "");
        }
    }
    return os.str();
}

BraidWord flatten_plan(const CompilePlan &plan, const InjectionWeave &inj, int n) {
    std::vector<Generator> gens;
    for (const auto &seg : plan.segments) {
        if (const auto *m = std::get_if<MultipleInjection>(&seg)) {
            if (m->q != 0 && !inj.word.empty()) append(gens, multiple_injection(m->from, m->to, inj, n));
        } else {
            const auto &g = std::get<OriginalGenerator>(seg);
            gens.push_back({g.s, g.r});
        }
    }
    return BraidWord(n, std::move(gens));
}

namespace {

std::vector<InjectionWeave> upward_records(const InjectionLibrary &lib, const ModelConstants &m) {
    std::vector<InjectionWeave> pool;
    for (const auto &r : lib.records) {
        if (r.warp_start == 1 && r.warp_end == 3) {
            pool.push_back(r);
        } else if (r.warp_start == 3 && r.warp_end == 1) {
            pool.push_back(invert_injection(r, m));
        }
    }
    return pool;
}

std::optional<InjectionWeave> basin_record(const std::vector<InjectionWeave> &pool) {
    const InjectionWeave *base = nullptr;
    for (const auto &r : pool) {
        if (r.distance_full > kRefineBasin) continue;
        if (r.word.exponent_sum() % ThreeStrandRep::kPhasePeriod != 0) continue;
        if (base == nullptr || r.distance_full < base->distance_full) base = &r;
    }
    if (base == nullptr) return std::nullopt;
    return *base;
}

}  // namespace

std::optional<InjectionWeave> refinement_base(const InjectionLibrary &lib) {
    return basin_record(upward_records(lib, ModelConstants::fibonacci(lib.chirality)));
}

InjectionWeave select_injection(const InjectionLibrary &lib, double delta, const RefineConfig &refine,
                                std::shared_ptr<const sk::Net> &net) {
    const ModelConstants m = ModelConstants::fibonacci(lib.chirality);
    const std::vector<InjectionWeave> pool = upward_records(lib, m);
    const InjectionWeave *pick = nullptr;
    for (const auto &r : pool) {
        if (r.distance_embed > delta) continue;
        if (pick == nullptr || r.length() < pick->length() ||
            (r.length() == pick->length() && r.distance_embed < pick->distance_embed)) {
            pick = &r;
        }
    }
    if (pick != nullptr) return *pick;

    const std::optional<InjectionWeave> base = basin_record(pool);
    std::ostringstream need;
    need.precision(6);
    need << "no injection with embedded distance <= " << delta << " (required delta = eps/(n p))";
    if (!base) {
        throw CompileError(need.str() + "; the library has no record within the refinement basin");
    }
    if (!net || net->base_position() != 3) {
        net = std::make_shared<const sk::Net>(3, lib.sk_net_length, m);
    }
    // Refinement scores distance_full; the embedded distance can exceed it by
    // up to sqrt(3/2), so aim below delta and tighten once if needed.
    double target = delta / std::sqrt(1.5);
    for (int attempt = 0; attempt < 4; ++attempt) {
        RefineResult rr = refine_injection(*base, target, *net, refine);
        if (rr.converged && rr.injection.distance_embed <= delta) return rr.injection;
        if (!rr.converged) break;
        target *= 0.5;
    }
    throw CompileError(need.str() + "; refinement did not reach it");
}

CompiledWeave compile(const CompileRequest &req) {
    if (!(req.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const int n = req.braid.strands();
    if (n < 2) throw std::invalid_argument("compile needs at least 2 strands");
    const int p = static_cast<int>(req.braid.length());

    CompiledWeave out;
    out.budget.p = p;
    out.budget.n = n;
    out.budget.epsilon = req.epsilon;
    out.length_stats.input_length = req.braid.length();

    if (n == 2) {
        // Every 2-strand braid already is a weave.
        out.word = req.braid;
        out.length_stats.output_length = req.braid.length();
        out.length_stats.ratio = p > 0 ? 1.0 : 0.0;
        return out;
    }

    const double delta = req.epsilon / (static_cast<double>(n) * std::max(p, 1));
    out.plan.delta = delta;
    out.budget.delta = delta;

    int warp = 1;
    int s_prev = 0;
    for (int i = 1; i <= p; ++i) {
        const Generator g = req.braid.gens()[i - 1];
        const WarpMove mv = parity_target(i, s_prev, g.index);
        if (mv.from != warp) {
            throw std::logic_error("warp bookkeeping drifted at step " + std::to_string(i));
        }
        out.plan.segments.push_back(MultipleInjection{mv.from, mv.to, (mv.to - mv.from) / 2});
        out.plan.segments.push_back(OriginalGenerator{g.index, g.sign});
        warp = mv.to == g.index ? g.index + 1 : g.index;
        s_prev = g.index;
    }
    if (req.return_home && warp != 1) {
        if (parity(warp) == 0) {
            throw CompileError("cannot return the warp home: it ends at even position " + std::to_string(warp) +
                               " and injections move it by 2");
        }
        out.plan.segments.push_back(MultipleInjection{warp, 1, (1 - warp) / 2});
    }

    const std::size_t k = out.plan.injection_count();
    InjectionWeave inj;
    if (k > 0) {
        std::shared_ptr<const sk::Net> net = req.net;
        inj = select_injection(req.library, delta, req.refine, net);
        out.injection = inj;
    }
    out.word = flatten_plan(out.plan, inj, n);
    out.budget.injection_count = k;
    out.budget.guaranteed_bound = static_cast<double>(k) * delta;
    out.budget.achieved_bound = k > 0 ? static_cast<double>(k) * inj.distance_embed : 0.0;
    out.length_stats.output_length = out.word.length();
    out.length_stats.ratio = p > 0 ? static_cast<double>(out.word.length()) / p : 0.0;
    return out;
}

VerificationReport verify_compilation(const BraidWord &braid, const BraidWord &weave, const FusionBasis &basis,
                                      double epsilon, double guaranteed_bound, const ModelConstants &m) {
    if (braid.strands() != weave.strands()) {
        throw std::invalid_argument("braid and weave have different strand counts");
    }
    if (basis.n != braid.strands()) {
        throw std::invalid_argument("basis is for " + std::to_string(basis.n) + " anyons, braid has " +
                                    std::to_string(braid.strands()) + " strands");
    }
    const Representation rep(basis, m);
    VerificationReport r;
    r.distance = projective_distance(rep(braid), rep(weave));
    r.guaranteed_bound = guaranteed_bound;
    r.epsilon = epsilon;
    r.pass = r.distance <= epsilon;
    r.within_bound = r.distance <= guaranteed_bound * (1.0 + 1e-9) + 1e-12;
    return r;
}

LengthBoundReport length_bound_report(const std::vector<LengthSample> &samples, const ScalingFit &reference) {
    if (samples.size() < 5) throw std::invalid_argument("length bound report needs at least 5 samples");
    double lo = samples.front().epsilon;
    double hi = lo;
    for (const auto &s : samples) {
        if (s.n < 1 || s.p < 1 || !(s.epsilon > 0.0) || s.length == 0) {
            throw std::invalid_argument("length samples need n, p, length >= 1 and eps > 0");
        }
        lo = std::min(lo, s.epsilon);
        hi = std::max(hi, s.epsilon);
    }
    if (hi < 10.0 * lo) throw std::invalid_argument("length samples must span a decade in eps");

    std::vector<ScalingFit::Sample> fs;
    for (const auto &s : samples) {
        const double np = static_cast<double>(s.n) * s.p;
        fs.push_back({s.epsilon / np, static_cast<double>(s.length) / np});
    }
    LengthBoundReport rep;
    rep.fit = fit_scaling(fs);
    for (const auto &s : rep.fit.samples) {
        rep.C_envelope = std::max(rep.C_envelope, s.length / std::pow(std::abs(std::log(s.epsilon)), rep.fit.alpha));
    }
    rep.reference = reference;
    for (const auto &s : rep.fit.samples) {
        const double bound = reference.C * std::pow(std::abs(std::log(s.epsilon)), reference.alpha);
        rep.worst_ratio = std::max(rep.worst_ratio, s.length / bound);
    }
    rep.all_within = rep.worst_ratio <= 1.0;
    return rep;
}

}  // namespace weave
