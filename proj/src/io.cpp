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

#include "weave/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "weave/sk.hpp"

namespace weave {

ParseError::ParseError(int line, int column, const std::string &what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
    std::string text;
    int line = 1;
    int column = 1;
};

// Splits into whitespace-separated tokens, dropping '#' comments, and keeps
// the line each token started on.
std::vector<Token> tokenize(const std::string &text) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    bool comment = false;
    Token cur;
    auto flush = [&] {
        if (!cur.text.empty()) out.push_back(cur);
        cur.text.clear();
    };
    for (char c : text) {
        if (c == '\n') {
            flush();
            comment = false;
            ++line;
            col = 1;
            continue;
        }
        if (!comment) {
            if (c == '#') {
                flush();
                comment = true;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                flush();
            } else {
                if (cur.text.empty()) {
                    cur.line = line;
                    cur.column = col;
                }
                cur.text.push_back(c);
            }
        }
        ++col;
    }
    flush();
    return out;
}

int parse_int(const Token &t, const std::string &text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    if (i == text.size()) throw ParseError(t.line, t.column, "expected an integer, got '" + text + "'");
    for (std::size_t k = i; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
            throw ParseError(t.line, t.column + static_cast<int>(k), "expected an integer, got '" + text + "'");
        }
    }
    if (text.size() - i > 9) throw ParseError(t.line, t.column, "integer '" + text + "' is out of range");
    return std::stoi(text);
}

// Reads `key: value` from tokens; the value may be glued to the colon.
bool header(const std::vector<Token> &toks, std::size_t &i, const std::string &key, int &value) {
    if (i >= toks.size()) return false;
    const Token &t = toks[i];
    const std::string lead = key + ":";
    if (t.text.rfind(lead, 0) != 0) return false;
    if (t.text.size() > lead.size()) {
        Token v{t.text.substr(lead.size()), t.line, t.column + static_cast<int>(lead.size())};
        value = parse_int(v, v.text);
        ++i;
        return true;
    }
    if (i + 1 >= toks.size() || toks[i + 1].line != t.line) {
        throw ParseError(t.line, t.column + static_cast<int>(lead.size()), "missing value for '" + key + "'");
    }
    value = parse_int(toks[i + 1], toks[i + 1].text);
    i += 2;
    return true;
}

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

}  // namespace

BraidFile parse_braid_file(const std::string &text) {
    const auto toks = tokenize(text);
    std::size_t i = 0;
    int n = 0;
    if (!header(toks, i, "strands", n)) {
        const int line = toks.empty() ? 1 : toks[0].line;
        const int col = toks.empty() ? 1 : toks[0].column;
        throw ParseError(line, col, "expected 'strands: <int>' header");
    }
    if (n < 2) throw ParseError(toks[0].line, toks[0].column, "strands must be at least 2");
    BraidFile out;
    int warp = 0;
    const std::size_t warp_at = i;
    if (header(toks, i, "warp", warp)) {
        if (warp < 1 || warp > n) {
            throw ParseError(toks[warp_at].line, toks[warp_at].column,
                             "warp must lie in 1.." + std::to_string(n));
        }
        out.warp = warp;
    }
    std::vector<Generator> gens;
    for (; i < toks.size(); ++i) {
        const int v = parse_int(toks[i], toks[i].text);
        if (v == 0 || std::abs(v) > n - 1) {
            throw ParseError(toks[i].line, toks[i].column,
                             "generator " + toks[i].text + " outside +-1..+-" + std::to_string(n - 1));
        }
        gens.push_back(Generator::from_signed(v));
    }
    out.word = BraidWord(n, std::move(gens));
    return out;
}

std::string format_braid_file(const BraidFile &file) {
    std::ostringstream os;
    os << "strands: " << file.word.strands() << '\n';
    if (file.warp) os << "warp: " << *file.warp << '\n';
    const auto v = file.word.to_signed();
    for (std::size_t k = 0; k < v.size(); ++k) {
        os << v[k] << ((k + 1) % 32 == 0 || k + 1 == v.size() ? '\n' : ' ');
    }
    return os.str();
}

BraidFile read_braid_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_braid_file(buf.str());
}

void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing " + path);
}

namespace {

std::string render_ascii(const BraidWord &w, const std::optional<int> &warp) {
    const int n = w.strands();
    const std::size_t len = w.length();
    std::vector<int> pos;  // warp position before each step and after the last
    if (warp) pos = warp_trace(w, *warp).positions;
    auto strand_char = [&](int row, std::size_t t) { return warp && pos[t] == row ? '=' : '-'; };

    const int label = static_cast<int>(std::to_string(n).size());
    // Rows top to bottom: position n, gap, position n-1, ..., position 1.
    std::vector<std::string> lines(2 * n - 1);
    for (int r = 0; r < 2 * n - 1; ++r) {
        if (r % 2 == 0) {
            const std::string num = std::to_string(n - r / 2);
            lines[r] = std::string(label - num.size(), ' ') + num + ' ';
        } else {
            lines[r] = std::string(label + 1, ' ');
        }
    }
    for (int k = 1; k <= n; ++k) lines[2 * (n - k)] += strand_char(k, 0);
    for (int r = 1; r < 2 * n - 1; r += 2) lines[r] += ' ';
    for (std::size_t t = 0; t < len; ++t) {
        const Generator g = w.gens()[t];
        for (int k = 1; k <= n; ++k) {
            std::string &line = lines[2 * (n - k)];
            if (k == g.index || k == g.index + 1) {
                line += ' ';
                line += strand_char(k, t + 1);
            } else {
                line += strand_char(k, t);
                line += strand_char(k, t + 1);
            }
        }
        for (int k = 1; k < n; ++k) {
            std::string &line = lines[2 * (n - k) - 1];
            line += k == g.index ? (g.sign > 0 ? '/' : '\\') : ' ';
            line += ' ';
        }
    }
    std::string out;
    for (auto &l : lines) {
        while (!l.empty() && l.back() == ' ') l.pop_back();
        out += l;
        out += '\n';
    }
    return out;
}

std::string render_svg(const BraidWord &w, const RenderSpec &spec) {
    const int n = w.strands();
    const std::size_t len = w.length();
    const double margin = 20.0;
    const double width = 2 * margin + std::max<std::size_t>(len, 1) * spec.step;
    const double height = 2 * margin + (n - 1) * spec.spacing;
    auto y = [&](int p) { return margin + (n - p) * spec.spacing; };
    auto x = [&](std::size_t t) { return margin + t * spec.step; };

    // strand_at[p] = initial position of the strand currently at p.
    std::vector<int> strand_at(n + 1);
    for (int p = 1; p <= n; ++p) strand_at[p] = p;
    auto cls = [&](int strand) { return spec.warp && strand == *spec.warp ? "warp" : "weft"; };
    auto line = [&](std::ostringstream &os, const char *c, std::size_t t, int p0, int p1) {
        os << "<line class=\"" << c << "\" x1=\"" << fmt("%.2f", x(t)) << "\" y1=\"" << fmt("%.2f", y(p0))
           << "\" x2=\"" << fmt("%.2f", x(t + 1)) << "\" y2=\"" << fmt("%.2f", y(p1)) << "\"/>\n";
    };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt("%.2f", width)
       << "\" height=\"" << fmt("%.2f", height) << "\" viewBox=\"0 0 " << fmt("%.2f", width) << ' '
       << fmt("%.2f", height) << "\" data-strands=\"" << n << "\" data-crossings=\"" << len << '"';
    if (spec.warp) {
        os << " data-warp-positions=\"";
        const auto tr = warp_trace(w, *spec.warp);
        for (std::size_t k = 0; k < tr.positions.size(); ++k) os << (k ? " " : "") << tr.positions[k];
        os << '"';
    }
    os << ">\n";
    os << "<style>line{fill:none;stroke-linecap:round;stroke-width:2}.weft{stroke:#d62728}"
          ".warp{stroke:#1f4fd8;stroke-width:3}.halo{stroke:#ffffff;stroke-width:8}</style>\n";
    os << "<rect width=\"" << fmt("%.2f", width) << "\" height=\"" << fmt("%.2f", height) << "\" fill=\"#ffffff\"/>\n";
    if (len == 0) {
        for (int p = 1; p <= n; ++p) line(os, cls(p), 0, p, p);
    }
    for (std::size_t t = 0; t < len; ++t) {
        const Generator g = w.gens()[t];
        const int s = g.index;
        for (int p = 1; p <= n; ++p) {
            if (p != s && p != s + 1) line(os, cls(strand_at[p]), t, p, p);
        }
        const int up = strand_at[s];
        const int down = strand_at[s + 1];
        const int over = g.sign > 0 ? up : down;
        const int under = g.sign > 0 ? down : up;
        auto from = [&](int strand) { return strand == up ? s : s + 1; };
        auto to = [&](int strand) { return strand == up ? s + 1 : s; };
        line(os, cls(under), t, from(under), to(under));
        line(os, "halo", t, from(over), to(over));
        line(os, cls(over), t, from(over), to(over));
        std::swap(strand_at[s], strand_at[s + 1]);
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string render(const BraidWord &w, const RenderSpec &spec) {
    if (spec.warp && (*spec.warp < 1 || *spec.warp > w.strands())) {
        throw std::invalid_argument("warp must lie in 1.." + std::to_string(w.strands()));
    }
    return spec.format == RenderFormat::Ascii ? render_ascii(w, spec.warp) : render_svg(w, spec);
}

std::string ModelCheckReport::to_text() const {
    std::ostringstream os;
    for (const auto *rep : {&model, &braid}) {
        for (const auto &c : rep->checks) {
            os << (c.pass() ? "PASS " : "FAIL ") << c.name << " residual=" << fmt("%.3e", c.residual)
               << " tolerance=" << fmt("%.1e", c.tolerance) << '\n';
        }
    }
    os << (ok() ? "model check passed\n" : "model check FAILED\n");
    return os.str();
}

ModelCheckReport model_check(const ModelCheckOptions &opt) {
    ModelConstants m = ModelConstants::fibonacci(opt.chirality);
    if (opt.inject_fault) m.F(0, 1) = -m.F(0, 1);
    ModelCheckReport rep;
    rep.model = validate_model(m);

    double unitarity = 0.0;
    double yang_baxter = 0.0;
    double far = 0.0;
    for (int n = 2; n <= opt.max_n; ++n) {
        for (Charge c : {Charge::Vacuum, Charge::Tau}) {
            FusionBasis basis = enumerate_basis(n, c);
            if (basis.dim() == 0) continue;
            const Representation r(std::move(basis), m);
            for (int i = 1; i < n; ++i) {
                unitarity = std::max(unitarity, unitarity_residual(r.generator({i, 1})));
            }
            for (int i = 1; i + 1 < n; ++i) {
                const Unitary &a = r.generator({i, 1});
                const Unitary &b = r.generator({i + 1, 1});
                yang_baxter = std::max(yang_baxter, (a * b * a - b * a * b).cwiseAbs().maxCoeff());
            }
            for (int i = 1; i < n; ++i) {
                for (int j = i + 2; j < n; ++j) {
                    const Unitary &a = r.generator({i, 1});
                    const Unitary &b = r.generator({j, 1});
                    far = std::max(far, (a * b - b * a).cwiseAbs().maxCoeff());
                }
            }
        }
    }
    rep.braid.checks.push_back({"generator unitarity", unitarity, 1e-12});
    rep.braid.checks.push_back({"yang-baxter", yang_baxter, 1e-10});
    rep.braid.checks.push_back({"far commutation", far, 1e-10});
    return rep;
}

InjectOutcome inject_into_library(const SearchConfig &cfg, InjectionLibrary &lib, const RefineConfig &refine) {
    const ModelConstants m = ModelConstants::fibonacci(lib.chirality);
    InjectOutcome out;
    out.search = brute_force_injection(cfg, m);
    if (!out.search.found_injection) return out;
    auto store = [&](const InjectionWeave &rec) {
        for (const auto &r : lib.records) {
            if (r.word == rec.word && r.warp_start == rec.warp_start) return;
        }
        lib.add(rec);
        out.added.push_back(rec);
    };
    store(out.search.best);
    out.converged = out.search.converged;
    const InjectionWeave &best = out.search.best;
    if (!out.converged && cfg.metric == Metric::TwoSectorFull && best.distance_full <= kRefineBasin &&
        best.word.exponent_sum() % ThreeStrandRep::kPhasePeriod == 0) {
        const sk::Net net(3, lib.sk_net_length, m);
        RefineConfig rc = refine;
        rc.net_length = lib.sk_net_length;
        out.refined = refine_injection(best, cfg.target_distance, net, rc);
        store(out.refined->injection);
        out.converged = out.refined->converged;
    }
    return out;
}

BraidWord random_braid(int n, int p, std::uint64_t seed) {
    if (n < 2 || p < 0) throw std::invalid_argument("random braid needs n >= 2 and p >= 0");
    std::mt19937_64 rng(seed);
    std::vector<Generator> gens;
    for (int k = 0; k < p; ++k) {
        const int s = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
        gens.push_back({s, (rng() & 1U) ? 1 : -1});
    }
    return BraidWord(n, std::move(gens));
}

std::string BenchReport::to_table() const {
    std::ostringstream os;
    os << "    n     p          eps  trial     length  injections     measured        bound  status\n";
    char buf[256];
    for (const auto &r : rows) {
        std::snprintf(buf, sizeof buf, "%5d %5d %12.4e %6d %10zu %11zu %12.4e %12.4e  ", r.n, r.p, r.epsilon, r.trial,
                      r.length, r.injections, r.measured, r.bound);
        os << buf << r.status << '\n';
    }
    if (sweep) {
        os << "sweep: L = C |log eps|^alpha  C=" << fmt("%.6g", sweep->C) << " alpha=" << fmt("%.6g", sweep->alpha)
           << " rms=" << fmt("%.3g", sweep->rms_residual) << " points=" << sweep->samples.size() << '\n';
    }
    if (fit) {
        os << "fit: L/(n p) = C |log(eps/(n p))|^alpha  C=" << fmt("%.6g", fit->fit.C)
           << " alpha=" << fmt("%.6g", fit->fit.alpha) << " rms=" << fmt("%.3g", fit->fit.rms_residual)
           << " C_envelope=" << fmt("%.6g", fit->C_envelope) << '\n';
        os << "bound: L <= C_sweep n p |log(eps/(n p))|^alpha_sweep  worst_ratio=" << fmt("%.4g", fit->worst_ratio)
           << " all_within=" << (fit->all_within ? "yes" : "no") << '\n';
    } else {
        os << "fit: " << fit_error << '\n';
    }
    return os.str();
}

BenchReport bench(const BenchConfig &cfg) {
    if (cfg.n < 3 || cfg.p < 1 || cfg.trials < 1 || cfg.epsilons.empty()) {
        throw std::invalid_argument("bench needs n >= 3, p >= 1, trials >= 1 and at least one eps");
    }
    for (double e : cfg.epsilons) {
        if (!(e > 0.0)) throw std::invalid_argument("bench eps values must be positive");
    }
    std::vector<BraidWord> braids;
    std::mt19937_64 seeder(cfg.seed);
    for (int t = 0; t < cfg.trials; ++t) braids.push_back(random_braid(cfg.n, cfg.p, seeder()));

    const FusionBasis basis = enumerate_basis(cfg.n, Charge::Tau);
    const ModelConstants m = ModelConstants::fibonacci(cfg.library.chirality);
    std::shared_ptr<const sk::Net> net = cfg.net;
    if (!net || net->base_position() != 3) net = std::make_shared<const sk::Net>(3, cfg.library.sk_net_length, m);
    BenchReport rep;
    std::vector<LengthSample> samples;
    for (double eps : cfg.epsilons) {
        for (int t = 0; t < cfg.trials; ++t) {
            BenchRow row{cfg.n, cfg.p, eps, t, 0, 0, 0.0, 0.0, ""};
            try {
                CompileRequest req;
                req.braid = braids[t];
                req.epsilon = eps;
                req.library = cfg.library;
                req.net = net;
                const CompiledWeave cw = compile(req);
                const auto v = verify_compilation(req.braid, cw.word, basis, eps, cw.budget.guaranteed_bound, m);
                row.length = cw.word.length();
                row.injections = cw.budget.injection_count;
                row.measured = v.distance;
                row.bound = cw.budget.guaranteed_bound;
                row.status = v.pass && v.within_bound ? "ok" : "fail";
                samples.push_back({cfg.n, cfg.p, eps, cw.word.length()});
            } catch (const std::exception &e) {
                row.status = std::string("error: ") + e.what();
            }
            rep.rows.push_back(std::move(row));
        }
    }
    try {
        const std::optional<InjectionWeave> base = refinement_base(cfg.library);
        if (!base) throw std::invalid_argument("the library has no record within the refinement basin");
        rep.sweep = sk_sweep(*base, cfg.sweep_targets, *net);
        rep.fit = length_bound_report(samples, *rep.sweep);
    } catch (const std::exception &e) {
        rep.fit_error = std::string("not fitted: ") + e.what();
    }
    return rep;
}

}  // namespace weave
