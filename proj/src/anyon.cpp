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

#include "weave/anyon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weave {

namespace {

constexpr Charge kCharges[] = {Charge::Vacuum, Charge::Tau};
constexpr double kModelTolerance = 1e-12;

int idx(Charge c) { return static_cast<int>(c); }

std::uint32_t path_key(const FusionPath &p) {
    std::uint32_t key = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == Charge::Tau) key |= 1u << k;
    }
    return key;
}

}  // namespace

std::string to_string(Charge c) { return c == Charge::Tau ? "tau" : "1"; }

std::string to_string(Chirality c) { return c == Chirality::Plus ? "plus" : "minus"; }

Charge charge_from_string(const std::string &s) {
    if (s == "tau" || s == "t") return Charge::Tau;
    if (s == "1" || s == "vacuum") return Charge::Vacuum;
    throw std::invalid_argument("unknown charge '" + s + "' (expected 1 or tau)");
}

Chirality chirality_from_string(const std::string &s) {
    if (s == "plus") return Chirality::Plus;
    if (s == "minus") return Chirality::Minus;
    throw std::invalid_argument("unknown chirality '" + s + "' (expected plus or minus)");
}

bool fuses_to(Charge a, Charge b, Charge c) {
    if (a == Charge::Vacuum) return b == c;
    if (b == Charge::Vacuum) return a == c;
    return true;  // tau x tau = 1 + tau
}

ModelConstants ModelConstants::fibonacci(Chirality chirality) {
    ModelConstants m;
    m.phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double a = 1.0 / m.phi;
    const double b = 1.0 / std::sqrt(m.phi);
    m.F << a, b, b, -a;
    const double pi = std::numbers::pi;
    m.r_vacuum = std::polar(1.0, 4.0 * pi / 5.0);
    m.r_tau = std::polar(1.0, -3.0 * pi / 5.0);
    if (chirality == Chirality::Minus) {
        m.r_vacuum = std::conj(m.r_vacuum);
        m.r_tau = std::conj(m.r_tau);
    }
    m.chirality = chirality;
    return m;
}

Complex f_symbol(const ModelConstants &m, Charge a, Charge b, Charge c, Charge d, Charge e, Charge f) {
    if (!fuses_to(a, b, e) || !fuses_to(e, c, d) || !fuses_to(b, c, f) || !fuses_to(a, f, d)) {
        return 0.0;
    }
    if (a == Charge::Tau && b == Charge::Tau && c == Charge::Tau && d == Charge::Tau) {
        return m.F(idx(e), idx(f));
    }
    return 1.0;
}

Complex r_symbol(const ModelConstants &m, Charge a, Charge b, Charge c) {
    if (!fuses_to(a, b, c)) return 0.0;
    if (a == Charge::Tau && b == Charge::Tau) {
        return c == Charge::Vacuum ? m.r_vacuum : m.r_tau;
    }
    return 1.0;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass(); });
}

double ValidationReport::residual(const std::string &name) const {
    for (const auto &c : checks) {
        if (c.name == name) return c.residual;
    }
    throw std::out_of_range("no check named " + name);
}

ValidationReport validate_model(const ModelConstants &m) {
    ValidationReport report;
    const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
    report.checks.push_back({"F unitary", (m.F.adjoint() * m.F - I).cwiseAbs().maxCoeff(), kModelTolerance});
    report.checks.push_back({"F involution", (m.F * m.F - I).cwiseAbs().maxCoeff(), kModelTolerance});
    const double phi_residual = std::abs(m.phi * m.phi - m.phi - 1.0);
    report.checks.push_back({"golden ratio", phi_residual, kModelTolerance});
    const double r_unit = std::max(std::abs(std::abs(m.r_vacuum) - 1.0), std::abs(std::abs(m.r_tau) - 1.0));
    report.checks.push_back({"R unimodular", r_unit, kModelTolerance});

    auto F = [&](Charge a, Charge b, Charge c, Charge d, Charge e, Charge f) { return f_symbol(m, a, b, c, d, e, f); };
    auto R = [&](Charge a, Charge b, Charge c) { return r_symbol(m, a, b, c); };

    // [F^{fcd}_e]_{gl} [F^{abl}_e]_{fk} = sum_h [F^{abc}_g]_{fh} [F^{ahd}_e]_{gk} [F^{bcd}_k]_{hl}
    double pentagon = 0.0;
    for (Charge a : kCharges)
        for (Charge b : kCharges)
            for (Charge c : kCharges)
                for (Charge d : kCharges)
                    for (Charge e : kCharges)
                        for (Charge f : kCharges)
                            for (Charge g : kCharges)
                                for (Charge k : kCharges)
                                    for (Charge l : kCharges) {
                                        const Complex lhs = F(f, c, d, e, g, l) * F(a, b, l, e, f, k);
                                        Complex rhs = 0.0;
                                        for (Charge h : kCharges) {
                                            rhs += F(a, b, c, g, f, h) * F(a, h, d, e, g, k) * F(b, c, d, k, h, l);
                                        }
                                        pentagon = std::max(pentagon, std::abs(lhs - rhs));
                                    }
    report.checks.push_back({"pentagon", pentagon, kModelTolerance});

    // R^{ca}_e [F^{acb}_d]_{eg} R^{cb}_g = sum_f [F^{cab}_d]_{ef} R^{cf}_d [F^{abc}_d]_{fg}
    // and the same with every R replaced by the inverse of its transpose.
    double hexagon = 0.0;
    double hexagon_inverse = 0.0;
    auto inv = [](Complex z) { return z == 0.0 ? Complex(0.0) : 1.0 / z; };
    for (Charge a : kCharges)
        for (Charge b : kCharges)
            for (Charge c : kCharges)
                for (Charge d : kCharges)
                    for (Charge e : kCharges)
                        for (Charge g : kCharges) {
                            const Complex lhs = R(c, a, e) * F(a, c, b, d, e, g) * R(c, b, g);
                            const Complex lhs_inv = inv(R(a, c, e)) * F(a, c, b, d, e, g) * inv(R(b, c, g));
                            Complex rhs = 0.0;
                            Complex rhs_inv = 0.0;
                            for (Charge f : kCharges) {
                                rhs += F(c, a, b, d, e, f) * R(c, f, d) * F(a, b, c, d, f, g);
                                rhs_inv += F(c, a, b, d, e, f) * inv(R(f, c, d)) * F(a, b, c, d, f, g);
                            }
                            hexagon = std::max(hexagon, std::abs(lhs - rhs));
                            hexagon_inverse = std::max(hexagon_inverse, std::abs(lhs_inv - rhs_inv));
                        }
    report.checks.push_back({"hexagon", hexagon, kModelTolerance});
    report.checks.push_back({"hexagon inverse", hexagon_inverse, kModelTolerance});
    return report;
}

long FusionBasis::index_of(const FusionPath &p) const {
    if (static_cast<int>(p.size()) != n) return -1;
    auto it = lookup.find(path_key(p));
    return it == lookup.end() ? -1 : static_cast<long>(it->second);
}

FusionBasis enumerate_basis(int n, Charge total_charge) {
    if (n < 2) {
        throw std::invalid_argument("a fusion basis needs at least 2 anyons");
    }
    if (n > 30) {
        throw std::invalid_argument("fusion basis limited to 30 anyons");
    }
    FusionBasis basis;
    basis.n = n;
    basis.total_charge = total_charge;
    FusionPath path{Charge::Tau};
    // Depth-first, vacuum branch first, gives lexicographic order.
    auto extend = [&](auto &&self) -> void {
        if (static_cast<int>(path.size()) == n) {
            if (path.back() == total_charge) basis.paths.push_back(path);
            return;
        }
        for (Charge next : kCharges) {
            if (!fuses_to(path.back(), Charge::Tau, next)) continue;
            path.push_back(next);
            self(self);
            path.pop_back();
        }
    };
    extend(extend);
    for (std::size_t i = 0; i < basis.paths.size(); ++i) {
        basis.lookup.emplace(path_key(basis.paths[i]), i);
    }
    return basis;
}

std::size_t basis_dimension(int n, Charge total_charge) {
    if (n < 2) {
        throw std::invalid_argument("a fusion basis needs at least 2 anyons");
    }
    std::size_t tau = 1;
    std::size_t vac = 1;
    for (int k = 3; k <= n; ++k) {
        const std::size_t next_tau = tau + vac;
        vac = tau;
        tau = next_tau;
    }
    return total_charge == Charge::Tau ? tau : vac;
}

Unitary generator_unitary(const FusionBasis &basis, int index, const ModelConstants &m) {
    if (index < 1 || index > basis.n - 1) {
        throw std::invalid_argument("generator index " + std::to_string(index) + " out of range for " +
                                    std::to_string(basis.n) + " anyons");
    }
    const std::size_t dim = basis.dim();
    Unitary u = Unitary::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const FusionPath &path = basis.paths[col];
        // x_{index-1} (vacuum before the first anyon), x_index, x_{index+1}.
        const Charge left = index >= 2 ? path[index - 2] : Charge::Vacuum;
        const Charge mid = path[index - 1];
        const Charge right = path[index];
        for (Charge out : kCharges) {
            if (!fuses_to(left, Charge::Tau, out) || !fuses_to(out, Charge::Tau, right)) continue;
            FusionPath target = path;
            target[index - 1] = out;
            const long row = basis.index_of(target);
            if (row < 0) continue;
            // Recouple to the pair channel, apply its exchange phase, recouple back.
            Complex amp = 0.0;
            for (Charge pair : kCharges) {
                amp += f_symbol(m, left, Charge::Tau, Charge::Tau, right, out, pair) *
                       r_symbol(m, Charge::Tau, Charge::Tau, pair) *
                       std::conj(f_symbol(m, left, Charge::Tau, Charge::Tau, right, mid, pair));
            }
            u(row, static_cast<long>(col)) = amp;
        }
    }
    return u;
}

Representation::Representation(FusionBasis basis, ModelConstants m) : basis_(std::move(basis)), constants_(m) {
    for (int i = 1; i < basis_.n; ++i) {
        forward_.push_back(generator_unitary(basis_, i, constants_));
        backward_.push_back(forward_.back().adjoint());
    }
}

const Unitary &Representation::generator(const Generator &g) const {
    if (g.index < 1 || g.index >= basis_.n) {
        throw std::invalid_argument("generator index out of range for representation");
    }
    return g.sign > 0 ? forward_[g.index - 1] : backward_[g.index - 1];
}

Unitary Representation::operator()(const BraidWord &w) const {
    if (w.strands() != basis_.n) {
        throw std::invalid_argument("word on " + std::to_string(w.strands()) + " strands evaluated on a basis of " +
                                    std::to_string(basis_.n) + " anyons");
    }
    const auto dim = static_cast<long>(basis_.dim());
    Unitary u = Unitary::Identity(dim, dim);
    Unitary tmp(dim, dim);
    for (const auto &g : w.gens()) {
        tmp.noalias() = generator(g) * u;
        u.swap(tmp);
    }
    return u;
}

Unitary word_unitary(const FusionBasis &basis, const BraidWord &w, const ModelConstants &m) {
    return Representation(basis, m)(w);
}

SectorBlocks full_rep_unitary(int n, const BraidWord &w, const ModelConstants &m) {
    if (w.strands() != n) {
        throw std::invalid_argument("word strand count does not match n");
    }
    return {word_unitary(enumerate_basis(n, Charge::Vacuum), w, m), word_unitary(enumerate_basis(n, Charge::Tau), w, m)};
}

double projective_distance(const Unitary &u, const Unitary &v) {
    if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
        throw std::invalid_argument("projective distance needs square matrices of equal size");
    }
    return distance_to_identity(u.adjoint() * v);
}

double distance_to_identity(const Unitary &u) {
    // For unitary u, ||u - e^{i arg Tr u} I||_F^2 / M = 2 - 2|Tr u|/M; the left
    // side avoids the cancellation near the identity.
    const Complex trace = u.trace();
    const Complex phase = std::abs(trace) > 0.0 ? trace / std::abs(trace) : Complex(1.0);
    const Unitary diff = u - phase * Unitary::Identity(u.rows(), u.cols());
    return std::sqrt(diff.squaredNorm() / static_cast<double>(u.rows()));
}

double unitarity_residual(const Unitary &u) {
    return (u.adjoint() * u - Unitary::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace weave
