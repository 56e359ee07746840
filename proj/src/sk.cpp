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

#include "weave/sk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace weave {

ThreeStrandRep::ThreeStrandRep(const ModelConstants &m) {
    const FusionBasis basis = enumerate_basis(3, Charge::Tau);
    for (int i = 1; i <= 2; ++i) {
        const Unitary g = generator_unitary(basis, i, m);
        gens_[i - 1][1] = g;
        gens_[i - 1][0] = g.adjoint();
    }
    tau_angle_ = std::arg(m.r_tau);
}

Eigen::Matrix2cd ThreeStrandRep::sector_tau(std::span<const Generator> word) const {
    Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
    for (const auto &g : word) {
        u = generator(g) * u;
    }
    return u;
}

Complex ThreeStrandRep::sector_vacuum(int exponent_sum) const {
    // Every crossing of three anyons with total charge 1 has pair channel tau.
    return std::polar(1.0, tau_angle_ * exponent_sum);
}

Eigen::Matrix2cd ThreeStrandRep::relative(const Eigen::Matrix2cd &tau_block, int exponent_sum) const {
    return tau_block * std::conj(sector_vacuum(exponent_sum));
}

namespace sk {

namespace {

const Eigen::Matrix2cd &pauli(int k) {
    static const std::array<Eigen::Matrix2cd, 3> sigma = [] {
        std::array<Eigen::Matrix2cd, 3> s;
        const Complex i(0.0, 1.0);
        s[0] << 0.0, 1.0, 1.0, 0.0;
        s[1] << 0.0, -i, i, 0.0;
        s[2] << 1.0, 0.0, 0.0, -1.0;
        return s;
    }();
    return sigma[k];
}

std::vector<Generator> inverse_word(const std::vector<Generator> &w) {
    std::vector<Generator> out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
    return out;
}

std::vector<Generator> reduce(std::vector<Generator> w) {
    std::vector<Generator> stack;
    stack.reserve(w.size());
    for (const auto &g : w) {
        if (!stack.empty() && stack.back() == g.inverse()) {
            stack.pop_back();
        } else {
            stack.push_back(g);
        }
    }
    return stack;
}

}  // namespace

Eigen::Vector4d to_quaternion(const Su2 &u) {
    return {u(0, 0).real(), u(0, 0).imag(), u(0, 1).real(), u(0, 1).imag()};
}

Su2 from_quaternion(const Eigen::Vector4d &q) {
    const Complex a(q[0], q[1]);
    const Complex b(q[2], q[3]);
    Su2 u;
    u << a, b, -std::conj(b), std::conj(a);
    return u;
}

Su2 rotation(const Eigen::Vector3d &axis, double angle) {
    const Eigen::Vector3d n = axis.normalized();
    const Complex i(0.0, 1.0);
    Su2 ns = n[0] * pauli(0) + n[1] * pauli(1) + n[2] * pauli(2);
    return std::cos(angle / 2.0) * Su2::Identity() - i * std::sin(angle / 2.0) * ns;
}

void angle_axis(const Su2 &u, double &angle, Eigen::Vector3d &axis) {
    // u = cos(angle/2) I - i sin(angle/2) n.sigma
    const double c = std::clamp(0.5 * u.trace().real(), -1.0, 1.0);
    const Complex i(0.0, 1.0);
    Eigen::Vector3d v;
    for (int k = 0; k < 3; ++k) {
        v[k] = (0.5 * i * (pauli(k) * u).trace()).real();
    }
    const double s = v.norm();
    angle = 2.0 * std::atan2(s, c);
    axis = s > 0.0 ? Eigen::Vector3d(v / s) : Eigen::Vector3d(0.0, 0.0, 1.0);
}

double distance(const Su2 &a, const Su2 &b) { return (to_quaternion(a) - to_quaternion(b)).norm(); }

Commutator balanced_commutator(const Su2 &delta, double frame) {
    double theta = 0.0;
    Eigen::Vector3d n;
    angle_axis(delta, theta, n);
    theta = std::min(theta, std::numbers::pi);
    // sin^2(phi/2) = sin(theta/4) makes [R_x(phi), R_y(phi)] a rotation by theta.
    const double phi = 2.0 * std::asin(std::sqrt(std::sin(theta / 4.0)));
    const Su2 v = rotation(Eigen::Vector3d::UnitX(), phi);
    const Su2 w = rotation(Eigen::Vector3d::UnitY(), phi);
    const Su2 c = v * w * v.adjoint() * w.adjoint();
    double theta_c = 0.0;
    Eigen::Vector3d m;
    angle_axis(c, theta_c, m);

    Su2 s = Su2::Identity();
    const Eigen::Vector3d cross = m.cross(n);
    const double dot = std::clamp(m.dot(n), -1.0, 1.0);
    if (cross.norm() > 1e-14) {
        s = rotation(cross, std::acos(dot));
    } else if (dot < 0.0) {
        Eigen::Vector3d perp = m.cross(Eigen::Vector3d::UnitX());
        if (perp.norm() < 1e-6) perp = m.cross(Eigen::Vector3d::UnitY());
        s = rotation(perp, std::numbers::pi);
    }
    const Su2 t = rotation(n, frame) * s;
    return {t * v * t.adjoint(), t * w * t.adjoint()};
}

Net::Net(int base_position, int max_length, const ModelConstants &m)
    : base_(base_position), max_length_(max_length), model_(m), rep_(m) {
    if (base_position < 1 || base_position > 3) {
        throw std::invalid_argument("net base position must lie in 1..3");
    }
    if (max_length < 0 || max_length > 40) {
        throw std::invalid_argument("net length must lie in 0..40");
    }
    std::vector<Approximation> found;
    std::vector<Generator> word;
    // Pruned weave enumeration from the base; keep returns with exponent sum = 0 mod 10.
    auto dfs = [&](auto &&self, int pos, const Su2 &u, int e) -> void {
        if (pos == base_ && e % ThreeStrandRep::kPhasePeriod == 0) {
            found.push_back({word, rep_.relative(u, e)});
        }
        if (static_cast<int>(word.size()) == max_length_) return;
        for (int index : {pos - 1, pos}) {
            if (index < 1 || index > 2) continue;
            for (int sign : {-1, 1}) {
                const Generator g{index, sign};
                if (!word.empty() && word.back() == g.inverse()) continue;
                word.push_back(g);
                self(self, index == pos ? pos + 1 : pos - 1, Su2(rep_.generator(g) * u), e + sign);
                word.pop_back();
            }
        }
    };
    dfs(dfs, base_, Su2::Identity(), 0);

    std::stable_sort(found.begin(), found.end(), [](const Approximation &a, const Approximation &b) {
        if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
        return a.word < b.word;
    });
    // Several words share an image; keep the shortest.
    std::unordered_set<std::uint64_t> seen;
    for (auto &a : found) {
        const Eigen::Vector4d q = to_quaternion(a.matrix);
        std::uint64_t h = 1469598103934665603ull;
        for (int k = 0; k < 4; ++k) {
            const auto cell = static_cast<std::int64_t>(std::llround(q[k] * 1e9));
            h = (h ^ static_cast<std::uint64_t>(cell)) * 1099511628211ull;
        }
        if (!seen.insert(h).second) continue;
        points_.push_back(q);
        items_.push_back(std::move(a));
    }
    build_tree(0, items_.size(), 0);
}

void Net::build_tree(std::size_t lo, std::size_t hi, int depth) {
    if (hi - lo <= 1) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    const int axis = depth % 4;
    std::vector<std::size_t> order(hi - lo);
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = lo + k;
    std::nth_element(order.begin(), order.begin() + static_cast<long>(mid - lo), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         if (points_[a][axis] != points_[b][axis]) return points_[a][axis] < points_[b][axis];
                         return a < b;
                     });
    std::vector<Eigen::Vector4d> pts;
    std::vector<Approximation> its;
    pts.reserve(order.size());
    its.reserve(order.size());
    for (std::size_t k : order) {
        pts.push_back(points_[k]);
        its.push_back(std::move(items_[k]));
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
        points_[lo + k] = pts[k];
        items_[lo + k] = std::move(its[k]);
    }
    build_tree(lo, mid, depth + 1);
    build_tree(mid + 1, hi, depth + 1);
}

void Net::search(std::size_t lo, std::size_t hi, int depth, const Eigen::Vector4d &q, std::size_t &best,
                 double &best_d2) const {
    if (lo >= hi) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    const double d2 = (points_[mid] - q).squaredNorm();
    if (d2 < best_d2 || (d2 == best_d2 && mid < best)) {
        best_d2 = d2;
        best = mid;
    }
    const int axis = depth % 4;
    const double diff = q[axis] - points_[mid][axis];
    const bool left_first = diff < 0.0;
    if (left_first) {
        search(lo, mid, depth + 1, q, best, best_d2);
        if (diff * diff <= best_d2) search(mid + 1, hi, depth + 1, q, best, best_d2);
    } else {
        search(mid + 1, hi, depth + 1, q, best, best_d2);
        if (diff * diff <= best_d2) search(lo, mid, depth + 1, q, best, best_d2);
    }
}

const Approximation &Net::nearest(const Su2 &target) const {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    search(0, items_.size(), 0, to_quaternion(target), best, best_d2);
    return items_[best];
}

double Net::estimate_covering_radius(int probes, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int k = 0; k < probes; ++k) {
        Eigen::Vector4d q(normal(rng), normal(rng), normal(rng), normal(rng));
        q.normalize();
        const Su2 target = from_quaternion(q);
        worst = std::max(worst, distance(nearest(target).matrix, target));
    }
    return worst;
}

Approximation solovay_kitaev(const Net &net, const Su2 &target, int depth, int frames) {
    if (depth <= 0) {
        return net.nearest(target);
    }
    Approximation prev = solovay_kitaev(net, target, depth - 1, frames);
    const Su2 delta = target * prev.matrix.adjoint();
    Approximation best;
    double best_err = std::numeric_limits<double>::infinity();
    for (int f = 0; f < std::max(frames, 1); ++f) {
        const double frame = std::numbers::pi * f / std::max(frames, 1);
        const Commutator vw = balanced_commutator(delta, frame);
        const Approximation a = solovay_kitaev(net, vw.v, depth - 1, frames);
        const Approximation b = solovay_kitaev(net, vw.w, depth - 1, frames);
        const Su2 m = a.matrix * b.matrix * a.matrix.adjoint() * b.matrix.adjoint() * prev.matrix;
        const double err = distance(m, target);
        if (err < best_err) {
            best_err = err;
            // Matrix product X Y is the word Y then X.
            std::vector<Generator> w = prev.word;
            for (const auto &part : {inverse_word(b.word), inverse_word(a.word), b.word, a.word}) {
                w.insert(w.end(), part.begin(), part.end());
            }
            best.word = reduce(std::move(w));
            best.matrix = m;
        }
    }
    return best;
}

}  // namespace sk
}  // namespace weave
