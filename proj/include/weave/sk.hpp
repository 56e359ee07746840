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

#ifndef WEAVE_SK_HPP
#define WEAVE_SK_HPP

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "weave/anyon.hpp"
#include "weave/braid.hpp"

namespace weave {

/// Fast image of 3-strand words: the 2x2 total-charge-tau block plus the
/// exponent sum, which fixes the 1x1 vacuum block as R_tau^e.
class ThreeStrandRep {
public:
    explicit ThreeStrandRep(const ModelConstants &m = ModelConstants::fibonacci());

    const Eigen::Matrix2cd &generator(const Generator &g) const { return gens_[g.index - 1][g.sign > 0 ? 1 : 0]; }
    Eigen::Matrix2cd sector_tau(std::span<const Generator> word) const;
    Complex sector_vacuum(int exponent_sum) const;
    /// Sector-tau block divided by the vacuum phase. Lies in SU(2) exactly
    /// when the exponent sum is a multiple of 10.
    Eigen::Matrix2cd relative(const Eigen::Matrix2cd &tau_block, int exponent_sum) const;
    /// Vacuum/tau relative phase advances by this factor per unit of exponent sum.
    static constexpr int kPhasePeriod = 10;

private:
    std::array<std::array<Eigen::Matrix2cd, 2>, 2> gens_;
    double tau_angle_ = 0.0;
};

namespace sk {

using Su2 = Eigen::Matrix2cd;

/// (Re a, Im a, Re b, Im b) for [[a, b], [-b*, a*]].
Eigen::Vector4d to_quaternion(const Su2 &u);
Su2 from_quaternion(const Eigen::Vector4d &q);
/// exp(-i angle/2 axis.sigma).
Su2 rotation(const Eigen::Vector3d &axis, double angle);
/// Rotation angle in [0, 2 pi] and unit axis of an SU(2) element.
void angle_axis(const Su2 &u, double &angle, Eigen::Vector3d &axis);
/// Euclidean quaternion distance; equals the Frobenius distance / sqrt(2).
double distance(const Su2 &a, const Su2 &b);

struct Commutator {
    Su2 v;
    Su2 w;
};

/// Balanced group commutator: v w v^dag w^dag = delta with v, w rotations by
/// equal angles about orthogonal axes. `frame` rotates the pair about the axis of delta.
Commutator balanced_commutator(const Su2 &delta, double frame = 0.0);

struct Approximation {
    std::vector<Generator> word;
    Su2 matrix;
};

/// Short pureweaves on 3 strands based at one warp position, with exponent
/// sum divisible by 10, indexed by their SU(2) image for nearest lookup.
class Net {
public:
    Net(int base_position, int max_length, const ModelConstants &m = ModelConstants::fibonacci());

    int base_position() const { return base_; }
    int max_length() const { return max_length_; }
    std::size_t size() const { return items_.size(); }
    const ThreeStrandRep &rep() const { return rep_; }
    const ModelConstants &constants() const { return model_; }
    const Approximation &nearest(const Su2 &target) const;
    /// Largest nearest-neighbour distance over `probes` pseudo-random targets.
    double estimate_covering_radius(int probes, std::uint64_t seed) const;

private:
    void build_tree(std::size_t lo, std::size_t hi, int depth);
    void search(std::size_t lo, std::size_t hi, int depth, const Eigen::Vector4d &q, std::size_t &best,
                double &best_d2) const;

    int base_;
    int max_length_;
    ModelConstants model_;
    ThreeStrandRep rep_;
    std::vector<Approximation> items_;
    std::vector<Eigen::Vector4d> points_;
};

/// Recursive approximation of `target` at the given depth.
Approximation solovay_kitaev(const Net &net, const Su2 &target, int depth, int frames = 1);

}  // namespace sk
}  // namespace weave

#endif  // WEAVE_SK_HPP
