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

#ifndef WEAVE_ANYON_HPP
#define WEAVE_ANYON_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "weave/braid.hpp"

namespace weave {

using Complex = std::complex<double>;
/// Dense complex square matrix acting on fusion-path amplitudes (column vectors).
using Unitary = Eigen::MatrixXcd;

/// Fibonacci charges. Vacuum sorts before tau.
enum class Charge : std::uint8_t { Vacuum = 0, Tau = 1 };

/// Selects one of the two complex-conjugate solutions of the hexagon equations.
enum class Chirality { Plus, Minus };

std::string to_string(Charge c);
std::string to_string(Chirality c);
Charge charge_from_string(const std::string &s);
Chirality chirality_from_string(const std::string &s);

/// Whether a x b contains c.
bool fuses_to(Charge a, Charge b, Charge c);

/// F and R data of the Fibonacci model. The value object is the seam for other
/// models; only the Fibonacci solution ships.
struct ModelConstants {
    double phi = 0.0;
    /// Recoupling matrix of (tau tau tau -> tau), rows/cols ordered (vacuum, tau).
    Eigen::Matrix2cd F;
    Complex r_vacuum;
    Complex r_tau;
    Chirality chirality = Chirality::Plus;

    static ModelConstants fibonacci(Chirality chirality = Chirality::Plus);
};

/// [F^{abc}_d]_{ef}: ((a b)_e c)_d -> (a (b c)_f)_d. Zero when a vertex is not admissible.
Complex f_symbol(const ModelConstants &m, Charge a, Charge b, Charge c, Charge d, Charge e, Charge f);
/// R^{ab}_c. Zero when a x b does not contain c.
Complex r_symbol(const ModelConstants &m, Charge a, Charge b, Charge c);

struct ValidationReport {
    struct Check {
        std::string name;
        double residual = 0.0;
        double tolerance = 0.0;
        bool pass() const { return residual < tolerance; }
    };
    std::vector<Check> checks;

    bool ok() const;
    double residual(const std::string &name) const;
};

/// F unitarity and involution, pentagon over all labels, both hexagons.
ValidationReport validate_model(const ModelConstants &m);

/// Labels x_1..x_n; x_k is the total charge of the first k anyons, x_1 = tau.
using FusionPath = std::vector<Charge>;

struct FusionBasis {
    int n = 0;
    Charge total_charge = Charge::Tau;
    std::vector<FusionPath> paths;

    std::size_t dim() const { return paths.size(); }
    /// Index of a path, or -1 when it is not a basis element.
    long index_of(const FusionPath &p) const;

    std::unordered_map<std::uint32_t, std::size_t> lookup;
};

/// Lexicographic (vacuum < tau) list of admissible paths.
FusionBasis enumerate_basis(int n, Charge total_charge);
/// dim(n, c) from the recursion dim(n, tau) = dim(n-1, tau) + dim(n-1, 1).
std::size_t basis_dimension(int n, Charge total_charge);

Unitary generator_unitary(const FusionBasis &basis, int index,
                          const ModelConstants &m = ModelConstants::fibonacci());

/// Cached generator matrices for repeated evaluation on one basis.
class Representation {
public:
    explicit Representation(FusionBasis basis, ModelConstants m = ModelConstants::fibonacci());

    const FusionBasis &basis() const { return basis_; }
    const ModelConstants &constants() const { return constants_; }
    const Unitary &generator(const Generator &g) const;
    /// Product with the first generator applied first: U(g_p) ... U(g_1).
    Unitary operator()(const BraidWord &w) const;

private:
    FusionBasis basis_;
    ModelConstants constants_;
    std::vector<Unitary> forward_;
    std::vector<Unitary> backward_;
};

Unitary word_unitary(const FusionBasis &basis, const BraidWord &w,
                     const ModelConstants &m = ModelConstants::fibonacci());

/// Word images in both total-charge sectors of n anyons.
struct SectorBlocks {
    Unitary vacuum;
    Unitary tau;
};

SectorBlocks full_rep_unitary(int n, const BraidWord &w, const ModelConstants &m = ModelConstants::fibonacci());

/// sqrt(max(0, 2 - 2|Tr(U^dag V)|/M)): normalized Frobenius distance minimized
/// over a global phase.
double projective_distance(const Unitary &u, const Unitary &v);
double distance_to_identity(const Unitary &u);
/// max |(U^dag U - I)_{ij}|.
double unitarity_residual(const Unitary &u);

}  // namespace weave

#endif  // WEAVE_ANYON_HPP
