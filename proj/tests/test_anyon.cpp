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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "weave/anyon.hpp"
#include "weave/injection.hpp"

using namespace weave;
using weave::testing::W;

namespace {

const double kPi = std::numbers::pi;

double max_abs(const Unitary &a) { return a.cwiseAbs().maxCoeff(); }

// Every label sequence with x1 = tau obeying tau x tau = 1 + tau and 1 x tau = tau.
std::vector<FusionPath> brute_paths(int n, Charge total) {
    std::vector<FusionPath> out;
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        FusionPath p;
        for (int k = 0; k < n; ++k) p.push_back((mask >> (n - 1 - k)) & 1U ? Charge::Tau : Charge::Vacuum);
        if (p[0] != Charge::Tau || p.back() != total) continue;
        bool ok = true;
        for (int k = 1; k < n; ++k) ok = ok && !(p[k - 1] == Charge::Vacuum && p[k] == Charge::Vacuum);
        if (ok) out.push_back(p);
    }
    return out;
}

Unitary random_unitary(std::mt19937_64 &rng, int m) {
    std::normal_distribution<double> g;
    Unitary a(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = Complex(g(rng), g(rng));
    Eigen::HouseholderQR<Unitary> qr(a);
    return qr.householderQ() * Unitary::Identity(m, m);
}

}  // namespace

TEST_CASE("model constants") {
    const auto m = ModelConstants::fibonacci();
    CHECK(m.phi * m.phi == doctest::Approx(m.phi + 1.0).epsilon(1e-15));
    CHECK(m.F(0, 0).real() == doctest::Approx(1.0 / m.phi));
    CHECK(m.F(0, 1).real() == doctest::Approx(1.0 / std::sqrt(m.phi)));
    CHECK(m.F(1, 1).real() == doctest::Approx(-1.0 / m.phi));
    CHECK(std::abs(m.r_vacuum - std::polar(1.0, 4 * kPi / 5)) < 1e-15);
    CHECK(std::abs(m.r_tau - std::polar(1.0, -3 * kPi / 5)) < 1e-15);
    const auto mirror = ModelConstants::fibonacci(Chirality::Minus);
    CHECK(std::abs(mirror.r_vacuum - std::conj(m.r_vacuum)) < 1e-15);
    CHECK(std::abs(mirror.r_tau - std::conj(m.r_tau)) < 1e-15);
}

TEST_CASE("model validation") {
    for (auto c : {Chirality::Plus, Chirality::Minus}) {
        const auto rep = validate_model(ModelConstants::fibonacci(c));
        CHECK(rep.ok());
        for (const auto &chk : rep.checks) CHECK(chk.residual < 1e-12);
    }
    auto mixed = ModelConstants::fibonacci();
    mixed.r_tau = std::conj(mixed.r_tau);
    CHECK(validate_model(mixed).residual("hexagon") > 1e-3);
    CHECK_FALSE(validate_model(mixed).ok());

    auto flipped = ModelConstants::fibonacci();
    flipped.F(0, 1) = -flipped.F(0, 1);
    CHECK(validate_model(flipped).residual("pentagon") > 1e-3);

    // Flipping both off-diagonal entries is a change of basis, not a fault.
    auto gauge = ModelConstants::fibonacci();
    gauge.F(0, 1) = -gauge.F(0, 1);
    gauge.F(1, 0) = -gauge.F(1, 0);
    CHECK(validate_model(gauge).ok());
}

TEST_CASE("fusion basis") {
    const auto b3t = enumerate_basis(3, Charge::Tau);
    REQUIRE(b3t.dim() == 2);
    CHECK(b3t.paths[0] == FusionPath{Charge::Tau, Charge::Vacuum, Charge::Tau});
    CHECK(b3t.paths[1] == FusionPath{Charge::Tau, Charge::Tau, Charge::Tau});
    const auto b31 = enumerate_basis(3, Charge::Vacuum);
    REQUIRE(b31.dim() == 1);
    CHECK(b31.paths[0] == FusionPath{Charge::Tau, Charge::Tau, Charge::Vacuum});
    const auto b21 = enumerate_basis(2, Charge::Vacuum);
    REQUIRE(b21.dim() == 1);
    CHECK(b21.paths[0] == FusionPath{Charge::Tau, Charge::Vacuum});
    CHECK(enumerate_basis(4, Charge::Tau).dim() == 3);

    for (int n = 2; n <= 12; ++n) {
        for (auto c : {Charge::Vacuum, Charge::Tau}) CHECK(enumerate_basis(n, c).paths == brute_paths(n, c));
    }
    std::size_t tau = 1;
    std::size_t vac = 1;
    for (int n = 3; n <= 16; ++n) {
        const std::size_t t2 = tau + vac;
        vac = tau;
        tau = t2;
        CHECK(basis_dimension(n, Charge::Tau) == tau);
        CHECK(basis_dimension(n, Charge::Vacuum) == vac);
        CHECK(enumerate_basis(n, Charge::Tau).dim() == tau);
    }
}

TEST_CASE("generator matrices on three anyons") {
    const auto m = ModelConstants::fibonacci();
    const auto b = enumerate_basis(3, Charge::Tau);
    Unitary d = Unitary::Zero(2, 2);
    d(0, 0) = m.r_vacuum;
    d(1, 1) = m.r_tau;
    CHECK(max_abs(generator_unitary(b, 1) - d) < 1e-15);
    CHECK(max_abs(generator_unitary(b, 2) - m.F * d * m.F) < 1e-15);
    const auto v = generator_unitary(enumerate_basis(3, Charge::Vacuum), 1);
    REQUIRE(v.rows() == 1);
    CHECK(std::abs(v(0, 0) - m.r_tau) < 1e-15);
    CHECK_THROWS_AS(generator_unitary(b, 3), std::invalid_argument);
    CHECK_THROWS_AS(generator_unitary(b, 0), std::invalid_argument);
}

TEST_CASE("braid relations and unitarity up to eight anyons") {
    for (auto chir : {Chirality::Plus, Chirality::Minus}) {
        const auto m = ModelConstants::fibonacci(chir);
        for (int n = 2; n <= 8; ++n) {
            for (auto c : {Charge::Vacuum, Charge::Tau}) {
                const auto basis = enumerate_basis(n, c);
                std::vector<Unitary> g;
                for (int i = 1; i < n; ++i) {
                    g.push_back(generator_unitary(basis, i, m));
                    CHECK(unitarity_residual(g.back()) < 1e-12);
                }
                for (int i = 0; i + 1 < n - 1; ++i) {
                    CHECK(max_abs(g[i] * g[i + 1] * g[i] - g[i + 1] * g[i] * g[i + 1]) < 1e-10);
                }
                for (int i = 0; i < n - 1; ++i) {
                    for (int j = i + 2; j < n - 1; ++j) CHECK(max_abs(g[i] * g[j] - g[j] * g[i]) < 1e-10);
                }
            }
        }
    }
}

TEST_CASE("word unitary is a homomorphism") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 30; ++t) {
        const int n = weave::testing::pick(rng, 3, 7);
        const auto basis = enumerate_basis(n, Charge::Tau);
        const auto a = weave::testing::random_word(rng, n, weave::testing::pick(rng, 0, 20));
        const auto b = weave::testing::random_word(rng, n, weave::testing::pick(rng, 0, 20));
        const auto ua = word_unitary(basis, a);
        const auto ub = word_unitary(basis, b);
        // a happens first, so its matrix acts first.
        CHECK(max_abs(word_unitary(basis, compose(a, b)) - ub * ua) < 1e-12);
        CHECK(max_abs(word_unitary(basis, inverse(a)) - ua.adjoint()) < 1e-12);
        CHECK(unitarity_residual(ua) < 1e-12);
    }
    const auto basis = enumerate_basis(4, Charge::Tau);
    CHECK(max_abs(word_unitary(basis, BraidWord(4)) - Unitary::Identity(3, 3)) == 0.0);
    CHECK_THROWS_AS(word_unitary(basis, W(3, {1})), std::invalid_argument);
}

TEST_CASE("sector blocks of three anyons") {
    const auto m = ModelConstants::fibonacci();
    const auto e = full_rep_unitary(3, BraidWord(3));
    CHECK(max_abs(e.vacuum - Unitary::Identity(1, 1)) == 0.0);
    CHECK(max_abs(e.tau - Unitary::Identity(2, 2)) == 0.0);
    const auto s = full_rep_unitary(3, W(3, {1}));
    CHECK(std::abs(s.vacuum(0, 0) - m.r_tau) < 1e-15);
    CHECK(std::abs(s.tau(0, 0) - m.r_vacuum) < 1e-15);
    CHECK(std::abs(s.tau(1, 1) - m.r_tau) < 1e-15);
    CHECK(std::abs(s.tau(0, 1)) < 1e-15);

    // Full-sector distance of one crossing: diag(R1, Rtau, Rtau) against the identity.
    const Complex tr = m.r_vacuum + 2.0 * m.r_tau;
    const double expect = std::sqrt(2.0 - 2.0 * std::abs(tr) / 3.0);
    CHECK(full_sector_distance(W(3, {1})) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(full_sector_distance(BraidWord(3)) == 0.0);
}

TEST_CASE("projective distance") {
    Unitary z = Unitary::Identity(2, 2);
    z(1, 1) = -1.0;
    CHECK(projective_distance(Unitary::Identity(2, 2), z) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(projective_distance(Unitary::Identity(2, 2), Unitary::Identity(3, 3)), std::invalid_argument);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (int t = 0; t < 50; ++t) {
        const int dim = weave::testing::pick(rng, 1, 6);
        const auto u = random_unitary(rng, dim);
        const auto v = random_unitary(rng, dim);
        const auto w = random_unitary(rng, dim);
        CHECK(projective_distance(u, u) < 1e-12);
        CHECK(projective_distance(u, std::polar(1.0, ang(rng)) * u) < 1e-12);
        const double oracle =
            std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs((u.adjoint() * v).trace()) / static_cast<double>(dim)));
        // The textbook form loses half the digits near zero, hence the loose slack.
        CHECK(std::abs(projective_distance(u, v) - oracle) < 1e-7);
        CHECK(projective_distance(u, v) == doctest::Approx(projective_distance(v, u)).epsilon(1e-12));
        CHECK(projective_distance(u, w) <= projective_distance(u, v) + projective_distance(v, w) + 1e-12);
    }
}
