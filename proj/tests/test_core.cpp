// Copyright 2026 The QSC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <numbers>

#include "gtest/gtest.h"
#include "qsc/core/channel.hpp"
#include "qsc/core/random.hpp"
#include "qsc/core/register.hpp"

using namespace qsc;

namespace {

const double r2 = 1.0 / std::sqrt(2.0);

void expect_amps(const StateVector &s, const std::vector<cplx> &want, double tol = 1e-12) {
    ASSERT_EQ(s.dim(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_NEAR(std::abs(s[i] - want[i]), 0.0, tol) << "amplitude " << i;
    }
}

// Column-stacked Liouville representation: vec(K ρ K†) = (K̄ ⊗ K) vec(ρ).
Matrix liouville(const std::vector<Matrix> &kraus) {
    Matrix s;
    for (const auto &k : kraus) {
        Matrix term = kron(k.conjugate(), k);
        s = s.rows() == 0 ? term : s + term;
    }
    return s;
}

std::vector<cplx> vec(const Matrix &m) {
    std::vector<cplx> v(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            v[i + m.rows() * j] = m(i, j);
        }
    }
    return v;
}

Matrix unvec(const std::vector<cplx> &v, std::size_t d) {
    Matrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
            m(i, j) = v[i + d * j];
        }
    }
    return m;
}

// Traces out the top `drop` qubits by explicit block summation.
Matrix trace_top(const Matrix &rho, std::size_t keep_dim) {
    const std::size_t blocks = rho.rows() / keep_dim;
    Matrix out(keep_dim, keep_dim);
    for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t i = 0; i < keep_dim; ++i) {
            for (std::size_t j = 0; j < keep_dim; ++j) {
                out(i, j) += rho(b * keep_dim + i, b * keep_dim + j);
            }
        }
    }
    return out;
}

} // namespace

TEST(ApplyGate, PauliXFlipsBasisState) {
    expect_amps(apply_gate(StateVector::zeros(1), gates::X(), {0}), {0.0, 1.0});
}

TEST(ApplyGate, HadamardMakesPlus) { expect_amps(apply_gate(StateVector::zeros(1), gates::H(), {0}), {r2, r2}); }

TEST(ApplyGate, CzOnPlusPlusMatchesDenseProduct) {
    // Oracle: explicit 4x4 matrix times the |++> vector.
    const auto dense = gates::CZ().matrix() * std::vector<cplx>{0.5, 0.5, 0.5, 0.5};
    const auto s = apply_gate(StateVector::plus(2), gates::CZ(), {0, 1});
    expect_amps(s, dense);
    expect_amps(s, {0.5, 0.5, 0.5, -0.5});
}

TEST(ApplyGate, TargetOrderFollowsLittleEndianConvention) {
    // CNOT with targets {control=1, target=0} on |q1=1, q0=0> = index 2 -> index 3.
    const auto s = apply_gate(StateVector::basis(2, 2), gates::CNOT(), {1, 0});
    expect_amps(s, {0, 0, 0, 1});
}

TEST(ApplyGate, Errors) {
    auto s = StateVector::zeros(2);
    EXPECT_THROW(s.apply(gates::CZ(), {0}), Error);
    EXPECT_THROW(s.apply(gates::CZ(), {0, 0}), Error);
    EXPECT_THROW(s.apply(gates::X(), {2}), Error);
    EXPECT_THROW(StateVector::zeros(21), Error);
}

TEST(Measure, PlusInXIsDeterministic) {
    auto rng = RngPolicy::seeded(1);
    auto [rec, post] = measure(StateVector::plus(1), 0, Basis::x(), rng);
    EXPECT_EQ(rec.outcome, std::vector<int>{0});
    EXPECT_NEAR(rec.probability, 1.0, 1e-12);
    EXPECT_EQ(post.qubit_count(), 0u);
}

TEST(Measure, ForcedOutcomeOnZeroInXBasis) {
    auto rng = RngPolicy::forced({1});
    auto [rec, post] = measure(StateVector::zeros(1), 0, Basis::x(), rng);
    EXPECT_EQ(rec.outcome, std::vector<int>{1});
    EXPECT_NEAR(rec.probability, 0.5, 1e-12);
    EXPECT_EQ(post.qubit_count(), 0u);
}

TEST(Measure, RotatedBasisEigenstate) {
    auto rng = RngPolicy::seeded(3);
    const auto s = StateVector::from_amplitudes({r2, r2 * cplx(0, 1)});
    auto [rec, post] = measure(s, 0, Basis::rotated(std::numbers::pi / 2), rng);
    EXPECT_EQ(rec.outcome[0], 0);
    EXPECT_NEAR(rec.probability, 1.0, 1e-12);
}

TEST(Measure, ForcedZeroProbabilityIsAnError) {
    auto rng = RngPolicy::forced({1});
    try {
        (void)measure(StateVector::zeros(1), 0, Basis::z(), rng, "probe");
        FAIL() << "expected an error";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::forced_zero_probability);
        EXPECT_NE(std::string(e.what()).find("probe"), std::string::npos);
    }
}

TEST(Measure, RemovesQubitAndShiftsHigherIndices) {
    // |q2 q1 q0> = |1 0 +>; measuring q1 leaves |q1'=1, q0=+>.
    auto s = StateVector::plus(1).tensor(StateVector::zeros(1)).tensor(StateVector::basis(1, 1));
    auto rng = RngPolicy::seeded(0);
    auto [rec, post] = measure(s, 1, Basis::z(), rng);
    EXPECT_EQ(rec.outcome[0], 0);
    expect_amps(post, {0, 0, r2, r2});
}

TEST(Measure, BornTotalityOverRandomStates) {
    GaussianSource g(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto s = random_state(3, g);
        for (std::size_t q = 0; q < 3; ++q) {
            for (const auto &b : {Basis::z(), Basis::x(), Basis::rotated(0.37 * trial)}) {
                const auto p = outcome_probabilities(s, q, b);
                EXPECT_NEAR(p[0] + p[1], 1.0, 1e-12);
                auto rng = RngPolicy::seeded(trial);
                auto [rec, post] = measure(s, q, b, rng);
                EXPECT_NEAR(rec.probability, p[rec.outcome[0]], 1e-12);
                EXPECT_NEAR(post.norm(), 1.0, 1e-12);
            }
        }
    }
}

TEST(BellMeasure, EbitIsBellEigenstate) {
    auto rng = RngPolicy::seeded(5);
    auto [rec, post] = bell_measure(ebit(), 0, 1, rng);
    EXPECT_EQ(rec.a, 0);
    EXPECT_EQ(rec.b, 0);
    EXPECT_NEAR(rec.probability, 1.0, 1e-12);
}

TEST(BellMeasure, ZeroZeroSplitsBetweenTwoOutcomes) {
    // |00> = (|ω> + (Z⊗I)|ω>)/√2.
    for (int b : {0, 1}) {
        auto rng = RngPolicy::forced({0, b});
        auto [rec, post] = bell_measure(StateVector::zeros(2), 0, 1, rng);
        EXPECT_NEAR(rec.probability, 0.5, 1e-12);
    }
    auto rng = RngPolicy::forced({1, 0});
    EXPECT_THROW((void)bell_measure(StateVector::zeros(2), 0, 1, rng), Error);
}

TEST(BellMeasure, TeleportationIdentityAllOutcomes) {
    GaussianSource g(7);
    for (int trial = 0; trial < 20; ++trial) {
        const auto psi = random_state(1, g);
        for (int idx = 0; idx < 4; ++idx) {
            auto rng = RngPolicy::forced({idx & 1, idx >> 1});
            auto [rec, post] = bell_measure(make_ebit(psi), 0, 1, rng);
            EXPECT_NEAR(rec.probability, 0.25, 1e-12);
            if (rec.b) post.apply(gates::Z(), {0});
            if (rec.a) post.apply(gates::X(), {0});
            EXPECT_GE(fidelity(post, psi), 1 - 1e-10);
        }
    }
}

TEST(Ebit, Construction) {
    expect_amps(make_ebit(StateVector()), {r2, 0, 0, r2});
    expect_amps(make_ebit(make_ebit(StateVector())), ebit().tensor(ebit()).amplitudes());
}

TEST(Ebit, TransposeProperty) {
    GaussianSource g(2);
    const auto w = ebit().amplitudes();
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = random_matrix(2, 2, g);
        // Qubit 0 is the first leg: A ⊗ I acts on the low qubit.
        const auto lhs = kron(Matrix::identity(2), a) * w;
        const auto rhs = kron(a.transpose(), Matrix::identity(2)) * w;
        double diff = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            diff += std::norm(lhs[i] - rhs[i]);
        }
        EXPECT_LE(std::sqrt(diff), 1e-12);
    }
}

TEST(Cluster, SmallGraphs) {
    expect_amps(make_cluster(StateVector(), 1, {}), {r2, r2});
    expect_amps(make_cluster(StateVector(), 2, {{0, 1}}), {0.5, 0.5, 0.5, -0.5});
    EXPECT_THROW((void)make_cluster(StateVector(), 2, {{1, 1}}), Error);
}

TEST(Cluster, PathOfThreeStabilizers) {
    const auto s = make_cluster(StateVector(), 3, path_edges(3));
    for (const char *p : {"XZI", "ZXZ", "IZX"}) {
        EXPECT_NEAR(expectation(s, PauliOperator::parse(p)), 1.0, 1e-12) << p;
    }
}

TEST(Choi, IdentityAndX) {
    expect_amps(choi_of_unitary(gates::I()).state, {r2, 0, 0, r2});
    // X on the output leg of |ω>: (|01> + |10>)/√2.
    expect_amps(choi_of_unitary(gates::X()).state, {0, r2, r2, 0});
}

TEST(Choi, RoundTripRandomUnitaries) {
    GaussianSource g(9);
    for (std::size_t n : {1u, 2u}) {
        for (int trial = 0; trial < 10; ++trial) {
            const auto u = random_unitary(n, g);
            const auto back = unitary_of_choi(choi_of_unitary(u));
            EXPECT_TRUE(equal_up_to_phase(back.matrix(), u.matrix(), 1e-10));
        }
    }
}

TEST(Choi, RejectsNonMaximallyEntangledInput) {
    EXPECT_THROW((void)unitary_of_choi(ChoiState{1, StateVector::zeros(2)}), Error);
}

TEST(Choi, ChannelChoiOfUnitaryMatchesPureChoi) {
    GaussianSource g(4);
    const auto u = random_unitary(1, g);
    const Matrix c = choi_of_channel(ChannelSpec::unitary(u));
    EXPECT_LE(c.max_abs_diff(density(choi_of_unitary(u).state)), 1e-12);
}

TEST(Superchannel, IdentityLeavesStateUnchanged) {
    GaussianSource g(1);
    const Matrix rho = density(random_state(1, g));
    const Matrix out = apply_superchannel(UnitarySpec(Matrix::identity(4)), UnitarySpec(Matrix::identity(4)),
                                          ChannelSpec::identity(2), rho);
    EXPECT_LE(out.max_abs_diff(rho), 1e-12);
}

TEST(Superchannel, SwapWithAncillaReturnsZero) {
    GaussianSource g(1);
    const Matrix rho = density(random_state(1, g));
    const Matrix out =
        apply_superchannel(UnitarySpec(Matrix::identity(4)), gates::SWAP(), ChannelSpec::identity(2), rho);
    EXPECT_LE(out.max_abs_diff(Matrix{{1, 0}, {0, 0}}), 1e-12);
}

TEST(Superchannel, MatchesLiouvilleComposition) {
    GaussianSource g(21);
    for (int trial = 0; trial < 20; ++trial) {
        const auto u = random_unitary(2, g), v = random_unitary(2, g);
        // Two-Kraus channel: K0 = cos(a) W0, K1 = sin(a) W1.
        const double a = 0.3 + 0.05 * trial;
        const auto w0 = random_unitary(2, g), w1 = random_unitary(2, g);
        const ChannelSpec phi(2, 2, {std::cos(a) * w0.matrix(), std::sin(a) * w1.matrix()});
        const Matrix rho = density(random_state(1, g));

        Matrix joint(4, 4);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) joint(i, j) = rho(i, j);
        const Matrix s = liouville({v.matrix()}) * liouville(phi.kraus()) * liouville({u.matrix()});
        const Matrix oracle = trace_top(unvec(s * vec(joint), 4), 2);

        EXPECT_LE(trace_distance(apply_superchannel(u, v, phi, rho), oracle), 1e-10);
    }
}

TEST(Superchannel, DimensionMismatch) {
    const Matrix rho{{1, 0}, {0, 0}};
    EXPECT_THROW((void)apply_superchannel(gates::CZ(), gates::H(), ChannelSpec::identity(2), rho), Error);
    EXPECT_THROW((void)apply_superchannel(gates::CZ(), gates::CZ(), ChannelSpec::identity(1), rho), Error);
}

TEST(Fidelity, Examples) {
    EXPECT_NEAR(fidelity(StateVector::zeros(1), StateVector::zeros(1)), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(StateVector::zeros(1), StateVector::basis(1, 1)), 0.0, 1e-15);
    EXPECT_NEAR(fidelity(StateVector::zeros(1), StateVector::plus(1)), 0.5, 1e-15);
    EXPECT_THROW((void)fidelity(StateVector::zeros(1), StateVector::zeros(2)), Error);
}

TEST(Pauli, ProductsAndSquares) {
    const char *labels[] = {"I", "X", "Y", "Z"};
    for (const char *a : labels) {
        for (const char *b : labels) {
            const auto pa = PauliOperator::parse(a), pb = PauliOperator::parse(b);
            const auto prod = pa * pb;
            EXPECT_LE(prod.matrix().max_abs_diff(pa.matrix() * pb.matrix()), 1e-12) << a << b;
        }
        const auto sq = PauliOperator::parse(a) * PauliOperator::parse(a);
        EXPECT_TRUE(sq.is_identity_up_to_phase());
        EXPECT_TRUE(sq.phase() == 0 || sq.phase() == 2);
    }
}

TEST(Pauli, FromMatrixRecoversPhase) {
    for (const char *p : {"+XZ", "-iYI", "+iZZ", "-XY"}) {
        const auto op = PauliOperator::parse(p);
        const auto back = PauliOperator::from_matrix(op.matrix());
        ASSERT_TRUE(back.has_value()) << p;
        EXPECT_EQ(*back, op) << p;
    }
    EXPECT_FALSE(PauliOperator::from_matrix(gates::H().matrix()).has_value());
    EXPECT_FALSE(PauliOperator::from_matrix(gates::S().matrix()).has_value());
}

TEST(Pauli, AdjointMatchesMatrix) {
    for (const char *p : {"+XZ", "-iYI", "+iZZ", "Y"}) {
        const auto op = PauliOperator::parse(p);
        EXPECT_LE(op.adjoint().matrix().max_abs_diff(op.matrix().adjoint()), 1e-12);
    }
}

TEST(Register, IdsSurviveMeasurement) {
    Register reg;
    const auto a = reg.allocate_label('0');
    const auto b = reg.allocate_label('+');
    const auto c = reg.allocate_label('1');
    auto rng = RngPolicy::seeded(2);
    (void)reg.measure(b, Basis::x(), rng);
    EXPECT_EQ(reg.size(), 2u);
    EXPECT_EQ(reg.position(a), 0u);
    EXPECT_EQ(reg.position(c), 1u);
    const QubitId only_c[] = {c};
    EXPECT_GE(fidelity(StateVector::basis(1, 1), reg.reduced_pure_state(only_c)), 1 - 1e-12);
    EXPECT_THROW((void)reg.position(b), Error);
}

TEST(Register, CapacityIsEnforced) {
    Register reg(3);
    (void)reg.allocate(StateVector::zeros(3));
    EXPECT_THROW((void)reg.allocate_label('0'), Error);
}

TEST(Determinism, SameSeedSameRecords) {
    GaussianSource g(5);
    const auto s = random_state(4, g);
    auto run = [&](std::uint64_t seed) {
        auto rng = RngPolicy::seeded(seed);
        std::vector<int> outcomes;
        StateVector cur = s;
        while (cur.qubit_count() > 0) {
            auto [rec, post] = measure(cur, 0, Basis::rotated(0.4), rng);
            outcomes.push_back(rec.outcome[0]);
            cur = post;
        }
        return outcomes;
    };
    EXPECT_EQ(run(17), run(17));
}

TEST(NormPreservation, RandomGateSequences) {
    GaussianSource g(31);
    auto s = random_state(5, g);
    for (int step = 0; step < 100; ++step) {
        const std::size_t a = static_cast<std::size_t>(g.uniform() * 5);
        std::size_t b = static_cast<std::size_t>(g.uniform() * 5);
        if (b == a) b = (a + 1) % 5;
        s.apply(random_unitary(2, g), {a, b});
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    }
}
