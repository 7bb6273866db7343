#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_helpers.hpp"

#include "lcusim/gates.hpp"

using namespace lcusim;
using testutil::embed_dense;
using testutil::make_rng;
using testutil::random_state;

namespace {
const double r2 = 1.0 / std::numbers::sqrt2;
}

TEST_CASE("hadamard splits and recombines basis states") {
    const SingleQubitGate h = hadamard();
    const StateVector plus = apply_single(basis_state(1, 0), h, 0);
    CHECK(std::abs(plus.amplitude(0) - r2) < 1e-15);
    CHECK(std::abs(plus.amplitude(1) - r2) < 1e-15);

    const StateVector minus = apply_single(basis_state(1, 1), h, 0);
    CHECK(std::abs(minus.amplitude(0) - r2) < 1e-15);
    CHECK(std::abs(minus.amplitude(1) + r2) < 1e-15);

    // involution: H H = I
    const StateVector back = apply_single(plus, h, 0);
    CHECK(std::abs(back.amplitude(0) - 1.0) < 1e-14);
    CHECK(std::abs(back.amplitude(1)) < 1e-14);
}

TEST_CASE("coin_gate is the real rotation by the given angle") {
    const SingleQubitGate id = coin_gate(0.0);
    CHECK(std::abs(id.at(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(id.at(0, 1)) < 1e-15);

    const SingleQubitGate c45 = coin_gate(45.0);
    CHECK(std::abs(c45.at(0, 0) - r2) < 1e-15);
    CHECK(std::abs(c45.at(0, 1) + r2) < 1e-15);
    CHECK(std::abs(c45.at(1, 0) - r2) < 1e-15);
    CHECK(std::abs(c45.at(1, 1) - r2) < 1e-15);

    const SingleQubitGate c90 = coin_gate(90.0);
    CHECK(std::abs(c90.at(0, 0)) < 1e-15);
    CHECK(std::abs(c90.at(0, 1) + 1.0) < 1e-15);
    CHECK(std::abs(c90.at(1, 0) - 1.0) < 1e-15);
}

TEST_CASE("non-unitary gate matrices are rejected eagerly") {
    CHECK_THROWS_AS(SingleQubitGate(1.0, 0.0, 0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(SingleQubitGate(1.0, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("cyclic_shift wraps with the requested sign") {
    const RegisterSlice both({0, 1});

    const StateVector up = apply_perm_unitary(
        basis_state(2, 3), cyclic_shift(4, ShiftDirection::up, +1), both);
    CHECK(std::abs(up.amplitude(0) - 1.0) < 1e-15);

    const StateVector up_neg = apply_perm_unitary(
        basis_state(2, 3), cyclic_shift(4, ShiftDirection::up, -1), both);
    CHECK(std::abs(up_neg.amplitude(0) + 1.0) < 1e-15);

    const StateVector down = apply_perm_unitary(
        basis_state(2, 2), cyclic_shift(4, ShiftDirection::down, +1), both);
    CHECK(std::abs(down.amplitude(1) - 1.0) < 1e-15);

    CHECK_THROWS_AS(cyclic_shift(1, ShiftDirection::up, +1), std::invalid_argument);
    CHECK_THROWS_AS(cyclic_shift(4, ShiftDirection::up, 2), std::invalid_argument);
}

TEST_CASE("PermutationPhaseUnitary validates its invariants") {
    CHECK_THROWS_AS(PermutationPhaseUnitary({0, 0}, {1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PermutationPhaseUnitary({1, 0}, {2.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PermutationPhaseUnitary({0}, {1.0}), std::invalid_argument);
}

TEST_CASE("shift expansions are unitary and reproduce the ladder split") {
    for (std::size_t dim : {2, 4, 8, 16}) {
        for (auto direction : {ShiftDirection::up, ShiftDirection::down}) {
            for (int sign : {+1, -1}) {
                const ComplexMatrix u = cyclic_shift(dim, direction, sign).dense();
                CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(dim)) <= 1e-12);
            }
        }

        // (up+ + up-)/2 is the pure raising chain, (up+ - up-)/2 the wrap term
        const ComplexMatrix u0 = cyclic_shift(dim, ShiftDirection::up, +1).dense();
        const ComplexMatrix u1 = cyclic_shift(dim, ShiftDirection::up, -1).dense();
        ComplexMatrix raise_chain(dim, dim);
        for (std::size_t i = 0; i + 1 < dim; ++i) raise_chain.at(i + 1, i) = 1.0;
        ComplexMatrix wrap(dim, dim);
        wrap.at(0, dim - 1) = 1.0;
        CHECK((u0 + u1) * complex_t{0.5, 0.0} == raise_chain);
        CHECK((u0 - u1) * complex_t{0.5, 0.0} == wrap);
    }
}

TEST_CASE("apply_single acts on the addressed qubit only") {
    const SingleQubitGate h = hadamard();

    const StateVector top = apply_single(basis_state(2, 0), h, 0);
    CHECK(std::abs(top.amplitude(0) - r2) < 1e-15);
    CHECK(std::abs(top.amplitude(2) - r2) < 1e-15);

    const StateVector bottom = apply_single(basis_state(2, 0), h, 1);
    CHECK(std::abs(bottom.amplitude(0) - r2) < 1e-15);
    CHECK(std::abs(bottom.amplitude(1) - r2) < 1e-15);

    // H on both qubits of |00> gives the uniform superposition
    const StateVector uniform = apply_single(bottom, h, 0);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(uniform.amplitude(i) - 0.5) < 1e-15);

    CHECK_THROWS_AS(apply_single(basis_state(2, 0), h, 2), std::invalid_argument);
}

TEST_CASE("apply_single preserves the norm of random states") {
    auto rng = make_rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        const StateVector s = random_state(4, rng);
        const StateVector t = apply_single(s, coin_gate(33.0), rep % 4);
        CHECK(std::abs(t.norm() - 1.0) < 1e-12);
        CHECK(t.is_normalized());
    }
}

TEST_CASE("controlled permutation acts only on matching control patterns") {
    const RegisterSlice work({2, 3});
    const RegisterSlice ancilla({0, 1});
    const PermutationPhaseUnitary u0 = cyclic_shift(4, ShiftDirection::up, +1);
    const PermutationPhaseUnitary u1 = cyclic_shift(4, ShiftDirection::up, -1);

    // |00>|11> -> |00>|00| under U0 controlled on 00 (wrap 3 -> 0)
    const StateVector hit =
        apply_perm_unitary(basis_state(4, 3), u0, work, ControlSpec(ancilla, "00"));
    CHECK(std::abs(hit.amplitude(0) - 1.0) < 1e-15);

    // |10>|11> is untouched by a 00-controlled operation
    const StateVector miss =
        apply_perm_unitary(basis_state(4, 11), u0, work, ControlSpec(ancilla, "00"));
    CHECK(std::abs(miss.amplitude(11) - 1.0) < 1e-15);

    // |01>|11> -> -|01>|00> under U1 controlled on 01
    const StateVector neg =
        apply_perm_unitary(basis_state(4, 7), u1, work, ControlSpec(ancilla, "01"));
    CHECK(std::abs(neg.amplitude(4) + 1.0) < 1e-15);
}

TEST_CASE("apply_perm_unitary rejects inconsistent registers") {
    const PermutationPhaseUnitary u = cyclic_shift(4, ShiftDirection::up, +1);
    CHECK_THROWS_AS(apply_perm_unitary(basis_state(3, 0), u, RegisterSlice({0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_perm_unitary(basis_state(3, 0), u, RegisterSlice({0, 1}),
                                       ControlSpec(RegisterSlice({1}), "0")),
                    std::invalid_argument);
    CHECK_THROWS_AS(ControlSpec(RegisterSlice({0, 1}), "0"), std::invalid_argument);
    CHECK_THROWS_AS(ControlSpec(RegisterSlice({0}), "2"), std::invalid_argument);
}

TEST_CASE("permutation kernels match the dense embedding on random states") {
    auto rng = make_rng(29);
    const std::size_t n = 4;

    struct Case {
        std::vector<std::size_t> slice;
        std::vector<std::size_t> controls;
        std::string pattern;
    };
    // contiguous, scattered, and reordered slices; with and without controls
    const std::vector<Case> cases = {
        {{0, 1, 2, 3}, {}, ""},
        {{1, 2}, {}, ""},
        {{3, 0}, {}, ""},
        {{2, 3}, {0, 1}, "01"},
        {{1, 3}, {0}, "1"},
    };

    for (const auto& c : cases) {
        const PermutationPhaseUnitary u =
            cyclic_shift(pow2(c.slice.size()), ShiftDirection::down, -1);
        const ComplexMatrix full = embed_dense(n, u.dense(), c.slice, c.controls, c.pattern);
        for (int rep = 0; rep < 5; ++rep) {
            const StateVector s = random_state(n, rng);
            std::optional<ControlSpec> ctrl;
            if (!c.controls.empty()) ctrl.emplace(RegisterSlice(c.controls), c.pattern);
            const StateVector fast = apply_perm_unitary(s, u, RegisterSlice(c.slice), ctrl);
            const cvector_t slow = full * s.amplitudes();
            CHECK(max_abs_diff(fast.amplitudes(), slow) < 1e-12);
            CHECK(std::abs(fast.norm() - 1.0) < 1e-12);
        }
    }
}
