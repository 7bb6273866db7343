#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcusim/gates.hpp"
#include "lcusim/matrix.hpp"
#include "lcusim/statevec.hpp"

namespace lcusim {

/*
 * Truncated ladder operators on the number basis |0> ... |dim-1>:
 *
 *   add            |N> -> |N+1>, annihilates the top state
 *   sub            |N> -> |N-1>, annihilates |0>
 *   add_boundary   |dim-1> -> |0>, zero elsewhere (rank 1)
 *   sub_boundary   |0> -> |dim-1>, zero elsewhere (rank 1)
 *   bosonic_create      |N> -> sqrt(N+1) |N+1>
 *   bosonic_annihilate  |N> -> sqrt(N)   |N-1>
 *
 * add/sub are the amplitude-free pair the circuit below realizes; the
 * boundary pair is what the same circuit produces on the other two ancilla
 * outcomes. The bosonic pair is provided as matrices only (adjointness and
 * documentation); no circuit synthesizes the sqrt amplitude factors here.
 */
enum class LadderKind {
    add,
    sub,
    add_boundary,
    sub_boundary,
    bosonic_create,
    bosonic_annihilate,
};

inline const char* ladder_kind_name(LadderKind kind) {
    switch (kind) {
        case LadderKind::add: return "add";
        case LadderKind::sub: return "sub";
        case LadderKind::add_boundary: return "add_boundary";
        case LadderKind::sub_boundary: return "sub_boundary";
        case LadderKind::bosonic_create: return "bosonic_create";
        case LadderKind::bosonic_annihilate: return "bosonic_annihilate";
    }
    return "?";
}

struct LadderOperator {
    std::size_t dim = 0;
    LadderKind kind = LadderKind::add;
    ComplexMatrix matrix;
};

inline LadderOperator ladder_matrix(std::size_t dim, LadderKind kind) {
    if (dim < 2)
        throw std::invalid_argument("ladder_matrix: dim must be at least 2");
    ComplexMatrix m(dim, dim);
    switch (kind) {
        case LadderKind::add:
            for (std::size_t i = 0; i + 1 < dim; ++i) m.at(i + 1, i) = 1.0;
            break;
        case LadderKind::sub:
            for (std::size_t i = 1; i < dim; ++i) m.at(i - 1, i) = 1.0;
            break;
        case LadderKind::add_boundary:
            m.at(0, dim - 1) = 1.0;
            break;
        case LadderKind::sub_boundary:
            m.at(dim - 1, 0) = 1.0;
            break;
        case LadderKind::bosonic_create:
            for (std::size_t i = 0; i + 1 < dim; ++i)
                m.at(i + 1, i) = std::sqrt(static_cast<double>(i + 1));
            break;
        case LadderKind::bosonic_annihilate:
            for (std::size_t i = 1; i < dim; ++i)
                m.at(i - 1, i) = std::sqrt(static_cast<double>(i));
            break;
    }
    return LadderOperator{dim, kind, std::move(m)};
}

// plain matrix-vector product; the brute-force reference for the circuit
inline cvector_t apply_operator(const LadderOperator& op, const cvector_t& psi) {
    if (psi.size() != op.dim)
        throw std::invalid_argument("apply_operator: vector length must equal operator dim");
    return op.matrix * psi;
}

/*
 * One run of the two-ancilla circuit on a work register of w qubits
 * (operator dimension 2^w):
 *
 *   |00> (x) |psi>  --H(x)H on ancilla-->  --select C-U0..C-U3-->  --H on
 *   second ancilla-->  measure ancilla
 *
 * yields sqrt(1/2) times  add|psi> on ancilla 00,  add_boundary|psi> on 01,
 * sub|psi> on 10,  sub_boundary|psi> on 11. Interior states split 50/50
 * between the 00 and 10 outcomes.
 */
struct LcuResult {
    struct Branch {
        OutcomeRecord record;   // ancilla pattern, probability, normalized post-state
        cvector_t raw;          // unnormalized branch vector, sqrt(1/2) * Op|psi>
    };
    std::array<Branch, 4> branches;  // ancilla patterns 00, 01, 10, 11

    static constexpr std::array<LadderKind, 4> branch_kinds = {
        LadderKind::add, LadderKind::add_boundary, LadderKind::sub, LadderKind::sub_boundary};

    const Branch& branch(const std::string& ancilla_bits) const {
        for (const auto& b : branches)
            if (b.record.outcome_bits == ancilla_bits) return b;
        throw std::invalid_argument("LcuResult: no branch " + ancilla_bits);
    }
};

inline LcuResult lcu_circuit(const StateVector& work) {
    if (!work.is_normalized())
        throw std::invalid_argument("lcu_circuit: work state must be normalized");
    const std::size_t w = work.num_qubits();
    const std::size_t dim = pow2(w);

    StateVector full = tensor(basis_state(2, 0), work);
    const SingleQubitGate h = hadamard();
    full = apply_single(full, h, 0);
    full = apply_single(full, h, 1);

    const RegisterSlice work_slice = RegisterSlice::range(2, w);
    const RegisterSlice ancilla({0, 1});
    const std::array<std::pair<const char*, PermutationPhaseUnitary>, 4> select = {{
        {"00", cyclic_shift(dim, ShiftDirection::up, +1)},
        {"01", cyclic_shift(dim, ShiftDirection::up, -1)},
        {"10", cyclic_shift(dim, ShiftDirection::down, +1)},
        {"11", cyclic_shift(dim, ShiftDirection::down, -1)},
    }};
    for (const auto& [pattern, u] : select)
        full = apply_perm_unitary(full, u, work_slice, ControlSpec(ancilla, pattern));

    full = apply_single(full, h, 1);

    auto records = measure_register(full, ancilla);
    LcuResult res;
    const auto& amps = full.amplitudes();
    for (std::size_t a = 0; a < 4; ++a) {
        res.branches[a].record = std::move(records[a]);
        // the ancilla occupies the top two bits, so branch a is a contiguous block
        res.branches[a].raw.assign(amps.begin() + a * dim, amps.begin() + (a + 1) * dim);
    }
    return res;
}

// max elementwise deviation of every circuit branch from sqrt(1/2) * Op|psi>
inline double lcu_vs_oracle_check(const StateVector& work) {
    const LcuResult res = lcu_circuit(work);
    const std::size_t dim = work.dim();
    const double w = 1.0 / std::numbers::sqrt2;
    double dev = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
        const auto expect =
            apply_operator(ladder_matrix(dim, LcuResult::branch_kinds[a]), work.amplitudes());
        for (std::size_t i = 0; i < dim; ++i)
            dev = std::max(dev, std::abs(res.branches[a].raw[i] - w * expect[i]));
    }
    return dev;
}

enum class ChainStep { add, sub };

struct ChainResult {
    StateVector final_state;
    double success_probability = 0.0;
};

// Runs the circuit once per program step, post-selecting ancilla 00 for add
// and 10 for sub; branch probabilities multiply.
inline ChainResult chain_apply(const StateVector& work, const std::vector<ChainStep>& program) {
    if (program.empty())
        throw std::invalid_argument("chain_apply: program must be nonempty");
    StateVector state = work;
    double probability = 1.0;
    for (std::size_t k = 0; k < program.size(); ++k) {
        const LcuResult res = lcu_circuit(state);
        const auto& branch = res.branches[program[k] == ChainStep::add ? 0 : 2];
        if (!branch.record.post_state)
            throw std::runtime_error(
                "chain_apply: step " + std::to_string(k) + " (" +
                (program[k] == ChainStep::add ? "add" : "sub") +
                ") has zero branch probability");
        probability *= branch.record.probability;
        state = *branch.record.post_state;
    }
    return ChainResult{std::move(state), probability};
}

}
