#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcusim/gates.hpp"
#include "lcusim/statevec.hpp"

namespace lcusim {

/*
 * Discrete-time quantum walk on the cycle of 2^w positions. Layout:
 * walker qubits most significant, the single coin qubit least significant,
 * so a composite ket reads |position bits, coin bit>. Each step tosses the
 * coin and then shifts the walker, position +1 under coin 1 and -1 under
 * coin 0, both wrapping cyclically.
 */
struct WalkConfig {
    std::size_t walker_qubits;
    std::size_t steps;
    double coin_angle_deg;
    StateVector initial_walker;
    StateVector initial_coin;

    void validate() const {
        if (walker_qubits < 1)
            throw std::invalid_argument("WalkConfig: need at least one walker qubit");
        if (initial_walker.num_qubits() != walker_qubits)
            throw std::invalid_argument("WalkConfig: initial walker state has wrong size");
        if (initial_coin.num_qubits() != 1)
            throw std::invalid_argument("WalkConfig: coin state must be a single qubit");
        if (!initial_walker.is_normalized() || !initial_coin.is_normalized())
            throw std::invalid_argument("WalkConfig: initial states must be normalized");
    }
};

struct PositionDistribution {
    std::vector<double> probabilities;  // length 2^walker_qubits
};

// coin toss, then the coin-conditioned cyclic shift
inline StateVector walk_step(const StateVector& s, double coin_angle_deg) {
    const std::size_t n = s.num_qubits();
    if (n < 2)
        throw std::invalid_argument("walk_step: need a walker register plus a coin qubit");
    const std::size_t w = n - 1;
    const std::size_t positions = pow2(w);
    const RegisterSlice walker = RegisterSlice::range(0, w);
    const RegisterSlice coin({w});

    StateVector out = apply_single(s, coin_gate(coin_angle_deg), w);
    out = apply_perm_unitary(out, cyclic_shift(positions, ShiftDirection::up, +1), walker,
                             ControlSpec(coin, "1"));
    out = apply_perm_unitary(out, cyclic_shift(positions, ShiftDirection::down, +1), walker,
                             ControlSpec(coin, "0"));
    return out;
}

// full walk; returns the walker position marginal with the coin traced out
inline PositionDistribution run_walk(const WalkConfig& cfg) {
    cfg.validate();
    StateVector state = tensor(cfg.initial_walker, cfg.initial_coin);
    for (std::size_t t = 0; t < cfg.steps; ++t) state = walk_step(state, cfg.coin_angle_deg);
    return PositionDistribution{
        marginal_distribution(state, RegisterSlice::range(0, cfg.walker_qubits))};
}

/*
 * Same engine as run_walk, kept as a named entry point for superposed
 * starts. For an (|x0> + |x0+1>)/sqrt(2) start the even and odd components
 * occupy disjoint position-parity sectors after any fixed number of steps,
 * so the result equals the average of the two single-start distributions,
 * one shifted cyclically by +1.
 */
inline PositionDistribution run_walk_superposed(const WalkConfig& cfg) {
    return run_walk(cfg);
}

struct WalkMoments {
    double mean_displacement = 0.0;
    double stddev = 0.0;
};

// moments of signed displacement from `center`, positions unwrapped into
// (-2^(w-1), 2^(w-1)]; meaningful while the spread stays well below half
// the cycle
inline WalkMoments walk_statistics(const PositionDistribution& d, std::size_t center) {
    const std::size_t size = d.probabilities.size();
    if (size < 2)
        throw std::invalid_argument("walk_statistics: distribution too small");
    if (center >= size)
        throw std::invalid_argument("walk_statistics: center out of range");
    const long half = static_cast<long>(size / 2);
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t x = 0; x < size; ++x) {
        const double p = d.probabilities[x];
        long delta = static_cast<long>((x + size - center) % size);
        if (delta > half) delta -= static_cast<long>(size);
        mean += p * static_cast<double>(delta);
        second += p * static_cast<double>(delta) * static_cast<double>(delta);
    }
    const double variance = second - mean * mean;
    return WalkMoments{mean, std::sqrt(std::max(0.0, variance))};
}

}
