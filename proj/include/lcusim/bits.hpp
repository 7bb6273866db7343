#pragma once

#include <cstddef>

/*
 * Basis-index convention used throughout: qubit 0 is the MOST significant
 * bit of a basis index, so the ket |b0 b1 ... b_{n-1}> has index
 * sum_k b_k * 2^(n-1-k). Reading a ket string left to right therefore
 * gives the integer it encodes (|01> -> 1, |10000000> -> 128).
 */

namespace lcusim {

inline constexpr std::size_t pow2(std::size_t exponent) {
    return std::size_t{1} << exponent;
}

// bit position (counted from the LSB) of `qubit` inside an n-qubit index
inline constexpr std::size_t bit_pos(std::size_t num_qubits, std::size_t qubit) {
    return num_qubits - 1 - qubit;
}

inline constexpr unsigned bit_at(std::size_t index, std::size_t pos) {
    return static_cast<unsigned>((index >> pos) & 1U);
}

inline constexpr std::size_t with_bit(std::size_t index, std::size_t pos, unsigned value) {
    const std::size_t mask = std::size_t{1} << pos;
    return value ? (index | mask) : (index & ~mask);
}

}
