#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcusim/matrix.hpp"
#include "lcusim/statevec.hpp"

namespace lcusim {

inline constexpr double unitarity_tol = 1e-12;

class SingleQubitGate {
public:
    SingleQubitGate(complex_t m00, complex_t m01, complex_t m10, complex_t m11)
        : m_{m00, m01, m10, m11} {
        // U U^dag = I within unitarity_tol, rejected eagerly
        const complex_t r00 = m00 * std::conj(m00) + m01 * std::conj(m01);
        const complex_t r01 = m00 * std::conj(m10) + m01 * std::conj(m11);
        const complex_t r11 = m10 * std::conj(m10) + m11 * std::conj(m11);
        if (std::abs(r00 - 1.0) > unitarity_tol || std::abs(r11 - 1.0) > unitarity_tol ||
            std::abs(r01) > unitarity_tol)
            throw std::invalid_argument("SingleQubitGate: matrix is not unitary");
    }

    complex_t at(std::size_t r, std::size_t c) const { return m_[2 * r + c]; }

private:
    std::array<complex_t, 4> m_;
};

inline SingleQubitGate hadamard() {
    const double h = 1.0 / std::numbers::sqrt2;
    return SingleQubitGate(h, h, h, -h);
}

// coin toss rotation [[cos, -sin], [sin, cos]], angle in degrees
inline SingleQubitGate coin_gate(double phi_degrees) {
    const double phi = phi_degrees * std::numbers::pi / 180.0;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return SingleQubitGate(c, -s, s, c);
}

// Which value of each control qubit activates an operation.
class ControlSpec {
public:
    ControlSpec(RegisterSlice control_qubits, std::string control_pattern)
        : controls_(std::move(control_qubits)), pattern_(std::move(control_pattern)) {
        if (pattern_.size() != controls_.size())
            throw std::invalid_argument("ControlSpec: pattern length must match control count");
        for (char b : pattern_)
            if (b != '0' && b != '1')
                throw std::invalid_argument("ControlSpec: pattern must be over {0,1}");
    }

    const RegisterSlice& controls() const { return controls_; }
    const std::string& pattern() const { return pattern_; }

private:
    RegisterSlice controls_;
    std::string pattern_;
};

/*
 * Basis permutation with a per-source phase: U|i> = phase_of[i] |target_of[i]>.
 * Covers the cyclic increment/decrement unitaries and the walk shift; applying
 * one is an O(2^n) index remap, never a dense product.
 */
class PermutationPhaseUnitary {
public:
    PermutationPhaseUnitary(std::vector<std::size_t> target_of, cvector_t phase_of)
        : target_of_(std::move(target_of)), phase_of_(std::move(phase_of)) {
        const std::size_t d = target_of_.size();
        if (d < 2 || phase_of_.size() != d)
            throw std::invalid_argument("PermutationPhaseUnitary: need dim >= 2 and matching phases");
        std::vector<bool> hit(d, false);
        for (std::size_t t : target_of_) {
            if (t >= d || hit[t])
                throw std::invalid_argument("PermutationPhaseUnitary: target map is not a bijection");
            hit[t] = true;
        }
        for (const auto& ph : phase_of_)
            if (std::abs(std::abs(ph) - 1.0) > unitarity_tol)
                throw std::invalid_argument("PermutationPhaseUnitary: phases must have unit modulus");
    }

    std::size_t dim() const { return target_of_.size(); }
    std::size_t target_of(std::size_t i) const { return target_of_[i]; }
    complex_t phase_of(std::size_t i) const { return phase_of_[i]; }

    ComplexMatrix dense() const {
        ComplexMatrix m(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i) m.at(target_of_[i], i) = phase_of_[i];
        return m;
    }

private:
    std::vector<std::size_t> target_of_;
    cvector_t phase_of_;
};

enum class ShiftDirection { up, down };

// Cyclic increment/decrement on [0, dim) whose wrap term carries wrap_sign.
// up/+1, up/-1, down/+1, down/-1 are the four select-stage unitaries of the
// ladder decomposition; up/+1 and down/+1 double as the walk shift halves.
inline PermutationPhaseUnitary cyclic_shift(std::size_t dim, ShiftDirection direction,
                                            int wrap_sign) {
    if (dim < 2)
        throw std::invalid_argument("cyclic_shift: dim must be at least 2");
    if (wrap_sign != 1 && wrap_sign != -1)
        throw std::invalid_argument("cyclic_shift: wrap_sign must be +1 or -1");
    std::vector<std::size_t> target(dim);
    cvector_t phase(dim, complex_t{1.0, 0.0});
    if (direction == ShiftDirection::up) {
        for (std::size_t i = 0; i + 1 < dim; ++i) target[i] = i + 1;
        target[dim - 1] = 0;
        phase[dim - 1] = static_cast<double>(wrap_sign);
    } else {
        for (std::size_t i = 1; i < dim; ++i) target[i] = i - 1;
        target[0] = dim - 1;
        phase[0] = static_cast<double>(wrap_sign);
    }
    return PermutationPhaseUnitary(std::move(target), std::move(phase));
}

// gate on `target`, identity elsewhere
inline StateVector apply_single(const StateVector& s, const SingleQubitGate& g,
                                std::size_t target) {
    const std::size_t n = s.num_qubits();
    if (target >= n)
        throw std::invalid_argument("apply_single: target qubit out of range");
    const std::size_t stride = pow2(bit_pos(n, target));
    const auto& in = s.amplitudes();
    cvector_t out(in.size());
    const complex_t g00 = g.at(0, 0), g01 = g.at(0, 1), g10 = g.at(1, 0), g11 = g.at(1, 1);
    for (std::size_t base = 0; base < in.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            out[i0] = g00 * in[i0] + g01 * in[i1];
            out[i1] = g10 * in[i0] + g11 * in[i1];
        }
    }
    return StateVector(n, std::move(out));
}

namespace detail {

// contiguous ascending slices read off a basis index with one shift+mask
struct SliceField {
    bool contiguous = false;
    std::size_t shift = 0;
    std::size_t mask = 0;
    std::vector<std::size_t> pos;  // generic path, MSB first

    SliceField(std::size_t num_qubits, const RegisterSlice& r) {
        r.validate_for(num_qubits);
        const auto& idx = r.indices();
        for (std::size_t q : idx) pos.push_back(bit_pos(num_qubits, q));
        contiguous = true;
        for (std::size_t j = 0; j + 1 < idx.size(); ++j)
            if (idx[j] + 1 != idx[j + 1]) { contiguous = false; break; }
        if (contiguous) {
            shift = bit_pos(num_qubits, idx.back());
            mask = (pow2(idx.size()) - 1) << shift;
        }
    }

    std::size_t extract(std::size_t z) const {
        if (contiguous) return (z & mask) >> shift;
        std::size_t i = 0;
        for (std::size_t p : pos) i = (i << 1) | bit_at(z, p);
        return i;
    }

    std::size_t replace(std::size_t z, std::size_t value) const {
        if (contiguous) return (z & ~mask) | (value << shift);
        const std::size_t k = pos.size();
        for (std::size_t j = 0; j < k; ++j)
            z = with_bit(z, pos[j], bit_at(value, k - 1 - j));
        return z;
    }
};

}  // namespace detail

/*
 * Remaps the slice subindex i -> target_of[i] (amplitude times phase_of[i])
 * on every basis state whose control bits match the pattern; all other
 * basis states pass through. Matching states permute among themselves, so
 * a single output write per source index suffices.
 */
inline StateVector apply_perm_unitary(const StateVector& s, const PermutationPhaseUnitary& u,
                                      const RegisterSlice& targets,
                                      const std::optional<ControlSpec>& control = std::nullopt) {
    const std::size_t n = s.num_qubits();
    const detail::SliceField field(n, targets);
    if (pow2(targets.size()) != u.dim())
        throw std::invalid_argument("apply_perm_unitary: operator dimension must be 2^(slice size)");

    std::size_t cmask = 0, cval = 0;
    if (control) {
        control->controls().validate_for(n);
        for (std::size_t j = 0; j < control->controls().size(); ++j) {
            const std::size_t q = control->controls().indices()[j];
            if (targets.contains(q))
                throw std::invalid_argument("apply_perm_unitary: control and target registers overlap");
            const std::size_t pos = bit_pos(n, q);
            cmask |= pow2(pos);
            if (control->pattern()[j] == '1') cval |= pow2(pos);
        }
    }

    const auto& in = s.amplitudes();
    cvector_t out(in.size());
    for (std::size_t z = 0; z < in.size(); ++z) {
        if ((z & cmask) != cval) {
            out[z] = in[z];
            continue;
        }
        const std::size_t i = field.extract(z);
        out[field.replace(z, u.target_of(i))] = u.phase_of(i) * in[z];
    }
    return StateVector(n, std::move(out));
}

}
