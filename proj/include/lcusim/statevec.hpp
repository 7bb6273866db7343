#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcusim/bits.hpp"

namespace lcusim {

using complex_t = std::complex<double>;
using cvector_t = std::vector<complex_t>;

// |norm - 1| bound for a state to count as normalized
inline constexpr double norm_tol = 1e-12;
// accepted input drift before exact renormalization (file/user input)
inline constexpr double input_norm_tol = 1e-9;
// outcomes below this probability carry no post-state
inline constexpr double prob_floor = 1e-14;

namespace detail {

inline double l2_norm(const cvector_t& amps) {
    double sum = 0.0;
    for (const auto& a : amps) sum += std::norm(a);
    return std::sqrt(sum);
}

inline std::string bit_string(std::size_t pattern, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t j = 0; j < width; ++j)
        if (bit_at(pattern, width - 1 - j)) s[j] = '1';
    return s;
}

}  // namespace detail

/*
 * Amplitude vector over the computational basis of an n-qubit register.
 * Immutable after construction. A state whose L2 norm is within norm_tol
 * of 1 is tagged normalized; anything else is a sub-normalized
 * intermediate (a raw measurement branch, never norm > 1).
 */
class StateVector {
public:
    StateVector(std::size_t num_qubits, cvector_t amplitudes)
        : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
        if (num_qubits_ < 1)
            throw std::invalid_argument("StateVector: need at least one qubit");
        if (amps_.size() != pow2(num_qubits_))
            throw std::invalid_argument(
                "StateVector: expected 2^" + std::to_string(num_qubits_) +
                " amplitudes, got " + std::to_string(amps_.size()));
        const double n = detail::l2_norm(amps_);
        if (n > 1.0 + norm_tol)
            throw std::invalid_argument("StateVector: norm " + std::to_string(n) +
                                        " exceeds 1");
        normalized_ = std::abs(n - 1.0) <= norm_tol;
    }

    std::size_t num_qubits() const { return num_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const cvector_t& amplitudes() const { return amps_; }
    complex_t amplitude(std::size_t index) const { return amps_.at(index); }
    bool is_normalized() const { return normalized_; }
    double norm() const { return detail::l2_norm(amps_); }

private:
    std::size_t num_qubits_;
    cvector_t amps_;
    bool normalized_;
};

// Ordered selection of distinct qubits; the first listed qubit is the most
// significant bit of the patterns/subindices read off the slice.
class RegisterSlice {
public:
    explicit RegisterSlice(std::vector<std::size_t> qubit_indices)
        : indices_(std::move(qubit_indices)) {
        if (indices_.empty())
            throw std::invalid_argument("RegisterSlice: empty slice");
        auto sorted = indices_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("RegisterSlice: duplicate qubit index");
    }

    // consecutive qubits first, first+1, ..., first+count-1
    static RegisterSlice range(std::size_t first, std::size_t count) {
        std::vector<std::size_t> idx(count);
        for (std::size_t j = 0; j < count; ++j) idx[j] = first + j;
        return RegisterSlice(std::move(idx));
    }

    void validate_for(std::size_t num_qubits) const {
        for (std::size_t q : indices_)
            if (q >= num_qubits)
                throw std::invalid_argument("RegisterSlice: qubit " + std::to_string(q) +
                                            " out of range for " +
                                            std::to_string(num_qubits) + " qubits");
    }

    std::size_t size() const { return indices_.size(); }
    const std::vector<std::size_t>& indices() const { return indices_; }
    bool contains(std::size_t q) const {
        return std::find(indices_.begin(), indices_.end(), q) != indices_.end();
    }

private:
    std::vector<std::size_t> indices_;
};

// One branch of a projective measurement on a register slice.
struct OutcomeRecord {
    std::string outcome_bits;                 // slice order, first qubit leftmost
    double probability = 0.0;
    std::optional<StateVector> post_state;    // null below prob_floor (or nothing left unmeasured)
};

inline StateVector basis_state(std::size_t num_qubits, std::size_t index) {
    if (index >= pow2(num_qubits))
        throw std::invalid_argument("basis_state: index " + std::to_string(index) +
                                    " out of range for " + std::to_string(num_qubits) +
                                    " qubits");
    cvector_t amps(pow2(num_qubits), complex_t{0.0, 0.0});
    amps[index] = complex_t{1.0, 0.0};
    return StateVector(num_qubits, std::move(amps));
}

// When require_normalized is set the norm must sit within input_norm_tol of 1
// and is then snapped to exactly 1; otherwise amplitudes are taken verbatim
// (and must not exceed unit norm).
inline StateVector from_amplitudes(std::size_t num_qubits, cvector_t amps,
                                   bool require_normalized) {
    if (amps.size() != pow2(num_qubits))
        throw std::invalid_argument("from_amplitudes: expected 2^" +
                                    std::to_string(num_qubits) + " amplitudes, got " +
                                    std::to_string(amps.size()));
    if (require_normalized) {
        const double n = detail::l2_norm(amps);
        if (std::abs(n - 1.0) > input_norm_tol)
            throw std::invalid_argument("from_amplitudes: norm " + std::to_string(n) +
                                        " is not within 1e-9 of 1");
        for (auto& a : amps) a /= n;
    }
    return StateVector(num_qubits, std::move(amps));
}

// <a|b>, conjugating a
inline complex_t inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits())
        throw std::invalid_argument("inner_product: qubit count mismatch");
    complex_t sum{0.0, 0.0};
    const auto& va = a.amplitudes();
    const auto& vb = b.amplitudes();
    for (std::size_t i = 0; i < va.size(); ++i) sum += std::conj(va[i]) * vb[i];
    return sum;
}

// a's qubits occupy the more significant positions of the composite index
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    const std::size_t db = b.dim();
    cvector_t out(a.dim() * db);
    const auto& va = a.amplitudes();
    const auto& vb = b.amplitudes();
    for (std::size_t i = 0; i < va.size(); ++i)
        for (std::size_t j = 0; j < db; ++j) out[i * db + j] = va[i] * vb[j];
    return StateVector(a.num_qubits() + b.num_qubits(), std::move(out));
}

namespace detail {

// splits a basis index into (slice pattern, remainder index over unmeasured
// qubits in ascending qubit order)
struct IndexSplitter {
    std::vector<std::size_t> slice_pos;   // bit position per slice qubit, MSB first
    std::vector<std::size_t> rest_pos;    // bit position per unmeasured qubit, MSB first

    IndexSplitter(std::size_t num_qubits, const RegisterSlice& r) {
        r.validate_for(num_qubits);
        for (std::size_t q : r.indices()) slice_pos.push_back(bit_pos(num_qubits, q));
        for (std::size_t q = 0; q < num_qubits; ++q)
            if (!r.contains(q)) rest_pos.push_back(bit_pos(num_qubits, q));
    }

    std::size_t pattern_of(std::size_t z) const {
        std::size_t k = 0;
        for (std::size_t pos : slice_pos) k = (k << 1) | bit_at(z, pos);
        return k;
    }

    std::size_t rest_of(std::size_t z) const {
        std::size_t rest = 0;
        for (std::size_t pos : rest_pos) rest = (rest << 1) | bit_at(z, pos);
        return rest;
    }
};

}  // namespace detail

// Full projective measurement of the slice: one record per bit pattern,
// post-states renormalized on the unmeasured qubits.
inline std::vector<OutcomeRecord> measure_register(const StateVector& s,
                                                   const RegisterSlice& r) {
    if (!s.is_normalized())
        throw std::invalid_argument("measure_register: state must be normalized");
    const std::size_t n = s.num_qubits();
    const detail::IndexSplitter split(n, r);
    const std::size_t num_patterns = pow2(r.size());
    const std::size_t rest_dim = pow2(n - r.size());
    const bool full_measurement = r.size() == n;

    std::vector<cvector_t> branch(num_patterns, cvector_t(rest_dim, complex_t{0.0, 0.0}));
    std::vector<double> prob(num_patterns, 0.0);
    const auto& amps = s.amplitudes();
    for (std::size_t z = 0; z < amps.size(); ++z) {
        const std::size_t k = split.pattern_of(z);
        branch[k][split.rest_of(z)] = amps[z];
        prob[k] += std::norm(amps[z]);
    }

    std::vector<OutcomeRecord> out;
    out.reserve(num_patterns);
    for (std::size_t k = 0; k < num_patterns; ++k) {
        OutcomeRecord rec;
        rec.outcome_bits = detail::bit_string(k, r.size());
        rec.probability = prob[k];
        if (!full_measurement && prob[k] >= prob_floor) {
            const double inv = 1.0 / std::sqrt(prob[k]);
            for (auto& a : branch[k]) a *= inv;
            rec.post_state.emplace(n - r.size(), std::move(branch[k]));
        }
        out.push_back(std::move(rec));
    }
    return out;
}

// probability of reading each bit pattern off the slice
inline std::vector<double> marginal_distribution(const StateVector& s,
                                                 const RegisterSlice& r) {
    if (!s.is_normalized())
        throw std::invalid_argument("marginal_distribution: state must be normalized");
    const detail::IndexSplitter split(s.num_qubits(), r);
    std::vector<double> prob(pow2(r.size()), 0.0);
    const auto& amps = s.amplitudes();
    for (std::size_t z = 0; z < amps.size(); ++z)
        prob[split.pattern_of(z)] += std::norm(amps[z]);
    return prob;
}

}
