#pragma once

#include <cmath>
#include <cstddef>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcusim/matrix.hpp"
#include "lcusim/statevec.hpp"

namespace lcusim {

inline constexpr double density_hermitian_tol = 1e-10;
inline constexpr double density_trace_tol = 1e-10;
inline constexpr double density_psd_tol = 1e-9;

/*
 * Hermitian matrix with unit trace (or, for the tagged deviation variant,
 * zero trace: a density matrix minus its maximally mixed component).
 */
class DensityMatrix {
public:
    // strict construction: Hermitian, trace 1, eigenvalues >= -density_psd_tol
    static DensityMatrix from_matrix(ComplexMatrix entries) {
        DensityMatrix rho(std::move(entries), false);
        rho.check_hermitian();
        rho.check_trace(1.0);
        if (rho.min_eigenvalue() < -density_psd_tol)
            throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
        return rho;
    }

    // trace-0 deviation variant (indefinite by construction, no PSD check)
    static DensityMatrix deviation_from_matrix(ComplexMatrix entries) {
        DensityMatrix rho(std::move(entries), true);
        rho.check_hermitian();
        rho.check_trace(0.0);
        return rho;
    }

    // tomography path: Hermitian/trace enforced, PSD violations only warned
    static DensityMatrix from_reconstruction(ComplexMatrix entries) {
        DensityMatrix rho(std::move(entries), false);
        rho.check_hermitian();
        rho.check_trace(1.0);
        const double lo = rho.min_eigenvalue();
        if (lo < -density_psd_tol)
            std::cerr << "warning: reconstructed density matrix is unphysical "
                         "(min eigenvalue "
                      << lo << ")\n";
        return rho;
    }

    std::size_t dim() const { return entries_.rows(); }
    const ComplexMatrix& entries() const { return entries_; }
    bool is_deviation() const { return deviation_; }

    double purity() const { return trace_product(entries_, entries_).real(); }
    double min_eigenvalue() const {
        const auto eig = hermitian_eigenvalues(entries_);
        return eig.front();
    }

private:
    DensityMatrix(ComplexMatrix entries, bool deviation)
        : entries_(std::move(entries)), deviation_(deviation) {
        if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
            throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
    }

    void check_hermitian() const {
        for (std::size_t r = 0; r < dim(); ++r)
            for (std::size_t c = r; c < dim(); ++c)
                if (std::abs(entries_.at(r, c) - std::conj(entries_.at(c, r))) >
                    density_hermitian_tol)
                    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }

    void check_trace(double expected) const {
        if (std::abs(entries_.trace() - expected) > density_trace_tol)
            throw std::invalid_argument("DensityMatrix: trace must be " +
                                        std::to_string(expected));
    }

    ComplexMatrix entries_;
    bool deviation_;
};

inline DensityMatrix from_pure(const StateVector& s) {
    if (!s.is_normalized())
        throw std::invalid_argument("from_pure: state must be normalized");
    const auto& amps = s.amplitudes();
    ComplexMatrix m(amps.size(), amps.size());
    for (std::size_t r = 0; r < amps.size(); ++r)
        for (std::size_t c = 0; c < amps.size(); ++c)
            m.at(r, c) = amps[r] * std::conj(amps[c]);
    return DensityMatrix::from_matrix(std::move(m));
}

/*
 * Normalized-overlap fidelity |Tr(rho sigma)| / sqrt(Tr(rho^2) Tr(sigma^2)).
 * This is NOT the Uhlmann fidelity on mixed states; it coincides with
 * |<psi|phi>|^2 on pure states and applies equally to deviation matrices.
 */
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw std::invalid_argument("fidelity: dimension mismatch");
    const double pr = rho.purity();
    const double ps = sigma.purity();
    if (pr < std::numeric_limits<double>::min() || ps < std::numeric_limits<double>::min())
        throw std::invalid_argument("fidelity: zero-purity input");
    const double overlap = std::abs(trace_product(rho.entries(), sigma.entries()));
    return overlap / std::sqrt(pr * ps);
}

// pseudo-pure state (1-eps) I/2^n + eps |0...0><0...0|
inline DensityMatrix pps(std::size_t num_qubits, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("pps: polarization must lie in [0,1]");
    const std::size_t d = pow2(num_qubits);
    ComplexMatrix m(d, d);
    const double mixed = (1.0 - epsilon) / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) m.at(i, i) = mixed;
    m.at(0, 0) += epsilon;
    return DensityMatrix::from_matrix(std::move(m));
}

// rho minus its maximally mixed component; trace 0
inline DensityMatrix deviation(const DensityMatrix& rho) {
    ComplexMatrix m = rho.entries();
    const complex_t shift = m.trace() / static_cast<double>(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) m.at(i, i) -= shift;
    return DensityMatrix::deviation_from_matrix(std::move(m));
}

/*
 * Expectation values Tr(rho P) over all k-fold Pauli strings, indexed
 * lexicographically in {I,X,Y,Z} with qubit 0 as the leftmost letter
 * (base-4 digits, I=0 X=1 Y=2 Z=3).
 */
struct PauliExpectations {
    std::size_t num_qubits = 0;
    std::vector<double> values;  // length 4^num_qubits
};

inline std::string pauli_string_name(std::size_t num_qubits, std::size_t index) {
    static constexpr char letters[] = {'I', 'X', 'Y', 'Z'};
    std::string name(num_qubits, 'I');
    for (std::size_t q = 0; q < num_qubits; ++q)
        name[q] = letters[(index >> (2 * (num_qubits - 1 - q))) & 3];
    return name;
}

inline std::size_t pauli_string_index(const std::string& name) {
    std::size_t index = 0;
    for (char ch : name) {
        std::size_t digit = 0;
        switch (ch) {
            case 'I': digit = 0; break;
            case 'X': digit = 1; break;
            case 'Y': digit = 2; break;
            case 'Z': digit = 3; break;
            default:
                throw std::invalid_argument("pauli_string_index: letters must be I, X, Y or Z");
        }
        index = (index << 2) | digit;
    }
    return index;
}

namespace detail {

// P|bit> = value |out_bit> for the single-qubit Pauli `digit`
inline void pauli_column(std::size_t digit, unsigned bit, unsigned& out_bit, complex_t& value) {
    switch (digit) {
        case 0: out_bit = bit; value = 1.0; break;                                   // I
        case 1: out_bit = bit ^ 1U; value = 1.0; break;                              // X
        case 2: out_bit = bit ^ 1U; value = bit ? complex_t{0, -1} : complex_t{0, 1}; break;  // Y
        default: out_bit = bit; value = bit ? -1.0 : 1.0; break;                     // Z
    }
}

// the Pauli string maps |col> to value * |row>; one nonzero per column
inline void pauli_string_column(std::size_t num_qubits, std::size_t index, std::size_t col,
                                std::size_t& row, complex_t& value) {
    row = 0;
    value = 1.0;
    for (std::size_t q = 0; q < num_qubits; ++q) {
        const std::size_t pos = bit_pos(num_qubits, q);
        const std::size_t digit = (index >> (2 * (num_qubits - 1 - q))) & 3;
        unsigned out_bit = 0;
        complex_t v;
        pauli_column(digit, bit_at(col, pos), out_bit, v);
        row = with_bit(row, pos, out_bit);
        value *= v;
    }
}

}  // namespace detail

// ideal tomography readout: value[P] = Tr(rho P), real for Hermitian rho
inline PauliExpectations pauli_expectations(const DensityMatrix& rho) {
    const std::size_t d = rho.dim();
    std::size_t k = 0;
    while (pow2(k) < d) ++k;
    if (pow2(k) != d)
        throw std::invalid_argument("pauli_expectations: dimension must be a power of two");
    if (rho.is_deviation())
        throw std::invalid_argument("pauli_expectations: expected a trace-1 density matrix");

    PauliExpectations e;
    e.num_qubits = k;
    e.values.resize(pow2(2 * k));
    for (std::size_t p = 0; p < e.values.size(); ++p) {
        // Tr(rho P) = sum_c value(c) * rho(c, row(c)) with P|c> = value(c)|row(c)>
        complex_t sum{0.0, 0.0};
        for (std::size_t c = 0; c < d; ++c) {
            std::size_t row = 0;
            complex_t value;
            detail::pauli_string_column(k, p, c, row, value);
            sum += value * rho.entries().at(c, row);
        }
        if (std::abs(sum.imag()) > density_hermitian_tol)
            throw std::runtime_error("pauli_expectations: non-real expectation value");
        e.values[p] = sum.real();
    }
    return e;
}

// rho = sum_P value[P] P / 2^k; unphysical inputs produce a warning, not an error
inline DensityMatrix reconstruct(const PauliExpectations& e) {
    const std::size_t d = pow2(e.num_qubits);
    if (e.values.size() != pow2(2 * e.num_qubits))
        throw std::invalid_argument("reconstruct: expected 4^num_qubits expectation values");
    if (std::abs(e.values[0] - 1.0) > density_trace_tol)
        throw std::invalid_argument("reconstruct: identity-string expectation must be 1");

    ComplexMatrix m(d, d);
    for (std::size_t p = 0; p < e.values.size(); ++p) {
        if (e.values[p] == 0.0) continue;
        for (std::size_t c = 0; c < d; ++c) {
            std::size_t row = 0;
            complex_t value;
            detail::pauli_string_column(e.num_qubits, p, c, row, value);
            m.at(row, c) += e.values[p] * value;
        }
    }
    m *= 1.0 / static_cast<double>(d);
    return DensityMatrix::from_reconstruction(std::move(m));
}

}
