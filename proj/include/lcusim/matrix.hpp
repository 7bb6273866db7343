#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lcusim/statevec.hpp"

namespace lcusim {

// Dense row-major complex matrix. Everything in this project is small
// (<= a few hundred rows); no attempt at blocking or BLAS.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, complex_t{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    complex_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const complex_t& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m.at(c, r) = std::conj(at(r, c));
        return m;
    }

    complex_t trace() const {
        complex_t t{0.0, 0.0};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
        return t;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_shape(o, "+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_shape(o, "-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    ComplexMatrix& operator*=(complex_t s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, complex_t s) { return a *= s; }
    friend ComplexMatrix operator*(complex_t s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("ComplexMatrix: shape mismatch in product");
        ComplexMatrix m(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const complex_t ark = a.at(r, k);
                if (ark == complex_t{0.0, 0.0}) continue;
                for (std::size_t c = 0; c < b.cols_; ++c) m.at(r, c) += ark * b.at(k, c);
            }
        return m;
    }

    cvector_t operator*(const cvector_t& v) const {
        if (cols_ != v.size())
            throw std::invalid_argument("ComplexMatrix: vector length mismatch");
        cvector_t out(rows_, complex_t{0.0, 0.0});
        for (std::size_t r = 0; r < rows_; ++r) {
            complex_t sum{0.0, 0.0};
            for (std::size_t c = 0; c < cols_; ++c) sum += at(r, c) * v[c];
            out[r] = sum;
        }
        return out;
    }

    bool operator==(const ComplexMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    void check_same_shape(const ComplexMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument(std::string("ComplexMatrix: shape mismatch in ") + op);
    }

    std::size_t rows_, cols_;
    cvector_t data_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double dev = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            dev = std::max(dev, std::abs(a.at(r, c) - b.at(r, c)));
    return dev;
}

inline double max_abs_diff(const cvector_t& a, const cvector_t& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("max_abs_diff: length mismatch");
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
    return dev;
}

// Tr(a*b) without forming the product
inline complex_t trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw std::invalid_argument("trace_product: shape mismatch");
    complex_t t{0.0, 0.0};
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t += a.at(r, c) * b.at(c, r);
    return t;
}

/*
 * Eigenvalues of a Hermitian matrix by cyclic Jacobi with complex
 * rotations, ascending order. Each sweep zeroes every off-diagonal pair
 * (p,q) with the unitary
 *     V = [[c, -s e^{i phi}], [s e^{-i phi}, c]],   a_pq = |a_pq| e^{i phi},
 * where t = s/c is the small root of t^2 - 2 tau t - 1 = 0,
 * tau = (a_qq - a_pp) / (2 |a_pq|).
 */
inline std::vector<double> hermitian_eigenvalues(ComplexMatrix a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
    const std::size_t n = a.rows();

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a.at(p, q));
        return std::sqrt(s);
    };
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(a.at(i, i)));
    scale = std::max(scale, off_norm());
    const double stop = std::max(1e-300, scale * 1e-15 * static_cast<double>(n));

    for (int sweep = 0; sweep < 100 && off_norm() > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex_t apq = a.at(p, q);
                const double ab = std::abs(apq);
                if (ab <= stop / static_cast<double>(n)) continue;
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const complex_t phase = apq / ab;
                const double tau = (aqq - app) / (2.0 * ab);
                const double t = tau == 0.0
                                     ? 1.0
                                     : -std::copysign(1.0, tau) /
                                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const complex_t akp = a.at(k, p);
                    const complex_t akq = a.at(k, q);
                    const complex_t nkp = c * akp + s * std::conj(phase) * akq;
                    const complex_t nkq = -s * phase * akp + c * akq;
                    a.at(k, p) = nkp;
                    a.at(p, k) = std::conj(nkp);
                    a.at(k, q) = nkq;
                    a.at(q, k) = std::conj(nkq);
                }
                a.at(p, p) = app * c * c + 2.0 * ab * s * c + aqq * s * s;
                a.at(q, q) = app * s * s - 2.0 * ab * s * c + aqq * c * c;
                a.at(p, q) = complex_t{0.0, 0.0};
                a.at(q, p) = complex_t{0.0, 0.0};
            }
        }
    }
    if (off_norm() > std::max(stop, scale * 1e-12))
        throw std::runtime_error("hermitian_eigenvalues: Jacobi iteration did not converge");

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

}
