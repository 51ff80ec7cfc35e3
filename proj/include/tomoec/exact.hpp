#ifndef TOMOEC_EXACT_HPP
#define TOMOEC_EXACT_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "tomoec/errors.hpp"
#include "tomoec/rational.hpp"

namespace tomoec {

/// Dense row-major matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> items)
        : rows_(rows), cols_(cols), data_(items) {
        if (data_.size() != rows * cols) throw DimensionMismatch("matrix initializer size mismatch");
    }

    static Matrix identity(std::size_t n) {
        Matrix id(n, n);
        for (std::size_t i = 0; i < n; ++i) id(i, i) = T(1);
        return id;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
RatMatrix matmul(const RatMatrix& a, const RatMatrix& b);

/// Exact determinant by fraction-free (Bareiss) elimination.
BigInt bareiss_determinant(IntMatrix m);

/// Exact rank over the rationals; pivots tested for exact zero.
std::size_t rank(IntMatrix m);
std::size_t rank(const RatMatrix& m);

/// Exact solution of a square nonsingular system M x = rhs.
std::vector<Rational> solve_linear(const RatMatrix& m, const std::vector<Rational>& rhs);

/// Exact inverse of the Vandermonde matrix V with V(i,j) = nodes[j]^i.
RatMatrix vandermonde_inverse(const std::vector<std::int64_t>& nodes);

/// All integer roots of a monic polynomial within [t_min, t_max], sorted
/// ascending, each verified by exact Horner evaluation. Coefficients are in
/// descending powers; the leading coefficient must be 1. Throws RootDeficit
/// when fewer roots than the degree are found in the range.
std::vector<std::int64_t> integer_roots(const std::vector<Rational>& monic_coeffs,
                                        std::int64_t t_min, std::int64_t t_max);

/// Exact polynomial evaluation (descending coefficients).
Rational evaluate_polynomial(const std::vector<Rational>& coeffs, std::int64_t t);

}  // namespace tomoec

#endif
