#include "tomoec/exact.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace tomoec {

namespace {

/// Scales every row of the augmented integer matrix built from rational rows.
/// Row scaling by a positive factor leaves rank and solution sets unchanged.
IntMatrix clear_denominators(const RatMatrix& m, const std::vector<Rational>* rhs = nullptr) {
    const std::size_t extra = rhs ? 1 : 0;
    IntMatrix out(m.rows(), m.cols() + extra);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BigInt l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) l = lcm(l, m(r, c).den());
        if (rhs) l = lcm(l, (*rhs)[r].den());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c).num() * (l / m(r, c).den());
        }
        if (rhs) out(r, m.cols()) = (*rhs)[r].num() * (l / (*rhs)[r].den());
    }
    return out;
}

/// One fraction-free elimination step on rows below `step`, columns right of
/// `step`, with previous pivot `prev`. Divisions are exact by construction.
void bareiss_update(IntMatrix& m, std::size_t step, const BigInt& prev) {
    for (std::size_t i = step + 1; i < m.rows(); ++i) {
        for (std::size_t j = step + 1; j < m.cols(); ++j) {
            BigInt v = m(i, j) * m(step, step) - m(i, step) * m(step, j);
            v /= prev;
            m(i, j) = std::move(v);
        }
        m(i, step) = 0;
    }
}

}  // namespace

RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
    return out;
}

RatMatrix matmul(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("matmul shape mismatch");
    RatMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
            Rational acc;
            for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(k, c);
            out(r, c) = std::move(acc);
        }
    }
    return out;
}

BigInt bareiss_determinant(IntMatrix m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && m(r, k) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(r, c));
            sign = -sign;
        }
        bareiss_update(m, k, prev);
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : BigInt(-m(n - 1, n - 1));
}

std::size_t rank(IntMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    BigInt prev = 1;
    while (r < rows && r < cols) {
        // Full pivoting: any nonzero entry of the trailing submatrix will do.
        std::size_t pr = r, pc = r;
        bool found = false;
        for (std::size_t i = r; i < rows && !found; ++i) {
            for (std::size_t j = r; j < cols; ++j) {
                if (m(i, j) != 0) {
                    pr = i;
                    pc = j;
                    found = true;
                    break;
                }
            }
        }
        if (!found) break;
        if (pr != r)
            for (std::size_t c = 0; c < cols; ++c) std::swap(m(r, c), m(pr, c));
        if (pc != r)
            for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, r), m(i, pc));
        bareiss_update(m, r, prev);
        prev = m(r, r);
        ++r;
    }
    return r;
}

std::size_t rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return rank(clear_denominators(m));
}

std::vector<Rational> solve_linear(const RatMatrix& m, const std::vector<Rational>& rhs) {
    if (m.rows() != m.cols()) throw DimensionMismatch("solve_linear requires a square matrix");
    if (rhs.size() != m.rows()) throw DimensionMismatch("solve_linear rhs size mismatch");
    const std::size_t n = m.rows();
    if (n == 0) return {};

    IntMatrix a = clear_denominators(m, &rhs);
    BigInt prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) throw SingularSystem("singular linear system");
            for (std::size_t c = k; c <= n; ++c) std::swap(a(k, c), a(r, c));
        }
        if (k + 1 < n) {
            bareiss_update(a, k, prev);
            prev = a(k, k);
        }
    }
    if (a(n - 1, n - 1) == 0) throw SingularSystem("singular linear system");

    std::vector<Rational> x(n);
    for (std::size_t k = n; k-- > 0;) {
        Rational acc(a(k, n));
        for (std::size_t j = k + 1; j < n; ++j) acc -= Rational(a(k, j)) * x[j];
        x[k] = acc / Rational(a(k, k));
    }
    return x;
}

RatMatrix vandermonde_inverse(const std::vector<std::int64_t>& nodes) {
    const std::size_t s = nodes.size();
    std::set<std::int64_t> distinct(nodes.begin(), nodes.end());
    if (distinct.size() != s) throw SingularSystem("vandermonde_inverse: duplicate nodes");
    if (s == 0) return RatMatrix(0, 0);

    // Augment [V | I] and run the same fraction-free elimination once for all
    // right-hand sides.
    IntMatrix a(s, 2 * s);
    for (std::size_t j = 0; j < s; ++j) {
        BigInt p = 1;
        for (std::size_t i = 0; i < s; ++i) {
            a(i, j) = p;
            p *= nodes[j];
        }
    }
    for (std::size_t i = 0; i < s; ++i) a(i, s + i) = 1;

    BigInt prev = 1;
    for (std::size_t k = 0; k < s; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < s && a(r, k) == 0) ++r;
            if (r == s) throw SingularSystem("singular Vandermonde matrix");
            for (std::size_t c = k; c < 2 * s; ++c) std::swap(a(k, c), a(r, c));
        }
        if (k + 1 < s) {
            bareiss_update(a, k, prev);
            prev = a(k, k);
        }
    }
    if (a(s - 1, s - 1) == 0) throw SingularSystem("singular Vandermonde matrix");

    RatMatrix w(s, s);
    for (std::size_t col = 0; col < s; ++col) {
        for (std::size_t k = s; k-- > 0;) {
            Rational acc(a(k, s + col));
            for (std::size_t j = k + 1; j < s; ++j) acc -= Rational(a(k, j)) * w(j, col);
            w(k, col) = acc / Rational(a(k, k));
        }
    }
    return w;
}

Rational evaluate_polynomial(const std::vector<Rational>& coeffs, std::int64_t t) {
    Rational acc;
    const Rational tt{BigInt(t)};
    for (const Rational& c : coeffs) acc = acc * tt + c;
    return acc;
}

std::vector<std::int64_t> integer_roots(const std::vector<Rational>& monic_coeffs,
                                        std::int64_t t_min, std::int64_t t_max) {
    if (monic_coeffs.empty() || monic_coeffs.front() != Rational(1))
        throw InvalidParameters("integer_roots requires a monic polynomial");
    if (t_min > t_max) throw InvalidParameters("integer_roots: empty search range");
    const std::size_t degree = monic_coeffs.size() - 1;

    std::vector<std::int64_t> roots;
    bool integral = std::all_of(monic_coeffs.begin(), monic_coeffs.end(),
                                [](const Rational& c) { return c.is_integer(); });
    if (integral) {
        std::vector<BigInt> ic;
        ic.reserve(monic_coeffs.size());
        for (const Rational& c : monic_coeffs) ic.push_back(c.num());
        for (std::int64_t t = t_min; t <= t_max; ++t) {
            BigInt acc = 0;
            for (const BigInt& c : ic) {
                acc *= t;
                acc += c;
            }
            if (acc == 0) roots.push_back(t);
        }
    } else {
        // A monic polynomial with non-integral coefficients cannot have a full
        // set of integer roots, but the scan stays exact either way.
        for (std::int64_t t = t_min; t <= t_max; ++t) {
            if (evaluate_polynomial(monic_coeffs, t).is_zero()) roots.push_back(t);
        }
    }
    if (roots.size() < degree) {
        throw RootDeficit("found " + std::to_string(roots.size()) + " integer roots in [" +
                          std::to_string(t_min) + "," + std::to_string(t_max) + "] for degree " +
                          std::to_string(degree));
    }
    return roots;
}

}  // namespace tomoec
