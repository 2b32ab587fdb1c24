#pragma once

// Exact integer/rational scalars and a small dense matrix over them.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fqinc/error.hpp"

namespace fqinc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigRational rat(const BigInt& num, const BigInt& den = 1) { return BigRational(num, den); }

inline std::string to_string(const BigInt& x) { return x.str(); }

inline std::string to_string(const BigRational& x) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

inline BigInt big_pow(const BigInt& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

/// base^exp in 64 bits; throws TooLarge on overflow.
inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > UINT64_MAX / base) fail(ErrorKind::TooLarge, "integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

/// Row-major dense matrix. Only the handful of operations the certificates need.
template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const DenseMatrix&) const = default;

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    T trace() const {
        T t = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    /// this - s*I
    DenseMatrix minus_scalar(const T& s) const {
        DenseMatrix m = *this;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) m(i, i) -= s;
        return m;
    }

    DenseMatrix scaled(const T& s) const {
        DenseMatrix m = *this;
        for (auto& x : m.data_) x *= s;
        return m;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "matrix sum shape");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }

    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
        require(a.rows_ == b.rows_ && a.cols_ == b.cols_, ErrorKind::DimensionMismatch, "matrix difference shape");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        require(a.cols_ == b.rows_, ErrorKind::DimensionMismatch, "matrix product shape");
        DenseMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const T& bkj = b(k, j);
                    if (bkj != 0) c(i, j) += aik * bkj;
                }
            }
        }
        return c;
    }

    /// Largest absolute entry (0 for an empty matrix).
    T max_abs() const {
        T m = 0;
        for (const auto& x : data_) {
            T a = x < 0 ? T(-x) : x;
            if (a > m) m = a;
        }
        return m;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = DenseMatrix<BigInt>;

/// Rank over Q by fraction-free (Bareiss) elimination. Pivot = first nonzero in the column.
inline std::size_t bareiss_rank(IntMatrix m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(piv, j), m(rank, j));
        const BigInt pivot = m(rank, col);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const BigInt lead = m(i, col);
            for (std::size_t j = col + 1; j < cols; ++j) {
                // exact by Sylvester's identity
                m(i, j) = (pivot * m(i, j) - lead * m(rank, j)) / prev;
            }
            m(i, col) = 0;
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

}  // namespace fqinc
