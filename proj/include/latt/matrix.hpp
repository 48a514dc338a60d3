#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "latt/errors.hpp"
#include "latt/int_types.hpp"

namespace latt {

/// Minimal dense row-major matrix over an exact scalar type.
/// Vectors of lattice coordinates are stored as rows; a matrix that acts on
/// coordinates (isometry, nilpotent operator) acts on column vectors, so a row
/// vector v maps to v * transpose(M).
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    Mat(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw domain_error("ragged matrix initializer");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    std::vector<T> row(std::size_t i) const {
        std::vector<T> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    void set_row(std::size_t i, const std::vector<T>& r) {
        if (r.size() != cols_) throw domain_error("row length mismatch");
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row a += c * row b
    void add_row(std::size_t a, std::size_t b, const T& c) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) += c * (*this)(b, j);
    }

    /// col a += c * col b
    void add_col(std::size_t a, std::size_t b, const T& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) += c * (*this)(i, b);
    }

    void negate_row(std::size_t a) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(a, j) = -(*this)(a, j);
    }

    void negate_col(std::size_t a) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, a) = -(*this)(i, a);
    }

    bool is_zero() const {
        for (const auto& x : data_) {
            if (x != 0) return false;
        }
        return true;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

template <typename T>
Mat<T> transpose(const Mat<T>& a) {
    Mat<T> t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

template <typename T>
Mat<T> mul(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.rows()) throw domain_error("matrix product shape mismatch");
    Mat<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <typename T>
Mat<T> add(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw domain_error("matrix sum shape mismatch");
    Mat<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

template <typename T>
Mat<T> sub(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw domain_error("matrix diff shape mismatch");
    Mat<T> c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

template <typename T>
Mat<T> scale(const Mat<T>& a, const T& c) {
    Mat<T> r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
    return r;
}

/// v * transpose(M): the row-vector form of the column action x -> M x.
template <typename T>
std::vector<T> apply(const Mat<T>& m, const std::vector<T>& v) {
    if (m.cols() != v.size()) throw domain_error("matrix apply shape mismatch");
    std::vector<T> r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        T s(0);
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

/// v * M (row vector times matrix).
template <typename T>
std::vector<T> row_mul(const std::vector<T>& v, const Mat<T>& m) {
    if (m.rows() != v.size()) throw domain_error("row mul shape mismatch");
    std::vector<T> r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        T s(0);
        for (std::size_t i = 0; i < m.rows(); ++i) s += v[i] * m(i, j);
        r[j] = s;
    }
    return r;
}

inline QMat to_rational(const IMat& a) {
    QMat q(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = Rat(a(i, j));
    return q;
}

inline QVec to_rational(const IVec& v) {
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

/// Exact integer matrix from a rational one; throws if any entry has a denominator.
inline IMat to_integral(const QMat& a) {
    IMat m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!is_integral(a(i, j))) throw domain_error("matrix entry is not an integer");
            m(i, j) = num(a(i, j));
        }
    return m;
}

inline IVec to_integral(const QVec& v) {
    IVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_integral(v[i])) throw domain_error("vector entry is not an integer");
        r[i] = num(v[i]);
    }
    return r;
}

/// Stack b below a (both with the same column count).
template <typename T>
Mat<T> vstack(const Mat<T>& a, const Mat<T>& b) {
    if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
        throw domain_error("vstack column mismatch");
    std::size_t cols = a.rows() == 0 ? b.cols() : a.cols();
    Mat<T> r(a.rows() + b.rows(), cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j) r(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < cols; ++j) r(a.rows() + i, j) = b(i, j);
    return r;
}

/// Lexicographic comparison of vectors, then of matrices row by row.
template <typename T>
int compare(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

template <typename T>
int compare(const Mat<T>& a, const Mat<T>& b) {
    if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
    if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) != b(i, j)) return a(i, j) < b(i, j) ? -1 : 1;
        }
    return 0;
}

template <typename T>
std::vector<T> vec_add(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw domain_error("vector sum length mismatch");
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <typename T>
std::vector<T> vec_sub(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw domain_error("vector diff length mismatch");
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <typename T>
std::vector<T> vec_scale(const std::vector<T>& a, const T& c) {
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

template <typename T>
bool vec_is_zero(const std::vector<T>& a) {
    for (const auto& x : a) {
        if (x != 0) return false;
    }
    return true;
}

/// gcd of all entries (0 for the zero vector).
inline Int content(const IVec& v) {
    Int g(0);
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

} // namespace latt
