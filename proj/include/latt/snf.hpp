#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "latt/errors.hpp"
#include "latt/int_types.hpp"
#include "latt/matrix.hpp"

namespace latt {

struct HnfResult {
    IMat h; // row Hermite normal form: echelon, positive pivots, entries above a pivot reduced into [0, pivot)
    IMat u; // unimodular, u * a = h
};

/// Row-style Hermite normal form with transformation matrix.
/// Zero rows sink to the bottom; the nonzero rows are the canonical basis of
/// the row span, so two integer matrices span the same subgroup of Z^n iff
/// their HNFs agree.
inline HnfResult row_hnf(const IMat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    IMat h = a;
    IMat u = IMat::identity(m);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n && r < m; ++j) {
        // Euclidean reduction: shrink column j below row r until one nonzero remains.
        while (true) {
            std::size_t p = m;
            for (std::size_t i = r; i < m; ++i) {
                if (h(i, j) == 0) continue;
                if (p == m || abs(h(i, j)) < abs(h(p, j))) p = i;
            }
            if (p == m) break; // column empty below r
            bool others = false;
            for (std::size_t i = r; i < m; ++i) {
                if (i == p || h(i, j) == 0) continue;
                Int q = round_div(h(i, j), h(p, j));
                h.add_row(i, p, -q);
                u.add_row(i, p, -q);
                if (h(i, j) != 0) others = true;
            }
            if (!others) {
                h.swap_rows(r, p);
                u.swap_rows(r, p);
                break;
            }
        }
        if (r < m && h(r, j) != 0) {
            if (h(r, j) < 0) {
                h.negate_row(r);
                u.negate_row(r);
            }
            for (std::size_t i = 0; i < r; ++i) {
                Int q = floor_div(h(i, j), h(r, j));
                if (q != 0) {
                    h.add_row(i, r, -q);
                    u.add_row(i, r, -q);
                }
            }
            ++r;
        }
    }
    return {h, u};
}

inline std::size_t hnf_rank(const IMat& h) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < h.cols(); ++j) {
            if (h(i, j) != 0) {
                zero = false;
                break;
            }
        }
        if (!zero) ++r;
    }
    return r;
}

/// Canonical basis (HNF rows, zero rows dropped) of the row span of a.
inline IMat hnf_basis(const IMat& a) {
    HnfResult res = row_hnf(a);
    std::size_t r = hnf_rank(res.h);
    IMat b(r, a.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = res.h(i, j);
    return b;
}

inline std::size_t rank_of(const IMat& a) { return hnf_rank(row_hnf(a).h); }

/// Basis (canonical, saturated) of the left kernel {v in Z^m : v a = 0}.
inline IMat left_kernel(const IMat& a) {
    HnfResult res = row_hnf(a);
    std::size_t r = hnf_rank(res.h);
    IMat k(a.rows() - r, a.rows());
    for (std::size_t i = r; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) k(i - r, j) = res.u(i, j);
    return hnf_basis(k);
}

/// Basis (canonical, saturated) of {x in Z^n : a x = 0} as rows.
inline IMat kernel_cols(const IMat& a) { return left_kernel(transpose(a)); }

/// Saturation of the row span: the smallest primitive subgroup of Z^n whose
/// rational span contains the rows (double standard-orthogonal complement).
inline IMat saturate_rows(const IMat& a) { return kernel_cols(kernel_cols(a)); }

struct SnfResult {
    IMat d;           // u * a * v = d, diagonal with d1 | d2 | ... >= 0
    IMat u, uinv;     // unimodular row transform and its inverse
    IMat v, vinv;     // unimodular column transform and its inverse
};

/// Smith normal form with all four transformation matrices.
inline SnfResult smith_normal_form(const IMat& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfResult r{a, IMat::identity(m), IMat::identity(m), IMat::identity(n), IMat::identity(n)};
    IMat& d = r.d;

    auto row_add = [&](std::size_t i, std::size_t k, const Int& c) {
        d.add_row(i, k, c);
        r.u.add_row(i, k, c);
        r.uinv.add_col(k, i, -c);
    };
    auto col_add = [&](std::size_t j, std::size_t k, const Int& c) {
        d.add_col(j, k, c);
        r.v.add_col(j, k, c);
        r.vinv.add_row(k, j, -c);
    };
    auto row_swap = [&](std::size_t i, std::size_t k) {
        d.swap_rows(i, k);
        r.u.swap_rows(i, k);
        r.uinv.swap_cols(i, k);
    };
    auto col_swap = [&](std::size_t j, std::size_t k) {
        d.swap_cols(j, k);
        r.v.swap_cols(j, k);
        r.vinv.swap_rows(j, k);
    };
    auto row_negate = [&](std::size_t i) {
        d.negate_row(i);
        r.u.negate_row(i);
        r.uinv.negate_col(i);
    };

    for (std::size_t t = 0; t < m && t < n; ++t) {
        while (true) {
            // Locate the entry of least absolute value in the trailing block.
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (d(i, j) == 0) continue;
                    if (pi == m || abs(d(i, j)) < abs(d(pi, pj))) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == m) break; // trailing block is zero
            row_swap(t, pi);
            col_swap(t, pj);
            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                Int q = round_div(d(i, t), d(t, t));
                row_add(i, t, -q);
                if (d(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                Int q = round_div(d(t, j), d(t, t));
                col_add(j, t, -q);
                if (d(t, j) != 0) dirty = true;
            }
            if (dirty) continue;
            // Row and column are clean; enforce divisibility of the rest.
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j) {
                    if (d(i, j) % d(t, t) != 0) {
                        row_add(t, i, Int(1));
                        fixed = true;
                    }
                }
            if (!fixed) break;
        }
        if (t < m && t < n && d(t, t) < 0) row_negate(t);
    }
    return r;
}

/// Diagonal of the SNF, padded with zeros to min(rows, cols).
inline IVec elementary_divisors(const IMat& a) {
    SnfResult s = smith_normal_form(a);
    std::size_t k = std::min(a.rows(), a.cols());
    IVec d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = s.d(i, i);
    return d;
}

/// Fraction-free determinant (Bareiss).  Requires a square matrix.
inline Int det_bareiss(const IMat& a) {
    if (a.rows() != a.cols()) throw domain_error("determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return Int(1);
    IMat w = a;
    Int sign(1), prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t p = n;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (w(i, k) != 0) {
                    p = i;
                    break;
                }
            }
            if (p == n) return Int(0);
            w.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
        prev = w(k, k);
    }
    return sign * w(n - 1, n - 1);
}

/// Solve x * a = b over the rationals (least solution via elimination).
/// Returns nullopt when some row of b is outside the row span of a.
inline std::optional<QMat> q_solve_left(const QMat& a, const QMat& b) {
    if (a.cols() != b.cols()) throw domain_error("solve shape mismatch");
    const std::size_t k = a.rows(), n = a.cols(), m = b.rows();
    // Augmented system transpose(a) * x^T = transpose(b).
    QMat lhs = transpose(a); // n x k
    QMat rhs = transpose(b); // n x m
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < k && row < n; ++col) {
        std::size_t p = n;
        for (std::size_t i = row; i < n; ++i) {
            if (lhs(i, col) != 0) {
                p = i;
                break;
            }
        }
        if (p == n) continue;
        lhs.swap_rows(row, p);
        rhs.swap_rows(row, p);
        Rat inv = Rat(1) / lhs(row, col);
        for (std::size_t j = 0; j < k; ++j) lhs(row, j) *= inv;
        for (std::size_t j = 0; j < m; ++j) rhs(row, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || lhs(i, col) == 0) continue;
            Rat c = lhs(i, col);
            for (std::size_t j = 0; j < k; ++j) lhs(i, j) -= c * lhs(row, j);
            for (std::size_t j = 0; j < m; ++j) rhs(i, j) -= c * rhs(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (rhs(i, j) != 0) return std::nullopt; // inconsistent
        }
    QMat x(m, k);
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
        for (std::size_t j = 0; j < m; ++j) x(j, pivot_col[r]) = rhs(r, j);
    return x;
}

/// Solve x * a = b with x integral; nullopt when unsolvable over Z.
inline std::optional<IMat> int_solve_left(const IMat& a, const IMat& b) {
    auto q = q_solve_left(to_rational(a), to_rational(b));
    if (!q) return std::nullopt;
    for (std::size_t i = 0; i < q->rows(); ++i)
        for (std::size_t j = 0; j < q->cols(); ++j) {
            if (!is_integral((*q)(i, j))) return std::nullopt;
        }
    return to_integral(*q);
}

/// True when v lies in the subgroup of Z^n spanned by the rows of a.
inline bool in_row_span(const IMat& a, const IVec& v) {
    IMat b(1, v.size());
    b.set_row(0, v);
    return int_solve_left(a, b).has_value();
}

/// Exact inverse of a square rational matrix; throws degenerate_lattice_error
/// when singular.
inline QMat q_inverse(const QMat& a) {
    if (a.rows() != a.cols()) throw domain_error("inverse of non-square matrix");
    const std::size_t n = a.rows();
    QMat w = a;
    QMat inv = QMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = n;
        for (std::size_t i = col; i < n; ++i) {
            if (w(i, col) != 0) {
                p = i;
                break;
            }
        }
        if (p == n) throw degenerate_lattice_error("matrix is singular");
        w.swap_rows(col, p);
        inv.swap_rows(col, p);
        Rat s = Rat(1) / w(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            w(col, j) *= s;
            inv(col, j) *= s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || w(i, col) == 0) continue;
            Rat c = w(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= c * w(col, j);
                inv(i, j) -= c * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace latt
