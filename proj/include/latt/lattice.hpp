#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "latt/errors.hpp"
#include "latt/int_types.hpp"
#include "latt/matrix.hpp"
#include "latt/snf.hpp"

namespace latt {

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;

    bool operator==(const Signature&) const = default;
};

/// An integral bilinear form: Z^rank with a symmetric integer Gram matrix.
/// Vectors are integer coordinate rows; v.w = v * gram * w^T.
class Lattice {
public:
    Lattice() : gram_(0, 0) {}

    explicit Lattice(IMat gram) : gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols()) throw domain_error("gram matrix must be square");
        for (std::size_t i = 0; i < gram_.rows(); ++i)
            for (std::size_t j = i + 1; j < gram_.cols(); ++j) {
                if (gram_(i, j) != gram_(j, i)) throw domain_error("gram matrix must be symmetric");
            }
    }

    std::size_t rank() const { return gram_.rows(); }
    const IMat& gram() const { return gram_; }

    Int dot(const IVec& v, const IVec& w) const {
        if (v.size() != rank() || w.size() != rank()) throw domain_error("vector length mismatch");
        Int s(0);
        for (std::size_t i = 0; i < rank(); ++i) {
            if (v[i] == 0) continue;
            for (std::size_t j = 0; j < rank(); ++j) s += v[i] * gram_(i, j) * w[j];
        }
        return s;
    }

    Int norm(const IVec& v) const { return dot(v, v); }

    bool operator==(const Lattice& o) const { return gram_ == o.gram_; }

private:
    IMat gram_;
};

inline Int determinant(const Lattice& l) { return det_bareiss(l.gram()); }

inline bool is_nondegenerate(const Lattice& l) { return determinant(l) != 0; }

inline void require_nondegenerate(const Lattice& l, const char* op) {
    if (!is_nondegenerate(l)) throw degenerate_lattice_error(std::string(op) + ": form is degenerate");
}

inline bool is_even(const Lattice& l) {
    for (std::size_t i = 0; i < l.rank(); ++i) {
        if (l.gram()(i, i) % 2 != 0) return false;
    }
    return true;
}

inline bool is_unimodular(const Lattice& l) {
    Int d = determinant(l);
    return d == 1 || d == -1;
}

/// Exact signature by symmetric Gauss elimination over Q.  When no nonzero
/// diagonal pivot remains, an off-diagonal entry a = A(i,j) != 0 gives a
/// 2x2 block [[0,a],[a,0]] contributing (+1,-1); both indices are eliminated
/// with the block inverse.  No eigenvalue computation anywhere.
inline Signature signature(const Lattice& l) {
    const std::size_t n = l.rank();
    QMat a = to_rational(l.gram());
    std::vector<bool> active(n, true);
    Signature sig;
    std::size_t remaining = n;
    while (remaining > 0) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (active[i] && a(i, i) != 0) {
                piv = i;
                break;
            }
        }
        if (piv < n) {
            if (a(piv, piv) > 0) {
                ++sig.positive;
            } else {
                ++sig.negative;
            }
            active[piv] = false;
            --remaining;
            Rat p = a(piv, piv);
            for (std::size_t i = 0; i < n; ++i) {
                if (!active[i]) continue;
                for (std::size_t j = 0; j < n; ++j) {
                    if (!active[j]) continue;
                    a(i, j) -= a(i, piv) * a(piv, j) / p;
                }
            }
            continue;
        }
        // All active diagonal entries vanish; look for an off-diagonal pivot.
        std::size_t bi = n, bj = n;
        for (std::size_t i = 0; i < n && bi == n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (active[j] && a(i, j) != 0) {
                    bi = i;
                    bj = j;
                    break;
                }
            }
        }
        if (bi == n) {
            sig.zero += remaining; // active block is identically zero
            break;
        }
        ++sig.positive;
        ++sig.negative;
        active[bi] = active[bj] = false;
        remaining -= 2;
        Rat q = a(bi, bj);
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!active[j]) continue;
                a(i, j) -= (a(i, bi) * a(bj, j) + a(i, bj) * a(bi, j)) / q;
            }
        }
    }
    return sig;
}

inline bool is_definite(const Lattice& l) {
    Signature s = signature(l);
    return s.zero == 0 && (s.positive == 0 || s.negative == 0);
}

inline Lattice direct_sum(const Lattice& a, const Lattice& b) {
    IMat g(a.rank() + b.rank(), a.rank() + b.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j) g(i, j) = a.gram()(i, j);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j) g(a.rank() + i, a.rank() + j) = b.gram()(i, j);
    return Lattice(g);
}

/// The same group with the form multiplied by m (written L(m)).  m = 0 is
/// rejected: it would silently degenerate every subsequent computation.
inline Lattice rescale(const Lattice& l, const Int& m) {
    if (m == 0) throw domain_error("rescale by zero");
    return Lattice(scale(l.gram(), m));
}

// ---- standard lattice catalog -------------------------------------------
//
// Conventions fixed here once: the hyperbolic plane H has Gram [[0,1],[1,0]];
// root lattices A_n, D_n, E8 are delivered NEGATIVE definite (Gram = minus
// the Cartan matrix, simple-root basis in Bourbaki order); <k> denotes the
// rank-one lattice with v.v = k.

inline Lattice lattice_H() { return Lattice(IMat{{Int(0), Int(1)}, {Int(1), Int(0)}}); }

inline Lattice lattice_rank_one(const Int& k) { return Lattice(IMat{{k}}); }

inline Lattice lattice_diag(const IVec& ks) {
    IMat g(ks.size(), ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) g(i, i) = ks[i];
    return Lattice(g);
}

inline Lattice lattice_A(std::size_t n) {
    if (n < 1) throw domain_error("A_n requires n >= 1");
    IMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = Int(-2);
        if (i + 1 < n) {
            g(i, i + 1) = Int(1);
            g(i + 1, i) = Int(1);
        }
    }
    return Lattice(g);
}

inline Lattice lattice_D(std::size_t n) {
    if (n < 4) throw domain_error("D_n requires n >= 4");
    IMat g(n, n);
    for (std::size_t i = 0; i < n; ++i) g(i, i) = Int(-2);
    // chain 0-1-...-(n-3), with both n-2 and n-1 attached to node n-3
    for (std::size_t i = 0; i + 1 < n - 2; ++i) {
        g(i, i + 1) = Int(1);
        g(i + 1, i) = Int(1);
    }
    g(n - 3, n - 2) = Int(1);
    g(n - 2, n - 3) = Int(1);
    g(n - 3, n - 1) = Int(1);
    g(n - 1, n - 3) = Int(1);
    return Lattice(g);
}

inline Lattice lattice_E8() {
    // Bourbaki numbering: chain 1-3-4-5-6-7-8, node 2 attached to node 4.
    IMat g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = Int(-2);
    auto edge = [&](std::size_t a, std::size_t b) {
        g(a - 1, b - 1) = Int(1);
        g(b - 1, a - 1) = Int(1);
    };
    edge(1, 3);
    edge(3, 4);
    edge(4, 5);
    edge(5, 6);
    edge(6, 7);
    edge(7, 8);
    edge(2, 4);
    return Lattice(g);
}

/// H + H + H + E8 + E8: rank 22, signature (3,19), determinant -1.
inline Lattice lattice_K3() {
    Lattice l = lattice_H();
    l = direct_sum(l, lattice_H());
    l = direct_sum(l, lattice_H());
    l = direct_sum(l, lattice_E8());
    l = direct_sum(l, lattice_E8());
    return l;
}

} // namespace latt
