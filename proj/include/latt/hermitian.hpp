#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "latt/errors.hpp"
#include "latt/isometry.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"

namespace latt {

/// Element u + v*zeta of Z[zeta_n] for n in {3,4,6}; the ring is determined
/// by tau = zeta + conj(zeta), with zeta^2 = tau*zeta - 1.
struct Cyc {
    Int u{0}, v{0};
    bool operator==(const Cyc&) const = default;
};

/// Arithmetic in Z[zeta_n], n in {3,4,6}. These are the norm-Euclidean rings
/// of discriminant -3 and -4, so a Smith normal form over them exists.
class CycRing {
public:
    explicit CycRing(unsigned long n) : n_(n) {
        switch (n) {
            case 3: tau_ = -1; break;
            case 4: tau_ = 0; break;
            case 6: tau_ = 1; break;
            default: throw domain_error("hermitian structure requires order 3, 4, or 6");
        }
    }

    unsigned long order() const { return n_; }
    const Int& tau() const { return tau_; }

    static Cyc add(const Cyc& a, const Cyc& b) { return {a.u + b.u, a.v + b.v}; }
    static Cyc sub(const Cyc& a, const Cyc& b) { return {a.u - b.u, a.v - b.v}; }
    static Cyc neg(const Cyc& a) { return {-a.u, -a.v}; }

    Cyc mul(const Cyc& a, const Cyc& b) const {
        // (au + av z)(bu + bv z) with z^2 = tau z - 1.
        Int cross = a.u * b.v + a.v * b.u;
        Int zz = a.v * b.v;
        return {a.u * b.u - zz, cross + tau_ * zz};
    }

    Cyc conj(const Cyc& a) const { return {a.u + tau_ * a.v, -a.v}; }

    Int norm(const Cyc& a) const { return a.u * a.u + tau_ * a.u * a.v + a.v * a.v; }

    static bool is_zero(const Cyc& a) { return a.u == 0 && a.v == 0; }
    bool is_unit(const Cyc& a) const { return norm(a) == 1; }

    /// Round-to-nearest division: returns q with N(a - q b) < N(b).
    Cyc div_nearest(const Cyc& a, const Cyc& b) const {
        Int nb = norm(b);
        if (nb == 0) throw domain_error("division by zero in Z[zeta]");
        Cyc num = mul(a, conj(b));
        return {round_div(num.u, nb), round_div(num.v, nb)};
    }

private:
    unsigned long n_;
    Int tau_;
};

using CycMat = std::vector<std::vector<Cyc>>;

inline CycMat cyc_identity(std::size_t n) {
    CycMat m(n, std::vector<Cyc>(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Cyc{Int(1), Int(0)};
    return m;
}

inline CycMat cyc_mul(const CycRing& r, const CycMat& a, const CycMat& b) {
    std::size_t n = a.size(), k = b.size(), c = k ? b[0].size() : 0;
    CycMat out(n, std::vector<Cyc>(c));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (CycRing::is_zero(a[i][t])) continue;
            for (std::size_t j = 0; j < c; ++j)
                out[i][j] = CycRing::add(out[i][j], r.mul(a[i][t], b[t][j]));
        }
    return out;
}

struct CycSnfResult {
    CycMat d;    // diagonal
    CycMat u;    // u * input * v = d
    CycMat uinv;
    CycMat v;
    CycMat vinv;
};

/// Smith-style diagonalization over the Euclidean ring Z[zeta_n]. Divisor
/// chain normalization is not performed; callers inspect units and zeros.
inline CycSnfResult cyc_smith(const CycRing& ring, CycMat a) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    CycSnfResult res{std::move(a), cyc_identity(rows), cyc_identity(rows), cyc_identity(cols),
                     cyc_identity(cols)};
    CycMat& m = res.d;

    auto row_sub = [&](std::size_t i, std::size_t j, const Cyc& q) {
        // row i -= q * row j; U likewise, Uinv col j += q * col i.
        for (std::size_t c = 0; c < cols; ++c) m[i][c] = CycRing::sub(m[i][c], ring.mul(q, m[j][c]));
        for (std::size_t c = 0; c < rows; ++c) {
            res.u[i][c] = CycRing::sub(res.u[i][c], ring.mul(q, res.u[j][c]));
            res.uinv[c][j] = CycRing::add(res.uinv[c][j], ring.mul(q, res.uinv[c][i]));
        }
    };
    auto col_sub = [&](std::size_t i, std::size_t j, const Cyc& q) {
        // col i -= q * col j; V likewise, Vinv row j += q * row i.
        for (std::size_t r = 0; r < rows; ++r) m[r][i] = CycRing::sub(m[r][i], ring.mul(q, m[r][j]));
        for (std::size_t r = 0; r < cols; ++r) {
            res.v[r][i] = CycRing::sub(res.v[r][i], ring.mul(q, res.v[r][j]));
            res.vinv[j][r] = CycRing::add(res.vinv[j][r], ring.mul(q, res.vinv[i][r]));
        }
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(m[i], m[j]);
        std::swap(res.u[i], res.u[j]);
        for (std::size_t c = 0; c < rows; ++c) std::swap(res.uinv[c][i], res.uinv[c][j]);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(m[r][i], m[r][j]);
        for (std::size_t r = 0; r < cols; ++r) std::swap(res.v[r][i], res.v[r][j]);
        std::swap(res.vinv[i], res.vinv[j]);
    };

    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        // Locate a nonzero entry of minimal norm.
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (CycRing::is_zero(m[i][j])) continue;
                Int nn = ring.norm(m[i][j]);
                if (!found || nn < best) {
                    found = true;
                    best = nn;
                    pi = i;
                    pj = j;
                }
            }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (CycRing::is_zero(m[i][t])) continue;
                Cyc q = ring.div_nearest(m[i][t], m[t][t]);
                row_sub(i, t, q);
                if (!CycRing::is_zero(m[i][t])) {
                    // Remainder has smaller norm: promote it to the pivot.
                    row_swap(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (CycRing::is_zero(m[t][j])) continue;
                Cyc q = ring.div_nearest(m[t][j], m[t][t]);
                col_sub(j, t, q);
                if (!CycRing::is_zero(m[t][j])) {
                    col_swap(t, j);
                    dirty = true;
                }
            }
        }
    }
    return res;
}

/// The rank(T)/2 generators over Z[zeta_n], the eigenvector pairs, and the
/// Hermitian Gram matrix of the transcendental part of an order 3, 4, or 6
/// isometry. Entries are split into 1- and zeta-components.
struct HermitianModule {
    unsigned long order = 0;
    Int tau;                       // zeta + conj(zeta)
    Int trace_constant;            // Tr h(x_a, x_b) = trace_constant * (a . b)
    std::size_t rank_over_ring = 0;
    IMat basis;                    // rows: ring basis of T in T coordinates
    IMat pair_a, pair_b;           // rows: ambient pairs, element x = a + zeta b
    IMat h_u, h_v;                 // Hermitian Gram h = h_u + zeta h_v
    Signature hermitian_signature; // (p, q) with p + q = rank_over_ring
};

/// Builds the Hermitian module of the transcendental lattice. The embedding
/// sends a to x_a = a - zeta rho(a), which satisfies rho(x_a) = zeta x_a and
/// turns T into a free Z[zeta_n]-module; the Hermitian form is x . conj(y)
/// with Tr h(x_a, x_b) = kappa (a . b), kappa = 3, 4, 3 for n = 3, 4, 6.
inline HermitianModule hermitian_module(const EigenlatticeDecomposition& dec, const Isometry& rho) {
    if (dec.order != rho.order()) throw domain_error("hermitian_module: decomposition/isometry order mismatch");
    CycRing ring(dec.order);
    const IMat& bt = dec.transcendental.basis();
    const std::size_t tn = bt.rows();

    // Minimal polynomial Phi_n on T: the cyclotomic polynomial annihilates it.
    IMat phi = matrix_poly_eval(cyclotomic_polynomial(dec.order), rho.matrix());
    if (!mul(bt, transpose(phi)).is_zero())
        throw domain_error("hermitian_module: the action on T is not annihilated by Phi_n");

    HermitianModule out;
    out.order = dec.order;
    out.tau = ring.tau();
    out.trace_constant = dec.order == 4 ? Int(4) : Int(3);
    out.rank_over_ring = tn / 2;
    if (tn == 0) {
        out.basis = IMat(0, 0);
        out.pair_a = IMat(0, rho.lattice().rank());
        out.pair_b = IMat(0, rho.lattice().rank());
        out.h_u = IMat(0, 0);
        out.h_v = IMat(0, 0);
        return out;
    }

    // Action of rho restricted to T (column convention).
    IMat z = restrict_action(rho.matrix(), bt);
    IMat zt = transpose(z);

    // T presents as the cokernel of zeta I - Z^T over the ring; freeness makes
    // the Smith divisors units and zeros, and rows of Vinv at the zero
    // positions descend to a ring basis.
    CycMat rel(tn, std::vector<Cyc>(tn));
    for (std::size_t i = 0; i < tn; ++i)
        for (std::size_t j = 0; j < tn; ++j) {
            rel[i][j] = Cyc{-zt(i, j), Int(i == j ? 1 : 0)};
        }
    CycSnfResult snf = cyc_smith(ring, rel);
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < tn; ++i) {
        if (CycRing::is_zero(snf.d[i][i])) {
            free_idx.push_back(i);
        } else if (!ring.is_unit(snf.d[i][i])) {
            throw domain_error("hermitian_module: transcendental part is not a free module");
        }
    }
    if (free_idx.size() != out.rank_over_ring)
        throw domain_error("hermitian_module: unexpected module rank");

    // Generator rows in T coordinates: (u + v zeta) e_j maps to u e_j + v rho(e_j).
    out.basis = IMat(out.rank_over_ring, tn);
    for (std::size_t g = 0; g < free_idx.size(); ++g) {
        IVec uvec(tn), vvec(tn);
        for (std::size_t j = 0; j < tn; ++j) {
            uvec[j] = snf.vinv[free_idx[g]][j].u;
            vvec[j] = snf.vinv[free_idx[g]][j].v;
        }
        out.basis.set_row(g, vec_add(uvec, row_mul(vvec, zt)));
    }

    // (t_i, zeta t_i) must be a Z-basis of T.
    IMat full = vstack(out.basis, mul(out.basis, zt));
    if (abs(det_bareiss(full)) != 1)
        throw domain_error("hermitian_module: internal (generators do not span)");

    // Ambient eigenvector pairs x = a + zeta b with b = -rho(a).
    const std::size_t amb = rho.lattice().rank();
    out.pair_a = IMat(out.rank_over_ring, amb);
    out.pair_b = IMat(out.rank_over_ring, amb);
    for (std::size_t g = 0; g < out.rank_over_ring; ++g) {
        const IVec a = row_mul(out.basis.row(g), bt);
        const IVec b = vec_scale(apply(rho.matrix(), a), Int(-1));
        // rho(b) = a + tau b confirms the eigenvector relation.
        if (apply(rho.matrix(), b) != vec_add(a, vec_scale(b, ring.tau())))
            throw domain_error("hermitian_module: internal (eigenvector relation)");
        out.pair_a.set_row(g, a);
        out.pair_b.set_row(g, b);
    }

    // Hermitian Gram from s = t_i . t_j and w = t_i . rho(t_j):
    //   n=3: h = (2s + w) + zeta (s + 2w)
    //   n=4: h = 2s + zeta (2w)
    //   n=6: h = (2s - w) + zeta (2w - s)
    IMat gt = dec.transcendental.gram();
    IMat s = mul(mul(out.basis, gt), transpose(out.basis));
    IMat w = mul(mul(out.basis, gt), transpose(mul(out.basis, zt)));
    out.h_u = IMat(out.rank_over_ring, out.rank_over_ring);
    out.h_v = IMat(out.rank_over_ring, out.rank_over_ring);
    for (std::size_t i = 0; i < out.rank_over_ring; ++i)
        for (std::size_t j = 0; j < out.rank_over_ring; ++j) {
            const Int &sv = s(i, j), &wv = w(i, j);
            switch (dec.order) {
                case 3:
                    out.h_u(i, j) = 2 * sv + wv;
                    out.h_v(i, j) = sv + 2 * wv;
                    break;
                case 4:
                    out.h_u(i, j) = 2 * sv;
                    out.h_v(i, j) = 2 * wv;
                    break;
                default: // 6
                    out.h_u(i, j) = 2 * sv - wv;
                    out.h_v(i, j) = 2 * wv - sv;
                    break;
            }
        }

    // Hermitian symmetry: h(j,i) = conj h(i,j).
    for (std::size_t i = 0; i < out.rank_over_ring; ++i)
        for (std::size_t j = 0; j < out.rank_over_ring; ++j) {
            Cyc hij{out.h_u(i, j), out.h_v(i, j)};
            Cyc hji{out.h_u(j, i), out.h_v(j, i)};
            if (!(hji == ring.conj(hij)))
                throw domain_error("hermitian_module: internal (hermitian symmetry)");
        }

    Signature st = signature(dec.transcendental.as_lattice());
    if (st.zero != 0 || st.positive % 2 != 0 || st.negative % 2 != 0)
        throw domain_error("hermitian_module: transcendental signature is not of complex type");
    out.hermitian_signature = Signature{st.positive / 2, st.negative / 2, 0};
    return out;
}

} // namespace latt
