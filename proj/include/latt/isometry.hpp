#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "latt/errors.hpp"
#include "latt/lattice.hpp"
#include "latt/snf.hpp"
#include "latt/sublattice.hpp"

namespace latt {

/// Orders are established by iterated powering up to this many steps; past it
/// the order is reported as not established rather than guessed.
inline constexpr unsigned long kOrderCeiling = 10000;

/// Entry-size guard (in bits) that cuts off visibly divergent powers early.
inline constexpr unsigned kOrderEntryBitGuard = 512;

namespace detail {

inline unsigned max_entry_bits(const IMat& m) {
    unsigned best = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Int& x = m(i, j);
            if (x == 0) continue;
            unsigned b = boost::multiprecision::msb(abs(x)) + 1;
            if (b > best) best = b;
        }
    return best;
}

inline unsigned long multiplicative_order(const IMat& m) {
    IMat id = IMat::identity(m.rows());
    IMat p = m;
    for (unsigned long k = 1; k <= kOrderCeiling; ++k) {
        if (p == id) return k;
        if (max_entry_bits(p) > kOrderEntryBitGuard) break;
        p = mul(p, m);
    }
    throw domain_error("order not established (exceeds ceiling or diverges)");
}

} // namespace detail

/// An integer matrix acting on lattice coordinates (column convention) that
/// preserves the Gram form exactly. The multiplicative order is computed on
/// construction; matrices of unestablished order are rejected.
class Isometry {
public:
    Isometry(Lattice lattice, IMat m) : lattice_(std::move(lattice)), m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() != lattice_.rank())
            throw domain_error("isometry: matrix shape does not match the lattice rank");
        const IMat& g = lattice_.gram();
        if (mul(mul(transpose(m_), g), m_) != g)
            throw domain_error("isometry: form not preserved");
        order_ = detail::multiplicative_order(m_);
    }

    const Lattice& lattice() const { return lattice_; }
    const IMat& matrix() const { return m_; }
    unsigned long order() const { return order_; }

    /// Image of a coordinate row vector.
    IVec apply_to(const IVec& v) const { return apply(m_, v); }

private:
    Lattice lattice_;
    IMat m_;
    unsigned long order_;
};

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Finite order n >= 2 can act nonsymplectically on a K3 surface only when
/// phi(n) <= 20, with the single exception n = 60.
inline bool order_feasible_for_k3(unsigned long n) {
    if (n < 2) throw domain_error("order feasibility is defined for n >= 2");
    return euler_phi(n) <= 20 && n != 60;
}

namespace detail {

/// Exact quotient of polynomials with integer coefficients (ascending order);
/// throws when the division is not exact.
inline IVec poly_divexact(const IVec& num, const IVec& den) {
    if (den.empty() || den.back() == 0) throw domain_error("polynomial division by zero");
    IVec rem = num;
    if (rem.size() < den.size()) throw domain_error("polynomial division underflow");
    IVec quot(rem.size() - den.size() + 1, Int(0));
    for (std::size_t k = quot.size(); k-- > 0;) {
        Int lead = rem[k + den.size() - 1];
        if (lead % den.back() != 0) throw domain_error("polynomial division is not exact");
        Int c = lead / den.back();
        quot[k] = c;
        for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= c * den[j];
    }
    for (const Int& c : rem) {
        if (c != 0) throw domain_error("polynomial division has a remainder");
    }
    return quot;
}

} // namespace detail

/// Coefficients of the n-th cyclotomic polynomial, ascending degree.
inline IVec cyclotomic_polynomial(unsigned long n) {
    if (n == 0) throw domain_error("cyclotomic polynomial needs n >= 1");
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    IVec p(n + 1, Int(0));
    p[0] = -1;
    p[n] = 1;
    for (unsigned long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        p = detail::poly_divexact(p, cyclotomic_polynomial(d));
    }
    return p;
}

/// p(M) for a polynomial given by ascending coefficients.
inline IMat matrix_poly_eval(const IVec& coeffs, const IMat& m) {
    const std::size_t n = m.rows();
    IMat acc(n, n);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = mul(acc, m);
        for (std::size_t i = 0; i < n; ++i) acc(i, i) += coeffs[k];
    }
    return acc;
}

/// Saturated sublattice of vectors fixed by the isometry.
inline Sublattice fixed_lattice(const Isometry& iso) {
    IMat mi = iso.matrix();
    for (std::size_t i = 0; i < mi.rows(); ++i) mi(i, i) -= 1;
    return Sublattice(iso.lattice(), kernel_cols(mi));
}

struct EigenlatticeDecomposition {
    Sublattice fixed;          // vectors fixed by the action
    Sublattice transcendental; // saturated kernel of Phi_n(M)
    Sublattice picard;         // orthogonal complement of the transcendental part
    unsigned long order = 0;
};

inline EigenlatticeDecomposition eigenlattice_decomposition(const Isometry& iso) {
    if (iso.order() < 2) throw domain_error("eigenlattice decomposition needs order >= 2");
    require_nondegenerate(iso.lattice(), "eigenlattice_decomposition");
    IMat phi = matrix_poly_eval(cyclotomic_polynomial(iso.order()), iso.matrix());
    Sublattice t(iso.lattice(), kernel_cols(phi));
    return EigenlatticeDecomposition{fixed_lattice(iso), t, orthogonal_complement(t), iso.order()};
}

struct SignatureConditionReport {
    Signature t_signature;
    Signature s_signature;
    bool t_passes = false; // signature (2, l)
    bool s_passes = false; // signature (1, rank - 1)
};

/// Necessary signature conditions for the decomposition to come from an
/// algebraic surface with a marking: T of signature (2, l), S of (1, rank-1).
inline SignatureConditionReport signature_condition_check(const EigenlatticeDecomposition& dec) {
    SignatureConditionReport r;
    r.t_signature = signature(dec.transcendental.as_lattice());
    r.s_signature = signature(dec.picard.as_lattice());
    r.t_passes = r.t_signature.positive == 2 && r.t_signature.zero == 0;
    r.s_passes = r.s_signature.positive == 1 && r.s_signature.zero == 0;
    return r;
}

/// True when the two isometries of the same lattice commute as matrices.
inline bool commutes_with(const Isometry& gamma, const Isometry& rho) {
    if (!(gamma.lattice() == rho.lattice()))
        throw domain_error("commutes_with: isometries live on different lattices");
    return mul(gamma.matrix(), rho.matrix()) == mul(rho.matrix(), gamma.matrix());
}

/// Column-action matrix of the restriction of M to the row span of B; throws
/// when the subgroup is not invariant.
inline IMat restrict_action(const IMat& m, const IMat& b) {
    auto c = int_solve_left(b, mul(b, transpose(m)));
    if (!c) throw domain_error("restrict_action: subgroup is not invariant");
    return transpose(*c);
}

} // namespace latt
