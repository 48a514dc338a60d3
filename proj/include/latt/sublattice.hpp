#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "latt/errors.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"
#include "latt/snf.hpp"

namespace latt {

/// A finitely generated subgroup of an ambient lattice, stored as an explicit
/// row basis in ambient coordinates.  The basis choice is part of the value;
/// derived operations (saturation, complements, kernels) return canonical
/// HNF bases so equal subgroups compare equal bytewise there.
class Sublattice {
public:
    Sublattice(Lattice ambient, IMat basis)
        : ambient_(std::move(ambient)), basis_(std::move(basis)) {
        if (basis_.rows() > 0 && basis_.cols() != ambient_.rank())
            throw domain_error("sublattice basis has wrong ambient dimension");
        if (basis_.rows() == 0) basis_ = IMat(0, ambient_.rank());
        if (rank_of(basis_) != basis_.rows())
            throw domain_error("sublattice basis rows are dependent");
    }

    const Lattice& ambient() const { return ambient_; }
    const IMat& basis() const { return basis_; }
    std::size_t rank() const { return basis_.rows(); }

    /// Gram matrix of the restricted form in this basis.
    IMat gram() const { return mul(mul(basis_, ambient_.gram()), transpose(basis_)); }

    Lattice as_lattice() const { return Lattice(gram()); }

    bool contains(const IVec& v) const { return in_row_span(basis_, v); }

    /// Coordinates of v in this basis (nullopt if v is outside the subgroup).
    std::optional<IVec> coordinates_of(const IVec& v) const {
        IMat b(1, v.size());
        b.set_row(0, v);
        auto x = int_solve_left(basis_, b);
        if (!x) return std::nullopt;
        return x->row(0);
    }

    /// Ambient vector with the given coordinates in this basis.
    IVec to_ambient(const IVec& coords) const { return row_mul(coords, basis_); }

private:
    Lattice ambient_;
    IMat basis_;
};

inline bool same_subgroup(const Sublattice& a, const Sublattice& b) {
    return a.ambient() == b.ambient() && hnf_basis(a.basis()) == hnf_basis(b.basis());
}

/// Saturation (primitive closure): same rational span, canonical basis.
inline Sublattice saturate(const Sublattice& s) {
    return Sublattice(s.ambient(), saturate_rows(s.basis()));
}

inline bool is_primitive(const Sublattice& s) {
    return hnf_basis(s.basis()) == saturate_rows(s.basis());
}

/// {v in L : v.s = 0 for all s in S}.  Requires a nondegenerate ambient form.
inline Sublattice orthogonal_complement(const Sublattice& s) {
    require_nondegenerate(s.ambient(), "orthogonal_complement");
    IMat bg = mul(s.basis(), s.ambient().gram());
    return Sublattice(s.ambient(), kernel_cols(bg));
}

inline bool is_isotropic(const Sublattice& s) { return s.gram().is_zero(); }

/// J^perp / J for primitive isotropic J, with enough data to move vectors
/// between the ambient lattice and quotient coordinates.
class QuotientLattice {
public:
    QuotientLattice(const Sublattice& j) : j_(j) {
        require_nondegenerate(j.ambient(), "quotient_lattice");
        if (!is_isotropic(j)) throw domain_error("quotient_lattice: J is not isotropic");
        if (!is_primitive(j)) throw domain_error("quotient_lattice: J is not primitive");
        Sublattice perp = orthogonal_complement(j);
        perp_ = perp.basis();
        const std::size_t r = j.rank(), pn = perp_.rows();
        // Coordinates of J inside J^perp; saturated because J is primitive.
        auto c = int_solve_left(perp_, j.basis());
        if (!c) throw domain_error("quotient_lattice: internal (J outside its complement)");
        SnfResult s = smith_normal_form(*c);
        for (std::size_t i = 0; i < r; ++i) {
            if (s.d(i, i) != 1) throw domain_error("quotient_lattice: internal (J not primitive in J^perp)");
        }
        // Rows of vinv form a basis of Z^pn whose first r rows span the image
        // of J; the rest complete it and descend to a quotient basis.
        IMat w(pn - r, pn);
        for (std::size_t i = r; i < pn; ++i)
            for (std::size_t k = 0; k < pn; ++k) w(i - r, k) = s.vinv(i, k);
        reps_ = mul(w, perp_);
        quotient_ = Lattice(mul(mul(reps_, j.ambient().gram()), transpose(reps_)));
    }

    const Sublattice& j() const { return j_; }
    const Lattice& quotient() const { return quotient_; }
    std::size_t rank() const { return quotient_.rank(); }

    /// Basis of J^perp in ambient coordinates.
    const IMat& perp_basis() const { return perp_; }

    /// Ambient representatives of the quotient basis vectors.
    const IMat& representatives() const { return reps_; }

    bool in_perp(const IVec& v) const { return in_row_span(perp_, v); }

    /// Quotient coordinates of the class of v; requires v in J^perp.
    IVec project(const IVec& v) const {
        IMat stacked = vstack(j_.basis(), reps_);
        IMat b(1, v.size());
        b.set_row(0, v);
        auto x = int_solve_left(stacked, b);
        if (!x) throw domain_error("project: vector is not in J^perp");
        IVec out(reps_.rows());
        for (std::size_t i = 0; i < reps_.rows(); ++i) out[i] = (*x)(0, j_.rank() + i);
        return out;
    }

    /// Ambient representative of a quotient class.
    IVec lift(const IVec& qcoords) const { return row_mul(qcoords, reps_); }

    /// Image in quotient coordinates of a subgroup of J^perp (rows in ambient
    /// coordinates), as a canonical basis.
    IMat project_subgroup(const IMat& rows) const {
        IMat out(rows.rows(), reps_.rows());
        for (std::size_t i = 0; i < rows.rows(); ++i) out.set_row(i, project(rows.row(i)));
        return hnf_basis(out);
    }

private:
    Sublattice j_;
    IMat perp_;
    IMat reps_;
    Lattice quotient_;
};

/// Intersection of two row-span subgroups of Z^n (exact if both are the full
/// integral span of their rows, e.g. saturated subgroups or HNF bases).
inline IMat intersect_rows(const IMat& a, const IMat& b) {
    if (a.rows() == 0 || b.rows() == 0) return IMat(0, a.cols() ? a.cols() : b.cols());
    IMat stacked = vstack(a, scale(b, Int(-1)));
    IMat ker = left_kernel(stacked); // rows (y|z) with y a = z b
    IMat image(ker.rows(), a.cols());
    for (std::size_t i = 0; i < ker.rows(); ++i) {
        IVec y(a.rows());
        for (std::size_t k = 0; k < a.rows(); ++k) y[k] = ker(i, k);
        image.set_row(i, row_mul(y, a));
    }
    return hnf_basis(image);
}

} // namespace latt
