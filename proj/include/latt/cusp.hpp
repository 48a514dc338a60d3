#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "latt/errors.hpp"
#include "latt/isometry.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"
#include "latt/snf.hpp"
#include "latt/sublattice.hpp"

namespace latt {

/// A primitive sublattice on which the form vanishes identically.
/// Rank 1 and 2 are the boundary-relevant cases.
struct IsotropicSublattice {
    Sublattice sub;
    std::size_t rank;
};

inline IsotropicSublattice make_isotropic(const Sublattice& s) {
    if (!is_isotropic(s)) throw domain_error("sublattice is not isotropic");
    if (!is_primitive(s)) throw domain_error("isotropic sublattice must be primitive");
    if (s.rank() < 1 || s.rank() > 2)
        throw domain_error("only rank 1 and 2 isotropic sublattices are classified");
    return IsotropicSublattice{s, s.rank()};
}

struct CuspReport {
    IsotropicSublattice j;
    bool rho_invariant = false;
    std::optional<unsigned long> restricted_order; // set when rho_invariant
    bool admissible = false;
    std::string j_invariant_class = "n/a"; // "j=0", "j=1728", or "n/a"
};

namespace detail {

/// Coordinate values in the scan order 0, 1, -1, 2, -2, ...
inline Int unfolded_value(long k) { return k % 2 == 1 ? Int(k / 2 + 1) : Int(-(k / 2)); }

} // namespace detail

/// Bounded search for a primitive isotropic vector: a definite lattice is
/// rejected outright, a catalog hyperbolic block is used when present, and
/// otherwise a box of the given radius is scanned. A miss never claims
/// nonexistence beyond the bound.
inline std::optional<IVec> find_isotropic_vector(const Lattice& l, const Int& bound) {
    if (bound < 1) throw domain_error("isotropic search bound must be positive");
    Signature sig = signature(l);
    if (sig.zero != 0) throw degenerate_lattice_error("isotropic search requires a nondegenerate lattice");
    const std::size_t n = l.rank();
    if (sig.positive == n || sig.negative == n) return std::nullopt;

    // Hyperbolic block shortcut: rows i, j carry exactly an H summand.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (l.gram()(i, i) != 0 || l.gram()(j, j) != 0 || l.gram()(i, j) != 1) continue;
            bool clean = true;
            for (std::size_t k = 0; k < n && clean; ++k) {
                if (k == i || k == j) continue;
                clean = l.gram()(i, k) == 0 && l.gram()(j, k) == 0;
            }
            if (clean) {
                IVec v(n, Int(0));
                v[i] = 1;
                return v;
            }
        }

    // Box scan; coordinates run over 0, 1, -1, 2, -2, ... so small
    // nonnegative witnesses are preferred.
    long width = 2 * bound.convert_to<long>() + 1;
    std::vector<long> idx(n, 0);
    while (true) {
        IVec v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = detail::unfolded_value(idx[i]);
        if (!vec_is_zero(v) && content(v) == 1 && l.norm(v) == 0) return v;
        std::size_t k = n;
        while (k > 0 && idx[k - 1] == width - 1) idx[--k] = 0;
        if (k == 0) break;
        ++idx[k - 1];
    }
    return std::nullopt;
}

/// Classifies an isotropic sublattice of the transcendental part as a
/// boundary cusp of the eigenperiod domain: admissible means a rank 2
/// invariant plane on which the isometry restricts with full order n, which
/// forces n into {3, 4, 6} and pins the symbolic j-class.
inline CuspReport classify_cusp(const IsotropicSublattice& j, const Isometry& rho) {
    if (j.sub.ambient() != rho.lattice()) throw domain_error("cusp and isometry lattices differ");
    if (rho.order() < 3) throw domain_error("cusp classification requires order at least 3");

    EigenlatticeDecomposition dec = eigenlattice_decomposition(rho);
    // T is saturated, so rational span containment decides membership.
    if (rank_of(vstack(dec.transcendental.basis(), j.sub.basis())) != dec.transcendental.rank())
        throw domain_error("cusp must lie in the transcendental part");

    CuspReport report{j, false, std::nullopt, false, "n/a"};
    IMat image = mul(j.sub.basis(), transpose(rho.matrix()));
    report.rho_invariant = same_subgroup(j.sub, Sublattice(rho.lattice(), image));
    if (!report.rho_invariant) return report;

    IMat restricted = restrict_action(rho.matrix(), j.sub.basis());
    report.restricted_order = detail::multiplicative_order(restricted);
    report.admissible = j.rank == 2 && *report.restricted_order == rho.order();
    if (report.admissible) {
        unsigned long n = rho.order();
        // A plane restriction lives in GL2(Z), whose element orders are
        // 1, 2, 3, 4, 6; full order n therefore certifies n in {3, 4, 6}.
        if (n != 3 && n != 4 && n != 6)
            throw domain_error("internal: admissible cusp with order outside {3,4,6}");
        report.j_invariant_class = n == 4 ? "j=1728" : "j=0";
    }
    return report;
}

struct CuspScan {
    Int bound;
    std::vector<CuspReport> reports;
};

/// Scans the transcendental part for candidate rank 2 isotropic planes
/// spanned by a primitive vector and its image, up to the coordinate bound,
/// and classifies each. Exhaustive only relative to the bound, which is
/// echoed in the result.
inline CuspScan scan_cusps(const Isometry& rho, const Int& bound) {
    if (bound < 1) throw domain_error("cusp scan bound must be positive");
    if (rho.order() < 3) throw domain_error("cusp scan requires order at least 3");
    CuspScan scan{bound, {}};

    EigenlatticeDecomposition dec = eigenlattice_decomposition(rho);
    const Sublattice& t = dec.transcendental;
    const std::size_t tn = t.rank();
    if (tn < 2) return scan;
    Lattice tl = t.as_lattice();
    Signature sig = signature(tl);
    if (sig.positive == tn || sig.negative == tn) return scan;

    IMat z = restrict_action(rho.matrix(), t.basis());
    IMat zt = transpose(z);

    std::vector<IMat> seen;
    long width = 2 * bound.convert_to<long>() + 1;
    std::vector<long> idx(tn, 0);
    while (true) {
        IVec v(tn);
        for (std::size_t i = 0; i < tn; ++i) v[i] = detail::unfolded_value(idx[i]);
        if (!vec_is_zero(v) && content(v) == 1 && tl.norm(v) == 0) {
            IVec w = row_mul(v, zt);
            IMat pair(2, tn);
            pair.set_row(0, v);
            pair.set_row(1, w);
            // Need an honest plane (no real eigenvectors) that is isotropic.
            if (rank_of(pair) == 2 && tl.dot(v, w) == 0) {
                IMat plane = hnf_basis(mul(saturate_rows(pair), t.basis()));
                bool fresh = true;
                for (const IMat& b : seen)
                    if (b == plane) {
                        fresh = false;
                        break;
                    }
                if (fresh) {
                    seen.push_back(plane);
                    IsotropicSublattice j = make_isotropic(Sublattice(rho.lattice(), plane));
                    scan.reports.push_back(classify_cusp(j, rho));
                }
            }
        }
        std::size_t k = tn;
        while (k > 0 && idx[k - 1] == width - 1) idx[--k] = 0;
        if (k == 0) break;
        ++idx[k - 1];
    }

    std::sort(scan.reports.begin(), scan.reports.end(), [](const CuspReport& a, const CuspReport& b) {
        return compare(a.j.sub.basis(), b.j.sub.basis()) < 0;
    });
    return scan;
}

} // namespace latt
