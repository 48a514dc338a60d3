#pragma once

#include <cstddef>
#include <vector>

#include "latt/discriminant.hpp"
#include "latt/enumerate.hpp"
#include "latt/errors.hpp"
#include "latt/int_types.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"
#include "latt/sublattice.hpp"

namespace latt {

inline bool is_root(const Lattice& l, const IVec& v) { return l.norm(v) == -2; }

/// gcd of the entries of G v; the largest d with v/d still integral on L.
inline Int divisibility(const Lattice& l, const IVec& v) {
    if (vec_is_zero(v)) throw domain_error("divisibility of the zero vector");
    Int d = content(row_mul(v, l.gram()));
    if (d == 0) throw domain_error("divisibility requires a nondegenerate lattice");
    return d;
}

/// A norm -2 vector together with its divisibility and the coset v/div
/// in the dual quotient.
struct RootVector {
    Lattice ambient;
    IVec coords;
    Int norm;
    Int divisibility;
    QVec disc_image; // rational representative of (coords/divisibility) mod L
};

inline RootVector make_root(const Lattice& l, const IVec& v) {
    if (!is_root(l, v)) throw domain_error("vector is not a root (norm must be -2)");
    Int d = divisibility(l, v);
    QVec image(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) image[i] = Rat(v[i]) / Rat(d);
    return RootVector{l, v, Int(-2), d, image};
}

/// Reflection in a root: v -> v + (v . delta) delta. An involution fixing
/// the hyperplane orthogonal to delta.
inline IVec reflect(const Lattice& l, const IVec& delta, const IVec& v) {
    if (!is_root(l, delta)) throw domain_error("reflection requires a root");
    return vec_add(v, vec_scale(delta, l.dot(v, delta)));
}

inline IVec reflect(const Lattice& l, const RootVector& delta, const IVec& v) {
    return reflect(l, delta.coords, v);
}

/// Orbit separators for roots: all four entries are preserved by every
/// isometry of the lattice. Equal tuples carry no equivalence claim.
struct RootOrbitInvariant {
    Int norm;
    Int divisibility;
    Int disc_image_order; // order of [v/div] in the dual quotient
    Rat q_value;          // quadratic value of [v/div], reduced into [0, 2)
    bool operator==(const RootOrbitInvariant&) const = default;
};

inline RootOrbitInvariant root_orbit_invariant(const Lattice& l, const IVec& v) {
    if (!is_root(l, v)) throw domain_error("orbit invariant requires a root");
    Int d = divisibility(l, v);
    // k [v/d] = 0 in L*/L iff d divides k * content(v).
    Int order = d / gcd(d, content(v));
    Rat q = mod_two(Rat(l.norm(v)) / Rat(d * d));
    return RootOrbitInvariant{Int(-2), d, order, q};
}

enum class RootPresence { absent, present, undecided };

/// Decides whether the orthogonal complement of S contains a root, when the
/// complement is definite; an indefinite or degenerate complement is
/// reported as undecided rather than guessed at.
inline RootPresence has_root_in_complement(const Lattice& l, const Sublattice& s) {
    if (s.ambient() != l) throw domain_error("sublattice belongs to a different lattice");
    if (!is_primitive(s)) throw domain_error("root search requires a primitive sublattice");
    Sublattice comp = orthogonal_complement(s);
    if (comp.rank() == 0) return RootPresence::absent;
    Lattice cl = comp.as_lattice();
    Signature sig = signature(cl);
    if (sig.zero != 0 || (sig.positive != 0 && sig.negative != 0)) return RootPresence::undecided;
    if (sig.positive == cl.rank()) return RootPresence::absent;
    return enumerate_norm_vectors(cl, Int(-2)).empty() ? RootPresence::absent
                                                       : RootPresence::present;
}

} // namespace latt
