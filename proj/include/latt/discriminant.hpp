#pragma once

#include <cstddef>
#include <tuple>
#include <vector>

#include "latt/errors.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"
#include "latt/snf.hpp"

namespace latt {

inline Rat mod_one(const Rat& q) { return q - Rat(floor_rat(q)); }

inline Rat mod_two(const Rat& q) {
    Rat r = q - 2 * Rat(floor_rat(q / 2));
    return r;
}

/// The finite quadratic form on L*/L of a nondegenerate even lattice:
/// cyclic orders d1 | d2 | ..., generators as rational ambient coordinates,
/// q values mod 2Z (canonical representative in [0,2)) and pairing values
/// mod Z (representative in [0,1)).
struct DiscriminantForm {
    IVec orders;   // nontrivial elementary divisors of the Gram matrix
    QMat gens;     // one generator per order, rows, coordinates in the L basis
    QVec q_values; // q(g_i) mod 2Z
    QMat b_values; // b(g_i, g_j) mod Z

    Int group_order() const {
        Int o(1);
        for (const auto& d : orders) o *= d;
        return o;
    }
};

inline DiscriminantForm discriminant_form(const Lattice& l) {
    require_nondegenerate(l, "discriminant_form");
    if (!is_even(l)) throw domain_error("discriminant_form: lattice must be even");
    const std::size_t n = l.rank();
    SnfResult s = smith_normal_form(l.gram());
    QMat ginv = q_inverse(to_rational(l.gram()));
    QMat m = mul(ginv, to_rational(s.uinv)); // column i = dual vector mapping to e_i in coker
    DiscriminantForm d;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i) {
        if (s.d(i, i) != 1) keep.push_back(i);
    }
    d.orders.resize(keep.size());
    d.gens = QMat(keep.size(), n);
    for (std::size_t t = 0; t < keep.size(); ++t) {
        d.orders[t] = s.d(keep[t], keep[t]);
        for (std::size_t j = 0; j < n; ++j) d.gens(t, j) = m(j, keep[t]);
    }
    QMat gq = to_rational(l.gram());
    QMat pair = mul(mul(d.gens, gq), transpose(d.gens));
    d.q_values.resize(keep.size());
    d.b_values = QMat(keep.size(), keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        d.q_values[i] = mod_two(pair(i, i));
        for (std::size_t j = 0; j < keep.size(); ++j) d.b_values(i, j) = mod_one(pair(i, j));
    }
    return d;
}

/// (rank, a, delta) for a 2-elementary discriminant group: a = length of
/// (Z/2)^a, delta = 0 when every q value is integral, else 1.  Rejects
/// lattices whose discriminant group has an element of order != 2.
inline std::tuple<std::size_t, std::size_t, int> two_elementary_fingerprint(const Lattice& l) {
    DiscriminantForm d = discriminant_form(l);
    for (const auto& o : d.orders) {
        if (o != 2) throw domain_error("two_elementary_fingerprint: group is not 2-elementary");
    }
    int delta = 0;
    for (const auto& q : d.q_values) {
        if (!is_integral(q)) delta = 1;
    }
    return {l.rank(), d.orders.size(), delta};
}

} // namespace latt
