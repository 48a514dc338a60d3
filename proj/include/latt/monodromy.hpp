#pragma once

#include <cstddef>

#include "latt/cusp.hpp"
#include "latt/errors.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"
#include "latt/sublattice.hpp"

namespace latt {

enum class KulikovType { type_I, type_II, type_III };

/// Degeneration data: a primitive isotropic class delta and a vanishing
/// class lambda taken in delta-perp modulo delta (a representative is
/// stored). lambda_norm is well defined on the quotient; the imprimitivity
/// is the content of the quotient image (0 when the image vanishes).
struct KulikovData {
    Lattice ambient;
    IVec delta;
    IVec lambda;
    Int lambda_norm;
    Int lambda_imprimitivity;
};

inline KulikovData make_kulikov(const Lattice& l, const IVec& delta, const IVec& lambda) {
    if (!is_nondegenerate(l)) throw degenerate_lattice_error("monodromy data needs a nondegenerate lattice");
    if (vec_is_zero(delta) || content(delta) != 1)
        throw domain_error("delta must be primitive and nonzero");
    if (l.norm(delta) != 0) throw domain_error("delta must be isotropic");
    if (l.dot(delta, lambda) != 0) throw domain_error("lambda must pair to zero with delta");

    IMat drow(1, delta.size());
    drow.set_row(0, delta);
    QuotientLattice q{Sublattice(l, drow)};
    return KulikovData{l, delta, lambda, l.norm(lambda), content(q.project(lambda))};
}

/// Matrix of x -> (x . lambda) delta - (x . delta) lambda in the column
/// convention: row vectors map through the transpose.
inline IMat picard_lefschetz_N(const KulikovData& data) {
    const std::size_t n = data.ambient.rank();
    IVec gl = row_mul(data.lambda, data.ambient.gram());
    IVec gd = row_mul(data.delta, data.ambient.gram());
    IMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = data.delta[i] * gl[j] - data.lambda[i] * gd[j];
    return m;
}

/// Type I/II/III by the class of lambda: zero, isotropic nonzero, or of
/// positive square. Cross-checked against the nilpotency index of N.
inline KulikovType kulikov_type(const KulikovData& data) {
    KulikovType type;
    if (data.lambda_imprimitivity == 0) {
        type = KulikovType::type_I;
    } else if (data.lambda_norm == 0) {
        type = KulikovType::type_II;
    } else if (data.lambda_norm > 0) {
        type = KulikovType::type_III;
    } else {
        throw domain_error("lambda has negative square: invalid as monodromy data");
    }

    IMat n = picard_lefschetz_N(data);
    IMat n2 = mul(n, n);
    bool match = (type == KulikovType::type_I && n.is_zero()) ||
                 (type == KulikovType::type_II && !n.is_zero() && n2.is_zero()) ||
                 (type == KulikovType::type_III && !n2.is_zero());
    if (!match) throw domain_error("internal: type does not match the nilpotency of N");
    return type;
}

/// Type III counts triple points (lambda squared); Type II counts double
/// curves (the imprimitivity of lambda in the quotient).
struct KulikovCounts {
    KulikovType type;
    Int count;
};

inline KulikovCounts kulikov_counts(const KulikovData& data) {
    KulikovType type = kulikov_type(data);
    if (type == KulikovType::type_I) throw domain_error("smooth degenerations have no curve counts");
    if (type == KulikovType::type_III) return {type, data.lambda_norm};
    return {type, data.lambda_imprimitivity};
}

/// The boundary lattice of the degeneration: the delta line in Type III,
/// the saturated delta-lambda plane in Type II.
inline IsotropicSublattice monodromy_lattice_J(const KulikovData& data) {
    KulikovType type = kulikov_type(data);
    if (type == KulikovType::type_I) throw domain_error("smooth degenerations have no boundary lattice");
    if (type == KulikovType::type_III) {
        IMat b(1, data.delta.size());
        b.set_row(0, data.delta);
        return make_isotropic(Sublattice(data.ambient, b));
    }
    IMat b(2, data.delta.size());
    b.set_row(0, data.delta);
    b.set_row(1, data.lambda);
    return make_isotropic(saturate(Sublattice(data.ambient, b)));
}

struct MonodromyExpLog {
    IMat t;      // I + N + N^2/2
    IMat n_back; // (T - I) - (T - I)^2/2, equal to N
};

/// Exponentiates a nilpotent logarithm with N^3 = 0 and inverts the
/// exponential. Integrality of N^2/2 is validated, never rationalized.
inline MonodromyExpLog monodromy_exp_log(const IMat& n) {
    if (n.rows() != n.cols()) throw domain_error("logarithm must be square");
    IMat n2 = mul(n, n);
    if (!mul(n2, n).is_zero()) throw domain_error("logarithm is not nilpotent of index at most 3");

    auto halve = [](const IMat& m) {
        IMat h(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (m(i, j) % 2 != 0)
                    throw domain_error("logarithm does not exponentiate integrally");
                h(i, j) = m(i, j) / 2;
            }
        return h;
    };

    MonodromyExpLog out;
    out.t = add(add(IMat::identity(n.rows()), n), halve(n2));
    IMat m = sub(out.t, IMat::identity(n.rows()));
    out.n_back = sub(m, halve(mul(m, m)));
    return out;
}

} // namespace latt
