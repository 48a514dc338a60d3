// Walkthrough of the finite-order machinery on a small worked example: a
// rotation of order 3 acting on H(3) + A2, its eigenlattice decomposition,
// the Hermitian module carried by the moving part, and the cusp scan of the
// induced boundary data.

#include <cstdio>
#include <string>

#include "latt/cusp.hpp"
#include "latt/discriminant.hpp"
#include "latt/hermitian.hpp"
#include "latt/isometry.hpp"

using namespace latt;

namespace {

std::string show(const IMat& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : " ";
        out += "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += to_string(m(i, j));
        }
        out += "]";
    }
    out += "]";
    return out;
}

void describe(const char* name, const Lattice& l) {
    Signature s = signature(l);
    std::printf("%s: rank %zu, signature (%zu, %zu), det %s, gram %s\n", name, l.rank(),
                s.positive, s.negative, to_string(determinant(l)).c_str(),
                show(l.gram()).c_str());
}

} // namespace

int main() {
    // The ambient lattice: a hyperbolic plane scaled by 3 next to A2, with
    // the rotation acting as the identity on the plane and as an order-3
    // rotation on the A2 summand.
    Lattice amb = direct_sum(rescale(lattice_H(), Int(3)), lattice_A(2));
    IMat m = IMat::identity(4);
    m(2, 2) = 0;
    m(2, 3) = -1;
    m(3, 2) = 1;
    m(3, 3) = -1;
    Isometry rho(amb, m);

    describe("ambient", amb);
    std::printf("isometry order: %lu (feasible for a K3 action: %s)\n\n", rho.order(),
                order_feasible_for_k3(rho.order()) ? "yes" : "no");

    EigenlatticeDecomposition dec = eigenlattice_decomposition(rho);
    describe("fixed part L^G", dec.fixed.as_lattice());
    describe("picard part S", dec.picard.as_lattice());
    describe("moving part T", dec.transcendental.as_lattice());

    SignatureConditionReport cond = signature_condition_check(dec);
    std::printf("signature conditions: S %s, T %s\n\n", cond.s_passes ? "pass" : "fail",
                cond.t_passes ? "pass" : "fail");

    // T is a free module over Z[zeta_3]; the trace of its Hermitian form
    // recovers the integral pairing.
    HermitianModule mod = hermitian_module(dec, rho);
    std::printf("hermitian module: rank %zu over Z[zeta_%lu], signature (%zu, %zu)\n",
                mod.rank_over_ring, mod.order, mod.hermitian_signature.positive,
                mod.hermitian_signature.negative);
    std::printf("  h_u %s, h_v %s, trace constant %s\n\n", show(mod.h_u).c_str(),
                show(mod.h_v).c_str(), to_string(mod.trace_constant).c_str());

    // A second example where the boundary search has something to find: an
    // order-3 isometry on a lattice containing an invariant rank-2 isotropic
    // plane. The scan walks short isotropic vectors and reports each
    // invariant plane with the order of the restricted action.
    Lattice planted(IMat{{Int(0), Int(0), Int(2), Int(-1)},
                         {Int(0), Int(0), Int(-1), Int(2)},
                         {Int(2), Int(-1), Int(8), Int(-4)},
                         {Int(-1), Int(2), Int(-4), Int(8)}});
    IMat pm(4, 4);
    pm(0, 1) = -1;
    pm(1, 0) = 1;
    pm(1, 1) = -1;
    pm(2, 3) = -1;
    pm(3, 2) = 1;
    pm(3, 3) = -1;
    Isometry planted_rho(planted, pm);

    describe("planted ambient", planted);
    CuspScan scan = scan_cusps(planted_rho, Int(1));
    std::printf("cusp scan (bound 1): %zu candidate(s)\n", scan.reports.size());
    for (const CuspReport& rep : scan.reports) {
        std::printf("  basis %s: %s", show(rep.j.sub.basis()).c_str(),
                    rep.admissible ? "admissible" : "not admissible");
        if (rep.restricted_order)
            std::printf(", restricted order %lu, class %s", *rep.restricted_order,
                        rep.j_invariant_class.c_str());
        std::printf("\n");
    }
    return 0;
}
