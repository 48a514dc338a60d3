#include "catch2/catch_amalgamated.hpp"

#include <utility>
#include <vector>

#include "latt/isometry.hpp"
#include "latt/lattice.hpp"
#include "latt/semifan.hpp"
#include "latt/sublattice.hpp"

#include "semifan_fixtures.hpp"

using namespace latt;
using namespace latt::test;


TEST_CASE("symmetry group data validation") {
    Lattice l = period5();
    SECTION("commuting generators are accepted") {
        GroupData g = make_group_data({swap_planes(), neg_identity(l)}, neg_identity(l));
        REQUIRE(g.generators.size() == 2);
    }
    SECTION("non-commuting generators are rejected") {
        REQUIRE_THROWS_AS(make_group_data({swap_first_plane()}, swap_planes()), domain_error);
    }
    SECTION("generators on a different lattice are rejected") {
        REQUIRE_THROWS_AS(make_group_data({neg_identity(lattice_H())}, neg_identity(l)),
                          domain_error);
    }
}

TEST_CASE("ball data construction and validation") {
    Lattice l = period6();
    Sublattice j1 = span_rows(l, {unit(6, 0), unit(6, 2)});
    Sublattice j2 = span_rows(l, {unit(6, 1), unit(6, 3)});
    QuotientLattice q1(j1);

    SECTION("entries are canonicalized") {
        SemifanBallCase sf = make_ball_case(
            l, {{j1, IMat(0, q1.rank())}, {j2, IMat::identity(2)}});
        REQUIRE(sf.entries.size() == 2);
        REQUIRE(sf.entries[0].f.rows() == 0);
        REQUIRE(sf.entries[1].f == IMat::identity(2));
        REQUIRE(sf.entries[0].j.rank == 2);
    }
    SECTION("the ambient form must have two positive squares") {
        Lattice a2 = lattice_A(2);
        Sublattice s(a2, IMat{{Int(1), Int(0)}});
        REQUIRE_THROWS_AS(make_ball_case(a2, {{s, IMat(0, 0)}}), domain_error);
        REQUIRE_THROWS_AS(make_fan_case(lattice_K3(), {}), domain_error);
    }
    SECTION("keys must be rank 2") {
        Sublattice line = span_rows(l, {unit(6, 0)});
        REQUIRE_THROWS_AS(make_ball_case(l, {{line, IMat(0, 3)}}), domain_error);
    }
    SECTION("keys must be isotropic") {
        Sublattice bad = span_rows(l, {unit(6, 4), unit(6, 5)});
        REQUIRE_THROWS_AS(make_ball_case(l, {{bad, IMat(0, 2)}}), domain_error);
    }
    SECTION("duplicate keys are rejected, even under another presentation") {
        IVec mixed = vec_add(unit(6, 0), unit(6, 2));
        Sublattice again = span_rows(l, {unit(6, 0), mixed});
        REQUIRE_THROWS_AS(
            make_ball_case(l, {{j1, IMat(0, 2)}, {again, IMat(0, 2)}}), domain_error);
    }
    SECTION("subgroups must be saturated and live in the quotient") {
        IMat doubled = scale(rows_mat({q1.project(unit(6, 4))}, q1.rank()), Int(2));
        REQUIRE_THROWS_AS(make_ball_case(l, {{j1, doubled}}), domain_error);
        REQUIRE_THROWS_AS(make_ball_case(l, {{j1, IMat{{Int(1), Int(0), Int(0)}}}}),
                          domain_error);
    }
    SECTION("cusps from a different lattice are rejected") {
        Sublattice foreign = span_rows(period5(), {unit(5, 0), unit(5, 2)});
        REQUIRE_THROWS_AS(make_ball_case(l, {{foreign, IMat(0, 1)}}), domain_error);
    }
}

TEST_CASE("ball invariance under a cusp swapping symmetry") {
    Lattice l = period6();
    Isometry gamma = swap_both_planes6();
    GroupData g = make_group_data({gamma, neg_identity(l)}, gamma);
    Sublattice j1 = span_rows(l, {unit(6, 0), unit(6, 2)});
    Sublattice j2 = span_rows(l, {unit(6, 1), unit(6, 3)});
    QuotientLattice q1(j1), q2(j2);
    IMat g1_at1 = rows_mat({q1.project(unit(6, 4))}, q1.rank());
    IMat g1_at2 = rows_mat({q2.project(unit(6, 4))}, q2.rank());
    IMat g2_at2 = rows_mat({q2.project(unit(6, 5))}, q2.rank());

    SECTION("the zero and full extremes are invariant") {
        SemifanBallCase zero = make_ball_case(l, {{j1, IMat(0, 2)}, {j2, IMat(0, 2)}});
        SemifanBallCase full =
            make_ball_case(l, {{j1, IMat::identity(2)}, {j2, IMat::identity(2)}});
        REQUIRE(check_invariance_ball(zero, g).passed());
        REQUIRE(check_invariance_ball(full, g).passed());
    }
    SECTION("matched lines are invariant") {
        SemifanBallCase sf = make_ball_case(l, {{j1, g1_at1}, {j2, g1_at2}});
        SemifanReport rep = check_invariance_ball(sf, g);
        REQUIRE(rep.passed());
        REQUIRE(rep.issues.empty());
    }
    SECTION("mismatched lines are flagged at both cusps") {
        SemifanBallCase sf = make_ball_case(l, {{j1, g1_at1}, {j2, g2_at2}});
        SemifanReport rep = check_invariance_ball(sf, g);
        REQUIRE(rep.complete);
        REQUIRE_FALSE(rep.invariant);
        REQUIRE(rep.issues.size() == 2);
        for (const SemifanIssue& issue : rep.issues)
            REQUIRE(issue.kind == SemifanIssueKind::mismatched_image);
        REQUIRE_FALSE(rep.passed());
    }
    SECTION("a missing image cusp makes the data incomplete, not non-invariant") {
        SemifanBallCase sf = make_ball_case(l, {{j1, g1_at1}});
        SemifanReport rep = check_invariance_ball(sf, g);
        REQUIRE_FALSE(rep.complete);
        REQUIRE(rep.invariant);
        REQUIRE(rep.issues.size() == 1);
        REQUIRE(rep.issues[0].kind == SemifanIssueKind::missing_entry);
        REQUIRE(rep.issues[0].j_basis == j1.basis());
    }
    SECTION("generators on a different lattice are rejected") {
        SemifanBallCase sf = make_ball_case(l, {{j1, IMat(0, 2)}});
        GroupData foreign{{neg_identity(period5())}};
        REQUIRE_THROWS_AS(check_invariance_ball(sf, foreign), domain_error);
    }
}

TEST_CASE("fan data construction and validation") {
    Lattice l = period5();
    Sublattice j = span_rows(l, {unit(5, 0)});
    QuotientLattice q(j);
    IVec re = q.project(unit(5, 2));
    IVec rf = q.project(unit(5, 3));
    IVec rg = q.project(unit(5, 4));
    IVec w = vec_add(re, rf);

    SECTION("a valid fan is accepted and its rays are made primitive") {
        Cone cone{rows_mat({vec_scale(re, Int(3)), w}, q.rank()),
                  rows_mat({form_dual(q, vec_sub(rf, re))}, q.rank())};
        SemifanTypeIVCase sf = make_fan_case(l, {{j, Fan{{cone}, w, "chunk"}}});
        REQUIRE(sf.entries.size() == 1);
        REQUIRE(sf.entries[0].fan.cones[0].rays.row(0) == re);
        REQUIRE(sf.entries[0].fan.domain == "chunk");
    }
    SECTION("cones without rays are legal fragments") {
        Fan trivial{{Cone{IMat(0, q.rank()), rows_mat({form_dual(q, rg)}, q.rank())}}, w, ""};
        REQUIRE(make_fan_case(l, {{j, trivial}}).entries.size() == 1);
    }
    SECTION("keys must be rank 1") {
        Sublattice plane = span_rows(l, {unit(5, 0), unit(5, 2)});
        REQUIRE_THROWS_AS(make_fan_case(l, {{plane, Fan{{Cone{}}, w, ""}}}), domain_error);
    }
    SECTION("a fan needs at least one cone") {
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, Fan{{}, w, ""}}}), domain_error);
    }
    SECTION("the reference vector must have positive square and the right size") {
        Fan flat{{Cone{}}, re, ""};
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, flat}}), domain_error);
        Fan short_ref{{Cone{}}, IVec(2, Int(1)), ""};
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, short_ref}}), domain_error);
    }
    SECTION("rays must be nonzero, of nonnegative square, on the reference side") {
        Fan negsq{{Cone{rows_mat({rg}, q.rank()), IMat(0, q.rank())}}, w, ""};
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, negsq}}), domain_error);
        Fan wrong_side{{Cone{rows_mat({vec_scale(re, Int(-1))}, q.rank()), IMat(0, q.rank())}},
                       w,
                       ""};
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, wrong_side}}), domain_error);
        Fan zero_ray{{Cone{IMat(1, q.rank()), IMat(0, q.rank())}}, w, ""};
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, zero_ray}}), domain_error);
    }
    SECTION("supporting functionals must be nonnegative and vanish on a face") {
        Cone negative{rows_mat({re, w}, q.rank()),
                      rows_mat({form_dual(q, vec_sub(re, rf))}, q.rank())};
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, Fan{{negative}, w, ""}}}), domain_error);
        Cone interior{rows_mat({re, w}, q.rank()), rows_mat({form_dual(q, rf)}, q.rank())};
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, Fan{{interior}, w, ""}}}), domain_error);
    }
    SECTION("duplicate keys are rejected") {
        Fan trivial{{Cone{IMat(0, q.rank()), IMat(0, q.rank())}}, w, ""};
        REQUIRE_THROWS_AS(make_fan_case(l, {{j, trivial}, {j, trivial}}), domain_error);
    }
}

TEST_CASE("fan invariance under hyperbolic symmetries") {
    Lattice l = period5();
    Sublattice j = span_rows(l, {unit(5, 0)});
    QuotientLattice q(j);
    IVec re = q.project(unit(5, 2));
    IVec rf = q.project(unit(5, 3));
    IVec w = vec_add(re, rf);

    SECTION("a symmetric split is invariant, also under negation") {
        SemifanTypeIVCase sf = make_fan_case(l, {split_fan_entry(l, unit(5, 0))});
        GroupData g = make_group_data({swap_second_plane(), neg_identity(l)}, neg_identity(l));
        SemifanReport rep = check_invariance_fan(sf, g);
        REQUIRE(rep.passed());
        REQUIRE(rep.issues.empty());
    }
    SECTION("an asymmetric split is mapped to no cone of the fan") {
        IVec wa = vec_add(vec_scale(re, Int(2)), rf);
        Cone d1{rows_mat({re, wa}, q.rank()),
                rows_mat({form_dual(q, vec_sub(rf, vec_scale(re, Int(2)))), form_dual(q, re)},
                         q.rank())};
        Cone d2{rows_mat({wa, rf}, q.rank()),
                rows_mat({form_dual(q, vec_sub(vec_scale(re, Int(2)), rf)), form_dual(q, rf)},
                         q.rank())};
        SemifanTypeIVCase sf = make_fan_case(l, {{j, Fan{{d1, d2}, w, ""}}});
        GroupData g = make_group_data({swap_second_plane()}, neg_identity(l));
        SemifanReport rep = check_invariance_fan(sf, g);
        REQUIRE(rep.complete);
        REQUIRE_FALSE(rep.invariant);
        REQUIRE(rep.issues.size() == 2);
        for (const SemifanIssue& issue : rep.issues)
            REQUIRE(issue.kind == SemifanIssueKind::non_cone_image);
    }
    SECTION("cusps swapped by a generator must carry matching cone counts") {
        auto at_e1 = split_fan_entry(l, unit(5, 0));
        auto at_f1 = split_fan_entry(l, unit(5, 1));
        QuotientLattice qf(at_f1.first);
        Cone extra{rows_mat({qf.project(unit(5, 2))}, qf.rank()), IMat(0, qf.rank())};
        at_f1.second.cones.push_back(extra);
        SemifanTypeIVCase sf = make_fan_case(l, {at_e1, at_f1});
        GroupData g = make_group_data({swap_first_plane()}, neg_identity(l));
        SemifanReport rep = check_invariance_fan(sf, g);
        REQUIRE(rep.complete);
        REQUIRE_FALSE(rep.invariant);
        bool count_issue = false, cone_issue = false;
        for (const SemifanIssue& issue : rep.issues) {
            if (issue.kind == SemifanIssueKind::cone_count_mismatch) count_issue = true;
            if (issue.kind == SemifanIssueKind::non_cone_image) cone_issue = true;
        }
        REQUIRE(count_issue);
        REQUIRE(cone_issue);
    }
    SECTION("an image cusp without an entry is reported as missing") {
        SemifanTypeIVCase sf = make_fan_case(l, {split_fan_entry(l, unit(5, 0))});
        GroupData g = make_group_data({swap_first_plane()}, neg_identity(l));
        SemifanReport rep = check_invariance_fan(sf, g);
        REQUIRE_FALSE(rep.complete);
        REQUIRE(rep.invariant);
        REQUIRE(rep.issues.size() == 1);
        REQUIRE(rep.issues[0].kind == SemifanIssueKind::missing_entry);
    }
}

TEST_CASE("compatibility along an isotropic plane") {
    Lattice l = period5();
    IsotropicSublattice jp = make_isotropic(span_rows(l, {unit(5, 0), unit(5, 2)}));

    SECTION("the members of the plane at bound one are the four expected lines") {
        std::vector<IsotropicSublattice> members = rank_one_members(jp, Int(1));
        REQUIRE(members.size() == 4);
        for (const IsotropicSublattice& m : members) REQUIRE(m.rank == 1);
    }
    SECTION("the bound widens the member list") {
        REQUIRE(rank_one_members(jp, Int(2)).size() == 8);
    }
    SECTION("fans cutting down to the plane image induce the zero subgroup") {
        SemifanTypeIVCase sf = make_fan_case(l, plane_entries(l, false, false));
        CompatibilityResult comp = compatibility_along(sf, jp, Int(1));
        REQUIRE(comp.compatible);
        REQUIRE(comp.induced.has_value());
        REQUIRE(comp.induced->rows() == 0);
        CompatibilityResult per_cone =
            compatibility_along(sf, jp, Int(1), CompatibilityMode::per_cone);
        REQUIRE(per_cone.compatible);
        REQUIRE(per_cone.induced->rows() == 0);
    }
    SECTION("fans without functionals induce the full boundary subgroup") {
        SemifanTypeIVCase sf = make_fan_case(l, plane_entries(l, true, false));
        CompatibilityResult comp = compatibility_along(sf, jp, Int(1));
        REQUIRE(comp.compatible);
        REQUIRE(*comp.induced == IMat::identity(1));
        REQUIRE(*comp.induced == hnf_basis(saturate_rows(*comp.induced)));
    }
    SECTION("a single perturbed member breaks compatibility") {
        SemifanTypeIVCase sf = make_fan_case(l, plane_entries(l, false, true));
        CompatibilityResult comp = compatibility_along(sf, jp, Int(1));
        REQUIRE_FALSE(comp.compatible);
        REQUIRE_FALSE(comp.induced.has_value());
        // The reported witness is a genuine member of the plane.
        REQUIRE(comp.witness.has_value());
        REQUIRE(comp.witness->rows() == 1);
        REQUIRE(rank_of(intersect_rows(*comp.witness, jp.sub.basis())) == 1);
        CompatibilityResult per_cone =
            compatibility_along(sf, jp, Int(1), CompatibilityMode::per_cone);
        REQUIRE_FALSE(per_cone.compatible);
    }
    SECTION("every member within the bound must carry an entry") {
        auto entries = plane_entries(l, true, false);
        entries.pop_back();
        SemifanTypeIVCase sf = make_fan_case(l, entries);
        REQUIRE_THROWS_AS(compatibility_along(sf, jp, Int(1)), domain_error);
    }
    SECTION("argument validation") {
        SemifanTypeIVCase sf = make_fan_case(l, plane_entries(l, true, false));
        REQUIRE_THROWS_AS(compatibility_along(sf, jp, Int(0)), domain_error);
        IsotropicSublattice line = make_isotropic(span_rows(l, {unit(5, 0)}));
        REQUIRE_THROWS_AS(compatibility_along(sf, line, Int(1)), domain_error);
        Lattice other = period6();
        IsotropicSublattice foreign =
            make_isotropic(span_rows(other, {unit(6, 0), unit(6, 2)}));
        REQUIRE_THROWS_AS(compatibility_along(sf, foreign, Int(1)), domain_error);
    }
}

TEST_CASE("compatibility is stable under symmetry transport") {
    Lattice l = period5();
    IsotropicSublattice jp = make_isotropic(span_rows(l, {unit(5, 0), unit(5, 2)}));
    Isometry gamma = swap_planes();

    auto transport = [&](const SemifanTypeIVCase& sf) {
        std::vector<std::pair<Sublattice, Fan>> mapped;
        for (const SemifanFanEntry& e : sf.entries) {
            IMat key2 = hnf_basis(mul(e.j.sub.basis(), transpose(gamma.matrix())));
            Sublattice image(l, key2);
            QuotientLattice q1(e.j.sub), q2(image);
            IMat m = detail::quotient_map(q1, q2, gamma.matrix());
            IMat minv = to_integral(q_inverse(to_rational(m)));
            Fan fan{{}, row_mul(e.fan.reference, m), e.fan.domain};
            for (const Cone& cone : e.fan.cones)
                fan.cones.push_back(
                    Cone{mul(cone.rays, m), mul(cone.hyperplanes, transpose(minv))});
            mapped.emplace_back(image, fan);
        }
        return make_fan_case(l, mapped);
    };

    SECTION("the induced subgroup is unchanged") {
        SemifanTypeIVCase sf = make_fan_case(l, plane_entries(l, false, false));
        CompatibilityResult before = compatibility_along(sf, jp, Int(1));
        CompatibilityResult after = compatibility_along(transport(sf), jp, Int(1));
        REQUIRE(before.compatible);
        REQUIRE(after.compatible);
        REQUIRE(*before.induced == *after.induced);
    }
    SECTION("incompatibility is preserved as well") {
        SemifanTypeIVCase sf = make_fan_case(l, plane_entries(l, false, true));
        REQUIRE_FALSE(compatibility_along(transport(sf), jp, Int(1)).compatible);
    }
}

TEST_CASE("pullback of ball data to the eigenstructure") {
    Lattice l = planted6();
    Isometry rho = planted6_rho();
    Sublattice plane = span_rows(l, {unit(6, 0), unit(6, 1)});
    QuotientLattice q(plane);
    IMat line = rows_mat({q.project(unit(6, 4))}, q.rank());
    GroupData g = make_group_data({rho}, rho);

    SECTION("the zero and full subgroups are fixed points of the pullback") {
        SemifanBallCase zero = make_ball_case(l, {{plane, IMat(0, 2)}});
        SemifanBallCase full = make_ball_case(l, {{plane, IMat::identity(2)}});
        REQUIRE(pullback_semifan(zero, rho).entries[0].f.rows() == 0);
        SemifanBallCase pulled = pullback_semifan(full, rho);
        REQUIRE(pulled.entries[0].f == IMat::identity(2));
        REQUIRE(check_invariance_ball(pulled, g).passed());
    }
    SECTION("a line with no invariant part collapses to zero") {
        SemifanBallCase sf = make_ball_case(l, {{plane, line}});
        REQUIRE_FALSE(check_invariance_ball(sf, g).passed());
        SemifanBallCase pulled = pullback_semifan(sf, rho);
        REQUIRE(pulled.entries[0].f.rows() == 0);
        REQUIRE(check_invariance_ball(pulled, g).passed());
    }
    SECTION("keys must be admissible cusps of the isometry") {
        IVec skew{Int(0), Int(-3), Int(1), Int(2), Int(1), Int(-1)};
        REQUIRE(l.norm(skew) == 0);
        REQUIRE(l.dot(skew, unit(6, 0)) == 0);
        SemifanBallCase sf = make_ball_case(l, {{span_rows(l, {unit(6, 0), skew}), IMat(0, 2)}});
        REQUIRE_THROWS_AS(pullback_semifan(sf, rho), domain_error);
    }
    SECTION("the isometry must act on the ambient lattice") {
        SemifanBallCase sf = make_ball_case(l, {{plane, IMat(0, 2)}});
        REQUIRE_THROWS_AS(pullback_semifan(sf, neg_identity(period5())), domain_error);
    }
}

TEST_CASE("pullback of fan data through compatibility") {
    Lattice l = planted6();
    Isometry rho = planted6_rho();
    IsotropicSublattice jp = make_isotropic(span_rows(l, {unit(6, 0), unit(6, 1)}));

    auto trivial_entry = [&](long a, long c) {
        IVec v = vec_add(vec_scale(unit(6, 0), Int(a)), vec_scale(unit(6, 1), Int(c)));
        Sublattice cusp = span_rows(l, {v});
        QuotientLattice q(cusp);
        Fan fan{{Cone{IMat(0, q.rank()), IMat(0, q.rank())}}, positive_class(q), "all"};
        return std::pair<Sublattice, Fan>{cusp, fan};
    };
    const long members[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};

    SECTION("trivial fans pull back to the full invariant boundary subgroup") {
        std::vector<std::pair<Sublattice, Fan>> entries;
        for (auto& m : members) entries.push_back(trivial_entry(m[0], m[1]));
        SemifanTypeIVCase sf = make_fan_case(l, entries);
        CompatibilityResult comp = compatibility_along(sf, jp, Int(1));
        REQUIRE(comp.compatible);
        REQUIRE(*comp.induced == IMat::identity(2));
        SemifanBallCase pulled = pullback_semifan(sf, rho, {jp}, Int(1));
        REQUIRE(pulled.entries.size() == 1);
        REQUIRE(pulled.entries[0].j.sub.basis() == jp.sub.basis());
        REQUIRE(pulled.entries[0].f == IMat::identity(2));
        REQUIRE(check_invariance_ball(pulled, make_group_data({rho}, rho)).passed());
    }
    SECTION("incompatible fans cannot be pulled back") {
        std::vector<std::pair<Sublattice, Fan>> entries;
        for (int i = 1; i < 4; ++i) entries.push_back(trivial_entry(members[i][0], members[i][1]));
        Sublattice cusp = span_rows(l, {unit(6, 0)});
        QuotientLattice q(cusp);
        IVec ray = q.project(unit(6, 1));
        IVec h = form_dual(q, q.project(unit(6, 4)));
        IVec ref = positive_class(q);
        if (q.quotient().dot(ray, ref) < 0) ref = vec_scale(ref, Int(-1));
        Fan cut{{Cone{rows_mat({ray}, q.rank()), rows_mat({h}, q.rank())}}, ref, "cut"};
        entries.push_back({cusp, cut});
        SemifanTypeIVCase sf = make_fan_case(l, entries);
        REQUIRE_FALSE(compatibility_along(sf, jp, Int(1)).compatible);
        REQUIRE_THROWS_AS(pullback_semifan(sf, rho, {jp}, Int(1)), domain_error);
    }
    SECTION("pullback cusps must be admissible") {
        std::vector<std::pair<Sublattice, Fan>> entries;
        for (auto& m : members) entries.push_back(trivial_entry(m[0], m[1]));
        SemifanTypeIVCase sf = make_fan_case(l, entries);
        IVec skew{Int(0), Int(-3), Int(1), Int(2), Int(1), Int(-1)};
        IsotropicSublattice bad = make_isotropic(span_rows(l, {unit(6, 0), skew}));
        REQUIRE_THROWS_AS(pullback_semifan(sf, rho, {bad}, Int(1)), domain_error);
    }
}
