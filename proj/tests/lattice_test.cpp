#include "catch2/catch_amalgamated.hpp"

#include "latt/discriminant.hpp"
#include "latt/lattice.hpp"
#include "latt/sublattice.hpp"
#include "test_util.hpp"

using namespace latt;
using latt::test::make_rng;
using latt::test::naive_det;
using latt::test::random_symmetric;

namespace {

IMat leading_minor(const IMat& a, std::size_t k) {
    IMat m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = a(i, j);
    return m;
}

// Sylvester criterion for negative definiteness: k-th leading principal minor
// has sign (-1)^k. Independent check that avoids signature().
bool negative_definite_by_minors(const Lattice& l) {
    for (std::size_t k = 1; k <= l.rank(); ++k) {
        Int d = naive_det(leading_minor(l.gram(), k));
        if (k % 2 == 1 ? d >= 0 : d <= 0) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("catalog lattices match their frozen gram matrices") {
    Lattice h = lattice_H();
    REQUIRE(h.gram() == IMat{{Int(0), Int(1)}, {Int(1), Int(0)}});
    REQUIRE(signature(h) == Signature{1, 1, 0});
    REQUIRE(determinant(h) == -1);
    REQUIRE(is_even(h));
    REQUIRE(is_unimodular(h));

    Lattice two = lattice_rank_one(Int(2));
    REQUIRE(two.gram() == IMat{{Int(2)}});

    Lattice a1 = lattice_A(1);
    REQUIRE(a1.gram() == IMat{{Int(-2)}});

    Lattice a2 = lattice_A(2);
    REQUIRE(a2.gram() == IMat{{Int(-2), Int(1)}, {Int(1), Int(-2)}});

    Lattice k3 = lattice_K3();
    REQUIRE(k3.rank() == 22);
    REQUIRE(signature(k3) == Signature{3, 19, 0});
    REQUIRE(determinant(k3) == -1);
    REQUIRE(is_even(k3));
    REQUIRE(is_unimodular(k3));
}

TEST_CASE("root lattice catalog is negative definite with known determinants") {
    Lattice e8 = lattice_E8();
    REQUIRE(e8.rank() == 8);
    REQUIRE(is_even(e8));
    REQUIRE(determinant(e8) == 1);
    REQUIRE(naive_det(e8.gram()) == 1);
    REQUIRE(negative_definite_by_minors(e8));
    REQUIRE(signature(e8) == Signature{0, 8, 0});

    // det A_n = (-1)^n (n+1), det D_n = (-1)^n 4 for the negated Cartan forms.
    for (std::size_t n = 1; n <= 6; ++n) {
        Lattice a = lattice_A(n);
        Int want = (n % 2 == 0 ? Int(1) : Int(-1)) * Int(n + 1);
        REQUIRE(determinant(a) == want);
        REQUIRE(naive_det(a.gram()) == want);
        REQUIRE(negative_definite_by_minors(a));
        REQUIRE(signature(a) == Signature{0, n, 0});
    }
    for (std::size_t n = 4; n <= 7; ++n) {
        Lattice d = lattice_D(n);
        Int want = (n % 2 == 0 ? Int(4) : Int(-4));
        REQUIRE(determinant(d) == want);
        REQUIRE(naive_det(d.gram()) == want);
        REQUIRE(negative_definite_by_minors(d));
        REQUIRE(signature(d) == Signature{0, n, 0});
    }

    REQUIRE_THROWS_AS(lattice_A(0), domain_error);
    REQUIRE_THROWS_AS(lattice_D(3), domain_error);
}

TEST_CASE("rescale multiplies the gram entrywise") {
    Lattice h3 = rescale(lattice_H(), Int(3));
    REQUIRE(h3.gram() == IMat{{Int(0), Int(3)}, {Int(3), Int(0)}});
    REQUIRE(determinant(h3) == -9);
    REQUIRE(signature(h3) == Signature{1, 1, 0});

    Lattice l = lattice_A(3);
    REQUIRE(rescale(l, Int(1)) == l);
    REQUIRE(rescale(lattice_rank_one(Int(2)), Int(-1)) == lattice_rank_one(Int(-2)));
    REQUIRE_THROWS_AS(rescale(l, Int(0)), domain_error);

    auto rng = make_rng(411);
    for (int t = 0; t < 20; ++t) {
        int n = 1 + static_cast<int>(t % 4);
        Lattice r(random_symmetric(rng, n, -5, 5));
        Int m = latt::test::rand_int(rng, 1, 4);
        Int scaled = determinant(rescale(r, m));
        Int expect = determinant(r);
        for (int i = 0; i < n; ++i) expect *= m;
        REQUIRE(scaled == expect);
    }
}

TEST_CASE("direct sums add ranks, determinants multiply, signatures add") {
    Lattice sum = direct_sum(lattice_H(), lattice_H());
    sum = direct_sum(sum, lattice_H());
    sum = direct_sum(sum, lattice_E8());
    sum = direct_sum(sum, lattice_E8());
    REQUIRE(sum == lattice_K3());

    Lattice t = direct_sum(lattice_rank_one(Int(-2)), lattice_H());
    t = direct_sum(t, lattice_H());
    t = direct_sum(t, lattice_E8());
    t = direct_sum(t, lattice_E8());
    REQUIRE(t.rank() == 21);
    REQUIRE(signature(t) == Signature{2, 19, 0});

    auto rng = make_rng(412);
    for (int trial = 0; trial < 15; ++trial) {
        Lattice a(random_symmetric(rng, 3, -4, 4));
        Lattice b(random_symmetric(rng, 2, -4, 4));
        Lattice s = direct_sum(a, b);
        Signature sa = signature(a), sb = signature(b), ss = signature(s);
        REQUIRE(ss.positive == sa.positive + sb.positive);
        REQUIRE(ss.negative == sa.negative + sb.negative);
        REQUIRE(ss.zero == sa.zero + sb.zero);
        REQUIRE(determinant(s) == determinant(a) * determinant(b));
    }
}

TEST_CASE("signature handles zero blocks, radicals, and the empty lattice") {
    REQUIRE(signature(Lattice()) == Signature{0, 0, 0});
    // A form with a radical: diag(2, 0, -2).
    Lattice rad(IMat{{Int(2), Int(0), Int(0)}, {Int(0), Int(0), Int(0)}, {Int(0), Int(0), Int(-2)}});
    REQUIRE(signature(rad) == Signature{1, 1, 1});
    REQUIRE_FALSE(is_nondegenerate(rad));
    // All-diagonal-zero but nondegenerate: H itself exercises the 2x2 pivot.
    REQUIRE(signature(rescale(lattice_H(), Int(-5))) == Signature{1, 1, 0});

    auto rng = make_rng(413);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 5;
        Lattice l(random_symmetric(rng, n, -6, 6));
        Signature s = signature(l);
        REQUIRE(s.positive + s.negative + s.zero == l.rank());
        // Exact determinant sign must match the signature parity.
        Int d = determinant(l);
        if (s.zero > 0) {
            REQUIRE(d == 0);
        } else {
            REQUIRE((d < 0) == (s.negative % 2 == 1));
        }
    }
}

TEST_CASE("determinant agrees with cofactor expansion on random inputs") {
    auto rng = make_rng(414);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + trial % 5;
        IMat m = latt::test::random_imat(rng, n, n, -6, 6);
        REQUIRE(det_bareiss(m) == naive_det(m));
    }
}

TEST_CASE("discriminant forms of the catalog examples") {
    DiscriminantForm trivial = discriminant_form(lattice_H());
    REQUIRE(trivial.orders.empty());
    REQUIRE(trivial.group_order() == 1);

    DiscriminantForm d2 = discriminant_form(lattice_rank_one(Int(-2)));
    REQUIRE(d2.orders == IVec{Int(2)});
    // q(g) = -1/2 mod 2Z, canonical representative 3/2.
    REQUIRE(d2.q_values == QVec{Rat(3, 2)});

    DiscriminantForm d3 = discriminant_form(rescale(lattice_H(), Int(3)));
    REQUIRE(d3.orders == IVec{Int(3), Int(3)});
    REQUIRE(d3.q_values == QVec{Rat(0), Rat(0)});
    REQUIRE(d3.b_values(0, 1) == Rat(1, 3));
    REQUIRE(d3.b_values(1, 0) == Rat(1, 3));
    REQUIRE(d3.group_order() == 9);

    auto rng = make_rng(415);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + trial % 4;
        IMat g = random_symmetric(rng, n, -4, 4);
        for (int i = 0; i < n; ++i) g(i, i) *= 2;
        Lattice l(g);
        if (!is_nondegenerate(l)) continue;
        DiscriminantForm d = discriminant_form(l);
        REQUIRE(d.group_order() == abs(determinant(l)));
    }
}

TEST_CASE("two-elementary fingerprints") {
    auto [r1, a1, p1] = two_elementary_fingerprint(lattice_rank_one(Int(2)));
    REQUIRE(r1 == 1);
    REQUIRE(a1 == 1);
    REQUIRE(p1 == 1);

    auto [r2, a2, p2] = two_elementary_fingerprint(lattice_H());
    REQUIRE(r2 == 2);
    REQUIRE(a2 == 0);
    REQUIRE(p2 == 0);

    Lattice t = direct_sum(lattice_rank_one(Int(-2)), lattice_H());
    t = direct_sum(t, lattice_H());
    t = direct_sum(t, lattice_E8());
    t = direct_sum(t, lattice_E8());
    auto [r3, a3, p3] = two_elementary_fingerprint(t);
    REQUIRE(r3 == 21);
    REQUIRE(a3 == 1);
    REQUIRE(p3 == 1);

    // (Z/3)^2 is not 2-elementary.
    REQUIRE_THROWS_AS(two_elementary_fingerprint(rescale(lattice_H(), Int(3))), domain_error);
    // D4: discriminant group (Z/2)^2, every q value is -1 = 1 mod 2Z, an
    // integer, so the parity bit is 0.
    auto [r4, a4, p4] = two_elementary_fingerprint(lattice_D(4));
    REQUIRE(r4 == 4);
    REQUIRE(a4 == 2);
    REQUIRE(p4 == 0);
}

TEST_CASE("degenerate lattices are rejected where nondegeneracy is required") {
    Lattice zero(IMat{{Int(0)}});
    REQUIRE_THROWS_AS(discriminant_form(zero), degenerate_lattice_error);
    Sublattice s(zero, IMat{{Int(1)}});
    REQUIRE_THROWS_AS(orthogonal_complement(s), degenerate_lattice_error);
}
