#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latt/cusp.hpp"
#include "latt/errors.hpp"
#include "latt/isometry.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"
#include "latt/snf.hpp"
#include "latt/sublattice.hpp"

namespace latt {

/// A rational cone fragment in quotient coordinates: rows of `rays` generate
/// it, rows of `hyperplanes` are integer functionals supporting it (each is
/// nonnegative on all rays and vanishes on at least one when rays are given).
struct Cone {
    IMat rays;
    IMat hyperplanes;
};

/// A finite fan fragment decomposing (part of) the positive cone of a
/// hyperbolic quotient. The reference vector has positive square and pins
/// the component of the positive cone; `domain` is a free-text description
/// of the region of validity of the fragment.
struct Fan {
    std::vector<Cone> cones;
    IVec reference;
    std::string domain;
};

/// Boundary decomposition data for the ball-quotient theory: a saturated
/// subgroup of J^perp/J (rows in quotient coordinates) per rank 2 cusp.
struct SemifanBallEntry {
    IsotropicSublattice j;
    IMat f;
};

struct SemifanBallCase {
    Lattice ambient;
    std::vector<SemifanBallEntry> entries;
};

/// Boundary decomposition data for the period-domain theory: a fan per
/// rank 1 cusp.
struct SemifanFanEntry {
    IsotropicSublattice j;
    Fan fan;
};

struct SemifanTypeIVCase {
    Lattice ambient;
    std::vector<SemifanFanEntry> entries;
};

/// A finitely generated symmetry group given by explicit isometries, all
/// commuting with the distinguished isometry they are validated against.
struct GroupData {
    std::vector<Isometry> generators;
};

inline GroupData make_group_data(const std::vector<Isometry>& generators, const Isometry& rho) {
    for (const Isometry& g : generators) {
        if (g.lattice() != rho.lattice()) throw domain_error("group generator acts on a different lattice");
        if (!commutes_with(g, rho)) throw domain_error("group generator does not commute");
    }
    return GroupData{generators};
}

enum class SemifanIssueKind { missing_entry, mismatched_image, non_cone_image, cone_count_mismatch };

struct SemifanIssue {
    SemifanIssueKind kind;
    std::size_t generator_index;
    IMat j_basis; // canonical basis of the cusp witnessing the issue
};

/// Invariance findings. Incompleteness (an image cusp without an entry) is
/// kept apart from non-invariance (an entry whose data does not match).
struct SemifanReport {
    bool complete = true;
    bool invariant = true;
    std::vector<SemifanIssue> issues;

    bool passed() const { return complete && invariant; }
};

/// Whether the compatibility kernel is cut by the hyperplanes of the whole
/// fan (default) or cone by cone. The global reading is the documented
/// convention; the per-cone one is offered behind this flag.
enum class CompatibilityMode { global_hyperplanes, per_cone };

struct CompatibilityResult {
    bool compatible;
    std::optional<IMat> induced; // saturated rows in (J')^perp/J' coordinates
    std::optional<IMat> witness; // basis of a member cusp whose descent disagrees
};

namespace detail {

inline Int plain_dot(const IVec& a, const IVec& b) {
    Int s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline void require_period_signature(const Lattice& l) {
    Signature s = signature(l);
    if (s.zero != 0 || s.positive != 2)
        throw domain_error("semifan data requires a lattice of signature (2, k)");
}

inline const SemifanBallEntry* find_entry(const SemifanBallCase& sf, const IMat& key) {
    for (const SemifanBallEntry& e : sf.entries)
        if (e.j.sub.basis() == key) return &e;
    return nullptr;
}

inline const SemifanFanEntry* find_entry(const SemifanTypeIVCase& sf, const IMat& key) {
    for (const SemifanFanEntry& e : sf.entries)
        if (e.j.sub.basis() == key) return &e;
    return nullptr;
}

/// Row-action matrix of the map J^perp/J -> gamma(J)^perp/gamma(J) induced
/// by an ambient isometry with gamma(J) the cusp behind q2.
inline IMat quotient_map(const QuotientLattice& q1, const QuotientLattice& q2, const IMat& gamma) {
    IMat m(q1.rank(), q2.rank());
    for (std::size_t i = 0; i < q1.rank(); ++i) {
        IVec unit(q1.rank(), Int(0));
        unit[i] = 1;
        const IVec rep = q1.lift(unit);
        const IVec image = apply(gamma, rep);
        m.set_row(i, q2.project(image));
    }
    return m;
}

inline IVec primitive_ray(const IVec& r) {
    if (vec_is_zero(r)) throw domain_error("cone rays must be nonzero");
    Int c = content(r);
    IVec out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] / c;
    return out;
}

/// Canonical form of a ray set: primitive generators, optionally negated
/// (when the image landed in the opposite component), sorted and deduped.
inline std::vector<IVec> canonical_rays(const IMat& rays, bool flip) {
    std::vector<IVec> out;
    for (std::size_t i = 0; i < rays.rows(); ++i) {
        IVec r = primitive_ray(rays.row(i));
        if (flip) r = vec_scale(r, Int(-1));
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(), [](const IVec& a, const IVec& b) { return compare(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Largest subgroup of the row span of f stable under the row action m of
/// an order `order` map, saturated.
inline IMat invariant_part(const IMat& f, const IMat& m, unsigned long order, std::size_t qrank) {
    IMat inv = f;
    IMat img = f;
    for (unsigned long k = 1; k < order && inv.rows() > 0; ++k) {
        img = hnf_basis(mul(img, m));
        inv = intersect_rows(inv, img);
    }
    if (inv.rows() == 0) return IMat(0, qrank);
    return hnf_basis(saturate_rows(inv));
}

} // namespace detail

/// Validates and canonicalizes ball-case data: rank 2 primitive isotropic
/// keys without repetition, each subgroup saturated in its quotient.
inline SemifanBallCase make_ball_case(const Lattice& ambient,
                                      const std::vector<std::pair<Sublattice, IMat>>& entries) {
    detail::require_period_signature(ambient);
    SemifanBallCase sf{ambient, {}};
    for (const auto& [jsub, f] : entries) {
        if (jsub.ambient() != ambient) throw domain_error("cusp lives in a different lattice");
        IsotropicSublattice j = make_isotropic(Sublattice(ambient, hnf_basis(jsub.basis())));
        if (j.rank != 2) throw domain_error("ball-case cusps have rank 2");
        if (detail::find_entry(sf, j.sub.basis())) throw domain_error("duplicate cusp entry");
        QuotientLattice q(j.sub);
        if (f.rows() > 0 && f.cols() != q.rank())
            throw domain_error("subgroup rows do not live in the cusp quotient");
        IMat canon = f.rows() == 0 ? IMat(0, q.rank()) : hnf_basis(f);
        if (canon.rows() > 0 && canon != hnf_basis(saturate_rows(canon)))
            throw domain_error("boundary subgroup must be saturated in the quotient");
        sf.entries.push_back(SemifanBallEntry{j, canon});
    }
    return sf;
}

/// Validates and canonicalizes fan-case data: rank 1 keys, a positive
/// reference vector per fan, rays in the closed positive cone on the
/// reference side, supporting functionals nonnegative on their cone and
/// vanishing on a face.
inline SemifanTypeIVCase make_fan_case(const Lattice& ambient,
                                       const std::vector<std::pair<Sublattice, Fan>>& entries) {
    detail::require_period_signature(ambient);
    SemifanTypeIVCase sf{ambient, {}};
    for (const auto& [jsub, fan] : entries) {
        if (jsub.ambient() != ambient) throw domain_error("cusp lives in a different lattice");
        IsotropicSublattice j = make_isotropic(Sublattice(ambient, hnf_basis(jsub.basis())));
        if (j.rank != 1) throw domain_error("fan-case cusps have rank 1");
        if (detail::find_entry(sf, j.sub.basis())) throw domain_error("duplicate cusp entry");
        QuotientLattice q(j.sub);
        const Lattice& ql = q.quotient();
        if (fan.reference.size() != q.rank() || ql.norm(fan.reference) <= 0)
            throw domain_error("fan reference vector must have positive square");
        if (fan.cones.empty()) throw domain_error("a fan needs at least one cone");

        Fan canon{{}, fan.reference, fan.domain};
        for (const Cone& cone : fan.cones) {
            Cone c{IMat(cone.rays.rows(), q.rank()), IMat(cone.hyperplanes.rows(), q.rank())};
            if (cone.rays.rows() > 0 && cone.rays.cols() != q.rank())
                throw domain_error("ray coordinates do not live in the cusp quotient");
            if (cone.hyperplanes.rows() > 0 && cone.hyperplanes.cols() != q.rank())
                throw domain_error("functional coordinates do not live in the cusp quotient");
            for (std::size_t i = 0; i < cone.rays.rows(); ++i) {
                IVec r = detail::primitive_ray(cone.rays.row(i));
                if (ql.norm(r) < 0) throw domain_error("ray outside the closed positive cone");
                if (ql.dot(r, fan.reference) < 0)
                    throw domain_error("ray on the wrong side of the reference vector");
                c.rays.set_row(i, r);
            }
            for (std::size_t i = 0; i < cone.hyperplanes.rows(); ++i) {
                const IVec h = cone.hyperplanes.row(i);
                bool vanishes = c.rays.rows() == 0;
                for (std::size_t k = 0; k < c.rays.rows(); ++k) {
                    Int p = detail::plain_dot(h, c.rays.row(k));
                    if (p < 0) throw domain_error("supporting functional is negative on a ray");
                    if (p == 0) vanishes = true;
                }
                if (!vanishes) throw domain_error("supporting functional misses every face");
                c.hyperplanes.set_row(i, h);
            }
            canon.cones.push_back(c);
        }
        sf.entries.push_back(SemifanFanEntry{j, canon});
    }
    return sf;
}

/// Gamma-invariance of ball-case data: each generator must permute the
/// entries, matching the boundary subgroups through the induced quotient
/// isomorphisms.
inline SemifanReport check_invariance_ball(const SemifanBallCase& sf, const GroupData& g) {
    SemifanReport rep;
    for (std::size_t gi = 0; gi < g.generators.size(); ++gi) {
        const Isometry& gamma = g.generators[gi];
        if (gamma.lattice() != sf.ambient) throw domain_error("generator acts on a different lattice");
        for (const SemifanBallEntry& e : sf.entries) {
            IMat key = hnf_basis(mul(e.j.sub.basis(), transpose(gamma.matrix())));
            const SemifanBallEntry* target = detail::find_entry(sf, key);
            if (!target) {
                rep.complete = false;
                rep.issues.push_back({SemifanIssueKind::missing_entry, gi, e.j.sub.basis()});
                continue;
            }
            QuotientLattice q1(e.j.sub), q2(target->j.sub);
            IMat lifted(e.f.rows(), sf.ambient.rank());
            for (std::size_t i = 0; i < e.f.rows(); ++i) {
                const IVec rep_vec = q1.lift(e.f.row(i));
                lifted.set_row(i, apply(gamma.matrix(), rep_vec));
            }
            IMat image = q2.project_subgroup(lifted);
            if (image != target->f) {
                rep.invariant = false;
                rep.issues.push_back({SemifanIssueKind::mismatched_image, gi, e.j.sub.basis()});
            }
        }
    }
    return rep;
}

/// Gamma-invariance of fan-case data: each generator must map every cone of
/// every fan onto a cone of the fan at the image cusp (ray sets compared
/// after primitive normalization, with the component pinned by the
/// reference vectors).
inline SemifanReport check_invariance_fan(const SemifanTypeIVCase& sf, const GroupData& g) {
    SemifanReport rep;
    for (std::size_t gi = 0; gi < g.generators.size(); ++gi) {
        const Isometry& gamma = g.generators[gi];
        if (gamma.lattice() != sf.ambient) throw domain_error("generator acts on a different lattice");
        for (const SemifanFanEntry& e : sf.entries) {
            IMat key = hnf_basis(mul(e.j.sub.basis(), transpose(gamma.matrix())));
            const SemifanFanEntry* target = detail::find_entry(sf, key);
            if (!target) {
                rep.complete = false;
                rep.issues.push_back({SemifanIssueKind::missing_entry, gi, e.j.sub.basis()});
                continue;
            }
            QuotientLattice q1(e.j.sub), q2(target->j.sub);
            IMat m = detail::quotient_map(q1, q2, gamma.matrix());
            const IVec ref_image = row_mul(e.fan.reference, m);
            Int side = q2.quotient().dot(ref_image, target->fan.reference);
            if (side == 0) throw domain_error("internal: reference images are orthogonal");
            bool flip = side < 0;

            bool entry_ok = true;
            for (const Cone& cone : e.fan.cones) {
                std::vector<IVec> image = detail::canonical_rays(mul(cone.rays, m), flip);
                bool found = false;
                for (const Cone& candidate : target->fan.cones) {
                    if (detail::canonical_rays(candidate.rays, false) == image) {
                        found = true;
                        break;
                    }
                }
                if (!found) {
                    rep.issues.push_back({SemifanIssueKind::non_cone_image, gi, e.j.sub.basis()});
                    entry_ok = false;
                }
            }
            if (e.fan.cones.size() != target->fan.cones.size()) {
                rep.issues.push_back({SemifanIssueKind::cone_count_mismatch, gi, e.j.sub.basis()});
                entry_ok = false;
            }
            if (!entry_ok) rep.invariant = false;
        }
    }
    return rep;
}

/// The rank 1 primitive sublattices of a rank 2 isotropic plane with a
/// coordinate representative within the bound, one per line (sign
/// normalized). These are the members required present for compatibility.
inline std::vector<IsotropicSublattice> rank_one_members(const IsotropicSublattice& jprime,
                                                         const Int& bound) {
    if (jprime.rank != 2) throw domain_error("compatibility runs along a rank 2 isotropic plane");
    if (bound < 1) throw domain_error("member bound must be positive");
    std::vector<IsotropicSublattice> out;
    long b = bound.convert_to<long>();
    for (long a = 0; a <= b; ++a)
        for (long c = -b; c <= b; ++c) {
            if (a == 0 && c <= 0) continue;
            if (gcd(Int(a), Int(c)) != 1) continue;
            IVec v = vec_add(vec_scale(jprime.sub.basis().row(0), Int(a)),
                             vec_scale(jprime.sub.basis().row(1), Int(c)));
            IMat bm(1, v.size());
            bm.set_row(0, v);
            out.push_back(make_isotropic(Sublattice(jprime.sub.ambient(), hnf_basis(bm))));
        }
    return out;
}

/// Compatibility of fan data along a rank 2 isotropic plane: at every rank 1
/// member J (within the bound), the kernel of the fan functionals containing
/// J'/J is intersected with (J')^perp/J, pushed down to (J')^perp/J', and
/// saturated; the results must agree across members (and across cones in the
/// per-cone mode).
inline CompatibilityResult compatibility_along(const SemifanTypeIVCase& sf,
                                               const IsotropicSublattice& jprime,
                                               const Int& bound = Int(2),
                                               CompatibilityMode mode = CompatibilityMode::global_hyperplanes) {
    if (jprime.sub.ambient() != sf.ambient) throw domain_error("plane lives in a different lattice");
    QuotientLattice qp(jprime.sub);
    IMat perp = orthogonal_complement(jprime.sub).basis();

    std::optional<IMat> common;
    std::optional<IMat> witness;
    bool compatible = true;
    for (const IsotropicSublattice& j : rank_one_members(jprime, bound)) {
        const SemifanFanEntry* e = detail::find_entry(sf, j.sub.basis());
        if (!e) throw domain_error("missing fan entry required for compatibility along the plane");
        QuotientLattice qj(j.sub);
        IMat gproj = qj.project_subgroup(jprime.sub.basis());
        if (gproj.rows() != 1) throw domain_error("internal: plane image is not a line");
        const IVec gline = gproj.row(0);
        IMat w = qj.project_subgroup(perp); // (J')^perp/J

        auto consider = [&](const std::vector<IVec>& functionals) {
            IMat k;
            if (functionals.empty()) {
                k = IMat::identity(qj.rank());
            } else {
                IMat hs(functionals.size(), qj.rank());
                for (std::size_t i = 0; i < functionals.size(); ++i) hs.set_row(i, functionals[i]);
                k = kernel_cols(hs);
            }
            IMat y = intersect_rows(k, w);
            IMat lifted(y.rows(), sf.ambient.rank());
            for (std::size_t i = 0; i < y.rows(); ++i) lifted.set_row(i, qj.lift(y.row(i)));
            IMat down = qp.project_subgroup(lifted);
            if (down.rows() > 0) down = hnf_basis(saturate_rows(down));
            if (!common)
                common = down;
            else if (*common != down)
                compatible = false;
        };

        if (mode == CompatibilityMode::global_hyperplanes) {
            std::vector<IVec> hs;
            for (const Cone& cone : e->fan.cones)
                for (std::size_t i = 0; i < cone.hyperplanes.rows(); ++i)
                    if (detail::plain_dot(cone.hyperplanes.row(i), gline) == 0)
                        hs.push_back(cone.hyperplanes.row(i));
            consider(hs);
        } else {
            for (const Cone& cone : e->fan.cones) {
                std::vector<IVec> hs;
                for (std::size_t i = 0; i < cone.hyperplanes.rows(); ++i)
                    if (detail::plain_dot(cone.hyperplanes.row(i), gline) == 0)
                        hs.push_back(cone.hyperplanes.row(i));
                consider(hs);
            }
        }
        if (!compatible && !witness) witness = j.sub.basis();
    }
    if (!compatible) return {false, std::nullopt, witness};
    return {true, common, std::nullopt};
}

/// Restricts ball data to the eigenstructure of an isometry: every key must
/// be an admissible cusp; each subgroup is intersected with its images under
/// the induced quotient action and saturated.
inline SemifanBallCase pullback_semifan(const SemifanBallCase& sf, const Isometry& rho) {
    if (rho.lattice() != sf.ambient) throw domain_error("isometry acts on a different lattice");
    SemifanBallCase out{sf.ambient, {}};
    for (const SemifanBallEntry& e : sf.entries) {
        CuspReport report = classify_cusp(e.j, rho);
        if (!report.admissible) throw domain_error("pullback requires admissible cusp keys");
        QuotientLattice q(e.j.sub);
        IMat m = detail::quotient_map(q, q, rho.matrix());
        out.entries.push_back(SemifanBallEntry{e.j, detail::invariant_part(e.f, m, rho.order(), q.rank())});
    }
    return out;
}

/// Pulls fan data back to ball data at the given admissible cusps: the
/// induced subgroup along each cusp (which must be compatible) is restricted
/// to the eigenstructure by the same intersect-then-saturate rule.
inline SemifanBallCase pullback_semifan(const SemifanTypeIVCase& sf, const Isometry& rho,
                                        const std::vector<IsotropicSublattice>& cusps,
                                        const Int& bound = Int(2),
                                        CompatibilityMode mode = CompatibilityMode::global_hyperplanes) {
    if (rho.lattice() != sf.ambient) throw domain_error("isometry acts on a different lattice");
    std::vector<std::pair<Sublattice, IMat>> entries;
    for (const IsotropicSublattice& given : cusps) {
        // Canonical basis first: quotient coordinates depend on it, and the
        // assembled ball case re-keys entries the same way.
        IsotropicSublattice j =
            make_isotropic(Sublattice(sf.ambient, hnf_basis(given.sub.basis())));
        CuspReport report = classify_cusp(j, rho);
        if (!report.admissible) throw domain_error("pullback requires admissible cusp keys");
        CompatibilityResult comp = compatibility_along(sf, j, bound, mode);
        if (!comp.compatible) throw domain_error("fan data is incompatible along a cusp");
        QuotientLattice q(j.sub);
        IMat m = detail::quotient_map(q, q, rho.matrix());
        entries.emplace_back(j.sub, detail::invariant_part(*comp.induced, m, rho.order(), q.rank()));
    }
    return make_ball_case(sf.ambient, entries);
}

} // namespace latt
