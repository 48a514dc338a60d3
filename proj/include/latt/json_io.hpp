#pragma once

// JSON interchange for the command line tools. Integers are exact: values
// that fit in an IEEE double without rounding (|v| <= 2^53 - 1) are emitted
// as JSON numbers, anything larger as decimal strings, and both forms are
// accepted on input. Serialization is canonical (sorted keys, no spaces),
// which makes output byte-reproducible and gives the input digest a stable
// meaning.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "latt/cusp.hpp"
#include "latt/errors.hpp"
#include "latt/int_types.hpp"
#include "latt/lattice.hpp"
#include "latt/matrix.hpp"
#include "latt/monodromy.hpp"
#include "latt/semifan.hpp"

namespace latt {

using Json = nlohmann::json;

// Largest magnitude a JSON number may carry without losing exactness in a
// double-based reader.
inline const Int& json_int_max() {
    static const Int v = (Int(1) << 53) - 1;
    return v;
}

inline Json json_of_int(const Int& v) {
    if (abs(v) <= json_int_max()) return Json(v.convert_to<std::int64_t>());
    return Json(v.str());
}

inline Int int_of_json(const Json& j, const char* what) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_number_float())
        throw input_error(std::string(what) + ": non-integral number");
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        if (s.size() == start)
            throw input_error(std::string(what) + ": empty integer string");
        for (std::size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw input_error(std::string(what) + ": malformed integer string '" + s + "'");
        return Int(s);
    }
    throw input_error(std::string(what) + ": expected an integer");
}

inline Json json_of_rat(const Rat& q) {
    return Json{{"den", json_of_int(den(q))}, {"num", json_of_int(num(q))}};
}

inline Json json_of_vec(const IVec& v) {
    Json a = Json::array();
    for (const Int& x : v) a.push_back(json_of_int(x));
    return a;
}

inline IVec vec_of_json(const Json& j, const char* what) {
    if (!j.is_array()) throw input_error(std::string(what) + ": expected an array");
    IVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = int_of_json(j[i], what);
    return v;
}

inline Json json_of_mat(const IMat& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(json_of_vec(m.row(i)));
    return a;
}

inline IMat mat_of_json(const Json& j, const char* what) {
    if (!j.is_array()) throw input_error(std::string(what) + ": expected an array of rows");
    std::vector<IVec> rows;
    rows.reserve(j.size());
    for (const Json& r : j) rows.push_back(vec_of_json(r, what));
    if (rows.empty()) return IMat(0, 0);
    IMat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw input_error(std::string(what) + ": ragged rows");
        m.set_row(i, rows[i]);
    }
    return m;
}

/// Checks that j is an object whose keys are exactly the required ones plus
/// a subset of the optional ones; unknown fields are rejected so typos do
/// not silently change meaning.
inline void require_keys(const Json& j, const char* what,
                         std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) throw input_error(std::string(what) + ": expected an object");
    for (const char* k : required)
        if (!j.contains(k))
            throw input_error(std::string(what) + ": missing field '" + k + "'");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : required)
            if (it.key() == k) known = true;
        for (const char* k : optional)
            if (it.key() == k) known = true;
        if (!known)
            throw input_error(std::string(what) + ": unknown field '" + it.key() + "'");
    }
}

// ---------------------------------------------------------------------------
// Canonical serialization and input digests.

/// Compact dump with object keys in sorted order (the container keeps keys
/// sorted already); a trailing newline is added at output time, not here.
inline std::string canonical_json(const Json& j) { return j.dump(); }

/// FNV-1a over the bytes, printed as 16 lowercase hex digits.
inline std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

/// Digest of the canonical form, so reformatting the same request does not
/// change it.
inline std::string input_digest(const Json& j) { return fnv1a64_hex(canonical_json(j)); }

inline Json json_warning(const std::string& kind, const std::string& message) {
    return Json{{"kind", kind}, {"message", message}};
}

/// Success envelope: command echo, digest of the request, payload, process
/// exit status, and structured warnings.
inline Json make_report(const std::string& command, const std::string& digest, Json result,
                        Json warnings = Json::array()) {
    return Json{{"command", command},
                {"input_digest", digest},
                {"result", std::move(result)},
                {"status", 0},
                {"warnings", std::move(warnings)}};
}

/// Failure envelope. Domain errors (well-formed requests the mathematics
/// refuses) exit with status 1, input errors (malformed requests) with 2.
inline Json make_error_report(const std::string& command, const std::string& digest,
                              bool is_domain, const std::string& message) {
    return Json{{"command", command},
                {"error", Json{{"kind", is_domain ? "domain" : "input"}, {"message", message}}},
                {"input_digest", digest},
                {"status", is_domain ? 1 : 2},
                {"warnings", Json::array()}};
}

// ---------------------------------------------------------------------------
// Structure serializers.

/// Two-element [positive, negative]; degenerate input is the caller's job to
/// flag (the kernel dimension is not part of this pair).
inline Json json_of_signature(const Signature& s) {
    return Json::array({Json(static_cast<std::int64_t>(s.positive)),
                        Json(static_cast<std::int64_t>(s.negative))});
}

inline Json json_of_lattice(const Lattice& l) {
    return Json{{"gram", json_of_mat(l.gram())},
                {"rank", static_cast<std::int64_t>(l.rank())}};
}

/// Accepts the explicit {"gram": [[..]], "rank": n} form; "rank" is optional
/// but cross-checked when present. Named lookups live in the catalog layer.
inline Lattice lattice_of_json(const Json& j) {
    require_keys(j, "lattice", {"gram"}, {"rank"});
    IMat g = mat_of_json(j.at("gram"), "lattice gram");
    if (j.contains("rank")) {
        Int r = int_of_json(j.at("rank"), "lattice rank");
        if (r != Int(static_cast<long>(g.rows())))
            throw input_error("lattice: rank does not match the gram matrix");
    }
    try {
        return Lattice(g);
    } catch (const domain_error& e) {
        // A non-square or asymmetric gram is a malformed request, not a
        // mathematical refusal.
        throw input_error(std::string("lattice: ") + e.what());
    }
}

inline const char* kulikov_type_name(KulikovType t) {
    switch (t) {
        case KulikovType::type_I: return "I";
        case KulikovType::type_II: return "II";
        default: return "III";
    }
}

inline const char* semifan_issue_kind_name(SemifanIssueKind k) {
    switch (k) {
        case SemifanIssueKind::missing_entry: return "missing_entry";
        case SemifanIssueKind::mismatched_image: return "mismatched_image";
        case SemifanIssueKind::non_cone_image: return "non_cone_image";
        default: return "cone_count_mismatch";
    }
}

inline Json json_of_semifan_report(const SemifanReport& r) {
    Json issues = Json::array();
    for (const SemifanIssue& is : r.issues)
        issues.push_back(Json{{"generator", static_cast<std::int64_t>(is.generator_index)},
                              {"j", json_of_mat(is.j_basis)},
                              {"kind", semifan_issue_kind_name(is.kind)}});
    return Json{{"complete", r.complete},
                {"invariant", r.invariant},
                {"issues", std::move(issues)},
                {"passed", r.passed()}};
}

inline Json json_of_compatibility(const CompatibilityResult& r) {
    Json out{{"compatible", r.compatible}};
    out["induced"] = r.induced ? json_of_mat(*r.induced) : Json();
    out["witness"] = r.witness ? json_of_mat(*r.witness) : Json();
    return out;
}

inline Json json_of_cusp_report(const CuspReport& r) {
    Json out{{"admissible", r.admissible},
             {"basis", json_of_mat(r.j.sub.basis())},
             {"j_invariant", r.j_invariant_class},
             {"rank", static_cast<std::int64_t>(r.j.rank)},
             {"rho_invariant", r.rho_invariant}};
    out["restricted_order"] = r.restricted_order
                                  ? Json(static_cast<std::int64_t>(*r.restricted_order))
                                  : Json();
    return out;
}

inline Json json_of_cusp_scan(const CuspScan& s) {
    Json reports = Json::array();
    for (const CuspReport& r : s.reports) reports.push_back(json_of_cusp_report(r));
    return Json{{"bound", json_of_int(s.bound)}, {"cusps", std::move(reports)}};
}

} // namespace latt
