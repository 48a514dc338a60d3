#pragma once

// Named lattice catalog and the JSON payload parsers that may refer to
// entries by name. Built-ins cover the hyperbolic plane, the root families,
// diagonal forms, and the rank 22 period lattice; a user catalog file adds
// named entries (which may reference built-ins, e.g. a rescaling) but may
// not shadow built-in names.

#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latt/isometry.hpp"
#include "latt/json_io.hpp"
#include "latt/monodromy.hpp"

namespace latt {

struct Catalog {
    std::map<std::string, Lattice> user;
};

namespace detail {

/// "A7" / "D19" style names: the family letter followed by a decimal index.
inline bool parse_indexed_name(const std::string& name, char family, std::size_t& n) {
    if (name.size() < 2 || name[0] != family) return false;
    std::size_t v = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        char c = name[i];
        if (c < '0' || c > '9') return false;
        if (v > 1000) return false;
        v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    n = v;
    return v > 0;
}

} // namespace detail

inline bool is_builtin_lattice_name(const std::string& name) {
    std::size_t n = 0;
    return name == "H" || name == "E8" || name == "LK3" || name == "A" || name == "D" ||
           name == "diag" || detail::parse_indexed_name(name, 'A', n) ||
           detail::parse_indexed_name(name, 'D', n);
}

/// Looks a name up: built-ins first ("A"/"D" take the index as the single
/// parameter or inline as "A2"/"D4"; "diag" takes the diagonal entries),
/// then the user catalog. Unknown names and bad parameters are input
/// errors, since the request itself is wrong.
inline Lattice catalog_lattice(const std::string& name, const IVec& params, const Catalog& cat) {
    auto arity = [&](std::size_t want) {
        if (params.size() != want)
            throw input_error("catalog name '" + name + "' takes " + std::to_string(want) +
                              " parameter(s), got " + std::to_string(params.size()));
    };
    auto family = [&](char letter, std::size_t n) {
        try {
            return letter == 'A' ? lattice_A(n) : lattice_D(n);
        } catch (const domain_error& e) {
            throw input_error(std::string("catalog: ") + e.what());
        }
    };
    auto index_param = [&]() {
        arity(1);
        if (params[0] < 1 || params[0] > 1000)
            throw input_error("catalog index out of range for '" + name + "'");
        return params[0].convert_to<std::size_t>();
    };
    if (name == "H") { arity(0); return lattice_H(); }
    if (name == "E8") { arity(0); return lattice_E8(); }
    if (name == "LK3") { arity(0); return lattice_K3(); }
    if (name == "A") return family('A', index_param());
    if (name == "D") return family('D', index_param());
    if (name == "diag") {
        if (params.empty()) throw input_error("catalog name 'diag' needs at least one entry");
        try {
            return lattice_diag(params);
        } catch (const domain_error& e) {
            throw input_error(std::string("catalog: ") + e.what());
        }
    }
    std::size_t n = 0;
    if (detail::parse_indexed_name(name, 'A', n)) { arity(0); return family('A', n); }
    if (detail::parse_indexed_name(name, 'D', n)) { arity(0); return family('D', n); }
    auto it = cat.user.find(name);
    if (it != cat.user.end()) { arity(0); return it->second; }
    throw input_error("unknown catalog name '" + name + "'");
}

/// Lattice payload: either the explicit {"gram": ..} form or a reference
/// {"name": .., "params": [..], "scale": k}; "scale" multiplies the form.
inline Lattice resolve_lattice(const Json& j, const Catalog& cat) {
    if (j.is_object() && j.contains("name")) {
        require_keys(j, "lattice reference", {"name"}, {"params", "scale"});
        if (!j.at("name").is_string())
            throw input_error("lattice reference: 'name' must be a string");
        IVec params;
        if (j.contains("params")) params = vec_of_json(j.at("params"), "lattice params");
        Lattice base = catalog_lattice(j.at("name").get<std::string>(), params, cat);
        if (j.contains("scale")) {
            Int s = int_of_json(j.at("scale"), "lattice scale");
            if (s == 0) throw input_error("lattice scale must be nonzero");
            return rescale(base, s);
        }
        return base;
    }
    return lattice_of_json(j);
}

/// User catalog file: a JSON object mapping names to lattice payloads.
/// References inside the file resolve against built-ins only, so entries
/// cannot depend on file ordering.
inline Catalog load_catalog_file(const std::string& path) {
    Catalog cat;
    if (path.empty()) return cat;
    std::ifstream in(path);
    if (!in) throw input_error("cannot open catalog file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const std::exception& e) {
        throw input_error(std::string("catalog file is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw input_error("catalog file must be a JSON object mapping names to lattices");
    const Catalog builtins_only;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (is_builtin_lattice_name(it.key()))
            throw input_error("catalog entry '" + it.key() + "' shadows a built-in name");
        try {
            cat.user.emplace(it.key(), resolve_lattice(it.value(), builtins_only));
        } catch (const input_error& e) {
            throw input_error("catalog entry '" + it.key() + "': " + e.what());
        }
    }
    return cat;
}

/// Isometry payload {"lattice": .., "matrix": ..}; the constructor verifies
/// form preservation, so a non-isometry is a domain refusal.
inline Isometry resolve_isometry(const Json& j, const Catalog& cat) {
    require_keys(j, "isometry", {"lattice", "matrix"});
    Lattice l = resolve_lattice(j.at("lattice"), cat);
    IMat m = mat_of_json(j.at("matrix"), "isometry matrix");
    return Isometry(std::move(l), std::move(m));
}

/// Degeneration payload {"lattice": .., "delta": .., "lambda": ..}.
inline KulikovData resolve_kulikov(const Json& j, const Catalog& cat) {
    require_keys(j, "degeneration data", {"delta", "lambda", "lattice"});
    Lattice l = resolve_lattice(j.at("lattice"), cat);
    IVec delta = vec_of_json(j.at("delta"), "delta");
    IVec lambda = vec_of_json(j.at("lambda"), "lambda");
    return make_kulikov(l, delta, lambda);
}

/// Ball-quotient entries [{"J": rows, "F": rows}, ..] over a fixed ambient.
inline SemifanBallCase semifan_ball_of_json(const Lattice& l, const Json& entries) {
    if (!entries.is_array()) throw input_error("semifan entries: expected an array");
    std::vector<std::pair<Sublattice, IMat>> parsed;
    for (const Json& e : entries) {
        require_keys(e, "semifan entry", {"F", "J"});
        parsed.emplace_back(Sublattice(l, mat_of_json(e.at("J"), "entry J")),
                            mat_of_json(e.at("F"), "entry F"));
    }
    return make_ball_case(l, parsed);
}

/// Fan entries [{"J": rows, "cones": [{"rays": .., "hyperplanes": ..}, ..],
/// "reference": vec, "domain": str?}, ..] over a fixed ambient.
inline SemifanTypeIVCase semifan_fan_of_json(const Lattice& l, const Json& entries) {
    if (!entries.is_array()) throw input_error("semifan entries: expected an array");
    std::vector<std::pair<Sublattice, Fan>> parsed;
    for (const Json& e : entries) {
        require_keys(e, "semifan entry", {"J", "cones", "reference"}, {"domain"});
        Fan fan;
        if (!e.at("cones").is_array()) throw input_error("semifan entry: 'cones' must be an array");
        for (const Json& c : e.at("cones")) {
            require_keys(c, "cone", {"hyperplanes", "rays"});
            fan.cones.push_back(Cone{mat_of_json(c.at("rays"), "cone rays"),
                                     mat_of_json(c.at("hyperplanes"), "cone hyperplanes")});
        }
        fan.reference = vec_of_json(e.at("reference"), "entry reference");
        if (e.contains("domain")) {
            if (!e.at("domain").is_string())
                throw input_error("semifan entry: 'domain' must be a string");
            fan.domain = e.at("domain").get<std::string>();
        }
        parsed.emplace_back(Sublattice(l, mat_of_json(e.at("J"), "entry J")), std::move(fan));
    }
    return make_fan_case(l, parsed);
}

/// Entry arrays are homogeneous: subgroup form or fan form, decided by the
/// first entry.
inline bool semifan_entries_are_ball(const Json& entries) {
    if (!entries.is_array() || entries.empty())
        throw input_error("semifan entries: expected a nonempty array");
    if (!entries[0].is_object()) throw input_error("semifan entry: expected an object");
    return entries[0].contains("F");
}

} // namespace latt
