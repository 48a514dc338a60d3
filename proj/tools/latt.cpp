// Command line front end. One process runs one job: a verb parses its JSON
// request, dispatches to the library, and writes a single canonical JSON
// report to standard output. Exit codes: 0 success, 1 domain refusal
// (well-formed request the mathematics rejects), 2 malformed input. All
// numbers in the interface are exact; nothing is ever rounded.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "latt/catalog.hpp"
#include "latt/enumerate.hpp"
#include "latt/hermitian.hpp"
#include "latt/json_io.hpp"

using namespace latt;

namespace {

struct Options {
    std::string catalog_path;
    std::string format = "json";
    std::string name;
    std::string input;
    long bound = 2;
    long limit = -1; // negative: no vector listing
    long norm = -2;
    unsigned threads = 1;
    bool per_cone = false;
    unsigned long order_arg = 0;
};

Json read_input_json(const std::string& source) {
    std::string bytes;
    if (source == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        bytes = ss.str();
    } else {
        std::ifstream in(source);
        if (!in) throw input_error("cannot open input file '" + source + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        bytes = ss.str();
    }
    try {
        return Json::parse(bytes);
    } catch (const std::exception& e) {
        throw input_error(std::string("input is not valid JSON: ") + e.what());
    }
}

/// The lattice portion of a request: --name NAME becomes {"name": NAME},
/// --input reads a JSON payload; exactly one source must be given.
Json lattice_request(const Options& o) {
    if (!o.name.empty() && !o.input.empty())
        throw input_error("give either --name or --input, not both");
    if (!o.name.empty()) return Json{{"name", o.name}};
    if (!o.input.empty()) return read_input_json(o.input);
    throw input_error("a lattice is required: pass --name or --input");
}

/// Runs one verb: builds the request object (whose canonical form is
/// digested), executes the body, and prints exactly one report line. The
/// digest covers the mathematical request, not execution knobs like the
/// thread count, so reports are byte-stable across parallelism settings.
int run_verb(const std::string& command, const Options& o,
             const std::function<Json(const Options&)>& make_request,
             const std::function<std::pair<Json, Json>(const Json&, const Catalog&)>& body) {
    Json request;
    try {
        request = make_request(o);
        if (o.format != "json") throw input_error("unsupported format '" + o.format + "'");
        Catalog cat = load_catalog_file(o.catalog_path);
        auto [result, warnings] = body(request, cat);
        std::cout << canonical_json(
                         make_report(command, input_digest(request), std::move(result),
                                     std::move(warnings)))
                  << "\n";
        return 0;
    } catch (const input_error& e) {
        std::cout << canonical_json(
                         make_error_report(command, input_digest(request), false, e.what()))
                  << "\n";
        return 2;
    } catch (const domain_error& e) {
        std::cout << canonical_json(
                         make_error_report(command, input_digest(request), true, e.what()))
                  << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cout << canonical_json(make_error_report(command, input_digest(request), false,
                                                      std::string("unexpected error: ") + e.what()))
                  << "\n";
        return 2;
    }
}

Json lattice_part_json(const Sublattice& s) {
    Lattice l = s.as_lattice();
    return Json{{"basis", json_of_mat(s.basis())},
                {"gram", json_of_mat(l.gram())},
                {"rank", static_cast<std::int64_t>(l.rank())},
                {"signature", json_of_signature(signature(l))}};
}

int do_lattice_info(const Options& o) {
    return run_verb(
        "lattice info", o,
        [](const Options& opt) { return Json{{"lattice", lattice_request(opt)}}; },
        [](const Json& request, const Catalog& cat) {
            Lattice l = resolve_lattice(request.at("lattice"), cat);
            Json warnings = Json::array();
            Signature s = signature(l);
            if (s.zero > 0)
                warnings.push_back(json_warning(
                    "degenerate",
                    "the form has a kernel; the signature lists only the nondegenerate part"));
            Json result{{"det", json_of_int(determinant(l))},
                        {"even", is_even(l)},
                        {"rank", static_cast<std::int64_t>(l.rank())},
                        {"signature", json_of_signature(s)},
                        {"unimodular", is_unimodular(l)}};
            return std::make_pair(std::move(result), std::move(warnings));
        });
}

int do_lattice_roots(const Options& o) {
    return run_verb(
        "lattice roots", o,
        [](const Options& opt) {
            return Json{{"lattice", lattice_request(opt)},
                        {"limit", opt.limit < 0 ? Json() : Json(opt.limit)},
                        {"norm", opt.norm}};
        },
        [&o](const Json& request, const Catalog& cat) {
            Lattice l = resolve_lattice(request.at("lattice"), cat);
            Int target = int_of_json(request.at("norm"), "norm");
            std::vector<IVec> found = enumerate_norm_vectors(l, target, o.threads);
            Json result{{"count", static_cast<std::int64_t>(found.size())}};
            if (!request.at("limit").is_null()) {
                Int lim = int_of_json(request.at("limit"), "limit");
                if (lim < 0) throw input_error("limit must be nonnegative");
                std::size_t take = lim > Int(static_cast<long>(found.size()))
                                       ? found.size()
                                       : lim.convert_to<std::size_t>();
                Json listed = Json::array();
                for (std::size_t i = 0; i < take; ++i) listed.push_back(json_of_vec(found[i]));
                // The limit truncates the listing, never the count.
                result["truncated"] = take < found.size();
                result["vectors"] = std::move(listed);
            }
            return std::make_pair(std::move(result), Json::array());
        });
}

int do_isometry_analyze(const Options& o) {
    return run_verb(
        "isometry analyze", o,
        [](const Options& opt) {
            if (opt.input.empty()) throw input_error("isometry analyze requires --input");
            return Json{{"isometry", read_input_json(opt.input)}};
        },
        [](const Json& request, const Catalog& cat) {
            Isometry rho = resolve_isometry(request.at("isometry"), cat);
            EigenlatticeDecomposition dec = eigenlattice_decomposition(rho);
            SignatureConditionReport cond = signature_condition_check(dec);
            Json warnings = Json::array();
            Json hermitian;
            if (dec.order == 3 || dec.order == 4 || dec.order == 6) {
                try {
                    HermitianModule mod = hermitian_module(dec, rho);
                    hermitian = Json{
                        {"rank", static_cast<std::int64_t>(mod.rank_over_ring)},
                        {"signature", json_of_signature(mod.hermitian_signature)},
                        {"trace_constant", json_of_int(mod.trace_constant)}};
                } catch (const domain_error& e) {
                    warnings.push_back(json_warning("hermitian_unavailable", e.what()));
                }
            }
            Json result{{"fixed", lattice_part_json(dec.fixed)},
                        {"hermitian", std::move(hermitian)},
                        {"order", static_cast<std::int64_t>(dec.order)},
                        {"picard", lattice_part_json(dec.picard)},
                        {"signature_conditions",
                         Json{{"s", json_of_signature(cond.s_signature)},
                              {"s_passes", cond.s_passes},
                              {"t", json_of_signature(cond.t_signature)},
                              {"t_passes", cond.t_passes}}},
                        {"transcendental", lattice_part_json(dec.transcendental)}};
            return std::make_pair(std::move(result), std::move(warnings));
        });
}

int do_cusps_scan(const Options& o) {
    return run_verb(
        "cusps scan", o,
        [](const Options& opt) {
            if (opt.input.empty()) throw input_error("cusps scan requires --input");
            if (opt.bound < 1) throw input_error("scan bound must be at least 1");
            return Json{{"bound", opt.bound}, {"isometry", read_input_json(opt.input)}};
        },
        [](const Json& request, const Catalog& cat) {
            Isometry rho = resolve_isometry(request.at("isometry"), cat);
            Int bound = int_of_json(request.at("bound"), "bound");
            CuspScan scan = scan_cusps(rho, bound);
            Json warnings = Json::array();
            warnings.push_back(json_warning(
                "bounded_search", "the scan is exhaustive only up to coordinate bound " +
                                      bound.str() + " on the transcendental part"));
            return std::make_pair(json_of_cusp_scan(scan), std::move(warnings));
        });
}

int do_monodromy_classify(const Options& o) {
    return run_verb(
        "monodromy classify", o,
        [](const Options& opt) {
            if (opt.input.empty()) throw input_error("monodromy classify requires --input");
            return Json{{"degeneration", read_input_json(opt.input)}};
        },
        [](const Json& request, const Catalog& cat) {
            KulikovData data = resolve_kulikov(request.at("degeneration"), cat);
            KulikovType type = kulikov_type(data);
            IMat n = picard_lefschetz_N(data);
            MonodromyExpLog el = monodromy_exp_log(n);
            Json j_basis;
            Json count;
            if (type != KulikovType::type_I) {
                j_basis = json_of_mat(monodromy_lattice_J(data).sub.basis());
                count = json_of_int(kulikov_counts(data).count);
            }
            Json result{{"count", std::move(count)},
                        {"imprimitivity", json_of_int(data.lambda_imprimitivity)},
                        {"j", std::move(j_basis)},
                        {"lambda_norm", json_of_int(data.lambda_norm)},
                        {"n", json_of_mat(n)},
                        {"t", json_of_mat(el.t)},
                        {"type", kulikov_type_name(type)}};
            return std::make_pair(std::move(result), Json::array());
        });
}

int do_semifan_check(const Options& o) {
    return run_verb(
        "semifan check", o,
        [](const Options& opt) {
            if (opt.input.empty()) throw input_error("semifan check requires --input");
            if (opt.bound < 1) throw input_error("compatibility bound must be at least 1");
            return Json{{"bound", opt.bound},
                        {"data", read_input_json(opt.input)},
                        {"mode", opt.per_cone ? "per_cone" : "global_hyperplanes"}};
        },
        [](const Json& request, const Catalog& cat) {
            const Json& payload = request.at("data");
            require_keys(payload, "semifan data", {"entries", "lattice"},
                         {"generators", "plane"});
            Lattice l = resolve_lattice(payload.at("lattice"), cat);
            bool ball = semifan_entries_are_ball(payload.at("entries"));
            Int bound = int_of_json(request.at("bound"), "bound");
            CompatibilityMode mode = request.at("mode") == "per_cone"
                                         ? CompatibilityMode::per_cone
                                         : CompatibilityMode::global_hyperplanes;

            std::vector<Isometry> gens;
            if (payload.contains("generators")) {
                if (!payload.at("generators").is_array())
                    throw input_error("semifan data: 'generators' must be an array of matrices");
                for (const Json& g : payload.at("generators"))
                    gens.emplace_back(l, mat_of_json(g, "generator"));
            }

            bool passed = true;
            Json invariance;
            Json compatibility;
            std::int64_t entry_count = 0;
            if (ball) {
                if (payload.contains("plane"))
                    throw input_error("plane compatibility applies to fan entries only");
                SemifanBallCase sf = semifan_ball_of_json(l, payload.at("entries"));
                entry_count = static_cast<std::int64_t>(sf.entries.size());
                if (!gens.empty()) {
                    SemifanReport rep = check_invariance_ball(sf, GroupData{gens});
                    passed = passed && rep.passed();
                    invariance = json_of_semifan_report(rep);
                }
            } else {
                SemifanTypeIVCase sf = semifan_fan_of_json(l, payload.at("entries"));
                entry_count = static_cast<std::int64_t>(sf.entries.size());
                if (!gens.empty()) {
                    SemifanReport rep = check_invariance_fan(sf, GroupData{gens});
                    passed = passed && rep.passed();
                    invariance = json_of_semifan_report(rep);
                }
                if (payload.contains("plane")) {
                    IsotropicSublattice jp = make_isotropic(
                        Sublattice(l, mat_of_json(payload.at("plane"), "plane")));
                    if (jp.rank != 2) throw input_error("compatibility plane must have rank 2");
                    CompatibilityResult comp = compatibility_along(sf, jp, bound, mode);
                    passed = passed && comp.compatible;
                    compatibility = json_of_compatibility(comp);
                }
            }
            Json result{{"case", ball ? "ball" : "fan"},
                        {"compatibility", std::move(compatibility)},
                        {"entries", entry_count},
                        {"invariance", std::move(invariance)},
                        {"passed", passed}};
            return std::make_pair(std::move(result), Json::array());
        });
}

int do_orders_feasible(const Options& o) {
    return run_verb(
        "orders feasible", o,
        [](const Options& opt) {
            return Json{{"order", static_cast<std::int64_t>(opt.order_arg)}};
        },
        [&o](const Json&, const Catalog&) {
            Json result{{"feasible", order_feasible_for_k3(o.order_arg)}};
            return std::make_pair(std::move(result), Json::array());
        });
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    int rc = 0;

    CLI::App app{"exact integral lattice toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--catalog", opt.catalog_path, "user catalog file (JSON object of name -> lattice)")
        ->envname("LATT_CATALOG");
    app.add_option("--format", opt.format, "output format (only: json)");
    app.add_option("--threads", opt.threads, "worker threads for enumeration kernels");

    CLI::App* lattice = app.add_subcommand("lattice", "inspect lattices");
    lattice->fallthrough();
    lattice->require_subcommand(1);
    CLI::App* info = lattice->add_subcommand("info", "rank, signature, determinant, parity");
    info->add_option("--name", opt.name, "catalog name");
    info->add_option("--input", opt.input, "JSON file ('-' for stdin)");
    info->fallthrough();
    info->callback([&] { rc = do_lattice_info(opt); });

    CLI::App* roots = lattice->add_subcommand("roots", "count vectors of a fixed norm");
    roots->add_option("--name", opt.name, "catalog name");
    roots->add_option("--input", opt.input, "JSON file ('-' for stdin)");
    roots->add_option("--norm", opt.norm, "target norm (default -2)");
    roots->add_option("--limit", opt.limit, "list at most this many vectors");
    roots->fallthrough();
    roots->callback([&] { rc = do_lattice_roots(opt); });

    CLI::App* isometry = app.add_subcommand("isometry", "analyze isometries");
    isometry->fallthrough();
    isometry->require_subcommand(1);
    CLI::App* analyze =
        isometry->add_subcommand("analyze", "order, eigenlattices, signature conditions");
    analyze->add_option("--input", opt.input, "JSON file ('-' for stdin)");
    analyze->fallthrough();
    analyze->callback([&] { rc = do_isometry_analyze(opt); });

    CLI::App* cusps = app.add_subcommand("cusps", "boundary cusp scans");
    cusps->fallthrough();
    cusps->require_subcommand(1);
    CLI::App* scan = cusps->add_subcommand("scan", "scan for admissible isotropic planes");
    scan->add_option("--input", opt.input, "isometry JSON file ('-' for stdin)");
    scan->add_option("--bound", opt.bound, "coordinate bound for the scan (default 2)");
    scan->fallthrough();
    scan->callback([&] { rc = do_cusps_scan(opt); });

    CLI::App* monodromy = app.add_subcommand("monodromy", "degeneration classification");
    monodromy->fallthrough();
    monodromy->require_subcommand(1);
    CLI::App* classify =
        monodromy->add_subcommand("classify", "type I/II/III from a vanishing class");
    classify->add_option("--input", opt.input, "degeneration JSON file ('-' for stdin)");
    classify->fallthrough();
    classify->callback([&] { rc = do_monodromy_classify(opt); });

    CLI::App* semifan = app.add_subcommand("semifan", "boundary fan data");
    semifan->fallthrough();
    semifan->require_subcommand(1);
    CLI::App* check =
        semifan->add_subcommand("check", "validate entries, invariance, compatibility");
    check->add_option("--input", opt.input, "semifan JSON file ('-' for stdin)");
    check->add_option("--bound", opt.bound, "member bound for plane compatibility (default 2)");
    check->add_flag("--per-cone", opt.per_cone, "require agreement cone by cone");
    check->fallthrough();
    check->callback([&] { rc = do_semifan_check(opt); });

    CLI::App* orders = app.add_subcommand("orders", "symmetry order feasibility");
    orders->fallthrough();
    orders->require_subcommand(1);
    CLI::App* feasible = orders->add_subcommand("feasible", "can the order act on the surface class");
    feasible->add_option("order", opt.order_arg, "symmetry order to test")->required();
    feasible->fallthrough();
    feasible->callback([&] { rc = do_orders_feasible(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cout << canonical_json(
                         make_error_report("", input_digest(Json()), false, e.what()))
                  << "\n";
        return 2;
    }
    return rc;
}
