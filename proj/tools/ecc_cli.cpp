/**
 * @file ecc_cli.cpp
 * @brief Command-line front end: documents in, documents out.
 *
 * Exit codes: 0 success, 1 validation failure, 2 precondition violation,
 * 3 internal invariant breach.
 */
#include "ecc/afun.hpp"
#include "ecc/ehs_engine.hpp"
#include "ecc/errors.hpp"
#include "ecc/io.hpp"
#include "ecc/riesz_space.hpp"
#include "ecc/roundtrip.hpp"
#include "ecc/selftest.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using ecc::io::Json;

struct Args {
    std::vector<std::string> cones;
    std::vector<std::string> inputs;
    std::string out;
    std::size_t depth = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 1;
};

/// Result of a subcommand: the emitted document and the exit code.
struct Outcome {
    Json doc;
    int code = 0;
};

void require_inputs(const Args& a, std::size_t count, const char* usage) {
    if (a.inputs.size() != count)
        throw ecc::PreconditionError(std::string("expected ") + std::to_string(count) + " --in files: " + usage);
}

ecc::ConePresentation load_cone(const Args& a) {
    if (a.cones.size() != 1) throw ecc::PreconditionError("expected exactly one --cone file");
    ecc::ConePresentation p(ecc::io::cone_from_json(ecc::io::load(a.cones.front())));
    ecc::require_valid(p);
    return p;
}

/// Elements may be given canonically or as raw sums.
ecc::ConeElement load_element(const ecc::ConePresentation& p, const std::string& path) {
    const Json j = ecc::io::load(path);
    if (j.is_object() && j.contains("base")) {
        const ecc::RawSum r = ecc::io::raw_from_json(p, j);
        return ecc::canonicalize(p, r.base, r.terms);
    }
    const ecc::ConeElement y = ecc::io::element_from_json(p, j);
    ecc::check_element(p, y);
    return y;
}

ecc::LscFn load_function(const ecc::ConePresentation& p, const std::string& path) {
    const ecc::LscFn f = ecc::io::function_from_json(p, ecc::io::load(path));
    ecc::check_function(p, f);
    return f;
}

bool is_function_doc(const std::string& path) {
    const Json j = ecc::io::load(path);
    return j.is_object() && j.contains("values");
}

Json value_doc(const ecc::ExtScalar& v) { return {{"value", v.to_string()}}; }

Outcome cmd_validate(const Args& a) {
    if (a.cones.size() != 1) throw ecc::PreconditionError("expected exactly one --cone file");
    const ecc::ConePresentation p(ecc::io::cone_from_json(ecc::io::load(a.cones.front())));
    const ecc::ValidationReport r = ecc::validate_presentation(p);
    for (const auto& v : r.violations) std::cerr << "violation: " << v << '\n';
    std::cerr << (r.ok() ? "valid presentation\n" : "invalid presentation\n");
    return {{{"violations", r.violations}}, r.ok() ? 0 : 1};
}

Outcome cmd_canon(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 1, "canon --cone C --in RAW");
    return {ecc::io::element_to_json(p, load_element(p, a.inputs[0]))};
}

Outcome cmd_add(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 2, "add --cone C --in A --in B");
    if (is_function_doc(a.inputs[0]))
        return {ecc::io::function_to_json(
            p, ecc::afun_add(p, load_function(p, a.inputs[0]), load_function(p, a.inputs[1])))};
    return {ecc::io::element_to_json(p, ecc::cone_add(p, load_element(p, a.inputs[0]), load_element(p, a.inputs[1])))};
}

Outcome cmd_leq(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 2, "leq --cone C --in A --in B");
    if (is_function_doc(a.inputs[0])) {
        const auto f = load_function(p, a.inputs[0]);
        const auto g = load_function(p, a.inputs[1]);
        Json doc = {{"leq", ecc::afun_leq(p, f, g)}, {"way_below", ecc::afun_way_below(p, f, g)}};
        if (ecc::is_affine(f) && ecc::is_affine(g)) doc["lhd"] = ecc::afun_lhd(p, f, g);
        return {doc};
    }
    return {{{"leq", ecc::cone_leq(p, load_element(p, a.inputs[0]), load_element(p, a.inputs[1]))}}};
}

Outcome cmd_meet(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 2, "meet --cone C --in A --in B");
    if (is_function_doc(a.inputs[0])) {
        const ecc::MeetOutcome m = ecc::afun_meet(p, load_function(p, a.inputs[0]), load_function(p, a.inputs[1]));
        if (m.used_fallback) std::cerr << "meet computed by the inf-convolution program\n";
        return {ecc::io::function_to_json(p, m.value)};
    }
    const ecc::LatticeOutcome m = ecc::element_meet(p, load_element(p, a.inputs[0]), load_element(p, a.inputs[1]));
    if (!m.value) throw ecc::InvariantError("meet: " + m.diagnostic);
    return {ecc::io::element_to_json(p, *m.value)};
}

Outcome cmd_eval(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 2, "eval --cone C --in F --in Y");
    return {value_doc(ecc::eval(p, load_function(p, a.inputs[0]), load_element(p, a.inputs[1])))};
}

Outcome cmd_pair(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 2, "pair --cone C --in Y --in VEC");
    const ecc::RieszVector f = ecc::io::riesz_from_json(p, ecc::io::load(a.inputs[1]));
    if (!ecc::is_positive(p, f)) throw ecc::PreconditionError("pair: the vector is not positive");
    return {value_doc(ecc::pairing(p, load_element(p, a.inputs[0]), f))};
}

Outcome cmd_interpolate(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 4, "interpolate --cone C --in F1 --in F2 --in G1 --in G2");
    std::vector<ecc::RieszVector> v;
    for (const auto& path : a.inputs) v.push_back(ecc::io::riesz_from_json(p, ecc::io::load(path)));
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j)
            if (!ecc::riesz_leq(p, v[i], v[j])) throw ecc::PreconditionError("interpolate: requires f_i <= g_j");
    const auto h = ecc::interpolate(p, v[0], v[1], v[2], v[3]);
    if (!h) throw ecc::InvariantError("interpolate: no interpolant found");
    return {ecc::io::riesz_to_json(p, h->h)};
}

Outcome cmd_decompose(const Args& a) {
    const auto p = load_cone(a);
    if (a.inputs.size() == 2) {
        const auto f = load_function(p, a.inputs[0]);
        const auto g = load_function(p, a.inputs[1]);
        const ecc::Subtraction s = ecc::afun_subtract(p, f, g);
        return {{{"h", ecc::io::function_to_json(p, s.h)}, {"epsilon", ecc::to_string(s.epsilon)}}};
    }
    require_inputs(a, 3, "decompose --cone C --in F --in G1 --in G2");
    const ecc::RieszSplit s = ecc::riesz_decompose(p, load_function(p, a.inputs[0]), load_function(p, a.inputs[1]),
                                                   load_function(p, a.inputs[2]));
    return {{{"f1", ecc::io::function_to_json(p, s.f1)}, {"f2", ecc::io::function_to_json(p, s.f2)}}};
}

Outcome cmd_triangle(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 2, "triangle --cone C --in PHI --in PAIRS");
    const ecc::CuMorphism phi = ecc::io::morphism_from_json(p, ecc::io::load(a.inputs[0]));
    ecc::check_morphism(p, phi);
    std::vector<ecc::RatVector> F;
    for (const auto& v : ecc::io::vectors_from_json(ecc::io::load(a.inputs[1]))) {
        if (v.size() != phi.gens.size())
            throw ecc::PreconditionError("triangle: vector length differs from the number of generators");
        ecc::RatVector r;
        for (const auto& c : v) r.push_back(c.value());
        F.push_back(std::move(r));
    }
    const ecc::Factorization fact = ecc::triangle(p, phi, F);
    std::cerr << "factorization through [0,inf]^" << fact.Q.rows() << " after " << fact.log.size()
              << " descent steps\n";
    return {ecc::io::factorization_to_json(p, fact)};
}

Outcome cmd_factor_system(const Args& a) {
    const auto p = load_cone(a);
    require_inputs(a, 1, "factor-system --cone C --in SAMPLE [--depth ROUNDS]");
    const ecc::CuMorphism sample = ecc::io::morphism_from_json(p, ecc::io::load(a.inputs[0]));
    ecc::check_morphism(p, sample);
    const ecc::CuSystem sys = ecc::build_inductive_system(p, sample.gens, a.depth == 0 ? 2 : a.depth);
    if (!ecc::system_commutes(p, sys)) throw ecc::InvariantError("factor-system: stages do not commute");
    for (std::size_t k = 0; k < sys.system.dims.size(); ++k)
        std::cerr << "stage " << sys.system.indices[k] << ": [0,inf]^" << sys.system.dims[k] << '\n';
    return {ecc::io::system_to_json(sys.system)};
}

Outcome cmd_dualize(const Args& a) {
    require_inputs(a, 1, "dualize --in SYSTEM");
    return {ecc::io::system_to_json(ecc::dualize(ecc::io::system_from_json(ecc::io::load(a.inputs[0]))))};
}

Outcome cmd_bratteli(const Args& a) {
    require_inputs(a, 1, "bratteli --in DIAGRAM [--depth N]");
    const ecc::BratteliDiagram d = ecc::io::diagram_from_json(ecc::io::load(a.inputs[0]));
    ecc::check_diagram(d);
    const ecc::BratteliImport imp = ecc::bratteli_import(d, a.depth == 0 ? d.levels.size() : a.depth);
    Json counts = Json::array();
    for (const auto& c : imp.idempotent_counts) counts.push_back(c.get_str());
    return {{{"groups", ecc::io::system_to_json(imp.groups)},
             {"cones", ecc::io::system_to_json(imp.cones)},
             {"idempotent_counts", counts}}};
}

Outcome cmd_roundtrip(const Args& a) {
    const auto p = load_cone(a);
    ecc::RoundtripOptions o;
    if (a.samples != 0) o.sample_size = a.samples;
    if (a.depth != 0) o.rounds = a.depth;
    o.seed = a.seed;
    const ecc::RoundtripReport r = ecc::roundtrip_check(p, o);
    for (const auto& m : r.mismatches) std::cerr << "mismatch: " << m << '\n';
    std::cerr << r.compared << " pairings compared, " << r.threads_checked << " threads checked\n";
    return {{{"dims", r.dims},
             {"compared", r.compared},
             {"threads_checked", r.threads_checked},
             {"mismatches", r.mismatches}},
            r.ok() ? 0 : 3};
}

Outcome cmd_selftest(const Args& a) {
    ecc::SelftestOptions o;
    if (a.samples != 0) o.samples = a.samples;
    o.seed = a.seed;
    if (!a.cones.empty()) {
        o.fixtures.clear();
        for (const auto& path : a.cones)
            o.fixtures.push_back(
                {std::filesystem::path(path).stem().string(), ecc::io::cone_from_json(ecc::io::load(path))});
    }
    const ecc::SelftestReport r = ecc::run_selftest(o);
    std::cerr << ecc::format_report(r);
    Json suites = Json::array();
    for (const auto& s : r.suites)
        suites.push_back({{"suite", s.name},
                          {"fixture", s.fixture},
                          {"passed", s.passed},
                          {"failed", s.failed},
                          {"vacuous", s.vacuous},
                          {"seeds", s.failing_seeds}});
    return {{{"seed", r.seed}, {"samples", r.samples}, {"suites", suites}, {"ok", r.ok()}}, r.ok() ? 0 : 3};
}

void emit(const Args& a, const Json& doc) {
    const std::string text = ecc::io::dump(doc);
    if (a.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw ecc::PreconditionError("cannot write '" + a.out + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in finitely presented extended Choquet cones", "ecc"};
    app.require_subcommand(1, 1);
    Args args;
    app.add_option("--cone", args.cones, "cone presentation file (.cone)");
    app.add_option("--in", args.inputs, "input document, repeatable");
    app.add_option("--out", args.out, "output file; standard output by default");
    app.add_option("--depth", args.depth, "rounds or truncation depth");
    app.add_option("--samples", args.samples, "sample count");
    app.add_option("--seed", args.seed, "random seed");

    using Handler = Outcome (*)(const Args&);
    const std::vector<std::tuple<const char*, const char*, Handler>> commands = {
        {"validate", "check the cone axioms of a presentation", cmd_validate},
        {"canon", "canonical form of an element", cmd_canon},
        {"add", "sum of two elements or two functions", cmd_add},
        {"leq", "order relations between two elements or two functions", cmd_leq},
        {"meet", "meet of two elements or two functions", cmd_meet},
        {"eval", "value of a function at an element", cmd_eval},
        {"pair", "pairing of an element with a positive vector", cmd_pair},
        {"interpolate", "Riesz interpolant of four vectors", cmd_interpolate},
        {"decompose", "subtraction (two inputs) or Riesz decomposition (three inputs)", cmd_decompose},
        {"triangle", "factor a morphism through a finite stage", cmd_triangle},
        {"factor-system", "inductive system of finite stages for a sample", cmd_factor_system},
        {"dualize", "reverse and transpose a system", cmd_dualize},
        {"bratteli", "import a Bratteli diagram", cmd_bratteli},
        {"roundtrip", "compare pairings through the dual system", cmd_roundtrip},
        {"selftest", "run every property suite", cmd_selftest},
    };
    std::map<CLI::App*, Handler> handlers;
    for (const auto& [name, help, fn] : commands) handlers[app.add_subcommand(name, help)->fallthrough()] = fn;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        for (const auto& [sub, fn] : handlers) {
            if (!sub->parsed()) continue;
            const Outcome o = fn(args);
            emit(args, o.doc);
            return o.code;
        }
    } catch (const ecc::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const ecc::PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return 2;
    } catch (const ecc::InvariantError& e) {
        std::cerr << "invariant breach: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
