#include "ecc/io.hpp"

#include "ecc/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ecc::io {

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& message) {
    throw ValidationError("schema violation at '" + field + "': " + message);
}

void expect_fields(const Json& j, const std::string& where, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
    if (!j.is_object()) schema_error(where.empty() ? "<document>" : where, "expected an object");
    for (const char* key : required)
        if (!j.contains(key)) schema_error(where + key, "missing field");
    for (const auto& [key, value] : j.items()) {
        const bool known = std::any_of(required.begin(), required.end(), [&](const char* k) { return key == k; }) ||
                           std::any_of(optional.begin(), optional.end(), [&](const char* k) { return key == k; }) ||
                           key == "description";
        if (!known) schema_error(where + key, "unknown field");
    }
    if (j.contains("description") && !j["description"].is_string())
        schema_error(where + "description", "expected a string");
}

std::string get_string(const Json& j, const std::string& field) {
    if (!j.is_string()) schema_error(field, "expected a string");
    return j.get<std::string>();
}

Rational get_rational(const Json& j, const std::string& field) {
    const std::string text = get_string(j, field);
    try {
        return parse_rational(text);
    } catch (const PreconditionError& e) {
        schema_error(field, e.what());
    }
}

ExtScalar get_ext(const Json& j, const std::string& field) {
    const std::string text = get_string(j, field);
    try {
        return ExtScalar::parse(text);
    } catch (const PreconditionError& e) {
        schema_error(field, e.what());
    }
}

std::size_t get_size(const Json& j, const std::string& field) {
    if (!j.is_number_unsigned()) schema_error(field, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

Integer get_integer(const Json& j, const std::string& field) {
    if (!j.is_number_integer()) schema_error(field, "expected an integer");
    return Integer(std::to_string(j.get<std::int64_t>()));
}

const Json& get_array(const Json& j, const std::string& field) {
    if (!j.is_array()) schema_error(field, "expected an array");
    return j;
}

std::vector<std::string> get_strings(const Json& j, const std::string& field) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < get_array(j, field).size(); ++i)
        out.push_back(get_string(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

IdemId get_idem(const ConePresentation& p, const Json& j, const std::string& field) {
    const std::string name = get_string(j, field);
    try {
        return p.idem(name);
    } catch (const std::exception&) {
        schema_error(field, "unknown idempotent '" + name + "'");
    }
}

GenId get_gen(const ConePresentation& p, const std::string& name, const std::string& field) {
    try {
        return p.gen(name);
    } catch (const std::exception&) {
        schema_error(field, "unknown generator '" + name + "'");
    }
}

Json rational_json(const Rational& q) { return to_string(q); }

}  // namespace

Json parse_text(std::string_view text, const std::string& source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::string message = e.what();
        const auto colon = message.find("syntax error");
        if (colon != std::string::npos) message = message.substr(colon);
        throw ValidationError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json load(const std::string& path) { return parse_text(read_file(path), path); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ConeSpec cone_from_json(const Json& j) {
    expect_fields(j, "", {"idempotents", "order", "generators", "rays"}, {"reductions"});
    ConeSpec s;
    if (j.contains("description")) s.description = j["description"].get<std::string>();
    s.idempotents = get_strings(j["idempotents"], "idempotents");
    const Json& order = get_array(j["order"], "order");
    for (std::size_t i = 0; i < order.size(); ++i) {
        const std::string field = "order[" + std::to_string(i) + "]";
        const auto pair = get_strings(order[i], field);
        if (pair.size() != 2) schema_error(field, "expected a pair [a, b] with a < b");
        s.order.emplace_back(pair[0], pair[1]);
    }
    const Json& gens = get_array(j["generators"], "generators");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string field = "generators[" + std::to_string(i) + "].";
        expect_fields(gens[i], field, {"id", "support", "below"});
        s.generators.push_back({get_string(gens[i]["id"], field + "id"), get_string(gens[i]["support"], field + "support"),
                                get_strings(gens[i]["below"], field + "below")});
    }
    if (!j["rays"].is_object()) schema_error("rays", "expected an object");
    for (const auto& [w, list] : j["rays"].items()) s.rays[w] = get_strings(list, "rays." + w);
    if (j.contains("reductions")) {
        const Json& reds = get_array(j["reductions"], "reductions");
        for (std::size_t i = 0; i < reds.size(); ++i) {
            const std::string field = "reductions[" + std::to_string(i) + "].";
            expect_fields(reds[i], field, {"gen", "idem", "coords"});
            ReductionSpec r{get_string(reds[i]["gen"], field + "gen"), get_string(reds[i]["idem"], field + "idem"), {}};
            if (!reds[i]["coords"].is_object()) schema_error(field + "coords", "expected an object");
            for (const auto& [x, q] : reds[i]["coords"].items()) r.coords[x] = get_rational(q, field + "coords." + x);
            s.reductions.push_back(std::move(r));
        }
    }
    return s;
}

Json cone_to_json(const ConeSpec& spec) {
    Json j = Json::object();
    if (!spec.description.empty()) j["description"] = spec.description;
    j["idempotents"] = spec.idempotents;
    j["order"] = Json::array();
    for (const auto& [a, b] : spec.order) j["order"].push_back({a, b});
    j["generators"] = Json::array();
    for (const auto& g : spec.generators) j["generators"].push_back({{"id", g.id}, {"support", g.support}, {"below", g.below}});
    j["rays"] = Json::object();
    for (const auto& [w, list] : spec.rays) j["rays"][w] = list;
    if (!spec.reductions.empty()) {
        j["reductions"] = Json::array();
        for (const auto& r : spec.reductions) {
            Json coords = Json::object();
            for (const auto& [x, q] : r.coords) coords[x] = rational_json(q);
            j["reductions"].push_back({{"gen", r.gen}, {"idem", r.idem}, {"coords", coords}});
        }
    }
    return j;
}

ConeElement element_from_json(const ConePresentation& p, const Json& j) {
    expect_fields(j, "", {"support", "coeffs"});
    ConeElement y;
    y.support = get_idem(p, j["support"], "support");
    if (!j["coeffs"].is_object()) schema_error("coeffs", "expected an object");
    for (const auto& [name, q] : j["coeffs"].items()) {
        const std::string field = "coeffs." + name;
        const Rational c = get_rational(q, field);
        if (sgn(c) <= 0) schema_error(field, "coefficients must be strictly positive");
        const GenId x = get_gen(p, name, field);
        if (!p.is_ray(x, y.support)) schema_error(field, "'" + name + "' is not a ray of " + p.idem_name(y.support));
        y.coeffs[x] = c;
    }
    return y;
}

Json element_to_json(const ConePresentation& p, const ConeElement& y) {
    Json coeffs = Json::object();
    for (const auto& [x, q] : y.coeffs) coeffs[p.gen_name(x)] = rational_json(q);
    return {{"support", p.idem_name(y.support)}, {"coeffs", coeffs}};
}

RawSum raw_from_json(const ConePresentation& p, const Json& j) {
    expect_fields(j, "", {"base", "terms"});
    RawSum s;
    s.base = get_idem(p, j["base"], "base");
    if (!j["terms"].is_object()) schema_error("terms", "expected an object");
    for (const auto& [name, q] : j["terms"].items()) {
        const std::string field = "terms." + name;
        const Rational c = get_rational(q, field);
        if (sgn(c) < 0) schema_error(field, "terms must be nonnegative");
        s.terms[get_gen(p, name, field)] = c;
    }
    return s;
}

Json raw_to_json(const ConePresentation& p, const RawSum& s) {
    Json terms = Json::object();
    for (const auto& [x, q] : s.terms) terms[p.gen_name(x)] = rational_json(q);
    return {{"base", p.idem_name(s.base)}, {"terms", terms}};
}

LscFn function_from_json(const ConePresentation& p, const Json& j) {
    expect_fields(j, "", {"support", "values"});
    LscFn f;
    f.support = get_idem(p, j["support"], "support");
    if (!j["values"].is_object()) schema_error("values", "expected an object");
    for (const auto& [name, v] : j["values"].items()) {
        const std::string field = "values." + name;
        const ExtScalar value = get_ext(v, field);
        if (value.is_zero()) schema_error(field, "values on rays must be strictly positive");
        const GenId x = get_gen(p, name, field);
        if (!p.is_ray(x, f.support)) schema_error(field, "'" + name + "' is not a ray of " + p.idem_name(f.support));
        f.values[x] = value;
    }
    for (GenId r : p.rays(f.support))
        if (!f.values.contains(r)) schema_error("values." + p.gen_name(r), "missing value on a ray");
    return f;
}

Json function_to_json(const ConePresentation& p, const LscFn& f) {
    Json values = Json::object();
    for (const auto& [x, v] : f.values) values[p.gen_name(x)] = v.to_string();
    return {{"support", p.idem_name(f.support)}, {"values", values}};
}

CuMorphism morphism_from_json(const ConePresentation& p, const Json& j) {
    expect_fields(j, "", {"generators"});
    CuMorphism phi;
    const Json& gens = get_array(j["generators"], "generators");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        try {
            phi.gens.push_back(function_from_json(p, gens[i]));
        } catch (const ValidationError& e) {
            throw ValidationError("generators[" + std::to_string(i) + "]: " + e.what());
        }
    }
    return phi;
}

Json morphism_to_json(const ConePresentation& p, const CuMorphism& phi) {
    Json gens = Json::array();
    for (const auto& f : phi.gens) gens.push_back(function_to_json(p, f));
    return {{"generators", gens}};
}

std::vector<ExtVector> vectors_from_json(const Json& j) {
    expect_fields(j, "", {"vectors"});
    std::vector<ExtVector> out;
    const Json& list = get_array(j["vectors"], "vectors");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string field = "vectors[" + std::to_string(i) + "]";
        ExtVector v;
        for (std::size_t k = 0; k < get_array(list[i], field).size(); ++k)
            v.push_back(get_ext(list[i][k], field + "[" + std::to_string(k) + "]"));
        if (!out.empty() && v.size() != out.front().size()) schema_error(field, "vectors must share one length");
        out.push_back(std::move(v));
    }
    return out;
}

Json vectors_to_json(const std::vector<ExtVector>& vs) {
    Json list = Json::array();
    for (const auto& v : vs) {
        Json row = Json::array();
        for (const auto& c : v) row.push_back(c.to_string());
        list.push_back(row);
    }
    return {{"vectors", list}};
}

RieszVector riesz_from_json(const ConePresentation& p, const Json& j) {
    expect_fields(j, "", {"values"});
    RieszVector f(p.gen_count());
    if (!j["values"].is_object()) schema_error("values", "expected an object");
    for (const auto& [name, q] : j["values"].items()) {
        const std::string field = "values." + name;
        f[get_gen(p, name, field)] = get_rational(q, field);
    }
    return f;
}

Json riesz_to_json(const ConePresentation& p, const RieszVector& f) {
    Json values = Json::object();
    for (GenId x = 0; x < f.size(); ++x)
        if (sgn(f[x]) != 0) values[p.gen_name(x)] = rational_json(f[x]);
    return {{"values", values}};
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
    get_array(j, field);
    std::vector<RatVector> rows;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string rf = field + "[" + std::to_string(i) + "]";
        RatVector row;
        for (std::size_t k = 0; k < get_array(j[i], rf).size(); ++k) {
            const std::string ef = rf + "[" + std::to_string(k) + "]";
            row.push_back(j[i][k].is_number_integer() ? Rational(get_integer(j[i][k], ef)) : get_rational(j[i][k], ef));
        }
        if (i == 0) cols = row.size();
        if (row.size() != cols) schema_error(rf, "ragged matrix rows");
        rows.push_back(std::move(row));
    }
    return Matrix::from_rows(rows, cols);
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(rational_json(m.at(i, k)));
        rows.push_back(row);
    }
    return rows;
}

BratteliDiagram diagram_from_json(const Json& j) {
    expect_fields(j, "", {"levels", "matrices"});
    BratteliDiagram d;
    const Json& levels = get_array(j["levels"], "levels");
    for (std::size_t k = 0; k < levels.size(); ++k) {
        const std::string field = "levels[" + std::to_string(k) + "]";
        std::vector<Integer> level;
        for (std::size_t i = 0; i < get_array(levels[k], field).size(); ++i)
            level.push_back(get_integer(levels[k][i], field + "[" + std::to_string(i) + "]"));
        d.levels.push_back(std::move(level));
    }
    const Json& mats = get_array(j["matrices"], "matrices");
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const std::string field = "matrices[" + std::to_string(k) + "]";
        for (const auto& row : get_array(mats[k], field))
            for (const auto& e : get_array(row, field))
                if (!e.is_number_integer()) schema_error(field, "incidence entries must be JSON integers");
        d.matrices.push_back(matrix_from_json(mats[k], field));
    }
    return d;
}

Json diagram_to_json(const BratteliDiagram& d) {
    Json levels = Json::array();
    for (const auto& level : d.levels) {
        Json row = Json::array();
        for (const auto& m : level) row.push_back(std::stoll(m.get_str()));
        levels.push_back(row);
    }
    Json mats = Json::array();
    for (const auto& m : d.matrices) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(std::stoll(m.at(i, k).get_str()));
            rows.push_back(row);
        }
        mats.push_back(rows);
    }
    return {{"levels", levels}, {"matrices", mats}};
}

System system_from_json(const Json& j) {
    expect_fields(j, "", {"direction", "indices", "dims", "steps"});
    System s;
    const std::string dir = get_string(j["direction"], "direction");
    if (dir == "inductive")
        s.direction = Direction::inductive;
    else if (dir == "projective")
        s.direction = Direction::projective;
    else
        schema_error("direction", "expected 'inductive' or 'projective'");
    s.indices = get_strings(j["indices"], "indices");
    for (std::size_t k = 0; k < get_array(j["dims"], "dims").size(); ++k)
        s.dims.push_back(get_size(j["dims"][k], "dims[" + std::to_string(k) + "]"));
    for (std::size_t k = 0; k < get_array(j["steps"], "steps").size(); ++k) {
        const std::string field = "steps[" + std::to_string(k) + "]";
        Matrix m = matrix_from_json(j["steps"][k], field);
        // An empty row list still needs its column count.
        if (m.rows() == 0 && k < s.dims.size()) m = Matrix(0, s.dims[k]);
        s.steps.push_back(std::move(m));
    }
    try {
        check_system(s);
    } catch (const PreconditionError& e) {
        throw ValidationError(std::string("schema violation in system: ") + e.what());
    }
    return s;
}

Json system_to_json(const System& s) {
    Json steps = Json::array();
    for (const auto& m : s.steps) steps.push_back(matrix_to_json(m));
    return {{"direction", s.direction == Direction::inductive ? "inductive" : "projective"},
            {"indices", s.indices},
            {"dims", s.dims},
            {"steps", steps}};
}

Factorization factorization_from_json(const ConePresentation& p, const Json& j) {
    expect_fields(j, "", {"N", "Q", "psi", "log", "segments"});
    Factorization f;
    const std::size_t n_rows = get_size(j["N"], "N");
    f.Q = matrix_from_json(j["Q"], "Q");
    if (f.Q.rows() != n_rows) schema_error("N", "differs from the number of rows of Q");
    const Json& psi = get_array(j["psi"], "psi");
    for (std::size_t i = 0; i < psi.size(); ++i) {
        try {
            f.psi.gens.push_back(function_from_json(p, psi[i]));
        } catch (const ValidationError& e) {
            throw ValidationError("psi[" + std::to_string(i) + "]: " + e.what());
        }
    }
    if (f.psi.gens.size() != n_rows) schema_error("psi", "expected N functions");
    const Json& log = get_array(j["log"], "log");
    for (std::size_t i = 0; i < log.size(); ++i) {
        const std::string field = "log[" + std::to_string(i) + "]";
        std::istringstream line(get_string(log[i], field));
        std::string m;
        DescentStep step;
        if (!(line >> m >> step.degree.n1 >> step.degree.n2 >> step.degree.n >> step.branch))
            schema_error(field, "expected '<M> <n1> <n2> <n> <branch>'");
        try {
            step.degree.M = Integer(m);
        } catch (const std::exception&) {
            schema_error(field, "malformed degree");
        }
        f.log.push_back(std::move(step));
    }
    const Json& segments = get_array(j["segments"], "segments");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const std::string field = "segments[" + std::to_string(i) + "]";
        const std::size_t start = get_size(segments[i], field);
        if (start >= f.log.size() || (!f.segments.empty() && start <= f.segments.back()))
            schema_error(field, "segment starts must increase and index the log");
        f.segments.push_back(start);
    }
    return f;
}

Json factorization_to_json(const ConePresentation& p, const Factorization& f) {
    Json psi = Json::array();
    for (const auto& g : f.psi.gens) psi.push_back(function_to_json(p, g));
    Json log = Json::array();
    for (const auto& s : f.log)
        log.push_back(s.degree.M.get_str() + " " + std::to_string(s.degree.n1) + " " + std::to_string(s.degree.n2) +
                      " " + std::to_string(s.degree.n) + " " + s.branch);
    return {{"N", f.Q.rows()}, {"Q", matrix_to_json(f.Q)}, {"psi", psi}, {"log", log}, {"segments", f.segments}};
}

}  // namespace ecc::io
