/**
 * @file io.hpp
 * @brief Text documents for presentations, elements, functions, vectors,
 * diagrams, systems and factorizations.
 *
 * Documents are JSON objects. Rationals are strings "p/q" or "p", infinity is
 * "inf". Unknown fields are rejected; every object may carry an optional
 * "description" string.
 */
#pragma once

#include "ecc/ehs_engine.hpp"
#include "ecc/riesz_space.hpp"
#include "ecc/sampling.hpp"

#include "json.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ecc::io {

using Json = nlohmann::json;

/// Throws ValidationError "<source>:<line>:<column>: syntax error: ..." on malformed text.
Json parse_text(std::string_view text, const std::string& source);
/// Reads a file; a missing file is a PreconditionError.
std::string read_file(const std::string& path);
Json load(const std::string& path);
/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

ConeSpec cone_from_json(const Json& j);
Json cone_to_json(const ConeSpec& spec);

ConeElement element_from_json(const ConePresentation& p, const Json& j);
Json element_to_json(const ConePresentation& p, const ConeElement& y);

RawSum raw_from_json(const ConePresentation& p, const Json& j);
Json raw_to_json(const ConePresentation& p, const RawSum& s);

LscFn function_from_json(const ConePresentation& p, const Json& j);
Json function_to_json(const ConePresentation& p, const LscFn& f);

CuMorphism morphism_from_json(const ConePresentation& p, const Json& j);
Json morphism_to_json(const ConePresentation& p, const CuMorphism& phi);

std::vector<ExtVector> vectors_from_json(const Json& j);
Json vectors_to_json(const std::vector<ExtVector>& vs);

RieszVector riesz_from_json(const ConePresentation& p, const Json& j);
Json riesz_to_json(const ConePresentation& p, const RieszVector& f);

Matrix matrix_from_json(const Json& j, const std::string& field);
Json matrix_to_json(const Matrix& m);

BratteliDiagram diagram_from_json(const Json& j);
Json diagram_to_json(const BratteliDiagram& d);

System system_from_json(const Json& j);
Json system_to_json(const System& s);

Factorization factorization_from_json(const ConePresentation& p, const Json& j);
Json factorization_to_json(const ConePresentation& p, const Factorization& f);

}  // namespace ecc::io
