#pragma once

#include <string>

#include <json.hpp>

#include "folner/nc_polynomial.hpp"
#include "folner/operator.hpp"
#include "folner/projection.hpp"

namespace folner {

using Json = nlohmann::json;

// Operator specs, projection specs and rotation-algebra polynomials as JSON.
// Complex numbers are [re, im] pairs (a bare number is accepted as real).
// The schemas are documented under docs/. Every parser throws SpecError on
// malformed input.

Complex complex_from_json(const Json& j);
Json complex_to_json(Complex c);

Lattice lattice_from_json(const Json& j);
Json lattice_to_json(const Lattice& l);

OperatorSpec operator_from_json(const Json& j);
Json operator_to_json(const OperatorSpec& op);

ProjectionSpec projection_from_json(const Json& j);
/// True for "window"/"index_set" objects and "kron" objects built from them;
/// operator and projection documents share the "kron" tag.
bool is_projection_json(const Json& j);
Json projection_to_json(const ProjectionSpec& p);

NCPolynomial nc_from_json(const Json& j);
Json nc_to_json(const NCPolynomial& a);

/// Reads and parses a JSON file; SpecError on I/O or syntax errors.
Json read_json_file(const std::string& path);

}  // namespace folner
