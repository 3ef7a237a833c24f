#pragma once

#include <string>

#include <json.hpp>

#include "optuple/classes.hpp"
#include "optuple/matrices.hpp"

namespace optuple {

struct DecompositionReport;

using Json = nlohmann::json;  // map-backed: keys serialize sorted

// Scalar JSON: {"type":"rational","num":N,"den":D} | {"type":"aleph","index":k}
Json scalar_to_json(const ExtScalar& s);
ExtScalar scalar_from_json(const Json& j);

// Class JSON: {"labels":[{"id","kind","dim","mult"}...]}, labels sorted by
// id, zero entries omitted.
Json class_to_json(const TupleClass& c);
TupleClass class_from_json(const Json& j);

// Tuple JSON: {"n":N,"dim":d,"matrices":[d rows of d entries, entry=[re,im]]}
// row-major.  Readers reject dimension mismatches.
Json tuple_to_json(const MatrixTuple& a);
MatrixTuple tuple_from_json(const Json& j);

// Rectangular matrix JSON: {"rows":r,"cols":c,"entries":[rows of [re,im]]}.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json report_to_json(const DecompositionReport& r);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace optuple
