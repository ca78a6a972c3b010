#pragma once

#include "freespec/classify.hpp"
#include "freespec/freemap.hpp"
#include "freespec/pencil.hpp"

#include <json.hpp>

#include <string>

namespace freespec {

using Json = nlohmann::json;

/// All documents carry this tag; loaders reject anything else.
inline constexpr const char* kSchemaTag = "freespec/1";

/// Complex scalars serialize as [re, im]; matrices as row-major nested
/// arrays of such pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& where);

/// Pencil document: {"schema", "dims": [d1..], "C": [matrix..]}.
Json pencil_to_json(const Pencil& p);
Pencil pencil_from_json(const Json& j, bool rescale = false);

/// Tuple document: {"schema", "n": level, "X": [matrix..]}.
Json tuple_to_json(const MatrixTuple& t);
MatrixTuple tuple_from_json(const Json& j);

/// Candidate document: {"schema", "perm", "theta", "b": [[re,im]..],
/// "higher": optional per-coordinate list of {"word": [letters],
/// "coeff": [re,im]}}.
Json candidate_to_json(const CandidateAutomorphism& c);
CandidateAutomorphism candidate_from_json(const Json& j);

Json verify_report_to_json(const VerifyReport& r);
Json structure_report_to_json(const StructureReport& r);
Json classification_to_json(const IndexClassification& c);

Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

}  // namespace freespec
