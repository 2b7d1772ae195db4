#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "isosym/matrix.hpp"
#include "isosym/multioperator.hpp"

namespace isosym {

using Json = nlohmann::json;

/// On-disk tuple: {"d", "dim", "matrices", optional "metadata"}. Each matrix is
/// a row-major array of rows, each entry an [re, im] pair. Numbers are written
/// in the shortest decimal form that reads back to the same double, so a
/// write/read cycle is bit-exact.
struct TupleFile {
    MultiOperator tuple;
    /// Null when absent. Recognised keys "name" (string), "seed" (unsigned
    /// integer) and "construction" (string) are type-checked; other keys are
    /// carried through unchanged.
    Json metadata;
};

Json matrix_to_json(const ComplexMatrix& m);

/// Throws ParseError unless `j` is a dim x dim array of [re, im] pairs.
ComplexMatrix matrix_from_json(const Json& j, std::size_t dim);

Json tuple_to_json(const TupleFile& file);
Json tuple_to_json(const MultiOperator& tuple);

/// Throws ParseError for malformed documents; the MultiOperator constructor
/// raises DimensionMismatch / CommutationViolated for valid JSON describing
/// an invalid tuple.
TupleFile tuple_from_json(const Json& j, MultiOperator::Validation validation = MultiOperator::Validation::checked);

TupleFile parse_tuple(std::string_view text,
                      MultiOperator::Validation validation = MultiOperator::Validation::checked);

/// Throws IoError when the file cannot be read.
TupleFile read_tuple_file(const std::filesystem::path& path,
                          MultiOperator::Validation validation = MultiOperator::Validation::checked);

/// Throws IoError when the file cannot be written.
void write_tuple_file(const std::filesystem::path& path, const TupleFile& file);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// FNV-1a 64-bit hash of the bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// [re, im]
Json scalar_to_json(Scalar z);
Json vector_to_json(const Vector& v);

} // namespace isosym
