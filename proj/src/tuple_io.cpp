#include "isosym/tuple_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "isosym/errors.hpp"

namespace isosym {

namespace {

std::size_t read_count(const Json& j, const char* key) {
    if (!j.contains(key)) {
        throw ParseError(std::string("tuple: missing \"") + key + "\"");
    }
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
        throw ParseError(std::string("tuple: \"") + key + "\" must be a positive integer");
    }
    return v.get<std::size_t>();
}

Scalar read_scalar(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("tuple: entry must be an [re, im] pair of numbers, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

void check_metadata(const Json& meta) {
    if (!meta.is_object()) {
        throw ParseError("tuple: \"metadata\" must be an object");
    }
    for (const char* key : {"name", "construction"}) {
        if (meta.contains(key) && !meta.at(key).is_string()) {
            throw ParseError(std::string("tuple: metadata \"") + key + "\" must be a string");
        }
    }
    if (meta.contains("seed") && !meta.at("seed").is_number_unsigned()) {
        throw ParseError("tuple: metadata \"seed\" must be an unsigned integer");
    }
}

} // namespace

Json scalar_to_json(Scalar z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (const auto& z : v) {
        out.push_back(scalar_to_json(z));
    }
    return out;
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(scalar_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j, std::size_t dim) {
    if (!j.is_array() || j.size() != dim) {
        throw ParseError("tuple: matrix must have " + std::to_string(dim) + " rows");
    }
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != dim) {
            throw ParseError("tuple: row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
        }
        for (std::size_t k = 0; k < dim; ++k) {
            m(i, k) = read_scalar(row[k]);
        }
    }
    return m;
}

Json tuple_to_json(const MultiOperator& tuple) {
    Json out;
    out["d"] = tuple.d();
    out["dim"] = tuple.dim();
    Json mats = Json::array();
    for (const auto& m : tuple) {
        mats.push_back(matrix_to_json(m));
    }
    out["matrices"] = std::move(mats);
    return out;
}

Json tuple_to_json(const TupleFile& file) {
    Json out = tuple_to_json(file.tuple);
    if (!file.metadata.is_null()) {
        out["metadata"] = file.metadata;
    }
    return out;
}

TupleFile tuple_from_json(const Json& j, MultiOperator::Validation validation) {
    if (!j.is_object()) {
        throw ParseError("tuple: document must be a JSON object");
    }
    const auto d = read_count(j, "d");
    const auto dim = read_count(j, "dim");
    if (!j.contains("matrices") || !j.at("matrices").is_array()) {
        throw ParseError("tuple: missing \"matrices\" array");
    }
    const auto& mats = j.at("matrices");
    if (mats.size() != d) {
        throw ParseError("tuple: \"matrices\" has " + std::to_string(mats.size()) + " entries, d = " +
                         std::to_string(d));
    }
    std::vector<ComplexMatrix> ops;
    for (const auto& m : mats) {
        ops.push_back(matrix_from_json(m, dim));
    }
    TupleFile out;
    if (j.contains("metadata")) {
        check_metadata(j.at("metadata"));
        out.metadata = j.at("metadata");
    }
    out.tuple = MultiOperator(std::move(ops), validation);
    return out;
}

TupleFile parse_tuple(std::string_view text, MultiOperator::Validation validation) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("tuple: invalid JSON: ") + e.what());
    }
    return tuple_from_json(j, validation);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read " + path.string());
    }
    return buf.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

TupleFile read_tuple_file(const std::filesystem::path& path, MultiOperator::Validation validation) {
    return parse_tuple(read_text(path), validation);
}

void write_tuple_file(const std::filesystem::path& path, const TupleFile& file) {
    write_text(path, tuple_to_json(file).dump(2) + "\n");
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace isosym
