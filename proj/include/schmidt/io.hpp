#pragma once

// JSON file formats shared by the command-line tool.
//
// Matrices are row-major nested arrays of [re, im] pairs.  Objects keep
// insertion order and doubles are written in shortest round-trip form, so
// equal inputs produce byte-identical documents.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "schmidt/dense.hpp"
#include "schmidt/herm_decomp.hpp"
#include "schmidt/multipartite.hpp"
#include "schmidt/separability.hpp"
#include "schmidt/sym_decomp.hpp"

namespace schmidt::io {

using Json = nlohmann::ordered_json;

class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json encode(const ComplexMatrix& m);
Json encode(const RealMatrix& m);
ComplexMatrix decode_matrix(const Json& j);

struct MatrixFile {
    std::vector<std::size_t> dims;
    ComplexMatrix matrix;
    Json metadata = Json::object();
};

Json to_json(const MatrixFile& f);
/// Validates the schema: square matrix of side prod(dims), finite [re, im] entries.
MatrixFile matrix_file_from_json(const Json& j);

Json to_json(const SymDecomposition& d);
Json to_json(const HermDecomposition& d);
Json to_json(const MultiDecomposition& d);
Json to_json(const NormalizedDecomposition& nd);
Json to_json(const SeparabilityReport& r);

struct HermTermsFile {
    std::string mode;
    std::vector<std::size_t> dims;
    std::vector<HermTerm> terms;
};

/// Reads the terms of a "hermitian" or "symmetric" decomposition document.
HermTermsFile decomposition_terms_from_json(const Json& j);

Json parse(const std::string& text);
std::string dump(const Json& j);

}  // namespace schmidt::io
