#include "schmidt/io.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace schmidt::io {

namespace {

Json encode_vector(const RealVector& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

double finite_number(const Json& j, const char* where)
{
    if (!j.is_number())
        throw format_error(std::string(where) + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x))
        throw format_error(std::string(where) + ": non-finite number");
    return x;
}

std::vector<std::size_t> decode_dims(const Json& j)
{
    if (!j.is_array() || j.empty())
        throw format_error("dims: expected a non-empty array of positive integers");
    std::vector<std::size_t> dims;
    for (const auto& d : j) {
        if (!d.is_number_integer() || d.get<long long>() <= 0)
            throw format_error("dims: expected positive integers");
        dims.push_back(d.get<std::size_t>());
    }
    return dims;
}

Json encode_terms(const std::vector<HermTerm>& terms)
{
    Json out = Json::array();
    for (const auto& t : terms)
        out.push_back(Json::array({encode(t.b), encode(t.c)}));
    return out;
}

}  // namespace

Json encode(const ComplexMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            row.push_back(Json::array({m.re()(ii, jj), m.im()(ii, jj)}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json encode(const RealMatrix& m)
{
    return encode(ComplexMatrix(m));
}

ComplexMatrix decode_matrix(const Json& j)
{
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw format_error("matrix: expected a non-empty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j.front().size();
    ComplexMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw format_error("matrix: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) {
            const auto& entry = row[k];
            if (!entry.is_array() || entry.size() != 2)
                throw format_error("matrix: every entry must be an [re, im] pair");
            const auto ii = static_cast<Eigen::Index>(i);
            const auto kk = static_cast<Eigen::Index>(k);
            out.re()(ii, kk) = finite_number(entry[0], "matrix");
            out.im()(ii, kk) = finite_number(entry[1], "matrix");
        }
    }
    return out;
}

Json to_json(const MatrixFile& f)
{
    Json out = Json::object();
    out["dims"] = f.dims;
    out["matrix"] = encode(f.matrix);
    if (!f.metadata.empty())
        out["metadata"] = f.metadata;
    return out;
}

MatrixFile matrix_file_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("dims") || !j.contains("matrix"))
        throw format_error("matrix file: expected an object with dims and matrix");
    MatrixFile out;
    out.dims = decode_dims(j.at("dims"));
    out.matrix = decode_matrix(j.at("matrix"));
    const std::size_t side = std::accumulate(out.dims.begin(), out.dims.end(), std::size_t{1},
                                             std::multiplies<>());
    if (!out.matrix.square() || out.matrix.rows() != side)
        throw format_error("matrix file: matrix side " + std::to_string(out.matrix.rows())
                           + " does not equal the product of dims " + std::to_string(side));
    if (j.contains("metadata"))
        out.metadata = j.at("metadata");
    return out;
}

Json to_json(const SymDecomposition& d)
{
    Json out = Json::object();
    out["mode"] = "symmetric";
    out["dims"] = {d.dims.m, d.dims.n};
    Json terms = Json::array();
    for (const auto& t : d.terms)
        terms.push_back(Json::array({encode(t.b), encode(t.c)}));
    out["terms"] = std::move(terms);
    out["singular_values"] = encode_vector(d.singular_values);
    out["residual"] = d.residual;
    out["block_norms"] = d.block_norms;
    return out;
}

Json to_json(const HermDecomposition& d)
{
    Json out = Json::object();
    out["mode"] = "hermitian";
    out["dims"] = {d.dims.m, d.dims.n};
    out["terms"] = encode_terms(d.terms);
    out["singular_values"] = encode_vector(d.singular_values);
    out["residual"] = d.residual;
    out["block_norms"] = d.block_norms;
    out["lemma2_residuals"] = {d.lemma2.r12, d.lemma2.r21, d.lemma2.r_sig};
    out["approximate"] = d.approximate;
    return out;
}

Json to_json(const MultiDecomposition& d)
{
    Json out = Json::object();
    out["mode"] = "multipartite";
    out["dims"] = d.dims;
    Json terms = Json::array();
    for (const auto& tuple : d.terms) {
        Json factors = Json::array();
        for (const auto& f : tuple)
            factors.push_back(encode(f));
        terms.push_back(std::move(factors));
    }
    out["terms"] = std::move(terms);
    out["level_ranks"] = d.level_ranks;
    out["residual"] = d.residual;
    out["canonical"] = d.canonical;
    if (d.q_multi)
        out["q_multi"] = *d.q_multi;
    return out;
}

Json to_json(const NormalizedDecomposition& nd)
{
    Json out = Json::object();
    out["terms"] = encode_terms(nd.terms);
    out["b_bar"] = encode(nd.b_bar);
    out["c_bar"] = encode(nd.c_bar);
    out["q"] = nd.q;
    return out;
}

Json to_json(const SeparabilityReport& r)
{
    Json out = Json::object();
    out["q"] = r.q;
    out["q_best"] = r.q_best;
    out["upper"] = r.upper;
    out["lower_b"] = r.lower_b;
    out["lower_c"] = r.lower_c;
    out["tol"] = r.tol;
    out["verdict"] = to_string(r.verdict);
    if (r.entangled_caveat)
        out["caveat"] = "lower_b <= q <= upper holds for every decomposition, so the "
                        "entanglement flag's premises are mutually inconsistent; inspect the raw "
                        "bounds";
    out["term_count"] = r.term_count;
    out["best_restart"] = r.best_restart;
    if (r.witness)
        out["witness"] = to_json(*r.witness);
    return out;
}

HermTermsFile decomposition_terms_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("mode") || !j.contains("dims") || !j.contains("terms"))
        throw format_error("decomposition file: expected mode, dims and terms");
    HermTermsFile out;
    if (!j.at("mode").is_string())
        throw format_error("decomposition file: mode must be a string");
    out.mode = j.at("mode").get<std::string>();
    out.dims = decode_dims(j.at("dims"));
    if (out.dims.size() != 2)
        throw format_error("decomposition file: expected bipartite dims");
    const auto& terms = j.at("terms");
    if (!terms.is_array())
        throw format_error("decomposition file: terms must be an array");
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 2)
            throw format_error("decomposition file: every term must be a [B, C] pair");
        HermTerm term{decode_matrix(t[0]), decode_matrix(t[1])};
        if (!term.b.square() || term.b.rows() != out.dims[0] || !term.c.square()
            || term.c.rows() != out.dims[1])
            throw format_error("decomposition file: factor shape does not match dims");
        out.terms.push_back(std::move(term));
    }
    return out;
}

Json parse(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace schmidt::io
