#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "grblite/error.hpp"
#include "grblite/graph.hpp"
#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"

namespace grblite {

enum class GraphFormat { matrix_market, tsv };

inline GraphFormat parse_format(std::string_view name) {
    if (name == "mm") return GraphFormat::matrix_market;
    if (name == "tsv") return GraphFormat::tsv;
    detail::fail("unknown graph format '", std::string(name), "' (expected mm or tsv)");
}

/// .mtx/.mm files read as Matrix Market, anything else as tab-separated
/// edges.
inline GraphFormat infer_format(std::string_view path) {
    const auto dot = path.rfind('.');
    if (dot != std::string_view::npos) {
        const std::string_view ext = path.substr(dot + 1);
        if (ext == "mtx" || ext == "mm") {
            return GraphFormat::matrix_market;
        }
    }
    return GraphFormat::tsv;
}

namespace detail {

inline std::vector<std::string> split_whitespace(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        out.push_back(token);
    }
    return out;
}

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    while (true) {
        const std::size_t tab = line.find('\t', begin);
        if (tab == std::string::npos) {
            out.push_back(line.substr(begin));
            return out;
        }
        out.push_back(line.substr(begin, tab - begin));
        begin = tab + 1;
    }
}

inline std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return s;
}

inline std::int64_t parse_int(const std::string& token, const char* path, long line_no) {
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec == std::errc::result_out_of_range) {
        fail(path, ":", line_no, ": integer '", token, "' overflows 64 bits");
    }
    if (ec != std::errc{} || end != token.data() + token.size()) {
        fail(path, ":", line_no, ": '", token, "' is not an integer");
    }
    return value;
}

inline double parse_double(const std::string& token, const char* path, long line_no) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || end != token.data() + token.size()) {
        fail(path, ":", line_no, ": '", token, "' is not a number");
    }
    return value;
}

template <class T>
T parse_value(const std::string& token, const char* path, long line_no);

template <>
inline double parse_value<double>(const std::string& token, const char* path, long line_no) {
    return parse_double(token, path, line_no);
}
template <>
inline std::int64_t parse_value<std::int64_t>(const std::string& token, const char* path,
                                              long line_no) {
    return parse_int(token, path, line_no);
}
template <>
inline bool parse_value<bool>(const std::string& token, const char* path, long line_no) {
    if (token == "0") return false;
    if (token == "1") return true;
    fail(path, ":", line_no, ": '", token, "' is not a boolean (0 or 1)");
}

template <class T>
struct mm_field;
template <>
struct mm_field<double> {
    static constexpr const char* name = "real";
    static bool accepts(const std::string& f) {
        return f == "real" || f == "integer" || f == "pattern";
    }
};
template <>
struct mm_field<std::int64_t> {
    static constexpr const char* name = "integer";
    static bool accepts(const std::string& f) { return f == "integer" || f == "pattern"; }
};
template <>
struct mm_field<bool> {
    static constexpr const char* name = "pattern";
    static bool accepts(const std::string& f) { return f == "pattern"; }
};

} // namespace detail

// ---------------------------------------------------------------------------
// Matrix Market coordinate files
// ---------------------------------------------------------------------------

/// Reads a coordinate-format Matrix Market file into triples. File indices
/// are 1-based and converted here; symmetric files are expanded to both
/// triangles. Malformed content is rejected with the offending line number.
template <class T>
Triples<T> read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    detail::require(in.good(), "cannot open '", path, "'");
    const char* p = path.c_str();

    std::string line;
    long line_no = 1;
    detail::require(bool(std::getline(in, line)), p, ":1: empty file");
    auto header = detail::split_whitespace(line);
    detail::require(header.size() == 5 && detail::lowercase(header[0]) == "%%matrixmarket", p,
                    ":1: malformed header (expected '%%MatrixMarket matrix coordinate "
                    "<field> <symmetry>')");
    const std::string object = detail::lowercase(header[1]);
    const std::string format = detail::lowercase(header[2]);
    const std::string field = detail::lowercase(header[3]);
    const std::string symmetry = detail::lowercase(header[4]);
    detail::require(object == "matrix", p, ":1: unsupported object '", object, "'");
    detail::require(format == "coordinate", p, ":1: unsupported format '", format,
                    "' (only coordinate)");
    detail::require(field == "real" || field == "integer" || field == "pattern", p,
                    ":1: unsupported field '", field, "'");
    detail::require(detail::mm_field<T>::accepts(field), p, ":1: field '", field,
                    "' cannot load into the ", to_string(domain_of<T>::value), " domain");
    detail::require(symmetry == "general" || symmetry == "symmetric", p,
                    ":1: unsupported symmetry '", symmetry, "'");
    const bool symmetric = symmetry == "symmetric";
    const bool pattern = field == "pattern";

    // size line: first non-comment, non-blank line
    Triples<T> t;
    Index declared = 0;
    while (true) {
        detail::require(bool(std::getline(in, line)), p, ":", line_no,
                        ": unexpected end of file before the size line");
        ++line_no;
        if (line.empty() || line[0] == '%') {
            continue;
        }
        const auto tokens = detail::split_whitespace(line);
        if (tokens.empty()) {
            continue;
        }
        detail::require(tokens.size() == 3, p, ":", line_no,
                        ": size line must be 'rows cols entries'");
        t.nrows = detail::parse_int(tokens[0], p, line_no);
        t.ncols = detail::parse_int(tokens[1], p, line_no);
        declared = detail::parse_int(tokens[2], p, line_no);
        detail::require(t.nrows >= 0 && t.ncols >= 0 && declared >= 0, p, ":", line_no,
                        ": negative size");
        break;
    }

    Index seen = 0;
    while (seen < declared) {
        detail::require(bool(std::getline(in, line)), p, ":", line_no, ": expected ", declared,
                        " entries, found ", seen);
        ++line_no;
        if (line.empty() || line[0] == '%') {
            continue;
        }
        const auto tokens = detail::split_whitespace(line);
        if (tokens.empty()) {
            continue;
        }
        const std::size_t expected = pattern ? 2 : 3;
        detail::require(tokens.size() == expected, p, ":", line_no, ": expected ", expected,
                        " fields, got ", tokens.size());
        const Index i = detail::parse_int(tokens[0], p, line_no);
        const Index j = detail::parse_int(tokens[1], p, line_no);
        detail::require(i >= 1 && i <= t.nrows && j >= 1 && j <= t.ncols, p, ":", line_no,
                        ": entry (", i, ",", j, ") outside ", t.nrows, "x", t.ncols);
        T value;
        if (pattern) {
            if constexpr (std::is_same_v<T, bool>) {
                value = true;
            } else {
                value = T(1);
            }
        } else {
            value = detail::parse_value<T>(tokens[2], p, line_no);
        }
        t.push(i - 1, j - 1, value);
        if (symmetric && i != j) {
            t.push(j - 1, i - 1, value);
        }
        ++seen;
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line[0] != '%' && !detail::split_whitespace(line).empty()) {
            detail::fail(p, ":", line_no, ": trailing content after the ", declared,
                         " declared entries");
        }
    }
    return t;
}

/// Writes triples as a general coordinate Matrix Market file (1-based
/// indices; float64 with enough digits to round-trip exactly).
template <class T>
void write_matrix_market(const std::string& path, const Triples<T>& t) {
    detail::require(t.rows.size() == t.cols.size() && t.rows.size() == t.vals.size(),
                    "write_matrix_market: triples sequences have unequal lengths");
    std::ofstream out(path);
    detail::require(out.good(), "cannot write '", path, "'");
    out << "%%MatrixMarket matrix coordinate " << detail::mm_field<T>::name << " general\n";
    out << t.nrows << ' ' << t.ncols << ' ' << t.rows.size() << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t e = 0; e < t.rows.size(); ++e) {
        out << (t.rows[e] + 1) << ' ' << (t.cols[e] + 1);
        if constexpr (std::is_same_v<T, double>) {
            out << ' ' << t.vals[e];
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
            out << ' ' << t.vals[e];
        }
        out << '\n';
    }
    detail::require(out.good(), "write to '", path, "' failed");
}

// ---------------------------------------------------------------------------
// Tab-separated edge lists
// ---------------------------------------------------------------------------

/// Reads "src<TAB>dst[<TAB>weight]" lines in order (order matters: label
/// indices follow first appearance). Missing weights default to one.
template <class T>
std::vector<Edge<T>> read_tsv_edges(const std::string& path) {
    std::ifstream in(path);
    detail::require(in.good(), "cannot open '", path, "'");
    const char* p = path.c_str();
    std::vector<Edge<T>> edges;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = detail::split_tabs(line);
        detail::require(fields.size() == 2 || fields.size() == 3, p, ":", line_no,
                        ": expected 'src<TAB>dst[<TAB>weight]', got ", fields.size(),
                        " fields");
        detail::require(!fields[0].empty() && !fields[1].empty(), p, ":", line_no,
                        ": empty vertex label");
        T weight;
        if (fields.size() == 3) {
            weight = detail::parse_value<T>(fields[2], p, line_no);
        } else if constexpr (std::is_same_v<T, bool>) {
            weight = true;
        } else {
            weight = T(1);
        }
        edges.push_back(Edge<T>{fields[0], fields[1], weight});
    }
    return edges;
}

/// Reads "edge<TAB>tail<TAB>head[<TAB>head...]" lines describing directed
/// (hyper)edges for incidence construction.
inline std::vector<IncidenceEdge> read_tsv_incidence(const std::string& path) {
    std::ifstream in(path);
    detail::require(in.good(), "cannot open '", path, "'");
    const char* p = path.c_str();
    std::vector<IncidenceEdge> edges;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = detail::split_tabs(line);
        detail::require(fields.size() >= 3, p, ":", line_no,
                        ": expected 'edge<TAB>tail<TAB>head[<TAB>head...]', got ",
                        fields.size(), " fields");
        for (const std::string& f : fields) {
            detail::require(!f.empty(), p, ":", line_no, ": empty label");
        }
        IncidenceEdge e;
        e.label = fields[0];
        e.tail = fields[1];
        e.heads.assign(fields.begin() + 2, fields.end());
        edges.push_back(std::move(e));
    }
    return edges;
}

// ---------------------------------------------------------------------------
// Label dictionaries
// ---------------------------------------------------------------------------

/// Two-column "label<TAB>index" file, written beside exported matrices.
inline void write_labels_tsv(const std::string& path, const LabelMap& labels) {
    std::ofstream out(path);
    detail::require(out.good(), "cannot write '", path, "'");
    for (Index i = 0; i < labels.size(); ++i) {
        out << labels.label(i) << '\t' << i << '\n';
    }
    detail::require(out.good(), "write to '", path, "' failed");
}

inline LabelMap read_labels_tsv(const std::string& path) {
    std::ifstream in(path);
    detail::require(in.good(), "cannot open '", path, "'");
    const char* p = path.c_str();
    std::vector<std::string> by_index;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = detail::split_tabs(line);
        detail::require(fields.size() == 2, p, ":", line_no, ": expected 'label<TAB>index'");
        detail::require(!fields[0].empty(), p, ":", line_no, ": empty label");
        const Index ix = detail::parse_int(fields[1], p, line_no);
        detail::require(ix >= 0, p, ":", line_no, ": negative index");
        if (std::size_t(ix) >= by_index.size()) {
            by_index.resize(std::size_t(ix) + 1);
        }
        detail::require(by_index[std::size_t(ix)].empty(), p, ":", line_no, ": index ", ix,
                        " assigned twice");
        by_index[std::size_t(ix)] = fields[0];
    }
    LabelMap map;
    for (std::size_t i = 0; i < by_index.size(); ++i) {
        detail::require(!by_index[i].empty(), p, ": index ", i, " missing from dictionary");
        const Index assigned = map.intern(by_index[i]);
        detail::require(assigned == Index(i), p, ": label '", by_index[i], "' appears twice");
    }
    return map;
}

// ---------------------------------------------------------------------------
// Graph loading for the CLI
// ---------------------------------------------------------------------------

/// Loads an adjacency matrix from either format. Matrix Market files carry
/// no labels, so vertices get their numeric indices as labels; duplicates
/// combine with the ambient semiring's additive operation either way.
template <class T>
AdjacencyMatrix<T> load_adjacency(const std::string& path, GraphFormat format,
                                  const Semiring<T>& ambient) {
    if (format == GraphFormat::tsv) {
        return adjacency_from_edges(read_tsv_edges<T>(path), ambient);
    }
    const Triples<T> t = read_matrix_market<T>(path);
    AdjacencyMatrix<T> out;
    out.mat = sparse_build(t, ambient.add);
    out.out_labels = LabelMap::numeric(t.nrows);
    out.in_labels = LabelMap::numeric(t.ncols);
    return out;
}

} // namespace grblite
