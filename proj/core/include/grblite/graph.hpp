#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "grblite/error.hpp"
#include "grblite/kernels.hpp"
#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"

namespace grblite {

// ---------------------------------------------------------------------------
// Label dictionaries
// ---------------------------------------------------------------------------

/// Bijection between external labels and dense indices, assigned in
/// first-appearance order so the same input always maps the same way.
class LabelMap {
public:
    Index intern(const std::string& label) {
        const auto it = index_.find(label);
        if (it != index_.end()) {
            return it->second;
        }
        const Index id = Index(labels_.size());
        labels_.push_back(label);
        index_.emplace(label, id);
        return id;
    }

    std::optional<Index> find(const std::string& label) const {
        const auto it = index_.find(label);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    const std::string& label(Index id) const {
        detail::require(id >= 0 && id < size(), "label index ", id, " out of range (",
                        size(), " labels)");
        return labels_[std::size_t(id)];
    }

    Index size() const { return Index(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Identity dictionary "0", "1", ..., used for unlabeled inputs.
    static LabelMap numeric(Index n) {
        LabelMap map;
        map.labels_.reserve(std::size_t(n));
        for (Index i = 0; i < n; ++i) {
            map.labels_.push_back(std::to_string(i));
            map.index_.emplace(map.labels_.back(), i);
        }
        return map;
    }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Index> index_;
};

// ---------------------------------------------------------------------------
// Graph views over sparse matrices
// ---------------------------------------------------------------------------

/// Square (or rectangular, for bipartite data) vertex-by-vertex matrix: a
/// stored entry at (v1, v2) is an edge from v1 to v2 with the stored weight.
template <class T>
struct AdjacencyMatrix {
    SparseMatrix<T> mat;
    LabelMap out_labels; // rows
    LabelMap in_labels;  // columns
};

/// Edge-by-vertex matrix: each row is one edge, -1 at its tail and +1 at
/// each head. Multiple heads per row encode hyperedges; repeated endpoint
/// pairs under distinct edge labels encode multigraphs.
struct IncidenceMatrix {
    SparseMatrix<std::int64_t> mat;
    LabelMap edge_labels;   // rows
    LabelMap vertex_labels; // columns
};

template <class T>
struct Edge {
    std::string src;
    std::string dst;
    T weight;
};

struct IncidenceEdge {
    std::string label;
    std::string tail;
    std::vector<std::string> heads;
};

// ---------------------------------------------------------------------------
// Construction from labeled edge lists
// ---------------------------------------------------------------------------

/// Builds an adjacency matrix from a directed edge list. Vertices get
/// indices in first-appearance order (declared vertices first); parallel
/// edges combine with the ambient semiring's additive operation, in input
/// order. A zero weight is rejected: zero means "no edge" here.
template <class T>
AdjacencyMatrix<T> adjacency_from_edges(const std::vector<Edge<T>>& edges,
                                        const Semiring<T>& ambient,
                                        const std::vector<std::string>& declared_vertices = {}) {
    LabelMap labels;
    for (const std::string& v : declared_vertices) {
        labels.intern(v);
    }
    std::vector<std::pair<Index, Index>> endpoints;
    endpoints.reserve(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
        detail::require(!(edges[e].weight == T{}), "edge #", e, " (", edges[e].src, " -> ",
                        edges[e].dst, ") has zero weight; zero encodes the absent edge");
        endpoints.emplace_back(labels.intern(edges[e].src), labels.intern(edges[e].dst));
    }
    Triples<T> t;
    t.nrows = labels.size();
    t.ncols = labels.size();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        t.push(endpoints[e].first, endpoints[e].second, edges[e].weight);
    }
    AdjacencyMatrix<T> out;
    out.mat = sparse_build(t, ambient.add);
    out.out_labels = labels;
    out.in_labels = std::move(labels);
    return out;
}

/// Builds an edge-by-vertex incidence matrix: one row per listed edge, -1 at
/// the tail and +1 at every head. Self-loops are not representable under
/// this convention and are rejected.
inline IncidenceMatrix incidence_from_edges(const std::vector<IncidenceEdge>& edges) {
    LabelMap vertex_labels;
    LabelMap edge_labels;
    Triples<std::int64_t> t;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const IncidenceEdge& edge = edges[e];
        detail::require(!edge.heads.empty(), "edge '", edge.label,
                        "' has no heads; every edge needs one tail and at least one head");
        const Index before = edge_labels.size();
        const Index row = edge_labels.intern(edge.label);
        detail::require(edge_labels.size() == before + 1, "duplicate edge label '",
                        edge.label, "'");
        const Index tail = vertex_labels.intern(edge.tail);
        t.push(row, tail, -1);
        std::unordered_set<std::string> seen;
        for (const std::string& head : edge.heads) {
            detail::require(head != edge.tail, "edge '", edge.label, "' is a self-loop on '",
                            edge.tail, "'; the -1/+1 convention cannot encode it");
            detail::require(seen.insert(head).second, "edge '", edge.label,
                            "' repeats head '", head, "'");
            t.push(row, vertex_labels.intern(head), 1);
        }
    }
    t.nrows = edge_labels.size();
    t.ncols = vertex_labels.size();
    IncidenceMatrix out;
    out.mat = sparse_build(t, [](std::int64_t a, std::int64_t) { return a; });
    out.edge_labels = std::move(edge_labels);
    out.vertex_labels = std::move(vertex_labels);
    return out;
}

// ---------------------------------------------------------------------------
// Incidence -> adjacency projection
// ---------------------------------------------------------------------------

/// Cross-correlates the incidence matrix into vertex-by-vertex form: the
/// indicator of tails, transposed, times the indicator of heads, over
/// plus_times. The value at (v1, v2) counts the edges from v1 to v2, so
/// parallel edges stay visible as multiplicities.
inline AdjacencyMatrix<std::int64_t> incidence_to_adjacency(const IncidenceMatrix& e) {
    const auto tails = apply(transpose(e.mat), [](std::int64_t v) -> std::optional<std::int64_t> {
        if (v < 0) {
            return 1;
        }
        return std::nullopt;
    });
    const auto heads = apply(e.mat, [](std::int64_t v) -> std::optional<std::int64_t> {
        if (v > 0) {
            return 1;
        }
        return std::nullopt;
    });
    AdjacencyMatrix<std::int64_t> out;
    out.mat = spgemm(tails, heads, semirings::plus_times_i64());
    out.out_labels = e.vertex_labels;
    out.in_labels = e.vertex_labels;
    return out;
}

/// Boolean variant of the projection: edge multiplicities thresholded away.
inline AdjacencyMatrix<bool> incidence_to_adjacency_boolean(const IncidenceMatrix& e) {
    const AdjacencyMatrix<std::int64_t> counts = incidence_to_adjacency(e);
    AdjacencyMatrix<bool> out;
    out.mat = apply(counts.mat, [](std::int64_t v) -> std::optional<bool> {
        if (v > 0) {
            return true;
        }
        return std::nullopt;
    });
    out.out_labels = counts.out_labels;
    out.in_labels = counts.in_labels;
    return out;
}

} // namespace grblite
