#pragma once

// Shared random-input builders for the unit and acceptance suites. Oracles
// live in oracles.hpp; this file only fabricates inputs.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grblite/graph.hpp"
#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"

namespace testgen {

using grblite::AdjacencyMatrix;
using grblite::Index;
using grblite::LabelMap;
using grblite::SparseMatrix;
using grblite::Triples;

inline double unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

/// Random triples with optional duplicate coordinates.
template <class T>
Triples<T> random_triples(std::mt19937_64& rng, Index nrows, Index ncols, Index entries,
                          grblite::ScalarSampler<T> sample = grblite::default_sample<T>) {
    Triples<T> t;
    t.nrows = nrows;
    t.ncols = ncols;
    for (Index e = 0; e < entries && nrows > 0 && ncols > 0; ++e) {
        t.push(Index(rng() % std::uint64_t(nrows)), Index(rng() % std::uint64_t(ncols)),
               sample(rng));
    }
    return t;
}

/// Unique directed index pairs without self-loops.
inline std::vector<std::pair<Index, Index>> random_simple_digraph(std::mt19937_64& rng,
                                                                  Index n,
                                                                  double avg_out_degree) {
    std::set<std::pair<Index, Index>> edges;
    if (n > 1) {
        const Index target = Index(double(n) * avg_out_degree);
        for (Index e = 0; e < target; ++e) {
            const Index u = Index(rng() % std::uint64_t(n));
            const Index v = Index(rng() % std::uint64_t(n));
            if (u != v) {
                edges.emplace(u, v);
            }
        }
    }
    return {edges.begin(), edges.end()};
}

/// Directed index pairs where parallel edges are allowed (still no
/// self-loops).
inline std::vector<std::pair<Index, Index>> random_multigraph(std::mt19937_64& rng, Index n,
                                                              Index edges) {
    std::vector<std::pair<Index, Index>> out;
    if (n > 1) {
        for (Index e = 0; e < edges; ++e) {
            const Index u = Index(rng() % std::uint64_t(n));
            Index v = Index(rng() % std::uint64_t(n));
            if (u == v) {
                v = (v + 1) % n;
            }
            out.emplace_back(u, v);
        }
    }
    return out;
}

inline std::string vertex_name(Index v) { return "v" + std::to_string(v); }

/// Adjacency over numeric labels from weighted index triples (duplicates
/// combined by the ambient semiring).
template <class T>
AdjacencyMatrix<T> graph_from_triples(const Triples<T>& t, const grblite::Semiring<T>& s) {
    AdjacencyMatrix<T> g;
    g.mat = grblite::sparse_build(t, s.add);
    g.out_labels = LabelMap::numeric(t.nrows);
    g.in_labels = g.out_labels;
    return g;
}

/// Random weighted digraph as an adjacency over numeric labels; weights
/// uniform in [1, max_weight].
inline AdjacencyMatrix<std::int64_t> random_weighted_graph(std::mt19937_64& rng, Index n,
                                                           double avg_out_degree,
                                                           std::int64_t max_weight) {
    Triples<std::int64_t> t;
    t.nrows = n;
    t.ncols = n;
    for (const auto& [u, v] : random_simple_digraph(rng, n, avg_out_degree)) {
        t.push(u, v, std::int64_t(rng() % std::uint64_t(max_weight)) + 1);
    }
    return graph_from_triples(t, grblite::semirings::min_plus_i64());
}

} // namespace testgen
