#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grblite/error.hpp"
#include "grblite/graph.hpp"
#include "grblite/kernels.hpp"
#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"

// Graph algorithms composed from the exported matrix/kernel operation set.
// Nothing in this header touches compressed-row internals; everything goes
// through build/find/transpose/apply and the semiring kernels. An audit test
// holds this file to that contract.

namespace grblite {

struct BfsResult {
    /// Level number per reached vertex; the source sits at level 0.
    SparseVector<std::int64_t> levels;
};

namespace detail {

/// Boolean reachability pattern of a matrix: true wherever an entry is stored.
template <class T>
SparseMatrix<bool> pattern_of(const SparseMatrix<T>& m) {
    return apply(m, [](const T&) -> std::optional<bool> { return true; });
}

} // namespace detail

// ---------------------------------------------------------------------------
// Breadth-first search
// ---------------------------------------------------------------------------

/// Level-synchronous BFS as repeated matrix-vector products over or/and.
/// Edges run row -> column, so out-neighbor expansion multiplies by the
/// transposed pattern; already-visited vertices are filtered off the
/// frontier after each product.
template <class T>
BfsResult bfs(const AdjacencyMatrix<T>& graph, const std::string& source) {
    const std::optional<Index> src = graph.out_labels.find(source);
    if (!src) {
        detail::fail("bfs: unknown source label '", source, "'");
    }
    const Semiring<bool>& ring = semirings::or_and_bool();
    const SparseMatrix<bool> walk = transpose(detail::pattern_of(graph.mat));
    const Index n = walk.nrows();

    std::vector<char> visited(std::size_t(n), 0);
    visited[std::size_t(*src)] = 1;
    std::vector<std::pair<Index, std::int64_t>> reached = {{*src, 0}};

    SparseVector<bool> frontier;
    frontier.length = n;
    frontier.indices.push_back(*src);
    frontier.values.push_back(true);

    for (std::int64_t level = 1; frontier.indices.size() > 0; ++level) {
        const SparseVector<bool> expanded = spmv(walk, frontier, ring);
        SparseVector<bool> fresh;
        fresh.length = n;
        for (const Index v : expanded.indices) {
            if (!visited[std::size_t(v)]) {
                visited[std::size_t(v)] = 1;
                fresh.indices.push_back(v);
                fresh.values.push_back(true);
                reached.emplace_back(v, level);
            }
        }
        frontier = std::move(fresh);
    }

    std::sort(reached.begin(), reached.end());
    BfsResult out;
    out.levels.length = n;
    for (const auto& [v, level] : reached) {
        out.levels.indices.push_back(v);
        out.levels.values.push_back(level);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Multi-source weighted BFS (min-plus fixpoint)
// ---------------------------------------------------------------------------

/// Shortest distances from every source at once: a vertices-by-sources
/// matrix relaxed as dist <- min(dist, walk minplus dist) until no value
/// decreases. Absent entries are unreachable pairs. Requires nonnegative
/// weights; `threads` feeds through to the inner products.
inline SparseMatrix<std::int64_t> multi_source_bfs(const AdjacencyMatrix<std::int64_t>& graph,
                                                   const std::vector<std::string>& sources,
                                                   int threads = 1) {
    detail::require(!sources.empty(), "multi_source_bfs: source list is empty");
    const Semiring<std::int64_t>& ring = semirings::min_plus_i64();
    const Index n = graph.mat.nrows();

    for (const std::int64_t w : find(graph.mat).vals) {
        detail::require(w >= 0, "multi_source_bfs: negative edge weight ", w,
                        "; the min-plus fixpoint needs nonnegative weights");
    }

    Triples<std::int64_t> start;
    start.nrows = n;
    start.ncols = Index(sources.size());
    for (std::size_t q = 0; q < sources.size(); ++q) {
        const std::optional<Index> src = graph.out_labels.find(sources[q]);
        if (!src) {
            detail::fail("multi_source_bfs: unknown source label '", sources[q], "'");
        }
        start.push(*src, Index(q), 0);
    }

    const SparseMatrix<std::int64_t> walk = transpose(graph.mat);
    SparseMatrix<std::int64_t> dist = sparse_build(start, ring.add);
    for (Index sweep = 0; sweep <= n + 1; ++sweep) {
        SparseMatrix<std::int64_t> relaxed =
            ewise_add(dist, spgemm(walk, dist, ring, threads), ring);
        if (matrix_equal(relaxed, dist, ring.add_identity)) {
            return dist;
        }
        dist = std::move(relaxed);
    }
    detail::fail("multi_source_bfs: no fixpoint after ", n + 1, " sweeps");
}

// ---------------------------------------------------------------------------
// PageRank
// ---------------------------------------------------------------------------

/// Power iteration on the damped row-stochastic walk. Out-degrees come from
/// reduce_rows; rows are rescaled through a diagonal product; dangling
/// vertices redistribute their mass uniformly. Stops once the L1 change
/// drops below `tol` or after `max_iter` sweeps. The result sums to one.
inline std::vector<double> pagerank(const AdjacencyMatrix<double>& graph, double damping = 0.85,
                                    double tol = 1e-9, int max_iter = 100) {
    const Index n = graph.mat.nrows();
    detail::require(n > 0, "pagerank: empty graph");
    detail::require(damping > 0.0 && damping < 1.0, "pagerank: damping must lie in (0,1), got ",
                    damping);
    detail::require(tol > 0.0, "pagerank: tolerance must be positive, got ", tol);
    detail::require(max_iter >= 1, "pagerank: max_iter must be >= 1, got ", max_iter);

    const Semiring<double>& ring = semirings::plus_times_f64();
    const SparseVector<double> out_degree = reduce_rows(graph.mat, ring);

    std::vector<char> dangling(std::size_t(n), 1);
    Triples<double> inverse_degree;
    inverse_degree.nrows = n;
    inverse_degree.ncols = n;
    for (std::size_t p = 0; p < out_degree.indices.size(); ++p) {
        if (out_degree.values[p] != 0.0) {
            inverse_degree.push(out_degree.indices[p], out_degree.indices[p],
                                1.0 / out_degree.values[p]);
            dangling[std::size_t(out_degree.indices[p])] = 0;
        }
    }
    const SparseMatrix<double> walk =
        transpose(spgemm(sparse_build(inverse_degree, ring.add), graph.mat, ring));

    std::vector<double> rank(std::size_t(n), 1.0 / double(n));
    SparseVector<double> current;
    current.length = n;
    current.indices.resize(std::size_t(n));
    std::iota(current.indices.begin(), current.indices.end(), Index(0));

    for (int iter = 0; iter < max_iter; ++iter) {
        current.values.assign(rank.begin(), rank.end());
        const SparseVector<double> pushed = spmv(walk, current, ring);
        double dangling_mass = 0.0;
        for (Index v = 0; v < n; ++v) {
            if (dangling[std::size_t(v)]) {
                dangling_mass += rank[std::size_t(v)];
            }
        }
        const double base = (damping * dangling_mass + (1.0 - damping)) / double(n);
        std::vector<double> next(std::size_t(n), base);
        for (std::size_t p = 0; p < pushed.indices.size(); ++p) {
            next[std::size_t(pushed.indices[p])] += damping * pushed.values[p];
        }
        double change = 0.0;
        for (Index v = 0; v < n; ++v) {
            change += std::abs(next[std::size_t(v)] - rank[std::size_t(v)]);
        }
        rank.swap(next);
        if (change < tol) {
            break;
        }
    }
    return rank;
}

// ---------------------------------------------------------------------------
// Connected components
// ---------------------------------------------------------------------------

/// Treats the graph as undirected and propagates the minimum vertex index
/// through a (min, min) algebra until the labels stop changing. The stored
/// edge payloads are the mult identity, so each product reads neighbor
/// labels straight through the edges.
template <class T>
std::vector<Index> connected_components(const AdjacencyMatrix<T>& graph) {
    static const Semiring<std::int64_t> min_min = make_semiring<std::int64_t>(
        "min_min_i64", [](std::int64_t a, std::int64_t b) { return std::min(a, b); }, pos_inf,
        [](std::int64_t a, std::int64_t b) { return std::min(a, b); }, pos_inf,
        SemiringFlags{true, true, true, true, true, false});

    const Index n = graph.mat.nrows();
    const SparseMatrix<bool> pattern = detail::pattern_of(graph.mat);
    const SparseMatrix<bool> undirected =
        ewise_add(pattern, transpose(pattern), semirings::or_and_bool());
    const SparseMatrix<std::int64_t> walk =
        apply(undirected, [](bool) -> std::optional<std::int64_t> { return pos_inf; });

    Triples<std::int64_t> start;
    start.nrows = n;
    start.ncols = 1;
    for (Index v = 0; v < n; ++v) {
        start.push(v, 0, v);
    }
    SparseMatrix<std::int64_t> labels = sparse_build(start, min_min.add);
    for (Index sweep = 0; sweep <= n + 1; ++sweep) {
        SparseMatrix<std::int64_t> next =
            ewise_add(labels, spgemm(walk, labels, min_min), min_min);
        if (matrix_equal(next, labels, min_min.add_identity)) {
            break;
        }
        labels = std::move(next);
    }

    std::vector<Index> component(std::size_t(n), 0);
    const Triples<std::int64_t> result = find(labels);
    for (Index p = 0; p < result.size(); ++p) {
        component[std::size_t(result.rows[std::size_t(p)])] = result.vals[std::size_t(p)];
    }
    return component;
}

// ---------------------------------------------------------------------------
// Triangle counting
// ---------------------------------------------------------------------------

/// Counts undirected triangles: symmetrize, drop self-loops through the
/// triples form, then fold the Hadamard product of the adjacency with its
/// own square and divide the closed wedges by six.
template <class T>
std::int64_t triangle_count(const AdjacencyMatrix<T>& graph) {
    const SparseMatrix<bool> pattern = detail::pattern_of(graph.mat);
    const SparseMatrix<bool> undirected =
        ewise_add(pattern, transpose(pattern), semirings::or_and_bool());

    const Triples<bool> all = find(undirected);
    Triples<bool> off_diagonal;
    off_diagonal.nrows = all.nrows;
    off_diagonal.ncols = all.ncols;
    for (Index p = 0; p < all.size(); ++p) {
        if (all.rows[std::size_t(p)] != all.cols[std::size_t(p)]) {
            off_diagonal.push(all.rows[std::size_t(p)], all.cols[std::size_t(p)], true);
        }
    }

    const Semiring<std::int64_t>& ring = semirings::plus_times_i64();
    const SparseMatrix<std::int64_t> simple =
        apply(sparse_build(off_diagonal, semirings::or_and_bool().add),
              [](bool) -> std::optional<std::int64_t> { return 1; });
    const SparseMatrix<std::int64_t> wedges = spgemm(simple, simple, ring);
    const SparseMatrix<std::int64_t> closed = ewise_mult(simple, wedges, ring);
    return reduce_all(closed, ring) / 6;
}

} // namespace grblite
