#pragma once

// Independent reference implementations the randomized suites check against.
// Everything here is deliberately naive and shares nothing with the library
// kernels: dense triple loops, queue BFS, binary-heap Dijkstra, union-find,
// cubic triangle enumeration, dense power iteration.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"

namespace oracle {

using grblite::Index;
using grblite::Semiring;
using grblite::SparseMatrix;
using grblite::Triples;

template <class T>
using Dense = std::vector<std::vector<T>>;

template <class T>
Dense<T> make_dense(Index nrows, Index ncols, T fill) {
    return Dense<T>(std::size_t(nrows), std::vector<T>(std::size_t(ncols), fill));
}

template <class T>
Dense<T> to_dense(const SparseMatrix<T>& a, T absent) {
    Dense<T> d = make_dense(a.nrows(), a.ncols(), absent);
    const Triples<T> t = grblite::find(a);
    for (std::size_t p = 0; p < t.rows.size(); ++p) {
        d[std::size_t(t.rows[p])][std::size_t(t.cols[p])] = t.vals[p];
    }
    return d;
}

template <class T>
bool dense_equal(const Dense<T>& x, const Dense<T>& y) {
    if (x.size() != y.size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].size() != y[i].size()) {
            return false;
        }
        for (std::size_t j = 0; j < x[i].size(); ++j) {
            if (!grblite::scalar_eq(x[i][j], y[i][j])) {
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Dense kernel references (absent entries read as the additive identity)
// ---------------------------------------------------------------------------

template <class T>
Dense<T> spgemm(const Dense<T>& a, const Dense<T>& b, const Semiring<T>& s) {
    const std::size_t m = a.size();
    const std::size_t inner = b.size();
    const std::size_t n = inner ? b[0].size() : 0;
    Dense<T> c(m, std::vector<T>(n, s.add_identity));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            T acc = s.add_identity;
            for (std::size_t k = 0; k < inner; ++k) {
                acc = s.add(acc, s.mult(a[i][k], b[k][j]));
            }
            c[i][j] = acc;
        }
    }
    return c;
}

template <class T>
Dense<T> ewise_add(const Dense<T>& a, const Dense<T>& b, const Semiring<T>& s) {
    Dense<T> c = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            c[i][j] = s.add(a[i][j], b[i][j]);
        }
    }
    return c;
}

template <class T>
Dense<T> ewise_mult(const Dense<T>& a, const Dense<T>& b, const Semiring<T>& s) {
    Dense<T> c = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a[i].size(); ++j) {
            c[i][j] = s.mult(a[i][j], b[i][j]);
        }
    }
    return c;
}

template <class T>
Dense<T> gather(const Dense<T>& a, const std::vector<Index>& rows,
                const std::vector<Index>& cols) {
    Dense<T> c(rows.size());
    for (std::size_t p = 0; p < rows.size(); ++p) {
        c[p].reserve(cols.size());
        for (std::size_t q = 0; q < cols.size(); ++q) {
            c[p].push_back(a[std::size_t(rows[p])][std::size_t(cols[q])]);
        }
    }
    return c;
}

template <class T>
Dense<T> scatter(const Dense<T>& a, const std::vector<Index>& rows,
                 const std::vector<Index>& cols, const Dense<T>& b) {
    Dense<T> c = a;
    for (std::size_t p = 0; p < rows.size(); ++p) {
        for (std::size_t q = 0; q < cols.size(); ++q) {
            c[std::size_t(rows[p])][std::size_t(cols[q])] = b[p][q];
        }
    }
    return c;
}

/// Entry-level map: feeds every stored triple through f, dropping nullopt.
template <class T, class R, class F>
Triples<R> map_entries(const Triples<T>& t, F&& f) {
    Triples<R> out;
    out.nrows = t.nrows;
    out.ncols = t.ncols;
    for (std::size_t p = 0; p < t.rows.size(); ++p) {
        if (std::optional<R> mapped = f(t.vals[p])) {
            out.push(t.rows[p], t.cols[p], *mapped);
        }
    }
    return out;
}

/// Flat left fold of row-major triples, grouped per row.
template <class T>
std::vector<std::optional<T>> reduce_rows(const Triples<T>& t, const Semiring<T>& s) {
    std::vector<std::optional<T>> out(std::size_t(t.nrows));
    for (std::size_t p = 0; p < t.rows.size(); ++p) {
        std::optional<T>& slot = out[std::size_t(t.rows[p])];
        slot = slot ? s.add(*slot, t.vals[p]) : t.vals[p];
    }
    return out;
}

template <class T>
T reduce_all(const Triples<T>& t, const Semiring<T>& s) {
    T acc = s.add_identity;
    for (std::size_t p = 0; p < t.rows.size(); ++p) {
        acc = s.add(acc, t.vals[p]);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Graph algorithm references
// ---------------------------------------------------------------------------

/// Out-neighbor adjacency lists of the stored pattern.
template <class T>
std::vector<std::vector<Index>> out_lists(const SparseMatrix<T>& a) {
    std::vector<std::vector<Index>> adj(std::size_t(a.nrows()));
    const Triples<T> t = grblite::find(a);
    for (std::size_t p = 0; p < t.rows.size(); ++p) {
        adj[std::size_t(t.rows[p])].push_back(t.cols[p]);
    }
    return adj;
}

inline std::vector<std::int64_t> queue_bfs(const std::vector<std::vector<Index>>& adj,
                                           Index source) {
    std::vector<std::int64_t> level(adj.size(), -1);
    std::deque<Index> queue;
    level[std::size_t(source)] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        const Index u = queue.front();
        queue.pop_front();
        for (const Index v : adj[std::size_t(u)]) {
            if (level[std::size_t(v)] < 0) {
                level[std::size_t(v)] = level[std::size_t(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return level;
}

/// Weighted out-neighbor lists of the stored entries.
inline std::vector<std::vector<std::pair<Index, std::int64_t>>> weighted_out_lists(
    const SparseMatrix<std::int64_t>& a) {
    std::vector<std::vector<std::pair<Index, std::int64_t>>> adj(std::size_t(a.nrows()));
    const Triples<std::int64_t> t = grblite::find(a);
    for (std::size_t p = 0; p < t.rows.size(); ++p) {
        adj[std::size_t(t.rows[p])].emplace_back(t.cols[p], t.vals[p]);
    }
    return adj;
}

/// Distances from `source`; grblite::pos_inf marks unreachable vertices.
inline std::vector<std::int64_t> dijkstra(
    const std::vector<std::vector<std::pair<Index, std::int64_t>>>& adj, Index source) {
    std::vector<std::int64_t> dist(adj.size(), grblite::pos_inf);
    using Item = std::pair<std::int64_t, Index>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[std::size_t(source)] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[std::size_t(u)]) {
            continue;
        }
        for (const auto& [v, w] : adj[std::size_t(u)]) {
            const std::int64_t candidate = d + w;
            if (candidate < dist[std::size_t(v)]) {
                dist[std::size_t(v)] = candidate;
                heap.emplace(candidate, v);
            }
        }
    }
    return dist;
}

/// Union-find components over undirected endpoint pairs; every vertex gets
/// the minimum vertex index of its component.
inline std::vector<Index> union_find_components(
    Index n, const std::vector<std::pair<Index, Index>>& edges) {
    std::vector<Index> parent(std::size_t(n));
    for (Index v = 0; v < n; ++v) {
        parent[std::size_t(v)] = v;
    }
    const auto root = [&](Index v) {
        while (parent[std::size_t(v)] != v) {
            parent[std::size_t(v)] = parent[std::size_t(parent[std::size_t(v)])];
            v = parent[std::size_t(v)];
        }
        return v;
    };
    for (const auto& [u, v] : edges) {
        const Index ru = root(u);
        const Index rv = root(v);
        if (ru != rv) {
            parent[std::size_t(std::max(ru, rv))] = std::min(ru, rv);
        }
    }
    std::vector<Index> label(std::size_t(n));
    for (Index v = 0; v < n; ++v) {
        label[std::size_t(v)] = root(v);
    }
    // With merges always pointing to the smaller root, the root already is
    // the component minimum.
    return label;
}

/// Exhaustive i<j<k enumeration over a symmetric boolean adjacency.
inline std::int64_t triangle_enumeration(const Dense<char>& sym) {
    const Index n = Index(sym.size());
    std::int64_t count = 0;
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            if (!sym[std::size_t(i)][std::size_t(j)]) {
                continue;
            }
            for (Index k = j + 1; k < n; ++k) {
                if (sym[std::size_t(i)][std::size_t(k)] && sym[std::size_t(j)][std::size_t(k)]) {
                    ++count;
                }
            }
        }
    }
    return count;
}

/// Dense power iteration with uniform teleport and uniform dangling
/// redistribution; mirrors the damped row-stochastic update in full dense
/// arithmetic.
inline std::vector<double> dense_pagerank(const Dense<double>& weights, double damping,
                                          double tol, int max_iter) {
    const std::size_t n = weights.size();
    std::vector<double> row_sum(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            row_sum[i] += weights[i][j];
        }
    }
    std::vector<double> rank(n, 1.0 / double(n));
    for (int iter = 0; iter < max_iter; ++iter) {
        double dangling_mass = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (row_sum[i] == 0.0) {
                dangling_mass += rank[i];
            }
        }
        const double base = (damping * dangling_mass + (1.0 - damping)) / double(n);
        std::vector<double> next(n, base);
        for (std::size_t j = 0; j < n; ++j) {
            double pushed = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (row_sum[i] != 0.0) {
                    pushed += weights[i][j] / row_sum[i] * rank[i];
                }
            }
            next[j] += damping * pushed;
        }
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            change += std::abs(next[i] - rank[i]);
        }
        rank.swap(next);
        if (change < tol) {
            break;
        }
    }
    return rank;
}

} // namespace oracle
