#pragma once

#include <algorithm>
#include <exception>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "grblite/error.hpp"
#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"

namespace grblite {

namespace detail {

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};

/// Splits [0, nrows) into `blocks` contiguous ranges with roughly equal
/// stored-entry counts. The split depends only on the matrix, never on
/// timing, so parallel results are reproducible.
inline std::vector<Index> partition_rows(const std::vector<Index>& offsets, Index nrows,
                                         int blocks) {
    std::vector<Index> starts(std::size_t(blocks) + 1, nrows);
    starts[0] = 0;
    const Index total = offsets.empty() ? 0 : offsets.back();
    for (int b = 1; b < blocks; ++b) {
        const Index target = total * b / blocks;
        const auto it = std::lower_bound(offsets.begin(), offsets.end(), target);
        Index row = Index(it - offsets.begin());
        row = std::min(row, nrows);
        row = std::max(row, starts[std::size_t(b) - 1]);
        starts[std::size_t(b)] = row;
    }
    return starts;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Semiring matrix product
// ---------------------------------------------------------------------------

/// Row-wise semiring product C(i,j) = add over k of A(i,k) mult B(k,j).
/// Per output row, contributions accumulate over k in ascending order, so
/// the result is identical run-to-run and for any worker count. Accumulated
/// entries equal to the additive identity are dropped before return.
template <class T>
SparseMatrix<T> spgemm(const SparseMatrix<T>& a, const SparseMatrix<T>& b,
                       const Semiring<T>& s, int threads = 1) {
    detail::require(a.ncols() == b.nrows(), "spgemm: inner dimensions differ: ", a.nrows(),
                    "x", a.ncols(), " times ", b.nrows(), "x", b.ncols());
    detail::require(threads >= 1, "spgemm: worker count must be >= 1, got ", threads);

    const Index m = a.nrows();
    const Index n = b.ncols();

    struct Block {
        Index begin_row = 0;
        Index end_row = 0;
        std::vector<Index> row_nnz;
        std::vector<Index> cols;
        std::vector<T> vals;
    };

    auto run_block = [&](Block& blk) {
        std::vector<T> acc(std::size_t(n), s.add_identity);
        std::vector<char> occupied(std::size_t(n), 0);
        std::vector<Index> touched;
        blk.row_nnz.reserve(std::size_t(blk.end_row - blk.begin_row));
        for (Index i = blk.begin_row; i < blk.end_row; ++i) {
            touched.clear();
            for (Index pa = a.row_offsets()[std::size_t(i)];
                 pa < a.row_offsets()[std::size_t(i) + 1]; ++pa) {
                const Index k = a.col_indices()[std::size_t(pa)];
                const T av = a.values()[std::size_t(pa)];
                for (Index pb = b.row_offsets()[std::size_t(k)];
                     pb < b.row_offsets()[std::size_t(k) + 1]; ++pb) {
                    const Index j = b.col_indices()[std::size_t(pb)];
                    const T prod = s.mult(av, b.values()[std::size_t(pb)]);
                    if (!occupied[std::size_t(j)]) {
                        occupied[std::size_t(j)] = 1;
                        acc[std::size_t(j)] = prod;
                        touched.push_back(j);
                    } else {
                        acc[std::size_t(j)] = s.add(acc[std::size_t(j)], prod);
                    }
                }
            }
            std::sort(touched.begin(), touched.end());
            Index emitted = 0;
            for (const Index j : touched) {
                const T v = acc[std::size_t(j)];
                occupied[std::size_t(j)] = 0;
                if (!(v == s.add_identity)) {
                    blk.cols.push_back(j);
                    blk.vals.push_back(v);
                    ++emitted;
                }
            }
            blk.row_nnz.push_back(emitted);
        }
    };

    const int blocks = int(std::min<Index>(threads, std::max<Index>(m, 1)));
    const std::vector<Index> starts = detail::partition_rows(a.row_offsets(), m, blocks);
    std::vector<Block> work(static_cast<std::size_t>(blocks));
    for (int bidx = 0; bidx < blocks; ++bidx) {
        work[std::size_t(bidx)].begin_row = starts[std::size_t(bidx)];
        work[std::size_t(bidx)].end_row = starts[std::size_t(bidx) + 1];
    }

    if (blocks == 1) {
        run_block(work[0]);
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(blocks));
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(blocks) - 1);
        for (int bidx = 1; bidx < blocks; ++bidx) {
            pool.emplace_back([&, bidx] {
                try {
                    run_block(work[std::size_t(bidx)]);
                } catch (...) {
                    errors[std::size_t(bidx)] = std::current_exception();
                }
            });
        }
        try {
            run_block(work[0]);
        } catch (...) {
            errors[0] = std::current_exception();
        }
        for (std::thread& worker : pool) {
            worker.join();
        }
        for (const std::exception_ptr& err : errors) {
            if (err) {
                std::rethrow_exception(err);
            }
        }
    }

    std::vector<Index> offsets(std::size_t(m) + 1, 0);
    std::size_t total = 0;
    for (const Block& blk : work) {
        Index i = blk.begin_row;
        for (const Index count : blk.row_nnz) {
            offsets[std::size_t(i) + 1] = count;
            ++i;
        }
        total += blk.cols.size();
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        offsets[i] += offsets[i - 1];
    }
    std::vector<Index> cols;
    std::vector<T> vals;
    cols.reserve(total);
    vals.reserve(total);
    for (const Block& blk : work) {
        cols.insert(cols.end(), blk.cols.begin(), blk.cols.end());
        vals.insert(vals.end(), blk.vals.begin(), blk.vals.end());
    }
    return SparseMatrix<T>(m, n, std::move(offsets), std::move(cols), std::move(vals));
}

/// y(i) = add over j of A(i,j) mult x(j); the single-column special case of
/// spgemm, computed row-wise with the same accumulation order and pruning.
template <class T>
SparseVector<T> spmv(const SparseMatrix<T>& a, const SparseVector<T>& x,
                     const Semiring<T>& s) {
    detail::require(a.ncols() == x.length, "spmv: matrix is ", a.nrows(), "x", a.ncols(),
                    " but vector length is ", x.length);
    std::vector<T> dense(std::size_t(a.ncols()), s.add_identity);
    std::vector<char> present(std::size_t(a.ncols()), 0);
    for (std::size_t p = 0; p < x.indices.size(); ++p) {
        dense[std::size_t(x.indices[p])] = x.values[p];
        present[std::size_t(x.indices[p])] = 1;
    }
    SparseVector<T> y;
    y.length = a.nrows();
    for (Index i = 0; i < a.nrows(); ++i) {
        bool any = false;
        T acc = s.add_identity;
        for (Index p = a.row_offsets()[std::size_t(i)]; p < a.row_offsets()[std::size_t(i) + 1];
             ++p) {
            const Index j = a.col_indices()[std::size_t(p)];
            if (!present[std::size_t(j)]) {
                continue;
            }
            const T prod = s.mult(a.values()[std::size_t(p)], dense[std::size_t(j)]);
            acc = any ? s.add(acc, prod) : prod;
            any = true;
        }
        if (any && !(acc == s.add_identity)) {
            y.indices.push_back(i);
            y.values.push_back(acc);
        }
    }
    return y;
}

// ---------------------------------------------------------------------------
// Element-wise operations
// ---------------------------------------------------------------------------

/// Union-pattern element-wise combine: where both operands store a value the
/// results is add(a, b); where only one does, that value passes through
/// (absent entries behave as the additive identity).
template <class T>
SparseMatrix<T> ewise_add(const SparseMatrix<T>& a, const SparseMatrix<T>& b,
                          const Semiring<T>& s) {
    detail::require(a.nrows() == b.nrows() && a.ncols() == b.ncols(),
                    "ewise_add: shapes differ: ", a.nrows(), "x", a.ncols(), " vs ",
                    b.nrows(), "x", b.ncols());
    std::vector<Index> offsets(std::size_t(a.nrows()) + 1, 0);
    std::vector<Index> cols;
    std::vector<T> vals;
    for (Index i = 0; i < a.nrows(); ++i) {
        Index pa = a.row_offsets()[std::size_t(i)];
        Index pb = b.row_offsets()[std::size_t(i)];
        const Index ea = a.row_offsets()[std::size_t(i) + 1];
        const Index eb = b.row_offsets()[std::size_t(i) + 1];
        while (pa < ea || pb < eb) {
            Index j;
            T v;
            if (pb >= eb ||
                (pa < ea && a.col_indices()[std::size_t(pa)] < b.col_indices()[std::size_t(pb)])) {
                j = a.col_indices()[std::size_t(pa)];
                v = a.values()[std::size_t(pa)];
                ++pa;
            } else if (pa >= ea ||
                       b.col_indices()[std::size_t(pb)] < a.col_indices()[std::size_t(pa)]) {
                j = b.col_indices()[std::size_t(pb)];
                v = b.values()[std::size_t(pb)];
                ++pb;
            } else {
                j = a.col_indices()[std::size_t(pa)];
                v = s.add(a.values()[std::size_t(pa)], b.values()[std::size_t(pb)]);
                ++pa;
                ++pb;
            }
            cols.push_back(j);
            vals.push_back(v);
            ++offsets[std::size_t(i) + 1];
        }
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        offsets[i] += offsets[i - 1];
    }
    return SparseMatrix<T>(a.nrows(), a.ncols(), std::move(offsets), std::move(cols),
                           std::move(vals));
}

/// Intersection-pattern (Hadamard) element-wise combine. Sound only when the
/// additive identity annihilates mult, which the semiring must declare.
template <class T>
SparseMatrix<T> ewise_mult(const SparseMatrix<T>& a, const SparseMatrix<T>& b,
                           const Semiring<T>& s) {
    detail::require(a.nrows() == b.nrows() && a.ncols() == b.ncols(),
                    "ewise_mult: shapes differ: ", a.nrows(), "x", a.ncols(), " vs ",
                    b.nrows(), "x", b.ncols());
    detail::require(s.flags.add_identity_annihilates_mult, "ewise_mult: semiring '", s.name,
                    "' does not declare add_identity_annihilates_mult; intersection "
                    "semantics would be unsound");
    std::vector<Index> offsets(std::size_t(a.nrows()) + 1, 0);
    std::vector<Index> cols;
    std::vector<T> vals;
    for (Index i = 0; i < a.nrows(); ++i) {
        Index pa = a.row_offsets()[std::size_t(i)];
        Index pb = b.row_offsets()[std::size_t(i)];
        const Index ea = a.row_offsets()[std::size_t(i) + 1];
        const Index eb = b.row_offsets()[std::size_t(i) + 1];
        while (pa < ea && pb < eb) {
            const Index ja = a.col_indices()[std::size_t(pa)];
            const Index jb = b.col_indices()[std::size_t(pb)];
            if (ja < jb) {
                ++pa;
            } else if (jb < ja) {
                ++pb;
            } else {
                cols.push_back(ja);
                vals.push_back(s.mult(a.values()[std::size_t(pa)], b.values()[std::size_t(pb)]));
                ++offsets[std::size_t(i) + 1];
                ++pa;
                ++pb;
            }
        }
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        offsets[i] += offsets[i - 1];
    }
    return SparseMatrix<T>(a.nrows(), a.ncols(), std::move(offsets), std::move(cols),
                           std::move(vals));
}

// ---------------------------------------------------------------------------
// Reference and assignment
// ---------------------------------------------------------------------------

/// Selection with repetition: result(p,q) = A(rows[p], cols[q]) where stored.
template <class T>
SparseMatrix<T> sp_ref(const SparseMatrix<T>& a, const std::vector<Index>& rows,
                       const std::vector<Index>& cols) {
    for (const Index r : rows) {
        detail::require(r >= 0 && r < a.nrows(), "sp_ref: row index ", r,
                        " out of range for ", a.nrows(), " rows");
    }
    for (const Index c : cols) {
        detail::require(c >= 0 && c < a.ncols(), "sp_ref: column index ", c,
                        " out of range for ", a.ncols(), " columns");
    }
    // Source column -> every selected output position, so repeated columns
    // fan out.
    std::vector<std::vector<Index>> out_positions(std::size_t(a.ncols()));
    for (std::size_t q = 0; q < cols.size(); ++q) {
        out_positions[std::size_t(cols[q])].push_back(Index(q));
    }
    std::vector<Index> offsets(rows.size() + 1, 0);
    std::vector<Index> out_cols;
    std::vector<T> out_vals;
    std::vector<std::pair<Index, T>> row_entries;
    for (std::size_t p = 0; p < rows.size(); ++p) {
        row_entries.clear();
        const Index src = rows[p];
        for (Index e = a.row_offsets()[std::size_t(src)];
             e < a.row_offsets()[std::size_t(src) + 1]; ++e) {
            const Index j = a.col_indices()[std::size_t(e)];
            for (const Index q : out_positions[std::size_t(j)]) {
                row_entries.emplace_back(q, a.values()[std::size_t(e)]);
            }
        }
        std::sort(row_entries.begin(), row_entries.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [q, v] : row_entries) {
            out_cols.push_back(q);
            out_vals.push_back(v);
        }
        offsets[p + 1] = offsets[p] + Index(row_entries.size());
    }
    return SparseMatrix<T>(Index(rows.size()), Index(cols.size()), std::move(offsets),
                           std::move(out_cols), std::move(out_vals));
}

namespace detail {

inline void require_unique(const std::vector<Index>& ix, const char* what) {
    std::vector<Index> sorted = ix;
    std::sort(sorted.begin(), sorted.end());
    const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) {
        fail("sp_asgn: duplicate target ", what, " index ", *dup);
    }
}

} // namespace detail

/// Returns a copy of A with the rows-by-cols region replaced by B outright:
/// B's stored-and-absent pattern overwrites, so assignment can delete
/// entries. Target index sequences must be duplicate-free.
template <class T>
SparseMatrix<T> sp_asgn(const SparseMatrix<T>& a, const std::vector<Index>& rows,
                        const std::vector<Index>& cols, const SparseMatrix<T>& b) {
    detail::require(Index(rows.size()) == b.nrows() && Index(cols.size()) == b.ncols(),
                    "sp_asgn: target selection is ", rows.size(), "x", cols.size(),
                    " but replacement is ", b.nrows(), "x", b.ncols());
    for (const Index r : rows) {
        detail::require(r >= 0 && r < a.nrows(), "sp_asgn: row index ", r,
                        " out of range for ", a.nrows(), " rows");
    }
    for (const Index c : cols) {
        detail::require(c >= 0 && c < a.ncols(), "sp_asgn: column index ", c,
                        " out of range for ", a.ncols(), " columns");
    }
    detail::require_unique(rows, "row");
    detail::require_unique(cols, "column");

    std::vector<Index> target_row(std::size_t(a.nrows()), -1);
    for (std::size_t p = 0; p < rows.size(); ++p) {
        target_row[std::size_t(rows[p])] = Index(p);
    }
    std::vector<char> col_masked(std::size_t(a.ncols()), 0);
    for (const Index c : cols) {
        col_masked[std::size_t(c)] = 1;
    }

    std::vector<Index> offsets(std::size_t(a.nrows()) + 1, 0);
    std::vector<Index> out_cols;
    std::vector<T> out_vals;
    std::vector<std::pair<Index, T>> merged;
    for (Index i = 0; i < a.nrows(); ++i) {
        const Index begin = a.row_offsets()[std::size_t(i)];
        const Index end = a.row_offsets()[std::size_t(i) + 1];
        if (target_row[std::size_t(i)] < 0) {
            for (Index e = begin; e < end; ++e) {
                out_cols.push_back(a.col_indices()[std::size_t(e)]);
                out_vals.push_back(a.values()[std::size_t(e)]);
            }
            offsets[std::size_t(i) + 1] = offsets[std::size_t(i)] + (end - begin);
            continue;
        }
        merged.clear();
        for (Index e = begin; e < end; ++e) {
            const Index j = a.col_indices()[std::size_t(e)];
            if (!col_masked[std::size_t(j)]) {
                merged.emplace_back(j, a.values()[std::size_t(e)]);
            }
        }
        const Index p = target_row[std::size_t(i)];
        for (Index e = b.row_offsets()[std::size_t(p)]; e < b.row_offsets()[std::size_t(p) + 1];
             ++e) {
            merged.emplace_back(cols[std::size_t(b.col_indices()[std::size_t(e)])],
                                b.values()[std::size_t(e)]);
        }
        std::sort(merged.begin(), merged.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        for (const auto& [j, v] : merged) {
            out_cols.push_back(j);
            out_vals.push_back(v);
        }
        offsets[std::size_t(i) + 1] = offsets[std::size_t(i)] + Index(merged.size());
    }
    return SparseMatrix<T>(a.nrows(), a.ncols(), std::move(offsets), std::move(out_cols),
                           std::move(out_vals));
}

// ---------------------------------------------------------------------------
// Apply and reduce
// ---------------------------------------------------------------------------

/// Maps f over stored entries only. f returns std::optional: nullopt drops
/// the entry, so the pattern can shrink but never grow. The result scalar
/// type follows f, which is how thresholding between domains is written.
template <class T, class F>
auto apply(const SparseMatrix<T>& a, F&& f) {
    using Opt = std::remove_cvref_t<std::invoke_result_t<F&, const T&>>;
    static_assert(detail::is_optional<Opt>::value,
                  "apply: the mapped function must return std::optional");
    using R = typename Opt::value_type;
    std::vector<Index> offsets(std::size_t(a.nrows()) + 1, 0);
    std::vector<Index> cols;
    std::vector<R> vals;
    for (Index i = 0; i < a.nrows(); ++i) {
        for (Index p = a.row_offsets()[std::size_t(i)]; p < a.row_offsets()[std::size_t(i) + 1];
             ++p) {
            const T v = a.values()[std::size_t(p)];
            if (Opt mapped = f(v)) {
                cols.push_back(a.col_indices()[std::size_t(p)]);
                vals.push_back(*mapped);
                ++offsets[std::size_t(i) + 1];
            }
        }
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        offsets[i] += offsets[i - 1];
    }
    return SparseMatrix<R>(a.nrows(), a.ncols(), std::move(offsets), std::move(cols),
                           std::move(vals));
}

/// Per-row fold of stored entries with the additive operation, ascending
/// column order. Rows without stored entries produce no output entry.
template <class T>
SparseVector<T> reduce_rows(const SparseMatrix<T>& a, const Semiring<T>& s) {
    SparseVector<T> out;
    out.length = a.nrows();
    for (Index i = 0; i < a.nrows(); ++i) {
        const Index begin = a.row_offsets()[std::size_t(i)];
        const Index end = a.row_offsets()[std::size_t(i) + 1];
        if (begin == end) {
            continue;
        }
        T acc = s.add_identity;
        for (Index p = begin; p < end; ++p) {
            acc = s.add(acc, a.values()[std::size_t(p)]);
        }
        out.indices.push_back(i);
        out.values.push_back(acc);
    }
    return out;
}

/// Fold of every stored entry in ascending (row, col) order; the additive
/// identity for an empty matrix.
template <class T>
T reduce_all(const SparseMatrix<T>& a, const Semiring<T>& s) {
    T acc = s.add_identity;
    for (const T& v : a.values()) {
        acc = s.add(acc, v);
    }
    return acc;
}

} // namespace grblite
