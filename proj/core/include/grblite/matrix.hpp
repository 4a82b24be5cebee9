#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "grblite/error.hpp"
#include "grblite/semiring.hpp"

namespace grblite {

using Index = std::int64_t;

// ---------------------------------------------------------------------------
// Triples: the construction/extraction interchange form
// ---------------------------------------------------------------------------

/// Parallel (row, col, value) sequences with explicit dimensions. Duplicate
/// coordinates are allowed here; they are combined at build time.
template <class T>
struct Triples {
    Index nrows = 0;
    Index ncols = 0;
    std::vector<Index> rows;
    std::vector<Index> cols;
    std::vector<T> vals;

    Index size() const { return Index(rows.size()); }

    void push(Index i, Index j, T v) {
        rows.push_back(i);
        cols.push_back(j);
        vals.push_back(v);
    }
};

// ---------------------------------------------------------------------------
// SparseMatrix: compressed sparse rows
// ---------------------------------------------------------------------------

template <class T>
class SparseMatrix {
public:
    SparseMatrix() = default;

    /// Empty pattern of the given shape.
    SparseMatrix(Index nrows, Index ncols)
        : nrows_(nrows), ncols_(ncols), row_offsets_(std::size_t(nrows) + 1, 0) {
        detail::require(nrows >= 0 && ncols >= 0, "matrix dimensions must be nonnegative, got ",
                        nrows, "x", ncols);
    }

    /// Adopts raw compressed-row storage; validates every structural
    /// invariant before accepting it.
    SparseMatrix(Index nrows, Index ncols, std::vector<Index> row_offsets,
                 std::vector<Index> col_indices, std::vector<T> values)
        : nrows_(nrows),
          ncols_(ncols),
          row_offsets_(std::move(row_offsets)),
          col_indices_(std::move(col_indices)),
          values_(std::move(values)) {
        validate();
    }

    Index nrows() const { return nrows_; }
    Index ncols() const { return ncols_; }
    Index nnz() const { return Index(col_indices_.size()); }

    const std::vector<Index>& row_offsets() const { return row_offsets_; }
    const std::vector<Index>& col_indices() const { return col_indices_; }
    const std::vector<T>& values() const { return values_; }

    /// Stored value at (i, j), if present.
    std::optional<T> get(Index i, Index j) const {
        detail::require(i >= 0 && i < nrows_ && j >= 0 && j < ncols_, "get(", i, ",", j,
                        ") out of range for ", nrows_, "x", ncols_, " matrix");
        const auto first = col_indices_.begin() + row_offsets_[std::size_t(i)];
        const auto last = col_indices_.begin() + row_offsets_[std::size_t(i) + 1];
        const auto it = std::lower_bound(first, last, j);
        if (it == last || *it != j) {
            return std::nullopt;
        }
        return values_[std::size_t(it - col_indices_.begin())];
    }

    /// Re-checks the compressed-row invariants; throws on any violation.
    void validate() const {
        detail::require(nrows_ >= 0 && ncols_ >= 0, "matrix dimensions must be nonnegative");
        detail::require(Index(row_offsets_.size()) == nrows_ + 1, "row_offsets has ",
                        row_offsets_.size(), " entries; expected ", nrows_ + 1);
        detail::require(!row_offsets_.empty() && row_offsets_.front() == 0,
                        "row_offsets must start at 0");
        detail::require(row_offsets_.back() == Index(col_indices_.size()),
                        "row_offsets end (", row_offsets_.back(),
                        ") does not match stored entry count (", col_indices_.size(), ")");
        detail::require(col_indices_.size() == values_.size(), "column/value length mismatch: ",
                        col_indices_.size(), " vs ", values_.size());
        for (Index i = 0; i < nrows_; ++i) {
            const Index begin = row_offsets_[std::size_t(i)];
            const Index end = row_offsets_[std::size_t(i) + 1];
            detail::require(begin <= end, "row_offsets decreases at row ", i);
            for (Index p = begin; p < end; ++p) {
                const Index j = col_indices_[std::size_t(p)];
                detail::require(j >= 0 && j < ncols_, "column index ", j, " out of range in row ",
                                i);
                detail::require(p == begin || col_indices_[std::size_t(p) - 1] < j,
                                "columns not strictly increasing in row ", i);
            }
        }
    }

private:
    Index nrows_ = 0;
    Index ncols_ = 0;
    std::vector<Index> row_offsets_ = {0};
    std::vector<Index> col_indices_;
    std::vector<T> values_;
};

template <class T>
void validate(const SparseMatrix<T>& a) {
    a.validate();
}

// ---------------------------------------------------------------------------
// SparseVector
// ---------------------------------------------------------------------------

/// Dimensioned index/value sequence; indices strictly increasing.
template <class T>
struct SparseVector {
    Index length = 0;
    std::vector<Index> indices;
    std::vector<T> values;

    Index nnz() const { return Index(indices.size()); }
};

template <class T>
void validate(const SparseVector<T>& x) {
    detail::require(x.length >= 0, "vector length must be nonnegative");
    detail::require(x.indices.size() == x.values.size(), "index/value length mismatch: ",
                    x.indices.size(), " vs ", x.values.size());
    for (std::size_t p = 0; p < x.indices.size(); ++p) {
        detail::require(x.indices[p] >= 0 && x.indices[p] < x.length, "vector index ",
                        x.indices[p], " out of range for length ", x.length);
        detail::require(p == 0 || x.indices[p - 1] < x.indices[p],
                        "vector indices not strictly increasing");
    }
}

// ---------------------------------------------------------------------------
// Construction and extraction
// ---------------------------------------------------------------------------

/// Builds a sparse matrix from triples. Entries are sorted row-major;
/// duplicate coordinates are combined left-to-right in input order with
/// `dup`. Nothing is dropped by value: explicit entries equal to any
/// semiring's additive identity stay stored.
template <class T, class Dup>
SparseMatrix<T> sparse_build(const Triples<T>& t, Dup&& dup) {
    detail::require(t.rows.size() == t.cols.size() && t.rows.size() == t.vals.size(),
                    "triples sequences have unequal lengths: ", t.rows.size(), "/",
                    t.cols.size(), "/", t.vals.size());
    detail::require(t.nrows >= 0 && t.ncols >= 0, "triples dimensions must be nonnegative");
    const std::size_t n = t.rows.size();
    for (std::size_t p = 0; p < n; ++p) {
        detail::require(t.rows[p] >= 0 && t.rows[p] < t.nrows && t.cols[p] >= 0 &&
                            t.cols[p] < t.ncols,
                        "triple #", p, " at (", t.rows[p], ",", t.cols[p],
                        ") lies outside ", t.nrows, "x", t.ncols);
    }

    // Stable sort of a permutation keeps equal coordinates in input order,
    // which fixes the left-to-right combining order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (t.rows[a] != t.rows[b]) return t.rows[a] < t.rows[b];
        return t.cols[a] < t.cols[b];
    });

    std::vector<Index> offsets(std::size_t(t.nrows) + 1, 0);
    std::vector<Index> cols;
    std::vector<T> vals;
    cols.reserve(n);
    vals.reserve(n);

    std::size_t p = 0;
    while (p < n) {
        const Index i = t.rows[order[p]];
        const Index j = t.cols[order[p]];
        T combined = t.vals[order[p]];
        ++p;
        while (p < n && t.rows[order[p]] == i && t.cols[order[p]] == j) {
            combined = dup(combined, t.vals[order[p]]);
            ++p;
        }
        cols.push_back(j);
        vals.push_back(combined);
        ++offsets[std::size_t(i) + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        offsets[i] += offsets[i - 1];
    }
    return SparseMatrix<T>(t.nrows, t.ncols, std::move(offsets), std::move(cols),
                           std::move(vals));
}

/// Extracts the stored entries in row-major order.
template <class T>
Triples<T> find(const SparseMatrix<T>& a) {
    Triples<T> t;
    t.nrows = a.nrows();
    t.ncols = a.ncols();
    t.rows.reserve(std::size_t(a.nnz()));
    t.cols.reserve(std::size_t(a.nnz()));
    t.vals.reserve(std::size_t(a.nnz()));
    for (Index i = 0; i < a.nrows(); ++i) {
        for (Index p = a.row_offsets()[std::size_t(i)]; p < a.row_offsets()[std::size_t(i) + 1];
             ++p) {
            t.rows.push_back(i);
            t.cols.push_back(a.col_indices()[std::size_t(p)]);
            t.vals.push_back(a.values()[std::size_t(p)]);
        }
    }
    return t;
}

template <class T>
SparseMatrix<T> transpose(const SparseMatrix<T>& a) {
    const Index m = a.nrows();
    const Index n = a.ncols();
    std::vector<Index> offsets(std::size_t(n) + 1, 0);
    for (Index j : a.col_indices()) {
        ++offsets[std::size_t(j) + 1];
    }
    for (std::size_t j = 1; j < offsets.size(); ++j) {
        offsets[j] += offsets[j - 1];
    }
    std::vector<Index> cols(std::size_t(a.nnz()));
    std::vector<T> vals(std::size_t(a.nnz()));
    std::vector<Index> cursor(offsets.begin(), offsets.end() - 1);
    for (Index i = 0; i < m; ++i) {
        for (Index p = a.row_offsets()[std::size_t(i)]; p < a.row_offsets()[std::size_t(i) + 1];
             ++p) {
            const Index j = a.col_indices()[std::size_t(p)];
            const Index q = cursor[std::size_t(j)]++;
            cols[std::size_t(q)] = i;
            vals[std::size_t(q)] = a.values()[std::size_t(p)];
        }
    }
    return SparseMatrix<T>(n, m, std::move(offsets), std::move(cols), std::move(vals));
}

// ---------------------------------------------------------------------------
// Comparison and small constructors
// ---------------------------------------------------------------------------

/// Structural equality after discarding entries equal to `zero`: exact on
/// integer and boolean domains, relative 1e-12 on float64 (see scalar_eq).
template <class T>
bool matrix_equal(const SparseMatrix<T>& a, const SparseMatrix<T>& b, T zero) {
    if (a.nrows() != b.nrows() || a.ncols() != b.ncols()) {
        return false;
    }
    std::size_t pa = 0;
    std::size_t pb = 0;
    const std::size_t na = std::size_t(a.nnz());
    const std::size_t nb = std::size_t(b.nnz());
    Index ra = 0;
    Index rb = 0;
    auto next_row = [](const SparseMatrix<T>& m, Index& r, std::size_t p) {
        while (std::size_t(m.row_offsets()[std::size_t(r) + 1]) <= p) {
            ++r;
        }
    };
    while (true) {
        while (pa < na && scalar_eq(a.values()[pa], zero)) {
            ++pa;
        }
        while (pb < nb && scalar_eq(b.values()[pb], zero)) {
            ++pb;
        }
        if (pa == na || pb == nb) {
            return pa == na && pb == nb;
        }
        next_row(a, ra, pa);
        next_row(b, rb, pb);
        if (ra != rb || a.col_indices()[pa] != b.col_indices()[pb] ||
            !scalar_eq(a.values()[pa], b.values()[pb])) {
            return false;
        }
        ++pa;
        ++pb;
    }
}

/// Copy of `a` without the entries equal to `zero`.
template <class T>
SparseMatrix<T> prune(const SparseMatrix<T>& a, T zero) {
    std::vector<Index> offsets(std::size_t(a.nrows()) + 1, 0);
    std::vector<Index> cols;
    std::vector<T> vals;
    for (Index i = 0; i < a.nrows(); ++i) {
        for (Index p = a.row_offsets()[std::size_t(i)]; p < a.row_offsets()[std::size_t(i) + 1];
             ++p) {
            const T v = a.values()[std::size_t(p)];
            if (!scalar_eq(v, zero)) {
                cols.push_back(a.col_indices()[std::size_t(p)]);
                vals.push_back(v);
                ++offsets[std::size_t(i) + 1];
            }
        }
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        offsets[i] += offsets[i - 1];
    }
    return SparseMatrix<T>(a.nrows(), a.ncols(), std::move(offsets), std::move(cols),
                           std::move(vals));
}

/// n-by-n diagonal of the semiring's multiplicative identity.
template <class T>
SparseMatrix<T> identity_matrix(Index n, const Semiring<T>& s) {
    detail::require(n >= 0, "identity_matrix: size must be nonnegative, got ", n);
    std::vector<Index> offsets(std::size_t(n) + 1);
    std::iota(offsets.begin(), offsets.end(), Index(0));
    std::vector<Index> cols(static_cast<std::size_t>(n));
    std::iota(cols.begin(), cols.end(), Index(0));
    std::vector<T> vals(std::size_t(n), s.mult_identity);
    return SparseMatrix<T>(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

// ---------------------------------------------------------------------------
// Vector / single-column bridging
// ---------------------------------------------------------------------------

template <class T>
SparseMatrix<T> column_matrix(const SparseVector<T>& x) {
    validate(x);
    std::vector<Index> offsets(std::size_t(x.length) + 1, 0);
    for (Index i : x.indices) {
        ++offsets[std::size_t(i) + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        offsets[i] += offsets[i - 1];
    }
    std::vector<Index> cols(x.indices.size(), 0);
    return SparseMatrix<T>(x.length, 1, std::move(offsets), std::move(cols), x.values);
}

template <class T>
SparseVector<T> column_vector(const SparseMatrix<T>& a) {
    detail::require(a.ncols() == 1, "column_vector: matrix has ", a.ncols(), " columns");
    SparseVector<T> x;
    x.length = a.nrows();
    x.values = a.values();
    x.indices.reserve(std::size_t(a.nnz()));
    for (Index i = 0; i < a.nrows(); ++i) {
        if (a.row_offsets()[std::size_t(i) + 1] > a.row_offsets()[std::size_t(i)]) {
            x.indices.push_back(i);
        }
    }
    return x;
}

} // namespace grblite
