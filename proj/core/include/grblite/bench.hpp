#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "grblite/algorithms.hpp"
#include "grblite/error.hpp"
#include "grblite/generator.hpp"
#include "grblite/graph.hpp"
#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"

namespace grblite {

struct BenchConfig {
    int scale = 14;                      // vertices = 2^scale
    std::int64_t edge_factor = 16;       // generated edges per vertex
    std::vector<int> threads = {1, 2, 4};
    std::uint64_t seed = 1;
    std::string semiring = "min_plus_i64";
    int trials = 1;
};

struct BenchRow {
    int threads = 1;
    int trial = 0;
    double seconds = 0.0;
    double edges_per_second = 0.0; // stored edges * sources / seconds
    double speedup = 1.0;          // wall time at the baseline worker count / wall time
    double efficiency = 1.0;       // speedup / workers
    std::uint64_t checksum = 0;    // result-matrix checksum
};

struct BenchReport {
    BenchConfig config;
    Index vertices = 0;
    Index edges = 0; // stored entries after duplicate combining
    Index sources = 0;
    std::vector<BenchRow> rows;
};

namespace detail {

inline std::uint64_t fnv1a(std::uint64_t hash, std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
        hash ^= (word >> (8 * byte)) & 0xffu;
        hash *= 0x100000001b3u;
    }
    return hash;
}

template <class T>
std::uint64_t value_bits(T v) {
    if constexpr (std::is_same_v<T, double>) {
        return std::bit_cast<std::uint64_t>(v);
    } else if constexpr (std::is_same_v<T, bool>) {
        return v ? 1u : 0u;
    } else {
        return std::uint64_t(v);
    }
}

} // namespace detail

/// Order-sensitive FNV-1a digest of the dimensions and the stored entry
/// stream; equal digests mean bitwise-equal matrices.
template <class T>
std::uint64_t matrix_checksum(const SparseMatrix<T>& a) {
    std::uint64_t hash = 0xcbf29ce484222325u;
    hash = detail::fnv1a(hash, std::uint64_t(a.nrows()));
    hash = detail::fnv1a(hash, std::uint64_t(a.ncols()));
    const Triples<T> t = find(a);
    for (std::size_t p = 0; p < t.rows.size(); ++p) {
        hash = detail::fnv1a(hash, std::uint64_t(t.rows[p]));
        hash = detail::fnv1a(hash, std::uint64_t(t.cols[p]));
        hash = detail::fnv1a(hash, detail::value_bits<T>(t.vals[p]));
    }
    return hash;
}

/// Runs the product-dominated scaling workload: build a power-law graph,
/// then run multi-source weighted BFS (64 sources) at each configured worker
/// count, timing each run. Result checksums must agree across worker counts;
/// a divergence is a hard failure because it breaks the determinism
/// contract. Speedups are relative to the single-worker time of the same
/// trial.
inline BenchReport bench_spgemm(const BenchConfig& cfg) {
    detail::require(!cfg.threads.empty(), "bench: thread list is empty");
    for (const int p : cfg.threads) {
        detail::require(p >= 1, "bench: worker counts must be >= 1, got ", p);
    }
    detail::require(cfg.trials >= 1, "bench: trials must be >= 1, got ", cfg.trials);
    detail::require(cfg.semiring == "min_plus_i64", "bench: the workload runs over "
                    "min_plus_i64; got '", cfg.semiring, "'");

    const Semiring<std::int64_t>& ring = semirings::min_plus_i64();
    const Triples<std::int64_t> generated =
        kronecker_generate(cfg.scale, cfg.edge_factor, cfg.seed);

    AdjacencyMatrix<std::int64_t> graph;
    graph.mat = sparse_build(generated, ring.add);
    graph.out_labels = LabelMap::numeric(graph.mat.nrows());
    graph.in_labels = graph.out_labels;

    BenchReport report;
    report.config = cfg;
    report.vertices = graph.mat.nrows();
    report.edges = graph.mat.nnz();
    report.sources = std::min<Index>(64, graph.mat.nrows());

    std::vector<std::string> sources;
    sources.reserve(std::size_t(report.sources));
    for (Index s = 0; s < report.sources; ++s) {
        sources.push_back(std::to_string(s));
    }

    const int baseline = [&] {
        for (const int p : cfg.threads) {
            if (p == 1) {
                return 1;
            }
        }
        return cfg.threads.front();
    }();

    for (int trial = 0; trial < cfg.trials; ++trial) {
        double baseline_seconds = 0.0;
        std::vector<BenchRow> trial_rows;
        for (const int workers : cfg.threads) {
            const auto begin = std::chrono::steady_clock::now();
            const SparseMatrix<std::int64_t> dist = multi_source_bfs(graph, sources, workers);
            const auto end = std::chrono::steady_clock::now();
            BenchRow row;
            row.threads = workers;
            row.trial = trial;
            row.seconds = std::chrono::duration<double>(end - begin).count();
            row.edges_per_second =
                double(report.edges) * double(report.sources) / std::max(row.seconds, 1e-12);
            row.checksum = matrix_checksum(dist);
            if (workers == baseline && baseline_seconds == 0.0) {
                baseline_seconds = row.seconds;
            }
            trial_rows.push_back(row);
        }
        for (BenchRow& row : trial_rows) {
            row.speedup = baseline_seconds / std::max(row.seconds, 1e-12);
            row.efficiency = row.speedup / double(row.threads);
            detail::require(row.checksum == trial_rows.front().checksum,
                            "bench: checksum diverged at ", row.threads,
                            " workers; the determinism contract is broken");
            report.rows.push_back(row);
        }
    }
    return report;
}

inline std::string bench_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "scale,edge_factor,P,trial,seconds,speedup,efficiency,checksum\n";
    out << std::setprecision(9);
    for (const BenchRow& row : report.rows) {
        out << report.config.scale << ',' << report.config.edge_factor << ',' << row.threads
            << ',' << row.trial << ',' << row.seconds << ',' << row.speedup << ','
            << row.efficiency << ',' << std::hex << std::setw(16) << std::setfill('0')
            << row.checksum << std::dec << std::setfill(' ') << '\n';
    }
    return out.str();
}

inline void write_bench_csv(const BenchReport& report, const std::string& path) {
    std::ofstream out(path);
    detail::require(out.good(), "cannot write '", path, "'");
    out << bench_csv(report);
    detail::require(out.good(), "write to '", path, "' failed");
}

} // namespace grblite
