#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grblite/kernels.hpp"
#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"

namespace grblite {

struct LawResult {
    std::string law;
    int trials = 0;
    int failures = 0;
    std::string counterexample; // first failing instance, if any

    bool passed() const { return failures == 0; }
};

struct LawSuiteConfig {
    int trials = 200;
    Index max_dim = 12;
    double max_density = 0.5;
    std::uint64_t seed = 0x6d617472697870UL;
};

/// Random matrix with independently stored cells; used by the law suite and
/// available to any randomized harness.
template <class T>
SparseMatrix<T> random_matrix(std::mt19937_64& rng, Index nrows, Index ncols, double density,
                              ScalarSampler<T> sample = default_sample<T>) {
    Triples<T> t;
    t.nrows = nrows;
    t.ncols = ncols;
    for (Index i = 0; i < nrows; ++i) {
        for (Index j = 0; j < ncols; ++j) {
            const double u = double(rng() >> 11) * 0x1.0p-53;
            if (u < density) {
                t.push(i, j, sample(rng));
            }
        }
    }
    return sparse_build(t, [](T a, T) { return a; });
}

/// Runs the matrix-level composability laws over random instances: closure,
/// element-wise commutativity/associativity/distributivity, and the matrix
/// product's distributivity and associativity. Instances are compared with
/// matrix_equal against the semiring's additive identity, so the float64
/// domain is checked at relative tolerance 1e-12 and the exact domains
/// exactly.
template <class T>
std::vector<LawResult> run_matrix_laws(const Semiring<T>& s, LawSuiteConfig cfg = {}) {
    detail::require(cfg.trials >= 1, "run_matrix_laws: trials must be >= 1");
    detail::require(cfg.max_dim >= 1, "run_matrix_laws: max_dim must be >= 1");
    detail::require(s.flags.add_identity_annihilates_mult,
                    "run_matrix_laws: semiring '", s.name,
                    "' lacks add_identity_annihilates_mult, required by the "
                    "element-wise multiply laws");

    enum LawIndex {
        kClosure = 0,
        kAddCommut,
        kMultCommut,
        kAddAssoc,
        kMultAssoc,
        kEwiseDist,
        kMatmulDist,
        kMatmulAssoc,
        kLawCount,
    };
    std::vector<LawResult> results = {
        {"closure", 0, 0, {}},
        {"additive_commutativity", 0, 0, {}},
        {"multiplicative_commutativity", 0, 0, {}},
        {"additive_associativity", 0, 0, {}},
        {"multiplicative_associativity", 0, 0, {}},
        {"elementwise_distributivity", 0, 0, {}},
        {"matmul_distributivity", 0, 0, {}},
        {"matmul_associativity", 0, 0, {}},
    };

    std::mt19937_64 rng(cfg.seed);
    const T zero = s.add_identity;

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const Index n = Index(rng() % std::uint64_t(cfg.max_dim)) + 1;
        const double density = double(rng() >> 11) * 0x1.0p-53 * cfg.max_density;
        const SparseMatrix<T> a = random_matrix<T>(rng, n, n, density);
        const SparseMatrix<T> b = random_matrix<T>(rng, n, n, density);
        const SparseMatrix<T> c = random_matrix<T>(rng, n, n, density);

        auto record = [&](LawIndex law, bool ok) {
            LawResult& r = results[std::size_t(law)];
            ++r.trials;
            if (!ok) {
                ++r.failures;
                if (r.counterexample.empty()) {
                    r.counterexample =
                        "trial " + std::to_string(trial) + ", dims " + std::to_string(n) +
                        "x" + std::to_string(n);
                }
            }
        };

        bool closed = true;
        try {
            validate(ewise_add(a, b, s));
            validate(ewise_mult(a, b, s));
            validate(spgemm(a, b, s));
        } catch (const Error&) {
            closed = false;
        }
        record(kClosure, closed);

        record(kAddCommut, matrix_equal(ewise_add(a, b, s), ewise_add(b, a, s), zero));
        record(kMultCommut, matrix_equal(ewise_mult(a, b, s), ewise_mult(b, a, s), zero));
        record(kAddAssoc, matrix_equal(ewise_add(ewise_add(a, b, s), c, s),
                                       ewise_add(a, ewise_add(b, c, s), s), zero));
        record(kMultAssoc, matrix_equal(ewise_mult(ewise_mult(a, b, s), c, s),
                                        ewise_mult(a, ewise_mult(b, c, s), s), zero));
        record(kEwiseDist, matrix_equal(ewise_mult(a, ewise_add(b, c, s), s),
                                        ewise_add(ewise_mult(a, b, s), ewise_mult(a, c, s), s),
                                        zero));
        record(kMatmulDist, matrix_equal(spgemm(a, ewise_add(b, c, s), s),
                                         ewise_add(spgemm(a, b, s), spgemm(a, c, s), s),
                                         zero));
        record(kMatmulAssoc, matrix_equal(spgemm(spgemm(a, b, s), c, s),
                                          spgemm(a, spgemm(b, c, s), s), zero));
    }
    return results;
}

} // namespace grblite
