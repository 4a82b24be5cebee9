#pragma once

#include <cstdint>
#include <random>

#include "grblite/error.hpp"
#include "grblite/matrix.hpp"

namespace grblite {

/// Desk-scale memory cap for the generator.
inline constexpr int kronecker_max_scale = 26;

/// Recursive stochastic edge placement over quadrant probabilities
/// (0.57, 0.19, 0.19, 0.05): 2^scale vertices and exactly
/// 2^scale * edge_factor weighted edge triples, weights uniform in [1, 255].
/// Output is a pure function of (scale, edge_factor, seed); duplicates and
/// self-loops are kept here and combined at build time.
inline Triples<std::int64_t> kronecker_generate(int scale, std::int64_t edge_factor,
                                                std::uint64_t seed) {
    detail::require(scale >= 1, "kronecker_generate: scale must be >= 1, got ", scale);
    detail::require(scale <= kronecker_max_scale, "kronecker_generate: scale ", scale,
                    " exceeds the cap of ", kronecker_max_scale);
    detail::require(edge_factor >= 1, "kronecker_generate: edge_factor must be >= 1, got ",
                    edge_factor);

    constexpr double quad_a = 0.57;
    constexpr double quad_b = 0.19;
    constexpr double quad_c = 0.19;

    const Index n = Index(1) << scale;
    const Index edges = n * edge_factor;
    std::mt19937_64 rng(seed);
    // Unit doubles straight from the raw 64-bit stream; keeps the output
    // identical across standard libraries.
    const auto next_unit = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };

    Triples<std::int64_t> t;
    t.nrows = n;
    t.ncols = n;
    t.rows.reserve(std::size_t(edges));
    t.cols.reserve(std::size_t(edges));
    t.vals.reserve(std::size_t(edges));
    for (Index e = 0; e < edges; ++e) {
        Index i = 0;
        Index j = 0;
        for (int bit = 0; bit < scale; ++bit) {
            const double u = next_unit();
            i <<= 1;
            j <<= 1;
            if (u < quad_a) {
                // top-left quadrant
            } else if (u < quad_a + quad_b) {
                j |= 1;
            } else if (u < quad_a + quad_b + quad_c) {
                i |= 1;
            } else {
                i |= 1;
                j |= 1;
            }
        }
        const std::int64_t weight = std::int64_t(rng() % 255) + 1;
        t.push(i, j, weight);
    }
    return t;
}

} // namespace grblite
