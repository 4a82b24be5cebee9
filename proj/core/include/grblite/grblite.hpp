#pragma once

// Umbrella header: the semiring algebra, sparse storage, kernels, the law
// suite, graph representations, algorithms, file IO, the power-law generator,
// and the scaling harness.

#include "grblite/algorithms.hpp"
#include "grblite/bench.hpp"
#include "grblite/error.hpp"
#include "grblite/generator.hpp"
#include "grblite/graph.hpp"
#include "grblite/io.hpp"
#include "grblite/kernels.hpp"
#include "grblite/laws.hpp"
#include "grblite/matrix.hpp"
#include "grblite/semiring.hpp"
