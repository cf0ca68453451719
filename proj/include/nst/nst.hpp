#pragma once

// Umbrella header: the full sparse-recovery toolkit.

#include "nst/core/cholesky.hpp"
#include "nst/core/errors.hpp"
#include "nst/core/io.hpp"
#include "nst/core/jacobi.hpp"
#include "nst/core/matrix.hpp"
#include "nst/core/operator.hpp"
#include "nst/core/spectral.hpp"
#include "nst/core/vec.hpp"
#include "nst/sparsity.hpp"

#include "nst/solvers/adaptive.hpp"
#include "nst/solvers/baselines.hpp"
#include "nst/solvers/nst.hpp"
#include "nst/solvers/result.hpp"

#include "nst/analysis/certificate.hpp"
#include "nst/analysis/enumeration.hpp"
#include "nst/analysis/limits.hpp"
#include "nst/analysis/rip.hpp"

#include "nst/probgen/generate.hpp"
#include "nst/probgen/rng.hpp"
#include "nst/probgen/sampling.hpp"

#include "nst/bench/csv.hpp"
#include "nst/bench/experiment.hpp"
#include "nst/bench/json_io.hpp"
#include "nst/bench/runner.hpp"
