"""Best low-rank matrix approximation in the Chebyshev (entrywise max) norm."""

__version__ = "0.1.0"

from .alternating import (
    AlternatingResult,
    OptimalityReport,
    PositionCertificate,
    alternating_minimize,
    alternating_runs,
    minimize_from_seed,
    verify_local_optimality,
)
from .csvm import read_matrix, write_matrix
from .equidistant import (
    EquidistantSolution,
    equidistant_by_determinants,
    equidistant_by_signs,
)
from .errors import ChebrankError, DegenerateSystem, NonTermination
from .linalg import (
    LuFactorization,
    determinant,
    lu_factor,
    lu_solve,
    max_abs_norm,
    qr_orthonormal,
)
from .oracle import SubsetScore, combinatorial_mu, grid_min, is_chebyshev_system
from .remez import FixedFactorResult, RemezOutcome, fixed_factor_solve, remez_solve
from .seeding import hash64
from .synth import (
    BenchRecord,
    Explicit,
    Identity,
    SizeAggregate,
    SpectrumSpec,
    UniformInterval,
    aggregate,
    random_orthogonal,
    read_bench_csv,
    run_bench,
    synth_matrix,
    write_bench_csv,
)

__all__ = [
    "__version__",
    "AlternatingResult",
    "BenchRecord",
    "ChebrankError",
    "DegenerateSystem",
    "EquidistantSolution",
    "Explicit",
    "FixedFactorResult",
    "Identity",
    "LuFactorization",
    "NonTermination",
    "OptimalityReport",
    "PositionCertificate",
    "RemezOutcome",
    "SizeAggregate",
    "SpectrumSpec",
    "SubsetScore",
    "UniformInterval",
    "aggregate",
    "alternating_minimize",
    "alternating_runs",
    "combinatorial_mu",
    "determinant",
    "equidistant_by_determinants",
    "equidistant_by_signs",
    "fixed_factor_solve",
    "grid_min",
    "hash64",
    "is_chebyshev_system",
    "lu_factor",
    "lu_solve",
    "max_abs_norm",
    "minimize_from_seed",
    "qr_orthonormal",
    "random_orthogonal",
    "read_bench_csv",
    "read_matrix",
    "remez_solve",
    "run_bench",
    "synth_matrix",
    "verify_local_optimality",
    "write_bench_csv",
    "write_matrix",
]
