"""Two-term tilting complexes, torsion pairs and Brenner-Butler functors over quiver algebras."""
from .algfile import AlgFile, AlgParseError, emit_alg, parse_alg, read_alg
from .complexes import (
    TwoTermComplex,
    a_dual,
    add_equal,
    cohomology,
    endomorphism_algebra,
    hom_homotopy,
    nakayama_complex,
)
from .linalg import GF, QQ, Matrix, nullspace_basis, rref, solve
from .modules import (
    Representation,
    ext1,
    ext2,
    hom_space,
    injective,
    is_isomorphic,
    min_inj_presentation,
    min_proj_presentation,
    projective,
    simple,
    tensor_over_A,
    tor1,
    trace,
)
from .oracle import ModuleInventory, OracleError, enumerate_modules, search_intersection
from .presentation import present_as_quiver_algebra, present_endomorphism_algebra
from .quiver import Quiver, build_algebra
from .tilting import (
    BBFunctors,
    BBModule,
    TiltingVerdict,
    TorsionInput,
    construct_from_torsion,
    is_tilting,
    round_trips,
    search_tilting,
)
from .torsion import ClassMembership, TorsionPairReport, in_X, in_Y, is_splitting, verify_torsion_pair

__version__ = "0.1.0"
