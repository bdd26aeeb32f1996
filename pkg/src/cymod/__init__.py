"""Twisted self fibre products of the level-6 modular elliptic surface.

Counts their points over prime fields, extracts Frobenius traces on
middle cohomology, and verifies agreement with weight-4 newform
coefficients through the finite covering-set criterion for 2-adic
Galois representations.
"""

from .errors import (
    ArgumentError,
    BadPrimeError,
    CymodError,
    DegenerateCubicError,
    DegenerateReductionError,
    IncompleteFixtureError,
    InsufficientLimitError,
    UnsupportedCharacteristicError,
)
from .ffarith import Cubic, FpElem, cubic_irreducible, inverse, is_prime, legendre
from .fixtures import TWIST_LEVELS, NewformFixture, fixture
from .livne import (
    ObstructionCertificate,
    VerificationReport,
    find_covering,
    is_covering,
    parity_certificate,
    ramification_set,
    verify_modularity,
    xi_vector,
)
from .qseries import QSeries, eta_block, euler_factor, level6_form
from .surface import (
    INF,
    FibreClass,
    classify_fibre,
    count_plane_fibre,
    count_resolved_fibre,
)
from .threefold import (
    NodeCensus,
    TraceRecord,
    TwistAut,
    TWISTS,
    bad_primes,
    cusp_contribution,
    get_twist,
    lefschetz_trace,
    node_census,
    total_count,
    trace_table,
    twist_apply,
    weil_bound,
)

__version__ = "0.1.0"
