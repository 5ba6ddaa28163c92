"""contentlab: exact content ideals, certified ideal membership and property checks."""

__version__ = "0.1.0"

from .content import (  # noqa: E402
    LocalizedIdeal,
    PolyOverRing,
    SeriesDescriptor,
    TowerId,
    compose_content,
    localize_content,
    orc_poly,
    poly_content,
    smallest_fg_cover,
)
from .ideals import (  # noqa: E402
    Ideal,
    MembershipResult,
    ideal,
    ideal_equal,
    ideal_op,
    is_primary,
    is_prime,
    membership,
    primary_decomposition,
    radical_membership,
)
from .propcheck import (  # noqa: E402
    DMReport,
    check_gaussian,
    check_prime_extension,
    check_primary_extension,
    check_weak_content_pair,
    dm_exponent,
    pruefer_gauss_suite,
    semicontent_witness,
    transitivity_suite,
    valuation_verdict,
)
from .verdicts import PropertyVerdict  # noqa: E402
from .runner import RunRecord, execute, replay  # noqa: E402
