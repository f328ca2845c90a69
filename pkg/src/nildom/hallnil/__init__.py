"""Hall basic commutators and collection in relatively free nilpotent groups."""

from .basis import (
    FREE,
    METABELIAN,
    VARIETIES,
    BasicCommutator,
    HallBasis,
    hall_basis,
    metabelian_count,
    necklace_count,
)
from .collect import STRATEGIES, NcElement, collect, collect_in, collector
from .identities import (
    CATALOGUE,
    DIVISIBILITY,
    FAMILIES,
    DivisibilityReport,
    FitError,
    FitResult,
    IdentityReport,
    UnknownIdentity,
    binomial_fit,
    divisibility_check,
    verify_identity,
)
from .magnus import CollectionError
