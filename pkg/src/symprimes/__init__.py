"""Symmetric prime pairs: library, HTTP service, and CLI client.

Two distinct primes p, q are a symmetric pair when
gcd(p - 1, q - 1) == abs(p - q).  The package computes symmetric primes
and their counting function, reproduces the survey table, analyzes the
symmetric-pair graph (components, cliques, m-symmetric primes), searches
and verifies gcd-difference sets and tuple admissibility, and measures
the arithmetic statistics of p - 1 that drive the counting bound.
"""

__version__ = "0.1.0"

from .errors import (
    InvalidArgumentError,
    OutOfRangeError,
    ResourceError,
    SymprimesError,
)
from .sieve import FactorTable, Factorization, PrimalityTable, Tables, build_tables
from .symmetry import (
    ETA,
    ODD_PRIMES_ONLY,
    TABLE_CONVENTION,
    Convention,
    PartnerCertificate,
    SurveyRow,
    count_symmetric,
    eisenstein_count,
    eta,
    is_symmetric,
    is_symmetric_pair,
    legendre,
    partners,
    tabulate,
)

__all__ = [
    "__version__",
    "SymprimesError",
    "InvalidArgumentError",
    "OutOfRangeError",
    "ResourceError",
    "PrimalityTable",
    "FactorTable",
    "Factorization",
    "Tables",
    "build_tables",
    "ETA",
    "eta",
    "Convention",
    "TABLE_CONVENTION",
    "ODD_PRIMES_ONLY",
    "PartnerCertificate",
    "SurveyRow",
    "is_symmetric_pair",
    "is_symmetric",
    "partners",
    "count_symmetric",
    "tabulate",
    "eisenstein_count",
    "legendre",
]
