"""zetalab: zeta functions over finite fields, Dirichlet L-functions and the primes."""

__version__ = "0.1.0"

from .errors import DomainError, ParseError, ZetalabError  # noqa: E402

__all__ = ["DomainError", "ParseError", "ZetalabError", "__version__"]
