"""Classification of elementary abelian group actions on compact oriented
surfaces: generating-vector class counts, uniqueness and maximality
decisions, desk-scale verification over arbitrary small groups, and the
hyper-Fermat curve construction with its branch-point moduli.
"""

from .errors import CapExceededError, EagError, OutOfDomainError, PreconditionError
from .surfaces import EAActionSpec, Signature

__all__ = [
    "CapExceededError",
    "EagError",
    "OutOfDomainError",
    "PreconditionError",
    "EAActionSpec",
    "Signature",
]

__version__ = "0.1.0"
