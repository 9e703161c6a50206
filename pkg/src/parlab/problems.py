"""Output functions for the two-party problems studied here.

Every problem maps a pair of private values ``(x1, x2)`` to an output
label.  Labels are plain hashable Python values:

* millionaires: ``1`` or ``2`` (the richer party, ties go to party 1)
* 2spa: ``(winner, price)`` where price is the losing bid
* pg: ``"Build"`` / ``"DoNotBuild"``
* tpg: ``"DoNotBuild"`` or ``("Build", t1, t2)``
* appxa: an integer
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

BUILD = "Build"
DO_NOT_BUILD = "DoNotBuild"

PROBLEM_ALIASES = {
    "millionaires": "millionaires",
    "mp": "millionaires",
    "2mp": "millionaires",
    "2spa": "2spa",
    "spa": "2spa",
    "pg": "public_good",
    "public_good": "public_good",
    "tpg": "truthful_public_good",
    "truthful_public_good": "truthful_public_good",
    "appxa": "appendix_a",
    "appendix_a": "appendix_a",
}


class ProblemError(ValueError):
    pass


def _check_range(k: int, *values: int) -> None:
    top = 1 << k
    for v in values:
        if not 0 <= v < top:
            raise ProblemError(f"input {v} outside [0, {top - 1}] for k={k}")


def millionaires_output(x1: int, x2: int, k: int) -> int:
    _check_range(k, x1, x2)
    return 1 if x1 >= x2 else 2


def second_price_output(x1: int, x2: int, k: int) -> tuple[int, int]:
    _check_range(k, x1, x2)
    if x1 >= x2:
        return (1, x2)
    return (2, x1)


def public_good_output(x1: int, x2: int, k: int) -> str:
    _check_range(k, x1, x2)
    return BUILD if x1 + x2 >= (1 << k) - 1 else DO_NOT_BUILD


def truthful_public_good_output(x1: int, x2: int, k: int, c: int):
    """Build decision plus the transfers that make truthful reporting optimal.

    ``t_i`` is ``c - x_other`` when the other value alone falls short of the
    cost, and 0 otherwise (even if the other transfer is positive).
    """
    _check_range(k, x1, x2)
    if not 0 <= c <= (1 << k) - 1:
        raise ProblemError(f"cost c={c} outside [0, {(1 << k) - 1}]")
    if x1 + x2 < c:
        return DO_NOT_BUILD
    t1 = c - x2 if x2 < c else 0
    t2 = c - x1 if x1 < c else 0
    return (BUILD, t1, t2)


def appendix_a_output(x: int, y: int, n: int) -> int:
    # y is accepted for signature uniformity; the output ignores it.
    if n < 2:
        raise ProblemError("appendix_a needs n >= 2")
    _check_range(n, x, y)
    half = 1 << (n - 1)
    return x // 2 if x < half else 1 << (n - 2)


def pg_to_mp_map(x1: int, x2: int, k: int) -> tuple[int, int]:
    """Column reflection turning public-good instances into millionaires ones."""
    return (x1, (1 << k) - 1 - x2)


@dataclass(frozen=True)
class ProblemSpec:
    """A problem variant plus its extra parameter (``c`` for tpg, ``n`` for appxa)."""

    variant: str
    c: Optional[int] = None
    n: Optional[int] = None

    def __post_init__(self):
        if self.variant not in set(PROBLEM_ALIASES.values()):
            raise ProblemError(f"unknown problem {self.variant!r}")
        if self.variant == "truthful_public_good" and self.c is None:
            raise ProblemError("truthful_public_good needs c")
        if self.variant == "appendix_a" and self.n is not None and self.n < 2:
            raise ProblemError("appendix_a needs n >= 2")

    @classmethod
    def parse(cls, text: str) -> "ProblemSpec":
        """Parse ``millionaires|mp|2spa|pg|tpg:c=<int>|appxa:n=<int>``."""
        name, _, rest = text.strip().partition(":")
        variant = PROBLEM_ALIASES.get(name.lower())
        if variant is None:
            raise ProblemError(f"unknown problem {name!r}")
        params = {}
        if rest:
            for item in rest.split(","):
                key, eq, val = item.partition("=")
                if not eq:
                    raise ProblemError(f"bad problem parameter {item!r}")
                try:
                    params[key.strip()] = int(val)
                except ValueError:
                    raise ProblemError(f"bad integer in {item!r}") from None
        unknown = set(params) - {"c", "n"}
        if unknown:
            raise ProblemError(f"unknown problem parameters {sorted(unknown)}")
        return cls(variant, c=params.get("c"), n=params.get("n"))

    def __str__(self) -> str:
        short = {
            "millionaires": "millionaires",
            "2spa": "2spa",
            "public_good": "pg",
            "truthful_public_good": "tpg",
            "appendix_a": "appxa",
        }[self.variant]
        if self.variant == "truthful_public_good":
            return f"{short}:c={self.c}"
        if self.variant == "appendix_a" and self.n is not None:
            return f"{short}:n={self.n}"
        return short

    def output_function(self, k: int) -> Callable[[int, int], object]:
        """The output function at bit-width ``k`` as a two-argument callable."""
        v = self.variant
        if v == "millionaires":
            return lambda x1, x2: millionaires_output(x1, x2, k)
        if v == "2spa":
            return lambda x1, x2: second_price_output(x1, x2, k)
        if v == "public_good":
            return lambda x1, x2: public_good_output(x1, x2, k)
        if v == "truthful_public_good":
            c = self.c
            if not 0 <= c <= (1 << k) - 1:
                raise ProblemError(f"cost c={c} outside [0, {(1 << k) - 1}]")
            return lambda x1, x2: truthful_public_good_output(x1, x2, k, c)
        n = self.n if self.n is not None else k
        if n != k:
            raise ProblemError(f"appendix_a with n={n} needs k={n}, got k={k}")
        return lambda x, y: appendix_a_output(x, y, n)
