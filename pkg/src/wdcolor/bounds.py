"""Weak-diameter bound recurrences for centered-set combination and tree gluing.

All values are exact Python integers; they grow exponentially in the
adhesion parameters, so no fixed-width arithmetic is used anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BoundParams:
    """Parameters of the gluing bound; N is the base-class bound, N_Fplus its one-apex version."""

    theta: int
    ell: int
    N: int
    N_Fplus: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if min(self.theta, self.N, self.N_Fplus) < 0:
            raise ValueError("bound parameters must be nonnegative")


def bound_combine(k: int, r: int, ell: int, N: int) -> int:
    """Diameter bound after adding a (k, r)-centered set to an N-bounded coloring.

    Evaluates f(0) = N, f(a) = 2r + 2ell + 2 f(a - 1) by unrolling.
    """
    if k < 0 or r < 0:
        raise ValueError("k and r must be nonnegative")
    if ell < 1 or N < 1:
        raise ValueError("ell and N must be positive")
    value = N
    step = 2 * r + 2 * ell
    for _ in range(k):
        value = step + 2 * value
    return value


def bound_combine_closed(k: int, r: int, ell: int, N: int) -> int:
    return 2**k * N + (2 * r + 2 * ell) * (2**k - 1)


def glue_f1(theta: int, ell: int, x: int) -> int:
    return bound_combine(theta, 3 * ell, ell, x)


def glue_n_theta(theta: int, ell: int) -> int:
    return max(bound_combine(theta, 0, ell, 1), theta + 1)


def glue_n_theta_prime(theta: int, ell: int) -> int:
    return bound_combine(theta, 3 * ell, ell, 1)


def tree_extension_table(eta: int, theta: int, ell: int, N: int, N_Fplus: int) -> list[int]:
    """[f*(0), ..., f*(eta)] for the gluing recurrence."""
    if not 0 <= eta <= theta:
        raise ValueError(f"need 0 <= eta <= theta, got eta={eta}, theta={theta}")
    if ell < 1 or N < 1:
        raise ValueError("ell and N must be positive")
    base = N_Fplus + glue_n_theta_prime(theta, ell) + glue_n_theta(theta, ell) + glue_f1(theta, ell, N)
    table = [base]
    for _ in range(eta):
        prev = table[-1]
        table.append(max((14 * theta + 4) * ell + 7 * theta * ell * ell * glue_f1(theta, ell, prev), base))
    return table


def bound_tree_extension(eta: int, theta: int, ell: int, N: int, N_Fplus: int) -> int:
    return tree_extension_table(eta, theta, ell, N, N_Fplus)[-1]
