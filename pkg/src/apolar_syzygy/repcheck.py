"""Dimension and torus-weight checks of the hook-shape decompositions.

Only characters are compared: a weight-by-weight match cannot tell an
irreducible module from another module with the same character.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .polyring import Multidegree, multidegrees_of_degree

COMPONENTS = {"generators": 1, "relations": 2, "secondSyzygies": 3}
CHARACTER_NOTE = "character-level check: weight multiplicities only, irreducibility not tested"


@dataclass(frozen=True)
class HookShape:
    """The partition ``(d, 1^(c-d))``: ``c`` cells, first row of length ``d``."""

    c: int
    d: int

    def __post_init__(self):
        if not 1 <= self.d <= self.c:
            raise ValueError("hook shape needs 1 <= d <= c")

    @property
    def partition(self) -> tuple:
        return (self.d,) + (1,) * (self.c - self.d)

    @property
    def height(self) -> int:
        return self.c - self.d + 1

    def __str__(self):
        return "(" + ",".join(map(str, self.partition)) + ")"


def hook_dim(shape: HookShape, n: int) -> int:
    """``binom(c-1, d-1) * binom(n+d-1, c)``; zero when the leg does not fit."""
    if shape.height > n:
        return 0
    return comb(shape.c - 1, shape.d - 1) * comb(n + shape.d - 1, shape.c)


def narayana(r: int, i: int) -> int:
    if not 1 <= i <= r:
        raise ValueError("need 1 <= i <= r")
    v = Fraction(comb(r, i) * comb(r, i - 1), r)
    assert v.denominator == 1
    return int(v)


def strand_shapes(r: int) -> list[tuple[HookShape, HookShape]]:
    """Summands ``V_(r-i+2, 1^(i-1)) (x) W_(i+1, 1^(r-i))``, i = 1..r."""
    return [(HookShape(r + 1, r - i + 2), HookShape(r + 1, i + 1)) for i in range(1, r + 1)]


def conjectured_linear_strand(r: int, n: int) -> int:
    """``r * sum_i N_{r,i} binom(n+i, r+1) binom(n+r-i+1, r+1)``."""
    if r < 1:
        raise ValueError("r must be positive")
    return r * sum(narayana(r, i) * comb(n + i, r + 1) * comb(n + r - i + 1, r + 1) for i in range(1, r + 1))


def conjectured_linear_strand_hooks(r: int, n: int) -> int:
    """Same number as a sum of products of hook dimensions."""
    return sum(hook_dim(a, n) * hook_dim(b, n) for a, b in strand_shapes(r))


def weight_multiplicity_hook(shape: HookShape, w, n: int | None = None) -> int:
    """Semistandard tableaux of hook shape with content ``w``, by enumeration.

    A hook tableau is a corner entry ``a``, a strictly increasing leg of
    ``c-d`` entries below it (all ``> a``) and a weakly increasing arm of
    ``d-1`` entries to its right (all ``>= a``).
    """
    w = tuple(w)
    if n is not None and len(w) != n:
        raise ValueError("weight length must equal n")
    if sum(w) != shape.c or any(x < 0 for x in w):
        return 0
    count = 0
    letters = [k for k, x in enumerate(w) if x]
    for a in letters:
        for leg in itertools.combinations([k for k in letters if k > a], shape.c - shape.d):
            rest = list(w)
            rest[a] -= 1
            ok = True
            for k in leg:
                rest[k] -= 1
                ok = ok and rest[k] >= 0
            # the arm takes everything left; it must avoid letters below the corner
            if ok and all(rest[k] == 0 for k in range(a)):
                count += 1
    return count


def weight_vectors(n: int, c: int):
    for combo in itertools.combinations_with_replacement(range(n), c):
        w = [0] * n
        for k in combo:
            w[k] += 1
        yield tuple(w)


def predicted_weight_dim(component: str, mu: Multidegree) -> int:
    r = COMPONENTS[component]
    return sum(weight_multiplicity_hook(a, mu.rows) * weight_multiplicity_hook(b, mu.cols)
               for a, b in strand_shapes(r))


@dataclass
class WeightReport:
    component: str
    n: int
    rows: list = field(default_factory=list)  # (mu, predicted, computed)
    missing: list = field(default_factory=list)

    @property
    def partial(self) -> bool:
        return bool(self.missing)

    @property
    def residuals(self) -> dict:
        return {mu: comp - pred for mu, pred, comp in self.rows}

    @property
    def max_abs_residual(self) -> int:
        return max((abs(v) for v in self.residuals.values()), default=0)

    @property
    def total_predicted(self) -> int:
        return sum(p for _, p, _ in self.rows)

    @property
    def total_computed(self) -> int:
        return sum(c for _, _, c in self.rows)

    @property
    def ok(self) -> bool:
        return not self.partial and self.max_abs_residual == 0 and self.total_predicted == self.total_computed

    def to_dict(self) -> dict:
        return {
            "component": self.component,
            "n": self.n,
            "note": CHARACTER_NOTE,
            "rows": [{"rows": list(mu.rows), "cols": list(mu.cols), "predicted": p, "computed": c,
                      "residual": c - p} for mu, p, c in self.rows],
            "missing": [{"rows": list(mu.rows), "cols": list(mu.cols)} for mu in self.missing],
            "total_predicted": self.total_predicted,
            "total_computed": self.total_computed,
            "verdict": "consistent" if self.ok else ("partial" if self.partial else "inconsistent"),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


def weight_refined_check(component: str, n: int, computed: dict) -> WeightReport:
    """Compare ``computed[mu]`` with the predicted weight multiplicity at every ``mu``."""
    if component not in COMPONENTS:
        raise ValueError(f"component must be one of {sorted(COMPONENTS)}")
    degree = COMPONENTS[component] + 1
    rep = WeightReport(component, n)
    for mu in multidegrees_of_degree(n, degree):
        pred = predicted_weight_dim(component, mu)
        if mu not in computed:
            if pred:
                rep.missing.append(mu)
            continue
        rep.rows.append((mu, pred, computed[mu]))
    return rep
