"""Closed-form Betti numbers and the Hilbert-function identity."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

from ..apolar import PolyKind
from .table import GradedBettiTable


class IncompleteTableError(ValueError):
    pass


@dataclass(frozen=True)
class ClosedForms:
    n: int
    beta_1_2: int
    beta_2_3: int
    det_beta_3_4: int
    perm_beta_2_4: int
    perm_beta_3_4: int

    def to_dict(self) -> dict:
        return asdict(self)

    def entries(self, kind: PolyKind) -> dict:
        """``{(i, j): beta}`` predicted for the given kind."""
        kind = PolyKind.parse(kind)
        out = {(1, 2): self.beta_1_2, (2, 3): self.beta_2_3}
        if kind is PolyKind.DET:
            out[(3, 4)] = self.det_beta_3_4
        else:
            out[(3, 4)] = self.perm_beta_3_4
            out[(2, 4)] = self.perm_beta_2_4
        return out


def betti_closed_forms(n: int) -> ClosedForms:
    if n < 1:
        raise ValueError("n must be positive")
    b12 = comb(n + 1, 2) ** 2
    b23 = 4 * comb(n + 1, 3) * comb(n + 2, 3)
    q24 = 2 * comb(n, 2) * comb(n, 4)
    d34 = 6 * comb(n + 1, 4) * comb(n + 3, 4) + 9 * comb(n + 2, 4) ** 2
    return ClosedForms(n, b12, b23, d34, q24, d34 + q24)


def linear_relations_polynomial(n: int) -> int:
    """``n^2 (n+1)^2 (n-1) (n+2) / 9``, the total dimension of degree-3 relations."""
    return n * n * (n + 1) ** 2 * (n - 1) * (n + 2) // 9


def hilbert_identity_check(kind, n: int, d: int, table: GradedBettiTable) -> int:
    """``binom(n,d)^2 - sum_{i,j} (-1)^i beta_{i,j} binom(n^2+d-j-1, d-j)``.

    Only entries with ``j <= d`` contribute; every column that can hold such
    an entry must be complete.
    """
    if d < 0:
        raise ValueError("d must be non-negative")
    N = n * n
    missing = [i for i in range(min(d, N) + 1) if not table.is_complete(i)]
    if missing:
        raise IncompleteTableError(f"columns {missing} are incomplete; they contribute at degree {d}")
    lhs = comb(n, d) ** 2 if d <= n else 0
    acc = 0
    for (i, j), b in table.entries.items():
        if j > d:
            continue
        term = b * comb(N + d - j - 1, d - j)
        acc += -term if i % 2 else term
    return lhs - acc


def table_from_rows(kind, n: int, field: str, rows: dict, complete_columns=None) -> GradedBettiTable:
    """Build a table from ``{r: {i: beta_{i,i+r}}}`` (the display convention)."""
    entries = {}
    for r, cols in rows.items():
        for i, b in cols.items():
            entries[(i, i + r)] = b
    if complete_columns is None:
        complete_columns = set(range(n * n + 1))
    return GradedBettiTable(kind, n, field, entries, set(complete_columns))
