"""Run configuration shared by the CLI and the scripts."""
from __future__ import annotations

from dataclasses import dataclass

from .apolar import PolyKind
from .exactalg import Field, parse_field
from .syzygy.koszul import KoszulConfig

FORMATS = ("table", "json", "csv")


@dataclass
class RunConfig:
    kind: str = "det"
    n: int = 2
    field: str = "gf:32003"
    max_step: int | None = None
    max_degree: int | None = None
    memory_budget: int = 400_000  # basis elements per multidegree block
    width: int = 1
    format: str = "table"
    seed: int = 0

    def validate(self) -> "RunConfig":
        PolyKind.parse(self.kind)
        if self.n < 1:
            raise ValueError("n must be positive")
        for name in ("max_step", "max_degree"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"{name} must be positive")
        if self.memory_budget < 1 or self.width < 1:
            raise ValueError("memory budget and width must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        self.field_obj()  # rejects composite moduli
        return self

    @property
    def poly_kind(self) -> PolyKind:
        return PolyKind.parse(self.kind)

    def field_obj(self) -> Field:
        return parse_field(self.field)

    def koszul_config(self) -> KoszulConfig:
        return KoszulConfig(max_step=self.max_step, max_degree=self.max_degree,
                            max_block=self.memory_budget, width=self.width)
