"""Run configuration shared by the command line and the scripts."""
from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_ORDER = 200
DEFAULT_PAD = 8


@dataclass(frozen=True)
class RunConfig:
    """How a catalog run is carried out.

    ``order`` overrides every entry's own order when set.  ``pad`` extra
    coefficients are computed so that q^-k factors cannot eat into the
    compared range.
    """

    order: int | None = None
    default_order: int = DEFAULT_ORDER
    pad: int = DEFAULT_PAD
    jobs: int = 1

    @classmethod
    def from_env(cls, **overrides) -> RunConfig:
        env = os.environ.get("QVERIFY_DEFAULT_ORDER")
        base = cls(default_order=int(env)) if env else cls()
        return cls(**{**base.__dict__, **{k: v for k, v in overrides.items() if v is not None}})

    def order_for(self, entry_order: int | None) -> int:
        if self.order is not None:
            return self.order
        return entry_order if entry_order is not None else self.default_order
