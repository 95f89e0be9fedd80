from __future__ import annotations

from enum import Enum
from typing import Literal

from pydantic import BaseModel, Field, model_validator


class EigenBackend(str, Enum):
    AUTO = "auto"
    JACOBI = "jacobi"
    LAPACK = "lapack"


class BudgetConfig(BaseModel):
    # 2047 * 2046 / 2 unordered pairs: the largest brute build allowed by default (n = 8)
    brute_max_pair_tests: int = Field(default=2_100_000, ge=1)
    dense_eig_max_order: int = Field(default=2500, ge=1)
    charpoly_max_order: int = Field(default=200, ge=1, le=4096)
    domination_max_vertices: int = Field(default=40, ge=1, le=64)
    max_modulus: int = Field(default=2**15, ge=2, le=2**15)


class SpectralConfig(BaseModel):
    backend: EigenBackend = EigenBackend.AUTO
    jacobi_tol: float = Field(default=1e-10, gt=0)
    jacobi_max_sweeps: int = Field(default=100, ge=1)
    jacobi_max_order: int = Field(default=200, ge=1)
    power_tol: float = Field(default=1e-12, gt=0)
    power_max_iter: int = Field(default=10_000, ge=1)
    rtol: float = Field(default=1e-6, gt=0)
    atol: float = Field(default=1e-9, gt=0)
    multiplicity_atol: float = Field(default=1e-6, gt=0)

    @model_validator(mode="after")
    def check_tolerances(self) -> SpectralConfig:
        if self.jacobi_tol >= self.rtol:
            raise ValueError(
                f"jacobi_tol ({self.jacobi_tol}) must be tighter than rtol ({self.rtol})"
            )
        return self


class TablesConfig(BaseModel):
    decimals: int = Field(default=4, ge=0, le=12)


class LoggingConfig(BaseModel):
    level: str = "WARNING"
    file: str | None = None
    format: Literal["console", "json"] = "console"


class ZdqConfig(BaseModel):
    budget: BudgetConfig = BudgetConfig()
    spectral: SpectralConfig = SpectralConfig()
    tables: TablesConfig = TablesConfig()
    logging: LoggingConfig = LoggingConfig()
