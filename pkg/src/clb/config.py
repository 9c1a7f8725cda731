from __future__ import annotations
from dataclasses import dataclass
from pydantic import BaseModel, Field
import os


@dataclass(frozen=True)
class EnumerationBudget:
    max_dim: int = 3
    max_q: int = 5
    max_dim_hermitian: int = 2
    max_q_hermitian: int = 9       # q^2 for the hermitian field
    max_points: int = 50_000

    @staticmethod
    def from_env() -> "EnumerationBudget":
        """
        从环境变量读取穷举上限（只影响能跑多大的例子，不影响结果本身）。
        """
        def _i(name: str, default: int) -> int:
            try:
                return int(float(os.getenv(name, str(default))))
            except Exception:
                return int(default)

        return EnumerationBudget(
            max_dim=_i("CLB_MAX_DIM", 3),
            max_q=_i("CLB_MAX_Q", 5),
            max_dim_hermitian=_i("CLB_MAX_DIM_HERMITIAN", 2),
            max_q_hermitian=_i("CLB_MAX_Q_HERMITIAN", 9),
            max_points=_i("CLB_MAX_POINTS", 50_000),
        )


class Settings(BaseModel):
    # Core
    log_level: str = Field(default_factory=lambda: os.getenv("CLB_LOG_LEVEL", "INFO"))
    report_dir: str = Field(default_factory=lambda: os.getenv("CLB_REPORT_DIR", "./reports"))
    fixtures_dir: str = Field(default_factory=lambda: os.getenv("CLB_FIXTURES_DIR", "./fixtures"))
    seed: int = Field(default_factory=lambda: int(os.getenv("CLB_SEED", "0")))

    # Console
    rich_summary: bool = Field(default_factory=lambda: os.getenv("CLB_RICH", "true").lower() == "true")

    # Enumeration budget (orbit lab)
    limits: EnumerationBudget = Field(default_factory=EnumerationBudget.from_env)

    def budget(self) -> EnumerationBudget:
        return self.limits

def load_settings() -> Settings:
    return Settings()
