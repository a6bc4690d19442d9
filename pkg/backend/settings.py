import logging
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class WorkbenchSettings(BaseModel):
    seed: int = Field(default=7, description="Default seed for sampled quantifiers")
    samples: int = Field(default=1000, gt=0, description="Samples per sampled axiom")
    morphism_samples: int = Field(default=500, gt=0, description="Samples per morphism family")
    depth: int = Field(default=20, gt=0, description="Bounded witness search depth")
    log_level: str = Field(default="INFO")


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def get_settings(
    seed: Optional[int] = None,
    samples: Optional[int] = None,
    depth: Optional[int] = None,
) -> WorkbenchSettings:
    """Environment defaults, overridden by any explicit argument."""
    base = WorkbenchSettings(
        seed=_int_env("WORKBENCH_SEED", 7),
        samples=_int_env("WORKBENCH_SAMPLES", 1000),
        morphism_samples=_int_env("WORKBENCH_MORPHISM_SAMPLES", 500),
        depth=_int_env("WORKBENCH_DEPTH", 20),
        log_level=os.getenv("WORKBENCH_LOG_LEVEL", "INFO"),
    )
    overrides = {k: v for k, v in {"seed": seed, "samples": samples, "depth": depth}.items() if v is not None}
    return base.model_copy(update=overrides)


def configure_logging(level: Optional[str] = None) -> None:
    level_name = (level or get_settings().log_level).upper()
    root = logging.getLogger()
    if not root.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)
    root.setLevel(getattr(logging, level_name, logging.INFO))
