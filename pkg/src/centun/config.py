from dataclasses import dataclass

from .envelope import DEFAULT_TAU_DEGREE
from .repbuild import DEFAULT_SIZE_CAP


@dataclass(frozen=True)
class EngineConfig:
    size_cap: int = DEFAULT_SIZE_CAP
    tau_degree_bound: int = DEFAULT_TAU_DEGREE
    max_exponent_height: int = 12
    allow_g2_sextic: bool = False

    def __post_init__(self):
        if self.size_cap < 1:
            raise ValueError("size_cap must be >= 1")
