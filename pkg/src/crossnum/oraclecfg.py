"""Size/effort limits for the brute-force oracle."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class OracleConfig:
    max_crossings: int = 8   # iterative-deepening ceiling
    max_edges: int = 18
    max_vertices: int = 9
    time_cap_s: float = 0.0  # 0 disables the wall-clock cap

    def __post_init__(self):
        if self.max_crossings < 0 or self.max_edges <= 0 or self.max_vertices <= 0:
            raise ValueError("oracle ceilings must be positive")
