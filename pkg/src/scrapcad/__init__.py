"""Material-aware scrap-wood assembly design engine.

Keeps a virtual inventory of scrap boards, cuts them into hexahedral
parts, arranges the parts in 3D with collision resolution, and maintains
a kerf-aware 2D cut plan per scrap with validity feedback, deterministic
replay, and fabrication exports.
"""

from .model import (Document, GrainSpec, Part, Placement, Pose, Scrap,
                    SceneMesh, Settings, Violation)
from .session import Session, replay, state_digest

__all__ = [
    "Document", "GrainSpec", "Part", "Placement", "Pose", "Scrap",
    "SceneMesh", "Settings", "Violation", "Session", "replay",
    "state_digest",
]

__version__ = "0.1.0"
