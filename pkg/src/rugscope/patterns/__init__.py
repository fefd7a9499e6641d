"""Serial-scam funding patterns: stars, chains, and major flows."""

from .chains import ChainResult, detect_chains
from .flows import FlowRole, MajorFlowResult, detect_major_flows
from .funding import (
    FundingProfile,
    FundingSets,
    compute_funding_sets,
    funding_profile,
    scam_cost,
    scam_revenue,
)
from .overlap import OverlapReport, pattern_overlap_report
from .stars import StarKind, StarResult, detect_stars

__all__ = [
    "ChainResult",
    "FlowRole",
    "FundingProfile",
    "FundingSets",
    "MajorFlowResult",
    "OverlapReport",
    "StarKind",
    "StarResult",
    "compute_funding_sets",
    "detect_chains",
    "detect_major_flows",
    "detect_stars",
    "funding_profile",
    "pattern_overlap_report",
    "scam_cost",
    "scam_revenue",
]
