"""
Pydantic models for incidence structures, contributors and engine reports.
"""

from .contributor import (
    ClassTally,
    ComponentSign,
    Contributor,
    ContributorSign,
    TailClassId,
)
from .reports import (
    AdjacencyInversePair,
    AllClassesReport,
    BouquetReport,
    ForcedSignReport,
    ForcedSignRow,
    GeneralHostExploration,
    HeadClassesReport,
    LaplacianAudit,
    NonMonicReport,
    PairingWitness,
    ProbeIdentityReport,
    ReductionReport,
    Report,
    RoundTripReport,
    SearchResult,
    SignProbe,
    SingleClassReport,
    Standardization,
    TransversalReport,
    matrix_text,
)
from .structure import ExactMatrix, IncidenceStructure

__all__ = [
    # Structure models
    "ExactMatrix",
    "IncidenceStructure",

    # Contributor models
    "ClassTally",
    "ComponentSign",
    "Contributor",
    "ContributorSign",
    "TailClassId",

    # Reports
    "AdjacencyInversePair",
    "AllClassesReport",
    "BouquetReport",
    "ForcedSignReport",
    "ForcedSignRow",
    "GeneralHostExploration",
    "HeadClassesReport",
    "LaplacianAudit",
    "NonMonicReport",
    "PairingWitness",
    "ProbeIdentityReport",
    "ReductionReport",
    "Report",
    "RoundTripReport",
    "SearchResult",
    "SignProbe",
    "SingleClassReport",
    "Standardization",
    "TransversalReport",
    "matrix_text",
]
