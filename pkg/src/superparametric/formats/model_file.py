"""
Model file

A fitted estimate is stored as an indented JSON document checked by pydantic
models. Floats are written with Python's shortest round-trip repr, so a
model read back evaluates bit-identically to the one written.
"""
import json
from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict

from ..basis.window_basis import BasisFamily, BasisPiece, Domain, KnotVector, WindowBasis
from ..config.logger import logger
from ..config.settings import SolverConfig
from ..estimator.density import DensityEstimate
from ..exceptions import SampleDataError
from ..partition.domain_partition import DomainPartition, PartitionPiece
from ..solver.likelihood_solver import FitReport

FORMAT_VERSION = 1


class PieceDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: BasisFamily
    lo: float
    hi: float
    degree: int
    windows: List[int]
    areas: List[float]
    normalizers: List[float]
    knots: Optional[List[float]] = None


class PartitionPieceDocument(BaseModel):
    lo: float
    hi: float
    first: int
    last: int


class PartitionDocument(BaseModel):
    pieces: List[PartitionPieceDocument]
    cut_indices: List[int]
    removed_gaps: List[Tuple[float, float]]


class ModelDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format_version: int = FORMAT_VERSION
    method: BasisFamily
    family: BasisFamily
    pieces: List[PieceDocument]
    coefficients: List[float]
    config: SolverConfig
    fit_report: FitReport
    partition: Optional[PartitionDocument] = None


def to_document(est: DensityEstimate) -> ModelDocument:
    pieces = [
        PieceDocument(
            kind=piece.kind,
            lo=piece.domain.lo,
            hi=piece.domain.hi,
            degree=piece.degree,
            windows=piece.windows.tolist(),
            areas=piece.areas.tolist(),
            normalizers=piece.normalizers.tolist(),
            knots=piece.knots.knots.tolist() if piece.knots is not None else None,
        )
        for piece in est.basis.pieces
    ]
    partition = None
    if est.partition is not None:
        partition = PartitionDocument(
            pieces=[PartitionPieceDocument(lo=p.lo, hi=p.hi, first=p.first, last=p.last)
                    for p in est.partition.pieces],
            cut_indices=list(est.partition.cut_indices),
            removed_gaps=[tuple(g) for g in est.partition.removed_gaps],
        )
    return ModelDocument(
        method=est.method,
        family=est.basis.family,
        pieces=pieces,
        coefficients=est.coefficients.tolist(),
        config=est.config,
        fit_report=est.fit_report,
        partition=partition,
    )


def from_document(doc: ModelDocument) -> DensityEstimate:
    pieces = tuple(
        BasisPiece(
            kind=p.kind,
            domain=Domain(p.lo, p.hi),
            degree=p.degree,
            windows=p.windows,
            areas=p.areas,
            normalizers=p.normalizers,
            knots=KnotVector(p.knots, p.degree) if p.knots is not None else None,
        )
        for p in doc.pieces
    )
    partition = None
    if doc.partition is not None:
        partition = DomainPartition(
            pieces=tuple(PartitionPiece(p.lo, p.hi, p.first, p.last) for p in doc.partition.pieces),
            cut_indices=tuple(doc.partition.cut_indices),
            removed_gaps=tuple(tuple(g) for g in doc.partition.removed_gaps),
        )
    return DensityEstimate(
        basis=WindowBasis(doc.family, pieces),
        coefficients=doc.coefficients,
        fit_report=doc.fit_report,
        method=doc.method,
        config=doc.config,
        partition=partition,
    )


def dumps_model(est: DensityEstimate) -> str:
    # python mode keeps -inf log-likelihoods as floats; json writes them as -Infinity
    return json.dumps(to_document(est).model_dump(mode="python"), indent=2) + "\n"


def loads_model(text: str) -> DensityEstimate:
    data = json.loads(text)
    if not isinstance(data, dict):
        raise SampleDataError("a model file holds a single JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise SampleDataError(f"unsupported model format version {version!r}")
    return from_document(ModelDocument.model_validate(data))


def write_model(est: DensityEstimate, path: Union[str, Path]):
    Path(path).write_text(dumps_model(est), encoding="utf-8")
    logger.info(f"Model written to {path}")


def read_model(path: Union[str, Path]) -> DensityEstimate:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SampleDataError(f"cannot read model file {path}: {e}") from e
    try:
        return loads_model(text)
    except ValueError as e:
        # json.JSONDecodeError and pydantic.ValidationError are both ValueErrors
        raise SampleDataError(f"invalid model file {path}: {e}") from e
