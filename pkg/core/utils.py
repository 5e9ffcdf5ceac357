"""
Utility functions for the slicing toolkit
"""
import json
import logging
import os
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .errors import PreconditionError

RationalLike = Union[int, str, Fraction]


def setup_logging(level: str = "INFO") -> logging.Logger:
    """Setup logging configuration

    Diagnostics go to standard error; standard output is reserved for reports.
    """
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    return logging.getLogger(__name__)


def check_file_exists(file_path: str) -> bool:
    """Check if a file exists"""
    return os.path.isfile(file_path)


def format_rational(value: RationalLike) -> str:
    """Render an exact rational as a "p/q" string ("p" when q = 1)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(token: Any) -> Fraction:
    """Parse an integer or a "p/q" string into a Fraction

    Floats are rejected: every coordinate must be exact.
    """
    if isinstance(token, bool) or isinstance(token, float):
        raise ValueError(f"not an exact rational: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, str):
        text = token.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {token!r}")
        return Fraction(text)
    raise ValueError(f"not an exact rational: {token!r}")


def format_point(point: Sequence[RationalLike]) -> List[str]:
    """Render every coordinate of a point with format_rational"""
    return [format_rational(x) for x in point]


def load_polytope_file(file_path: str) -> Dict[str, Any]:
    """
    Load a polytope description from a JSON file.

    The file holds "dimension", "vertices" (arrays of integers or "p/q" strings) and
    optionally "edges" (pairs of vertex indices).

    Args:
        file_path (str): Path to the JSON file

    Returns:
        dict: {"dimension": int, "vertices": list of Fraction tuples, "edges": list or None}

    Raises:
        FileNotFoundError: If the file doesn't exist
        PreconditionError: If the content does not follow the schema
    """
    if not check_file_exists(file_path):
        raise FileNotFoundError(f"Polytope file not found: {file_path}")

    logger = logging.getLogger(__name__)

    with open(file_path, "r", encoding="utf-8") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            raise PreconditionError(f"invalid JSON in {file_path}: {e}")

    if not isinstance(raw, dict) or "vertices" not in raw:
        raise PreconditionError(f"{file_path}: expected an object with a 'vertices' field")

    if not isinstance(raw["vertices"], list):
        raise PreconditionError(f"{file_path}: 'vertices' must be a list of coordinate arrays")
    for index, vertex in enumerate(raw["vertices"]):
        if not isinstance(vertex, list):
            raise PreconditionError(f"{file_path}: vertex {index} is not a coordinate array", witness=index)

    try:
        vertices: List[Tuple[Fraction, ...]] = [
            tuple(parse_rational(x) for x in vertex) for vertex in raw["vertices"]
        ]
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise PreconditionError(f"{file_path}: bad vertex coordinate: {e}")

    if not vertices:
        raise PreconditionError(f"{file_path}: no vertices")

    dimension = raw.get("dimension", len(vertices[0]))
    for index, vertex in enumerate(vertices):
        if len(vertex) != dimension:
            raise PreconditionError(
                f"{file_path}: vertex {index} has {len(vertex)} coordinates, expected {dimension}",
                witness=index,
            )

    edges: Optional[List[Tuple[int, int]]] = None
    if raw.get("edges") is not None:
        if not isinstance(raw["edges"], list):
            raise PreconditionError(f"{file_path}: 'edges' must be a list of index pairs")
        edges = []
        for pair in raw["edges"]:
            if not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(i, int) for i in pair):
                raise PreconditionError(f"{file_path}: bad edge {pair!r}", witness=pair)
            a, b = pair
            if not (0 <= a < len(vertices) and 0 <= b < len(vertices)):
                raise PreconditionError(f"{file_path}: edge {pair!r} references a missing vertex", witness=pair)
            edges.append((a, b))

    logger.info(f"Loaded polytope with {len(vertices)} vertices in R^{dimension} from {file_path}")
    return {"dimension": dimension, "vertices": vertices, "edges": edges}
