"""JSON file formats for quivers, vectors and representations; rationals are written as "p/q"."""
import json
import logging
import os

import sympy

from .errors import MalformedInputError
from .linalg import format_rational, to_rational
from .quiver_core import Arrow, DimensionVector, Quiver, SymmetricQuiver, Weight
from .representations import Representation

logger = logging.getLogger(__name__)


def load_json(source):
    text = source
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, encoding="utf-8") as f:
            text = f.read()
        logger.debug("read %s", source)
    try:
        return json.loads(text)
    except (TypeError, ValueError) as exc:
        raise MalformedInputError(f"invalid JSON: {exc}") from None


def _require(data, key, what):
    try:
        return data[key]
    except (KeyError, TypeError):
        raise MalformedInputError(f"{what} is missing {key!r}") from None


def quiver_to_dict(qs):
    return {
        "vertices": list(qs.vertices),
        "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in qs.arrows],
        "sigma": {"vertices": dict(qs.sigma_v), "arrows": dict(qs.sigma_a)},
    }


def quiver_from_dict(data):
    vertices = [str(x) for x in _require(data, "vertices", "quiver")]
    arrows = []
    for entry in _require(data, "arrows", "quiver"):
        arrows.append(Arrow(
            str(_require(entry, "id", "arrow")),
            str(_require(entry, "tail", "arrow")),
            str(_require(entry, "head", "arrow")),
        ))
    sigma = _require(data, "sigma", "quiver")
    if not isinstance(sigma, dict):
        raise MalformedInputError(f"quiver 'sigma' must be an object, got {sigma!r}")
    return SymmetricQuiver(
        Quiver(vertices, arrows),
        _require(sigma, "vertices", "sigma"),
        _require(sigma, "arrows", "sigma"),
    )


def read_quiver(source):
    return quiver_from_dict(load_json(source))


def vector_to_dict(vector):
    if isinstance(vector, Weight):
        return {x: format_rational(v) for x, v in vector.items()}
    return {x: int(v) for x, v in vector.items()}


def dim_from(data, qs):
    if isinstance(data, (str, os.PathLike)):
        data = load_json(data)
    if isinstance(data, dict) and "dim" in data:
        data = data["dim"]
    if not isinstance(data, (dict, list)):
        raise MalformedInputError(f"a dimension vector is a JSON object or list, got {data!r}")
    if isinstance(data, dict):
        values = {}
        for x, v in data.items():
            value = to_rational(v)
            if not value.is_integer:
                raise MalformedInputError(f"dimension at {x!r} is not an integer: {v!r}")
            values[str(x)] = int(value)
        return qs.vector(values)
    return qs.vector([int(to_rational(v)) for v in data])


def weight_from(data, qs):
    if isinstance(data, (str, os.PathLike)):
        data = load_json(data)
    weight = Weight({str(x): to_rational(v) for x, v in data.items()})
    qs.vector(weight)
    return weight


def matrix_to_rows(matrix):
    return [[format_rational(matrix[r, c]) for c in range(matrix.cols)] for r in range(matrix.rows)]


def representation_to_dict(V):
    return {
        "dim": vector_to_dict(V.dim),
        "mats": {arrow_id: matrix_to_rows(m) for arrow_id, m in V.mats.items()},
    }


def representation_from_dict(data, qs):
    dim = dim_from(_require(data, "dim", "representation"), qs)
    mats = {}
    for arrow_id, rows in _require(data, "mats", "representation").items():
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise MalformedInputError(f"matrix of {arrow_id!r} must be a list of rows")
        arrow = qs.arrow(str(arrow_id))
        shape = (dim[arrow.head], dim[arrow.tail])
        if not rows:
            mats[str(arrow_id)] = sympy.zeros(*shape)
            continue
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise MalformedInputError(f"ragged matrix for {arrow_id!r}")
        mats[str(arrow_id)] = sympy.Matrix([[to_rational(v) for v in r] for r in rows])
    return Representation(qs.quiver, dim, mats)


def read_representation(source, qs):
    return representation_from_dict(load_json(source), qs)


def write_json(data, path=None, stream=None):
    text = json.dumps(data, ensure_ascii=False, indent=2)
    if path is not None:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        logger.info("wrote %s", path)
    elif stream is not None:
        stream.write(text + "\n")
    return text
