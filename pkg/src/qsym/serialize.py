"""JSON encoding of every object the command line consumes or emits.

Complex scalars serialize as [re, im] pairs; vectors, matrices and tensors
are nested arrays of such pairs (never bare numbers, so the nesting depth is
unambiguous).  Group elements and sequence values are 1-based in files and
on the command line, 0-based in memory.
"""

from __future__ import annotations

from typing import Any

import numpy as np

from . import groups, quantumgroups as qg
from .algebras import StarAlgebra, StarHom, StateFunctional, from_blocks, require_valid_algebra
from .errors import ShapeError
from .families import QuantumFamily
from .increasing import IncreasingSequenceRep, MagicUnitaryRep
from .linalg import Tolerance
from .quantumgroups import FiniteQuantumGroup

__all__ = [
    "encode_complex", "decode_complex", "encode_array", "decode_array",
    "encode_algebra", "decode_algebra", "encode_state", "decode_state",
    "decode_group", "encode_group", "decode_quantum_group", "encode_quantum_group",
    "decode_hom", "decode_family", "encode_family", "decode_rep", "encode_rep",
    "encode_magic", "encode_subspace",
]


def encode_complex(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def decode_complex(obj) -> complex:
    if not (isinstance(obj, (list, tuple)) and len(obj) == 2
            and all(isinstance(x, (int, float)) for x in obj)):
        raise ShapeError(f"complex scalars are [re, im] pairs, got {obj!r}")
    return complex(obj[0], obj[1])


def encode_array(a: np.ndarray) -> Any:
    """Nested lists of [re, im] pairs, one level per array axis."""
    a = np.asarray(a, dtype=complex)
    if a.ndim == 0:
        return encode_complex(complex(a))
    return [encode_array(sub) for sub in a]


def decode_array(obj, shape: tuple[int, ...] | None = None) -> np.ndarray:
    def parse(node):
        if isinstance(node, (list, tuple)) and len(node) == 2 \
                and all(isinstance(x, (int, float)) for x in node):
            return complex(node[0], node[1])
        if isinstance(node, (list, tuple)):
            return [parse(sub) for sub in node]
        raise ShapeError(f"malformed array node: {node!r}")
    arr = np.asarray(parse(obj), dtype=complex)
    if shape is not None and arr.shape != shape:
        raise ShapeError(f"array has shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr)):
        raise ShapeError("array entries must be finite")
    return arr


def encode_algebra(a: StarAlgebra) -> dict:
    if a.blocks is not None:
        return {"blocks": list(a.blocks)}
    return {
        "dim": a.dim,
        "mult": encode_array(a.mult),
        "unit": encode_array(a.unit),
        "inv": encode_array(a.inv),
    }


def decode_algebra(obj, tol: Tolerance = Tolerance()) -> StarAlgebra:
    if not isinstance(obj, dict):
        raise ShapeError("algebra must be a JSON object")
    if "blocks" in obj:
        return from_blocks(obj["blocks"])
    try:
        n = int(obj["dim"])
        mult = decode_array(obj["mult"], (n, n, n))
        unit = decode_array(obj["unit"], (n,))
        inv = decode_array(obj["inv"], (n, n))
    except KeyError as exc:
        raise ShapeError(f"algebra object missing field {exc}") from exc
    return require_valid_algebra(StarAlgebra(mult, unit, inv), tol, what="loaded algebra")


def encode_state(phi: StateFunctional) -> dict:
    return {"coeffs": encode_array(phi.coeffs)}


def decode_state(obj, dim: int | None = None) -> StateFunctional:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ShapeError("state must be {\"coeffs\": [[re,im],...]}")
    coeffs = decode_array(obj["coeffs"])
    if coeffs.ndim != 1:
        raise ShapeError("state coefficients must be a vector")
    if dim is not None and coeffs.shape != (dim,):
        raise ShapeError(f"state has {coeffs.shape[0]} coefficients, expected {dim}")
    return StateFunctional(coeffs)


def encode_group(g: groups.FiniteGroup) -> dict:
    return {"cayley": [[int(x) for x in row] for row in g.cayley]}


def decode_group(obj) -> groups.FiniteGroup:
    """Group from a Cayley table, 0-based image lists, or 1-based cycles."""
    if not isinstance(obj, dict):
        raise ShapeError("group must be a JSON object")
    if "cayley" in obj:
        return groups.group_from_cayley(obj["cayley"])
    if "permutation_generators" in obj:
        gens = [groups.Permutation(tuple(int(x) for x in images))
                for images in obj["permutation_generators"]]
        return groups.closure(gens)
    if "cycle_generators" in obj:
        if "degree" not in obj:
            raise ShapeError("cycle_generators needs a \"degree\" field")
        degree = int(obj["degree"])
        gens = [groups.parse_cycles(text, degree) for text in obj["cycle_generators"]]
        return groups.closure(gens)
    raise ShapeError(
        "group needs \"cayley\", \"permutation_generators\" or \"cycle_generators\"")


def encode_quantum_group(q: FiniteQuantumGroup) -> dict:
    return {
        "algebra": encode_algebra(q.alg),
        "delta": encode_array(q.delta),
        "counit": encode_array(q.counit),
        "antipode": encode_array(q.antipode),
        "haar": encode_array(q.haar.coeffs),
    }


def decode_quantum_group(obj, tol: Tolerance = Tolerance()) -> FiniteQuantumGroup:
    if not isinstance(obj, dict):
        raise ShapeError("quantum group must be a JSON object")
    if "function_algebra_of" in obj:
        return qg.cqg_function_algebra(decode_group(obj["function_algebra_of"]))
    if "group_algebra_of" in obj:
        return qg.cqg_group_algebra(decode_group(obj["group_algebra_of"]))
    try:
        alg = decode_algebra(obj["algebra"], tol)
        n = alg.dim
        delta = decode_array(obj["delta"], (n * n, n))
        counit = decode_array(obj["counit"], (n,))
        antipode = decode_array(obj["antipode"], (n, n))
        haar = StateFunctional(decode_array(obj["haar"], (n,)))
    except KeyError as exc:
        raise ShapeError(f"quantum group object missing field {exc}") from exc
    q = FiniteQuantumGroup(alg, delta, counit, antipode, haar)
    return qg.require_valid_quantum_group(q, tol, what="loaded quantum group")


def decode_hom(obj, source: StarAlgebra, tol: Tolerance = Tolerance()
               ) -> tuple[StarHom, FiniteQuantumGroup | None]:
    """A hom out of `source`; returns the target quantum group when given."""
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise ShapeError("hom must be {\"matrix\": ..., \"target\"|\"target_fqg\": ...}")
    target_q = None
    if "target_fqg" in obj:
        target_q = decode_quantum_group(obj["target_fqg"], tol)
        target = target_q.alg
    elif "target" in obj:
        target = decode_algebra(obj["target"], tol)
    else:
        raise ShapeError("hom needs a \"target\" algebra or \"target_fqg\"")
    matrix = decode_array(obj["matrix"], (target.dim, source.dim))
    return StarHom(source, target, matrix), target_q


def encode_family(f: QuantumFamily) -> dict:
    return {
        "source": {"algebra": encode_algebra(f.source), "state": encode_state(f.phi)},
        "index": {"algebra": encode_algebra(f.index)},
        "coeffs": [[encode_array(f.coeffs[i, j]) for j in range(f.n)]
                   for i in range(f.n)],
    }


def decode_family(obj, tol: Tolerance = Tolerance()) -> QuantumFamily:
    from .algebras import orthonormalize
    if not isinstance(obj, dict):
        raise ShapeError("family must be a JSON object")
    try:
        source = decode_algebra(obj["source"]["algebra"], tol)
        phi = decode_state(obj["source"]["state"], source.dim)
        index = decode_algebra(obj["index"]["algebra"], tol)
        rows = obj["coeffs"]
    except KeyError as exc:
        raise ShapeError(f"family object missing field {exc}") from exc
    n = source.dim
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ShapeError(f"coefficient matrix must be {n} x {n}")
    coeffs = np.zeros((n, n, index.dim), dtype=complex)
    for i in range(n):
        for j in range(n):
            coeffs[i, j] = decode_array(rows[i][j], (index.dim,))
    onb = orthonormalize(source, phi, tol)
    return QuantumFamily(source, phi, onb, index, coeffs)


def encode_rep(rep: IncreasingSequenceRep) -> dict:
    return {
        "n": rep.n, "k": rep.k, "d": rep.d,
        "v": [[encode_array(rep.v[i, j]) for j in range(rep.k)] for i in range(rep.n)],
    }


def decode_rep(obj) -> IncreasingSequenceRep:
    if not isinstance(obj, dict):
        raise ShapeError("representation must be a JSON object")
    try:
        n, k, d = int(obj["n"]), int(obj["k"]), int(obj["d"])
        rows = obj["v"]
    except KeyError as exc:
        raise ShapeError(f"representation missing field {exc}") from exc
    if len(rows) != n or any(len(r) != k for r in rows):
        raise ShapeError(f"v must be {n} x {k} matrices")
    v = np.zeros((n, k, d, d), dtype=complex)
    for i in range(n):
        for j in range(k):
            v[i, j] = decode_array(rows[i][j], (d, d))
    return IncreasingSequenceRep(n, k, d, v)


def encode_magic(u: MagicUnitaryRep) -> dict:
    return {
        "n": u.n, "d": u.d,
        "p": [[encode_array(u.p[i, j]) for j in range(u.n)] for i in range(u.n)],
    }


def encode_subspace(basis: np.ndarray) -> list:
    return encode_array(basis)
