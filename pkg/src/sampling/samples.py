"""
Transfer-Function Sample Sets
=============================

Right/left interpolation data ``H(s) = G(s) - D`` with optional derivative
samples and the feedthrough ``D = G(inf)``, plus the JSON sample file
format. A sample set is all the non-intrusive pipeline ever sees.

Classes
-------
SamplePoint
    One point ``s`` with ``H(s)`` and optionally ``H'(s)``.
SampleSet
    Right (sigma) and left (mu) sides plus the feedthrough.

Functions
---------
generate_samples
    Sample a state-space model.
read_samples / write_samples
    JSON sample files.
parse_grid
    Frequency grid specs ``log:a:b:n`` / ``lin:a:b:n``.
conjugate_points
    Build conjugate-paired points ``eps +/- j omega`` from frequencies.
conjugate_pairing
    Pair every point with its conjugate partner.

Sample File
-----------
::

    {"m": 1, "p": 1, "feedthrough": [[0.2378]],
     "right": [{"s": [0.0, 9.99], "H": [[[re, im]]], "dH": [[[re, im]]]}],
     "left":  [...]}
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.core.exceptions import (
    DegeneratePoints,
    InvariantViolation,
    ParseError,
)
from src.core.fileio import (
    PathLike,
    atomic_write_text,
    decode_complex,
    decode_complex_matrix,
    decode_real_matrix,
    dump_json,
    encode_complex,
    encode_complex_matrix,
    encode_real_matrix,
    load_json,
)
from src.core.parallel import parallel_map
from src.sampling.statespace import StateSpace, eval_derivative, eval_transfer

# Module logger
logger = logging.getLogger(__name__)

HERMITE_RTOL = 1e-8
DISTINCT_RTOL = 1e-12
CONJUGATE_RTOL = 1e-10


def hermite_close(sigma: complex, mu: complex, rtol: float = HERMITE_RTOL) -> bool:
    """True if ``|sigma - mu| <= rtol * max(1, |sigma|)`` (Hermite branch)."""
    return abs(sigma - mu) <= rtol * max(1.0, abs(sigma))


@dataclass
class SamplePoint:
    """
    One transfer-function sample.

    Attributes
    ----------
    s : complex
        Interpolation point (rad/s).
    value : np.ndarray, shape (p, m)
        ``H(s) = G(s) - D``.
    derivative : np.ndarray, optional
        ``H'(s)``; required when the point meets a point of the other side.
    """

    s: complex
    value: np.ndarray
    derivative: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        self.s = complex(self.s)
        self.value = np.atleast_2d(np.asarray(self.value, dtype=complex))
        if self.derivative is not None:
            self.derivative = np.atleast_2d(np.asarray(self.derivative, dtype=complex))

    def conjugate(self) -> "SamplePoint":
        return SamplePoint(
            s=self.s.conjugate(),
            value=self.value.conj(),
            derivative=None if self.derivative is None else self.derivative.conj(),
        )


@dataclass
class SampleSet:
    """
    Right/left transfer-function samples and the feedthrough.

    Attributes
    ----------
    right : list of SamplePoint
        Right points ``sigma_j`` (block columns of the Loewner matrices).
    left : list of SamplePoint
        Left points ``mu_i`` (block rows).
    feedthrough : np.ndarray, shape (p, m)
        Real ``D = G(inf)``.
    m, p : int
        Input and output counts.
    """

    right: List[SamplePoint]
    left: List[SamplePoint]
    feedthrough: np.ndarray
    m: int
    p: int
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.feedthrough = np.asarray(self.feedthrough, dtype=float).reshape(self.p, self.m)

    @property
    def v(self) -> int:
        return len(self.right)

    @property
    def w(self) -> int:
        return len(self.left)

    @property
    def right_points(self) -> np.ndarray:
        return np.array([pt.s for pt in self.right], dtype=complex)

    @property
    def left_points(self) -> np.ndarray:
        return np.array([pt.s for pt in self.left], dtype=complex)

    def validate(self) -> None:
        """
        Check the sample-set invariants.

        Raises
        ------
        InvariantViolation
            On shape errors or when a side is not closed under conjugation.
        DegeneratePoints
            When two points of one side coincide.
        """
        for side_name, side in (("right", self.right), ("left", self.left)):
            for k, pt in enumerate(side):
                if pt.value.shape != (self.p, self.m):
                    raise InvariantViolation(
                        "Sample value has the wrong shape",
                        field=f"{side_name}[{k}].H",
                        details={"expected": [self.p, self.m], "found": list(pt.value.shape)},
                    )
                if pt.derivative is not None and pt.derivative.shape != (self.p, self.m):
                    raise InvariantViolation(
                        "Derivative sample has the wrong shape",
                        field=f"{side_name}[{k}].dH",
                    )
            points = np.array([pt.s for pt in side], dtype=complex)
            check_distinct(points, side_name)
            if not is_conjugate_closed(points):
                raise InvariantViolation(
                    "Point set is not closed under conjugation",
                    field=side_name,
                )

    def hermite_pairs(self) -> List[Tuple[int, int]]:
        """Index pairs (left i, right j) whose points coincide."""
        pairs = []
        for i, lp in enumerate(self.left):
            for j, rp in enumerate(self.right):
                if hermite_close(rp.s, lp.s):
                    pairs.append((i, j))
        return pairs

    def __repr__(self) -> str:
        return f"SampleSet(v={self.v}, w={self.w}, m={self.m}, p={self.p})"


# =============================================================================
# Point-set utilities
# =============================================================================


def check_distinct(points: np.ndarray, side: str = "points") -> None:
    """Raise DegeneratePoints if two points coincide within one side."""
    if points.size < 2:
        return
    scale = max(float(np.max(np.abs(points))), 1.0)
    diff = np.abs(points[:, None] - points[None, :])
    np.fill_diagonal(diff, np.inf)
    if float(diff.min()) <= DISTINCT_RTOL * scale:
        i, j = np.unravel_index(np.argmin(diff), diff.shape)
        raise DegeneratePoints(
            "Interpolation points are not distinct",
            field=side,
            details={"indices": [int(i), int(j)]},
        )


def conjugate_pairing(points: Sequence[complex], rtol: float = CONJUGATE_RTOL) -> List[Tuple[int, ...]]:
    """
    Pair each point with its conjugate.

    Returns a list of tuples: ``(i,)`` for real points and ``(i, j)`` for a
    point with positive imaginary part ``i`` and its partner ``j``.
    Returns an empty list for an empty set and raises InvariantViolation
    if a partner is missing.
    """
    pts = np.asarray(points, dtype=complex)
    scale = max(float(np.max(np.abs(pts))) if pts.size else 1.0, 1.0)
    tol = rtol * scale
    used = np.zeros(pts.size, dtype=bool)
    groups: List[Tuple[int, ...]] = []
    for i, z in enumerate(pts):
        if used[i]:
            continue
        if abs(z.imag) <= tol:
            used[i] = True
            groups.append((i,))
            continue
        dist = np.abs(pts - z.conjugate())
        dist[used] = np.inf
        dist[i] = np.inf
        j = int(np.argmin(dist)) if pts.size > 1 else i
        if j == i or dist[j] > tol:
            raise InvariantViolation(
                "Point has no conjugate partner",
                details={"index": i, "point": repr(complex(z))},
            )
        used[i] = used[j] = True
        groups.append((i, j) if z.imag > 0 else (j, i))
    return groups


def is_conjugate_closed(points: Sequence[complex]) -> bool:
    try:
        conjugate_pairing(points)
    except InvariantViolation:
        return False
    return True


def parse_grid(spec: str) -> np.ndarray:
    """
    Parse a frequency grid spec.

    ``log:start:stop:count`` gives log-spaced positive frequencies,
    ``lin:start:stop:count`` linearly spaced ones, and a comma-separated
    list gives explicit values.

    Examples
    --------
    >>> parse_grid("log:1e-1:1e1:3")
    array([ 0.1,  1. , 10. ])
    """
    text = spec.strip()
    try:
        if text.startswith(("log:", "lin:")):
            kind, start, stop, count = text.split(":")
            a, b, n = float(start), float(stop), int(count)
            if n < 1:
                raise ValueError("count must be positive")
            if kind == "log":
                if a <= 0 or b <= 0:
                    raise ValueError("log grids need positive bounds")
                return np.logspace(np.log10(a), np.log10(b), n)
            return np.linspace(a, b, n)
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise ParseError(f"Invalid grid spec '{spec}': {e}", field="grid") from e
    if not values:
        raise ParseError(f"Empty grid spec '{spec}'", field="grid")
    return np.asarray(values, dtype=float)


def conjugate_points(omegas: Sequence[float], offset: float = 0.0) -> np.ndarray:
    """
    Conjugate-paired points ``offset + j omega`` and ``offset - j omega``.

    Pairs are adjacent and ordered positive imaginary part first; a zero
    frequency yields the single real point ``offset``.
    """
    pts: List[complex] = []
    for omega in omegas:
        omega = float(omega)
        if omega == 0.0:
            pts.append(complex(offset, 0.0))
        else:
            pts.append(complex(offset, abs(omega)))
            pts.append(complex(offset, -abs(omega)))
    return np.asarray(pts, dtype=complex)


def mirror_points(ss: StateSpace) -> np.ndarray:
    """
    Mirror images ``-conj(lambda)`` of the poles of a Hurwitz model.

    With one shift per pole the interpolants reproduce the model, so the
    ADI-mode Gramians are exact and every structured variant keeps its
    guarantee. Pairs are adjacent, positive imaginary part first, in
    increasing frequency; conjugates are exact.

    Raises
    ------
    NotHurwitz
        If the model has a pole in the closed right half-plane.
    """
    ss.require_hurwitz()
    lam = ss.poles()
    if lam.size == 0:
        return np.zeros(0, dtype=complex)
    tol = CONJUGATE_RTOL * max(float(np.max(np.abs(lam))), 1.0)
    upper = lam[lam.imag > tol]
    real = lam[np.abs(lam.imag) <= tol].real
    pts: List[complex] = [complex(-x, 0.0) for x in np.sort(real)[::-1]]
    for z in upper[np.argsort(upper.imag)]:
        s = complex(-z.real, z.imag)
        pts.extend([s, s.conjugate()])
    return np.asarray(pts, dtype=complex)


# =============================================================================
# Generation
# =============================================================================


def generate_samples(
    ss: StateSpace,
    right_freqs: Sequence[complex],
    left_freqs: Sequence[complex],
    max_workers: Optional[int] = None,
) -> SampleSet:
    """
    Sample ``H(s) = G(s) - D`` of a stable model at right and left points.

    Derivatives are attached to every right/left point that coincides with
    a point of the other side (Hermite threshold 1e-8 relative).

    Parameters
    ----------
    ss : StateSpace
        Hurwitz model.
    right_freqs, left_freqs : sequence of complex
        Interpolation points (not bare frequencies: pass ``1j * omega``
        for imaginary-axis samples).
    max_workers : int, optional
        Thread count for the per-point resolvent solves.

    Returns
    -------
    SampleSet
        Validated sample set.
    """
    ss.require_hurwitz()
    right = np.asarray(right_freqs, dtype=complex).ravel()
    left = np.asarray(left_freqs, dtype=complex).ravel()

    need_right = [any(hermite_close(s, mu) for mu in left) for s in right]
    need_left = [any(hermite_close(sig, s) for sig in right) for s in left]

    def sample(job: Tuple[complex, bool]) -> SamplePoint:
        s, with_derivative = job
        value = eval_transfer(ss, s) - ss.D
        deriv = eval_derivative(ss, s) if with_derivative else None
        return SamplePoint(s=s, value=value, derivative=deriv)

    right_pts = parallel_map(sample, list(zip(right, need_right)), max_workers)
    left_pts = parallel_map(sample, list(zip(left, need_left)), max_workers)

    samples = SampleSet(
        right=right_pts,
        left=left_pts,
        feedthrough=ss.D.copy(),
        m=ss.m,
        p=ss.p,
    )
    samples.validate()
    n_hermite = sum(need_right)
    if n_hermite:
        logger.info(f"{n_hermite} coincident right/left points use derivative samples")
    logger.debug(f"Generated {samples!r}")
    return samples


# =============================================================================
# Sample Files
# =============================================================================


def _encode_side(side: List[SamplePoint]) -> List[Dict[str, Any]]:
    out = []
    for pt in side:
        entry: Dict[str, Any] = {"s": encode_complex(pt.s), "H": encode_complex_matrix(pt.value)}
        if pt.derivative is not None:
            entry["dH"] = encode_complex_matrix(pt.derivative)
        out.append(entry)
    return out


def _decode_side(raw: Any, name: str, p: int, m: int, path: str) -> List[SamplePoint]:
    if not isinstance(raw, list):
        raise ParseError("Expected a list of points", path=path, field=name)
    side = []
    for k, entry in enumerate(raw):
        where = f"{name}[{k}]"
        if not isinstance(entry, dict) or "s" not in entry or "H" not in entry:
            raise ParseError("Point needs 's' and 'H'", path=path, field=where)
        s = decode_complex(entry["s"], f"{where}.s", path)
        value = decode_complex_matrix(entry["H"], f"{where}.H", (p, m), path)
        deriv = None
        if entry.get("dH") is not None:
            deriv = decode_complex_matrix(entry["dH"], f"{where}.dH", (p, m), path)
        side.append(SamplePoint(s=s, value=value, derivative=deriv))
    return side


def samples_to_dict(samples: SampleSet) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "m": samples.m,
        "p": samples.p,
        "feedthrough": encode_real_matrix(samples.feedthrough),
        "right": _encode_side(samples.right),
        "left": _encode_side(samples.left),
    }
    if samples.metadata:
        data["metadata"] = dict(samples.metadata)
    return data


def write_samples(samples: SampleSet, path: PathLike) -> None:
    """Write a sample file atomically (lossless for every double)."""
    atomic_write_text(path, dump_json(samples_to_dict(samples)))
    logger.debug(f"Wrote {samples!r} to {path}")


def read_samples(path: PathLike) -> SampleSet:
    """
    Read and validate a sample file.

    Raises
    ------
    ParseError
        If the file is not valid JSON or a field does not match the schema.
    InvariantViolation
        If the sample-set invariants fail (e.g. conjugate closure).
    """
    where = str(path)
    data = load_json(path)
    if not isinstance(data, dict):
        raise ParseError("Sample file must hold a JSON object", path=where)
    for key in ("m", "p", "feedthrough", "right", "left"):
        if key not in data:
            raise ParseError("Missing field", path=where, field=key)
    try:
        m, p = int(data["m"]), int(data["p"])
    except (TypeError, ValueError) as e:
        raise ParseError("m and p must be integers", path=where) from e
    samples = SampleSet(
        right=_decode_side(data["right"], "right", p, m, where),
        left=_decode_side(data["left"], "left", p, m, where),
        feedthrough=decode_real_matrix(data["feedthrough"], "feedthrough", (p, m), where),
        m=m,
        p=p,
        metadata=dict(data.get("metadata") or {}),
    )
    samples.validate()
    logger.debug(f"Read {samples!r} from {path}")
    return samples
