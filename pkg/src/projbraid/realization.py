"""Piecewise linear paths of configurations and their singular events.

A path is a sequence of keyframe configurations; between consecutive
keyframes every point's representative moves linearly in Q^k.  Along a
segment each k-subset of points has a determinant that is a polynomial of
degree at most k in the segment parameter, with exact rational
coefficients.  A *singular event* is a simple interior root of one of these
polynomials: the moment the subset's points become projectively degenerate.
Reading off the subsets in time order turns a path into a word; building a
path letter by letter inverts that map on base configurations.

Event parameters are exact: rational when the root is found by the divisor
search, otherwise an isolating interval with a certified sign change.  All
ordering and coincidence decisions refine intervals until they are decided
exactly; nothing is ever compared through floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations
from pathlib import Path as FilePath

from . import polys
from .invariants import SignString, reference_signs, sign_action
from .projective import (
    Configuration,
    ProjectivePoint,
    ProjectiveTransform,
    base_configuration,
    general_position_violation,
    poly_det,
    shear_family,
    sign_string_of,
    singular_subsets,
    _snap_keyframes,
)
from .words import GroupParams, Letter, Word


class PathError(ValueError):
    """Base class for everything detect_events can reject."""


class DegenerateKeyframe(PathError):
    """A keyframe is already singular or out of general position."""


class TangentialEvent(PathError):
    """A subset determinant has a multiple root inside a segment."""


class SimultaneousEvents(PathError):
    """Two singular events in one segment share their parameter."""


class IdenticallySingularSegment(PathError):
    """A subset determinant vanishes along an entire segment."""


class ZeroVectorOnSegment(PathError):
    """Some point's representative would pass through the origin."""


class CertificationError(PathError):
    """A constructed path failed its own event certification."""


@dataclass(frozen=True)
class AlgebraicTime:
    """An irrational (or undetermined) root, exactly isolated.

    ``poly`` is squarefree and monic with exactly one root in (lo, hi), and
    its values at lo and hi have opposite signs.
    """

    poly: tuple[Fraction, ...]
    lo: Fraction
    hi: Fraction


EventTime = Fraction | AlgebraicTime


@dataclass(frozen=True)
class SingularEvent:
    segment: int
    t: EventTime
    subset: tuple[int, ...]


@dataclass(frozen=True)
class PLPath:
    """Keyframes plus linear interpolation of stored representatives."""

    params: GroupParams
    keyframes: tuple[Configuration, ...]

    def __post_init__(self) -> None:
        if len(self.keyframes) < 2:
            raise ValueError("a path needs at least two keyframes")
        for config in self.keyframes:
            if config.params != self.params:
                raise ValueError("keyframe parameters disagree with the path")


# --- exact comparison of event times ---------------------------------------

def time_eq(a: EventTime, b: EventTime) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    if isinstance(a, Fraction):
        a, b = b, a
    if isinstance(b, Fraction):
        return a.lo < b < a.hi and polys.evaluate(a.poly, b) == 0
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo >= hi:
        return False
    common = polys.gcd(a.poly, b.poly)
    if polys.degree(common) < 1:
        return False
    return polys.count_roots(common, lo, hi) > 0


def time_cmp(a: EventTime, b: EventTime) -> int:
    """Order two distinct event times exactly, refining intervals as needed."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return -1 if a < b else 1
    if isinstance(a, Fraction):
        return -time_cmp(b, a)
    if isinstance(b, Fraction):
        lo, hi = a.lo, a.hi
        while lo < b < hi:
            lo, hi = polys.refine_to_exclude(a.poly, lo, hi, b)
            if lo == hi:
                return -1 if lo < b else 1
        return 1 if b <= lo else -1
    ia, ib = (a.lo, a.hi), (b.lo, b.hi)
    while not (ia[1] <= ib[0] or ib[1] <= ia[0]):
        if ia[1] - ia[0] >= ib[1] - ib[0]:
            ia = polys.refine_once(a.poly, *ia)
            if ia[0] == ia[1]:
                return time_cmp(ia[0], b)
        else:
            ib = polys.refine_once(b.poly, *ib)
            if ib[0] == ib[1]:
                return time_cmp(a, ib[0])
    return -1 if ia[1] <= ib[0] else 1


def time_as_fraction(t: EventTime) -> Fraction | None:
    return t if isinstance(t, Fraction) else None


# --- event detection --------------------------------------------------------

def _segment_polynomial(start: Configuration, end: Configuration, subset: tuple[int, ...]) -> polys.Poly:
    """Determinant polynomial of the interpolated representatives of a subset."""
    rows = []
    for i in subset:
        p = start.points[i - 1].coords
        q = end.points[i - 1].coords
        rows.append([polys.poly(p[j], q[j] - p[j]) for j in range(len(p))])
    return poly_det(rows)


def _check_keyframes(path: PLPath) -> None:
    for idx, config in enumerate(path.keyframes):
        violation = general_position_violation(config)
        if violation is not None:
            raise DegenerateKeyframe(f"keyframe {idx}: points {violation} are not in general position")
        singular = singular_subsets(config)
        if singular:
            raise DegenerateKeyframe(f"keyframe {idx}: singular subset {singular[0]}")


def _check_representatives(segment: int, start: Configuration, end: Configuration) -> None:
    for i, (p, q) in enumerate(zip(start.points, end.points)):
        ratio = q.ratio_to(p)
        if ratio is not None and ratio < 0:
            raise ZeroVectorOnSegment(
                f"segment {segment}: point {i + 1} representative passes through the origin"
            )


def _segment_events(segment: int, start: Configuration, end: Configuration, params: GroupParams):
    found: list[tuple[EventTime, tuple[int, ...]]] = []
    for subset in combinations(range(1, params.n + 1), params.k):
        d = _segment_polynomial(start, end, subset)
        if not d:
            raise IdenticallySingularSegment(f"segment {segment}: subset {subset} is singular throughout")
        if polys.degree(d) < 1:
            continue
        multiple = polys.gcd(d, polys.derivative(d))
        squarefree, rem = polys.divmod_exact(d, multiple)
        assert not rem
        squarefree = polys.monic(squarefree)

        remaining = squarefree
        extracted = polys.rational_roots_in_unit_interval(squarefree)
        if extracted is not None:
            roots, remaining = extracted
            for r in roots:
                if polys.degree(multiple) >= 1 and polys.evaluate(multiple, r) == 0:
                    raise TangentialEvent(
                        f"segment {segment}: subset {subset} has a multiple root at t = {r}"
                    )
                found.append((r, subset))
        if polys.degree(remaining) >= 1:
            for lo, hi in polys.isolate_roots(remaining, Fraction(0), Fraction(1)):
                if polys.degree(multiple) >= 1:
                    shared = polys.gcd(remaining, multiple)
                    if polys.degree(shared) >= 1 and polys.count_roots(shared, lo, hi) > 0:
                        raise TangentialEvent(
                            f"segment {segment}: subset {subset} has a multiple root in ({lo}, {hi})"
                        )
                found.append((AlgebraicTime(remaining, lo, hi), subset))

    for i in range(len(found)):
        for j in range(i + 1, len(found)):
            if time_eq(found[i][0], found[j][0]):
                raise SimultaneousEvents(
                    f"segment {segment}: subsets {found[i][1]} and {found[j][1]} "
                    f"degenerate at the same parameter"
                )
    found.sort(key=cmp_to_key(lambda x, y: time_cmp(x[0], y[0])))
    return [SingularEvent(segment, t, subset) for t, subset in found]


def detect_events(path: PLPath) -> list[SingularEvent]:
    """All singular events of the path, ordered by (segment, parameter).

    Raises a ``PathError`` subclass when the path violates the stability
    requirements: degenerate keyframes, a representative crossing the
    origin, identically singular segments, multiple roots, or two events
    sharing a parameter.  Re-running on equal input yields equal output.
    """
    _check_keyframes(path)
    events: list[SingularEvent] = []
    for segment in range(len(path.keyframes) - 1):
        start, end = path.keyframes[segment], path.keyframes[segment + 1]
        _check_representatives(segment, start, end)
        events.extend(_segment_events(segment, start, end, path.params))
    return events


def word_from_path(path: PLPath) -> Word:
    """The word spelled by the path's singular events in time order."""
    return Word(path.params, tuple(Letter(e.subset) for e in detect_events(path)))


# --- letter paths and roundtrips --------------------------------------------

def _unit_point(k: int, i: int) -> ProjectivePoint:
    return ProjectivePoint(tuple(Fraction(1 if j == i else 0) for j in range(k)))


@lru_cache(maxsize=None)
def _letter_path_cached(params: GroupParams, letter: Letter, signs: SignString):
    k = params.k
    c = letter.omitted_index(params)
    start = base_configuration(params, signs)

    if c <= k - 1:
        target = list(signs)
        target[c - 1] = -target[c - 1]
        end_signs = tuple(target)
        keyframes = (start, base_configuration(params, end_signs))
    elif c == k:
        end_signs = tuple(-s for s in signs)
        moved = ProjectivePoint(tuple(Fraction(s) for s in signs) + (Fraction(-1),))
        keyframes = (start, Configuration(params, start.points[:k] + (moved,)))
    else:
        # the last point is framed by the others: send point k on a detour
        # through the opposite side, then shear everything straight again
        end_signs = tuple(-s for s in signs)
        detour = ProjectivePoint(tuple(Fraction(-2 * s) for s in signs) + (Fraction(-1),))
        middle = Configuration(
            params, start.points[: k - 1] + (detour,) + (start.points[k],)
        )
        _, sheared = shear_family(middle)
        keyframes = (start, middle, sheared)

    path = PLPath(params, keyframes)
    events = detect_events(path)
    if len(events) != 1 or events[0].subset != letter.subset:
        raise CertificationError(f"letter path for {letter} produced events {events}")
    if not path.keyframes[-1].same_configuration(base_configuration(params, end_signs)):
        raise CertificationError(f"letter path for {letter} missed its endpoint")
    return path, end_signs


def letter_path(params: GroupParams, letter: Letter, signs: SignString) -> tuple[PLPath, SignString]:
    """A certified path realizing one letter from the base configuration.

    The path starts at ``base_configuration(signs)``, crosses the letter's
    subset exactly once and nothing else, and ends at the base configuration
    of the translated sign string.  Letters whose subset omits one of the
    first k-1 indices move only the last point; the letter omitting k flips
    the last point across the hyperplane x_k = 0; the letter omitting k+1
    must move point k, which travels to the far side of the frame and is
    then brought back to its coordinate position by a determinant-one shear
    that creates no events.  Construction is certified by detection.
    """
    params.require_square()
    if len(letter.subset) != params.k or letter.subset[-1] > params.n:
        raise ValueError(f"letter {letter} does not belong to this group")
    return _letter_path_cached(params, letter, tuple(signs))


def path_from_word(word: Word, signs: SignString | None = None) -> PLPath:
    """Concatenate letter paths, reconciling representatives at the joints.

    Consecutive letter paths agree projectively where they meet, but the
    stored representatives may differ by per-point nonzero scalars; the
    incoming path is rescaled point by point so keyframes match exactly.
    """
    params = word.params
    params.require_square()
    current_signs = tuple(signs) if signs is not None else reference_signs(params)
    keyframes: list[Configuration] = [base_configuration(params, current_signs)]
    for letter in word.letters:
        piece, current_signs = letter_path(params, letter, current_signs)
        scales = []
        junction = keyframes[-1]
        for have, want in zip(junction.points, piece.keyframes[0].points):
            ratio = have.ratio_to(want)
            assert ratio is not None and ratio != 0, "joint configurations must match projectively"
            scales.append(ratio)
        for config in piece.keyframes[1:]:
            keyframes.append(
                Configuration(
                    params,
                    tuple(p.scaled(s) for p, s in zip(config.points, scales)),
                )
            )
    if len(keyframes) == 1:
        keyframes.append(keyframes[0])
    return PLPath(params, tuple(keyframes))


@dataclass(frozen=True)
class RoundtripReport:
    word: Word
    recovered: Word
    endpoint_signs: SignString
    expected_signs: SignString

    @property
    def ok(self) -> bool:
        return (
            self.word.letters == self.recovered.letters
            and self.endpoint_signs == self.expected_signs
        )


def certify_roundtrip(word: Word, signs: SignString | None = None) -> RoundtripReport:
    """Realize the word as a path, read it back, and check the endpoint."""
    params = word.params
    start = tuple(signs) if signs is not None else reference_signs(params)
    path = path_from_word(word, start)
    recovered = word_from_path(path)
    endpoint = sign_string_of(path.keyframes[-1])
    return RoundtripReport(word, recovered, endpoint, sign_action(word, start))


def void_path_to_base(config: Configuration) -> tuple[PLPath, SignString]:
    """An event-free path from a nonsingular marked configuration to a base one.

    Requires points 1..k-1 at the coordinate points.  First a unit
    determinant shear takes point k to e_k; every subset determinant is
    constant along this motion, so nothing degenerates.  Then the last point
    snaps straight to its sign vector, during which no coordinate changes
    sign.  Certified event-free by detection before returning.
    """
    params = config.params
    params.require_square()
    violation = general_position_violation(config)
    if violation is not None:
        raise DegenerateKeyframe(f"points {violation} are not in general position")
    singular = singular_subsets(config)
    if singular:
        raise DegenerateKeyframe(f"singular subset {singular[0]}")

    keyframes = [config]
    _, sheared = shear_family(config)
    if sheared.points != config.points:
        keyframes.append(sheared)
    _, snapped = _snap_keyframes(sheared)
    if snapped.points != sheared.points:
        keyframes.append(snapped)
    if len(keyframes) == 1:
        keyframes.append(keyframes[0])
    path = PLPath(params, tuple(keyframes))
    events = detect_events(path)
    if events:
        raise CertificationError(f"return path produced events {events}")
    signs = sign_string_of(path.keyframes[-1])
    if not path.keyframes[-1].same_configuration(base_configuration(params, signs)):
        raise CertificationError("return path missed the base configuration")
    return path, signs


def apply_transform_to_path(transform: ProjectiveTransform, path: PLPath) -> PLPath:
    """Apply one transform to every keyframe; events are carried along exactly."""
    return PLPath(
        path.params,
        tuple(transform.apply_to_configuration(config) for config in path.keyframes),
    )


# --- path files --------------------------------------------------------------

def _encode_fraction(value: Fraction):
    return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def _decode_fraction(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"expected an integer or 'p/q' string, got {value!r}")
    return Fraction(value)


def path_to_document(path: PLPath, base_sign: SignString | None = None) -> dict:
    doc = {
        "k": path.params.k,
        "n": path.params.n,
        "keyframes": [
            [[_encode_fraction(c) for c in point.coords] for point in config.points]
            for config in path.keyframes
        ],
    }
    if base_sign is not None:
        doc["base_sign"] = "".join("+" if s > 0 else "-" for s in base_sign)
    return doc


def path_from_document(doc: dict) -> tuple[PLPath, SignString | None]:
    try:
        params = GroupParams(int(doc["n"]), int(doc["k"]))
        raw_keyframes = doc["keyframes"]
    except KeyError as exc:
        raise ValueError(f"path document is missing field {exc.args[0]!r}") from exc
    keyframes = []
    for frame in raw_keyframes:
        points = tuple(
            ProjectivePoint(tuple(_decode_fraction(c) for c in coords)) for coords in frame
        )
        keyframes.append(Configuration(params, points))
    base_sign: SignString | None = None
    if "base_sign" in doc:
        base_sign = tuple(1 if ch == "+" else -1 for ch in doc["base_sign"])
        if len(base_sign) != params.k - 1:
            raise ValueError("base_sign length must be k - 1")
    return PLPath(params, tuple(keyframes)), base_sign


def save_path_file(path: PLPath, file_path: str | FilePath, base_sign: SignString | None = None) -> None:
    FilePath(file_path).write_text(json.dumps(path_to_document(path, base_sign), indent=2) + "\n")


def load_path_file(file_path: str | FilePath) -> tuple[PLPath, SignString | None]:
    return path_from_document(json.loads(FilePath(file_path).read_text()))
