"""Quotients of the unit quaternions by a finite rotation group, and the
n-valued multiplication they carry.

The finite group sits inside the automorphism group of the base, which is
the rotation group acting by conjugation, so each group element acts as
x -> g x g^-1 on either base.  The two bases differ only in what counts as
a point: on the unit quaternions x and -x are distinct, on the rotation
quotient they are the two lifts of the same rotation and are identified.

A point of the quotient is an orbit.  We store one canonical representative
per orbit: the lexicographically largest image under the full sweep (orbit
images, plus lift signs on the rotation base), compared coordinate-wise
with an EPS_POINT tolerance.  Products of orbits are multisets of orbits,
one entry per group element:

    product(a, b) = [ class(a * g_i(b)) for each g_i in the group ]

where * is the quaternion product of representatives and g_i(b) is the
conjugation action.  Multiset equality up to tolerance is what the axiom
and acceptance checks consume.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from .quaternion import Quaternion, conj_matrix, left_matrix
from .rotgroups import RotationGroup
from .tolerances import EPS_POINT, SEPARATION_FACTOR, TIE_FACTOR


class Base(Enum):
    """Which space the group acts on by conjugation: the unit quaternions,
    where x and -x are distinct points, or the rotation group, where they
    name the same rotation."""

    SP1 = "sp1"
    SO3 = "so3"


class TieWarning(UserWarning):
    """Canonicalization had to break a near-tie; the result may be unstable
    for this particular point."""


class SizeMismatch(ValueError):
    """Multisets of different cardinality were compared."""


class CosetSpace:
    """The quotient of a base space by a finite rotation group.

    Precomputes the action matrices once: `_act[i]` is conjugation by the
    i-th group element (either lift conjugates identically), and `_canon`
    is the family of maps whose images sweep out everything a point is
    identified with, which canonicalization maximizes over.  On the
    rotation base each point also carries the sign ambiguity of its lift,
    so `_canon` there includes the negated maps.
    """

    def __init__(self, group: RotationGroup, base: Base):
        self.group = group
        self.base = base
        act = np.stack([conj_matrix(g) for g in group.elements])
        if base is Base.SP1:
            self._canon = act
        else:
            self._canon = np.concatenate([act, -act])
        self._act = act

    @property
    def n(self) -> int:
        """Number of values of the product: the size of the acting family."""
        return self._act.shape[0]

    @property
    def label(self) -> str:
        return f"{self.group.spec.label}@{self.base.value}"

    def __repr__(self) -> str:
        return f"CosetSpace({self.label}, n={self.n})"

    def act_images(self, points: np.ndarray) -> np.ndarray:
        """Images of each row of `points` under every acting map;
        shape (len(points), n, 4)."""
        return np.einsum("kij,mj->mki", self._act, points)

    def canon_images(self, points: np.ndarray) -> np.ndarray:
        """Full orbit sweep used for canonicalization (includes lift signs
        on the rotation quotient)."""
        return np.einsum("kij,mj->mki", self._canon, points)

    def representative_image(
        self, point: Quaternion, index: int, negate: bool = False
    ) -> Quaternion:
        """The image of a representative under the index-th group element,
        optionally negated (meaningful on the rotation base): an alternative
        representative of the same orbit."""
        vec = self._act[index] @ np.asarray(tuple(point), dtype=float)
        if negate:
            vec = -vec
        return Quaternion(*(float(c) for c in vec))


@dataclass(frozen=True, eq=False)
class Orbit:
    """A point of a coset space: its canonical representative quaternion."""

    space: CosetSpace = field(repr=False)
    rep: Quaternion

    def __repr__(self) -> str:
        c = ", ".join(f"{v:+.6f}" for v in self.rep)
        return f"Orbit[{self.space.label}]({c})"


def _canonical_reps(space: CosetSpace, points: np.ndarray) -> list[Quaternion]:
    """Canonical representative of the orbit of each row of `points`.

    The representative is the coordinate-wise lexicographic maximum over
    the orbit sweep, decided with EPS_POINT slack so that drift cannot
    reorder two images that agree up to noise.  Warns with TieWarning when
    a discarded image sits within TIE_FACTOR * EPS_POINT of the winner on
    the deciding coordinate without being the same orbit image.
    """
    images = space.canon_images(np.asarray(points, dtype=float))
    norms = np.sqrt((images * images).sum(axis=2, keepdims=True))
    images = images / norms

    m, k, _ = images.shape
    alive = np.ones((m, k), dtype=bool)
    for coord in range(4):
        col = np.where(alive, images[:, :, coord], -np.inf)
        best = col.max(axis=1, keepdims=True)
        alive &= col >= best - EPS_POINT

    ties = 0
    reps: list[Quaternion] = []
    for row in range(m):
        idx = np.flatnonzero(alive[row])
        if len(idx) == 1:
            winner = images[row, idx[0]]
        else:
            # Several images survived the slack filter; take the exact
            # lexicographic max among them and check how close the rest are.
            order = np.lexsort(images[row, idx].T[::-1])
            winner = images[row, idx[order[-1]]]
            others = images[row, idx[order[:-1]]]
            gap = np.abs(others - winner[None, :]).max(axis=1)
            near = (gap > EPS_POINT) & (gap <= TIE_FACTOR * EPS_POINT)
            if near.any():
                ties += 1
        reps.append(Quaternion(*(float(c) for c in winner)))
    if ties:
        warnings.warn(
            f"{ties} point(s) canonicalized through a near-tie", TieWarning,
            stacklevel=2,
        )
    return reps


def project(space: CosetSpace, w: Quaternion) -> Orbit:
    """The orbit of a unit quaternion: the projection map onto the quotient."""
    (rep,) = _canonical_reps(space, np.array([tuple(w.normalized())]))
    return Orbit(space, rep)


def orbit_distance(x: Orbit, y: Orbit) -> float:
    """Distance between orbits: min over the orbit of y of the distance to
    the representative of x."""
    images = x.space.canon_images(np.array([tuple(y.rep)]))[0]
    diffs = images - np.array(tuple(x.rep))[None, :]
    return float(np.sqrt((diffs * diffs).sum(axis=1)).min())


def product_from_representatives(
    space: CosetSpace, a: Quaternion, b: Quaternion
) -> list[Orbit]:
    """Product multiset computed from explicit representatives: the classes
    of a * g_i(b) over the group.  Agreement across every choice of
    representatives is exactly the well-definedness of the product."""
    images = space.act_images(np.array([tuple(b)]))[0]
    products = images @ left_matrix(a).T
    return [Orbit(space, rep) for rep in _canonical_reps(space, products)]


def orbit_product(x: Orbit, y: Orbit) -> list[Orbit]:
    """The n values of the product of two orbits, as a list (a multiset;
    order carries no meaning beyond determinism)."""
    return product_from_representatives(x.space, x.rep, y.rep)


def orbit_product_left(x: Orbit, y: Orbit, z: Orbit) -> list[Orbit]:
    """All n^2 values of (x y) z, concatenated over the n values of x y."""
    out: list[Orbit] = []
    for v in orbit_product(x, y):
        out.extend(orbit_product(v, z))
    return out


def orbit_product_right(x: Orbit, y: Orbit, z: Orbit) -> list[Orbit]:
    """All n^2 values of x (y z)."""
    out: list[Orbit] = []
    for v in orbit_product(y, z):
        out.extend(orbit_product(x, v))
    return out


def orbit_inverse(x: Orbit) -> Orbit:
    """The distinguished inverse: the orbit of the conjugate (equivalently
    the quaternion inverse, for unit representatives)."""
    return project(x.space, x.rep.conjugate())


def identity_orbit(space: CosetSpace) -> Orbit:
    """The orbit of 1, the two-sided identity of the product."""
    from .quaternion import ONE

    return project(space, ONE)


def _rep_array(orbits: list[Orbit]) -> np.ndarray:
    return np.array([tuple(o.rep) for o in orbits])


def match_multisets(
    a: list[Orbit], b: list[Orbit], tol: float
) -> tuple[bool, float]:
    """Decide multiset equality of two orbit lists up to `tol`.

    Returns (matched, deviation).  When matched, deviation is the largest
    distance inside any matched pair; when not, it is the best bound the
    failed strategy produced (always finite).

    Strategy: sort both by the rounded representative and pair positionally
    (the common case, since representatives are canonical); verify each pair
    with the true orbit distance.  If positional pairing fails, fall back to
    an optimal assignment on the full orbit-distance matrix.  A cheap sound
    rejection runs first: sorted per-coordinate values of the two rep sets
    must agree within tol, since any true matching permutes them.
    """
    if len(a) != len(b):
        raise SizeMismatch(f"multisets of size {len(a)} vs {len(b)}")
    if not a:
        return True, 0.0

    ra, rb = _rep_array(a), _rep_array(b)

    gap = 0.0
    for coord in range(4):
        ca = np.sort(ra[:, coord])
        cb = np.sort(rb[:, coord])
        gap = max(gap, float(np.abs(ca - cb).max()))
    if gap > 2.0 * tol:
        # Sound rejection: a genuine matching within tol moves every
        # coordinate by at most tol, so sorted columns differ by <= 2 tol.
        return False, gap

    def key(o: Orbit):
        return tuple(round(c, 12) + 0.0 for c in o.rep)

    sa = sorted(a, key=key)
    sb = sorted(b, key=key)
    worst = 0.0
    matched = True
    for oa, ob in zip(sa, sb):
        d = orbit_distance(oa, ob)
        worst = max(worst, d)
        if d > tol:
            matched = False
            break
    if matched:
        return True, worst

    # Positional pairing failed; find the optimal matching.  Distances are
    # orbit distances, i.e. min over canon images of either side.
    space = a[0].space
    images_b = space.canon_images(rb)  # (m, k, 4)
    m = len(a)
    dm = np.empty((m, m))
    for j in range(m):
        dm[:, j] = cdist(ra, images_b[j]).min(axis=1)
    rows, cols = linear_sum_assignment(dm)
    dev = float(dm[rows, cols].max())
    return dev <= tol, dev


def multiset_equal(a: list[Orbit], b: list[Orbit], tol: float) -> bool:
    return match_multisets(a, b, tol)[0]


class OrbitMultiset:
    """A product value: a list of orbits with multiset semantics and a
    helper to group coincident entries for display."""

    def __init__(self, orbits: Iterable[Orbit]):
        self.orbits = list(orbits)

    def __len__(self) -> int:
        return len(self.orbits)

    def __iter__(self) -> Iterator[Orbit]:
        return iter(self.orbits)

    def grouped(self, tol: float = EPS_POINT) -> list[tuple[Orbit, int]]:
        """Distinct orbits with multiplicities, in deterministic order."""
        groups: list[tuple[Orbit, int]] = []
        for o in sorted(
            self.orbits, key=lambda o: tuple(round(c, 12) + 0.0 for c in o.rep)
        ):
            for i, (rep, count) in enumerate(groups):
                if orbit_distance(rep, o) <= tol:
                    groups[i] = (rep, count + 1)
                    break
            else:
                groups.append((o, 1))
        return groups


def random_point(
    space: CosetSpace, rng: random.Random, max_tries: int = 64
) -> Orbit:
    """A random orbit whose sweep images are pairwise well separated, so
    canonicalization and matching are stable.  Rejection-samples until the
    minimum pairwise distance exceeds SEPARATION_FACTOR * EPS_POINT."""
    from .quaternion import random_unit

    floor = SEPARATION_FACTOR * EPS_POINT
    for _ in range(max_tries):
        q = random_unit(rng)
        images = space.canon_images(np.array([tuple(q)]))[0]
        d = cdist(images, images)
        np.fill_diagonal(d, np.inf)
        if float(d.min()) > floor:
            with warnings.catch_warnings():
                warnings.simplefilter("error", TieWarning)
                try:
                    return project(space, q)
                except TieWarning:
                    continue
    raise RuntimeError(
        f"could not sample a well-separated point of {space.label} "
        f"in {max_tries} tries"
    )
