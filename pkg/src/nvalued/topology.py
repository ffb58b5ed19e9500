"""Evidence for the shape of the quotients: which groups admit solutions of
the antipodal conjugation equation, preservation of the real part by the
conjugation action (the suspension structure of the quaternion quotient),
the branching data of the induced action on the 2-sphere, and the resulting
prediction of the quotient's homeomorphism type.

The prediction itself follows a parity criterion: conjugation can carry
some point to its negative exactly when the group contains a half-turn,
which happens exactly when the group order is even.  Three independent
signals (order parity, half-turn search, antipodal solvability) are
computed separately and must agree; `classify` refuses to produce a report
when they do not.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .quaternion import (
    Quaternion,
    Vec3,
    conj_matrix,
    random_unit,
    rotation_of,
)
from .rotgroups import GroupSpec, RotationGroup, build_group, has_half_turn
from .tolerances import EPS_POINT, TOL_RE


class IdentityViolation(RuntimeError):
    """The branching identity failed; the group data is inconsistent."""


class ConsistencyFailure(RuntimeError):
    """The parity signals disagree; refusing to emit a classification."""


@dataclass(frozen=True)
class AntipodalSolutions:
    """Solution set of  q x q^-1 = -x  over unit imaginary quaternions.

    Solvable exactly when q covers a half-turn; the solutions then form the
    unit circle orthogonal to the rotation axis inside the imaginary part.
    """

    solvable: bool
    axis: Optional[Vec3]
    description: str

    def solution_circle(self, count: int = 32) -> list[Quaternion]:
        """`count` evenly spaced solutions on the circle."""
        if not self.solvable or self.axis is None:
            raise ValueError("the equation has no solutions for this rotation")
        a = self.axis
        seed = Vec3(1.0, 0.0, 0.0) if abs(a.x) < 0.9 else Vec3(0.0, 1.0, 0.0)
        u = Vec3(*(s - a.dot(seed) * c for s, c in zip(seed, a))).normalized()
        v = a.cross(u)
        out = []
        for k in range(count):
            t = 2.0 * math.pi * k / count
            c, s = math.cos(t), math.sin(t)
            out.append(
                Quaternion(0.0, c * u.x + s * v.x, c * u.y + s * v.y, c * u.z + s * v.z)
            )
        return out


def solve_antipodal(q: Quaternion) -> AntipodalSolutions:
    """Decide solvability of q x q^-1 = -x in unit imaginary quaternions.

    A solution must be imaginary (the real part would flip sign) and the
    conjugation rotates the imaginary space by the rotation angle of q, so
    a solution exists exactly for rotation angle pi: the half-turn case.
    """
    axis, angle = rotation_of(q)
    if axis is not None and abs(angle - math.pi) <= EPS_POINT:
        return AntipodalSolutions(
            solvable=True,
            axis=axis,
            description="unit circle of imaginary quaternions orthogonal to the axis",
        )
    return AntipodalSolutions(
        solvable=False,
        axis=None,
        description="no solutions: the rotation is not a half-turn",
    )


def tau_has_fixed_points(group: RotationGroup) -> bool:
    """Whether the involution induced by x -> -x on the quaternion quotient
    has a fixed point: some lift must conjugate some x to -x."""
    return any(solve_antipodal(q).solvable for q in group.cover)


@dataclass(frozen=True)
class SuspensionReport:
    """Outcome of the real-part preservation check."""

    group: str
    samples: int
    max_deviation: float
    poles_fixed: bool

    @property
    def passed(self) -> bool:
        return self.poles_fixed and self.max_deviation < TOL_RE


def check_suspension(
    group: RotationGroup, samples: int = 1000, seed: int = 0
) -> SuspensionReport:
    """Conjugation by every cover element must preserve the real part of
    random unit quaternions and fix the two poles +-1 outright, which is
    what stratifies the quotient into levels of the real part."""
    rng = random.Random(seed)
    points = np.array([tuple(random_unit(rng)) for _ in range(samples)])
    mats = np.stack([conj_matrix(q) for q in group.cover])
    images = np.einsum("kij,mj->mki", mats, points)
    dev = float(np.abs(images[:, :, 0] - points[:, None, 0]).max())

    poles = np.array([(1.0, 0.0, 0.0, 0.0), (-1.0, 0.0, 0.0, 0.0)])
    pole_images = np.einsum("kij,mj->mki", mats, poles)
    pole_dev = float(np.abs(pole_images - poles[:, None, :]).max())

    return SuspensionReport(
        group=group.spec.label,
        samples=samples,
        max_deviation=max(dev, pole_dev),
        poles_fixed=pole_dev < TOL_RE,
    )


@dataclass(frozen=True)
class SphereOrbit:
    """One orbit of axis endpoints on the 2-sphere, with the order of the
    stabilizer of each of its points."""

    points: tuple[Vec3, ...]
    stabilizer_order: int


@dataclass(frozen=True)
class SingularOrbitData:
    """All singular orbits of the induced action on the 2-sphere."""

    orbits: tuple[SphereOrbit, ...]
    group_order: int

    @property
    def signature(self) -> tuple[int, ...]:
        return tuple(sorted(o.stabilizer_order for o in self.orbits))


def _rotate_point(g: Quaternion, p: Vec3) -> Vec3:
    from .quaternion import conj_action

    q = conj_action(g, Quaternion(0.0, p.x, p.y, p.z))
    return Vec3(q.x, q.y, q.z).normalized()


def singular_orbits(group: RotationGroup) -> SingularOrbitData:
    """Brute-force branching data: the axis endpoints of every nontrivial
    rotation, grouped into orbits of the group's action on the sphere,
    each with its stabilizer order.

    Sanity-checks orbit-stabilizer consistency (|orbit| * stabilizer =
    group order, identical stabilizer across an orbit) and raises
    IdentityViolation when the data does not cohere.
    """
    n = len(group)
    points: list[Vec3] = []
    for i, g in enumerate(group.elements):
        if i == group.identity_index:
            continue
        axis, _ = rotation_of(g)
        if axis is None:
            raise IdentityViolation(f"non-identity element of {group.spec} has no axis")
        for p in (axis, -axis):
            if not any(_close(p, s) for s in points):
                points.append(p)

    def stabilizer_order(p: Vec3) -> int:
        return sum(1 for g in group.elements if _close(_rotate_point(g, p), p))

    remaining = list(points)
    orbits: list[SphereOrbit] = []
    while remaining:
        start = remaining.pop(0)
        orbit = [start]
        frontier = [start]
        while frontier:
            fresh = []
            for p in frontier:
                for g in group.elements:
                    q = _rotate_point(g, p)
                    if not any(_close(q, s) for s in orbit):
                        if len(orbit) >= n:
                            # a genuine orbit cannot outgrow the group; a
                            # non-closed element set walks off densely
                            raise IdentityViolation(
                                f"{group.spec}: axis orbit exceeded the group order"
                            )
                        orbit.append(q)
                        fresh.append(q)
            frontier = fresh
        remaining = [p for p in remaining if not any(_close(p, s) for s in orbit)]

        stabs = {stabilizer_order(p) for p in orbit}
        if len(stabs) != 1:
            raise IdentityViolation(
                f"{group.spec}: stabilizer orders differ along one orbit: {stabs}"
            )
        nu = stabs.pop()
        if nu < 2 or n % nu != 0 or len(orbit) * nu != n:
            raise IdentityViolation(
                f"{group.spec}: orbit of size {len(orbit)} with stabilizer {nu} "
                f"violates orbit-stabilizer for order {n}"
            )
        orbit.sort(key=lambda p: tuple(round(c, 12) + 0.0 for c in p))
        orbits.append(SphereOrbit(tuple(orbit), nu))

    orbits.sort(
        key=lambda o: (
            o.stabilizer_order,
            tuple(round(c, 12) + 0.0 for c in o.points[0]),
        )
    )
    return SingularOrbitData(tuple(orbits), n)


def _close(p: Vec3, q: Vec3) -> bool:
    return max(abs(a - b) for a, b in zip(p, q)) <= EPS_POINT


def riemann_hurwitz_check(group: RotationGroup) -> bool:
    """Exact branching identity for the quotient of the 2-sphere:

        2 = n * (2 - sum_i (1 - 1/nu_i))

    over the singular orbits, in integer arithmetic.  This pins the Euler
    characteristic of the sphere quotient to 2, i.e. genus zero.  Raises
    IdentityViolation on failure, which would mean the enumerated group is
    not acting the way a rotation group must.
    """
    data = singular_orbits(group)
    n = Fraction(len(group))
    total = sum((1 - Fraction(1, o.stabilizer_order) for o in data.orbits), Fraction(0))
    rhs = n * (2 - total)
    if rhs != 2:
        raise IdentityViolation(
            f"{group.spec}: branching identity gives {rhs}, expected 2 "
            f"(signature {data.signature})"
        )
    return True


@dataclass(frozen=True)
class Evidence:
    suspension: bool
    riemann_hurwitz: bool
    parity_consistent: bool


@dataclass(frozen=True)
class ClassificationReport:
    """Predicted homeomorphism type of one quotient, with the checks that
    the prediction rests on."""

    base: "Base"
    spec: GroupSpec
    n: int
    parity: str
    tau_fixed_points: bool
    predicted_space: str
    evidence: Evidence
    suspension_report: SuspensionReport

    def to_json_dict(self) -> dict:
        return {
            "base": self.base.value,
            "family": self.spec.label,
            "n": self.n,
            "parity": self.parity,
            "tau_fixed_points": self.tau_fixed_points,
            "predicted_space": self.predicted_space,
            "evidence": {
                "suspension": self.evidence.suspension,
                "riemann_hurwitz": self.evidence.riemann_hurwitz,
                "parity_consistent": self.evidence.parity_consistent,
            },
        }


def classify(
    base: "Base", spec: GroupSpec, samples: int = 1000, seed: int = 0
) -> ClassificationReport:
    """Predict the homeomorphism type of the quotient of `base` by the
    group and assemble the supporting evidence.

    The quaternion quotient is a sphere for every group.  The rotation
    quotient is a sphere when the group order is even and projective
    3-space when it is odd; evenness is cross-checked against the
    half-turn search and the antipodal solvability scan, and disagreement
    raises ConsistencyFailure instead of guessing.
    """
    from .coset import Base  # local import: coset depends on rotgroups only

    group = build_group(spec)
    n = len(group)
    even = n % 2 == 0
    half_turn = has_half_turn(group)
    tau = tau_has_fixed_points(group)
    if not (tau == half_turn == even):
        raise ConsistencyFailure(
            f"{spec}: parity signals disagree "
            f"(order even: {even}, half-turn: {half_turn}, antipodal: {tau})"
        )

    susp = check_suspension(group, samples=samples, seed=seed)
    rh = riemann_hurwitz_check(group)

    if base is Base.SP1:
        predicted = "S3"
    else:
        predicted = "S3" if even else "RP3"

    return ClassificationReport(
        base=base,
        spec=spec,
        n=n,
        parity="even" if even else "odd",
        tau_fixed_points=tau,
        predicted_space=predicted,
        evidence=Evidence(
            suspension=susp.passed,
            riemann_hurwitz=rh,
            parity_consistent=True,
        ),
        suspension_report=susp,
    )
