"""Face singularities against the principal A-determinant and closed-form discriminants."""

from __future__ import annotations

import numpy as np

from reflexive_mldeg.builders import cross, cube, resolve_builtin
from reflexive_mldeg.discriminant import (
    DISCRIMINANTS,
    closed_form_discriminant,
    discriminant_scale,
    has_toric_singularity,
    principal_A_determinant_vanishes,
    vanishing_root,
    variable_exponent,
)
from reflexive_mldeg.lattice import Face, Polytope
from reflexive_mldeg.score import design_matrix
from reflexive_mldeg.suites.base import BaseSuite, row
from reflexive_mldeg.suites.polygons import POLYGON_TABLE
from reflexive_mldeg.types import SuiteRow

#: Drops at the standard scaling outside the polygon table.
FAMILY_DROPS: dict[str, int] = {
    "cube-2": 4, "cube-3": 40, "cross-2": 0, "cross-3": 0, "Q-2": 0, "Q-3": 0,
}

#: discriminant name -> (builtin, variable solved for to force vanishing)
NAMED_CASES: dict[str, tuple[str, str]] = {
    "P0": ("KS0", "c111"),
    "P132-full": ("KS132", "c211"),
    "P132-gamma0": ("KS132", "c112"),
    "cross2": ("cross-2", "c21"),
}

SAMPLES = 25
_VANISHING_TOL = 1e-8


def _polytope(name: str) -> Polytope:
    families = {"cube-2": cube(2), "cube-3": cube(3), "cross-2": cross(2), "cross-3": cross(3)}
    return families[name] if name in families else resolve_builtin(name)


def named_face(name: str) -> Face:
    """The face, in design coordinates, whose polynomial the named discriminant describes."""
    builtin, _ = NAMED_CASES[name]
    design = design_matrix(_polytope(builtin))
    wanted = {variable_exponent(v) for v in DISCRIMINANTS[name][0]}
    for face in design.polytope.faces:
        if set(face.lattice_points) == wanted:
            return face
    raise LookupError(f"no face of {builtin} carries the lattice points of {name}")


class DiscriminantSuite(BaseSuite):
    suite_key = "discriminants"
    name = "Principal A-determinant"
    description = (
        "Face-singularity verdicts match the known drops, and the closed-form "
        "discriminants agree with the numerical witness search."
    )

    def check(self) -> list[SuiteRow]:
        drops = {label: mldeg != deg for label, (mldeg, deg) in POLYGON_TABLE.items()}
        drops.update({label: drop > 0 for label, drop in FAMILY_DROPS.items()})
        rows = []
        for label, has_drop in drops.items():
            vanishes, _ = principal_A_determinant_vanishes(_polytope(label), None, self.tracker)
            rows.append(row(f"{label} E_A(1) = 0", has_drop, vanishes))
        for name in NAMED_CASES:
            rows.append(row(f"{name} agrees on {SAMPLES} scalings", SAMPLES, self._agreement(name)))
        return rows

    def _agreement(self, name: str) -> int:
        _, solve_for = NAMED_CASES[name]
        variables = DISCRIMINANTS[name][0]
        face = named_face(name)
        rng = np.random.default_rng(self.tracker["seed"] + 7)
        agree = 0
        for i in range(SAMPLES):
            values = {v: complex(rng.normal(), rng.normal()) for v in variables}
            if i % 2 == 1:
                values[solve_for] = vanishing_root(name, values, solve_for)[0]
            delta = closed_form_discriminant(name, values)
            vanishes = abs(delta) <= _VANISHING_TOL * discriminant_scale(name, values)
            weights = [values[f"c{''.join(str(x) for x in p)}"] for p in face.lattice_points]
            agree += vanishes == has_toric_singularity(face, weights, self.tracker)
        return agree
