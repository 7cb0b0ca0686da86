"""
Validators for cube diagrams and disjoint embeddings.

All checks walk faces in the fixed face order, so the first reported witness
is deterministic.
"""

import logging
from typing import TYPE_CHECKING

from models.cube import (
    CubeDiagram,
    CubeShape,
    CubeShapeError,
    DisjointEmbedding,
    face_label,
    face_order_key,
    is_subface,
    ordered_pairs_not_contained,
    subfaces,
)
from models.reports import ReportBuilder, ValidationReport
from models.types import FacePair
from structures.embeddings import embeds, is_embedding

if TYPE_CHECKING:
    from amalgamation.strategy import AmalgamationStrategy

logger = logging.getLogger(__name__)


def _structure_report(c: CubeDiagram) -> ReportBuilder:
    report = ReportBuilder()
    present = c.faces()
    for sigma in present:
        if sigma not in c.structures:
            report.structural("missing-face", f"face {face_label(sigma)} has no structure", sigma)
    for sigma in c.structures:
        if sigma not in present:
            report.structural(
                "extra-face", f"face {face_label(sigma)} does not belong to a {c.shape.value} cube", sigma
            )
    if report.structural_errors:
        return report
    for sigma in present:
        for tau in present:
            if is_subface(sigma, tau) and (sigma, tau) not in c.maps:
                report.structural(
                    "missing-map", f"no map {face_label(sigma)} -> {face_label(tau)}", (sigma, tau)
                )
    return report


def validate_cube(c: CubeDiagram) -> ValidationReport:
    """
    Check that a cube diagram is a functor.

    Every map must be an embedding, f^sigma_sigma the identity, and
    f^tau_rho ∘ f^sigma_tau = f^sigma_rho for every sigma ⊆ tau ⊆ rho.

    Args:
        c (CubeDiagram): The diagram.

    Returns:
        ValidationReport: Violations name the offending face pair or triple;
            missing faces and maps are structural errors.
    """
    report = _structure_report(c)
    if report.structural_errors:
        return report.build()

    present = c.faces()
    for sigma in present:
        for tau in present:
            if not is_subface(sigma, tau):
                continue
            f = c.maps[(sigma, tau)]
            if sigma == tau:
                if not f.is_identity() or set(f.mapping) != set(c[sigma].elements):
                    report.violation(
                        "identity",
                        f"f^{face_label(sigma)}_{face_label(sigma)} is not the identity",
                        (sigma, sigma),
                    )
            elif not is_embedding(c[sigma], c[tau], f.mapping):
                report.violation(
                    "embedding",
                    f"f^{face_label(sigma)}_{face_label(tau)} is not an embedding",
                    (sigma, tau),
                )
    if report.violations:
        return report.build()

    for rho in present:
        for tau in subfaces(rho):
            for sigma in subfaces(tau):
                composite = c.maps[(sigma, tau)].then(c.maps[(tau, rho)])
                if composite.mapping != c.maps[(sigma, rho)].mapping:
                    report.violation(
                        "functoriality",
                        f"f^{face_label(tau)}_{face_label(rho)} ∘ f^{face_label(sigma)}_{face_label(tau)}"
                        f" != f^{face_label(sigma)}_{face_label(rho)}",
                        (sigma, tau, rho),
                    )
    return report.build()


def validate_faces(c: CubeDiagram, strategy: "AmalgamationStrategy") -> ValidationReport:
    """
    Check every face structure against a family before the diagram is examined.

    Args:
        c (CubeDiagram): The diagram.
        strategy (AmalgamationStrategy): The family the faces must belong to.

    Returns:
        ValidationReport: Failures carry the face as their first witness; a
            face of the wrong arity is a structural error.
    """
    report = ReportBuilder()
    for sigma in sorted(c.structures, key=face_order_key):
        s = c[sigma]
        label = face_label(sigma)
        if s.arity != strategy.arity:
            report.structural(
                "arity", f"face {label} has arity {s.arity}, {strategy.name} needs {strategy.arity}", sigma
            )
            continue
        face_report = strategy.validate(s)
        for v in face_report.structural_errors:
            report.structural(v.rule, f"face {label}: {v.message}", sigma, *v.witness)
        for v in face_report.violations:
            report.violation(v.rule, f"face {label}: {v.message}", sigma, *v.witness)
    return report.build()


def validate_disjoint(c: CubeDiagram) -> ValidationReport:
    """
    Check the disjointness condition of a cube.

    For every pair of faces whose union is present (for BOUNDARY cubes: a
    proper subset of [k]), f^sigma(A_sigma) ∩ f^tau(A_tau) must equal
    f^{sigma∩tau}(A_{sigma∩tau}) inside A_{sigma∪tau}.

    Args:
        c (CubeDiagram): The diagram, already passing ``validate_cube``.

    Returns:
        ValidationReport: Violations name the pair (sigma, tau).
    """
    base = validate_cube(c)
    if not base.ok:
        return base
    report = ReportBuilder()
    present = set(c.faces())
    ordered = sorted(present, key=face_order_key)
    for i, sigma in enumerate(ordered):
        for tau in ordered[i + 1 :]:
            union = sigma | tau
            if union not in present:
                continue
            meet = sigma & tau
            overlap = c.image(sigma, union) & c.image(tau, union)
            if overlap != c.image(meet, union):
                report.violation(
                    "disjointness",
                    f"images of {face_label(sigma)} and {face_label(tau)} in {face_label(union)}"
                    f" meet outside the image of {face_label(meet)}",
                    (sigma, tau),
                )
    return report.build()


def is_reducible(c: CubeDiagram) -> FacePair | None:
    """
    Search for a pair sigma ⊄ tau whose top images are contained in each other.

    Args:
        c (CubeDiagram): A FULL cube.

    Returns:
        tuple[int, int] | None: The first pair (sigma, tau) in face order with
            f^sigma(A_sigma) ⊆ f^tau(A_tau) inside the top face, or None when the
            cube is irreducible.

    Raises:
        CubeShapeError: If the cube has no top face.
    """
    if c.shape is not CubeShape.FULL:
        raise CubeShapeError("reducibility needs the top face; got a boundary cube")
    for sigma, tau in ordered_pairs_not_contained(c.k):
        if c.image(sigma) <= c.image(tau):
            logger.debug("cube reducible at (%s, %s)", face_label(sigma), face_label(tau))
            return sigma, tau
    return None


def validate_disjoint_embedding(e: DisjointEmbedding) -> ValidationReport:
    """
    Check naturality and mixed disjointness of a family h_sigma: A_sigma → B_sigma.

    Args:
        e (DisjointEmbedding): The family, between two cubes of the same k and shape.

    Returns:
        ValidationReport: Violations name (sigma, tau); shape or k mismatch and
            missing components are structural errors.
    """
    report = ReportBuilder()
    a, b = e.source, e.target
    if a.k != b.k or a.shape != b.shape:
        report.structural(
            "shape", f"cannot embed a {a.shape.value} {a.k}-cube into a {b.shape.value} {b.k}-cube"
        )
        return report.build()
    present = a.faces()
    for sigma in present:
        if sigma not in e.maps:
            report.structural("missing-map", f"no h_{face_label(sigma)}", sigma)
        elif not is_embedding(a[sigma], b[sigma], e.maps[sigma].mapping):
            report.violation("embedding", f"h_{face_label(sigma)} is not an embedding", (sigma, sigma))
    if report.structural_errors or report.violations:
        return report.build()

    for sigma in present:
        for tau in present:
            if not is_subface(sigma, tau):
                continue
            left = a.maps[(sigma, tau)].then(e.maps[tau])
            right = e.maps[sigma].then(b.maps[(sigma, tau)])
            if left.mapping != right.mapping:
                report.violation(
                    "naturality",
                    f"h_{face_label(tau)} ∘ f^{face_label(sigma)}_{face_label(tau)}"
                    f" != g^{face_label(sigma)}_{face_label(tau)} ∘ h_{face_label(sigma)}",
                    (sigma, tau),
                )

    present_set = set(present)
    for sigma in present:
        for tau in present:
            union = sigma | tau
            if union not in present_set:
                continue
            h = e.maps[union]
            left = h.image(a.image(sigma, union))
            right = b.image(tau, union)
            expected = h.image(a.image(sigma & tau, union))
            if left & right != expected:
                report.violation(
                    "mixed-disjointness",
                    f"new part of {face_label(tau)} meets the old image of {face_label(sigma)}"
                    f" in {face_label(union)}",
                    (sigma, tau),
                )
    return report.build()


def labeled_containment_agrees(c: CubeDiagram) -> ValidationReport:
    """
    Compare embedding existence with image containment on a labelled FULL cube.

    For labelled faces an embedding A_sigma → A_tau, if any, is unique and
    commutes with the maps into the top face, so it exists exactly when the
    top image of A_sigma lies inside the top image of A_tau.

    Returns:
        ValidationReport: One violation per ordered pair where the two sides disagree.
    """
    report = ReportBuilder()
    top = c.top
    for sigma in c.faces():
        for tau in c.faces():
            if sigma == tau:
                continue
            f = embeds(c[sigma], c[tau])
            contained = c.image(sigma) <= c.image(tau)
            if (f is not None) != contained:
                report.violation(
                    "labeled-rigidity",
                    f"embedding {face_label(sigma)} -> {face_label(tau)} "
                    f"{'exists' if f else 'missing'} but containment is {contained}",
                    (sigma, tau),
                )
            elif f is not None and f.then(c.maps[(tau, top)]).mapping != c.maps[(sigma, top)].mapping:
                report.violation(
                    "labeled-rigidity",
                    f"embedding {face_label(sigma)} -> {face_label(tau)} does not commute with the top maps",
                    (sigma, tau),
                )
    return report.build()
