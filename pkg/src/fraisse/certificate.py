"""
Irreducibility certificates.

A certificate lists, for every generating pair ({i}, tau) with i not in tau,
an element y of the top face inside the image of A_{i} and outside the image
of A_tau. Any ordered pair sigma ⊄ tau is then witnessed through the least
i in sigma minus tau, since the image of A_{i} lies inside the image of A_sigma.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

from cubes.validators import is_reducible
from fraisse.state import RunState
from models.cube import CubeDiagram, face_label, face_members, faces, is_subface, ordered_pairs_not_contained
from models.types import Document, ElementId, Face, FacePair


class CertificateStatus(str, Enum):
    PASS = "PASS"
    FAILED = "FAILED"


@dataclass(frozen=True)
class PairWitness:
    """y witnesses the pair (sigma, tau); it was born at ``birth`` through face {via}."""

    sigma: Face
    tau: Face
    element: ElementId
    via: int
    birth: int

    def to_document(self) -> Document:
        return {
            "sigma": self.sigma,
            "tau": self.tau,
            "pair": f"{face_label(self.sigma)} ⊄ {face_label(self.tau)}",
            "element": self.element,
            "via": self.via,
            "birth": self.birth,
        }


def generating_pairs(k: int) -> List[FacePair]:
    """Pairs ({i}, tau) with i not in tau, in face order."""
    return [(1 << i, tau) for i in range(k) for tau in faces(k) if not tau >> i & 1]


@dataclass(frozen=True)
class Certificate:
    """
    Outcome of ``certify_irreducible``.

    Args:
        k (int): Cube dimension.
        stage (int): Stage the certificate refers to.
        status (CertificateStatus): PASS iff every generating pair is witnessed.
        witnesses (tuple[PairWitness, ...]): One per witnessed generating pair.
        failed_pair (tuple[int, int] | None): First pair without a witness.
    """

    k: int
    stage: int
    status: CertificateStatus
    witnesses: Tuple[PairWitness, ...]
    failed_pair: Optional[FacePair] = None

    @property
    def passed(self) -> bool:
        return self.status is CertificateStatus.PASS

    def witness_for(self, sigma: Face, tau: Face) -> Optional[PairWitness]:
        """Witness of any ordered pair sigma ⊄ tau, derived from a generating pair."""
        if is_subface(sigma, tau):
            return None
        i = face_members(sigma & ~tau)[0]
        for w in self.witnesses:
            if w.sigma == 1 << i and w.tau == tau:
                return PairWitness(sigma, tau, w.element, i, w.birth)
        return None

    def verify(self, cube: CubeDiagram) -> List[FacePair]:
        """Re-check every ordered pair by membership; returns the pairs that fail."""
        failing = []
        for sigma, tau in ordered_pairs_not_contained(self.k):
            w = self.witness_for(sigma, tau)
            if w is None or w.element not in cube.image(sigma) or w.element in cube.image(tau):
                failing.append((sigma, tau))
        return failing

    def to_document(self) -> Document:
        return {
            "k": self.k,
            "stage": self.stage,
            "status": self.status.value,
            "witnesses": [w.to_document() for w in self.witnesses],
            "failed_pair": list(self.failed_pair) if self.failed_pair else None,
        }


def certify_irreducible(state: RunState) -> Certificate:
    """
    Build the irreducibility certificate of the current stage from the witness chains.

    Returns:
        Certificate: FAILED names the first unwitnessed generating pair, or the
            pair ``is_reducible`` finds if the chains disagree with the cube.
    """
    cube = state.cube
    witnesses = []
    failed = None
    for sigma, tau in generating_pairs(cube.k):
        chain = state.chain(sigma, tau)
        if chain is None or chain.last_stage != state.stage or not chain.holds_at(cube):
            failed = failed or (sigma, tau)
            continue
        witnesses.append(PairWitness(sigma, tau, chain.y, face_members(sigma)[0], chain.birth))
    if failed is None:
        failed = is_reducible(cube)
    status = CertificateStatus.PASS if failed is None else CertificateStatus.FAILED
    return Certificate(cube.k, state.stage, status, tuple(witnesses), failed)
