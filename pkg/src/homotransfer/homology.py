"""Exact homology of a complex, piece by piece."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Tuple

from . import linalg
from .graded import Bidegree, Complex


@dataclass(frozen=True)
class HomologyPiece:
    bidegree: Bidegree
    representatives: Tuple[Dict[int, object], ...]
    betti: int


def _matrix(C: Complex, src: List[int], tgt: List[int]) -> list:
    """Rows indexed by ``tgt``, columns by ``src``: the block of ``d``."""
    f = C.field
    pos = {j: r for r, j in enumerate(tgt)}
    M = [[f.zero] * len(src) for _ in tgt]
    for c, i in enumerate(src):
        for j, x in C.d.column(i).items():
            M[pos[j]][c] = x
    return M


class Homology:
    """Cycles, boundaries and chosen class representatives of ``C``."""

    def __init__(self, C: Complex):
        self.complex = C
        f = C.field
        pieces = C.space.pieces()
        self._boundaries: Dict[Bidegree, list] = {}
        self._pieces: Dict[Bidegree, HomologyPiece] = {}
        for (p, n), idx in sorted(pieces.items()):
            nxt = C.space.piece(p + 1, n)
            prev = C.space.piece(p - 1, n)
            Z = linalg.nullspace(_matrix(C, idx, nxt), len(idx), f) if nxt else [
                [f.one if a == b else f.zero for a in range(len(idx))] for b in range(len(idx))
            ]
            if prev:
                img = linalg.transpose(_matrix(C, prev, idx), len(prev))
                R, piv = linalg.rref(img, f)
                B = R[: len(piv)]
            else:
                B = []
            self._boundaries[(p, n)] = B
            reps = []
            span = list(B)
            for z in Z:
                if not linalg.in_span(span, z, f):
                    span.append(z)
                    reps.append(z)
            rep_vecs = tuple({idx[k]: x for k, x in enumerate(z) if x} for z in reps)
            self._pieces[(p, n)] = HomologyPiece((p, n), rep_vecs, len(reps))

    def pieces(self) -> List[HomologyPiece]:
        return [self._pieces[k] for k in sorted(self._pieces)]

    def betti(self, p: int, n: int = 0) -> int:
        piece = self._pieces.get((p, n))
        return piece.betti if piece else 0

    def betti_numbers(self) -> Dict[Bidegree, int]:
        return {k: v.betti for k, v in sorted(self._pieces.items()) if v.betti}

    def _split(self, vec: Mapping[int, object]) -> Dict[Bidegree, Dict[int, object]]:
        sp = self.complex.space
        out: Dict[Bidegree, Dict[int, object]] = {}
        for i, c in vec.items():
            if c:
                out.setdefault(sp.bidegree(i), {})[i] = c
        return out

    def is_cycle(self, vec: Mapping[int, object]) -> bool:
        return not self.complex.d(vec)

    def class_of(self, vec: Mapping[int, object]) -> Dict[Bidegree, tuple]:
        """Coordinates of the class of a cycle, per bidegree, in the chosen basis."""
        if not self.is_cycle(vec):
            raise ValueError("vector is not a cycle")
        f = self.complex.field
        out = {}
        for bd, part in self._split(vec).items():
            idx = self.complex.space.piece(*bd)
            piece = self._pieces[bd]
            cols = [[rep.get(i, f.zero) for i in idx] for rep in piece.representatives]
            cols += self._boundaries[bd]
            A = linalg.transpose(cols, len(idx)) if cols else []
            b = [part.get(i, f.zero) for i in idx]
            x = linalg.solve(A, b, f)
            if x is None:  # pragma: no cover - cycles always decompose
                raise ArithmeticError("cycle not in span of representatives and boundaries")
            coords = tuple(x[: piece.betti])
            if any(coords):
                out[bd] = coords
        return out

    def is_boundary(self, vec: Mapping[int, object]) -> bool:
        return self.is_cycle(vec) and not self.class_of(vec)

    def preimage(self, vec: Mapping[int, object]) -> Dict[int, object] | None:
        """Some ``u`` with ``d u = vec``, or ``None`` when ``vec`` is no boundary."""
        C = self.complex
        f = C.field
        out: Dict[int, object] = {}
        for (p, n), part in self._split(vec).items():
            idx = C.space.piece(p, n)
            prev = C.space.piece(p - 1, n)
            if not prev:
                return None
            A = _matrix(C, prev, idx)
            x = linalg.solve(A, [part.get(i, f.zero) for i in idx], f)
            if x is None:
                return None
            out.update({prev[k]: c for k, c in enumerate(x) if c})
        return out


def homology_basis(C: Complex) -> List[Tuple[Bidegree, Tuple[Dict[int, object], ...], int]]:
    """``(bidegree, representative cycles, betti number)`` for every nonzero piece."""
    return [(pc.bidegree, pc.representatives, pc.betti) for pc in Homology(C).pieces() if pc.betti]
