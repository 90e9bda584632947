"""Sparse exact linear algebra over a cyclotomic field (incremental RREF)."""

from __future__ import annotations

from typing import Hashable, Iterable

from .errors import VerificationError
from .scalar import CyclotomicField


class LinearSystem:
    """Accumulates equations sum_v c_v * v = rhs and keeps them reduced."""

    def __init__(self, field: CyclotomicField):
        self.field = field
        self.pivots: dict[Hashable, tuple[dict, object]] = {}
        self.variables: set = set()
        self.inconsistent = False

    def _reduce(self, row: dict, rhs):
        row = dict(row)
        for v in [v for v in row if v in self.pivots]:
            c = row.get(v)
            if not c:
                continue
            prow, prhs = self.pivots[v]
            for w, d in prow.items():
                nv = row.get(w, self.field.zero) - c * d
                if nv:
                    row[w] = nv
                else:
                    row.pop(w, None)
            rhs = rhs - c * prhs
        return row, rhs

    def add(self, row: dict, rhs=0) -> bool:
        """Add an equation; returns True if it increased the rank."""
        row = {v: self.field.rational(c) for v, c in row.items() if c}
        rhs = self.field.rational(rhs)
        self.variables.update(row)
        row, rhs = self._reduce(row, rhs)
        if not row:
            if rhs:
                self.inconsistent = True
            return False
        piv = min(row)
        inv = row[piv].inverse()
        row = {w: d * inv for w, d in row.items()}
        rhs = rhs * inv
        # keep existing pivot rows free of the new pivot variable
        for v, (prow, prhs) in list(self.pivots.items()):
            c = prow.get(piv)
            if c:
                nrow = dict(prow)
                for w, d in row.items():
                    nv = nrow.get(w, self.field.zero) - c * d
                    if nv:
                        nrow[w] = nv
                    else:
                        nrow.pop(w, None)
                self.pivots[v] = (nrow, prhs - c * rhs)
        self.pivots[piv] = (row, rhs)
        return True

    def consistent_with(self, row: dict, rhs=0) -> bool:
        """Whether adding the equation would keep the system solvable."""
        row = {v: self.field.rational(c) for v, c in row.items() if c}
        row, rhs = self._reduce(row, self.field.rational(rhs))
        return bool(row) or not rhs

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solution(self) -> tuple[dict, list[dict]]:
        """Particular solution (free variables set to 0) and a nullspace basis."""
        if self.inconsistent:
            raise VerificationError("linear system is inconsistent")
        part = {}
        for v, (row, rhs) in self.pivots.items():
            if rhs:
                part[v] = rhs
        free = sorted(self.variables - set(self.pivots))
        null = []
        for f in free:
            vec = {f: self.field.one}
            for v, (row, _) in self.pivots.items():
                c = row.get(f)
                if c:
                    vec[v] = -c
            null.append(vec)
        return part, null


def solve(equations: Iterable[tuple[dict, object]], field: CyclotomicField,
          variables: Iterable = ()) -> tuple[dict, list[dict]]:
    sys = LinearSystem(field)
    sys.variables.update(variables)
    for row, rhs in equations:
        sys.add(row, rhs)
    return sys.solution()


def rank(rows: Iterable[dict], field: CyclotomicField) -> int:
    sys = LinearSystem(field)
    for row in rows:
        sys.add(row, 0)
    return sys.rank
