"""Exact linear algebra over scalar fields.

Vectors are sparse dicts mapping hashable basis keys to Scalars.  A
SpanBasis keeps a fully row-reduced generating set (each row has
coefficient 1 at its pivot and 0 at every other row's pivot) together
with the expression of each row in terms of the original generators,
so membership tests also produce exact coordinates.  Elimination uses
field division; the scalars are gcd-reduced fractions, so every
intermediate entry is in lowest terms and the computation is exact.
"""

from __future__ import annotations

from .scalars import Scalar, ScalarField


def _clean(vec: dict) -> dict:
    return {k: v for k, v in vec.items() if not v.is_zero}


class SpanBasis:
    """Row-reduced span of a list of sparse vectors over a scalar field."""

    def __init__(self, field: ScalarField, generators=()):
        self.field = field
        self.n_generators = 0
        # rows: (pivot_key, vector with pivot coefficient 1, combo over generators)
        self.rows: list[tuple[object, dict, list[Scalar]]] = []
        for g in generators:
            self.add(g)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, vec: dict) -> tuple[dict, list[Scalar]]:
        """Kill every pivot entry; return the residual and its row combo.

        Rows are kept mutually reduced, so one pass in any order leaves
        the residual with zeros at all pivots.
        """
        vec = dict(vec)
        combo = [self.field.zero] * self.n_generators
        for pivot, row, row_combo in self.rows:
            c = vec.get(pivot)
            if c is None or c.is_zero:
                continue
            for k, v in row.items():
                vec[k] = vec.get(k, self.field.zero) - c * v
            for i, rc in enumerate(row_combo):
                combo[i] = combo[i] + c * rc
        return _clean(vec), combo

    def add(self, vec: dict) -> bool:
        """Insert a generator; True when the rank grew."""
        index = self.n_generators
        self.n_generators += 1
        for _, _, row_combo in self.rows:
            row_combo.append(self.field.zero)
        residual, combo = self._reduce(_clean(vec))
        if not residual:
            return False
        pivot = min(residual.keys(), key=repr)
        lead = residual[pivot]
        unit = {k: v / lead for k, v in residual.items()}
        # residual = vec - sum(combo_i * gen_i), hence
        # unit = (gen_index - sum(combo_i * gen_i)) / lead.
        row_combo = [(-c) / lead for c in combo]
        row_combo[index] = self.field.one / lead
        updated = []
        for p, row, rc in self.rows:
            c = row.get(pivot)
            if c is not None and not c.is_zero:
                keys = set(row) | set(unit)
                row = _clean(
                    {
                        k: row.get(k, self.field.zero) - c * unit.get(k, self.field.zero)
                        for k in keys
                    }
                )
                rc = [a - c * b for a, b in zip(rc, row_combo)]
            updated.append((p, row, rc))
        updated.append((pivot, unit, row_combo))
        updated.sort(key=lambda r: repr(r[0]))
        self.rows = updated
        return True

    def contains(self, vec: dict) -> bool:
        residual, _ = self._reduce(_clean(vec))
        return not residual

    def coordinates(self, vec: dict) -> list[Scalar] | None:
        """Coefficients over the original generators, or None if outside."""
        residual, combo = self._reduce(_clean(vec))
        if residual:
            return None
        return combo


def span_rank(field: ScalarField, vectors) -> int:
    return SpanBasis(field, vectors).rank


def in_span(field: ScalarField, vectors, target: dict) -> bool:
    return SpanBasis(field, vectors).contains(target)
