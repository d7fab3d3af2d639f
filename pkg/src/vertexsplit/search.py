"""Enumeration and sampling of vertices, and the search for split strata.

A :class:`StratumRecord` is a certificate: it stores how to rebuild its
vertex (a monomial exponent set, or a seed and an index), and
:meth:`StratumRecord.revalidate` recomputes every field from scratch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .cohomology import CurveError, SplittingError, SplittingType, normal_splitting, tangent_splitting
from .geometry import meets_cd, smoothness
from .vertex import Vertex, numerical_type, random_vertex

__all__ = [
    "StratumRecord",
    "build_record",
    "enumerate_monomial",
    "sample_random",
    "find_reducibility_witness",
    "passes_prescreen",
]


@dataclass(frozen=True)
class StratumRecord:
    d: int
    source: tuple  # ("monomial", exponents) or ("random", seed, index)
    forms: tuple[str, ...]
    numerical_type: str
    meets_cd: bool
    smoothness: str | None = None
    tangent: SplittingType | None = None
    normal: SplittingType | None = None
    note: str = ""

    def vertex(self) -> Vertex:
        return vertex_from_source(self.d, self.source)

    def revalidate(self) -> bool:
        return build_record(self.d, self.source) == self

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "source": list(self.source[:1]) + [list(x) if isinstance(x, tuple) else x for x in self.source[1:]],
            "forms": list(self.forms),
            "numerical_type": self.numerical_type,
            "meets_cd": self.meets_cd,
            "smoothness": self.smoothness,
            "tangent": self.tangent.as_dict() if self.tangent else None,
            "normal": self.normal.as_dict() if self.normal else None,
            "note": self.note,
        }


def _sample_rng(seed: int, index: int) -> random.Random:
    # one stream per record, so any record can be rebuilt on its own
    return random.Random(f"{seed}:{index}")


def vertex_from_source(d: int, source: tuple) -> Vertex:
    kind = source[0]
    if kind == "monomial":
        return Vertex.monomial(d, source[1])
    if kind == "random":
        _, seed, index, dim = source
        return random_vertex(d, dim, _sample_rng(seed, index))
    raise ValueError(f"unknown record source {kind!r}")


def build_record(d: int, source: tuple) -> StratumRecord:
    T = vertex_from_source(d, source)
    nt = numerical_type(T)
    forms = tuple(str(f) for f in T.forms())
    if meets_cd(T):
        return StratumRecord(d, source, forms, str(nt), True, note="vertex meets C_d")
    verdict = smoothness(T).status
    tangent = tangent_splitting(T)
    normal, note = None, ""
    if T.s >= 3:
        try:
            normal = normal_splitting(T, ordinary=verdict == "Smooth")
        except (SplittingError, CurveError) as exc:
            note = f"normal bundle not recovered: {exc}"
    else:
        note = "s < 3: normal bundle not computed"
    return StratumRecord(d, source, forms, str(nt), False, verdict, tangent, normal, note)


def enumerate_monomial(d: int, dim_T: int) -> Iterator[StratumRecord]:
    """Records for all monomial vertices of the given dimension, in lexicographic order."""
    if not 1 <= dim_T <= d - 1:
        raise ValueError(f"need 1 <= dim_T <= d - 1, got dim_T = {dim_T}, d = {d}")
    for exps in combinations(range(d, -1, -1), dim_T):
        yield build_record(d, ("monomial", exps))


def sample_random(d: int, dim_T: int, count: int, seed: int = 0) -> Iterator[StratumRecord]:
    """Records for ``count`` reproducible random vertices."""
    if not 1 <= dim_T <= d - 1:
        raise ValueError(f"need 1 <= dim_T <= d - 1, got dim_T = {dim_T}, d = {d}")
    for index in range(count):
        yield build_record(d, ("random", seed, index, dim_T))


def passes_prescreen(c: Sequence[int], d: int, dim_T: int) -> bool:
    """Length and sum conditions any normal splitting must satisfy."""
    e, s = dim_T - 1, d - dim_T
    return (
        len(c) == s - 1
        and min(c, default=0) >= 0
        and sum(c) == 2 * (e + 1)
        and sum(x + 1 for x in c) == d + e
    )


def _witness_pair(records, target):
    seen: list[StratumRecord] = []
    for rec in records:
        if rec.smoothness != "Smooth" or rec.normal is None:
            continue
        if target is not None and rec.normal.c != target:
            continue
        for old in seen:
            if (
                old.normal.c == rec.normal.c
                and old.numerical_type != rec.numerical_type
                and old.tangent.c != rec.tangent.c
            ):
                return old, rec
        seen.append(rec)
    return None


def find_reducibility_witness(
    d: int, dim_T: int, target_c: Sequence[int] | None = None, samples: int = 0, seed: int = 0
) -> tuple[StratumRecord, StratumRecord] | None:
    """Two smooth curves with the same normal bundle but different tangent bundles.

    Monomial vertices are searched first; ``samples`` random vertices follow
    if none are found.  ``target_c=None`` accepts any normal splitting.
    """
    target = tuple(sorted(target_c, reverse=True)) if target_c is not None else None
    if target is not None and not passes_prescreen(target, d, dim_T):
        return None
    pair = _witness_pair(enumerate_monomial(d, dim_T), target)
    if pair is None and samples:
        pair = _witness_pair(sample_random(d, dim_T, samples, seed), target)
    return pair
