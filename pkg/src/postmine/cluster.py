"""Hierarchical agglomerative clustering of terms.

Terms are points given by their document count vectors; a pairwise
DistanceMatrix feeds a Lance-Williams agglomeration supporting single,
complete (default), average and Ward linkage. Ward runs on squared
euclidean distances and reports square-rooted heights.

Determinism: at every step the merged pair is the one with the minimum
current distance, ties broken by the smallest (i, j) pair in the active
cluster ordering (leaves first in label order, then internal nodes in
creation order). Node ids follow the usual convention: leaves are
0..n-1, the node created at step s is n+s-1.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InsufficientDataError, ValidationError
from .tdm import TermDocumentMatrix

METRICS = ("euclidean", "manhattan", "cosine")
LINKAGES = ("single", "complete", "average", "ward")
DEFAULT_LINKAGE = "complete"


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    labels: tuple[str, ...]
    distances: np.ndarray
    metric: str | None = None

    def __post_init__(self):
        d = np.asarray(self.distances, dtype=np.float64)
        n = len(self.labels)
        if d.shape != (n, n):
            raise ValidationError(f"distance matrix shape {d.shape} does not match {n} labels")
        if np.any(np.diag(d) != 0.0):
            raise ValidationError("distance matrix diagonal must be zero")
        if np.any(d < 0.0):
            raise ValidationError("distances must be non-negative")
        if np.max(np.abs(d - d.T), initial=0.0) > 1e-12:
            raise ValidationError("distance matrix must be symmetric")
        d.setflags(write=False)
        object.__setattr__(self, "distances", d)

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class Dendrogram:
    """n-1 merges over n leaves; each merge is (left id, right id, height)."""

    labels: tuple[str, ...]
    merges: tuple[tuple[int, int, float], ...]
    linkage: str

    def __post_init__(self):
        if len(self.merges) != len(self.labels) - 1:
            raise ValidationError("a dendrogram over n leaves needs exactly n-1 merges")

    @property
    def n_leaves(self) -> int:
        return len(self.labels)


def distance_matrix(m: TermDocumentMatrix, metric: str = "euclidean") -> DistanceMatrix:
    """Pairwise distances between term count vectors across documents."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}, expected one of {METRICS}")
    n = len(m.vocabulary)
    if n < 2:
        raise InsufficientDataError("distance matrix needs at least 2 terms")
    rows = m.dense().astype(np.float64)
    out = np.zeros((n, n), dtype=np.float64)
    norms = np.sqrt(np.einsum("ij,ij->i", rows, rows))
    for i in range(n):
        for j in range(i + 1, n):
            if metric == "euclidean":
                diff = rows[i] - rows[j]
                v = math.sqrt(float(np.dot(diff, diff)))
            elif metric == "manhattan":
                v = float(np.abs(rows[i] - rows[j]).sum())
            else:
                if norms[i] == 0.0 or norms[j] == 0.0:
                    # zero vectors carry no direction; treat as orthogonal
                    v = 1.0
                else:
                    sim = float(np.dot(rows[i], rows[j])) / (norms[i] * norms[j])
                    v = max(0.0, 1.0 - sim)
            # mirrored assignment keeps the matrix exactly symmetric
            out[i, j] = out[j, i] = v
    return DistanceMatrix(labels=m.vocabulary, distances=out, metric=metric)


def agglomerate(d: DistanceMatrix, linkage: str = DEFAULT_LINKAGE) -> Dendrogram:
    """Lance-Williams agglomeration; see the module docstring for the
    determinism rules. Ward requires euclidean input distances."""
    if linkage not in LINKAGES:
        raise ValueError(f"unknown linkage {linkage!r}, expected one of {LINKAGES}")
    if linkage == "ward" and d.metric not in (None, "euclidean"):
        raise ValueError("ward linkage requires the euclidean metric")

    n = len(d)
    base = d.distances
    # ward is formulated on squared distances; heights are sqrt-ed back
    squared = linkage == "ward"
    dist: dict[tuple[int, int], float] = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = float(base[i, j])
            dist[(i, j)] = v * v if squared else v

    active = list(range(n))
    size = {i: 1 for i in range(n)}
    merges: list[tuple[int, int, float]] = []

    for step in range(1, n):
        best = None
        best_pair = None
        # active ids are ascending, so the scan order realizes the
        # smallest-(i,j) tie-break with a strict comparison
        for ai in range(len(active)):
            for aj in range(ai + 1, len(active)):
                pair = (active[ai], active[aj])
                v = dist[pair]
                if best is None or v < best:
                    best = v
                    best_pair = pair
        a, b = best_pair
        height = math.sqrt(max(best, 0.0)) if squared else best
        merges.append((a, b, height))

        new_id = n + step - 1
        na, nb = size[a], size[b]
        for k in active:
            if k == a or k == b:
                continue
            dak = dist[(min(a, k), max(a, k))]
            dbk = dist[(min(b, k), max(b, k))]
            if linkage == "single":
                v = min(dak, dbk)
            elif linkage == "complete":
                v = max(dak, dbk)
            elif linkage == "average":
                v = (na * dak + nb * dbk) / (na + nb)
            else:
                nk = size[k]
                v = ((na + nk) * dak + (nb + nk) * dbk - nk * best) / (na + nb + nk)
            dist[(k, new_id)] = v
        for k in active:
            if k != a and k != b:
                del dist[(min(a, k), max(a, k))]
                del dist[(min(b, k), max(b, k))]
        del dist[(a, b)]
        active = [k for k in active if k != a and k != b]
        active.append(new_id)
        size[new_id] = na + nb

    return Dendrogram(labels=d.labels, merges=tuple(merges), linkage=linkage)


def cut(t: Dendrogram, k: int) -> dict[str, int]:
    """Flat clustering with k groups: undo the last k-1 merges. Groups are
    numbered 1..k in order of first leaf appearance."""
    n = t.n_leaves
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    parent = list(range(n + max(0, n - k)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, (left, right, _) in enumerate(t.merges[: n - k]):
        node = n + s
        parent[find(left)] = node
        parent[find(right)] = node

    group_of_root: dict[int, int] = {}
    assignment: dict[str, int] = {}
    for leaf in range(n):
        root = find(leaf)
        if root not in group_of_root:
            group_of_root[root] = len(group_of_root) + 1
        assignment[t.labels[leaf]] = group_of_root[root]
    return assignment


def newick(t: Dendrogram) -> str:
    """Newick serialization with branch lengths (parent height minus child
    height, 6 decimals), terminated by ';'."""
    n = t.n_leaves
    if n == 1:
        return f"{t.labels[0]}:0.000000;"
    children = {n + s: m for s, m in enumerate(t.merges)}
    height = {i: 0.0 for i in range(n)}
    for s, (_, _, h) in enumerate(t.merges):
        height[n + s] = h
    root = n + len(t.merges) - 1

    rendered: dict[int, str] = {}
    stack = [(root, False)]
    while stack:
        node, ready = stack.pop()
        if node < n:
            rendered[node] = t.labels[node]
            continue
        left, right, h = children[node]
        if not ready:
            stack.append((node, True))
            stack.append((left, False))
            stack.append((right, False))
            continue
        bl = f"{max(h - height[left], 0.0):.6f}"
        br = f"{max(h - height[right], 0.0):.6f}"
        rendered[node] = f"({rendered[left]}:{bl},{rendered[right]}:{br})"
    return rendered[root] + ";"


def write_merges(path: str | Path, t: Dendrogram) -> None:
    """Merge table: step,left,right,height with 6-decimal heights."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["step", "left", "right", "height"])
        for s, (left, right, h) in enumerate(t.merges, start=1):
            w.writerow([s, left, right, f"{h:.6f}"])


def write_newick(path: str | Path, t: Dendrogram) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(newick(t) + "\n")
