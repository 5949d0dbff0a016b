"""Canonical rooted trees with child multiplicities.

A :class:`ViewTree` is the unrolled k-hop topology seen by a node. Children
are stored as ``(subtree, count)`` pairs with identical subtrees merged.
Every distinct shape is interned to a small integer id, so equality and
hashing are O(1) and equal ids mean isomorphic trees (respecting labels,
if present). The canonical string encoding, with children sorted by their
own encodings, is produced on demand by :attr:`ViewTree.key`.
"""

from __future__ import annotations

import threading
from typing import Iterable, Optional, Union

ChildSpec = Union["ViewTree", tuple["ViewTree", int]]

_intern: dict[tuple, int] = {}
_intern_lock = threading.Lock()


def _shape_id(signature: tuple) -> int:
    uid = _intern.get(signature)
    if uid is None:
        with _intern_lock:
            uid = _intern.setdefault(signature, len(_intern))
    return uid


class ViewTree:
    __slots__ = ("label", "children", "height", "uid", "_key", "_trunc", "_plain")

    def __init__(self, label: Optional[int] = None, children: Iterable[ChildSpec] = ()):
        merged: dict[int, list] = {}
        for item in children:
            if isinstance(item, ViewTree):
                tree, count = item, 1
            else:
                tree, count = item
            if count < 0:
                raise ValueError("negative multiplicity")
            if count == 0:
                continue
            slot = merged.get(tree.uid)
            if slot is None:
                merged[tree.uid] = [tree, count]
            else:
                slot[1] += count
        ordered = sorted(merged.items())
        self.label = label
        self.children = tuple((t, c) for _, (t, c) in ordered)
        self.height = 1 + max((t.height for t, _ in self.children), default=-1)
        self.uid = _shape_id((label, tuple((u, c) for u, (_, c) in ordered)))
        self._key: Optional[str] = None
        self._trunc: dict[int, ViewTree] = {}
        self._plain: Optional[ViewTree] = None

    @property
    def key(self) -> str:
        """Canonical string encoding; equal keys iff isomorphic trees."""
        if self._key is None:
            head = "" if self.label is None else str(self.label)
            parts = sorted((t.key, c) for t, c in self.children)
            self._key = head + "(" + ",".join(f"{c}*{k}" for k, c in parts) + ")"
        return self._key

    @property
    def degree(self) -> int:
        return sum(c for _, c in self.children)

    def size(self, _memo: Optional[dict] = None) -> int:
        """Number of vertices of the expanded tree."""
        memo = {} if _memo is None else _memo
        got = memo.get(self.uid)
        if got is None:
            got = 1 + sum(c * t.size(memo) for t, c in self.children)
            memo[self.uid] = got
        return got

    def truncate(self, depth: int) -> "ViewTree":
        """Return the canonical tree cut off below ``depth`` hops from the root."""
        if depth < 0:
            raise ValueError("depth must be nonnegative")
        if depth >= self.height:
            return self
        cached = self._trunc.get(depth)
        if cached is not None:
            return cached
        if depth == 0:
            out = ViewTree(self.label)
        else:
            out = ViewTree(self.label, ((t.truncate(depth - 1), c) for t, c in self.children))
        self._trunc[depth] = out
        return out

    def unlabeled(self) -> "ViewTree":
        """Copy of the tree with every label dropped."""
        if self._plain is None:
            kids = [(t.unlabeled(), c) for t, c in self.children]
            if self.label is None and all(u is t for (u, _), (t, _) in zip(kids, self.children)):
                self._plain = self
            else:
                self._plain = ViewTree(None, kids)
        return self._plain

    def __eq__(self, other):
        if not isinstance(other, ViewTree):
            return NotImplemented
        return self.uid == other.uid

    def __hash__(self):
        return hash(self.uid)

    def __repr__(self):
        key = self.key if self.height <= 2 else f"#{self.uid}, height {self.height}"
        return f"ViewTree({key})"


def leaf(label: Optional[int] = None) -> ViewTree:
    return ViewTree(label)


def views_equal(a: ViewTree, b: ViewTree, r: int) -> bool:
    """True iff the depth-``r`` truncations of ``a`` and ``b`` are identical.

    Every pair of trees is 0-equal.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return True
    return a.truncate(r) == b.truncate(r)
