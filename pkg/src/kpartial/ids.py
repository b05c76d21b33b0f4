"""Structured vertex identifiers and their integer encoding.

Base vertices are either clique coordinates ``(a, i)`` (clique row ``a`` in
column ``i`` of a path of cliques) or plain indices.  A gadget vertex is
named by the ordered edge it replaces plus its position ``j`` inside the
gadget clique.

Encoding
--------
Let ``B`` be the number of base coordinates and ``k`` the gadget size.
Base coordinates are ranked densely (``rank((a, i)) = (i-1)*k + (a-1)``,
``rank(Plain(x)) = x``) and encoded as ``1 + rank``, so every base id lies
in ``[1, B]``.  Gadget ids follow after all base ids::

    B + 1 + (rank(u) * B + rank(v)) * k + (j - 1)

The universe is therefore ``{1, ..., B + B*B*k}``, polynomial in the vertex
count, and the encoding only looks at the label, never at vertex handles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True, order=True)
class CliqueCoord:
    a: int
    i: int

    def __str__(self) -> str:
        return f"({self.a},{self.i})"


@dataclass(frozen=True, order=True)
class Plain:
    index: int

    def __str__(self) -> str:
        return f"v{self.index}"


BaseId = Union[CliqueCoord, Plain]


@dataclass(frozen=True)
class GadgetCoord:
    u: BaseId
    v: BaseId
    j: int

    def __str__(self) -> str:
        return f"({self.u},{self.v},{self.j})"


StructuredId = Union[CliqueCoord, GadgetCoord, Plain]


@dataclass(frozen=True)
class IdScheme:
    """Mixed-radix ranking parameters shared by every graph of one family."""

    kind: str  # "clique" or "plain"
    base_size: int
    width: int  # rows per clique column; 1 for plain labels
    gadget_k: int = 1

    @property
    def universe(self) -> int:
        return self.base_size + self.base_size * self.base_size * self.gadget_k

    def base_rank(self, label: BaseId) -> int:
        if isinstance(label, CliqueCoord):
            if self.kind != "clique":
                raise ValueError(f"clique label {label} under a plain id scheme")
            return (label.i - 1) * self.width + (label.a - 1)
        if isinstance(label, Plain):
            if self.kind != "plain":
                raise ValueError(f"plain label {label} under a clique id scheme")
            return label.index
        raise TypeError(f"not a base id: {label!r}")

    def encode(self, label: StructuredId) -> int:
        if isinstance(label, GadgetCoord):
            if not 1 <= label.j <= self.gadget_k:
                raise ValueError(f"gadget position out of range in {label}")
            ru, rv = self.base_rank(label.u), self.base_rank(label.v)
            return self.base_size + 1 + (ru * self.base_size + rv) * self.gadget_k + label.j - 1
        return 1 + self.base_rank(label)

    def bits(self) -> int:
        return max(1, math.ceil(math.log2(self.universe + 1)))


def infer_scheme(labels) -> IdScheme:
    """Derive the ranking parameters from a collection of labels.

    For clique-coordinate families ``k`` and ``l`` are read off the base
    labels, so two graphs built from the same ``(k, l)`` share a scheme.
    """
    base: list[BaseId] = []
    gadget_k = 1
    for lab in labels:
        if lab is None:
            raise ValueError("unlabeled vertex; structured ids required")
        if isinstance(lab, GadgetCoord):
            gadget_k = max(gadget_k, lab.j)
            base.extend((lab.u, lab.v))
        else:
            base.append(lab)
    if not base:
        return IdScheme("plain", 0, 1, gadget_k)
    kinds = {type(b) for b in base}
    if kinds == {CliqueCoord}:
        k = max(b.a for b in base)
        l = max(b.i for b in base)
        return IdScheme("clique", k * l, k, gadget_k)
    if kinds == {Plain}:
        return IdScheme("plain", max(b.index for b in base) + 1, 1, gadget_k)
    raise ValueError("mixed clique and plain base labels")


# -- JSON representation ----------------------------------------------------


def label_to_json(label: StructuredId) -> dict:
    if isinstance(label, CliqueCoord):
        return {"kind": "clique", "fields": {"a": label.a, "i": label.i}}
    if isinstance(label, Plain):
        return {"kind": "plain", "fields": {"index": label.index}}
    return {
        "kind": "gadget",
        "fields": {"u": label_to_json(label.u), "v": label_to_json(label.v), "j": label.j},
    }


def label_from_json(obj: dict) -> StructuredId:
    kind, f = obj["kind"], obj["fields"]
    if kind == "clique":
        return CliqueCoord(int(f["a"]), int(f["i"]))
    if kind == "plain":
        return Plain(int(f["index"]))
    if kind == "gadget":
        u, v = label_from_json(f["u"]), label_from_json(f["v"])
        if isinstance(u, GadgetCoord) or isinstance(v, GadgetCoord):
            raise ValueError("gadget endpoints must be base ids")
        return GadgetCoord(u, v, int(f["j"]))
    raise ValueError(f"unknown label kind {kind!r}")
