"""Matrix realizations of the classical families over Q(i).

A supermatrix is a sparse dict ``{(a, b): coeff}`` on the weight basis of
the defining representation (labels from :func:`flagmeasure.flags.basis_model`);
the key ``(a, b)`` is the matrix unit sending ``u_b`` to ``u_a``.

The algebra is stored block by block: a block is the set of matrix units of
one weight and one parity, and the algebra meets it in a subspace cut out by
the family's linear constraints (supertrace, form invariance, or the queer
symmetry).  Every constraint respects the block decomposition, so the
realization is the direct sum of the block subspaces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from ..flags import BasisModel, Label, basis_model
from ..superroots import InvalidParameters, Weight, normalize_params
from .linalg import ONE, ZERO, Subspace, vadd, vscale

BlockKey = tuple[Weight, int]  # (weight, parity)


def unit_parity(a: Label, b: Label) -> int:
    return (a[0] == "f") ^ (b[0] == "f")


def gram(model: BasisModel) -> dict:
    """Nonzero entries of the invariant bilinear form, or {} for A and Q."""
    fam = model.family
    out = {}
    if fam in ("B", "C", "D"):
        for lab in model.labels:
            kind, i = lab
            if kind == "e":
                out[(lab, model.partner[lab])] = ONE
            elif i > 0:
                out[(lab, model.partner[lab])] = ONE
                out[(model.partner[lab], lab)] = -ONE
    elif fam == "P":
        for i in range(1, model.n + 1):
            out[(("e", i), ("f", i))] = ONE
            out[(("f", i), ("e", i))] = -ONE
    return out


def _block_constraints(model: BasisModel, units: list, parity: int, weight: Weight) -> list[dict]:
    fam = model.family
    eqs: list[dict] = []
    if fam == "A" and weight.is_zero():
        eqs.append({(a, a): (ONE if a[0] == "e" else -ONE) for a in model.labels})
    if fam == "P" and weight.is_zero() and parity == 0:
        eqs.append({(a, a): ONE for a in model.labels if a[0] == "e"})
    if fam in ("B", "C", "D", "P"):
        # omega(X u, v) + (-1)^{|X||u|} omega(u, X v) = 0 for basis vectors u, v
        om = gram(model)
        uset = set(units)
        for u in model.labels:
            for v in model.labels:
                eq = {}
                sign = -ONE if (parity and u[0] == "f") else ONE
                for (a, b) in uset:
                    c = ZERO
                    if b == u:
                        c += om.get((a, v), ZERO)
                    if b == v:
                        c += sign * om.get((u, a), ZERO)
                    if c:
                        eq[(a, b)] = eq.get((a, b), ZERO) + c
                if eq:
                    eqs.append(eq)
    if fam == "Q":
        uset = set(units)
        swap = {"e": "f", "f": "e"}
        for (a, b) in units:
            a2, b2 = (swap[a[0]], a[1]), (swap[b[0]], b[1])
            if (a2, b2) in uset and (a, b) < (a2, b2):
                eqs.append({(a, b): ONE, (a2, b2): -ONE})
    return eqs


@dataclass
class Realization:
    family: str
    n: int
    m: int
    model: BasisModel
    blocks: dict = field(default_factory=dict)  # BlockKey -> Subspace

    @cached_property
    def unit_weight(self) -> dict:
        w = self.model.weights
        return {(a, b): w[a] - w[b] for a in self.model.labels for b in self.model.labels}

    def block_of(self, a: Label, b: Label) -> BlockKey:
        return (self.unit_weight[(a, b)], unit_parity(a, b))

    def superdim(self) -> tuple[int, int]:
        e = sum(S.dim for (w, p), S in self.blocks.items() if p == 0)
        o = sum(S.dim for (w, p), S in self.blocks.items() if p == 1)
        return e, o

    def basis(self) -> list[tuple[BlockKey, dict]]:
        return [(k, v) for k in sorted(self.blocks) for v in self.blocks[k].basis()]

    def cartan(self) -> list[dict]:
        """Basis of the even weight-zero block (a Cartan subalgebra)."""
        zero = next((k for k in self.blocks if k[0].is_zero() and k[1] == 0), None)
        return [] if zero is None else self.blocks[zero].basis()

    def split(self, X: dict) -> dict:
        """Decompose a supermatrix into its block components."""
        out: dict = {}
        for (a, b), c in X.items():
            out.setdefault(self.block_of(a, b), {})[(a, b)] = c
        return out

    def contains(self, X: dict) -> bool:
        for key, part in self.split(X).items():
            S = self.blocks.get(key)
            if S is None or not S.contains(part):
                return False
        return True


def realize(family: str, n: int, m: int | None = None) -> Realization:
    fam, n, m = normalize_params(family, n, m)
    model = basis_model(fam, n, m)
    grouped: dict = {}
    for a in model.labels:
        for b in model.labels:
            key = (model.weights[a] - model.weights[b], unit_parity(a, b))
            grouped.setdefault(key, []).append((a, b))
    real = Realization(fam, n, m, model)
    for key in sorted(grouped):
        units = grouped[key]
        S = Subspace.kernel(units, _block_constraints(model, units, key[1], key[0]))
        if S.dim:
            real.blocks[key] = S
    return real


# supermatrix arithmetic ------------------------------------------------------------

def parity_of(X: dict) -> int | None:
    ps = {unit_parity(a, b) for (a, b) in X}
    if len(ps) > 1:
        raise InvalidParameters("supermatrix is not homogeneous")
    return ps.pop() if ps else None


def matmul(X: dict, Y: dict) -> dict:
    rows: dict = {}
    for (b, c), y in Y.items():
        rows.setdefault(b, []).append((c, y))
    out: dict = {}
    for (a, b), x in X.items():
        for c, y in rows.get(b, ()):
            out[(a, c)] = out.get((a, c), ZERO) + x * y
    return {k: v for k, v in out.items() if v}


def bracket(X: dict, Y: dict) -> dict:
    px, py = parity_of(X) or 0, parity_of(Y) or 0
    sign = -ONE if (px and py) else ONE
    return vadd(matmul(X, Y), vscale(-sign, matmul(Y, X)))


def supertrace(X: dict):
    t = ZERO
    for (a, b), c in X.items():
        if a == b:
            t += c if a[0] == "e" else -c
    return t
