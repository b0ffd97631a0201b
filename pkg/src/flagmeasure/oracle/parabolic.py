"""Brute-force verdicts from matrices: stabilizers, involution images, traces.

Nothing in this module consults the root-level rules of :mod:`flagmeasure.flags`
or :mod:`flagmeasure.classifier`.  Flags are built from the weight basis and the
Gram matrix of the invariant form; parabolics are stabilizers of those flags;
the involution is applied to actual matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..classifier import Verdict
from ..flags import Basepoint, DimensionSequence
from ..realforms import MatrixInvolution, RealFormSpec, basepoint_for, matrix_involution
from ..superroots import Weight
from .linalg import ONE, ZERO, Subspace, solve_in_basis
from .realize import Realization, bracket, gram, realize

Graded = dict  # BlockKey -> Subspace


@lru_cache(maxsize=None)
def cached_realization(family: str, n: int, m: int) -> Realization:
    return realize(family, n, m)


# flags ---------------------------------------------------------------------------

def lower_flag(R: Realization, bp: Basepoint, delta: DimensionSequence) -> list[frozenset]:
    """Coordinate subspaces spanned by the first basis vectors in ``bp`` order."""
    out = []
    for d0, d1 in delta.entries:
        out.append(frozenset({("e", i) for i in bp.e_order[:d0]}
                             | {("f", j) for j in bp.f_order[:d1]}))
    return out


def orthogonal(R: Realization, V: frozenset) -> frozenset:
    om = gram(R.model)
    return frozenset(u for u in R.model.labels
                     if all(om.get((u, v), ZERO) == 0 and om.get((v, u), ZERO) == 0 for v in V))


def full_flag(R: Realization, lower: list[frozenset]) -> list[frozenset]:
    """The lower flag together with the orthogonal complements, increasing."""
    if not gram(R.model):
        return list(lower)
    subs = set(lower) | {orthogonal(R, V) for V in lower}
    everything = frozenset(R.model.labels)
    subs -= {frozenset(), everything}
    chain = sorted(subs, key=len)
    for a, b in zip(chain, chain[1:]):
        if not a < b:
            raise ValueError("flag and its orthogonal complements do not form a chain")
    return chain


def _coordinate_part(R: Realization, rule) -> Graded:
    out = {}
    for key, S in R.blocks.items():
        allowed = [u for u in S.coords if rule(*u)]
        if len(allowed) == len(S.coords):
            out[key] = S
        elif not allowed:
            out[key] = Subspace.zero(S.coords)
        else:
            out[key] = S.intersect(Subspace.span(S.coords, [{u: ONE} for u in allowed]))
    return out


def stabilizer_parabolic(R: Realization, flag: list[frozenset]) -> Graded:
    """Blocks of ``{X in g : X V subset of V for every V in flag}``."""
    def keeps(a, b):
        return all(a in V for V in flag if b in V)
    return _coordinate_part(R, keeps)


def reductive_and_nilpotent(R: Realization, p: Graded) -> tuple[Graded, Graded]:
    """Split ``p`` into the blocks whose negative weight also lies in ``p`` and the rest.

    Weight-zero blocks count as reductive.  A weight whose negative is not a
    weight of ``g`` at all (``2x_i`` in P(n)) lands in the nilpotent part.
    """
    def full(w):
        keys = [k for k in R.blocks if k[0] == w]
        return bool(keys) and all(p[k].dim == R.blocks[k].dim for k in keys)

    red, nil = {}, {}
    for key, S in p.items():
        w = key[0]
        zero = Subspace.zero(S.coords)
        if w.is_zero() or (S.dim and full(-w)):
            red[key], nil[key] = S, zero
        else:
            red[key], nil[key] = zero, S
    return red, nil


# involution on subspaces ---------------------------------------------------------------

def apply_involution(R: Realization, T: MatrixInvolution, sub: Graded,
                     full_images: dict | None = None) -> Graded:
    """Image of a graded subspace; each block must land in a single block.

    ``full_images`` optionally maps a block key to the already computed
    (target key, image subspace) of the whole block.
    """
    images: dict = {}
    done: dict = {}
    for key, S in sub.items():
        if full_images is not None and S.dim and S.dim == R.blocks[key].dim:
            target, img = full_images[key]
            done[target] = img
            continue
        for v in S.basis():
            tv = T(v)
            keys = {R.block_of(a, b) for (a, b) in tv}
            if len(keys) != 1:
                raise ValueError(f"involution does not map block {key} to a block")
            images.setdefault(keys.pop(), []).append(tv)
    out = {}
    for key, S in R.blocks.items():
        if key in done:
            out[key] = done[key] if key not in images else done[key].sum(Subspace.span(S.coords, images[key]))
        else:
            out[key] = Subspace.span(S.coords, images.get(key, []))
    return out


def full_block_images(R: Realization, T: MatrixInvolution) -> dict:
    out = {}
    for key, S in R.blocks.items():
        img = apply_involution(R, T, {key: S})
        targets = [k for k, V in img.items() if V.dim]
        if len(targets) != 1:
            raise ValueError(f"involution does not map block {key} to a single block")
        out[key] = (targets[0], img[targets[0]])
    return out


def block_action(R: Realization, T: MatrixInvolution) -> dict:
    """Which block each block is sent to (the root action read from matrices)."""
    out = {}
    for key, S in R.blocks.items():
        v = S.basis()[0]
        out[key] = R.block_of(*next(iter(T(v))))
    return out


def fixed_real_dimension(R: Realization, T: MatrixInvolution, parity: int = 0) -> int:
    """Real dimension of the fixed points of the antilinear map ``T`` on one parity of g.

    Over R the complex basis ``b_k`` becomes ``b_k, i b_k``; the fixed space is
    the kernel of ``T - 1`` on that real basis.
    """
    import sympy

    basis = [(key, v) for key in sorted(R.blocks) if key[1] == parity
             for v in R.blocks[key].basis()]
    index = {}
    for k, (key, _) in enumerate(basis):
        index.setdefault(key, []).append(k)
    d = len(basis)
    M = sympy.zeros(2 * d, 2 * d)
    for k, (key, v) in enumerate(basis):
        tv = T(v)
        target = R.block_of(*next(iter(tv)))
        cols = index[target]
        coeff = solve_in_basis([basis[j][1] for j in cols], tv)
        if coeff is None:
            raise ValueError("involution leaves the algebra")
        for j, c in zip(cols, coeff):
            re, im = sympy.Rational(c.x), sympy.Rational(c.y)
            # T(b_k) = c b_j and T(i b_k) = -i c b_j
            M[j, k], M[d + j, k] = re, im
            M[j, d + k], M[d + j, d + k] = im, -re
    return 2 * d - (M - sympy.eye(2 * d)).rank()


def meet(A: Graded, B: Graded) -> Graded:
    return {k: A[k].intersect(B[k]) for k in A}


def join(A: Graded, B: Graded) -> Graded:
    return {k: A[k].sum(B[k]) for k in A}


def superdim(A: Graded) -> tuple[int, int]:
    e = sum(S.dim for (w, p), S in A.items() if p == 0)
    o = sum(S.dim for (w, p), S in A.items() if p == 1)
    return e, o


def is_zero(A: Graded, parity: int | None = None) -> bool:
    return all(S.dim == 0 for (w, p), S in A.items() if parity is None or p == parity)


# verdict pieces -------------------------------------------------------------------------------

def eigenvalue(R: Realization, H: dict, key) -> object:
    """alpha(H) for the block ``key`` (computed from an actual bracket)."""
    if key[0].is_zero():
        return ZERO
    X = R.blocks[key].basis()[0]
    HX = bracket(H, X)
    coeff = solve_in_basis([X], HX)
    if coeff is None:
        raise ValueError("block is not an ad(H) eigenspace")
    return coeff[0]


def eigenvalue_table(R: Realization) -> list[dict]:
    """For each Cartan basis element H, the map block key -> alpha(H)."""
    return [{key: eigenvalue(R, H, key) for key in R.blocks} for H in R.cartan()]


def supertrace_functional(R: Realization, inter: Graded, table: list[dict] | None = None) -> list:
    """str of ad(H) on g / inter for each Cartan basis element H."""
    table = eigenvalue_table(R) if table is None else table
    out = []
    for row in table:
        t = ZERO
        for key, S in R.blocks.items():
            k = S.dim - inter[key].dim
            if k:
                t += row[key] * k if key[1] == 0 else -row[key] * k
        out.append(t)
    return out


@dataclass
class OracleResult:
    verdict: Verdict
    reductive: bool
    body_reductive: bool
    functional: list
    phi_weights: frozenset
    quotient_superdim: tuple[int, int]


class OracleContext:
    """Per (form) cached realization and involution."""

    def __init__(self, rf: RealFormSpec, involution: MatrixInvolution | None = None):
        self.rf = rf
        self.R = cached_realization(rf.family, rf.n, rf.m)
        self.T = involution or matrix_involution(rf)
        self.bp = basepoint_for(rf)
        self.full_images = full_block_images(self.R, self.T)
        self.eigen = eigenvalue_table(self.R)

    def parabolic(self, delta: DimensionSequence) -> Graded:
        return stabilizer_parabolic(self.R, lower_flag(self.R, self.bp, delta))

    def run(self, delta: DimensionSequence) -> OracleResult:
        R, T = self.R, self.T
        p = self.parabolic(delta)
        tp = apply_involution(R, T, p, self.full_images)
        quotient = {k: R.blocks[k].dim - S.dim for k, S in join(p, tp).items()}
        qe = sum(v for (w, par), v in quotient.items() if par == 0)
        qo = sum(v for (w, par), v in quotient.items() if par == 1)
        is_open = (qe, qo) == (0, 0)

        lev, nil = reductive_and_nilpotent(R, p)
        tlev = apply_involution(R, T, lev, self.full_images)
        tnil = apply_involution(R, T, nil, self.full_images)
        cross = [meet(lev, tnil), meet(nil, tlev), meet(nil, tnil)]
        reductive = all(is_zero(c) for c in cross)
        body_reductive = all(is_zero(c, 0) for c in cross)

        inter = meet(p, tp)
        functional = supertrace_functional(R, inter, self.eigen) if is_open else []
        ber = is_open and all(not x for x in functional)
        body = qe == 0 and body_reductive
        strong = is_open and reductive
        weak = is_open and ber and not strong
        phi = frozenset(w for (w, par), S in p.items()
                        if not w.is_zero() and S.dim == R.blocks[(w, par)].dim
                        and all(p[k].dim == R.blocks[k].dim for k in R.blocks if k[0] == w))
        v = Verdict(is_open, (qe, qo), body, ber, strong, weak)
        return OracleResult(v, reductive, body_reductive, functional, phi, (qe, qo))


def oracle_verdict(rf: RealFormSpec, delta: DimensionSequence) -> OracleResult:
    return OracleContext(rf).run(delta)


def is_reductive_intersection(rf: RealFormSpec, delta: DimensionSequence) -> bool:
    return oracle_verdict(rf, delta).reductive
