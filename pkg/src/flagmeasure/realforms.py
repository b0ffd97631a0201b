"""Catalog of real forms: root actions, base points and matrix involutions.

Each cataloged form is a :class:`RealFormSpec`.  The root action is one of a
handful of linear maps on weights:

``minus``    alpha -> -alpha (unitary type, orthosymplectic with compact Cartan)
``reverse``  x_i -> x_{n+1-i}, y_j -> y_{m+1-j} (split and quaternionic forms)
``swap``     x_i <-> y_i (0pq)
``uspi``     x_i -> -y_i, y_i -> -x_i
``odd-odd``  alpha -> -s_n(alpha), s_n flipping the sign of x_n (osp(p,q|2m) with p, q odd)

Matrix involutions have the shape ``X -> Ad(g)(sigma(conj X))`` where ``g`` is
a monomial matrix on the weight basis and ``sigma`` is either the identity or
the negative supertranspose with prescribed factors on the odd blocks.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .flags import Basepoint, basis_model, default_basepoint
from .oracle.linalg import I, ONE, ZERO, conj, gq
from .superroots import InvalidParameters, Root, RootSystem, Weight, normalize_params


class UnsupportedRealization(NotImplementedError):
    """The form has no matrix involution in this package (quaternionic forms)."""


ACTIONS = ("minus", "reverse", "swap", "uspi", "odd-odd")


@dataclass(frozen=True)
class RealFormSpec:
    family: str
    n: int
    m: int
    name: str
    params: tuple[int, ...] = ()
    kind: str = "ordinary"
    action: str = "minus"
    donor: str | None = None
    quaternionic: bool = False

    @property
    def label(self) -> str:
        """Canonical CLI string."""
        p = self.params
        if self.name == "su":
            return f"su:{p[0]},{p[1]}|{p[2]},{p[3]}"
        if self.name == "osp":
            return f"osp:{p[0]},{p[1]}|{2 * self.m}"
        if self.name == "upq":
            return f"upq:{p[0]},{p[1]}"
        if self.name == "even:su":
            return f"even:su({p[0]},{p[1]})xsu({p[2]},{p[3]})xu(1)"
        if self.name == "even:so":
            return f"even:so({p[0]},{p[1]})xsp({2 * p[2]},{2 * p[3]})"
        if self.name == "even:slR":
            return f"even:sl({self.n},R)xsl({self.m // 2},H)"
        if self.name == "even:slC":
            return f"even:sl({self.n},C)"
        if self.name == "even:so*":
            return f"even:so*({2 * self.n})xsp({2 * self.m},R)"
        return self.name

    def __str__(self) -> str:
        return self.label

    @property
    def is_even_form(self) -> bool:
        return self.kind == "even"


# construction and parsing -------------------------------------------------------

def _check_sum(what: str, parts, total: int):
    if any(x < 0 for x in parts) or sum(parts) != total:
        raise InvalidParameters(f"{what}: {parts} must be nonnegative and sum to {total}")


def _osp_action(fam: str, n: int, p: int, q: int) -> str:
    return "odd-odd" if fam == "D" and p % 2 == 1 and q % 2 == 1 else "minus"


def make_real_form(family: str, n: int, m: int | None, name: str,
                   params: tuple[int, ...] = ()) -> RealFormSpec:
    """Validate a (family, form, params) triple and return its catalog entry."""
    fam, n, m = normalize_params(family, n, m)
    params = tuple(params)
    mk = lambda **kw: RealFormSpec(fam, n, m, name, params, **kw)

    if fam == "A":
        if name == "sl-R":
            return mk(action="reverse")
        if name == "sl-H":
            if n % 2 or m % 2:
                raise InvalidParameters("sl-H needs n and m even")
            return mk(action="reverse", quaternionic=True)
        if name in ("su", "even:su"):
            if not params:
                params = (n, 0, m, 0)
            _check_sum(name, params[:2], n)
            _check_sum(name, params[2:], m)
            if len(params) != 4:
                raise InvalidParameters(f"{name} takes p,q|r,s")
            if name == "su":
                return RealFormSpec(fam, n, m, name, params, action="minus")
            return RealFormSpec(fam, n, m, name, params, kind="even", action="minus",
                                donor=f"su:{params[0]},{params[1]}|{params[2]},{params[3]}")
        if name in ("0pq", "uspi"):
            if n != m:
                raise InvalidParameters(f"{name} needs n == m")
            return mk(action="swap" if name == "0pq" else "uspi")
        if name == "even:slR":
            if m % 2:
                raise InvalidParameters("sl(n,R) x sl(k,H) needs m = 2k")
            return mk(kind="even", action="reverse", donor="sl-R")
        if name == "even:slC":
            if n != m:
                raise InvalidParameters("sl(n,C) needs n == m")
            return mk(kind="even", action="swap", donor="0pq")
    elif fam in ("B", "C", "D"):
        odd_total = 2 * n + 1 if fam == "B" else 2 * n
        if name in ("osp", "even:so"):
            if not params:
                params = (odd_total, 0) + ((m, 0) if name == "even:so" else ())
            p, q = params[:2]
            _check_sum(name, (p, q), odd_total)
            action = _osp_action(fam, n, p, q)
            if fam == "C" and p % 2:
                raise InvalidParameters("C(m) forms are osp(2,0|2m) and osp(0,2|2m)")
            if action == "odd-odd" and n < 2:
                raise InvalidParameters("the odd-odd case needs n >= 2")
            if name == "osp":
                if len(params) != 2:
                    raise InvalidParameters("osp takes p,q|2m")
                return RealFormSpec(fam, n, m, name, params, action=action)
            if len(params) != 4:
                raise InvalidParameters("even so x sp takes p,q and r,s")
            _check_sum(name, params[2:], m)
            return RealFormSpec(fam, n, m, name, params, kind="even", action=action,
                                donor=f"osp:{p},{q}|{2 * m}")
        if name in ("osp*", "even:so*"):
            if fam != "D":
                raise InvalidParameters(f"{name} exists for D(n,m) only")
            if name == "osp*":
                return mk(action="minus", quaternionic=True)
            return mk(kind="even", action="minus", donor="osp*", quaternionic=True)
    elif fam == "P":
        if name == "p-R":
            return mk(action="reverse")
        if name == "p-H":
            if n % 2:
                raise InvalidParameters("p-H needs n even")
            return mk(action="reverse", quaternionic=True)
    elif fam == "Q":
        if name == "q-R":
            return mk(action="reverse")
        if name == "q-H":
            if n % 2:
                raise InvalidParameters("q-H needs n even")
            return mk(action="reverse", quaternionic=True)
        if name == "upq":
            if not params:
                params = (n, 0)
            _check_sum(name, params, n)
            return RealFormSpec(fam, n, m, name, params, action="minus")
    raise InvalidParameters(f"real form {name!r} is not cataloged for family {fam}")


_INT = r"\s*(\d+)\s*"
_PATTERNS: list[tuple[re.Pattern, Callable]] = [
    (re.compile(rf"^su:{_INT},{_INT}\|{_INT},{_INT}$"), lambda g: ("su", g)),
    (re.compile(rf"^osp:{_INT},{_INT}\|{_INT}$"), lambda g: ("osp", g)),
    (re.compile(rf"^upq:{_INT},{_INT}$"), lambda g: ("upq", g)),
    (re.compile(rf"^even:su\({_INT},{_INT}\)xsu\({_INT},{_INT}\)(xu\(1\))?$"),
     lambda g: ("even:su", g[:4])),
    (re.compile(rf"^even:so\({_INT},{_INT}\)xsp\({_INT},{_INT}\)$"), lambda g: ("even:so", g)),
    (re.compile(rf"^even:sl\({_INT},R\)xsl\({_INT},H\)$"), lambda g: ("even:slR", g)),
    (re.compile(rf"^even:sl\({_INT},C\)$"), lambda g: ("even:slC", g)),
    (re.compile(rf"^even:so\*\({_INT}\)xsp\({_INT},R\)$"), lambda g: ("even:so*", g)),
]
_ALIASES = {
    "su": "su", "su-generic": "su", "sl-r": "sl-R", "sl-h": "sl-H", "0pq": "0pq",
    "uspi": "uspi", "usπ": "uspi", "osp": "osp", "osp*": "osp*", "p-r": "p-R",
    "p-h": "p-H", "q-r": "q-R", "q-h": "q-H", "upq": "upq",
}


def parse_real_form(family: str, n: int, m: int | None, text: str) -> RealFormSpec:
    """Parse a CLI form string such as ``su:1,1|2,0`` or ``even:sl(2,C)``."""
    fam, n, m = normalize_params(family, n, m)
    s = text.strip().replace(" ", "")
    alias = _ALIASES.get(s.lower())
    if alias is not None:
        return make_real_form(fam, n, m, alias)
    for pat, conv in _PATTERNS:
        mt = pat.match(s)
        if not mt:
            continue
        name, groups = conv(mt.groups())
        nums = tuple(int(x) for x in groups if x is not None and x.isdigit())
        if name == "osp":
            if nums[2] != 2 * m:
                raise InvalidParameters(f"osp form needs |{2 * m}, got |{nums[2]}")
            return make_real_form(fam, n, m, "osp", nums[:2])
        if name == "even:so":
            p, q, r2, s2 = nums
            if r2 % 2 or s2 % 2:
                raise InvalidParameters("sp(2r,2s) needs even arguments")
            return make_real_form(fam, n, m, name, (p, q, r2 // 2, s2 // 2))
        if name == "even:slR":
            if nums != (n, m // 2) or m % 2:
                raise InvalidParameters(f"expected sl({n},R)xsl({m // 2},H)")
            return make_real_form(fam, n, m, name)
        if name == "even:slC":
            if nums != (n,):
                raise InvalidParameters(f"expected sl({n},C)")
            return make_real_form(fam, n, m, name)
        if name == "even:so*":
            if nums != (2 * n, 2 * m):
                raise InvalidParameters(f"expected so*({2 * n})xsp({2 * m},R)")
            return make_real_form(fam, n, m, name)
        return make_real_form(fam, n, m, name, nums)
    raise InvalidParameters(f"cannot parse real form {text!r}")


def catalog(family: str, n: int, m: int | None = None, *, include_even: bool = True,
            all_signatures: bool = False) -> list[RealFormSpec]:
    """Every cataloged form for the family at this rank.

    Without ``all_signatures`` only one representative per root action and
    kind is listed; signatures never change the root action except in the
    orthosymplectic odd-odd case, which is kept as its own representative.
    """
    fam, n, m = normalize_params(family, n, m)
    out: list[RealFormSpec] = []

    def add(name, params=()):
        try:
            out.append(make_real_form(fam, n, m, name, params))
        except InvalidParameters:
            pass

    if fam == "A":
        add("sl-R"); add("sl-H")
        sigs = [(p, n - p, r, m - r) for p in range(n + 1) for r in range(m + 1)]
        if not all_signatures:
            sigs = sigs[-1:] + ([(n - n // 2, n // 2, m - m // 2, m // 2)] if n + m > 1 else [])
            sigs = list(dict.fromkeys(sigs))
        for s in sigs:
            add("su", s)
        add("0pq"); add("uspi")
        if include_even:
            for s in sigs:
                add("even:su", s)
            add("even:slR"); add("even:slC")
    elif fam in ("B", "C", "D"):
        total = 2 * n + 1 if fam == "B" else 2 * n
        pqs = [(p, total - p) for p in range(total, -1, -1)]
        if not all_signatures:
            keep = {}
            for p, q in pqs:
                key = _osp_action(fam, n, p, q)
                keep.setdefault(key, (p, q))
            pqs = list(keep.values())
        for p, q in pqs:
            add("osp", (p, q))
        add("osp*")
        if include_even:
            rss = [(r, m - r) for r in range(m, -1, -1)] if all_signatures else [(m, 0)]
            for p, q in pqs:
                for r, s in rss:
                    add("even:so", (p, q, r, s))
            add("even:so*")
    elif fam == "P":
        add("p-R"); add("p-H")
    else:
        add("q-R"); add("q-H")
        sigs = [(p, n - p) for p in range(n, -1, -1)]
        for s in (sigs if all_signatures else sigs[:1]):
            add("upq", s)
    return out


def donor_form(rf: RealFormSpec) -> RealFormSpec:
    """The ordinary form whose root action an even form reproduces."""
    if not rf.is_even_form:
        return rf
    return parse_real_form(rf.family, rf.n, rf.m, rf.donor)


# root actions --------------------------------------------------------------------

def _reverse(t: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(reversed(t))


def tau_weight(rf: RealFormSpec, w: Weight) -> Weight:
    """The linear map on weights induced by the involution."""
    a = rf.action
    if a == "minus":
        return -w
    if a == "reverse":
        return Weight(_reverse(w.x), _reverse(w.y))
    if a == "swap":
        return Weight(w.y, w.x)
    if a == "uspi":
        return Weight(tuple(-c for c in w.y), tuple(-c for c in w.x))
    if a == "odd-odd":
        x = tuple(-c for c in w.x[:-1]) + (w.x[-1],)
        return Weight(x, tuple(-c for c in w.y))
    raise ValueError(f"unknown root action {a!r}")


def tau_on_root(rf: RealFormSpec, r: Root, rs: RootSystem | None = None) -> Root:
    rs = rs or root_system_for(rf)
    if r not in rs:
        raise KeyError(f"{r} is not a root of {rf.family}({rf.n},{rf.m})")
    return rs.root(tau_weight(rf, r.weight))


def root_system_for(rf: RealFormSpec) -> RootSystem:
    from .superroots import build_root_system
    return build_root_system(rf.family, rf.n, rf.m)


def basepoint_for(rf: RealFormSpec) -> Basepoint:
    """Base point whose flag of any type lies in an open orbit body."""
    if rf.family == "A" and rf.action == "swap":
        return Basepoint.mixed(rf.n, rf.m)
    return default_basepoint(rf.family, rf.n, rf.m)


# matrix involutions -----------------------------------------------------------------

@dataclass(frozen=True)
class MatrixInvolution:
    """``X -> Ad(g)(sigma(conj X))`` on sparse supermatrices.

    ``g`` maps each basis label to (image label, scalar).  ``transpose`` selects
    sigma = negative supertranspose; ``odd_factors`` = (factor for entries in the
    even-row/odd-column block, factor for the odd-row/even-column block) used
    when such an entry is transposed.
    """
    g: dict
    transpose: bool = False
    odd_factors: tuple = (ONE, ONE)
    square: int = 1  # +1 for ordinary forms, -1 when tau^2 = (-1)^|X|
    _ginv: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        inv = {}
        for b, (a, s) in self.g.items():
            inv[a] = (b, s)
        object.__setattr__(self, "_ginv", inv)

    def __call__(self, X: dict) -> dict:
        out: dict = {}
        for (a, b), c in X.items():
            c = conj(c)
            if self.transpose:
                pa, pb = a[0] == "f", b[0] == "f"
                if pa == pb:
                    f = -ONE
                elif not pa:
                    f = -self.odd_factors[0]
                else:
                    f = -self.odd_factors[1]
                a, b, c = b, a, f * c
            # Ad(g) E_ab = g E_ab g^-1 = (s_a / s_b) E_{g(a) g(b)}
            ga, sa = self.g[a]
            gb, sb = self.g[b]
            key = (ga, gb)
            val = out.get(key, ZERO) + c * sa / sb
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        return out


def _ident(labels):
    return {lab: (lab, ONE) for lab in labels}


def matrix_involution(rf: RealFormSpec) -> MatrixInvolution:
    """Matrix involution realizing ``rf`` on the defining representation."""
    if rf.quaternionic:
        raise UnsupportedRealization(f"{rf.label}: quaternionic forms are root-level only")
    model = basis_model(rf.family, rf.n, rf.m)
    n, m, fam = rf.n, rf.m, rf.family
    labels = model.labels
    g = _ident(labels)

    if fam in ("A", "Q", "P") and rf.action == "reverse":
        nf = m if fam == "A" else n
        for i in range(1, n + 1):
            g[("e", i)] = (("e", n + 1 - i), ONE)
        for j in range(1, nf + 1):
            g[("f", j)] = (("f", nf + 1 - j), ONE)
        if rf.name == "even:slR":
            # antidiagonal J with J^2 = -1 on the odd part
            for j in range(1, m + 1):
                g[("f", j)] = (("f", m + 1 - j), ONE if j <= m // 2 else -ONE)
            return MatrixInvolution(g, square=-1)
        return MatrixInvolution(g)

    if fam == "A" and rf.action == "minus":
        p, q, r, s = rf.params
        for i in range(1, n + 1):
            g[("e", i)] = (("e", i), ONE if i <= p else -ONE)
        for j in range(1, m + 1):
            g[("f", j)] = (("f", j), ONE if j <= r else -ONE)
        if rf.is_even_form:
            return MatrixInvolution(g, transpose=True, odd_factors=(ONE, -ONE), square=-1)
        return MatrixInvolution(g, transpose=True, odd_factors=(I, I))

    if fam == "A" and rf.action == "swap":
        for i in range(1, n + 1):
            g[("e", i)] = (("f", i), ONE)
            g[("f", i)] = (("e", i), I if rf.is_even_form else ONE)
        return MatrixInvolution(g, square=-1 if rf.is_even_form else 1)

    if fam == "A" and rf.action == "uspi":
        # (A B; C D) -> (-D^dag, B^dag; -C^dag, -A^dag): swap parities and transpose
        for i in range(1, n + 1):
            g[("e", i)] = (("f", i), ONE)
            g[("f", i)] = (("e", i), ONE)
        return MatrixInvolution(g, transpose=True, odd_factors=(-ONE, ONE))

    if fam == "Q" and rf.action == "minus":
        p, q = rf.params
        for i in range(1, n + 1):
            sgn = ONE if i <= p else -ONE
            g[("e", i)] = (("e", i), sgn)
            g[("f", i)] = (("f", i), sgn)
        return MatrixInvolution(g, transpose=True, odd_factors=(I, I))

    if fam in ("B", "C", "D"):
        even_form = rf.is_even_form
        p, q = rf.params[:2]
        pairs = list(range(1, n + 1))
        special = n if rf.action == "odd-odd" else None
        if special is not None:
            pairs = pairs[:-1]
            p, q = p - 1, q - 1
        # each swapped pair contributes signature (2,0) or (0,2); B adds e_0
        n_pos = p // 2
        for k, i in enumerate(pairs):
            sgn = ONE if k < n_pos else -ONE
            g[("e", i)] = (("e", -i), sgn)
            g[("e", -i)] = (("e", i), sgn)
        if fam == "B":
            g[("e", 0)] = (("e", 0), ONE if p % 2 else -ONE)
        r = rf.params[2] if even_form else m
        for j in range(1, m + 1):
            if even_form:
                # quaternionic structure on the odd part: sp(r, s)
                sgn = ONE if j <= r else -ONE
                g[("f", j)] = (("f", -j), sgn)
                g[("f", -j)] = (("f", j), -sgn)
            else:
                g[("f", j)] = (("f", -j), I)
                g[("f", -j)] = (("f", j), I)
        return MatrixInvolution(g, square=-1 if even_form else 1)

    raise UnsupportedRealization(f"no matrix involution for {rf.label}")


def tau_matrix(rf: RealFormSpec, X: dict) -> dict:
    return matrix_involution(rf)(X)
