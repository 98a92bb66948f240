"""Canonical forms for subspaces invariant under T*^2, T*^3 or both.

Every classifier decomposes the subspace into cyclic orbits first and reads
the form off the orbit lengths; the form is then materialized again and
compared with the input as an exact check.

Non-cyclic T*^3 forms are a coordinate prefix M_c plus head segments of the
two longest orbits.  With n = dim, n + p = top index of the subspace,
n + p = 3j + t and S = T*^3:

    case1  (two orbits)            x..S^j x,  y..S^{n-j-2} y
    case2  M_{n-2p-3+3r},          x..S^{p-r} x,  y..S^{p-2r} y
    case3  M_{n-2p-2+3r},          x..S^{p-r} x,  y..S^{p-2r-1} y   (t = 1 only)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactlin import (
    DimensionError,
    Subspace,
    Vector,
    chain_subspace,
    coordinate_subspace,
    full_space,
    intersect_subspaces,
    is_zero,
    member,
    span,
    top_index,
    unit,
    vector,
    vector_from_json,
    vector_to_json,
    zero_subspace,
)
from .invariants import (
    NotInvariantError,
    cyclic_orbit,
    is_invariant,
    nilpotent_decompose,
    pair_independent,
)
from .shifts import ShiftSpec, apply

TAGS = (
    "T2NonCyclic",
    "T3Case1",
    "T3Case2",
    "T3Case3",
    "Joint",
    "Cyclic",
    "Chain",
    "ParityLattice",
    "ParityMixed",
    "FullSpace",
    "Zero",
)


@dataclass
class CanonicalForm:
    tag: str
    params: dict = field(default_factory=dict)
    generators: tuple = ()

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown canonical form {self.tag!r}")
        self.generators = tuple(vector(g) for g in self.generators)

    def __getitem__(self, key):
        return self.params[key]

    @property
    def x(self) -> Vector:
        return self.generators[0]

    @property
    def y(self) -> Vector:
        return self.generators[1]

    def to_json(self) -> dict:
        params = {}
        for k, v in self.params.items():
            if isinstance(v, tuple):
                v = list(v)
            params[k] = v
        return {"tag": self.tag, "params": params, "generators": [vector_to_json(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "CanonicalForm":
        params = {k: tuple(v) if isinstance(v, list) else v for k, v in data.get("params", {}).items()}
        return cls(data["tag"], params, tuple(vector_from_json(g) for g in data.get("generators", [])))


def _segment(x, spec: ShiftSpec, l: int, last: int) -> list:
    """[x, S x, ..., S^last x] for S = T*^l; empty when last < 0."""
    out = []
    v = vector(x)
    for _ in range(last + 1):
        out.append(v)
        v = apply(spec, l, v)
    return out


def _require_invariant(s: Subspace, spec: ShiftSpec, *powers):
    if s.ambient_dim != spec.N:
        raise DimensionError(f"subspace lives in dimension {s.ambient_dim}, shift acts on {spec.N}")
    for p in powers:
        if not is_invariant(s, spec, p):
            raise NotInvariantError(f"subspace is not invariant under T*^{p}")


# ---------------------------------------------------------------------------
# T*^2


def construct_t2(n: int, p: int, x, spec: ShiftSpec) -> Subspace:
    """span{e_0, ..., e_{n-p-2}} + span{x, T*^2 x, ..., T*^{2p} x}.

    p = -1 leaves the orbit part empty and gives M_{n-1}.
    """
    N = spec.N
    if n < 1 or p < -1 or (p >= 0 and p > n - 3):
        raise ValueError(f"p = {p} outside -1..{n - 3}")
    if n > N:
        raise ValueError(f"dimension {n} exceeds ambient {N}")
    if p == -1:
        return chain_subspace(N, n - 1)
    x = vector(x)
    if top_index(x) != n + p:
        raise ValueError(f"x must have top index n + p = {n + p}, got {top_index(x)}")
    prefix = [unit(N, i) for i in range(n - p - 1)]
    return span(N, prefix + _segment(x, spec, 2, p))


def classify_t2(s: Subspace, spec: ShiftSpec) -> CanonicalForm:
    _require_invariant(s, spec, 2)
    n = s.dim
    if n == 0:
        return CanonicalForm("Zero")
    if n == spec.N:
        return CanonicalForm("FullSpace", {"N": n})
    dec = nilpotent_decompose(s, spec, 2)
    x = dec.generators[0][0]
    if dec.generator_count == 1:
        form = CanonicalForm("Cyclic", {"l": 2, "n": n}, (x,))
    else:
        p = top_index(x) - n
        form = CanonicalForm("T2NonCyclic", {"n": n, "p": p}, (x,))
    _confirm(form, s, spec)
    return form


# ---------------------------------------------------------------------------
# T*^3


def expected_orbit_lengths(form: CanonicalForm) -> list:
    """Orbit lengths (longest first) that a T*^3 form must decompose into."""
    n, p = form["n"], form["p"]
    j, t = divmod(n + p, 3)
    if form.tag == "T3Case1":
        return [j + 1, n - j - 1]
    r = form["r"]
    if form.tag == "T3Case2":
        if t == 0:
            return [j + 1, j - r, n - 2 * j - 1 + r]
        if t == 1:
            return [j + 1, j + 1, n - 2 * j - 2]
        return [j + 1, j + 1 - r, n - 2 * j - 2 + r]
    if form.tag == "T3Case3":
        return [j + 1, j - r, n - 2 * j - 1 + r]
    if form.tag == "Cyclic":
        return [form["n"]]
    raise ValueError(f"{form.tag} is not a T*^3 form")


def r_bound(form: CanonicalForm) -> float:
    """Upper bound on r obtained from 'y orbit at least as long as z orbit'."""
    n, p = form["n"], form["p"]
    j = (n + p) // 3
    if form.tag == "T3Case3":
        return (3 * j - n + 1) / 2
    t = (n + p) % 3
    return {0: (3 * j - n + 1) / 2, 1: 0, 2: (3 * j - n + 3) / 2}[t]


def construct_t3(form: CanonicalForm, spec: ShiftSpec) -> Subspace:
    N = spec.N
    tag = form.tag
    if tag not in ("T3Case1", "T3Case2", "T3Case3"):
        return materialize(form, spec)
    n, p = form["n"], form["p"]
    x, y = form.x, form.y
    j, t = divmod(n + p, 3)
    if top_index(x) != n + p:
        raise ValueError(f"x must have top index n + p = {n + p}")
    if not pair_independent(x, y, spec, 3):
        raise ValueError("independence hypothesis fails: terminal orbit vectors of x and y are dependent")
    if tag == "T3Case1":
        vs = _segment(x, spec, 3, j) + _segment(y, spec, 3, n - j - 2)
    else:
        r = form["r"]
        if tag == "T3Case2":
            if not 0 <= r <= (p + 1) / 2:
                raise ValueError(f"r = {r} outside 0..(p+1)/2")
            c, ylast = n - 2 * p - 3 + 3 * r, p - 2 * r
        else:
            if t != 1:
                raise ValueError("case 3 needs n + p = 1 mod 3")
            if not 0 <= r <= p / 2:
                raise ValueError(f"r = {r} outside 0..p/2")
            c, ylast = n - 2 * p - 2 + 3 * r, p - 2 * r - 1
        vs = [unit(N, i) for i in range(c + 1)] + _segment(x, spec, 3, p - r) + _segment(y, spec, 3, ylast)
    s = span(N, vs)
    if s.dim != n:
        raise ValueError(f"parameters give a {s.dim}-dimensional span, expected {n}")
    return s


def classify_t3(s: Subspace, spec: ShiftSpec) -> CanonicalForm:
    _require_invariant(s, spec, 3)
    n = s.dim
    if n == 0:
        return CanonicalForm("Zero")
    if n == spec.N:
        return CanonicalForm("FullSpace", {"N": n})
    dec = nilpotent_decompose(s, spec, 3)
    (x, _), *rest = dec.generators
    p = top_index(x) - n
    j, t = divmod(n + p, 3)
    if p == -1:
        form = CanonicalForm("Chain", {"k": n - 1})
    elif not rest:
        form = CanonicalForm("Cyclic", {"l": 3, "n": n}, (x,))
    elif len(rest) == 1:
        form = CanonicalForm("T3Case1", {"n": n, "p": p, "t": t}, (x, rest[0][0]))
    else:
        y, ly = rest[0]
        if t == 0:
            form = CanonicalForm("T3Case2", {"n": n, "p": p, "r": j - ly, "t": t}, (x, y))
        elif t == 1 and ly == j + 1:
            form = CanonicalForm("T3Case2", {"n": n, "p": p, "r": 0, "t": t}, (x, y))
        elif t == 1:
            form = CanonicalForm("T3Case3", {"n": n, "p": p, "r": j - ly, "t": t}, (x, y))
        else:
            form = CanonicalForm("T3Case2", {"n": n, "p": p, "r": j + 1 - ly, "t": t}, (x, y))
        if not 0 <= form["r"] <= r_bound(form):
            raise AssertionError(f"r = {form['r']} violates its bound for {form.tag}")
    if form.tag.startswith("T3") and dec.orbit_lengths != expected_orbit_lengths(form):
        raise AssertionError(f"orbit lengths {dec.orbit_lengths} do not match {form.tag}")
    _confirm(form, s, spec)
    return form


# ---------------------------------------------------------------------------
# jointly invariant under T*^2 and T*^3


def construct_joint(n: int, alpha, beta, N: int) -> Subspace:
    """span{e_0, ..., e_{n-2}, alpha e_{n-1} + beta e_n}."""
    alpha, beta = vector((alpha, beta))
    if alpha == 0 and beta == 0:
        raise ValueError("(alpha, beta) must not both vanish")
    if n < 1:
        raise ValueError("joint forms have dimension at least 1")
    if beta != 0 and n >= N:
        raise ValueError(f"e_{n} lies outside the truncation")
    v = [0] * N
    v[n - 1] = alpha
    if beta != 0:
        v[n] = beta
    return span(N, [unit(N, i) for i in range(n - 1)] + [v])


def classify_joint(s: Subspace, spec: ShiftSpec) -> CanonicalForm:
    _require_invariant(s, spec, 2, 3)
    n = s.dim
    if n == 0:
        return CanonicalForm("Zero")
    last = s.basis[-1]
    a, b = (last[n - 1], last[n] if n < spec.N else 0)
    if a != 0:
        alpha, beta = 1, b / a
    else:
        alpha, beta = 0, 1
    form = CanonicalForm("Joint", {"n": n, "alpha": str(alpha), "beta": str(beta)})
    _confirm(form, s, spec)
    return form


# ---------------------------------------------------------------------------
# coordinate subspaces: truncated residue-class lattices


def _residue_tops(support: set, l: int) -> list | None:
    """Per residue class, the top of its initial segment (-1 when empty), or None
    if some class is not an initial segment."""
    tops = []
    for rho in range(l):
        idx = sorted(i for i in support if i % l == rho)
        if idx != list(range(rho, rho + l * len(idx), l)):
            return None
        tops.append(idx[-1] if idx else -1)
    return tops


def _proof_case3_pattern(support: set, N: int):
    """M_c followed by e_{c+3}, e_{c+5}, ... to the end, with c odd.

    This is the support written down in the even-tail case of the T*^2
    infinite-dimensional argument; it skips e_{c+1} and is not invariant.
    """
    c = -1
    while c + 1 in support:
        c += 1
    if c < 1 or c % 2 == 0:
        return None
    tail = list(range(c + 3, N, 2))
    if not tail or support != set(range(c + 1)) | set(tail):
        return None
    return c


def classify_parity_lattice(s: Subspace, spec: ShiftSpec, power: int) -> CanonicalForm:
    if power not in (2, 3):
        raise ValueError("power must be 2 or 3")
    N, l = spec.N, power
    support = set()
    for b in s.basis:
        nz = [i for i, v in enumerate(b) if v != 0]
        if len(nz) != 1:
            raise ValueError("not a coordinate subspace")
        support.add(nz[0])
    if not support:
        return CanonicalForm("Zero")
    if len(support) == N:
        return CanonicalForm("FullSpace", {"N": N})
    tops = _residue_tops(support, l)
    if tops is None:
        c = _proof_case3_pattern(support, N) if l == 2 else None
        if c is None:
            raise ValueError(f"support {sorted(support)} matches no residue-class pattern")
        return CanonicalForm(
            "ParityMixed",
            {"l": 2, "variant": "proof-even-tail", "c": c, "support": tuple(sorted(support)), "invariant": False},
        )
    full = [t >= 0 and t + l >= N for t in tops]
    nonempty = [t >= 0 for t in tops]
    k = max(support)
    if support == set(range(k + 1)):
        return CanonicalForm("Chain", {"k": k})
    base = {"l": l, "tops": tuple(tops), "full": tuple(full), "invariant": True}
    if sum(nonempty) == 1 and any(full):
        t = full.index(True)
        return CanonicalForm("ParityLattice", {"l": l, "t": t, "n": len(support)})
    if not any(full):
        return CanonicalForm("ParityMixed", dict(base, variant="finite"))
    if l == 2:
        # one class runs to the end, the other stops at c - 1
        t = 1 if full[0] else 0
        other = tops[1 - t]
        # t = 0: odd class full, evens up to 2n;  t = 1: even class full, odds up to 2n+1
        n = other // 2 if t == 0 else (other - 1) // 2
        return CanonicalForm("ParityMixed", dict(base, variant="prefix-plus-class", n=n, t=t))
    if sum(nonempty) == 2:
        return CanonicalForm("ParityMixed", dict(base, variant="two-classes"))
    counts = [(top - rho) // l + 1 for rho, top in enumerate(tops)]
    return CanonicalForm("ParityMixed", dict(base, variant="prefix-plus-classes", prefix=3 * min(counts) - 1))


# ---------------------------------------------------------------------------
# materialization and confirmation


def materialize(form: CanonicalForm, spec: ShiftSpec) -> Subspace:
    N = spec.N
    tag, p = form.tag, form.params
    if tag == "Zero":
        return zero_subspace(N)
    if tag == "FullSpace":
        return full_space(N)
    if tag == "Chain":
        return chain_subspace(N, p["k"])
    if tag == "Cyclic":
        return span(N, cyclic_orbit(form.x, spec, p["l"]))
    if tag == "T2NonCyclic":
        return construct_t2(p["n"], p["p"], form.x if form.generators else None, spec)
    if tag in ("T3Case1", "T3Case2", "T3Case3"):
        return construct_t3(form, spec)
    if tag == "Joint":
        return construct_joint(p["n"], p["alpha"], p["beta"], N)
    if tag == "ParityLattice":
        return coordinate_subspace(N, range(p["t"], N, p["l"])[: p["n"]])
    if tag == "ParityMixed":
        if "support" in p:
            return coordinate_subspace(N, p["support"])
        l = p["l"]
        return coordinate_subspace(N, [i for rho, top in enumerate(p["tops"]) for i in range(rho, top + 1, l)])
    raise ValueError(f"cannot materialize {tag}")


def _confirm(form: CanonicalForm, s: Subspace, spec: ShiftSpec):
    got = materialize(form, spec)
    if got != s:
        raise AssertionError(f"{form.tag} form does not reproduce the input subspace")


def classify(s: Subspace, spec: ShiftSpec, powers) -> CanonicalForm:
    """Dispatch on the power set: {2}, {3} or {2, 3}."""
    powers = tuple(sorted(set(powers)))
    if powers == (2,):
        return classify_t2(s, spec)
    if powers == (3,):
        return classify_t3(s, spec)
    if powers == (2, 3):
        return classify_joint(s, spec)
    raise ValueError(f"no classifier for powers {powers}")


# ---------------------------------------------------------------------------
# random invariant subspaces (test oracle input)


def _random_vector(rng, N: int, top: int) -> Vector:
    v = [0] * N
    for i in range(top):
        if rng.random() < 0.5:
            v[i] = int(rng.integers(-3, 4))
    v[top] = int(rng.choice([-3, -2, -1, 1, 2, 3]))
    return vector(v)


def _close(vs: list, spec: ShiftSpec, powers) -> Subspace:
    out = list(vs)
    frontier = list(vs)
    while frontier:
        nxt = []
        for v in frontier:
            for l in powers:
                w = apply(spec, l, v)
                if not is_zero(w):
                    nxt.append(w)
        out.extend(nxt)
        frontier = nxt
    return span(spec.N, out)


def random_invariant(spec: ShiftSpec, power, dim: int, seed: int) -> Subspace:
    """Seeded random subspace closed under T*^power (or every power in a tuple).

    Random integer vectors are added and the span is closed under the
    operators until it is at least ``dim``-dimensional; it is then cut down
    one dimension at a time.  For a single power the cut replaces one random
    cyclic generator by its image; for several powers it intersects with
    M_{top-1}.  Randomness comes from numpy's PCG64 generator seeded with
    ``seed``.
    """
    powers = (power,) if isinstance(power, int) else tuple(power)
    N = spec.N
    if not 0 <= dim <= N:
        raise ValueError(f"dimension {dim} unreachable in ambient dimension {N}")
    if dim == 0:
        return zero_subspace(N)
    rng = np.random.default_rng(seed)
    lmin = min(powers)
    bound = min(N - 1, dim * lmin - 1) if len(powers) == 1 else min(N - 1, dim)
    s = zero_subspace(N)
    attempts = 0
    while s.dim < dim:
        attempts += 1
        if attempts > 50:
            # fall back to the next missing coordinate so the loop always ends
            i = next(i for i in range(N) if not member(s, unit(N, i)))
            v = unit(N, i)
        else:
            v = _random_vector(rng, N, int(rng.integers(0, bound + 1)))
        s = _close(list(s.basis) + [v], spec, powers)
    while s.dim > dim:
        if len(powers) == 1:
            dec = nilpotent_decompose(s, spec, powers[0])
            gens = [g for g, _ in dec.generators]
            i = int(rng.integers(0, len(gens)))
            gens[i] = apply(spec, powers[0], gens[i])
            s = span(N, [v for g in gens if not is_zero(g) for v in cyclic_orbit(g, spec, powers[0])])
        else:
            top = max(top_index(b) for b in s.basis)
            s = intersect_subspaces(s, chain_subspace(N, top - 1))
    return s
