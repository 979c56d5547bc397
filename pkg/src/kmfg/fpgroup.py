"""Finitely presented groups: presentations, abelianization, coset enumeration.

Words are tuples of (generator index, exponent) pairs with exponents +1 or
-1, freely reduced.  Abelianization goes through an exact integer Smith
normal form.  Coset enumeration offers the relator-scanning strategy with
lookahead (default) and a deduction-driven strategy as an independent
alternate; both report Finite(order) only for a complete closed table and
otherwise an explicit Exhausted, never a silent truncation.

The presentation builders turn a generalized Cartan matrix into the
commutation-type presentations whose shape is
``x_i x_j^{eps(i,j)} x_i^-1 x_j^-1`` with eps the entry parity.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .adm import build_adm
from .cartan import GeneralizedCartanMatrix
from .coxeter import WeylGroup

__all__ = [
    "FpPresentation",
    "AbelianInvariants",
    "EnumerationResult",
    "ComponentClass",
    "ComponentVerification",
    "free_reduce",
    "smith_normal_form",
    "abelianization",
    "todd_coxeter",
    "h_j_presentation",
    "flag_presentation",
    "cw_presentation",
    "classify_component_group",
    "verify_component",
]

Word = tuple  # of (generator, exponent) pairs

DEFAULT_MAX_COSETS = 100_000


def free_reduce(word) -> Word:
    out = []
    for gen, exp in word:
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class FpPresentation:
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        count = len(self.generator_names)
        normalized = []
        for word in self.relators:
            word = tuple((int(g), int(e)) for g, e in word)
            for gen, exp in word:
                if not 0 <= gen < count:
                    raise ValueError(f"generator index {gen} out of range")
                if exp not in (1, -1):
                    raise ValueError(f"exponent must be +1 or -1, got {exp}")
            if free_reduce(word) != word:
                raise ValueError(f"relator {word} is not freely reduced")
            normalized.append(word)
        object.__setattr__(self, "relators", tuple(normalized))

    @property
    def generator_count(self) -> int:
        return len(self.generator_names)

    def to_text(self) -> str:
        def fmt(word):
            if not word:
                return "1"
            return "*".join(
                name if exp == 1 else f"{name}^-1"
                for name, exp in (
                    (self.generator_names[g], e) for g, e in word
                )
            )

        gens = ",".join(self.generator_names)
        rels = ", ".join(fmt(w) for w in self.relators)
        return f"<{gens} | {rels}>"

    def to_json_dict(self) -> dict:
        return {
            "generators": list(self.generator_names),
            "relators": [[[g + 1, e] for g, e in word] for word in self.relators],
        }


@dataclass(frozen=True)
class AbelianInvariants:
    """Free rank plus torsion in divisibility order d1 | d2 | ..."""

    free_rank: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} not in divisibility order")

    def order(self) -> int | None:
        """Group order if finite, else None."""
        if self.free_rank:
            return None
        result = 1
        for d in self.torsion:
            result *= d
        return result

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"C{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "1"

    def to_json_dict(self) -> dict:
        return {"z": self.free_rank, "torsion": list(self.torsion)}


@dataclass(frozen=True)
class EnumerationResult:
    status: str  # "finite" | "exhausted"
    order: int | None = None
    limit: int | None = None

    @classmethod
    def finite(cls, order: int) -> "EnumerationResult":
        return cls("finite", order=order)

    @classmethod
    def exhausted(cls, limit: int) -> "EnumerationResult":
        return cls("exhausted", limit=limit)

    @property
    def is_finite(self) -> bool:
        return self.status == "finite"

    def __str__(self):
        if self.is_finite:
            return f"Finite({self.order})"
        return f"Exhausted({self.limit})"

    def to_json_dict(self) -> dict:
        if self.is_finite:
            return {"status": "finite", "order": self.order}
        return {"status": "exhausted", "limit": self.limit}


# ---------------------------------------------------------------------------
# Smith normal form and abelianization


def smith_normal_form(rows) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix.

    Elimination over exact integers with the pivot chosen of minimal
    absolute value; only the diagonal is tracked, transforms are not.
    """
    a = [list(row) for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < nrows and t < ncols:
        pivot = _min_abs_position(a, t, nrows, ncols)
        if pivot is None:
            break
        while True:
            pi, pj = pivot
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        dirty = True
            if dirty:
                pivot = _min_abs_position(a, t, nrows, ncols)
                continue
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            pivot = _min_abs_position(a, t, nrows, ncols)
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _min_abs_position(a, t, nrows, ncols):
    best = None
    position = None
    for i in range(t, nrows):
        row = a[i]
        for j in range(t, ncols):
            v = row[j]
            if v:
                v = abs(v)
                if best is None or v < best:
                    best = v
                    position = (i, j)
                    if v == 1:
                        return position
    return position


def abelianization(presentation: FpPresentation) -> AbelianInvariants:
    """Smith normal form of the relator exponent-sum matrix."""
    count = presentation.generator_count
    rows = []
    for word in presentation.relators:
        row = [0] * count
        for gen, exp in word:
            row[gen] += exp
        rows.append(row)
    diag = smith_normal_form(rows) if rows else []
    nonzero = [d for d in diag if d != 0]
    return AbelianInvariants(
        free_rank=count - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


# ---------------------------------------------------------------------------
# Coset enumeration


class _TableFull(Exception):
    pass


class _CosetTable:
    """Coset table over the alphabet of generators and inverses.

    Letter 2*i stands for generator i, letter 2*i+1 for its inverse.
    Dead cosets are tracked by a union-find array; coset 0 (the subgroup)
    is always its own representative because merges keep the smaller index.
    """

    def __init__(self, ngens, max_cosets, record_deductions=False):
        self.width = 2 * ngens
        self.max_cosets = max_cosets
        self.table = [[None] * self.width]
        self.p = [0]
        self.queue = deque()
        self.deductions = [] if record_deductions else None

    def rep(self, k):
        l = k
        p = self.p
        while p[l] != l:
            l = p[l]
        while p[k] != l:
            p[k], k = l, p[k]
        return l

    def n_alive(self):
        return sum(1 for i, parent in enumerate(self.p) if parent == i)

    def define(self, alpha, x):
        if len(self.table) >= self.max_cosets:
            raise _TableFull
        beta = len(self.table)
        self.table.append([None] * self.width)
        self.p.append(beta)
        self.table[alpha][x] = beta
        self.table[beta][x ^ 1] = alpha
        if self.deductions is not None:
            self.deductions.append((alpha, x))
        return beta

    def _merge(self, k, l):
        k = self.rep(k)
        l = self.rep(l)
        if k != l:
            lo, hi = (k, l) if k < l else (l, k)
            self.p[hi] = lo
            self.queue.append(hi)

    def coincidence(self, alpha, beta):
        self._merge(alpha, beta)
        table = self.table
        while self.queue:
            gamma = self.queue.popleft()
            for x in range(self.width):
                delta = table[gamma][x]
                if delta is None:
                    continue
                table[delta][x ^ 1] = None
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if table[mu][x] is not None:
                    self._merge(nu, table[mu][x])
                elif table[nu][x ^ 1] is not None:
                    self._merge(mu, table[nu][x ^ 1])
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu
                    if self.deductions is not None:
                        self.deductions.append((mu, x))

    def scan(self, alpha, word, fill):
        """Scan ``word`` at coset ``alpha``; with ``fill`` new cosets are
        defined until the scan closes, otherwise an incomplete scan is left
        alone.  Closing scans record coincidences or deductions."""
        table = self.table
        f = alpha
        i = 0
        b = alpha
        j = len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                if self.deductions is not None:
                    self.deductions.append((f, word[i]))
                return
            if not fill:
                return
            self.define(f, word[i])

    def compact(self):
        """Renumber live cosets consecutively, dropping dead rows."""
        mapping = {}
        for i, parent in enumerate(self.p):
            if parent == i:
                mapping[i] = len(mapping)
        new_table = []
        for i, parent in enumerate(self.p):
            if parent != i:
                continue
            new_table.append(
                [
                    None if entry is None else mapping[self.rep(entry)]
                    for entry in self.table[i]
                ]
            )
        self.table = new_table
        self.p = list(range(len(new_table)))


def _word_to_letters(word) -> tuple[int, ...]:
    return tuple(2 * gen + (0 if exp == 1 else 1) for gen, exp in word)


def _letters_inverse(letters) -> tuple[int, ...]:
    return tuple(x ^ 1 for x in reversed(letters))


def todd_coxeter(
    presentation: FpPresentation,
    subgroup_words=(),
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: str = "hlt",
) -> EnumerationResult:
    """Enumerate the cosets of the subgroup generated by ``subgroup_words``.

    Finite(k) is returned only once the table is complete and closed under
    every relator, in which case k is the exact index (the group order for
    the trivial subgroup).  Exhausted(max_cosets) means the table cap was
    reached without a conclusion.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    count = presentation.generator_count
    for word in subgroup_words:
        for gen, _ in word:
            if not 0 <= gen < count:
                raise ValueError(f"subgroup word index {gen} out of range")
    relators = [_word_to_letters(free_reduce(w)) for w in presentation.relators]
    subgroup = [_word_to_letters(free_reduce(w)) for w in subgroup_words]
    if strategy == "hlt":
        runner = _run_hlt
    elif strategy == "felsch":
        runner = _run_felsch
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return runner(count, relators, subgroup, max_cosets)


def _scan_everywhere(ct, relators):
    """Deduction-only pass over every relator at every live coset;
    coincidences may fire, definitions never happen."""
    for alpha in range(len(ct.table)):
        if ct.p[alpha] != alpha:
            continue
        for rel in relators:
            if ct.p[alpha] != alpha:
                break
            ct.scan(alpha, rel, fill=False)


def _run_hlt(ngens, relators, subgroup, max_cosets) -> EnumerationResult:
    ct = _CosetTable(ngens, max_cosets)
    while True:
        try:
            for word in subgroup:
                ct.scan(0, word, fill=True)
            alpha = 0
            while alpha < len(ct.table):
                if ct.p[alpha] == alpha:
                    for rel in relators:
                        if ct.p[alpha] != alpha:
                            break
                        ct.scan(alpha, rel, fill=True)
                    if ct.p[alpha] == alpha:
                        for x in range(ct.width):
                            if ct.table[alpha][x] is None:
                                ct.define(alpha, x)
                alpha += 1
            # the table is complete; certify closure before reporting, and
            # start over should a late coincidence still fire
            alive = ct.n_alive()
            _scan_everywhere(ct, relators)
            if ct.n_alive() == alive:
                return EnumerationResult.finite(alive)
        except _TableFull:
            # lookahead: collapse what can be collapsed, reclaim the rows
            before = len(ct.table)
            _scan_everywhere(ct, relators)
            ct.compact()
            if len(ct.table) >= before:
                return EnumerationResult.exhausted(max_cosets)
            # space was reclaimed: rescan from the start (already-closed
            # scans terminate immediately)


def _run_felsch(ngens, relators, subgroup, max_cosets) -> EnumerationResult:
    ct = _CosetTable(ngens, max_cosets, record_deductions=True)
    by_letter = {x: [] for x in range(2 * ngens)}
    seen_rotations = set()
    for rel in relators:
        for base in (rel, _letters_inverse(rel)):
            for k in range(len(base)):
                rotation = base[k:] + base[:k]
                if rotation and rotation not in seen_rotations:
                    seen_rotations.add(rotation)
                    by_letter[rotation[0]].append(rotation)

    def process_deductions():
        while ct.deductions:
            alpha, x = ct.deductions.pop()
            alpha = ct.rep(alpha)
            for word in by_letter[x]:
                if ct.p[alpha] != alpha:
                    break
                ct.scan(alpha, word, fill=False)
            beta = ct.table[alpha][x] if ct.p[alpha] == alpha else None
            if beta is not None:
                beta = ct.rep(beta)
                for word in by_letter[x ^ 1]:
                    if ct.p[beta] != beta:
                        break
                    ct.scan(beta, word, fill=False)

    try:
        for word in subgroup:
            ct.scan(0, word, fill=True)
            process_deductions()
        while True:
            target = None
            for alpha in range(len(ct.table)):
                if ct.p[alpha] != alpha:
                    continue
                for x in range(ct.width):
                    if ct.table[alpha][x] is None:
                        target = (alpha, x)
                        break
                if target:
                    break
            if target is None:
                alive = ct.n_alive()
                _scan_everywhere(ct, relators)
                process_deductions()
                if ct.n_alive() == alive:
                    return EnumerationResult.finite(alive)
                continue
            ct.define(*target)
            process_deductions()
    except _TableFull:
        return EnumerationResult.exhausted(max_cosets)


# ---------------------------------------------------------------------------
# Presentations attached to a generalized Cartan matrix


def _pair_relator(i, j, parity) -> Word:
    return ((i, 1), (j, parity), (i, -1), (j, -1))


def _ambient_witnesses(m: GeneralizedCartanMatrix, vertices) -> list[int]:
    """Vertices i among ``vertices`` with some j anywhere in the diagram
    satisfying eps(i, j) = +1 and eps(j, i) = -1.  In the full flag
    presentation these pairs force x_i^2 = 1."""
    return [
        i
        for i in vertices
        if any(
            j != i and m.parity(i, j) == 1 and m.parity(j, i) == -1
            for j in range(m.n)
        )
    ]


def h_j_presentation(m: GeneralizedCartanMatrix, J) -> FpPresentation:
    """Presentation of the subgroup of the full flag-variety group carried
    by the vertex set J.

    Generators x_i for i in J; relators x_i x_j^{eps(i,j)} x_i^-1 x_j^-1
    for both ordered pairs in J, plus x_i^2 for every i in J whose square
    is forced through a parity witness elsewhere in the diagram.  For J a
    component of the parity graph this presents exactly the corresponding
    direct factor of the fundamental group of the full flag variety.
    """
    J = sorted(set(J))
    if not J:
        raise ValueError("J must be nonempty")
    if J[0] < 0 or J[-1] >= m.n:
        raise ValueError(f"J = {J} out of range for rank {m.n}")
    index = {v: k for k, v in enumerate(J)}
    names = tuple(f"x{v + 1}" for v in J)
    relators = [
        _pair_relator(index[a], index[b], m.parity(a, b))
        for a in J
        for b in J
        if a != b
    ]
    relators.extend(
        ((index[v], 1), (index[v], 1)) for v in _ambient_witnesses(m, J)
    )
    return FpPresentation(names, tuple(relators))


def flag_presentation(m: GeneralizedCartanMatrix, J) -> FpPresentation:
    """Fundamental-group presentation of the flag variety for the parabolic
    subset J: all pair relators over the whole vertex set, plus x_k = 1
    for k in J."""
    J = sorted(set(J))
    if J and (J[0] < 0 or J[-1] >= m.n):
        raise ValueError(f"J = {J} out of range for rank {m.n}")
    names = tuple(f"x{v + 1}" for v in range(m.n))
    relators = [
        _pair_relator(a, b, m.parity(a, b))
        for a in range(m.n)
        for b in range(m.n)
        if a != b
    ]
    relators.extend(((k, 1),) for k in J)
    return FpPresentation(names, tuple(relators))


def cw_presentation(
    m: GeneralizedCartanMatrix, J, weyl: WeylGroup | None = None
) -> FpPresentation:
    """The presentation read off the two-skeleton: one killer relator per
    k in J, and a pair relator for (i, j) only when sigma_i sigma_j is a
    minimal coset representative for the parabolic (no right descent in J)."""
    J = sorted(set(J))
    if J and (J[0] < 0 or J[-1] >= m.n):
        raise ValueError(f"J = {J} out of range for rank {m.n}")
    if weyl is None:
        weyl = WeylGroup(m)
    names = tuple(f"x{v + 1}" for v in range(m.n))
    relators = [((k, 1),) for k in J]
    for a in range(m.n):
        for b in range(m.n):
            if a == b:
                continue
            product = weyl.generator(a) * weyl.generator(b)
            if all(product.sends_simple_root_positive(k) for k in J):
                relators.append(_pair_relator(a, b, m.parity(a, b)))
    return FpPresentation(names, tuple(relators))


# ---------------------------------------------------------------------------
# Component group classification and verification


@dataclass(frozen=True)
class ComponentClass:
    """Structure a parity-graph component contributes to the full flag
    group: elementary abelian for r, infinite cyclic for g, and for b a
    2-group known only by its order."""

    colour: str
    size: int
    order: int | None
    invariants: AbelianInvariants | None
    description: str


def classify_component_group(colour: str, size: int) -> ComponentClass:
    if size < 1:
        raise ValueError("component size must be >= 1")
    if colour == "r":
        return ComponentClass(
            colour,
            size,
            order=2**size,
            invariants=AbelianInvariants(0, (2,) * size),
            description=f"C2^{size}" if size > 1 else "C2",
        )
    if colour == "g":
        if size != 1:
            raise ValueError("a g-coloured component must be a single vertex")
        return ComponentClass(
            colour, size, order=None, invariants=AbelianInvariants(1, ()), description="Z"
        )
    if colour == "b":
        return ComponentClass(
            colour,
            size,
            order=2 ** (size + 1),
            invariants=None,
            description=f"group of order {2 ** (size + 1)}",
        )
    raise ValueError(f"unknown colour {colour!r}")


@dataclass
class ComponentVerification:
    vertices: tuple[int, ...]
    colour: str
    presentation: FpPresentation
    expected: ComponentClass
    observed_invariants: AbelianInvariants
    observed_order: EnumerationResult
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(status != "fail" for _, status, _ in self.checks)

    @property
    def inconclusive(self) -> bool:
        return any(status == "inconclusive" for _, status, _ in self.checks)


def verify_component(
    m: GeneralizedCartanMatrix,
    J,
    colour: str,
    max_cosets: int = DEFAULT_MAX_COSETS,
) -> ComponentVerification:
    """Run coset enumeration and abelianization on a component's group and
    compare both against the classification.  Exhausted enumerations yield
    an inconclusive check, not a failure."""
    vertices = tuple(sorted(set(J)))
    expected = classify_component_group(colour, len(vertices))
    presentation = h_j_presentation(m, vertices)
    invariants = abelianization(presentation)
    order = todd_coxeter(presentation, max_cosets=max_cosets)
    checks = []
    if expected.order is None:
        status = "inconclusive" if not order.is_finite else "fail"
        checks.append(
            (
                "order",
                status,
                f"infinite group predicted; enumeration gave {order}",
            )
        )
    elif order.is_finite:
        status = "pass" if order.order == expected.order else "fail"
        checks.append(("order", status, f"expected {expected.order}, got {order.order}"))
    else:
        checks.append(
            ("order", "inconclusive", f"expected {expected.order}, got {order}")
        )
    if expected.invariants is not None:
        status = "pass" if invariants == expected.invariants else "fail"
        checks.append(
            (
                "abelianization",
                status,
                f"expected {expected.invariants}, got {invariants}",
            )
        )
    return ComponentVerification(
        vertices, colour, presentation, expected, invariants, order, checks
    )


def component_verifications(
    m: GeneralizedCartanMatrix, max_cosets: int = DEFAULT_MAX_COSETS
) -> list[ComponentVerification]:
    """verify_component over every component of the parity graph."""
    graph = build_adm(m)
    return [
        verify_component(m, comp, graph.colours[idx], max_cosets)
        for idx, comp in enumerate(graph.components)
    ]
