"""Generalized Cartan matrices.

Construction and validation, the plain-text and JSON input formats, the
named families A..G (with an optional trailing ``~`` for the untwisted
affine extension), entry parities, and the hypothesis predicates
(irreducible, symmetrizable, two-spherical, spherical) that gate the
fundamental-group formulas.

Indices are 0-based throughout the Python API; the text formats, the CLI
and all rendered reports use 1-based indices.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolationError, MatrixFormatError, UnknownNameError

__all__ = [
    "GeneralizedCartanMatrix",
    "HypothesisReport",
    "parse_matrix",
    "from_named",
    "is_irreducible",
    "is_two_spherical",
    "is_symmetrizable",
    "is_spherical",
    "symmetrizer",
    "hypothesis_report",
]


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    """Integer matrix with 2 on the diagonal, entries <= 0 off it, and a
    symmetric zero pattern.  Immutable once constructed."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.entries)
        if n == 0:
            raise MatrixFormatError("matrix must have positive rank")
        rows = []
        for row in self.entries:
            row = tuple(row)
            if len(row) != n:
                raise MatrixFormatError(
                    f"matrix is not square: rank {n}, row of length {len(row)}"
                )
            for v in row:
                if not isinstance(v, int):
                    raise MatrixFormatError(f"non-integer entry {v!r}")
            rows.append(row)
        object.__setattr__(self, "entries", tuple(rows))
        a = self.entries
        for i in range(n):
            if a[i][i] != 2:
                raise InvariantViolationError(
                    "diagonal",
                    (i + 1, i + 1),
                    f"a[{i + 1}][{i + 1}] must be 2, got {a[i][i]}",
                )
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise InvariantViolationError(
                        "sign",
                        (i + 1, j + 1),
                        f"a[{i + 1}][{j + 1}] must be <= 0, got {a[i][j]}",
                    )
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise InvariantViolationError(
                        "zero-symmetry",
                        (i + 1, j + 1),
                        f"a[{i + 1}][{j + 1}] = {a[i][j]} but "
                        f"a[{j + 1}][{i + 1}] = {a[j][i]}",
                    )

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def parity(self, i: int, j: int) -> int:
        """(-1) raised to the (i, j) entry; +1 or -1."""
        return -1 if self.entries[i][j] % 2 else 1

    def edges(self) -> list[tuple[int, int]]:
        """Diagram edges: unordered pairs i < j with a nonzero entry."""
        a = self.entries
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if a[i][j] != 0
        ]

    def is_simply_laced(self) -> bool:
        return all(
            self.entries[i][j] in (0, -1)
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def to_plain_text(self) -> str:
        lines = [str(self.n)]
        lines.extend(" ".join(str(v) for v in row) for row in self.entries)
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {"size": self.n, "entries": [list(row) for row in self.entries]}

    def __str__(self) -> str:
        return self.to_plain_text().rstrip("\n")


@dataclass(frozen=True)
class HypothesisReport:
    irreducible: bool
    symmetrizable: bool
    two_spherical: bool
    spherical: bool

    def to_json_dict(self) -> dict:
        return {
            "irreducible": self.irreducible,
            "symmetrizable": self.symmetrizable,
            "two_spherical": self.two_spherical,
            "spherical": self.spherical,
        }


def _tokenize(text):
    """Whitespace tokens with (line, column) positions; ``#`` starts a comment."""
    tokens = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for match in re.finditer(r"\S+", body):
            tokens.append((match.group(), lineno, match.start() + 1))
    return tokens


def _parse_plain(text: str) -> GeneralizedCartanMatrix:
    tokens = _tokenize(text)
    if not tokens:
        raise MatrixFormatError("empty input")

    def take_int(pos, what):
        if pos >= len(tokens):
            raise MatrixFormatError(f"unexpected end of input, expected {what}")
        word, line, col = tokens[pos]
        try:
            return int(word)
        except ValueError:
            raise MatrixFormatError(
                f"expected {what}, got {word!r}", line, col
            ) from None

    n = take_int(0, "the rank")
    if n <= 0:
        word, line, col = tokens[0]
        raise MatrixFormatError(f"rank must be positive, got {n}", line, col)
    values = [take_int(1 + k, "a matrix entry") for k in range(n * n)]
    if len(tokens) > 1 + n * n:
        word, line, col = tokens[1 + n * n]
        raise MatrixFormatError(f"trailing token {word!r}", line, col)
    rows = tuple(tuple(values[i * n : (i + 1) * n]) for i in range(n))
    return GeneralizedCartanMatrix(rows)


def _parse_json(text: str) -> GeneralizedCartanMatrix:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise MatrixFormatError("JSON input must be an object")
    for key in ("size", "entries"):
        if key not in data:
            raise MatrixFormatError(f"missing JSON field {key!r}")
    n = data["size"]
    entries = data["entries"]
    if not isinstance(n, int) or n <= 0:
        raise MatrixFormatError(f"'size' must be a positive integer, got {n!r}")
    if not isinstance(entries, list) or len(entries) != n:
        raise MatrixFormatError(f"'entries' must be a list of {n} rows")
    rows = []
    for row in entries:
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"each row must be a list of {n} integers")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool):
                raise MatrixFormatError(f"non-integer entry {v!r}")
        rows.append(tuple(row))
    return GeneralizedCartanMatrix(tuple(rows))


def parse_matrix(text: str) -> GeneralizedCartanMatrix:
    """Parse either input format.

    Plain format: first token is the rank n, followed by n*n integers
    row-major, whitespace separated, with ``#`` comments running to end of
    line.  JSON format: an object ``{"size": n, "entries": [[...], ...]}``.
    """
    if text.lstrip()[:1] == "{":
        return _parse_json(text)
    return _parse_plain(text)


_NAME_RE = re.compile(r"([A-G])([0-9]+)(~?)\Z")


def _empty(n):
    return [[2 if i == j else 0 for j in range(n)] for i in range(n)]


def _join(a, i, j, weight_ij=-1, weight_ji=-1):
    a[i][j] = weight_ij
    a[j][i] = weight_ji


def _base_matrix(family: str, n: int) -> list[list[int]]:
    a = _empty(n)
    if family == "A":
        if n < 1:
            raise UnknownNameError("A requires rank >= 1")
        for i in range(n - 1):
            _join(a, i, i + 1)
    elif family in ("B", "C"):
        if n < 2:
            raise UnknownNameError(f"{family} requires rank >= 2")
        for i in range(n - 1):
            _join(a, i, i + 1)
        if family == "B":
            # short-root node n: a[n][n-1] = -2 (1-based)
            a[n - 1][n - 2] = -2
        else:
            a[n - 2][n - 1] = -2
    elif family == "D":
        if n < 4:
            raise UnknownNameError("D requires rank >= 4")
        for i in range(n - 3):
            _join(a, i, i + 1)
        _join(a, n - 3, n - 2)
        _join(a, n - 3, n - 1)
    elif family == "E":
        if n < 6:
            raise UnknownNameError("E requires rank >= 6")
        for i in range(n - 2):
            _join(a, i, i + 1)
        _join(a, n - 4, n - 1)
    elif family == "F":
        if n != 4:
            raise UnknownNameError("F requires rank 4")
        for i in range(3):
            _join(a, i, i + 1)
        # nodes 1, 2 short, 3, 4 long (1-based); the double bond points at node 2
        a[1][2] = -2
    elif family == "G":
        if n != 2:
            raise UnknownNameError("G requires rank 2")
        a[0][1] = -1
        a[1][0] = -3
    return a


def _affinize(family: str, n: int, a: list[list[int]]) -> list[list[int]]:
    """Append the affine node (last index) of the untwisted extended diagram."""
    aff = n
    for row in a:
        row.append(0)
    a.append([2 if j == aff else 0 for j in range(n + 1)])
    if family == "A":
        if n == 1:
            a[0][1] = a[1][0] = -2
        else:
            _join(a, aff, 0)
            _join(a, aff, n - 1)
    elif family == "B":
        if n < 3:
            raise UnknownNameError("affine B requires rank >= 3")
        _join(a, aff, 1)
    elif family == "C":
        # affine node is long, attached to the short node 1 (1-based)
        a[aff][0] = -1
        a[0][aff] = -2
    elif family == "D":
        _join(a, aff, 1)
    elif family == "E":
        if n not in (6, 7, 8):
            raise UnknownNameError("affine E requires rank 6, 7 or 8")
        attach = {6: 5, 7: 5, 8: 0}[n]
        _join(a, aff, attach)
    elif family == "F":
        _join(a, aff, 3)
    elif family == "G":
        _join(a, aff, 0)
    return a


def from_named(name: str) -> GeneralizedCartanMatrix:
    """Standard matrix for a named diagram such as ``A5``, ``B3``, ``E10``,
    or ``C2~`` (untwisted affine)."""
    match = _NAME_RE.match(name.strip())
    if not match:
        raise UnknownNameError(
            f"cannot parse name {name!r}; expected a letter A-G, a rank, "
            "and an optional trailing '~'"
        )
    family, rank_str, affine = match.groups()
    n = int(rank_str)
    a = _base_matrix(family, n)
    if affine:
        a = _affinize(family, n, a)
    return GeneralizedCartanMatrix(tuple(tuple(row) for row in a))


def is_irreducible(m: GeneralizedCartanMatrix) -> bool:
    """True iff the diagram is connected."""
    n = m.n
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and m.entries[i][j] != 0 and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def is_two_spherical(m: GeneralizedCartanMatrix) -> bool:
    """True iff every rank-2 subdiagram is spherical: a[i][j]*a[j][i] <= 3."""
    return all(
        m.entries[i][j] * m.entries[j][i] <= 3
        for i in range(m.n)
        for j in range(m.n)
        if i != j
    )


def symmetrizer(m: GeneralizedCartanMatrix):
    """Positive rationals d with diag(d)*A symmetric, or None.

    The ratios d_j/d_i = a[i][j]/a[j][i] are propagated along a spanning
    tree of each diagram component; every non-tree edge is then checked
    for consistency.  Exact rational arithmetic throughout.
    """
    n = m.n
    a = m.entries
    d = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or a[i][j] == 0:
                    continue
                ratio = Fraction(a[i][j], a[j][i])
                if d[j] is None:
                    d[j] = d[i] * ratio
                    stack.append(j)
                elif d[i] * a[i][j] != d[j] * a[j][i]:
                    return None
    return tuple(d)


def is_symmetrizable(m: GeneralizedCartanMatrix) -> bool:
    return symmetrizer(m) is not None


def is_spherical(m: GeneralizedCartanMatrix) -> bool:
    """True iff the Weyl group is finite.

    Equivalent to the matrix being symmetrizable with a positive definite
    symmetrization; decided exactly via rational LDL^T pivots.
    """
    d = symmetrizer(m)
    if d is None:
        return False
    n = m.n
    s = [[d[i] * m.entries[i][j] for j in range(n)] for i in range(n)]
    for k in range(n):
        pivot = s[k][k]
        if pivot <= 0:
            return False
        for i in range(k + 1, n):
            if s[i][k] == 0:
                continue
            factor = s[i][k] / pivot
            for j in range(k, n):
                s[i][j] -= factor * s[k][j]
    return True


def hypothesis_report(m: GeneralizedCartanMatrix) -> HypothesisReport:
    return HypothesisReport(
        irreducible=is_irreducible(m),
        symmetrizable=is_symmetrizable(m),
        two_spherical=is_two_spherical(m),
        spherical=is_spherical(m),
    )
