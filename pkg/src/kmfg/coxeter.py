"""Weyl group engine.

Elements are the integer matrices of the reflection action on the root
lattice in the simple-root basis: the generator sigma_i sends the basis
vector e_j to e_j - a[i][j] * e_i.  This representation is faithful for
crystallographic Coxeter groups, so matrices double as element identity.
All arithmetic is exact Python integers; coordinates grow without bound
in indefinite type and must never wrap.

Descent bookkeeping rests on one fact used throughout: the length of
w * sigma_i exceeds the length of w exactly when w maps the i-th simple
root to a positive vector.
"""

from __future__ import annotations

from .cartan import GeneralizedCartanMatrix
from .errors import ResourceLimitError

__all__ = ["WeylGroup", "WeylElement", "is_positive_root_vector", "is_negative_root_vector"]

DEFAULT_ELEMENT_CAP = 1_000_000


def is_positive_root_vector(v) -> bool:
    return all(c >= 0 for c in v) and any(c > 0 for c in v)


def is_negative_root_vector(v) -> bool:
    return all(c <= 0 for c in v) and any(c < 0 for c in v)


def _identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_mul(a, b):
    n = len(a)
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum(row[k] * col[k] for k in range(n)) for col in cols) for row in a
    )


def _mat_vec(a, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


class WeylGroup:
    """The Weyl group of a generalized Cartan matrix, acting on the root
    lattice."""

    def __init__(self, cartan: GeneralizedCartanMatrix):
        self.cartan = cartan
        n = cartan.n
        self.n = n
        gens = []
        for i in range(n):
            # sigma_i is the identity except in row i, where the entry at
            # (i, j) is delta_ij - a[i][j]
            rows = []
            for k in range(n):
                if k == i:
                    rows.append(
                        tuple((1 if j == i else 0) - cartan.entry(i, j) for j in range(n))
                    )
                else:
                    rows.append(tuple(1 if j == k else 0 for j in range(n)))
            gens.append(tuple(rows))
        self._gen_matrices = tuple(gens)
        self._id_matrix = _identity_matrix(n)

    def identity(self) -> "WeylElement":
        return WeylElement(self, self._id_matrix, _length=0)

    def generator(self, i: int) -> "WeylElement":
        return WeylElement(self, self._gen_matrices[i], _length=1)

    def generators(self) -> list["WeylElement"]:
        return [self.generator(i) for i in range(self.n)]

    def simple_root(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.n:
            raise ValueError(f"simple root index {i} out of range")
        return tuple(1 if j == i else 0 for j in range(self.n))

    def from_word(self, word) -> "WeylElement":
        matrix = self._id_matrix
        for letter in word:
            matrix = _mat_mul(matrix, self._gen_matrices[letter])
        return WeylElement(self, matrix)

    def root_sequence(self, word) -> list[tuple[int, ...]]:
        """Vectors beta_k = sigma_{i_1} ... sigma_{i_{k-1}} (alpha_{i_k});
        the word need not be reduced."""
        prefix = self._id_matrix
        out = []
        for letter in word:
            out.append(tuple(row[letter] for row in prefix))
            prefix = _mat_mul(prefix, self._gen_matrices[letter])
        return out

    def is_reduced(self, word) -> bool:
        return self.from_word(word).length == len(word)

    def elements_up_to(self, length: int, cap: int = DEFAULT_ELEMENT_CAP):
        """All elements of length <= ``length``, breadth-first by length.

        Raises ResourceLimitError once more than ``cap`` elements appear;
        never truncates silently.
        """
        if length < 0:
            raise ValueError("length bound must be >= 0")
        seen = {self._id_matrix: None}
        out = [self.identity()]
        layer = [self._id_matrix]
        for level in range(1, length + 1):
            next_layer = []
            for matrix in layer:
                for i in range(self.n):
                    # column i positive <=> right multiplication lengthens
                    if not all(row[i] >= 0 for row in matrix):
                        continue
                    grown = _mat_mul(matrix, self._gen_matrices[i])
                    if grown in seen:
                        continue
                    if len(seen) >= cap:
                        raise ResourceLimitError(
                            f"element cap {cap} exceeded at length {level}", cap
                        )
                    seen[grown] = None
                    next_layer.append(grown)
                    out.append(WeylElement(self, grown, _length=level))
            if not next_layer:
                break
            layer = next_layer
        return out

    def minimal_reps(self, parabolic, length: int, cap: int = DEFAULT_ELEMENT_CAP):
        """Minimal length coset representatives for the parabolic subgroup,
        truncated at ``length``: the elements with no right descent inside
        ``parabolic``."""
        J = _check_subset(parabolic, self.n)
        return [
            w
            for w in self.elements_up_to(length, cap)
            if all(w.sends_simple_root_positive(j) for j in J)
        ]

    def cell_counts(self, parabolic, length: int, cap: int = DEFAULT_ELEMENT_CAP):
        """Histogram length -> number of minimal representatives, i.e. the
        number of cells of each dimension in the flag-variety CW structure."""
        histogram: dict[int, int] = {}
        for w in self.minimal_reps(parabolic, length, cap):
            histogram[w.length] = histogram.get(w.length, 0) + 1
        return dict(sorted(histogram.items()))

    def closure_cells(self, w: "WeylElement", parabolic, cap: int = DEFAULT_ELEMENT_CAP):
        """The minimal representatives below ``w`` in the strong order;
        these index the cells in the closure of the cell of ``w``."""
        J = _check_subset(parabolic, self.n)
        if not all(w.sends_simple_root_positive(j) for j in J):
            raise ValueError(
                "element is not a minimal coset representative for the parabolic"
            )
        return [
            x
            for x in self.minimal_reps(J, w.length, cap)
            if x.bruhat_leq(w)
        ]


def _check_subset(parabolic, n):
    J = sorted(set(parabolic))
    if J and not (0 <= J[0] and J[-1] < n):
        raise ValueError(f"parabolic indices {J} out of range for rank {n}")
    return tuple(J)


class WeylElement:
    """Immutable group element; equality and hashing go through the action
    matrix."""

    __slots__ = ("group", "matrix", "_length")

    def __init__(self, group: WeylGroup, matrix, _length=None):
        self.group = group
        self.matrix = matrix
        self._length = _length

    def _require_same_group(self, other: "WeylElement"):
        if self.group.cartan != other.group.cartan:
            raise ValueError("elements belong to different Weyl groups")

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.matrix == other.matrix and self.group.cartan == other.group.cartan

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        self._require_same_group(other)
        return WeylElement(self.group, _mat_mul(self.matrix, other.matrix))

    def is_identity(self) -> bool:
        return self.matrix == self.group._id_matrix

    def act(self, vector) -> tuple[int, ...]:
        if len(vector) != self.group.n:
            raise ValueError(
                f"vector of length {len(vector)} under a rank-{self.group.n} group"
            )
        return _mat_vec(self.matrix, vector)

    def sends_simple_root_positive(self, i: int) -> bool:
        return all(row[i] >= 0 for row in self.matrix)

    def right_descents(self):
        return [i for i in range(self.group.n) if not self.sends_simple_root_positive(i)]

    @property
    def length(self) -> int:
        """Word length, computed once by stripping right descents (least
        index first) until the identity remains."""
        if self._length is None:
            gens = self.group._gen_matrices
            matrix = self.matrix
            steps = 0
            while matrix != self.group._id_matrix:
                i = _first_descent(matrix, self.group.n)
                matrix = _mat_mul(matrix, gens[i])
                steps += 1
            self._length = steps
        return self._length

    def inverse(self) -> "WeylElement":
        # stripping w * s_{i_1} * ... * s_{i_r} = e leaves w^{-1} = s_{i_1} ... s_{i_r}
        gens = self.group._gen_matrices
        matrix = self.matrix
        inverse = self.group._id_matrix
        while matrix != self.group._id_matrix:
            i = _first_descent(matrix, self.group.n)
            matrix = _mat_mul(matrix, gens[i])
            inverse = _mat_mul(inverse, gens[i])
        return WeylElement(self.group, inverse, _length=self._length)

    def reduced_word(self) -> tuple[int, ...]:
        """The lexicographically least reduced word: repeatedly take the
        least i whose generator shortens the element from the left."""
        gens = self.group._gen_matrices
        remaining = self.matrix
        remaining_inv = self.inverse().matrix
        word = []
        while remaining != self.group._id_matrix:
            # i is a left descent of w exactly when w^{-1} has i as a right one
            i = _first_descent(remaining_inv, self.group.n)
            word.append(i)
            remaining = _mat_mul(gens[i], remaining)
            remaining_inv = _mat_mul(remaining_inv, gens[i])
        if self._length is None:
            self._length = len(word)
        return tuple(word)

    def bruhat_leq(self, other: "WeylElement") -> bool:
        """Strong Bruhat order, by greedy right-to-left subword extraction
        against the canonical reduced word of ``other``."""
        self._require_same_group(other)
        if self.length > other.length:
            return False
        gens = self.group._gen_matrices
        n = self.group.n
        current = self.matrix
        identity = self.group._id_matrix
        for i in reversed(other.reduced_word()):
            if current == identity:
                return True
            if not all(row[i] >= 0 for row in current):
                current = _mat_mul(current, gens[i])
        return current == identity

    def weak_leq(self, other: "WeylElement") -> bool:
        """Weak right order: lengths add along self^{-1} * other."""
        self._require_same_group(other)
        return other.length == self.length + (self.inverse() * other).length

    def __repr__(self):
        word = self.reduced_word()
        label = "*".join(f"s{i + 1}" for i in word) if word else "e"
        return f"<WeylElement {label}>"


def _first_descent(matrix, n):
    for i in range(n):
        if not all(row[i] >= 0 for row in matrix):
            return i
    raise AssertionError("non-identity element with no descent")
