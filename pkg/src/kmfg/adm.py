"""The parity graph of a diagram, its colouring, and admissible colourings.

The graph has an edge {i, j} exactly when both parities epsilon(i, j) and
epsilon(j, i) are -1.  Each connected component receives one of three
colours:

* ``r`` if some vertex i of the component admits a j with
  epsilon(i, j) = +1 and epsilon(j, i) = -1,
* ``g`` if it is a singleton and not ``r``,
* ``b`` otherwise.

Admissible colourings assign 1 or 2 per component, with every ``r``
component forced to 1.  Components are always ordered by their smallest
vertex; that order fixes the bit order used to enumerate colourings and
the layout of all serialized output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cartan import GeneralizedCartanMatrix
from .errors import InadmissibleKappaError

__all__ = [
    "AdmGraph",
    "KappaColouring",
    "ColourCounts",
    "build_adm",
    "enumerate_kappa",
    "kappa_from_bits",
    "kappa_constant",
    "kappa_bits",
    "validate_kappa",
    "counts",
    "to_dot",
    "report_json",
]

_DOT_COLOURS = {"r": "red", "g": "green", "b": "blue"}


@dataclass(frozen=True)
class AdmGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]
    colours: tuple[str, ...]

    def component_of(self, vertex: int) -> int:
        for idx, comp in enumerate(self.components):
            if vertex in comp:
                return idx
        raise ValueError(f"vertex {vertex} out of range")

    def colour_of(self, vertex: int) -> str:
        return self.colours[self.component_of(vertex)]

    def free_components(self) -> tuple[int, ...]:
        """Indices of the components not forced to kappa = 1."""
        return tuple(i for i, c in enumerate(self.colours) if c != "r")


@dataclass(frozen=True)
class KappaColouring:
    """Value 1 or 2 per component, aligned with AdmGraph.components."""

    values: tuple[int, ...]

    def value_on(self, graph: AdmGraph, vertex: int) -> int:
        return self.values[graph.component_of(vertex)]


@dataclass(frozen=True)
class ColourCounts:
    n_r: int
    n_g: int
    n_b: int
    n_b_kappa1: int | None = None
    c: int | None = None

    def to_json_dict(self) -> dict:
        out = {"n_r": self.n_r, "n_g": self.n_g, "n_b": self.n_b}
        if self.n_b_kappa1 is not None:
            out["n_b_kappa1"] = self.n_b_kappa1
            out["c"] = self.c
        return out


def _has_witness(m: GeneralizedCartanMatrix, i: int) -> bool:
    return any(
        j != i and m.parity(i, j) == 1 and m.parity(j, i) == -1
        for j in range(m.n)
    )


def build_adm(m: GeneralizedCartanMatrix) -> AdmGraph:
    n = m.n
    edges = tuple(
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if m.parity(i, j) == -1 and m.parity(j, i) == -1
    )
    adjacency = {i: [] for i in range(n)}
    for i, j in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    components = []
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        components.append(tuple(sorted(comp)))
    components.sort(key=lambda comp: comp[0])
    colours = []
    for comp in components:
        if any(_has_witness(m, v) for v in comp):
            colours.append("r")
        elif len(comp) == 1:
            colours.append("g")
        else:
            colours.append("b")
    return AdmGraph(n, edges, tuple(components), tuple(colours))


def validate_kappa(graph: AdmGraph, kappa: KappaColouring) -> None:
    if len(kappa.values) != len(graph.components):
        raise InadmissibleKappaError(
            f"expected {len(graph.components)} component values, "
            f"got {len(kappa.values)}"
        )
    for idx, value in enumerate(kappa.values):
        if value not in (1, 2):
            raise InadmissibleKappaError(f"kappa value must be 1 or 2, got {value}")
        if value == 2 and graph.colours[idx] == "r":
            vertices = ", ".join(str(v + 1) for v in graph.components[idx])
            raise InadmissibleKappaError(
                f"kappa must equal 1 on the r-coloured component {{{vertices}}}"
            )


def enumerate_kappa(graph: AdmGraph) -> list[KappaColouring]:
    """All admissible colourings, ordered by reading the free components
    (by smallest vertex) as bits, least significant first; value 1 is bit 0."""
    free = graph.free_components()
    colourings = []
    for code in range(2 ** len(free)):
        values = [1] * len(graph.components)
        for bit, comp_idx in enumerate(free):
            values[comp_idx] = 2 if (code >> bit) & 1 else 1
        colourings.append(KappaColouring(tuple(values)))
    return colourings


def kappa_from_bits(graph: AdmGraph, bits: str) -> KappaColouring:
    """Colouring from a '1'/'2' string over the free components in canonical
    order; r components are filled in as 1."""
    free = graph.free_components()
    if len(bits) != len(free):
        raise InadmissibleKappaError(
            f"expected {len(free)} characters (one per free component), "
            f"got {len(bits)}"
        )
    values = [1] * len(graph.components)
    for char, comp_idx in zip(bits, free):
        if char not in "12":
            raise InadmissibleKappaError(f"kappa characters must be 1 or 2, got {char!r}")
        values[comp_idx] = int(char)
    return KappaColouring(tuple(values))


def kappa_constant(graph: AdmGraph, value: int) -> KappaColouring:
    """The colouring that is ``value`` on every free component."""
    if value not in (1, 2):
        raise InadmissibleKappaError(f"kappa value must be 1 or 2, got {value}")
    values = [
        value if colour != "r" else 1 for colour in graph.colours
    ]
    return KappaColouring(tuple(values))


def kappa_bits(graph: AdmGraph, kappa: KappaColouring) -> str:
    """Inverse of kappa_from_bits."""
    return "".join(str(kappa.values[idx]) for idx in graph.free_components())


def counts(graph: AdmGraph, kappa: KappaColouring | None = None) -> ColourCounts:
    n_r = graph.colours.count("r")
    n_g = graph.colours.count("g")
    n_b = graph.colours.count("b")
    if kappa is None:
        return ColourCounts(n_r, n_g, n_b)
    validate_kappa(graph, kappa)
    n_b_kappa1 = sum(
        1
        for idx, colour in enumerate(graph.colours)
        if colour == "b" and kappa.values[idx] == 1
    )
    c = sum(1 for value in kappa.values if value == 2)
    return ColourCounts(n_r, n_g, n_b, n_b_kappa1, c)


def to_dot(graph: AdmGraph) -> str:
    """Graphviz DOT text; vertices are labelled 1-based and filled with the
    component colour."""
    lines = ["graph adm {", "  node [style=filled];"]
    for v in range(graph.n):
        colour = _DOT_COLOURS[graph.colour_of(v)]
        lines.append(f'  v{v + 1} [label="{v + 1}", fillcolor={colour}];')
    for i, j in sorted(graph.edges):
        lines.append(f"  v{i + 1} -- v{j + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_json(graph: AdmGraph, kappa: KappaColouring | None = None) -> dict:
    component_list = []
    for idx, comp in enumerate(graph.components):
        entry = {
            "vertices": [v + 1 for v in comp],
            "colour": graph.colours[idx],
        }
        if kappa is not None:
            entry["kappa"] = kappa.values[idx]
        component_list.append(entry)
    return {
        "components": component_list,
        "counts": counts(graph, kappa).to_json_dict(),
    }
