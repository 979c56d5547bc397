"""Fundamental groups of the Kac-Moody group, its maximal compact subgroup,
the spin covers, and the generalized flag varieties.

The closed forms are driven entirely by the coloured parity graph: a green
component contributes a Z factor, a blue component a C2 factor, a red
component nothing.  The finitely-presented-group engine is wired in as a
cross-check, never as the source of the closed-form answers.

Formulas are gated: the diagram must be irreducible and either
symmetrizable or two-spherical, otherwise the computation refuses unless
forced.  The identification of pi1(G) with pi1(K) carries a caveat flag
outside the symmetrizable case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import adm, cartan, fpgroup
from .errors import HypothesisError

__all__ = [
    "Pi1Type",
    "KPi1Result",
    "FlagInfo",
    "Pi1Report",
    "pi1_group",
    "pi1_maximal_compact",
    "pi1_spin",
    "pi1_flag",
    "covering_degree",
    "full_report",
]

_CONTRIBUTION = {"r": "1", "g": "Z", "b": "C2"}


@dataclass(frozen=True)
class Pi1Type:
    """The isomorphism type Z^free_rank x C2^c2_count."""

    free_rank: int
    c2_count: int

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        if self.c2_count == 1:
            parts.append("C2")
        elif self.c2_count > 1:
            parts.append(f"C2^{self.c2_count}")
        return " x ".join(parts) if parts else "1"

    def to_json_dict(self) -> dict:
        return {"z": self.free_rank, "c2": self.c2_count}


class KPi1Result(NamedTuple):
    value: Pi1Type
    k_only: bool  # True when the K = G identification is not established


@dataclass
class FlagInfo:
    parabolic: tuple[int, ...]
    presentation: fpgroup.FpPresentation
    invariants: fpgroup.AbelianInvariants
    order: fpgroup.EnumerationResult | None  # None: infinite, settled without enumeration
    closed_form: Pi1Type | None

    def to_json_dict(self) -> dict:
        return {
            "abelian": self.invariants.to_json_dict(),
            "order": (
                {"status": "infinite"}
                if self.order is None
                else self.order.to_json_dict()
            ),
            "closed_form": (
                None if self.closed_form is None else self.closed_form.to_json_dict()
            ),
        }


def check_hypotheses(
    m: cartan.GeneralizedCartanMatrix,
    force: bool = False,
    require_irreducible: bool = True,
) -> cartan.HypothesisReport:
    """Gate for the closed-form formulas; raises HypothesisError unless the
    required hypotheses hold or ``force`` is set."""
    report = cartan.hypothesis_report(m)
    if force:
        return report
    if require_irreducible and not report.irreducible:
        raise HypothesisError(
            "the diagram is reducible; compute per irreducible factor or force",
            reason="reducible",
        )
    if not (report.symmetrizable or report.two_spherical):
        raise HypothesisError(
            "the matrix is neither symmetrizable nor two-spherical, so the "
            "cell-decomposition hypothesis is not established",
            reason="hypotheses",
        )
    return report


def pi1_group(m: cartan.GeneralizedCartanMatrix, force: bool = False) -> Pi1Type:
    """pi1 of the split real Kac-Moody group: Z^(green) x C2^(blue)."""
    check_hypotheses(m, force)
    c = adm.counts(adm.build_adm(m))
    return Pi1Type(c.n_g, c.n_b)


def pi1_maximal_compact(
    m: cartan.GeneralizedCartanMatrix, force: bool = False
) -> KPi1Result:
    """pi1 of the maximal compact subgroup; identical to pi1 of the group.

    Outside the symmetrizable case the returned flag records that only the
    compact-subgroup structure is established, not the identification with
    the ambient group.
    """
    check_hypotheses(m, force)
    c = adm.counts(adm.build_adm(m))
    return KPi1Result(Pi1Type(c.n_g, c.n_b), k_only=not cartan.is_symmetrizable(m))


def pi1_spin(
    m: cartan.GeneralizedCartanMatrix,
    kappa: adm.KappaColouring,
    force: bool = False,
) -> Pi1Type:
    """pi1 of the spin cover attached to an admissible colouring:
    Z^(green) x C2^(blue components with kappa = 1)."""
    check_hypotheses(m, force)
    graph = adm.build_adm(m)
    c = adm.counts(graph, kappa)
    return Pi1Type(c.n_g, c.n_b_kappa1)


def covering_degree(n: int, J) -> int:
    """Degree 2^(n - |J|) of the covering of the quotient flag space."""
    J = set(J)
    if any(not 0 <= k < n for k in J):
        raise ValueError(f"J = {sorted(J)} out of range for rank {n}")
    return 2 ** (n - len(J))


def pi1_flag(
    m: cartan.GeneralizedCartanMatrix,
    J,
    max_cosets: int = fpgroup.DEFAULT_MAX_COSETS,
    force: bool = False,
) -> FlagInfo:
    """Presentation, abelian invariants and order of pi1 of the flag
    variety for the parabolic subset J.

    Simply-laced diagrams with nonempty J also get the closed form
    C2^(n - |J|), which is asserted against the computed invariants.
    A positive free rank settles infinitude without enumeration; otherwise
    the order is established by coset enumeration under the cap.
    """
    check_hypotheses(m, force)
    J = tuple(sorted(set(J)))
    presentation = fpgroup.flag_presentation(m, J)
    invariants = fpgroup.abelianization(presentation)
    closed_form = None
    # the closed form needs a connected diagram: it spreads x^2 = 1 from J
    # along paths, which cannot reach other diagram components
    if m.is_simply_laced() and J and cartan.is_irreducible(m):
        closed_form = Pi1Type(0, m.n - len(J))
    if invariants.free_rank > 0:
        order = None
    else:
        order = fpgroup.todd_coxeter(presentation, max_cosets=max_cosets)
    if closed_form is not None:
        expected = fpgroup.AbelianInvariants(0, (2,) * closed_form.c2_count)
        if invariants != expected:
            raise RuntimeError(
                f"closed form {closed_form} contradicts computed invariants "
                f"{invariants} for J = {J}"
            )
        if order is not None and order.is_finite and order.order != 2**closed_form.c2_count:
            raise RuntimeError(
                f"closed form {closed_form} contradicts enumerated order {order}"
            )
    return FlagInfo(J, presentation, invariants, order, closed_form)


@dataclass
class Pi1Report:
    hypotheses: cartan.HypothesisReport
    graph: adm.AdmGraph
    contributions: tuple[str, ...]  # per component: "1", "Z" or "C2"
    group: Pi1Type
    maximal_compact: KPi1Result
    spin: list[tuple[str, Pi1Type]]  # (kappa bits, type)
    flags: dict[tuple[int, ...], FlagInfo]
    reducible: bool

    def to_json_dict(self) -> dict:
        components = []
        for idx, comp in enumerate(self.graph.components):
            components.append(
                {
                    "vertices": [v + 1 for v in comp],
                    "colour": self.graph.colours[idx],
                    "contribution": self.contributions[idx],
                }
            )
        flags = {
            ",".join(str(v + 1) for v in J): info.to_json_dict()
            for J, info in sorted(self.flags.items())
        }
        out = {
            "hypotheses": self.hypotheses.to_json_dict(),
            "components": components,
            "pi1_G": self.group.to_json_dict(),
            "pi1_K": self.maximal_compact.value.to_json_dict(),
            "pi1_K_caveat": self.maximal_compact.k_only,
            "spin": [
                {"kappa": bits, **value.to_json_dict()} for bits, value in self.spin
            ],
            "flags": flags,
        }
        if self.reducible:
            out["reducible"] = True
        return out


def full_report(
    m: cartan.GeneralizedCartanMatrix,
    max_cosets: int = fpgroup.DEFAULT_MAX_COSETS,
    force: bool = False,
) -> Pi1Report:
    """Everything at once: hypotheses, coloured components with their
    contributions, pi1 of the group / compact subgroup / spin covers, and
    flag-variety invariants for the empty and all singleton parabolics.

    Reducible diagrams are not refused here: the counts factor over the
    irreducible components, and the report is marked as the product of the
    per-factor answers.
    """
    hypotheses = check_hypotheses(m, force, require_irreducible=False)
    graph = adm.build_adm(m)
    c = adm.counts(graph)
    group = Pi1Type(c.n_g, c.n_b)
    contributions = tuple(_CONTRIBUTION[colour] for colour in graph.colours)
    summed = Pi1Type(
        sum(1 for x in contributions if x == "Z"),
        sum(1 for x in contributions if x == "C2"),
    )
    if summed != group:
        raise RuntimeError(
            f"component contributions {summed} disagree with the counts {group}"
        )
    compact = KPi1Result(group, k_only=not hypotheses.symmetrizable)
    spin = []
    for kappa in adm.enumerate_kappa(graph):
        bits = adm.kappa_bits(graph, kappa)
        counted = adm.counts(graph, kappa)
        spin.append((bits, Pi1Type(counted.n_g, counted.n_b_kappa1)))
    flags = {}
    for J in [()] + [(k,) for k in range(m.n)]:
        flags[J] = pi1_flag(m, J, max_cosets=max_cosets, force=True)
    return Pi1Report(
        hypotheses=hypotheses,
        graph=graph,
        contributions=contributions,
        group=group,
        maximal_compact=compact,
        spin=spin,
        flags=flags,
        reducible=not hypotheses.irreducible,
    )
