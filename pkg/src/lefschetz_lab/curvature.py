"""Constraint ledger for fixed-point sets of circle actions on even-dimensional positive-curvature manifolds.

A configuration is a multiset of components (dimension, Euler characteristic)
inside an ambient manifold M. The rules:

* Berger: the fixed set is non-empty.
* Parity: every component has even codimension.
* Frankel: two distinct components have dimensions summing to less than dim M.
* Gauss-Bonnet-Chern: components of dimension at most 4 have positive Euler characteristic.
* Lefschetz sum rule: chi(M) is the sum of the component Euler characteristics.
* Grove-Searle: a connected codimension-2 fixed set (or two points) forces a
  spherical space form, an almost connected one (N plus a point) forces CP^d.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from math import comb

from .errors import AmbientDimTooLarge, ParseError

DEFAULT_BUDGET = 2_000_000
FAMILIES = (
    "sphere",
    "real_projective",
    "complex_projective",
    "quaternionic_projective",
    "cayley_plane",
    "wallach",
    "eschenburg",
    "point",
    "unknown",
)


@dataclass(frozen=True, order=True)
class ManifoldRecord:
    label: str
    dim: int
    euler: int | None = None
    family: str = "unknown"

    def __post_init__(self):
        if self.dim < 0:
            raise ParseError(f"{self.label}: dimension must be non-negative")
        # odd dimensions only for user-supplied components, where parity is a reported violation
        if self.dim % 2 and self.family != "unknown":
            raise ParseError(f"{self.label}: catalog manifolds are even-dimensional")
        if self.family not in FAMILIES:
            raise ParseError(f"{self.label}: unknown family {self.family!r}")

    def to_json(self) -> dict:
        return {"label": self.label, "dim": self.dim, "euler": self.euler, "family": self.family}


POINT = ManifoldRecord("pt", 0, 1, "point")


def catalog(max_dim: int = 24) -> list[ManifoldRecord]:
    """Known even-dimensional positive-curvature manifolds up to ``max_dim``.

    CP^1 = S^2, HP^1 = S^4 and OP^1 = S^8 are listed once, as spheres.
    """
    out = [POINT]
    for k in range(1, max_dim // 2 + 1):
        out.append(ManifoldRecord(f"S{2 * k}", 2 * k, 2, "sphere"))
        out.append(ManifoldRecord(f"RP{2 * k}", 2 * k, 1, "real_projective"))
        if k >= 2:
            out.append(ManifoldRecord(f"CP{k}", 2 * k, k + 1, "complex_projective"))
    for k in range(2, max_dim // 4 + 1):
        out.append(ManifoldRecord(f"HP{k}", 4 * k, k + 1, "quaternionic_projective"))
    extras = [
        ManifoldRecord("W6", 6, 6, "wallach"),
        ManifoldRecord("E6", 6, 6, "eschenburg"),
        ManifoldRecord("W12", 12, 6, "wallach"),
        ManifoldRecord("OP2", 16, 3, "cayley_plane"),
        ManifoldRecord("W24", 24, 6, "wallach"),
    ]
    out += [m for m in extras if m.dim <= max_dim]
    return sorted(out, key=lambda m: (m.dim, m.label))


def lookup(label: str) -> ManifoldRecord:
    """Catalog entry by label; ``CP1``, ``HP1``, ``OP1`` resolve to their sphere."""
    aliases = {"CP1": "S2", "HP1": "S4", "OP1": "S8", "S0": None}
    label = aliases.get(label, label) or label
    for m in catalog(max_dim=max(24, _label_dim_hint(label))):
        if m.label == label:
            return m
    raise ParseError(f"unknown manifold label {label!r}")


def _label_dim_hint(label: str) -> int:
    digits = "".join(ch for ch in label if ch.isdigit())
    if not digits:
        return 0
    n = int(digits)
    return 4 * n if label.startswith("HP") else 2 * n


@dataclass(frozen=True)
class FixedPointConfiguration:
    ambient_dim: int
    components: tuple[ManifoldRecord, ...]

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=lambda m: (m.dim, m.label), reverse=True))
        object.__setattr__(self, "components", comps)
        if self.ambient_dim <= 0 or self.ambient_dim % 2:
            raise ParseError("ambient dimension must be even and positive")
        for m in comps:
            if m.dim >= self.ambient_dim:
                raise ParseError(f"component {m.label} is not of lower dimension than the ambient manifold")

    @property
    def implied_euler(self) -> int | None:
        if any(m.euler is None for m in self.components):
            return None
        return sum(m.euler for m in self.components)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(m.label for m in self.components)

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "components": [{"label": m.label} for m in self.components]}


def configuration(ambient_dim: int, labels) -> FixedPointConfiguration:
    """Build a configuration from catalog labels; ``S0`` expands to two points."""
    comps = []
    for label in labels:
        if label == "S0":
            comps += [POINT, POINT]
        else:
            comps.append(lookup(label))
    return FixedPointConfiguration(ambient_dim, tuple(comps))


def configuration_from_json(data) -> FixedPointConfiguration:
    try:
        ambient = data["ambient_dim"]
        raw = data["components"]
    except (TypeError, KeyError) as exc:
        raise ParseError('configuration JSON needs "ambient_dim" and "components"') from exc
    if isinstance(ambient, bool) or not isinstance(ambient, int):
        raise ParseError('"ambient_dim" must be an integer')
    comps = []
    for c in raw:
        if isinstance(c, str):
            c = {"label": c}
        if not isinstance(c, dict) or not isinstance(c.get("label"), str):
            raise ParseError('each component needs a string "label"')
        if "dim" in c:
            dim, euler = c["dim"], c.get("euler")
            if not isinstance(dim, int) or (euler is not None and not isinstance(euler, int)):
                raise ParseError(f'component {c["label"]}: "dim" and "euler" must be integers')
            comps.append(ManifoldRecord(c["label"], dim, euler, "unknown"))
        elif c["label"] == "S0":
            comps += [POINT, POINT]
        else:
            comps.append(lookup(c["label"]))
    return FixedPointConfiguration(ambient, tuple(comps))


@dataclass(frozen=True)
class Violation:
    rule: str
    culprits: tuple[str, ...]
    detail: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "culprits": list(self.culprits), "detail": self.detail}


@dataclass(frozen=True)
class ConstraintReport:
    berger_ok: bool
    parity_ok: bool
    frankel_ok: bool
    gauss_bonnet_ok: bool
    implied_euler: int | None
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return self.berger_ok and self.parity_ok and self.frankel_ok and self.gauss_bonnet_ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "berger_ok": self.berger_ok,
            "parity_ok": self.parity_ok,
            "frankel_ok": self.frankel_ok,
            "gauss_bonnet_ok": self.gauss_bonnet_ok,
            "implied_euler": self.implied_euler,
            "violations": [v.to_json() for v in self.violations],
        }


def check_configuration(cfg: FixedPointConfiguration) -> ConstraintReport:
    comps = cfg.components
    violations = []
    berger = bool(comps)
    if not berger:
        violations.append(Violation("berger", (), "fixed point set is empty"))
    parity = True
    for m in comps:
        if (cfg.ambient_dim - m.dim) % 2:
            parity = False
            violations.append(Violation("parity", (m.label,), f"codimension {cfg.ambient_dim - m.dim} is odd"))
    frankel = True
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            a, b = comps[i], comps[j]
            if a.dim + b.dim >= cfg.ambient_dim:
                frankel = False
                violations.append(
                    Violation("frankel", (a.label, b.label), f"{a.dim} + {b.dim} >= {cfg.ambient_dim}")
                )
    gauss_bonnet = True
    for m in comps:
        if m.dim <= 4 and (m.euler is None or m.euler <= 0):
            gauss_bonnet = False
            violations.append(
                Violation("gauss_bonnet_chern", (m.label,), f"dimension {m.dim} needs positive Euler characteristic")
            )
    return ConstraintReport(berger, parity, frankel, gauss_bonnet, cfg.implied_euler, tuple(violations))


class Outcome(str, Enum):
    SPHERICAL_SPACE_FORM = "spherical_space_form"
    COMPLEX_PROJECTIVE = "complex_projective"
    UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True)
class Classification:
    outcome: Outcome
    reason: str
    allowed_euler: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "reason": self.reason,
            "allowed_euler": None if self.allowed_euler is None else list(self.allowed_euler),
        }


def grove_searle_classify(cfg: FixedPointConfiguration) -> Classification:
    comps = cfg.components
    d = cfg.ambient_dim // 2
    codim2 = [m for m in comps if cfg.ambient_dim - m.dim == 2]
    points = [m for m in comps if m.dim == 0]
    if len(comps) == 2 and len(points) == 2:
        return Classification(
            Outcome.SPHERICAL_SPACE_FORM,
            "two isolated fixed points (N = S^0): M is a sphere",
            (2,),
        )
    if len(comps) == 1 and codim2:
        return Classification(
            Outcome.SPHERICAL_SPACE_FORM,
            "connected codimension-2 fixed set: M is S^2d or RP^2d (odd dimensions: lens spaces S^(2d+1)/Z_m)",
            (1, 2),
        )
    if len(comps) == 2 and len(points) == 1 and codim2 and codim2[0].dim > 0:
        return Classification(
            Outcome.COMPLEX_PROJECTIVE,
            f"almost connected fixed set N + {{p}} with N of codimension 2: M is CP^{d}",
            (d + 1,),
        )
    if codim2:
        return Classification(
            Outcome.UNCONSTRAINED,
            "codimension-2 component present: M lies in {S^2d, RP^2d, CP^d}",
            (1, 2, d + 1),
        )
    return Classification(Outcome.UNCONSTRAINED, "no Grove-Searle rule applies")


def grove_searle_consistent(cfg: FixedPointConfiguration, cls: Classification | None = None) -> bool:
    """False when the implied Euler characteristic contradicts the Grove-Searle outcome."""
    cls = cls or grove_searle_classify(cfg)
    codim2 = [m for m in cfg.components if cfg.ambient_dim - m.dim == 2]
    if cls.outcome is Outcome.UNCONSTRAINED and codim2:
        positive = [m for m in cfg.components if m.dim > 0]
        if codim2[0].dim > 0 and len(positive) > 1:
            return False
    chi = cfg.implied_euler
    if cls.allowed_euler is None or chi is None:
        return True
    return chi in cls.allowed_euler


@dataclass(frozen=True)
class EnumeratedConfiguration:
    configuration: FixedPointConfiguration
    implied_euler: int
    classification: Classification
    consistent: bool
    realizations: tuple[str, ...]

    @property
    def admissible(self) -> bool:
        """Grove-Searle consistent and matching some known manifold of the ambient dimension."""
        return self.consistent and bool(self.realizations)

    def to_json(self) -> dict:
        return {
            "components": list(self.configuration.labels),
            "implied_euler": self.implied_euler,
            "classification": self.classification.to_json(),
            "consistent": self.consistent,
            "realizations": list(self.realizations),
            "admissible": self.admissible,
        }


def enumeration_budget() -> int:
    raw = os.environ.get("LEFSCHETZ_LAB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"LEFSCHETZ_LAB_BUDGET must be an integer, got {raw!r}") from exc


def _multiset_count(n_kinds: int, max_size: int) -> int:
    return sum(comb(n_kinds + k - 1, k) for k in range(1, max_size + 1))


def _frankel_multisets(entries, ambient_dim: int, max_components: int):
    """Multisets (non-increasing index order) in which every pair passes Frankel."""
    def grow(start, chosen, max_dim):
        if chosen:
            yield tuple(chosen)
        if len(chosen) == max_components:
            return
        for i in range(start, len(entries)):
            m = entries[i]
            if chosen and m.dim + max_dim >= ambient_dim:
                continue
            chosen.append(m)
            yield from grow(i, chosen, max(max_dim, m.dim))
            chosen.pop()

    # within a component the largest dim is compared with every new member
    yield from grow(0, [], -1)


def enumerate_configurations(
    ambient_dim: int,
    catalog_entries: list[ManifoldRecord] | None = None,
    max_components: int = 6,
    budget: int | None = None,
) -> list[EnumeratedConfiguration]:
    """Every multiset of catalog components passing :func:`check_configuration`.

    Ordered by component count, then by component labels. Grove-Searle
    contradictions stay in the list with ``consistent=False``.
    """
    if ambient_dim < 2 or ambient_dim % 2:
        raise ParseError("ambient dimension must be even and at least 2")
    if max_components < 1:
        raise ParseError("max_components must be at least 1")
    entries = catalog(ambient_dim) if catalog_entries is None else list(catalog_entries)
    ambient_models = [m for m in entries if m.dim == ambient_dim]
    if catalog_entries is not None and not ambient_models:
        ambient_models = [m for m in catalog(ambient_dim) if m.dim == ambient_dim]
    entries = sorted(
        {m for m in entries if m.dim < ambient_dim and (ambient_dim - m.dim) % 2 == 0},
        key=lambda m: (m.dim, m.label),
    )
    budget = enumeration_budget() if budget is None else budget
    if _multiset_count(len(entries), max_components) > budget:
        raise AmbientDimTooLarge(
            f"{len(entries)} component kinds with up to {max_components} components exceeds the budget of {budget}"
        )
    out = []
    for comps in _frankel_multisets(entries, ambient_dim, max_components):
        cfg = FixedPointConfiguration(ambient_dim, comps)
        report = check_configuration(cfg)
        if not report.ok:
            continue
        cls = grove_searle_classify(cfg)
        chi = report.implied_euler
        realizations = tuple(m.label for m in ambient_models if m.euler == chi)
        out.append(EnumeratedConfiguration(cfg, chi, cls, grove_searle_consistent(cfg, cls), realizations))
    out.sort(key=lambda e: (len(e.configuration.components), sorted(e.configuration.labels)))
    return out


@dataclass(frozen=True)
class GapEntry:
    dims: tuple[int, ...]
    reason: str

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "reason": self.reason}


@dataclass(frozen=True)
class GapReport:
    ambient_dim: int
    gaps: tuple[GapEntry, ...]
    forced: int

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "forced_count": self.forced, "gaps": [g.to_json() for g in self.gaps]}


def hopf_gap_report(ambient_dim: int, max_components: int = 6) -> GapReport:
    """Configurations whose positive Euler characteristic the rules cannot force.

    Components are abstract: dimension <= 4 means positive Euler characteristic
    (Gauss-Bonnet-Chern, points), dimension >= 6 means unknown.
    """
    if ambient_dim <= 0 or ambient_dim % 2:
        raise ParseError("ambient dimension must be even and positive")
    dims = list(range(0, ambient_dim - 1, 2))
    gaps, forced = [], 0

    def grow(start, chosen):
        nonlocal forced
        if chosen:
            cfg = tuple(sorted(chosen, reverse=True))
            if any(ambient_dim - x == 2 for x in cfg):
                forced += 1
            elif all(x <= 4 for x in cfg):
                forced += 1
            else:
                big = [x for x in cfg if x >= 6]
                gaps.append(
                    GapEntry(cfg, f"component(s) of dimension {big} have unknown Euler characteristic "
                                  "and no codimension-2 component triggers Grove-Searle")
                )
        if len(chosen) == max_components:
            return
        for i in range(start, len(dims)):
            x = dims[i]
            if chosen and x + max(chosen) >= ambient_dim:
                continue
            chosen.append(x)
            grow(i, chosen)
            chosen.pop()

    grow(0, [])
    gaps.sort(key=lambda g: (len(g.dims), g.dims))
    return GapReport(ambient_dim, tuple(gaps), forced)
