"""Series-parallel network trees and the class catalogue N1-N30.

A network is an element leaf or a series/parallel node.  Open and short
circuits are first-class leaves so that every class degeneracy (a resistor
pinned to zero, a conductance pinned to zero) stays inside the model and
impedances remain total as projective numerator/denominator pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Union

from .errors import InvalidElementValue
from .polys import AlgebraicValue, Poly, RootLocus, poly_gcd
from .rat import ONE, ZERO, Rat, is_rat, rat_str, sign

RESISTOR = "R"
INDUCTOR = "L"
CAPACITOR = "C"
SHORT = "short"
OPEN = "open"

Value = Union[Rat, AlgebraicValue]


@dataclass(frozen=True)
class Element:
    kind: str
    value: object = None
    label: str = ""

    def __post_init__(self):
        if self.kind in (SHORT, OPEN):
            if self.value is not None:
                raise InvalidElementValue("short/open carry no value")
            return
        v = self.value
        if isinstance(v, AlgebraicValue):
            if v.sign() <= 0:
                raise InvalidElementValue(f"{self.kind} value must be positive")
        elif not is_rat(v) or v <= 0:
            raise InvalidElementValue(f"{self.kind} value must be a positive rational")


@dataclass(frozen=True)
class Series:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("series nodes need at least two children")


@dataclass(frozen=True)
class Parallel:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("parallel nodes need at least two children")


NetworkTree = Union[Element, Series, Parallel]

short = Element(SHORT)
open_circuit = Element(OPEN)


def _value_key(v) -> str:
    if isinstance(v, AlgebraicValue):
        return "~" + v.approx(20)
    return rat_str(v) if v is not None else ""


def canonical_key(tree: NetworkTree):
    """Structural sort key; fixes child order for deterministic output."""
    if isinstance(tree, Element):
        return (0, tree.kind, _value_key(tree.value), tree.label)
    tag = 1 if isinstance(tree, Series) else 2
    return (tag, tuple(canonical_key(c) for c in tree.children))


def series(*children: NetworkTree) -> NetworkTree:
    """Series composition with short/open identities collapsed."""
    kids: list[NetworkTree] = []
    for c in children:
        if isinstance(c, Element) and c.kind == SHORT:
            continue
        if isinstance(c, Series):
            kids.extend(c.children)
        else:
            kids.append(c)
    if any(isinstance(c, Element) and c.kind == OPEN for c in kids):
        return open_circuit
    if not kids:
        return short
    if len(kids) == 1:
        return kids[0]
    return Series(tuple(sorted(kids, key=canonical_key)))


def parallel(*children: NetworkTree) -> NetworkTree:
    """Parallel composition with short/open identities collapsed."""
    kids: list[NetworkTree] = []
    for c in children:
        if isinstance(c, Element) and c.kind == OPEN:
            continue
        if isinstance(c, Parallel):
            kids.extend(c.children)
        else:
            kids.append(c)
    if any(isinstance(c, Element) and c.kind == SHORT for c in kids):
        return short
    if not kids:
        return open_circuit
    if len(kids) == 1:
        return kids[0]
    return Parallel(tuple(sorted(kids, key=canonical_key)))


def resistor(value, label="") -> Element:
    return Element(RESISTOR, value, label)


def inductor(value, label="") -> Element:
    return Element(INDUCTOR, value, label)


def capacitor(value, label="") -> Element:
    return Element(CAPACITOR, value, label)


def elements_of(tree: NetworkTree) -> list[Element]:
    if isinstance(tree, Element):
        return [] if tree.kind in (SHORT, OPEN) else [tree]
    out = []
    for c in tree.children:
        out.extend(elements_of(c))
    return out


def element_counts(tree: NetworkTree) -> dict[str, int]:
    counts = {RESISTOR: 0, INDUCTOR: 0, CAPACITOR: 0}
    for e in elements_of(tree):
        counts[e.kind] += 1
    return counts


def storage_count(tree: NetworkTree) -> int:
    c = element_counts(tree)
    return c[INDUCTOR] + c[CAPACITOR]


# ---------------------------------------------------------------------------
# impedance as a canonical projective pair


def canonical_pair(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    """Reduce to coprime, joint content one, positive normalized leader."""
    if num.is_zero() and den.is_zero():
        raise ValueError("0/0 impedance")
    if num and den:
        g = poly_gcd(num, den)
        if g.degree >= 1:
            num, den = num.exact_div(g), den.exact_div(g)
    joint = Poly(num.coeffs + den.coeffs)
    c = joint.content()
    lead = den.lead if den else num.lead
    if lead < 0:
        c = -c
    num, den = num.scale(ONE / c), den.scale(ONE / c)
    return num, den


class Impedance:
    """Canonical projective rational function num/den."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        self.num, self.den = canonical_pair(num, den)

    def __eq__(self, other) -> bool:
        return isinstance(other, Impedance) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"Impedance({self.num.coeffs}, {self.den.coeffs})"

    @property
    def degree(self) -> int:
        """McMillan degree of the canonical form."""
        return max(self.num.degree, self.den.degree)

    def reciprocal(self) -> "Impedance":
        return Impedance(self.den, self.num)

    def series(self, other: "Impedance") -> "Impedance":
        return Impedance(self.num * other.den + other.num * self.den, self.den * other.den)

    def parallel(self, other: "Impedance") -> "Impedance":
        return Impedance(self.num * other.num, self.num * other.den + other.num * self.den)

    def frequency_inverted(self) -> "Impedance":
        """Z(1/s) in canonical form."""
        n = self.degree
        rev = lambda p: Poly(tuple(p.coef(n - i) for i in range(n + 1)))
        return Impedance(rev(self.num), rev(self.den))

    def plus_const(self, r) -> "Impedance":
        return Impedance(self.num + self.den.scale(r), self.den)

    def scaled(self, k) -> "Impedance":
        return Impedance(self.num.scale(k), self.den)


ZSHORT = Impedance(Poly(), Poly((ONE,)))
ZOPEN = Impedance(Poly((ONE,)), Poly())


def impedance(tree: NetworkTree) -> Impedance:
    """Exact driving-point impedance of the tree (rational values only)."""
    if isinstance(tree, Element):
        if tree.kind == SHORT:
            return ZSHORT
        if tree.kind == OPEN:
            return ZOPEN
        if isinstance(tree.value, AlgebraicValue):
            raise ValueError("impedance() needs rational element values")
        v = tree.value
        if tree.kind == RESISTOR:
            return Impedance(Poly((v,)), Poly((ONE,)))
        if tree.kind == INDUCTOR:
            return Impedance(Poly((ZERO, v)), Poly((ONE,)))
        return Impedance(Poly((ONE,)), Poly((ZERO, v)))
    acc = None
    for c in tree.children:
        z = impedance(c)
        if acc is None:
            acc = z
        else:
            acc = acc.series(z) if isinstance(tree, Series) else acc.parallel(z)
    return acc


# ---------------------------------------------------------------------------
# the i / d / p transforms


TRANSFORMS = ("identity", "i", "d", "p")

_COMPOSE = {
    ("identity", "identity"): "identity",
    ("identity", "i"): "i",
    ("identity", "d"): "d",
    ("identity", "p"): "p",
    ("i", "i"): "identity",
    ("i", "d"): "p",
    ("i", "p"): "d",
    ("d", "d"): "identity",
    ("d", "p"): "i",
    ("p", "p"): "identity",
}


def compose_transforms(t1: str, t2: str) -> str:
    key = (t1, t2) if (t1, t2) in _COMPOSE else (t2, t1)
    return _COMPOSE[key]


def _invert_value(v):
    if isinstance(v, AlgebraicValue):
        return AlgebraicValue(v.den, v.num, v.locus)
    return ONE / v


def transform(tree: NetworkTree, t: str) -> NetworkTree:
    """Frequency inversion (i), duality (d), or both (p)."""
    if t == "identity":
        return tree
    if t == "p":
        return transform(transform(tree, "i"), "d")
    if isinstance(tree, Element):
        if t == "i":
            if tree.kind == INDUCTOR:
                return Element(CAPACITOR, _invert_value(tree.value), tree.label)
            if tree.kind == CAPACITOR:
                return Element(INDUCTOR, _invert_value(tree.value), tree.label)
            return tree
        # duality: invert each element impedance, swap series/parallel
        if tree.kind == SHORT:
            return open_circuit
        if tree.kind == OPEN:
            return short
        if tree.kind == RESISTOR:
            return Element(RESISTOR, _invert_value(tree.value), tree.label)
        if tree.kind == INDUCTOR:
            return Element(CAPACITOR, tree.value, tree.label)
        return Element(INDUCTOR, tree.value, tree.label)
    kids = tuple(transform(c, t) for c in tree.children)
    if t == "i":
        return series(*kids) if isinstance(tree, Series) else parallel(*kids)
    return parallel(*kids) if isinstance(tree, Series) else series(*kids)


# ---------------------------------------------------------------------------
# class catalogue


def _s(*kids):
    return ("series",) + kids


def _p(*kids):
    return ("parallel",) + kids


def _slot(label):
    return ("slot", label)


_R1, _R2, _R3, _R4, _R5 = (_slot(f"R{i}") for i in range(1, 6))
_G1, _G2, _G3, _G4 = (_slot(f"G{i}") for i in range(1, 5))
_L1, _L2 = _slot("L1"), _slot("L2")
_C1, _C2, _C3 = _slot("C1"), _slot("C2"), _slot("C3")

# label -> slot kind ("R" resistance, "G" conductance, "L", "C"); strict set
# lists the labels whose values must be strictly positive.
BASE_TEMPLATES: dict[str, dict] = {
    "N1": {"tree": _R1, "kinds": {"R1": "R"}, "strict": ()},
    "N2": {"tree": _s(_R1, _p(_G2, _C1)), "kinds": {"R1": "R", "G2": "G", "C1": "C"}, "strict": ("C1",)},
    "N3": {"tree": _s(_R1, _p(_G2, _L1)), "kinds": {"R1": "R", "G2": "G", "L1": "L"}, "strict": ("L1",)},
    "N2a": {"tree": _p(_G1, _s(_R2, _C1)), "kinds": {"G1": "G", "R2": "R", "C1": "C"}, "strict": ("C1",)},
    "N3a": {"tree": _p(_G1, _s(_R2, _L1)), "kinds": {"G1": "G", "R2": "R", "L1": "L"}, "strict": ("L1",)},
    "N4": {
        "tree": _s(_R1, _p(_s(_R2, _p(_G3, _C1)), _C2)),
        "kinds": {"R1": "R", "R2": "R", "G3": "G", "C1": "C", "C2": "C"},
        "strict": ("R2", "C1", "C2"),
    },
    "N5": {
        "tree": _s(_R1, _p(_s(_R2, _p(_G3, _L1)), _L2)),
        "kinds": {"R1": "R", "R2": "R", "G3": "G", "L1": "L", "L2": "L"},
        "strict": ("R2", "L1", "L2"),
    },
    "N6": {
        "tree": _s(_R1, _p(_s(_R2, _p(_G3, _C1)), _L1)),
        "kinds": {"R1": "R", "R2": "R", "G3": "G", "C1": "C", "L1": "L"},
        "strict": ("C1", "L1"),
    },
    "N7": {
        "tree": _s(_R1, _p(_s(_R2, _p(_G3, _L1)), _C1)),
        "kinds": {"R1": "R", "R2": "R", "G3": "G", "L1": "L", "C1": "C"},
        "strict": ("C1", "L1"),
    },
    "N8": {
        "tree": _p(_G1, _s(_C1, _p(_G2, _s(_R3, _L1)))),
        "kinds": {"G1": "G", "G2": "G", "R3": "R", "C1": "C", "L1": "L"},
        "strict": ("C1", "L1"),
    },
    "N9": {
        "tree": _p(_G1, _s(_L1, _p(_G2, _s(_R3, _C1)))),
        "kinds": {"G1": "G", "G2": "G", "R3": "R", "C1": "C", "L1": "L"},
        "strict": ("C1", "L1"),
    },
    "N10": {
        "tree": _s(_R1, _p(_C3, _s(_R2, _p(_C2, _s(_R3, _p(_C1, _G4)))))),
        "kinds": {"R1": "R", "R2": "R", "R3": "R", "G4": "G", "C1": "C", "C2": "C", "C3": "C"},
        "strict": ("R2", "R3", "C1", "C2", "C3"),
    },
    "N11": {
        "tree": _s(_R4, _p(_s(_R1, _p(_s(_R2, _p(_G3, _C1)), _L1)), _s(_R5, _L2))),
        "kinds": {"R1": "R", "R2": "R", "G3": "G", "R4": "R", "R5": "R", "C1": "C", "L1": "L", "L2": "L"},
        "strict": ("C1", "L1", "L2"),
    },
    "N12": {
        "tree": _s(_R4, _p(_s(_R1, _p(_s(_R2, _p(_G3, _L1)), _C1)), _s(_R5, _L2))),
        "kinds": {"R1": "R", "R2": "R", "G3": "G", "R4": "R", "R5": "R", "C1": "C", "L1": "L", "L2": "L"},
        "strict": ("C1", "L1", "L2"),
    },
    "N13": {
        "tree": _s(_R4, _p(_p(_G1, _s(_C1, _p(_G2, _s(_R3, _L1)))), _s(_R5, _L2))),
        "kinds": {"G1": "G", "G2": "G", "R3": "R", "R4": "R", "R5": "R", "C1": "C", "L1": "L", "L2": "L"},
        "strict": ("C1", "L1", "L2"),
    },
    "N14": {
        "tree": _s(_R4, _p(_p(_G1, _s(_L1, _p(_G2, _s(_R3, _C1)))), _s(_R5, _L2))),
        "kinds": {"G1": "G", "G2": "G", "R3": "R", "R4": "R", "R5": "R", "C1": "C", "L1": "L", "L2": "L"},
        "strict": ("C1", "L1", "L2"),
    },
    "N15": {
        "tree": _s(_R4, _p(_s(_R1, _p(_s(_R2, _p(_G3, _L1)), _L2)), _s(_R5, _C1))),
        "kinds": {"R1": "R", "R2": "R", "G3": "G", "R4": "R", "R5": "R", "C1": "C", "L1": "L", "L2": "L"},
        "strict": ("R2", "C1", "L1", "L2"),
    },
}

# N16-N30: parent class and the label pinned to zero.
DEGENERATE_CLASSES: dict[str, tuple[str, str]] = {
    "N16": ("N11", "R1"),
    "N17": ("N11", "G3"),
    "N18": ("N11", "R5"),
    "N19": ("N12", "R1"),
    "N20": ("N12", "G3"),
    "N21": ("N12", "R5"),
    "N22": ("N13", "G1"),
    "N23": ("N13", "R3"),
    "N24": ("N13", "R5"),
    "N25": ("N14", "G1"),
    "N26": ("N14", "R3"),
    "N27": ("N14", "R5"),
    "N28": ("N15", "R1"),
    "N29": ("N15", "G3"),
    "N30": ("N15", "R5"),
}

ALL_CLASSES = tuple(BASE_TEMPLATES) + tuple(DEGENERATE_CLASSES)


@dataclass(frozen=True)
class ClassId:
    base: str
    transform: str = "identity"

    def __post_init__(self):
        if self.base not in BASE_TEMPLATES and self.base not in DEGENERATE_CLASSES:
            raise ValueError(f"unknown network class {self.base}")
        if self.transform not in TRANSFORMS:
            raise ValueError(f"unknown transform {self.transform}")

    def __str__(self):
        return self.base if self.transform == "identity" else f"{self.base}^{self.transform}"


def class_template(base: str) -> tuple[dict, str | None]:
    """(template, pinned-zero label or None) for a class name."""
    if base in BASE_TEMPLATES:
        return BASE_TEMPLATES[base], None
    parent, pinned = DEGENERATE_CLASSES[base]
    return BASE_TEMPLATES[parent], pinned


def _value_sign(v) -> int:
    if isinstance(v, AlgebraicValue):
        return v.sign()
    return sign(v)


def _build_slot(kind: str, value, label: str, strict: bool) -> NetworkTree:
    s = _value_sign(value)
    if s < 0:
        raise InvalidElementValue(f"{label} must be nonnegative")
    if kind in ("L", "C") and s == 0:
        raise InvalidElementValue(f"{label} must be strictly positive")
    if strict and s == 0:
        raise InvalidElementValue(f"{label} must be strictly positive in this class")
    if s == 0:
        return short if kind == "R" else open_circuit
    if kind == "G":
        return resistor(_invert_value(value), label)
    if kind == "R":
        return resistor(value, label)
    if kind == "L":
        return inductor(value, label)
    return capacitor(value, label)


def instantiate(class_id: ClassId, values: dict) -> NetworkTree:
    """Build the class topology with the given exact element values.

    Conductance slots with value zero become open branches, resistance
    slots with value zero become shorts; for N16-N30 the table-pinned
    label is forced to its degenerate value regardless of input.
    """
    template, pinned = class_template(class_id.base)
    kinds = template["kinds"]
    strict = set(template["strict"])

    def build(node) -> NetworkTree:
        tag = node[0]
        if tag == "slot":
            label = node[1]
            if label == pinned:
                value = ZERO
            elif label in values:
                value = values[label]
            else:
                raise InvalidElementValue(f"missing value for {label}")
            return _build_slot(kinds[label], value, label, label in strict and label != pinned)
        kids = [build(k) for k in node[1:]]
        return series(*kids) if tag == "series" else parallel(*kids)

    tree = build(template["tree"])
    return transform(tree, class_id.transform)


def class_labels(base: str) -> list[str]:
    template, pinned = class_template(base)
    return [lab for lab in template["kinds"] if lab != pinned]


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class SynthesisResult:
    class_id: ClassId
    network: NetworkTree
    values: dict = field(default_factory=dict)
    witness_x: object = None  # Rat | RootLocus | None
    witness_z: object = None
    verified: str = "exact"

    def element_total(self) -> int:
        c = element_counts(self.network)
        return c[RESISTOR] + c[INDUCTOR] + c[CAPACITOR]


# ---------------------------------------------------------------------------
# the two-resistor shifting identity and random trees


def fig9_transform(r1, g1, alpha1):
    """Forward element map between the two equivalent bridge-around forms:
    series resistor + shunted scaled branch  ->  shunt resistor + series
    scaled branch."""
    k = ONE + r1 * g1
    return r1 * k, g1 / k, alpha1 * k * k


def fig9_inverse(r2, g2, alpha2):
    k = ONE + r2 * g2
    return r2 / k, g2 * k, alpha2 / (k * k)


def _random_value(rnd: random.Random):
    den = rnd.choice((1, 2, 4, 8))
    k = rnd.randint(max(1, den // 8), 8 * den)
    return Rat(k, den)


def random_network(storage_budget: int, resistor_budget: int, seed) -> NetworkTree:
    """Random series-parallel tree with exactly `storage_budget` storage
    elements and at most `resistor_budget` resistors; dyadic values in
    [1/8, 8]."""
    if storage_budget < 0 or resistor_budget < 0 or storage_budget + resistor_budget == 0:
        raise ValueError("budgets must be nonnegative and not both zero")
    rnd = seed if isinstance(seed, random.Random) else random.Random(seed)
    n_res = rnd.randint(0, resistor_budget)
    if storage_budget + n_res == 0:
        n_res = 1

    def leaf(is_storage: bool) -> Element:
        if not is_storage:
            return resistor(_random_value(rnd))
        if rnd.random() < 0.5:
            return inductor(_random_value(rnd))
        return capacitor(_random_value(rnd))

    def gen(ns: int, nr: int) -> NetworkTree:
        total = ns + nr
        if total == 1:
            return leaf(ns == 1)
        splits = [
            (s1, r1)
            for s1 in range(ns + 1)
            for r1 in range(nr + 1)
            if 1 <= s1 + r1 <= total - 1
        ]
        s1, r1 = rnd.choice(splits)
        left, right = gen(s1, r1), gen(ns - s1, nr - r1)
        return series(left, right) if rnd.random() < 0.5 else parallel(left, right)

    return gen(storage_budget, n_res)
