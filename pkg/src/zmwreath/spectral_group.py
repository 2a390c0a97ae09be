"""Desk-scale spectral models of compact groups.

A :class:`GroupModel` is either a finite group (irreps, classes with exact
Haar weights ``|c|/|G|``, a character table and optionally a Cayley table)
or a truncated U(1) whose irreps are the integers ``-L..L``. A
:class:`CentralFunction` is given by its class values (finite groups only)
or by finitely many Fourier coefficients ``alpha(zeta)``.

The function ``z`` of the Ewens and z-measures is central, so it is stored
on conjugacy classes and read on elements through their class.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Hashable, Mapping, Sequence

import mpmath

from .errors import CapabilityError, DomainError, ModelError
from .numeric import (
    GaussianRational,
    abs2,
    close,
    conj,
    is_zero,
    simplify,
    to_json_value,
    to_mp,
    to_scalar,
)

FINITE = "finite"
U1 = "u1"


@dataclass(frozen=True, eq=False)
class GroupModel:
    """Irreps, classes and (optionally) element-level data of a group."""

    name: str
    kind: str
    irreps: tuple[tuple[Hashable, int], ...]
    classes: tuple[tuple[Hashable, Fraction], ...] = ()
    char_table: Mapping[tuple[Hashable, Hashable], Any] = field(default_factory=dict)
    exact: bool = True
    cayley: tuple[tuple[int, ...], ...] | None = None
    element_classes: tuple[int, ...] | None = None
    element_names: tuple[str, ...] | None = None
    L: int | None = None

    # --- basic accessors -------------------------------------------------
    @cached_property
    def irrep_labels(self) -> tuple:
        return tuple(label for label, _ in self.irreps)

    @cached_property
    def class_labels(self) -> tuple:
        return tuple(label for label, _ in self.classes)

    @cached_property
    def _dims(self) -> dict:
        return dict(self.irreps)

    @cached_property
    def _weights(self) -> dict:
        return dict(self.classes)

    @cached_property
    def irrep_index(self) -> dict:
        return {label: i for i, label in enumerate(self.irrep_labels)}

    @cached_property
    def class_index(self) -> dict:
        return {label: i for i, label in enumerate(self.class_labels)}

    def dim(self, zeta) -> int:
        try:
            return self._dims[zeta]
        except KeyError:
            raise DomainError(f"unknown irrep label {zeta!r} in model {self.name}") from None

    def weight(self, c):
        try:
            w = self._weights[c]
        except KeyError:
            raise DomainError(f"unknown class label {c!r} in model {self.name}") from None
        return w if self.exact else to_mp(w)

    def character(self, zeta, c):
        if self.kind != FINITE:
            raise CapabilityError("u1 models carry no class-level character values")
        self.dim(zeta)
        self.weight(c)
        return self.char_table[(zeta, c)]

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    @cached_property
    def order(self) -> int:
        if not self.is_finite:
            raise CapabilityError("u1 models have no finite order")
        return sum(d * d for _, d in self.irreps)

    def class_size(self, c) -> int:
        return int(self._weights[c] * self.order)

    def parse_irrep_label(self, text):
        """Map a JSON key back to an irrep label (u1 labels are integers)."""
        if text in self._dims:
            return text
        for label in self.irrep_labels:
            if str(label) == str(text):
                return label
        raise DomainError(f"unknown irrep label {text!r} in model {self.name}")

    def parse_class_label(self, text):
        if text in self._weights:
            return text
        for label in self.class_labels:
            if str(label) == str(text):
                return label
        raise DomainError(f"unknown class label {text!r} in model {self.name}")

    def zero(self):
        return Fraction(0) if self.exact else mpmath.mpf(0)

    def one(self):
        return Fraction(1) if self.exact else mpmath.mpf(1)

    # --- element-level data ----------------------------------------------
    @property
    def has_elements(self) -> bool:
        return self.cayley is not None

    def require_elements(self) -> None:
        if not self.has_elements:
            raise CapabilityError(
                f"model {self.name} has no element-level multiplication table; "
                "wreath-product operations need a Cayley table"
            )

    @cached_property
    def identity(self) -> int:
        self.require_elements()
        for e, row in enumerate(self.cayley):
            if all(row[g] == g for g in range(len(row))):
                return e
        raise ModelError("Cayley table has no identity element")

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        self.require_elements()
        e = self.identity
        return tuple(row.index(e) for row in self.cayley)

    def multiply(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def element_class(self, g: int):
        self.require_elements()
        return self.class_labels[self.element_classes[g]]

    @property
    def elements(self) -> range:
        self.require_elements()
        return range(len(self.cayley))

    def element_index(self, name) -> int:
        if isinstance(name, int):
            return name
        if self.element_names is None:
            raise DomainError(f"model {self.name} has no element names")
        return self.element_names.index(name)

    # --- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        if not self.is_finite:
            return {"kind": U1, "name": self.name, "L": self.L}
        data = {
            "kind": FINITE,
            "name": self.name,
            "backend": "exact" if self.exact else "float",
            "order": self.order,
            "classes": [{"label": c, "size": self.class_size(c)} for c in self.class_labels],
            "irreps": [{"label": z, "dim": d} for z, d in self.irreps],
            "char_table": [
                [to_json_value(self.char_table[(z, c)]) for c in self.class_labels]
                for z in self.irrep_labels
            ],
        }
        if self.has_elements:
            data["cayley"] = [list(r) for r in self.cayley]
            data["element_classes"] = [self.class_labels[i] for i in self.element_classes]
            if self.element_names is not None:
                data["elements"] = list(self.element_names)
        return data


def _check_finite(model: GroupModel) -> GroupModel:
    weights = [w for _, w in model.classes]
    if len(set(model.class_labels)) != len(model.class_labels):
        raise ModelError("class labels must be distinct")
    if len(set(model.irrep_labels)) != len(model.irrep_labels):
        raise ModelError("irrep labels must be distinct")
    if any(w <= 0 or w > 1 for w in weights):
        raise ModelError("class weights must lie in (0, 1]")
    if sum(weights) != 1:
        raise ModelError("class weights must sum to 1 (sizes must sum to the order)")
    if len(model.irreps) != len(model.classes):
        raise ModelError("number of irreps must equal number of classes")
    for zeta in model.irrep_labels:
        for eta in model.irrep_labels:
            s = sum(
                model.weight(c) * model.char_table[(zeta, c)] * conj(model.char_table[(eta, c)])
                for c in model.class_labels
            )
            expected = 1 if zeta == eta else 0
            if not close(s, expected):
                raise ModelError(
                    f"character table violates first orthogonality at ({zeta!r}, {eta!r}): "
                    f"sum = {s}"
                )
    if model.has_elements:
        _check_cayley(model)
    return model


def _check_cayley(model: GroupModel) -> None:
    table = model.cayley
    n = len(table)
    if n != model.order:
        raise ModelError(f"Cayley table has {n} elements but the order is {model.order}")
    full = set(range(n))
    for row in table:
        if set(row) != full:
            raise ModelError("Cayley table rows must be permutations of the elements")
    for col in range(n):
        if {table[r][col] for r in range(n)} != full:
            raise ModelError("Cayley table columns must be permutations of the elements")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ModelError("Cayley table is not associative")
    if model.element_classes is None or len(model.element_classes) != n:
        raise ModelError("element_classes must give one class per element")
    inv = model.inverses
    for g in range(n):
        for h in range(n):
            conjugate = table[table[h][g]][inv[h]]
            if model.element_classes[conjugate] != model.element_classes[g]:
                raise ModelError("element_classes is not constant on conjugacy classes")
    for c in model.class_labels:
        size = sum(1 for g in range(n) if model.element_class(g) == c)
        if size != model.class_size(c):
            raise ModelError(f"class {c!r} has {size} elements in the Cayley table")
    for zeta, d in model.irreps:
        if not close(model.char_table[(zeta, model.element_class(model.identity))], d):
            raise ModelError(f"character of {zeta!r} at the identity is not its dimension")


def finite_model(
    name: str,
    irreps: Sequence[tuple[Hashable, int]],
    classes: Sequence[tuple[Hashable, int]],
    table: Sequence[Sequence[Any]],
    *,
    exact: bool = True,
    cayley=None,
    element_classes=None,
    element_names=None,
) -> GroupModel:
    """Build and validate a finite model; ``classes`` carries class sizes."""
    irreps = tuple((z, int(d)) for z, d in irreps)
    order = sum(d * d for _, d in irreps)
    if sum(size for _, size in classes) != order:
        raise ModelError(
            f"class sizes sum to {sum(s for _, s in classes)} but sum of dim^2 is {order}"
        )
    weights = tuple((c, Fraction(size, order)) for c, size in classes)
    chars = {}
    if len(table) != len(irreps):
        raise ModelError("character table needs one row per irrep")
    for (zeta, _), row in zip(irreps, table):
        if len(row) != len(classes):
            raise ModelError("character table needs one column per class")
        for (c, _), value in zip(classes, row):
            v = value if not isinstance(value, (list, tuple, str, float)) else to_scalar(value, exact)
            if not exact:
                v = to_mp(v)
            chars[(zeta, c)] = v
    if element_classes is not None:
        labels = [c for c, _ in classes]
        unknown = [c for c in element_classes if c not in labels]
        if unknown:
            raise ModelError(f"element_classes names unknown classes {unknown}")
        element_classes = tuple(labels.index(c) for c in element_classes)
    model = GroupModel(
        name=name,
        kind=FINITE,
        irreps=irreps,
        classes=weights,
        char_table=chars,
        exact=exact,
        cayley=tuple(tuple(r) for r in cayley) if cayley is not None else None,
        element_classes=element_classes,
        element_names=tuple(element_names) if element_names is not None else None,
    )
    return _check_finite(model)


def u1_model(L: int) -> GroupModel:
    """Truncated U(1): irreps are the integers ``-L..L``, all one-dimensional."""
    if L < 0:
        raise ModelError("L must be nonnegative")
    return GroupModel(
        name=f"U(1)[{L}]",
        kind=U1,
        irreps=tuple((l, 1) for l in range(-L, L + 1)),
        L=L,
    )


# --- shipped models ------------------------------------------------------------


def trivial_group() -> GroupModel:
    return finite_model("1", [("triv", 1)], [("e", 1)], [[1]], cayley=[[0]], element_classes=["e"])


def cyclic_group(k: int) -> GroupModel:
    """Z/k with one class per element; exact for k in {1, 2, 4}."""
    if k < 1:
        raise ModelError("order must be positive")
    if k == 1:
        return trivial_group()
    exact = k in (2, 4)
    cayley = [[(a + b) % k for b in range(k)] for a in range(k)]
    if k == 2:
        classes = [("e", 1), ("s", 1)]
        irreps = [("triv", 1), ("sgn", 1)]
        table = [[1, 1], [1, -1]]
        return finite_model(
            "Z/2", irreps, classes, table,
            cayley=cayley, element_classes=["e", "s"], element_names=["e", "s"],
        )
    classes = [(str(a), 1) for a in range(k)]
    irreps = [(f"chi{j}", 1) for j in range(k)]
    if exact:
        powers = [1, GaussianRational(0, 1), -1, GaussianRational(0, -1)]
        table = [[powers[(j * a) % 4] for a in range(k)] for j in range(k)]
    else:
        table = [[mpmath.expjpi(mpmath.mpf(2 * j * a) / k) for a in range(k)] for j in range(k)]
    return finite_model(
        f"Z/{k}", irreps, classes, table, exact=exact,
        cayley=cayley, element_classes=[str(a) for a in range(k)],
        element_names=[str(a) for a in range(k)],
    )


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def symmetric_group_s3() -> GroupModel:
    """S_3 with classes e (1), t transpositions (3), c 3-cycles (2)."""
    elements = [(0, 1, 2), (1, 0, 2), (2, 1, 0), (0, 2, 1), (1, 2, 0), (2, 0, 1)]
    names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
    cayley = [[elements.index(_compose(p, q)) for q in elements] for p in elements]
    element_classes = ["e", "t", "t", "t", "c", "c"]
    return finite_model(
        "S3",
        [("triv", 1), ("sgn", 1), ("std", 2)],
        [("e", 1), ("t", 3), ("c", 2)],
        [[1, 1, 1], [1, -1, 1], [2, 0, -1]],
        cayley=cayley,
        element_classes=element_classes,
        element_names=names,
    )


def klein_four() -> GroupModel:
    elements = [(0, 0), (1, 0), (0, 1), (1, 1)]
    cayley = [
        [elements.index(((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)) for b in elements] for a in elements
    ]
    classes = [("00", 1), ("10", 1), ("01", 1), ("11", 1)]
    irreps = [("++", 1), ("-+", 1), ("+-", 1), ("--", 1)]
    signs = [(0, 0), (1, 0), (0, 1), (1, 1)]
    table = [[(-1) ** (u * a + v * b) for (a, b) in elements] for (u, v) in signs]
    return finite_model(
        "Z/2xZ/2", irreps, classes, table,
        cayley=cayley, element_classes=["00", "10", "01", "11"],
        element_names=["00", "10", "01", "11"],
    )


BUILTIN_MODELS = {
    "trivial": trivial_group,
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
    "z4": lambda: cyclic_group(4),
    "s3": symmetric_group_s3,
    "z2xz2": klein_four,
}


def builtin_model(name: str) -> GroupModel:
    try:
        return BUILTIN_MODELS[name.lower()]()
    except KeyError:
        raise ModelError(f"unknown builtin model {name!r}; choose from {sorted(BUILTIN_MODELS)}") from None


# --- JSON loading ---------------------------------------------------------------


def model_from_json(data: Mapping) -> GroupModel:
    """Build a model from its JSON document, validating every invariant."""
    if not isinstance(data, Mapping):
        raise ModelError("model document must be a JSON object")
    kind = data.get("kind")
    if kind == U1:
        if "L" not in data or not isinstance(data["L"], int):
            raise ModelError("u1 model needs an integer 'L'")
        return u1_model(data["L"])
    if kind != FINITE:
        raise ModelError(f"model kind must be 'finite' or 'u1', got {kind!r}")
    try:
        classes = [(c["label"], int(c["size"])) for c in data["classes"]]
        irreps = [(z["label"], int(z["dim"])) for z in data["irreps"]]
        raw_table = data["char_table"]
    except (KeyError, TypeError) as exc:
        raise ModelError(f"finite model is missing a field: {exc}") from None
    exact = data.get("backend", "exact") == "exact"
    order = data.get("order")
    if order is not None and sum(d * d for _, d in irreps) != order:
        raise ModelError(
            f"sum of squared irrep dimensions is {sum(d * d for _, d in irreps)}, "
            f"not the stated order {order}"
        )
    table = [[to_scalar(v, exact) for v in row] for row in raw_table]
    cayley = data.get("cayley")
    element_classes = data.get("element_classes")
    if cayley is not None and element_classes is None:
        raise ModelError("a Cayley table needs 'element_classes' (one class label per element)")
    return finite_model(
        data.get("name", "G"),
        irreps,
        classes,
        table,
        exact=exact,
        cayley=cayley,
        element_classes=element_classes,
        element_names=data.get("elements"),
    )


def load_model(source) -> GroupModel:
    """Load a model from a path, a ``builtin:<name>`` string, or a parsed dict."""
    if isinstance(source, GroupModel):
        return source
    if isinstance(source, Mapping):
        return model_from_json(source)
    text = str(source)
    if text.startswith("builtin:"):
        return builtin_model(text.split(":", 1)[1])
    try:
        data = json.loads(Path(text).read_text())
    except OSError as exc:
        raise ModelError(f"cannot read model file {text}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelError(f"model file {text} is not valid JSON: {exc}") from None
    return model_from_json(data)


# --- central functions ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CentralFunction:
    """A central function given by class values or by Fourier coefficients."""

    model: GroupModel
    class_values: Mapping | None = None
    coefficients: Mapping | None = None

    def __post_init__(self):
        if (self.class_values is None) == (self.coefficients is None):
            raise ModelError("give exactly one of class_values or coefficients")
        if self.class_values is not None:
            if not self.model.is_finite:
                raise ModelError("class values need a finite model")
            missing = set(self.model.class_labels) - set(self.class_values)
            if missing:
                raise ModelError(f"class values missing for {sorted(map(str, missing))}")
            extra = set(self.class_values) - set(self.model.class_labels)
            if extra:
                raise ModelError(f"unknown classes {sorted(map(str, extra))}")
        else:
            extra = set(self.coefficients) - set(self.model.irrep_labels)
            if extra:
                raise ModelError(f"coefficients outside the model's irreps: {sorted(map(str, extra))}")

    @classmethod
    def from_class_values(cls, model: GroupModel, values) -> "CentralFunction":
        if not isinstance(values, Mapping):
            values = dict(zip(model.class_labels, values))
        values = {k: _backend_value(model, v) for k, v in values.items()}
        return cls(model, class_values=values)

    @classmethod
    def from_coefficients(cls, model: GroupModel, coeffs: Mapping) -> "CentralFunction":
        coeffs = {k: _backend_value(model, v) for k, v in coeffs.items()}
        return cls(model, coefficients=coeffs)

    @classmethod
    def character_of(cls, model: GroupModel, zeta) -> "CentralFunction":
        return cls.from_coefficients(model, {zeta: 1})

    @classmethod
    def constant(cls, model: GroupModel, value=1) -> "CentralFunction":
        if model.is_finite:
            return cls.from_class_values(model, {c: value for c in model.class_labels})
        return cls.from_coefficients(model, {0: value})

    @property
    def is_class_form(self) -> bool:
        return self.class_values is not None

    def value(self, c):
        """Value on the class ``c`` (synthesized from coefficients if needed)."""
        return self.values()[self.model.parse_class_label(c)]

    def value_at_element(self, g: int):
        return self.values()[self.model.element_class(g)]

    def values(self) -> dict:
        if self.class_values is not None:
            return dict(self.class_values)
        return _synthesize(self)

    def coefficient_map(self) -> dict:
        """``{zeta: alpha(zeta)}`` over every irrep of the model."""
        return {zeta: alpha_of(self, zeta) for zeta in self.model.irrep_labels}

    def nonvanishing(self) -> bool:
        return all(not is_zero(v) for v in self.values().values())


def _backend_value(model: GroupModel, v):
    if isinstance(v, (list, tuple, str, float)):
        v = to_scalar(v, model.exact)
    if isinstance(v, int):
        v = Fraction(v)
    if not model.exact:
        v = to_mp(v)
    return v


def _synthesize(f: CentralFunction) -> dict:
    model = f.model
    if not model.is_finite:
        raise CapabilityError("u1 central functions are only available through coefficients")
    out = {}
    for c in model.class_labels:
        total = model.zero()
        for zeta, a in f.coefficients.items():
            total = total + a * model.character(zeta, c)
        out[c] = simplify(total)
    return out


def synthesize(model: GroupModel, coeffs: Mapping) -> CentralFunction:
    """Class-value form of ``sum_zeta coeffs[zeta] chi^zeta``."""
    return CentralFunction.from_class_values(
        model, _synthesize(CentralFunction.from_coefficients(model, coeffs))
    )


def _same_model(phi: CentralFunction, psi: CentralFunction) -> GroupModel:
    if phi.model is not psi.model:
        if phi.model.to_json() != psi.model.to_json():
            raise DomainError("central functions live on different group models")
    return phi.model


def inner_product_G(phi: CentralFunction, psi: CentralFunction):
    """Haar inner product ``int phi conj(psi) dmu_G``."""
    model = _same_model(phi, psi)
    if model.is_finite:
        a = phi.values()
        b = psi.values()
        total = model.zero()
        for c in model.class_labels:
            total = total + model.weight(c) * a[c] * conj(b[c])
        return simplify(total)
    # characters of U(1) are orthonormal, so only coefficients contribute
    total = model.zero()
    for zeta, a in phi.coefficients.items():
        b = psi.coefficients.get(zeta)
        if b is not None:
            total = total + a * conj(b)
    return simplify(total)


def alpha_of(z: CentralFunction, zeta):
    """Fourier coefficient ``<z, chi^zeta>_G``."""
    model = z.model
    model.dim(zeta)
    if z.coefficients is not None:
        return z.coefficients.get(zeta, model.zero())
    total = model.zero()
    for c in model.class_labels:
        total = total + model.weight(c) * z.class_values[c] * conj(model.character(zeta, c))
    return simplify(total)


def total_I(z: CentralFunction):
    """``I = <z, z>_G``, a nonnegative real."""
    value = inner_product_G(z, z)
    return value.real if isinstance(value, GaussianRational) else value


def parseval_check(z: CentralFunction):
    """Return ``(<z,z>_G, sum |alpha|^2, difference)``."""
    lhs = total_I(z)
    rhs = z.model.zero()
    for zeta in z.model.irrep_labels:
        rhs = rhs + abs2(alpha_of(z, zeta))
    return lhs, rhs, lhs - rhs


def tau(z: CentralFunction) -> dict:
    """``{zeta: |alpha(zeta)|^2}`` over every irrep."""
    return {zeta: abs2(alpha_of(z, zeta)) for zeta in z.model.irrep_labels}


def class_of_product(model: GroupModel, elements: Sequence) -> Hashable:
    """Class of ``g_r ... g_2 g_1`` for ``elements = [g_1, ..., g_r]``."""
    if not model.is_finite:
        raise CapabilityError("u1 models carry no element-level data")
    model.require_elements()
    prod = model.identity
    for g in elements:
        prod = model.multiply(model.element_index(g), prod)
    return model.element_class(prod)


def central_function_from_json(model: GroupModel, data) -> CentralFunction:
    """Parse ``{"values": {...}}``, ``{"coeffs": {...}}`` or a bare list of class values."""
    if isinstance(data, list):
        return CentralFunction.from_class_values(model, data)
    if not isinstance(data, Mapping):
        raise ModelError("central function must be a JSON object or list")
    if "values" in data:
        values = data["values"]
        if isinstance(values, Mapping):
            values = {model.parse_class_label(k): v for k, v in values.items()}
        return CentralFunction.from_class_values(model, values)
    if "coeffs" in data:
        coeffs = {model.parse_irrep_label(k): v for k, v in data["coeffs"].items()}
        return CentralFunction.from_coefficients(model, coeffs)
    raise ModelError("central function needs 'values' or 'coeffs'")


def load_central_function(model: GroupModel, source) -> CentralFunction:
    if isinstance(source, CentralFunction):
        return source
    if isinstance(source, (Mapping, list)):
        return central_function_from_json(model, source)
    try:
        data = json.loads(Path(str(source)).read_text())
    except OSError as exc:
        raise ModelError(f"cannot read central function file {source}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelError(f"central function file {source} is not valid JSON: {exc}") from None
    return central_function_from_json(model, data)


def central_function_to_json(f: CentralFunction) -> dict:
    if f.class_values is not None:
        return {"values": {str(c): to_json_value(v) for c, v in f.class_values.items()}}
    return {"coeffs": {str(k): to_json_value(v) for k, v in f.coefficients.items()}}
