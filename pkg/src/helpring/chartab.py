"""Data model, ingestion and validation for character tables.

A table carries ordinary characters, power maps for every prime dividing
the group exponent, and optionally one Brauer block per prime: the
p-regular class list, Brauer characters (values stored as lifted
cyclotomic numbers, never as modular residues) and an optional
decomposition matrix.

Validation is eager and exact: row orthogonality, power-map/element-order
consistency and degree integrality are all checked at parse time, so a
table object in hand can be trusted downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .cyclo import (
    CyclotomicNumber,
    prime_factors,
    value_from_obj,
    value_to_obj,
)


class TableError(ValueError):
    """Raised for schema violations or inconsistent table data."""


@dataclass(frozen=True)
class ConjugacyClass:
    id: str
    element_order: int
    centralizer_order: int


@dataclass(frozen=True)
class Character:
    """A class function with exact cyclotomic values.

    `kind` is "ordinary" or "brauer"; Brauer characters carry their
    prime and have values only on the p-regular classes.
    """

    name: str
    values: dict[str, CyclotomicNumber] = field(compare=False)
    kind: str = "ordinary"
    prime: int | None = None
    degree: int = 0

    def value(self, class_id: str) -> CyclotomicNumber:
        try:
            return self.values[class_id]
        except KeyError:
            raise TableError(
                f"character {self.name} has no value on class {class_id}"
            ) from None


@dataclass(frozen=True)
class BrauerBlock:
    prime: int
    regular_class_ids: tuple[str, ...]
    characters: tuple[Character, ...]
    decomposition: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class CharacterTable:
    name: str
    order: int
    exponent: int
    classes: tuple[ConjugacyClass, ...]
    power_maps: dict[int, dict[str, str]] = field(compare=False)
    ordinary: tuple[Character, ...] = ()
    brauer_blocks: tuple[BrauerBlock, ...] = ()

    # -- lookups -----------------------------------------------------

    def class_by_id(self, class_id: str) -> ConjugacyClass:
        for c in self.classes:
            if c.id == class_id:
                return c
        raise TableError(f"no class {class_id!r} in table {self.name}")

    def class_ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.classes)

    def identity_class(self) -> ConjugacyClass:
        for c in self.classes:
            if c.element_order == 1:
                return c
        raise TableError(f"table {self.name} has no identity class")

    def element_order(self, class_id: str) -> int:
        return self.class_by_id(class_id).element_order

    def class_size(self, class_id: str) -> int:
        return self.order // self.class_by_id(class_id).centralizer_order

    def is_central(self, class_id: str) -> bool:
        return self.class_by_id(class_id).centralizer_order == self.order

    def element_orders(self) -> tuple[int, ...]:
        return tuple(sorted({c.element_order for c in self.classes}))

    def block_for_prime(self, p: int) -> BrauerBlock | None:
        for b in self.brauer_blocks:
            if b.prime == p:
                return b
        return None


def class_of_power(table: CharacterTable, class_id: str, d: int) -> str:
    """Class of x^d, obtained by composing stored prime power maps.

    Every prime factor of d must have a power map in the table.
    """
    if d < 1:
        raise ValueError(f"positive exponent required, got {d}")
    current = class_id
    table.class_by_id(class_id)
    while d > 1:
        for p in prime_factors(d):
            break
        pmap = table.power_maps.get(p)
        if pmap is None:
            raise TableError(f"table {table.name} has no power map for prime {p}")
        current = pmap[current]
        d //= p
    return current


def character_value_of_tuple(psi: Character, eps) -> CyclotomicNumber:
    """Sum of eps_x * psi(x) over the support of a partial-augmentation tuple.

    For a Brauer character the tuple must vanish on p-singular classes.
    """
    total = CyclotomicNumber.from_rational(0)
    for class_id, e in eps.entries:
        if e == 0:
            continue
        if class_id not in psi.values:
            raise TableError(
                f"Brauer character {psi.name} (mod {psi.prime}) evaluated on a "
                f"tuple supported on the singular class {class_id}"
            )
        total = total + psi.values[class_id] * e
    return total


@dataclass(frozen=True)
class DecompositionReport:
    block_prime: int
    ok: bool
    failures: tuple[tuple[str, str], ...]  # (ordinary name, class id)


def validate_decomposition(table: CharacterTable, block: BrauerBlock) -> DecompositionReport:
    """Check that each ordinary character restricted to the p-regular
    classes equals the integer combination of Brauer characters given by
    the block's decomposition matrix."""
    if block.decomposition is None:
        raise TableError(f"block mod {block.prime} carries no decomposition matrix")
    d = block.decomposition
    if len(d) != len(table.ordinary) or any(len(row) != len(block.characters) for row in d):
        raise TableError(
            f"decomposition matrix mod {block.prime} has shape "
            f"{len(d)}x{len(d[0]) if d else 0}, expected "
            f"{len(table.ordinary)}x{len(block.characters)}"
        )
    failures = []
    for chi, row in zip(table.ordinary, d):
        for x in block.regular_class_ids:
            combined = CyclotomicNumber.from_rational(0)
            for dij, phi in zip(row, block.characters):
                if dij:
                    combined = combined + phi.value(x) * dij
            if combined != chi.value(x):
                failures.append((chi.name, x))
    return DecompositionReport(block.prime, not failures, tuple(failures))


# -- parsing ----------------------------------------------------------

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise TableError(message)


def _parse_character(obj, class_ids, kind, prime, identity_id, exponent, label) -> Character:
    _require(isinstance(obj, dict), f"{label}: character entry must be an object")
    name = obj.get("name")
    _require(isinstance(name, str) and name, f"{label}: character needs a name")
    raw = obj.get("values")
    _require(isinstance(raw, dict), f"character {name}: values must be an object")
    _require(
        set(raw) == set(class_ids),
        f"character {name}: values must cover exactly the classes "
        f"{sorted(class_ids)}, got {sorted(raw)}",
    )
    values = {}
    for cid in class_ids:
        try:
            v = value_from_obj(raw[cid])
        except ValueError as exc:
            raise TableError(f"character {name}, class {cid}: {exc}") from None
        _require(
            exponent % v.conductor == 0,
            f"character {name}, class {cid}: conductor {v.conductor} does not "
            f"divide the exponent {exponent}",
        )
        values[cid] = v
    deg = values[identity_id]
    _require(
        deg.is_integer() and deg.rational_value() > 0,
        f"character {name}: degree {deg!r} is not a positive integer",
    )
    return Character(
        name=name,
        values=values,
        kind=kind,
        prime=prime,
        degree=int(deg.rational_value()),
    )


def _check_row_orthogonality(table_name, classes, characters) -> None:
    weights = {c.id: Fraction(1, c.centralizer_order) for c in classes}
    conj_cache = {
        chi.name: {c.id: chi.value(c.id).conjugate() for c in classes}
        for chi in characters
    }
    for i, chi in enumerate(characters):
        for psi in characters[i:]:
            acc = CyclotomicNumber.from_rational(0)
            for c in classes:
                acc = acc + chi.value(c.id) * conj_cache[psi.name][c.id] * weights[c.id]
            expected = 1 if chi.name == psi.name else 0
            if acc != expected:
                raise TableError(
                    f"table {table_name}: row orthogonality fails for "
                    f"({chi.name}, {psi.name}): got {acc!r}"
                )


def parse_table(document) -> CharacterTable:
    """Parse and fully validate a character table.

    Accepts a JSON string or an already-decoded dict following the
    schema written by `serialize_table`.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise TableError(f"invalid JSON: {exc}") from None
    _require(isinstance(document, dict), "table document must be a JSON object")

    name = document.get("name")
    _require(isinstance(name, str) and name, "table needs a name")
    order = document.get("order")
    exponent = document.get("exponent")
    _require(isinstance(order, int) and order > 0, f"table {name}: bad group order")
    _require(isinstance(exponent, int) and exponent > 0, f"table {name}: bad exponent")

    raw_classes = document.get("classes")
    _require(
        isinstance(raw_classes, list) and raw_classes,
        f"table {name}: classes must be a non-empty list",
    )
    classes = []
    for obj in raw_classes:
        _require(isinstance(obj, dict), f"table {name}: class entries must be objects")
        cid = obj.get("id")
        eo = obj.get("element_order")
        co = obj.get("centralizer_order")
        _require(isinstance(cid, str) and cid, f"table {name}: class needs an id")
        _require(
            isinstance(eo, int) and eo > 0,
            f"class {cid}: bad element order {eo!r}",
        )
        _require(
            isinstance(co, int) and co > 0 and order % co == 0,
            f"class {cid}: centralizer order {co!r} must divide the group order",
        )
        classes.append(ConjugacyClass(cid, eo, co))
    ids = [c.id for c in classes]
    _require(len(set(ids)) == len(ids), f"table {name}: duplicate class ids")
    identities = [c for c in classes if c.element_order == 1]
    _require(
        len(identities) == 1,
        f"table {name}: expected exactly one class of element order 1, "
        f"got {len(identities)}",
    )
    _require(
        identities[0].centralizer_order == order,
        f"class {identities[0].id}: the identity class must be central",
    )
    _require(
        lcm(*(c.element_order for c in classes)) == exponent,
        f"table {name}: exponent {exponent} is not the lcm of the element orders",
    )

    # power maps for every prime dividing the exponent
    raw_maps = document.get("power_maps")
    _require(isinstance(raw_maps, dict), f"table {name}: power_maps must be an object")
    power_maps: dict[int, dict[str, str]] = {}
    for key, mapping in raw_maps.items():
        try:
            p = int(key)
        except (TypeError, ValueError):
            raise TableError(f"table {name}: bad power-map key {key!r}") from None
        _require(
            p in prime_factors(exponent),
            f"table {name}: power map for {p}, which is not a prime dividing "
            f"the exponent {exponent}",
        )
        _require(isinstance(mapping, dict), f"power map {p}: must be an object")
        _require(
            set(mapping) == set(ids),
            f"power map {p}: must cover exactly the classes",
        )
        for cid, target in mapping.items():
            _require(target in set(ids), f"power map {p}: unknown target {target!r}")
        power_maps[p] = dict(mapping)
    missing = [p for p in prime_factors(exponent) if p not in power_maps]
    _require(not missing, f"table {name}: missing power maps for primes {missing}")

    by_id = {c.id: c for c in classes}
    for p, mapping in power_maps.items():
        for cid, target in mapping.items():
            eo = by_id[cid].element_order
            expected = eo // gcd(eo, p)
            got = by_id[target].element_order
            _require(
                got == expected,
                f"power map {p}: class {cid} (order {eo}) maps to {target} "
                f"(order {got}), expected order {expected}",
            )

    identity_id = identities[0].id
    raw_ordinary = document.get("ordinary")
    _require(isinstance(raw_ordinary, list), f"table {name}: ordinary must be a list")
    _require(
        len(raw_ordinary) == len(classes),
        f"table {name}: {len(raw_ordinary)} ordinary characters for "
        f"{len(classes)} classes",
    )
    ordinary = tuple(
        _parse_character(obj, ids, "ordinary", None, identity_id, exponent, name)
        for obj in raw_ordinary
    )
    names = [chi.name for chi in ordinary]
    _require(len(set(names)) == len(names), f"table {name}: duplicate character names")

    _check_row_orthogonality(name, classes, ordinary)

    blocks = []
    raw_blocks = document.get("brauer", [])
    _require(isinstance(raw_blocks, list), f"table {name}: brauer must be a list")
    for obj in raw_blocks:
        _require(isinstance(obj, dict), f"table {name}: block entries must be objects")
        p = obj.get("prime")
        _require(
            isinstance(p, int) and p in prime_factors(order),
            f"table {name}: Brauer block prime {p!r} must divide the group order",
        )
        _require(
            all(b.prime != p for b in blocks),
            f"table {name}: duplicate Brauer block for prime {p}",
        )
        regular = tuple(c.id for c in classes if c.element_order % p != 0)
        declared = obj.get("regular_classes")
        _require(
            isinstance(declared, list) and set(declared) == set(regular),
            f"block mod {p}: regular_classes must be exactly the classes of "
            f"order coprime to {p}",
        )
        p_part = exponent
        while p_part % p == 0:
            p_part //= p
        raw_chars = obj.get("characters")
        _require(isinstance(raw_chars, list) and raw_chars, f"block mod {p}: characters missing")
        characters = tuple(
            _parse_character(c, regular, "brauer", p, identity_id, p_part, f"block mod {p}")
            for c in raw_chars
        )
        bnames = [phi.name for phi in characters]
        _require(
            len(set(bnames)) == len(bnames),
            f"block mod {p}: duplicate character names",
        )
        decomposition = None
        if "decomposition" in obj and obj["decomposition"] is not None:
            raw_d = obj["decomposition"]
            _require(
                isinstance(raw_d, list)
                and len(raw_d) == len(ordinary)
                and all(
                    isinstance(row, list)
                    and len(row) == len(characters)
                    and all(isinstance(v, int) and v >= 0 for v in row)
                    for row in raw_d
                ),
                f"block mod {p}: decomposition must be a "
                f"{len(ordinary)}x{len(characters)} matrix of nonnegative integers",
            )
            decomposition = tuple(tuple(row) for row in raw_d)
        blocks.append(BrauerBlock(p, regular, characters, decomposition))

    return CharacterTable(
        name=name,
        order=order,
        exponent=exponent,
        classes=tuple(classes),
        power_maps=power_maps,
        ordinary=ordinary,
        brauer_blocks=tuple(blocks),
    )


def serialize_table(table: CharacterTable) -> dict:
    """Inverse of parse_table up to JSON round-tripping."""
    def char_obj(chi: Character, class_ids) -> dict:
        return {
            "name": chi.name,
            "values": {cid: value_to_obj(chi.values[cid]) for cid in class_ids},
        }

    doc = {
        "name": table.name,
        "order": table.order,
        "exponent": table.exponent,
        "classes": [
            {
                "id": c.id,
                "element_order": c.element_order,
                "centralizer_order": c.centralizer_order,
            }
            for c in table.classes
        ],
        "power_maps": {
            str(p): dict(mapping) for p, mapping in sorted(table.power_maps.items())
        },
        "ordinary": [char_obj(chi, table.class_ids()) for chi in table.ordinary],
    }
    if table.brauer_blocks:
        doc["brauer"] = []
        for b in table.brauer_blocks:
            obj = {
                "prime": b.prime,
                "regular_classes": list(b.regular_class_ids),
                "characters": [char_obj(phi, b.regular_class_ids) for phi in b.characters],
            }
            if b.decomposition is not None:
                obj["decomposition"] = [list(row) for row in b.decomposition]
            doc["brauer"].append(obj)
    return doc


def load_table(path) -> CharacterTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())
