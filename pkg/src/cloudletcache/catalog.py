"""Object catalog: data items and launch-VM states tied to base images.

A catalog is the fixed universe of cacheable objects for one simulation run.
Launch-VM objects reference a base image (a Data object) from which they can
be synthesized given a client-supplied overlay.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import rng


class Kind(str, Enum):
    DATA = "Data"
    LAUNCH_VM = "LaunchVM"


class CatalogError(ValueError):
    """Invalid catalog specification or malformed catalog file."""


@dataclass(frozen=True)
class CatalogObject:
    """One cacheable object.

    ``base_id`` and ``overlay_size`` are set only for launch-VM objects:
    the overlay is the client-side delta uploaded to the cloudlet, and must
    be smaller than the referenced base image.
    """

    id: int
    kind: Kind
    size: int
    base_id: Optional[int] = None
    overlay_size: Optional[int] = None
    version: int = 1
    ttl_us: Optional[int] = None

    def __post_init__(self) -> None:
        if self.size <= 0:
            raise CatalogError(f"object {self.id}: size must be positive")
        if self.kind is Kind.LAUNCH_VM:
            if self.base_id is None:
                raise CatalogError(f"object {self.id}: launch VM needs a base_id")
            if self.overlay_size is None or self.overlay_size <= 0:
                raise CatalogError(f"object {self.id}: launch VM needs a positive overlay_size")
        else:
            if self.base_id is not None or self.overlay_size is not None:
                raise CatalogError(f"object {self.id}: data objects carry no base/overlay fields")


@dataclass(frozen=True)
class CatalogSpec:
    """Counts and size ranges used to build a synthetic catalog.

    Sizes are sampled uniformly (inclusive) from the given (min, max) ranges.
    ``base_images`` Data objects are materialized only when ``vm_objects > 0``.
    """

    data_objects: int
    vm_objects: int = 0
    base_images: int = 1
    data_size: tuple[int, int] = (65536, 65536)
    vm_size: tuple[int, int] = (2_097_152, 2_097_152)
    base_size: tuple[int, int] = (8_388_608, 8_388_608)
    overlay_size: tuple[int, int] = (102_400, 102_400)
    ttl_us: Optional[int] = None


@dataclass
class Catalog:
    """Dense-id object universe; object ``i`` lives at ``objects[i]``."""

    objects: list[CatalogObject] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.objects)

    def __getitem__(self, object_id: int) -> CatalogObject:
        if not 0 <= object_id < len(self.objects):
            raise KeyError(f"unknown object id {object_id}")
        return self.objects[object_id]

    def __contains__(self, object_id: int) -> bool:
        return 0 <= object_id < len(self.objects)

    def base_ids(self) -> list[int]:
        return sorted({o.base_id for o in self.objects if o.base_id is not None})

    def requestable_ids(self) -> list[int]:
        """Ids clients may request: every object that is not a base image."""
        bases = set(self.base_ids())
        return [o.id for o in self.objects if o.id not in bases]

    def total_bytes(self) -> int:
        return sum(o.size for o in self.objects)


def _sample_size(r, lo_hi: tuple[int, int], what: str) -> int:
    lo, hi = lo_hi
    if lo <= 0 or hi < lo:
        raise CatalogError(f"{what} range {lo_hi} is invalid (need 0 < min <= max)")
    return r.randint(lo, hi)


def build_catalog(spec: CatalogSpec, seed: int) -> Catalog:
    """Build a deterministic catalog from ``spec`` and ``seed``.

    Layout: base images first (when VMs exist), then data objects, then
    launch VMs assigned to bases round-robin. Ids are dense 0..n-1.
    """
    if spec.data_objects < 0 or spec.vm_objects < 0:
        raise CatalogError("object counts must be non-negative")
    if spec.vm_objects > 0 and spec.base_images < 1:
        raise CatalogError("vm_objects > 0 requires base_images >= 1")
    if spec.vm_objects > 0 and spec.overlay_size[1] >= spec.base_size[0]:
        raise CatalogError(
            f"overlay_size max {spec.overlay_size[1]} must be smaller than "
            f"base_size min {spec.base_size[0]}"
        )

    r = rng.stream(seed, "catalog")
    objects: list[CatalogObject] = []
    num_bases = spec.base_images if spec.vm_objects > 0 else 0

    for _ in range(num_bases):
        objects.append(
            CatalogObject(
                id=len(objects),
                kind=Kind.DATA,
                size=_sample_size(r, spec.base_size, "base_size"),
                ttl_us=spec.ttl_us,
            )
        )
    for _ in range(spec.data_objects):
        objects.append(
            CatalogObject(
                id=len(objects),
                kind=Kind.DATA,
                size=_sample_size(r, spec.data_size, "data_size"),
                ttl_us=spec.ttl_us,
            )
        )
    for i in range(spec.vm_objects):
        objects.append(
            CatalogObject(
                id=len(objects),
                kind=Kind.LAUNCH_VM,
                size=_sample_size(r, spec.vm_size, "vm_size"),
                base_id=i % num_bases,
                overlay_size=_sample_size(r, spec.overlay_size, "overlay_size"),
                ttl_us=spec.ttl_us,
            )
        )
    return Catalog(objects)


def write_catalog(catalog: Catalog, path: str) -> None:
    """Dump as ``id,kind,size,base_id|-,overlay_size|-,ttl_us|-`` lines."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# id,kind,size,base_id,overlay_size,ttl_us\n")
        for o in catalog.objects:
            base = "-" if o.base_id is None else str(o.base_id)
            overlay = "-" if o.overlay_size is None else str(o.overlay_size)
            ttl = "-" if o.ttl_us is None else str(o.ttl_us)
            fh.write(f"{o.id},{o.kind.value},{o.size},{base},{overlay},{ttl}\n")


def read_catalog(path: str) -> Catalog:
    objects: list[CatalogObject] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(",")
            if len(parts) != 6:
                raise CatalogError(f"{path}:{lineno}: expected 6 fields, got {len(parts)}")
            try:
                oid = int(parts[0])
                kind = Kind(parts[1])
                size = int(parts[2])
                base = None if parts[3] == "-" else int(parts[3])
                overlay = None if parts[4] == "-" else int(parts[4])
                ttl = None if parts[5] == "-" else int(parts[5])
            except ValueError as exc:
                raise CatalogError(f"{path}:{lineno}: {exc}") from exc
            if oid != len(objects):
                raise CatalogError(f"{path}:{lineno}: ids must be dense, expected {len(objects)}")
            objects.append(
                CatalogObject(id=oid, kind=kind, size=size, base_id=base,
                              overlay_size=overlay, ttl_us=ttl)
            )
    return Catalog(objects)
