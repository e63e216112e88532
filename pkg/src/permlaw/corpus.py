"""Constructors for the test corpus, and group-file persistence.

Group files are JSON documents:

    {
      "name": "a5",
      "degree": 5,
      "generators": [[1, 2, 0, 3, 4], ...],          # 0-based image arrays
      "certificate": {                                # optional
        "kind": "imprimitive-wreath",
        "parts": ["a5.json", "a5.json"],              # sibling file names
        "base_generators": [[...], ...],
        "block_size": 5
      }
    }

Certificates are re-verified on load; a file whose certificate no longer
matches its generators is rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

from .caps import Caps, resolve
from .errors import CertificateError, GroupFileError
from .gf import factor_prime_power, field
from .groups import (
    PermGroup,
    StructureCertificate,
    embed_block,
    embed_shift,
    embed_top,
)
from .perms import Permutation

WREATH_DEGREE_LIMIT = 1000
PSL2_Q_LIMIT = 512


# -- natural families ------------------------------------------------------------


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("symmetric degree must be >= 1")
    gens = []
    if n >= 2:
        gens.append(Permutation.from_cycles(n, [(0, 1)]))
    if n >= 3:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return PermGroup(n, gens, name=f"s{n}")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("alternating degree must be >= 1")
    gens = [Permutation.from_cycles(n, [(i, i + 1, i + 2)]) for i in range(max(n - 2, 0))]
    return PermGroup(max(n, 1), gens, name=f"a{n}")


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("cyclic order must be >= 1")
    gens = [] if n == 1 else [Permutation.from_cycles(n, [tuple(range(n))])]
    return PermGroup(max(n, 1), gens, name=f"c{n}")


def dihedral(n: int) -> PermGroup:
    """Dihedral group of order 2n in its natural action on n points."""
    if n < 3:
        raise ValueError("dihedral point count must be >= 3")
    rot = Permutation.from_cycles(n, [tuple(range(n))])
    refl = Permutation([(-i) % n for i in range(n)])
    return PermGroup(n, [rot, refl], name=f"d{n}")


def trivial_group(degree: int = 1) -> PermGroup:
    return PermGroup(degree, [], name="trivial")


# -- projective groups ---------------------------------------------------------------


def psl2(q: int) -> PermGroup:
    """The 2-dimensional projective special linear group on the q+1
    points of the projective line.

    Points 0..q-1 are the field elements in code order; point q is the
    point at infinity.  Generators are the translation x -> x+1, the
    scaling x -> sx with s the least generator of the group of nonzero
    squares (the full multiplicative group in characteristic 2), and the
    inversion x -> -1/x.
    """
    if q < 2 or q > PSL2_Q_LIMIT:
        raise ValueError(f"q must be a prime power in 2..{PSL2_Q_LIMIT}")
    F = field(q)
    infinity = q

    translation = Permutation([F.add(x, F.one) for x in range(q)] + [infinity])

    gen = F.multiplicative_generator()
    s = gen if F.p == 2 else F.mul(gen, gen)
    scaling = Permutation([F.mul(s, x) for x in range(q)] + [infinity])

    inv_images = [0] * (q + 1)
    inv_images[0] = infinity
    inv_images[infinity] = 0
    for x in range(1, q):
        inv_images[x] = F.neg(F.inv(x))
    inversion = Permutation(inv_images)

    group = PermGroup(
        q + 1,
        [translation, scaling, inversion],
        name=f"psl2_{q}",
        certificate=StructureCertificate(kind="simple-nonabelian") if q >= 4 else None,
    )
    return group


def psl3_3() -> PermGroup:
    """The 3-dimensional projective special linear group over the
    3-element field, acting on the 13 points of the projective plane.

    Points are row vectors normalised to leading coefficient 1, ordered
    by their coefficient codes; generators are the six elementary
    transvections acting by right multiplication.
    """
    points = []
    for code in range(27):
        v = (code % 3, (code // 3) % 3, code // 9)
        if v == (0, 0, 0):
            continue
        lead = next(x for x in v if x != 0)
        if lead == 1:
            points.append(v)
    index = {v: i for i, v in enumerate(points)}

    def normalise(v):
        lead = next(x for x in v if x != 0)
        inv = 1 if lead == 1 else 2  # inverses mod 3
        return tuple((x * inv) % 3 for x in v)

    gens = []
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            # elementary matrix: identity plus a 1 in row i, column j
            def apply(v, i=i, j=j):
                out = list(v)
                out[j] = (out[j] + v[i]) % 3
                return normalise(tuple(out))

            gens.append(Permutation([index[apply(v)] for v in points]))
    return PermGroup(13, gens, name="psl3_3",
                     certificate=StructureCertificate(kind="simple-nonabelian"))


def pgl2_extra_conjugator(q: int) -> Permutation:
    """A projective-line permutation normalising psl2(q) from the full
    projective general linear group: scaling by a multiplicative
    generator (a non-square in odd characteristic)."""
    F = field(q)
    gen = F.multiplicative_generator()
    return Permutation([F.mul(gen, x) for x in range(q)] + [q])


def frobenius_conjugator(q: int) -> Permutation:
    """The field automorphism x -> x^p as a projective-line permutation."""
    F = field(q)
    return Permutation([F.pow(x, F.p) for x in range(q)] + [q])


# -- products -----------------------------------------------------------------------


def direct_product(*factors: PermGroup, name: str | None = None) -> PermGroup:
    """Direct product on disjoint point sets, with a structure certificate."""
    if not factors:
        raise ValueError("need at least one factor")
    degree = sum(f.degree for f in factors)
    gens = []
    offset = 0
    for f in factors:
        for g in f.generators:
            gens.append(embed_shift(g, offset, degree))
        offset += f.degree
    cert = StructureCertificate(
        kind="direct-product",
        parts=tuple(factors),
        part_names=tuple(f.name or f"factor{i}" for i, f in enumerate(factors)),
    )
    label = name or "x".join(f.name or "G" for f in factors)
    group = PermGroup(degree, gens, name=label, certificate=cert)
    verify_certificate(group)
    return group


def wreath(base: PermGroup, top: PermGroup, name: str | None = None) -> PermGroup:
    """Imprimitive wreath product: one copy of `base` per point of `top`,
    blocks permuted by `top`.  The top action must be transitive so the
    full base is the normal closure of any one copy."""
    blocks = top.degree
    degree = base.degree * blocks
    if degree > WREATH_DEGREE_LIMIT:
        raise ValueError(f"wreath degree {degree} exceeds limit {WREATH_DEGREE_LIMIT}")
    if not top.is_transitive():
        raise ValueError("wreath construction requires a transitive top action")
    base_gens = [
        embed_block(g, j, base.degree, degree)
        for j in range(blocks)
        for g in base.generators
    ]
    top_gens = [embed_top(g, base.degree, degree) for g in top.generators]
    cert = StructureCertificate(
        kind="imprimitive-wreath",
        parts=(base, top),
        base_generators=tuple(base_gens),
        block_size=base.degree,
        part_names=(base.name or "base", top.name or "top"),
    )
    label = name or f"{base.name or 'A'}_wr_{top.name or 'B'}"
    group = PermGroup(degree, base_gens + top_gens, name=label, certificate=cert)
    verify_certificate(group)
    return group


# -- certificate verification -----------------------------------------------------------


def verify_certificate(group: PermGroup, caps: Caps | None = None) -> None:
    """Re-check a structure certificate against the group's generators.

    Raises CertificateError when the declared structure does not hold.
    Verification never trusts the certificate's own claims about parts:
    orders are recomputed via stabilizer chains.
    """
    caps = resolve(caps)
    cert = group.certificate
    if cert is None:
        return
    if cert.kind == "simple-nonabelian":
        if not group.is_perfect():
            raise CertificateError("claimed simple group is not perfect")
        if not group.is_transitive():
            raise CertificateError("claimed simple group is not transitive")
        return
    if cert.kind == "direct-product":
        if sum(p.degree for p in cert.parts) != group.degree:
            raise CertificateError("factor degrees do not cover the point set")
        expected = 1
        offset = 0
        for part in cert.parts:
            for g in part.generators:
                if not group.contains(embed_shift(g, offset, group.degree)):
                    raise CertificateError("factor generator missing from the product")
            expected *= part.order()
            offset += part.degree
        if group.order() != expected:
            raise CertificateError(
                f"product order {group.order()} != product of factor orders {expected}")
        return
    if cert.kind == "imprimitive-wreath":
        _verify_wreath(group, cert)
        return
    raise CertificateError(f"unknown certificate kind {cert.kind!r}")


def _verify_wreath(group: PermGroup, cert: StructureCertificate) -> None:
    base_comp, top = cert.parts
    d = cert.block_size
    if d != base_comp.degree or group.degree != d * top.degree:
        raise CertificateError("block size inconsistent with part degrees")
    blocks = top.degree
    base_sub = group.subgroup(cert.base_generators, name="base")
    # base generators must act within single blocks
    for g in cert.base_generators:
        touched = {p // d for p in g.moved_points()}
        if len(touched) > 1:
            raise CertificateError("base generator crosses block boundaries")
        if not group.contains(g):
            raise CertificateError("base generator missing from the group")
    if base_sub.order() != base_comp.order() ** blocks:
        raise CertificateError("base order is not the expected component power")
    # normality of the base
    for g in group.generators:
        for h in base_sub.generators:
            if not base_sub.contains(h.conjugate(g)):
                raise CertificateError("declared base is not normal")
    # the block action must exist and equal the declared top group
    block_images = []
    for g in group.generators:
        images = []
        for j in range(blocks):
            dest = {g[j * d + i] // d for i in range(d)}
            if len(dest) != 1:
                raise CertificateError("group generator does not respect blocks")
            images.append(dest.pop())
        block_images.append(Permutation(images))
    block_group = PermGroup(blocks, block_images, name="blocks")
    if block_group.order() != top.order() or not all(
        block_group.contains(g) for g in top.generators
    ):
        raise CertificateError("block action differs from the declared top group")
    if group.order() != base_sub.order() * top.order():
        raise CertificateError("group order is not |base| * |top|")


# -- persistence -------------------------------------------------------------------------


def save(group: PermGroup, path: str | Path) -> None:
    """Write a group file; certificate parts are written as sibling files."""
    path = Path(path)
    doc: dict = {
        "name": group.name or path.stem,
        "degree": group.degree,
        "generators": [list(g.images) for g in group.generators],
    }
    cert = group.certificate
    if cert is not None:
        part_files = []
        for i, part in enumerate(cert.parts):
            part_name = cert.part_names[i] if i < len(cert.part_names) else f"part{i}"
            part_file = f"{path.stem}.{part_name}.json"
            save(part, path.with_name(part_file))
            part_files.append(part_file)
        doc["certificate"] = {
            "kind": cert.kind,
            "parts": part_files,
            "base_generators": [list(g.images) for g in cert.base_generators],
            "block_size": cert.block_size,
        }
    path.write_text(json.dumps(doc, indent=1))


def load(path: str | Path, caps: Caps | None = None, _depth: int = 0) -> PermGroup:
    """Read a group file, re-verifying any certificate."""
    path = Path(path)
    if _depth > 4:
        raise GroupFileError("certificate part files nest too deeply")
    try:
        doc = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GroupFileError(f"{path}: {exc}") from exc
    for fld in ("name", "degree", "generators"):
        if fld not in doc:
            raise GroupFileError(f"{path}: missing field {fld!r}")
    degree = doc["degree"]
    if not isinstance(degree, int) or degree < 1:
        raise GroupFileError(f"{path}: field 'degree' must be a positive integer")
    gens = [_parse_images(imgs, degree, path, i) for i, imgs in enumerate(doc["generators"])]
    certificate = None
    if "certificate" in doc:
        raw = doc["certificate"]
        kind = raw.get("kind")
        if kind not in ("simple-nonabelian", "direct-product", "imprimitive-wreath"):
            raise GroupFileError(f"{path}: unknown certificate kind {kind!r}")
        parts = tuple(
            load(path.with_name(p), caps, _depth + 1) for p in raw.get("parts", [])
        )
        base_gens = tuple(
            _parse_images(imgs, degree, path, i)
            for i, imgs in enumerate(raw.get("base_generators", []))
        )
        certificate = StructureCertificate(
            kind=kind,
            parts=parts,
            base_generators=base_gens,
            block_size=raw.get("block_size", 0),
            part_names=tuple(raw.get("parts", [])),
        )
    group = PermGroup(degree, gens, name=doc["name"], certificate=certificate)
    verify_certificate(group, caps)
    return group


def _parse_images(imgs, degree: int, path: Path, position: int) -> Permutation:
    if not isinstance(imgs, list) or len(imgs) != degree:
        raise GroupFileError(
            f"{path}: generator {position} must be an image array of length {degree}")
    try:
        return Permutation(imgs)
    except Exception as exc:
        raise GroupFileError(f"{path}: generator {position}: {exc}") from exc


# -- one-stop construction ------------------------------------------------------------------


def make(kind: str, **params) -> PermGroup:
    """Build a corpus group by family name; see the CLI `make-group`."""
    if kind == "symmetric":
        return symmetric(params["n"])
    if kind == "alternating":
        return alternating(params["n"])
    if kind == "cyclic":
        return cyclic(params["n"])
    if kind == "dihedral":
        return dihedral(params["n"])
    if kind == "psl2":
        return psl2(params["q"])
    if kind == "psl3_3":
        return psl3_3()
    if kind == "direct":
        return direct_product(*params["factors"], name=params.get("name"))
    if kind == "wreath":
        return wreath(params["base"], params["top"], name=params.get("name"))
    if kind == "trivial":
        return trivial_group(params.get("degree", 1))
    raise ValueError(f"unknown group kind {kind!r}")
