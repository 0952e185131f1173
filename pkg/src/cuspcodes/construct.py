"""Builders for surface families with prescribed A2 points.

Two constructions: the product family  s_1*...*s_k - s^3 = 0  of degree
d = sum(d_i) with deg(s) = d/3, and the residual family where the product
form is divisible by an auxiliary surface r = 0 of degree b and the
surface of interest is the exact quotient, of degree 3c - b.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .ffield import FieldCtx, field_make
from .mpoly import MPoly, monomials
from .util import seeded_rng


class DegreeNotDivisibleBy3Error(ValueError):
    pass


class PartitionMismatchError(ValueError):
    pass


class DegreeConstraintError(ValueError):
    pass


class ZeroLambdaError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionType:
    """Ordered parts d_1,...,d_k of the total degree; the order is kept as
    given because it fixes the block order of the attached code."""

    parts: tuple

    def __post_init__(self):
        if not self.parts or any(d < 1 for d in self.parts):
            raise PartitionMismatchError(f"bad parts {self.parts}")

    @property
    def degree(self):
        return sum(self.parts)

    @property
    def k(self):
        return len(self.parts)

    def pairs(self):
        k = len(self.parts)
        return [(i, j) for j in range(k) for i in range(j)]

    def label(self):
        return ",".join(map(str, self.parts))


def parse_parts(text) -> PartitionType:
    return PartitionType(tuple(int(t) for t in str(text).split(",")))


def count_direct(parts, degree=None):
    """Per-pair and total counts for the product family:
    n_ij = d_i * d_j * d/3."""
    if not isinstance(parts, PartitionType):
        parts = PartitionType(tuple(parts))
    d = parts.degree
    if degree is not None and degree != d:
        raise PartitionMismatchError(
            f"parts {parts.parts} sum to {d}, not {degree}")
    if d % 3:
        raise DegreeNotDivisibleBy3Error(f"degree {d} not divisible by 3")
    per_pair = {(i, j): parts.parts[i] * parts.parts[j] * (d // 3)
                for (i, j) in parts.pairs()}
    return per_pair, sum(per_pair.values())


def count_residual(c_parts, b):
    """Per-pair counts for the residual family: surface degree d = 3c - b,
    n_ij = 3 * c_i * c_j * (d - b)."""
    c_parts = tuple(c_parts)
    if not c_parts or any(ci < 1 for ci in c_parts) or b < 1:
        raise DegreeConstraintError(f"bad residual data c={c_parts} b={b}")
    c = sum(c_parts)
    for ci in c_parts:
        if 3 * ci < b:
            raise DegreeConstraintError(f"component degree {3 * ci} < b = {b}")
    if c < b:
        raise DegreeConstraintError(f"c = {c} < b = {b}")
    d = 3 * c - b
    k = len(c_parts)
    per_pair = {(i, j): 3 * c_parts[i] * c_parts[j] * (d - b)
                for j in range(k) for i in range(j)}
    return d, per_pair


def miyaoka_bound(d):
    """Upper bound d(d-1)^2/4 for the number of A2 points in degree d."""
    if d < 3:
        raise ValueError("degree must be >= 3")
    return d * (d - 1) ** 2 // 4


def random_homogeneous(ctx, deg, rng):
    while True:
        f = MPoly(ctx, {e: ctx.rand(rng) for e in monomials(deg)})
        if not f.is_zero():
            return f


@dataclass
class SurfaceRecipe:
    """A sampled member of one of the families, with every ingredient kept
    so identities can be re-checked exactly."""

    kind: str                 # direct | residual | fermat
    ctx: FieldCtx
    seed: int
    parts: tuple              # component degrees d_i
    s_list: list
    s: MPoly
    f: MPoly
    c_parts: tuple = None     # residual data
    b: int = None
    r: MPoly = None
    r_list: list = field(default_factory=list)
    t_list: list = field(default_factory=list)
    t: MPoly = None
    lams: tuple = None

    @property
    def degree(self):
        return self.f.total_degree()

    def expected_counts(self):
        if self.kind == "direct":
            return count_direct(self.parts)[0]
        return count_residual(self.c_parts, self.b)[1]

    def pair_systems(self):
        """The triple systems whose solutions carry the singular points.

        For the fermat family the relevant system for the pair (i, j) is
        cut by the third coordinate plane, since s = x1*x2*x3 splits."""
        out = []
        k = len(self.parts)
        for j in range(k):
            for i in range(j):
                if self.kind == "fermat":
                    l = 3 - i - j  # the remaining index among 0,1,2
                    plane = MPoly.variable(self.ctx, l + 1)
                    out.append(((i, j), (plane, self.s_list[i], self.s_list[j])))
                else:
                    out.append(((i, j), (self.s_list[i], self.s_list[j], self.s)))
        return out

    def check_identity(self):
        """Defining identity of the recipe, as an exact polynomial equation."""
        prod = MPoly.constant(self.ctx, 1)
        for si in self.s_list:
            prod = prod * si
        lhs = prod - self.s ** 3
        if self.kind == "direct":
            return lhs == self.f
        return lhs == self.f * self.r


def build_direct(parts, ctx, seed=0):
    """Sample s_1..s_k and s from the seed and assemble prod(s_i) - s^3.

    Certification (transversality, A2 classification, the rational scan)
    is a separate step; sampling itself always succeeds."""
    if not isinstance(parts, PartitionType):
        parts = PartitionType(tuple(parts))
    d = parts.degree
    if d % 3:
        raise DegreeNotDivisibleBy3Error(f"degree {d} not divisible by 3")
    rng = seeded_rng("direct", parts.parts, ctx.p, ctx.k, ctx.seed, seed)
    s_list = [random_homogeneous(ctx, di, rng) for di in parts.parts]
    s = random_homogeneous(ctx, d // 3, rng)
    prod = MPoly.constant(ctx, 1)
    for si in s_list:
        prod = prod * si
    f = prod - s ** 3
    assert not f.is_zero(), "degenerate sample: product equals the cube"
    return SurfaceRecipe(kind="direct", ctx=ctx, seed=seed, parts=parts.parts,
                         s_list=s_list, s=s, f=f)


def build_residual(c_parts, b, ctx, seed=0):
    """Sample the residual family: s_i = r_i^3 + r*t_i, s = prod(r_i) + r*t;
    the assembled form prod(s_i) - s^3 is exactly divisible by r and the
    quotient is the surface."""
    c_parts = tuple(c_parts)
    d, _ = count_residual(c_parts, b)
    c = sum(c_parts)
    rng = seeded_rng("residual", c_parts, b, ctx.p, ctx.k, ctx.seed, seed)
    r = random_homogeneous(ctx, b, rng)
    r_list = [random_homogeneous(ctx, ci, rng) for ci in c_parts]
    t_list = [random_homogeneous(ctx, 3 * ci - b, rng) for ci in c_parts]
    t = random_homogeneous(ctx, c - b, rng)
    s_list = [r_list[i] ** 3 + r * t_list[i] for i in range(len(c_parts))]
    s_poly = MPoly.constant(ctx, 1)
    for ri in r_list:
        s_poly = s_poly * ri
    s_poly = s_poly + r * t
    prod = MPoly.constant(ctx, 1)
    for si in s_list:
        prod = prod * si
    f = (prod - s_poly ** 3).divide_exact(r)
    assert f.total_degree() == d
    return SurfaceRecipe(kind="residual", ctx=ctx, seed=seed,
                         parts=tuple(3 * ci for ci in c_parts),
                         s_list=s_list, s=s_poly, f=f,
                         c_parts=c_parts, b=b, r=r, r_list=r_list,
                         t_list=t_list, t=t)


def fermat_family(lams, ctx):
    """The explicit 27-point sextic: r the Fermat cubic, components
    s_i = x_i^3 + lam_i * r for i = 1..3 and s = x1*x2*x3.

    The quotient is also expanded independently and the two forms are
    required to agree, so the assembled surface is self-checked."""
    lams = tuple(ctx.el(v) for v in lams)
    if len(lams) != 3 or any(not v for v in lams):
        raise ZeroLambdaError("all three coefficients must be nonzero")
    x = [MPoly.variable(ctx, i) for i in range(4)]
    r = x[0] ** 3 + x[1] ** 3 + x[2] ** 3 + x[3] ** 3
    s_list = [x[i + 1] ** 3 + r * lams[i] for i in range(3)]
    s = x[1] * x[2] * x[3]
    prod = s_list[0] * s_list[1] * s_list[2]
    f = (prod - s ** 3).divide_exact(r)

    l1, l2, l3 = lams
    cubes = [x[1] ** 3, x[2] ** 3, x[3] ** 3]
    expected = (cubes[1] * cubes[2] * l1 + cubes[0] * cubes[2] * l2
                + cubes[0] * cubes[1] * l3
                + (cubes[2] * (l1 * l2) + cubes[1] * (l1 * l3)
                   + cubes[0] * (l2 * l3)) * r
                + r * r * (l1 * l2 * l3))
    assert f == expected, "quotient does not match the expanded sextic"
    return SurfaceRecipe(kind="fermat", ctx=ctx, seed=0, parts=(3, 3, 3),
                         s_list=s_list, s=s, f=f, c_parts=(1, 1, 1), b=3,
                         r=r, r_list=[x[1], x[2], x[3]],
                         t_list=[MPoly.constant(ctx, v) for v in lams],
                         t=MPoly.zero(ctx), lams=lams)


# ---------------------------------------------------------------------------
# recipe serialization: a directory of polynomial text files + manifest

def save_recipe(recipe: SurfaceRecipe, path):
    os.makedirs(path, exist_ok=True)
    lines = [f"kind={recipe.kind}",
             f"parts={','.join(map(str, recipe.parts))}",
             f"prime={recipe.ctx.p}",
             f"extension={recipe.ctx.k}",
             f"seed={recipe.seed}"]
    if recipe.kind in ("residual", "fermat"):
        lines.append(f"c={','.join(map(str, recipe.c_parts))}")
        lines.append(f"b={recipe.b}")
    if recipe.kind == "fermat":
        lines.append(f"lambda={','.join(str(v.int_value()) for v in recipe.lams)}")
    with open(os.path.join(path, "manifest.txt"), "w") as fh:
        fh.write("\n".join(lines) + "\n")

    def dump(name, poly):
        with open(os.path.join(path, name), "w") as fh:
            fh.write(poly.to_text())

    for i, si in enumerate(recipe.s_list, start=1):
        dump(f"s{i}.poly", si)
    dump("s.poly", recipe.s)
    dump("f.poly", recipe.f)
    if recipe.kind in ("residual", "fermat"):
        dump("r.poly", recipe.r)
        for i, ri in enumerate(recipe.r_list, start=1):
            dump(f"r{i}.poly", ri)
        for i, ti in enumerate(recipe.t_list, start=1):
            dump(f"t{i}.poly", ti)
        dump("t.poly", recipe.t)


def load_recipe(path) -> SurfaceRecipe:
    manifest = {}
    with open(os.path.join(path, "manifest.txt")) as fh:
        for line in fh:
            line = line.strip()
            if line:
                key, _, val = line.partition("=")
                manifest[key] = val
    ctx = field_make(int(manifest["prime"]), int(manifest["extension"]))
    kind = manifest["kind"]
    parts = tuple(int(t) for t in manifest["parts"].split(","))

    def grab(name):
        with open(os.path.join(path, name)) as fh:
            return MPoly.parse(fh.read(), ctx)

    s_list = [grab(f"s{i}.poly") for i in range(1, len(parts) + 1)]
    rec = SurfaceRecipe(kind=kind, ctx=ctx, seed=int(manifest["seed"]),
                        parts=parts, s_list=s_list, s=grab("s.poly"),
                        f=grab("f.poly"))
    if kind in ("residual", "fermat"):
        rec.c_parts = tuple(int(t) for t in manifest["c"].split(","))
        rec.b = int(manifest["b"])
        rec.r = grab("r.poly")
        rec.r_list = [grab(f"r{i}.poly") for i in range(1, len(parts) + 1)]
        rec.t_list = [grab(f"t{i}.poly") for i in range(1, len(parts) + 1)]
        rec.t = grab("t.poly")
    if kind == "fermat":
        rec.lams = tuple(ctx.el(int(t)) for t in manifest["lambda"].split(","))
    assert rec.check_identity(), "recipe files violate the defining identity"
    return rec
