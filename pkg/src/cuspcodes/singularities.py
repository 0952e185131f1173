"""Finding and classifying singular points of surfaces over finite fields,
solving the triple systems that carry them, and certifying samples.

A point is accepted as type A2 when the local Hessian has rank exactly 2
and the cubic part of the local equation does not vanish on the kernel
line; rank 3 is A1; anything else is reported as AkOrWorse.  Everything
is exact, so there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import linalg
from .construct import SurfaceRecipe, count_direct, count_residual
from .mpoly import (ChartMissesError, MPoly, UPoly, eliminate_system,
                    embedding, up_roots, up_squarefree)
from .util import seeded_rng

A1 = "A1"
A2 = "A2"
AK_OR_WORSE = "AkOrWorse"
UNCLASSIFIED = "Unclassified"


class CharacteristicDividesDegreeError(ValueError):
    pass


class NotSingularError(ValueError):
    pass


class SeparationError(ChartMissesError):
    """No seeded coordinate change produced a separating projection."""


class RetriesExhaustedError(RuntimeError):
    pass


def normalize_point(P):
    for x in P:
        if x:
            inv = x.inv()
            return tuple(y * inv for y in P)
    raise ValueError("zero vector is not a projective point")


def point_key(P):
    return tuple(x.c for x in P)


# ---------------------------------------------------------------------------
# rational scan of P^3(F_p)

def scan_rational_singular(f: MPoly, ctx=None):
    """All points of P^3 over the coefficient field where all four partials
    of f vanish.  Exhaustive: p^3 + p^2 + p + 1 points."""
    ctx = ctx or f.ctx
    d = f.total_degree()
    if d % ctx.p == 0:
        raise CharacteristicDividesDegreeError(
            f"characteristic {ctx.p} divides deg f = {d}")
    partials = [f.diff(i) for i in range(4)]
    if ctx.k == 1:
        pts = _scan_prime(partials, ctx)
    else:
        pts = _scan_generic(partials, ctx)
    pts.sort(key=point_key)
    return pts


def _scan_prime(partials, ctx):
    import numpy as np

    p = ctx.p
    out = []
    for lead in range(4):
        nfree = 3 - lead
        if nfree:
            grids = np.meshgrid(*([np.arange(p, dtype=np.int64)] * nfree),
                                indexing="ij")
            free = [g.reshape(-1) for g in grids]
            npts = free[0].shape[0]
        else:
            free = []
            npts = 1
        coords = []
        for i in range(4):
            if i < lead:
                coords.append(np.zeros(npts, dtype=np.int64))
            elif i == lead:
                coords.append(np.ones(npts, dtype=np.int64))
            else:
                coords.append(free[i - lead - 1])
        mask = np.ones(npts, dtype=bool)
        for g in partials:
            mask &= _np_eval(g, coords, p) == 0
            if not mask.any():
                break
        for idx in np.nonzero(mask)[0]:
            out.append(tuple(ctx.el(int(coords[i][idx])) for i in range(4)))
    return out


def _np_eval(poly, coords, p):
    import numpy as np

    maxes = [0, 0, 0, 0]
    for e in poly.terms:
        for i in range(4):
            maxes[i] = max(maxes[i], e[i])
    pows = []
    for i in range(4):
        row = [np.ones_like(coords[i])]
        for _ in range(maxes[i]):
            row.append(row[-1] * coords[i] % p)
        pows.append(row)
    acc = np.zeros_like(coords[0])
    for e, c in poly.terms.items():
        t = np.full_like(coords[0], c.int_value())
        for i in range(4):
            if e[i]:
                t = t * pows[i][e[i]] % p
        acc = (acc + t) % p
    return acc


def _scan_generic(partials, ctx):
    out = []
    elems = list(ctx.elements())
    one = ctx.one
    zero = ctx.zero
    for lead in range(4):
        frees = [elems] * (3 - lead)
        stack = [()]
        for pool in frees:
            stack = [t + (v,) for t in stack for v in pool]
        for tail in stack:
            P = (zero,) * lead + (one,) + tail
            if all(not g.evaluate(P) for g in partials):
                out.append(P)
    return out


# ---------------------------------------------------------------------------
# local classification

def _local_parts(f: MPoly, P, chart, up_to=3):
    """Graded pieces (degree 0..up_to) of f(x_chart=1, x_j=P_j+y_j) as
    dicts keyed by 3-var exponent tuples."""
    tctx = P[0].ctx
    others = [i for i in range(4) if i != chart]
    parts = [dict() for _ in range(up_to + 1)]
    for e, coef in f.terms.items():
        base = coef if coef.ctx is tctx else tctx.el(coef.c[0] if coef.ctx.k == 1 else coef.c)
        exps = [e[i] for i in others]
        # expand prod (P_j + y_j)^{e_j}, keeping y-degree <= up_to
        partial = {(0, 0, 0): base}
        for pos, ej in enumerate(exps):
            if ej == 0:
                continue
            Pj = P[others[pos]]
            pj_pows = [tctx.one]
            for _ in range(ej):
                pj_pows.append(pj_pows[-1] * Pj)
            nxt = {}
            for key, val in partial.items():
                used = sum(key)
                for a in range(0, min(ej, up_to - used) + 1):
                    cc = comb(ej, a) % tctx.p
                    if cc == 0:
                        continue
                    term = val * pj_pows[ej - a] * cc
                    if not term:
                        continue
                    nk = list(key)
                    nk[pos] += a
                    nk = tuple(nk)
                    cur = nxt.get(nk)
                    s = term if cur is None else cur + term
                    if s:
                        nxt[nk] = s
                    elif cur is not None:
                        del nxt[nk]
            partial = nxt
        for key, val in partial.items():
            deg = sum(key)
            if deg <= up_to:
                cur = parts[deg].get(key)
                s = val if cur is None else cur + val
                if s:
                    parts[deg][key] = s
                elif cur is not None:
                    del parts[deg][key]
    return parts


def classify_singularity(f: MPoly, P):
    """A1 / A2 / AkOrWorse for a singular point P of f."""
    P = normalize_point(P)
    tctx = P[0].ctx
    for i in range(4):
        if f.diff(i).evaluate(P):
            raise NotSingularError(f"point {P} is not singular on f")
    chart = next(i for i in range(4) if P[i])
    parts = _local_parts(f, P, chart)
    assert not parts[0] and not parts[1], "local expansion inconsistent"
    quad, cubic = parts[2], parts[3]
    ops = linalg.ops_for(tctx)
    H = [[ops.zero] * 3 for _ in range(3)]
    for key, val in quad.items():
        idxs = [i for i in range(3) for _ in range(key[i])]
        a, b = idxs
        raw = ops.to_raw(val)
        if a == b:
            H[a][a] = ops.add(H[a][a], ops.add(raw, raw))
        else:
            H[a][b] = ops.add(H[a][b], raw)
            H[b][a] = ops.add(H[b][a], raw)
    rk = linalg.rank(H, ops)
    if rk == 3:
        return A1
    if rk != 2:
        return AK_OR_WORSE
    kern = linalg.nullspace(H, ops, 3)
    assert len(kern) == 1
    v = [ops.from_raw(x) for x in kern[0]]
    acc = tctx.zero
    for key, val in cubic.items():
        t = val
        for i in range(3):
            for _ in range(key[i]):
                t = t * v[i]
        acc = acc + t
    return A2 if acc else AK_OR_WORSE


def jacobian_rank(polys, P):
    tctx = P[0].ctx
    ops = linalg.ops_for(tctx)
    rows = [[ops.to_raw(g.diff(i).evaluate(P)) for i in range(4)] for g in polys]
    return linalg.rank(rows, ops)


# ---------------------------------------------------------------------------
# solving triple systems

@dataclass
class SolveRecord:
    point: tuple
    field_degree: int
    multiplicity: int
    transversal: bool
    classification: str = UNCLASSIFIED

    def key(self):
        return (self.field_degree, point_key(self.point))


@dataclass
class SolveResult:
    records: list
    unresolved: list          # (factor degree, multiplicity) pairs
    bezout: int
    attempt: int
    eliminant_squarefree: list  # (factor degree, multiplicity) pairs

    @property
    def resolved_total(self):
        return sum(r.multiplicity for r in self.records)

    @property
    def unresolved_total(self):
        return sum(d * m for d, m in self.unresolved)


def _solve_in_basis(basis, targets, ops):
    """Coordinates of each target vector in the span of the basis vectors."""
    n = len(basis[0])
    w = len(basis)
    aug = [[basis[j][i] for j in range(w)] + [t[i] for t in targets]
           for i in range(n)]
    R, piv = linalg.rref(aug, ops)
    assert piv[:w] == list(range(w)), "basis not independent"
    coords = []
    for tcol in range(len(targets)):
        coords.append([R[r][w + tcol] for r in range(w)])
    return coords


def _single_eigenvalue(op_matrix, ops, ctx):
    """The unique eigenvalue if the matrix has one; None otherwise."""
    coeffs = linalg.charpoly(op_matrix, ops)
    cp = UPoly(ctx, [ops.from_raw(c) for c in coeffs])
    sq = up_squarefree(cp)
    if len(sq) != 1 or sq[0][0].degree() != 1:
        return None
    return -sq[0][0][0]


def solve_triple(a, b, c, seed=0, ext_budget=6, retries=8):
    """All common zeros of three forms in P^3 with their intersection
    multiplicities, transversality flags and exact coordinates over
    extension fields of degree <= ext_budget."""
    ctx = a.ctx
    base_ops = linalg.ops_for(ctx)
    last_error = None
    cursor = 0
    for _ in range(retries + 1):
        data = eliminate_system(a, b, c, seed=f"solve:{seed}", retries=retries,
                                start_attempt=cursor)
        cursor = data.attempt + 1
        sq = up_squarefree(data.eliminant)
        records = []
        unresolved = []
        good = True
        for g, mult in sq:
            rep = up_roots(g, ext_budget=ext_budget, seed=seed)
            for rem, _ in rep.unresolved:
                unresolved.append((rem.degree(), mult))
            for alpha, e, _ in rep.roots:
                rec = _extract_point(data, a, b, c, alpha, e, mult, base_ops)
                if rec is None:
                    good = False
                    break
                records.append(rec)
            if not good:
                break
        if not good:
            last_error = "projection not separating"
            continue
        total = sum(r.multiplicity for r in records) + sum(d * m for d, m in unresolved)
        assert total == data.bezout, "multiplicity bookkeeping broke"
        records.sort(key=SolveRecord.key)
        return SolveResult(records=records, unresolved=unresolved,
                           bezout=data.bezout, attempt=data.attempt,
                           eliminant_squarefree=[(g.degree(), m) for g, m in sq])
    raise SeparationError(f"no separating projection found: {last_error}")


def _extract_point(data, a, b, c, alpha, e, mult, base_ops):
    """Recover the full point above one eliminant root via the commuting
    multiplication operators; None signals a non-generic projection."""
    ctx = data.ctx
    if e == 1:
        ext = ctx
        ops = base_ops
        lift = lambda raw: raw  # noqa: E731
    else:
        ext = ctx.extension(e)
        ops = linalg.ops_for(ext)
        emb = embedding(ctx, ext)
        lift = lambda raw: ops.to_raw(emb(base_ops.from_raw(raw)))  # noqa: E731
    alpha_raw = ops.to_raw(alpha)

    n = data.bezout
    Xp = [[lift(x) for x in row] for row in data.xops[data.proj]]
    for i in range(n):
        Xp[i][i] = ops.sub(Xp[i][i], alpha_raw)
    M = linalg.mat_pow(Xp, mult, ops) if mult > 1 else Xp
    kern = linalg.nullspace(M, ops, n)
    if len(kern) != mult:
        return None
    rest = [v for v in range(4) if v not in (data.chart, data.proj)]
    values = {data.chart: ext.one, data.proj: alpha}
    for var in rest:
        Xv = [[lift(x) for x in row] for row in data.xops[var]]
        targets = [linalg.mat_vec(Xv, w, ops) for w in kern]
        coords = _solve_in_basis(kern, targets, ops)
        val = _single_eigenvalue(coords_matrix(coords), ops, ext)
        if val is None:
            return None
        values[var] = val
    point = tuple(values[i] for i in range(4))
    if data.transform is not None:
        embT = (lambda x: x) if e == 1 else embedding(ctx, ext)
        T = [[embT(x) for x in row] for row in data.transform]
        point = tuple(
            sum((T[i][j] * point[j] for j in range(4)), ext.zero)
            for i in range(4))
    point = normalize_point(point)
    for g in (a, b, c):
        if g.evaluate(point):
            return None
    transversal = jacobian_rank((a, b, c), point) == 3
    return SolveRecord(point=point, field_degree=e, multiplicity=mult,
                       transversal=transversal)


def coords_matrix(coords):
    """Column list -> matrix (restriction operator on the kernel basis)."""
    w = len(coords)
    return [[coords[j][i] for j in range(w)] for i in range(len(coords[0]))]


# ---------------------------------------------------------------------------
# admissibility certification

@dataclass
class PairReport:
    pair: tuple
    expected: int
    cusps: list = field(default_factory=list)
    extra_points: list = field(default_factory=list)  # residual-locus points
    unresolved: list = field(default_factory=list)
    problems: list = field(default_factory=list)


@dataclass
class AdmissibilityCertificate:
    ok: bool
    kind: str
    label: str
    prime: int
    extension: int
    seed: int
    ext_budget: int
    expected_total: int
    found_total: int
    pair_reports: list
    scan_field: str
    scan_points: int
    scan_singular: list
    problems: list

    def to_text(self):
        lines = [f"certificate: {'PASS' if self.ok else 'FAIL'}",
                 f"kind={self.kind} type={self.label} prime={self.prime} "
                 f"extension={self.extension} seed={self.seed} "
                 f"ext_budget={self.ext_budget}",
                 f"expected_cusps={self.expected_total} found_cusps={self.found_total}"]
        for rep in self.pair_reports:
            i, j = rep.pair
            lines.append(f"pair ({i + 1},{j + 1}): expected={rep.expected} "
                         f"found={len(rep.cusps)} residual_points={len(rep.extra_points)}")
            for rec in rep.cusps + rep.extra_points:
                coords = ":".join(_coord_text(x) for x in rec.point)
                lines.append(f"  point ({coords}) field_degree={rec.field_degree} "
                             f"pair=({i + 1},{j + 1}) class={rec.classification} "
                             f"mult={rec.multiplicity} "
                             f"transversal={'yes' if rec.transversal else 'no'}")
            for deg, m in rep.unresolved:
                lines.append(f"  unresolved factor degree={deg} mult={m}")
        lines.append(f"scan field={self.scan_field} points={self.scan_points} "
                     f"rational_singular={len(self.scan_singular)}")
        if self.problems:
            lines.append("problems:")
            lines.extend(f"  {p}" for p in self.problems)
        else:
            lines.append("problems: none")
        return "\n".join(lines) + "\n"


def _coord_text(x):
    if x.ctx.k == 1:
        return str(x.c[0])
    return "(" + ",".join(map(str, x.c)) + ")"


def verify_admissible(recipe: SurfaceRecipe, ext_budget=6, seed=0, scan=True):
    """Solve every pair system, classify the points on the surface, and
    cross-check against the closed-form counts and the rational scan.

    Failures are collected in the certificate, never raised: the caller is
    free to resample."""
    ctx = recipe.ctx
    expected = recipe.expected_counts()
    problems = []
    pair_reports = []
    all_cusps = []
    for (pair, system) in recipe.pair_systems():
        i, j = pair
        rep = PairReport(pair=pair, expected=expected[pair])
        try:
            sol = solve_triple(*system, seed=seed, ext_budget=ext_budget)
        except (SeparationError, ChartMissesError) as exc:
            rep.problems.append(f"solver failed: {exc}")
            problems.append(f"pair {pair}: solver failed: {exc}")
            pair_reports.append(rep)
            continue
        rep.unresolved = sol.unresolved
        if sol.unresolved:
            msg = (f"pair {pair}: {sol.unresolved_total} intersection points "
                   f"above extension budget {ext_budget}")
            rep.problems.append(msg)
            problems.append(msg)
        for rec in sol.records:
            on_residual = (recipe.kind == "residual"
                           and not recipe.r.evaluate(rec.point))
            if on_residual:
                rep.extra_points.append(rec)
            else:
                rep.cusps.append(rec)
        _check_pair(recipe, rep, problems)
        pair_reports.append(rep)
        all_cusps.extend(rep.cusps)

    keys = [point_key(r.point) for r in all_cusps]
    if len(set(keys)) != len(keys):
        problems.append("cusp points are not pairwise distinct")

    scan_pts = []
    scan_count = 0
    if scan:
        scan_pts = scan_rational_singular(recipe.f, ctx)
        p = ctx.order
        scan_count = p ** 3 + p ** 2 + p + 1
        rational_cusps = {point_key(r.point) for r in all_cusps if r.field_degree == 1}
        scan_keys = {point_key(P) for P in scan_pts}
        if not scan_keys <= rational_cusps:
            problems.append("rational singular points found off the cusp set")
        if not rational_cusps <= scan_keys:
            problems.append("a rational cusp was missed by the scan")

    found_total = sum(len(r.cusps) for r in pair_reports)
    if recipe.kind == "residual":
        label = ",".join(map(str, recipe.c_parts)) + f";b={recipe.b}"
    else:
        label = ",".join(map(str, recipe.parts))
    return AdmissibilityCertificate(
        ok=not problems, kind=recipe.kind, label=label,
        prime=ctx.p, extension=ctx.k, seed=recipe.seed, ext_budget=ext_budget,
        expected_total=sum(expected.values()), found_total=found_total,
        pair_reports=pair_reports, scan_field=repr(ctx),
        scan_points=scan_count, scan_singular=scan_pts, problems=problems)


def _check_pair(recipe, rep, problems):
    i, j = rep.pair
    f = recipe.f

    if len(rep.cusps) != rep.expected:
        msg = f"pair {rep.pair}: {len(rep.cusps)} candidate cusps, expected {rep.expected}"
        rep.problems.append(msg)
        problems.append(msg)

    for rec in rep.cusps:
        if rec.multiplicity != 1 or not rec.transversal:
            msg = (f"pair {rep.pair}: non-transversal intersection point "
                   f"(mult {rec.multiplicity})")
            rep.problems.append(msg)
            problems.append(msg)
            continue
        try:
            rec.classification = classify_singularity(f, rec.point)
        except NotSingularError:
            rec.classification = "NotOnSurfaceSingularLocus"
        if rec.classification != A2:
            msg = f"pair {rep.pair}: point classified {rec.classification}, want A2"
            rep.problems.append(msg)
            problems.append(msg)
        # no further component may pass through a cusp
        for m, sm in enumerate(recipe.s_list):
            if m in (i, j):
                continue
            if not sm.evaluate(rec.point):
                msg = f"pair {rep.pair}: component {m + 1} also vanishes at a cusp"
                rep.problems.append(msg)
                problems.append(msg)
        if recipe.kind == "residual" and not recipe.r.evaluate(rec.point):
            msg = f"pair {rep.pair}: cusp lies on the residual surface"
            rep.problems.append(msg)
            problems.append(msg)

    if recipe.kind == "residual":
        want_extra = recipe.c_parts[i] * recipe.c_parts[j] * recipe.b
        if len(rep.extra_points) != want_extra:
            msg = (f"pair {rep.pair}: {len(rep.extra_points)} residual-locus "
                   f"points, expected {want_extra}")
            rep.problems.append(msg)
            problems.append(msg)
        for rec in rep.extra_points:
            rec.classification = "ResidualLocus"
            if rec.multiplicity != 6:
                msg = (f"pair {rep.pair}: residual point has multiplicity "
                       f"{rec.multiplicity}, expected 6")
                rep.problems.append(msg)
                problems.append(msg)
            grad = [f.diff(v).evaluate(rec.point) for v in range(4)]
            if not any(grad):
                msg = f"pair {rep.pair}: surface is singular at a residual point"
                rep.problems.append(msg)
                problems.append(msg)


@dataclass
class BezoutReport:
    pair: tuple
    bezout: int
    off_residual: int
    residual_points: int
    multiplicities: list
    eliminant_squarefree: list
    identity_ok: bool

    def to_text(self):
        i, j = self.pair
        lines = [f"pair ({i + 1},{j + 1}): bezout={self.bezout} "
                 f"= {self.off_residual} transversal + "
                 f"6*{self.residual_points} residual",
                 "squarefree factors (degree, multiplicity): "
                 + " ".join(f"({d},{m})" for d, m in self.eliminant_squarefree),
                 f"identity: {'ok' if self.identity_ok else 'VIOLATED'}"]
        return "\n".join(lines) + "\n"


def bezout_accounting(recipe: SurfaceRecipe, pair, ext_budget=6, seed=0):
    """Intersection bookkeeping for a residual pair: the Bezout number
    splits as the cusp count plus 6 per residual-locus point."""
    if recipe.kind not in ("residual", "fermat"):
        raise ValueError("bezout accounting applies to residual recipes")
    i, j = pair
    sol = solve_triple(recipe.s_list[i], recipe.s_list[j], recipe.s,
                       seed=seed, ext_budget=ext_budget)
    on_r = [r for r in sol.records if not recipe.r.evaluate(r.point)]
    off_r = [r for r in sol.records if recipe.r.evaluate(r.point)]
    n_ij = sum(r.multiplicity for r in off_r) + sum(
        d * m for d, m in sol.unresolved)
    ci, cj = recipe.c_parts[i], recipe.c_parts[j]
    identity_ok = (sol.bezout == n_ij + 6 * ci * cj * recipe.b
                   and all(r.multiplicity == 6 for r in on_r)
                   and len(on_r) == ci * cj * recipe.b)
    return BezoutReport(pair=pair, bezout=sol.bezout, off_residual=n_ij,
                        residual_points=len(on_r),
                        multiplicities=sorted(r.multiplicity for r in sol.records),
                        eliminant_squarefree=sol.eliminant_squarefree,
                        identity_ok=identity_ok)


def certified_build(builder, verify_kwargs=None, retries=32):
    """Resample with sub-seeds until the certificate passes.

    builder: seed -> SurfaceRecipe."""
    verify_kwargs = verify_kwargs or {}
    last = None
    for attempt in range(retries):
        recipe = builder(attempt)
        cert = verify_admissible(recipe, **verify_kwargs)
        if cert.ok:
            return recipe, cert, attempt
        last = cert
    raise RetriesExhaustedError(
        f"no admissible sample in {retries} attempts; last problems: "
        + "; ".join(last.problems[:4]))
