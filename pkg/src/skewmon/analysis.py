"""Verification algorithms over skew-ring elements.

Everything here is exact: relation residuals are normalized skew elements,
lattice computations use integer Smith normal form, and span dimensions are
computed by Gaussian elimination over the parameter fraction field after
clearing coefficient denominators per monoid key.  The one approximate
quantity in the package is the fitted log-log growth slope, which is reported
as a rational approximation together with an interval and is only ever tested
against intervals.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .arith import QQ, Polynomial, RatFunc, poly_lcm
from .actions import LATTICE
from .errors import (
    ContextMismatchError,
    DefinitionError,
    PreconditionError,
    ResourceCapError,
    UnsupportedModeError,
)
from .reports import Report
from .skewring import SkewElement, commutator

DEFAULT_SI_CAP = 6
DEFAULT_DIM_CAP = 4096


# ---------------------------------------------------------------------------
# Relation expressions
# ---------------------------------------------------------------------------
#
# A relation is a name plus an expression tree in JSON-able form:
#   {"gen": "E12"}            a named generator
#   {"const": "3/2"}          a scalar at the identity key
#   {"scale": [c, expr]}      scalar multiple
#   {"sum": [e1, e2, ...]}    sum
#   {"prod": [e1, e2, ...]}   noncommutative product, left to right
#   {"comm": [e1, e2]}        commutator
# An expression passes when it evaluates to the zero element.


def gen(name):
    return {"gen": name}


def comm(a, b):
    return {"comm": [a, b]}


def prod(*args):
    return {"prod": list(args)}


def lincomb(*pairs):
    return {"sum": [{"scale": [str(c), e]} for c, e in pairs]}


def scaled(c, e):
    return {"scale": [str(c), e]}


def sum_of(*args):
    return {"sum": list(args)}


def evaluate_expression(spec, expr):
    ctx = spec.context
    if "gen" in expr:
        name = expr["gen"]
        if name not in spec.generators:
            raise DefinitionError(f"unknown generator {name!r}")
        return spec.generators[name]
    if "const" in expr:
        return SkewElement.scalar(ctx, RatFunc.const(ctx.table.nvars, expr["const"]))
    if "scale" in expr:
        c, inner = expr["scale"]
        return SkewElement.scalar(
            ctx, RatFunc.const(ctx.table.nvars, c)
        ) * evaluate_expression(spec, inner)
    if "sum" in expr:
        total = SkewElement.zero(ctx)
        for inner in expr["sum"]:
            total = total + evaluate_expression(spec, inner)
        return total
    if "prod" in expr:
        out = SkewElement.one(ctx)
        for inner in expr["prod"]:
            out = out * evaluate_expression(spec, inner)
        return out
    if "comm" in expr:
        a, b = expr["comm"]
        return commutator(
            evaluate_expression(spec, a), evaluate_expression(spec, b)
        )
    raise DefinitionError(f"unrecognized expression node {expr!r}")


def verify_relations(spec, relations):
    """Evaluate each named relation; pass iff the residual is the zero element."""
    report = Report("relation suite")
    for rel in relations:
        name, expr = rel["name"], rel["expr"]
        report.run_check(
            name,
            lambda expr=expr: _zero_or_residual(evaluate_expression(spec, expr)),
            lambda u: u.to_text(),
        )
    return report


def _zero_or_residual(u):
    return (u.is_zero(), None if u.is_zero() else u)


def gl_relation_set(n):
    """The full gl_n generator relation table plus the Serre relations."""
    rels = []
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            rels.append(
                {"name": f"[E{k}{k},E{l}{l}] = 0", "expr": comm(gen(f"E{k}{k}"), gen(f"E{l}{l}"))}
            )
    for k in range(1, n + 1):
        for l in range(1, n):
            c = (1 if k == l else 0) - (1 if k == l + 1 else 0)
            e_l = gen(f"E{l}{l + 1}")
            f_l = gen(f"E{l + 1}{l}")
            rels.append(
                {
                    "name": f"[E{k}{k},E{l}{l + 1}] = {c}*E{l}{l + 1}",
                    "expr": sum_of(comm(gen(f"E{k}{k}"), e_l), scaled(-c, e_l)),
                }
            )
            rels.append(
                {
                    "name": f"[E{k}{k},E{l + 1}{l}] = {-c}*E{l + 1}{l}",
                    "expr": sum_of(comm(gen(f"E{k}{k}"), f_l), scaled(c, f_l)),
                }
            )
    for k in range(1, n):
        for l in range(1, n):
            expr = comm(gen(f"E{k}{k + 1}"), gen(f"E{l + 1}{l}"))
            if k == l:
                expr = sum_of(expr, scaled(-1, gen(f"E{k}{k}")), scaled(1, gen(f"E{k + 1}{k + 1}")))
                name = f"[E{k}{k + 1},E{l + 1}{l}] = E{k}{k} - E{k + 1}{k + 1}"
            else:
                name = f"[E{k}{k + 1},E{l + 1}{l}] = 0"
            rels.append({"name": name, "expr": expr})
    for k in range(1, n):
        for l in range(1, n):
            if k == l:
                continue
            ek, el = gen(f"E{k}{k + 1}"), gen(f"E{l}{l + 1}")
            fk, fl = gen(f"E{k + 1}{k}"), gen(f"E{l + 1}{l}")
            if abs(k - l) == 1:
                rels.append(
                    {"name": f"Serre [e{k},[e{k},e{l}]] = 0", "expr": comm(ek, comm(ek, el))}
                )
                rels.append(
                    {"name": f"Serre [f{k},[f{k},f{l}]] = 0", "expr": comm(fk, comm(fk, fl))}
                )
            elif k < l:
                rels.append({"name": f"[e{k},e{l}] = 0", "expr": comm(ek, el)})
                rels.append({"name": f"[f{k},f{l}] = 0", "expr": comm(fk, fl)})
    return rels


# ---------------------------------------------------------------------------
# Integer lattices: Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(rows):
    """Exact Smith normal form data of an integer matrix.

    Returns (rank, divisors): the positive elementary divisors in their
    divisibility chain d_1 | d_2 | ... | d_rank.
    """
    a = [list(int(x) for x in r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    divisors = []
    t = 0
    while t < min(m, n):
        # find a nonzero pivot of least absolute value in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        while True:
            # clear the pivot column
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            # clear the pivot row
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the trailing block by the pivot
        p = a[t][t]
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % p:
                    a[t] = [x + y for x, y in zip(a[t], a[i])]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        divisors.append(abs(p))
        t += 1
    return len(divisors), divisors


def lattice_contains(rows, target):
    """True iff target is an integer combination of the rows.

    Uses the invariant-factor comparison: the row lattice of [rows; target]
    equals the row lattice of rows iff both have the same rank and elementary
    divisors (equal rank gives a finite index, which the divisor products
    measure).
    """
    base = [list(r) for r in rows]
    rank0, div0 = smith_normal_form(base)
    rank1, div1 = smith_normal_form(base + [list(target)])
    return rank0 == rank1 and div0 == div1


def support_lattice_rank(elements):
    """Rank and elementary divisors of the lattice spanned by all supports."""
    if not elements:
        return 0, []
    ctx = elements[0].context
    if ctx.mode != LATTICE:
        raise UnsupportedModeError("support lattice rank needs a lattice-mode context")
    vectors = sorted({key for u in elements for key in u.coeffs})
    if not vectors:
        return 0, []
    return smith_normal_form(vectors)


# ---------------------------------------------------------------------------
# Linear algebra over the parameter fraction field
# ---------------------------------------------------------------------------


def _split_by_nonparam(poly, table):
    """Group the terms of a full-table polynomial by their non-parameter part.

    Returns {nonparam exponent tuple: parameter-only Polynomial}.
    """
    np_count = table.n_acted + table.n_fixed
    out = {}
    for e, c in poly.terms.items():
        head = e[:np_count]
        tail = (0,) * np_count + e[np_count:]
        bucket = out.setdefault(head, {})
        bucket[tail] = bucket.get(tail, QQ(0)) + c
    return {
        head: Polynomial._raw(poly.nvars, {e: c for e, c in b.items() if c != 0})
        for head, b in out.items()
    }


class _SpanReducer:
    """Incremental row reduction over the parameter fraction field.

    Vectors are dicts mapping sortable coordinates to RatFunc entries whose
    numerator and denominator involve parameter variables only.
    """

    def __init__(self):
        self.pivot_rows = {}  # pivot coordinate -> reduced row

    def _reduce(self, vec):
        # eliminating the smallest pivot coordinate can only introduce larger
        # coordinates, so this loop terminates
        vec = dict(vec)
        while True:
            hit = None
            for coord in sorted(vec):
                if coord in self.pivot_rows:
                    hit = coord
                    break
            if hit is None:
                return vec
            factor = vec[hit]
            for c2, v2 in self.pivot_rows[hit].items():
                cur = vec.get(c2)
                nxt = (cur - factor * v2) if cur is not None else -(factor * v2)
                if nxt.is_zero():
                    vec.pop(c2, None)
                else:
                    vec[c2] = nxt

    def add(self, vec):
        """Reduce vec against the span; extend the basis if independent."""
        vec = self._reduce(vec)
        if not vec:
            return False
        pivot = min(vec)
        inv = vec[pivot].invert()
        vec = {c: v * inv for c, v in vec.items()}
        for row in self.pivot_rows.values():
            if pivot in row:
                factor = row[pivot]
                for c2, v2 in vec.items():
                    cur = row.get(c2)
                    nxt = (cur - factor * v2) if cur is not None else -(factor * v2)
                    if nxt.is_zero():
                        row.pop(c2, None)
                    else:
                        row[c2] = nxt
        self.pivot_rows[pivot] = vec
        return True

    def contains(self, vec):
        return not self._reduce(vec)

    @property
    def dimension(self):
        return len(self.pivot_rows)


def _element_vectors(elements, table):
    """Coordinate vectors of skew elements against per-key common denominators.

    Coordinates are (key, non-parameter exponent tuple); entries live in the
    parameter fraction field.  The per-key denominator is the lcm over all
    the given elements, so the map is linear on this set.
    """
    nvars = table.nvars
    one = Polynomial.const(nvars, 1)
    common = {}
    for u in elements:
        for key, c in u.coeffs.items():
            cur = common.get(key, one)
            common[key] = poly_lcm(cur, c.den) if not c.den.is_constant() else cur
    vectors = []
    for u in elements:
        vec = {}
        for key, c in u.coeffs.items():
            cleared = c.num * common[key].divide_exact(c.den)
            for head, tail_poly in _split_by_nonparam(cleared, table).items():
                vec[(key, head)] = RatFunc.from_poly(tail_poly)
        vectors.append(vec)
    return vectors


# ---------------------------------------------------------------------------
# Center search and commutant filtering
# ---------------------------------------------------------------------------


def _monomials_up_to(table, degree):
    np_count = table.n_acted + table.n_fixed
    nvars = table.nvars

    def rec(pos, remaining):
        if pos == np_count:
            yield (0,) * nvars
            return
        for rest in rec(pos + 1, remaining):
            for d in range(remaining - sum(rest[:np_count]) + 1):
                e = list(rest)
                e[pos] = d
                yield tuple(e)

    monos = set(rec(0, degree))
    return sorted(monos, key=lambda e: (sum(e), e))


def _fixing_automorphisms(spec):
    """The substitutions a central polynomial must be fixed by."""
    ctx = spec.context
    auts = []
    if ctx.mode == LATTICE:
        for i in range(ctx.rank):
            unit = tuple(1 if j == i else 0 for j in range(ctx.rank))
            auts.append(ctx.key_aut(unit))
    else:
        for perm in ctx.key_group.gen_perms or [p for p in ctx.key_group.perms]:
            auts.append(ctx.key_aut(perm))
    for g in ctx.group.generator_elements():
        auts.append(g.aut())
    return auts


def center_candidates(spec, degree_bound):
    """Basis of G-invariant polynomials of bounded degree fixed by the monoid.

    Solves the exact linear system on monomial coefficients over the
    parameter fraction field and returns canonical representatives (grlex
    leading coefficient 1).  The constants are always present.
    """
    if degree_bound < 0:
        raise PreconditionError("degree bound must be nonnegative")
    ctx = spec.context
    table = ctx.table
    monos = _monomials_up_to(table, degree_bound)
    col_of = {e: i for i, e in enumerate(monos)}
    auts = _fixing_automorphisms(spec)

    rows = {}  # (aut index, constraint coordinate) -> {column: RatFunc entry}
    for ai, aut in enumerate(auts):
        images = []
        den = Polynomial.const(table.nvars, 1)
        for e in monos:
            img = aut.apply(RatFunc.from_poly(Polynomial.monomial(table.nvars, e)))
            images.append(img)
            if not img.den.is_constant():
                den = poly_lcm(den, img.den)
        for col, (e, img) in enumerate(zip(monos, images)):
            diff = img.num * den.divide_exact(img.den) - Polynomial.monomial(
                table.nvars, e
            ) * den
            for head, tail in _split_by_nonparam(diff, table).items():
                row = rows.setdefault((ai, head), {})
                entry = RatFunc.from_poly(tail)
                if col in row:
                    entry = row[col] + entry
                if entry.is_zero():
                    row.pop(col, None)
                else:
                    row[col] = entry

    reducer = _SpanReducer()
    for key in sorted(rows, key=lambda k: (k[0], k[1])):
        reducer.add(rows[key])
    pivot_rows = reducer.pivot_rows

    basis = []
    for col, e in enumerate(monos):
        if col in pivot_rows:
            continue
        coeffs = {col: RatFunc.const(table.nvars, 1)}
        for pcol, prow in pivot_rows.items():
            if col in prow:
                coeffs[pcol] = -prow[col]
        p = RatFunc.zero(table.nvars)
        for c, v in coeffs.items():
            p = p + v * RatFunc.from_poly(Polynomial.monomial(table.nvars, monos[c]))
        # canonical representative: the grlex-leading non-parameter monomial
        # gets coefficient exactly 1
        groups = _split_by_nonparam(p.num, table)
        lead = max(groups, key=lambda h: (sum(h), h))
        basis.append(RatFunc(p.num, groups[lead]))
    return basis


def commutant_filter(spec, candidates):
    """Those candidates commuting exactly with every named generator."""
    out = []
    for cand in candidates:
        if isinstance(cand, (RatFunc, Polynomial)):
            cand = SkewElement.scalar(spec.context, cand)
        if all(
            commutator(cand, g).is_zero() for g in spec.generators.values()
        ):
            out.append(cand)
    return out


# ---------------------------------------------------------------------------
# Ore witnesses
# ---------------------------------------------------------------------------


def ore_witness(s, u):
    """Produce (u', r) with u*r = s*u', r a G-invariant "denominator" for s^{-1}u.

    Construction: for v = s^{-1} u with coefficients l_mu, let
    d = prod_mu mu^{-1}(s * den(l_mu)) and r = prod_{g in G} g(d); then
    u' = v * r has coefficients polynomial in the non-parameter variables.
    The identity u*r = s*u' is re-verified by an actual skew product before
    returning.
    """
    ctx = u.context
    nvars = ctx.table.nvars
    if isinstance(s, Polynomial):
        s = RatFunc.from_poly(s)
    param_ok = set(ctx.table.param_indices())
    if s.is_zero():
        raise PreconditionError("s must be a nonzero element of the invariant subring")
    if not s.den.variables_present() <= param_ok:
        raise PreconditionError("s must be polynomial in the non-parameter variables")
    for g in ctx.group.generator_elements():
        if g.apply(s) != s:
            raise PreconditionError("s must be G-invariant")

    v = SkewElement.scalar(ctx, s.invert()) * u
    d = RatFunc.const(nvars, 1)
    for key in sorted(v.coeffs, key=ctx.key_sort):
        t = RatFunc.from_poly(v.coeffs[key].den) * s
        d = d * ctx.act_key(ctx.key_inverse(key), t)
    r = RatFunc.const(nvars, 1)
    for g in ctx.group:
        r = r * g.apply(d)
    u_prime = v * SkewElement.scalar(ctx, r)

    lhs = u * SkewElement.scalar(ctx, r)
    rhs = SkewElement.scalar(ctx, s) * u_prime
    if lhs != rhs:
        raise AssertionError("ore witness identity u*r = s*u' failed to verify")
    for c in u_prime.coeffs.values():
        if not c.den.variables_present() <= param_ok:
            raise AssertionError("ore witness produced a non-polynomial coefficient")
    return u_prime, r


# ---------------------------------------------------------------------------
# Standard polynomial identities
# ---------------------------------------------------------------------------


def standard_identity(n, elements, cap=DEFAULT_SI_CAP):
    """s_n(a_1..a_n) = sum over permutations of sgn(sigma) a_{sigma(1)}...a_{sigma(n)}."""
    if len(elements) != n:
        raise PreconditionError(f"expected {n} elements, got {len(elements)}")
    if n > cap:
        raise ResourceCapError(f"standard identity degree {n} exceeds the cap {cap}")
    if n == 0:
        raise PreconditionError("empty standard identity")
    ctx = elements[0].context
    for u in elements:
        if u.context is not ctx:
            raise ContextMismatchError("elements from different contexts")
    total = SkewElement.zero(ctx)
    prefix_cache = {(): SkewElement.one(ctx)}
    for perm in permutations(range(n)):
        prod_elem = None
        for cut in range(n, -1, -1):
            prod_elem = prefix_cache.get(perm[:cut])
            if prod_elem is not None:
                start = cut
                break
        for i in range(start, n):
            prod_elem = prod_elem * elements[perm[i]]
            prefix_cache[perm[: i + 1]] = prod_elem
        total = total + (prod_elem if _parity(perm) == 0 else -prod_elem)
    return total


def _parity(perm):
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


# ---------------------------------------------------------------------------
# Growth
# ---------------------------------------------------------------------------


@dataclass
class GrowthProfile:
    """Frame-span dimensions d(k) for k = 1..k_max and a fitted log-log slope."""

    dims: list
    slope: Fraction
    window: tuple
    halfwidth: Fraction = Fraction(1, 5)

    def __post_init__(self):
        for i in range(1, len(self.dims)):
            if self.dims[i] < self.dims[i - 1]:
                raise PreconditionError("growth dimensions must be nondecreasing")
        for i in range(1, len(self.dims) + 1):
            for j in range(1, len(self.dims) + 1 - i):
                if self.dims[i + j - 1] > self.dims[i - 1] * self.dims[j - 1]:
                    raise PreconditionError("growth dimensions must be submultiplicative")

    @property
    def interval(self):
        return (self.slope - self.halfwidth, self.slope + self.halfwidth)

    def to_json(self):
        lo, hi = self.interval
        return {
            "dims": list(self.dims),
            "slope": str(self.slope),
            "slope_interval": [str(lo), str(hi)],
            "window": list(self.window),
        }


def fit_loglog_slope(values, window=None):
    """Least-squares slope of log(value) against log(k) on the tail window.

    Values are indexed k = 1..len(values).  Returns a rational approximation;
    callers compare against intervals, never for exact equality.
    """
    k_max = len(values)
    if window is None:
        window = (max(1, k_max // 2), k_max)
    lo, hi = window
    points = [
        (math.log(k), math.log(values[k - 1])) for k in range(lo, hi + 1) if values[k - 1] > 0
    ]
    if len(points) < 2:
        raise PreconditionError("slope fit needs at least two points")
    xbar = sum(x for x, _ in points) / len(points)
    ybar = sum(y for _, y in points) / len(points)
    sxx = sum((x - xbar) ** 2 for x, _ in points)
    sxy = sum((x - xbar) * (y - ybar) for x, y in points)
    return Fraction(sxy / sxx).limit_denominator(10**6)


def growth_profile(frame, k_max, dim_cap=DEFAULT_DIM_CAP):
    """Dimensions d(k) of spans of products of at most k frame elements.

    The frame must contain the identity, so products of lower length are
    included automatically.  Dimension is over the coefficient field of the
    parameters; the computation clears denominators per key and row-reduces
    exactly.
    """
    if k_max < 2:
        raise PreconditionError("k_max must be at least 2")
    if not frame:
        raise PreconditionError("empty frame")
    ctx = frame[0].context
    if not any(u == SkewElement.one(ctx) for u in frame):
        raise PreconditionError("frame must contain the identity element")
    table = ctx.table

    def reduce_layer(elements):
        reducer = _SpanReducer()
        basis = []
        for u, vec in zip(elements, _element_vectors(elements, table)):
            if reducer.add(vec):
                basis.append(u)
        return basis

    dims = []
    basis = reduce_layer(list(frame))
    dims.append(len(basis))
    for _ in range(2, k_max + 1):
        candidates = list(basis)
        for b in basis:
            for v in frame:
                candidates.append(b * v)
        basis = reduce_layer(candidates)
        dims.append(len(basis))
        if len(basis) > dim_cap:
            partial = GrowthProfile(
                dims, fit_loglog_slope(dims, (max(1, len(dims) // 2), len(dims))),
                (max(1, len(dims) // 2), len(dims)),
            )
            raise ResourceCapError(
                f"span dimension {len(basis)} exceeded the cap {dim_cap}", partial=partial
            )
    window = (max(1, k_max // 2), k_max)
    return GrowthProfile(dims, fit_loglog_slope(dims, window), window)


def monoid_growth(generators, k_max):
    """Word-metric ball sizes |B_k| for k = 1..k_max in the lattice monoid."""
    if not generators:
        raise PreconditionError("need at least one generator")
    vectors = []
    for g in generators:
        if hasattr(g, "context") and g.context.mode != LATTICE:
            raise UnsupportedModeError("monoid growth needs a lattice-mode monoid")
        vectors.append(tuple(g.vector) if hasattr(g, "vector") else tuple(g))
    ball = {(0,) * len(vectors[0])}
    frontier = set(ball)
    sizes = []
    for _ in range(k_max):
        new = set()
        for b in frontier:
            for v in vectors:
                w = tuple(x + y for x, y in zip(b, v))
                if w not in ball:
                    new.add(w)
        ball |= new
        frontier = new
        sizes.append(len(ball))
    return sizes
