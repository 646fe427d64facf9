"""Automorphisms of the rational function field, the acting lattice monoid,
and the finite permutation group with its conjugation action on the monoid.

The variable table is split into three blocks: acted variables (moved by the
monoid), fixed variables (moved by the group only), and parameter variables
(fixed by everything; they are transcendental constants such as q or s).

Supported monoids are abelian lattices Z^m or N^m whose generators act by
shifts, by parameter-monomial scalings, or by general certified-invertible
substitutions.  Supported groups are finite groups of variable permutations,
enumerated eagerly at construction up to a hard cap.
"""

from .arith import NEG_INF, QQ, Polynomial, RatFunc, _as_coeff, substitute
from .errors import (
    ContextMismatchError,
    NormalizationViolationError,
    NotInvertibleError,
    PreconditionError,
    ResourceCapError,
)

DEFAULT_GROUP_CAP = 10080


class VariableTable:
    """Ordered variable names partitioned into acted / fixed / parameter blocks."""

    __slots__ = ("names", "n_acted", "n_fixed", "_index")

    def __init__(self, acted, fixed=(), params=()):
        names = tuple(acted) + tuple(fixed) + tuple(params)
        if len(set(names)) != len(names):
            raise PreconditionError(f"duplicate variable names in {names}")
        self.names = names
        self.n_acted = len(tuple(acted))
        self.n_fixed = len(tuple(fixed))
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self):
        return len(self.names)

    @property
    def n_params(self):
        return self.nvars - self.n_acted - self.n_fixed

    def index(self, name):
        return self._index[name]

    def is_param(self, i):
        return i >= self.n_acted + self.n_fixed

    def is_acted(self, i):
        return i < self.n_acted

    def param_indices(self):
        return range(self.n_acted + self.n_fixed, self.nvars)

    def nonparam_indices(self):
        return range(self.n_acted + self.n_fixed)

    def var(self, name):
        return RatFunc.variable(self.nvars, self.index(name))

    def poly(self, text):
        from .arith import poly_from_text

        return RatFunc.from_poly(poly_from_text(text, self.names))

    def __eq__(self, other):
        if not isinstance(other, VariableTable):
            return NotImplemented
        return (self.names, self.n_acted, self.n_fixed) == (
            other.names,
            other.n_acted,
            other.n_fixed,
        )

    def __hash__(self):
        return hash((self.names, self.n_acted, self.n_fixed))

    def __repr__(self):
        return (
            f"VariableTable(acted={self.names[:self.n_acted]}, "
            f"fixed={self.names[self.n_acted:self.n_acted + self.n_fixed]}, "
            f"params={self.names[self.n_acted + self.n_fixed:]})"
        )


# ---------------------------------------------------------------------------
# Automorphisms
# ---------------------------------------------------------------------------


class Automorphism:
    """A field automorphism of L = Frac(polynomial ring) fixing the parameters."""

    table: VariableTable

    def apply(self, f):
        raise NotImplementedError

    def image_of_var(self, i):
        raise NotImplementedError

    def inverse(self):
        raise NotImplementedError

    def power(self, k):
        if k == 0:
            return ShiftAut(self.table, (0,) * self.table.nvars)
        base = self if k > 0 else self.inverse()
        return _IteratedAut(self.table, base, abs(k))

    def commutes_with(self, other):
        """Symbolic check on every variable."""
        for i in range(self.table.nvars):
            a = self.apply(other.image_of_var(i))
            b = other.apply(self.image_of_var(i))
            if a != b:
                return False
        return True


class ShiftAut(Automorphism):
    """x_i -> x_i + offset_i on acted variables; everything else fixed."""

    __slots__ = ("table", "offsets")

    def __init__(self, table, offsets):
        if len(offsets) != table.nvars:
            raise ContextMismatchError("offset vector length mismatch")
        offsets = tuple(_as_coeff(c) for c in offsets)
        for i, c in enumerate(offsets):
            if c != 0 and not table.is_acted(i):
                raise PreconditionError("shift offset on a non-acted variable")
        self.table = table
        self.offsets = offsets

    def apply_poly(self, p):
        out = p
        nv = p.nvars
        for i, c in enumerate(self.offsets):
            if c != 0 and out.degree_in(i) not in (NEG_INF, 0):
                image = Polynomial._raw(
                    nv, {tuple(1 if j == i else 0 for j in range(nv)): QQ(1), (0,) * nv: c}
                )
                out = out.substitute_var(i, image)
        return out

    def apply(self, f):
        # a shift is a ring automorphism of the polynomial ring: it preserves
        # coprimality and the grlex leading term of the denominator
        return RatFunc._raw(self.apply_poly(f.num), self.apply_poly(f.den))

    def image_of_var(self, i):
        nv = self.table.nvars
        c = self.offsets[i]
        p = Polynomial.variable(nv, i)
        if c != 0:
            p = p + Polynomial.const(nv, c)
        return RatFunc.from_poly(p)

    def inverse(self):
        return ShiftAut(self.table, tuple(-c for c in self.offsets))

    def power(self, k):
        return ShiftAut(self.table, tuple(c * k for c in self.offsets))

    def __repr__(self):
        return f"ShiftAut({self.offsets})"


class ScalingAut(Automorphism):
    """x_i -> m_i * x_i with m_i a rational multiple of a parameter monomial."""

    __slots__ = ("table", "coeffs", "exps")

    def __init__(self, table, coeffs, exps):
        nv = table.nvars
        if len(coeffs) != nv or len(exps) != nv:
            raise ContextMismatchError("multiplier length mismatch")
        coeffs = tuple(_as_coeff(c) for c in coeffs)
        exps = tuple(tuple(e) for e in exps)
        for i in range(nv):
            trivial = coeffs[i] == 1 and not any(exps[i])
            if not trivial and not table.is_acted(i):
                raise PreconditionError("scaling multiplier on a non-acted variable")
            if coeffs[i] == 0:
                raise PreconditionError("zero scaling multiplier")
            for j, e in enumerate(exps[i]):
                if e and not table.is_param(j):
                    raise PreconditionError("multiplier must be a parameter monomial")
        self.table = table
        self.coeffs = coeffs
        self.exps = exps

    @classmethod
    def identity(cls, table):
        nv = table.nvars
        return cls(table, (QQ(1),) * nv, ((0,) * nv,) * nv)

    def apply(self, f):
        if f.num.is_zero():
            return f
        num, dnum = self._apply_laurent(f.num)
        den, dden = self._apply_laurent(f.den)
        # f = (num/dnum) / (den/dden) with monomial dnum, dden
        new_num = num.mul_term(dden, QQ(1))
        new_den = den.mul_term(dnum, QQ(1))
        common = tuple(
            min(a, b) for a, b in zip(new_num.monomial_content(), new_den.monomial_content())
        )
        if any(common):
            new_num = new_num.divide_by_monomial(common)
            new_den = new_den.divide_by_monomial(common)
        if new_den.is_constant():
            c = new_den.constant_value()
            return RatFunc._raw(
                new_num.scale(1 / c), Polynomial.const(new_num.nvars, 1)
            )
        _, lc = new_den.leading_term()
        if lc != 1:
            inv = 1 / lc
            new_num, new_den = new_num.scale(inv), new_den.scale(inv)
        return RatFunc._raw(new_num, new_den)

    def _apply_laurent(self, p):
        """Return (polynomial, monomial-denominator-exponents)."""
        nv = p.nvars
        raw = {}
        mins = [0] * nv
        for e, c in p.terms.items():
            shift = [0] * nv
            coeff = c
            for i, d in enumerate(e):
                if not d:
                    continue
                ci = self.coeffs[i]
                if ci != 1:
                    coeff = coeff * ci**d
                ei = self.exps[i]
                if any(ei):
                    for j, x in enumerate(ei):
                        shift[j] += x * d
            ne = tuple(a + b for a, b in zip(e, shift))
            raw[ne] = raw.get(ne, QQ(0)) + coeff
            for j, x in enumerate(ne):
                if x < mins[j]:
                    mins[j] = x
        if any(mins):
            lift = tuple(-m for m in mins)
            raw = {tuple(a + b for a, b in zip(e, lift)): c for e, c in raw.items()}
        else:
            lift = (0,) * nv
        return Polynomial._raw(nv, {e: c for e, c in raw.items() if c != 0}), lift

    def image_of_var(self, i):
        nv = self.table.nvars
        e = [0] * nv
        e[i] = 1
        num = Polynomial.monomial(
            nv, tuple(a + b for a, b in zip(e, [max(x, 0) for x in self.exps[i]])), self.coeffs[i]
        )
        negs = tuple(max(-x, 0) for x in self.exps[i])
        if any(negs):
            return RatFunc(num, Polynomial.monomial(nv, negs))
        return RatFunc.from_poly(num)

    def inverse(self):
        return ScalingAut(
            self.table,
            tuple(1 / c for c in self.coeffs),
            tuple(tuple(-x for x in e) for e in self.exps),
        )

    def power(self, k):
        return ScalingAut(
            self.table,
            tuple(c**k if c != 1 else c for c in self.coeffs),
            tuple(tuple(x * k for x in e) for e in self.exps),
        )

    def __repr__(self):
        return f"ScalingAut(coeffs={self.coeffs}, exps={self.exps})"


class PermutationAut(Automorphism):
    """x_i -> x_{images[i]}; parameters must be fixed."""

    __slots__ = ("table", "images")

    def __init__(self, table, images):
        images = tuple(images)
        if sorted(images) != list(range(table.nvars)):
            raise PreconditionError(f"not a permutation of the table: {images}")
        for i in table.param_indices():
            if images[i] != i:
                raise PreconditionError("permutation must fix parameter variables")
        self.table = table
        self.images = images

    def apply(self, f):
        num = f.num.permute_vars(self.images)
        den = f.den.permute_vars(self.images)
        if den.is_constant():
            return RatFunc._raw(num, den)
        # permuting variables can change the grlex leading coefficient
        _, lc = den.leading_term()
        if lc != 1:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        return RatFunc._raw(num, den)

    def image_of_var(self, i):
        return RatFunc.variable(self.table.nvars, self.images[i])

    def inverse(self):
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return PermutationAut(self.table, tuple(inv))

    def __repr__(self):
        return f"PermutationAut({self.images})"


class GeneralAut(Automorphism):
    """Arbitrary substitution with a certified inverse, checked at construction."""

    __slots__ = ("table", "images", "inverse_images")

    def __init__(self, table, images, inverse_images):
        nv = table.nvars
        images = dict(images)
        inverse_images = dict(inverse_images)
        for imgs in (images, inverse_images):
            for i in imgs:
                if table.is_param(i):
                    raise PreconditionError("substitution moves a parameter variable")
        for i in range(nv):
            x = RatFunc.variable(nv, i)
            roundtrip = substitute(substitute(x, images), inverse_images)
            if roundtrip != x:
                raise PreconditionError(
                    f"inverse images do not invert the map on variable {i}"
                )
            roundtrip = substitute(substitute(x, inverse_images), images)
            if roundtrip != x:
                raise PreconditionError(
                    f"images do not invert the inverse map on variable {i}"
                )
        self.table = table
        self.images = images
        self.inverse_images = inverse_images

    def apply(self, f):
        return substitute(f, self.images)

    def image_of_var(self, i):
        return self.images.get(i, RatFunc.variable(self.table.nvars, i))

    def inverse(self):
        out = object.__new__(GeneralAut)
        out.table = self.table
        out.images = self.inverse_images
        out.inverse_images = self.images
        return out

    def __repr__(self):
        return f"GeneralAut({self.images})"


class _IteratedAut(Automorphism):
    """A positive power of an automorphism, applied by iteration."""

    __slots__ = ("table", "base", "times")

    def __init__(self, table, base, times):
        self.table = table
        self.base = base
        self.times = times

    def apply(self, f):
        for _ in range(self.times):
            f = self.base.apply(f)
        return f

    def image_of_var(self, i):
        return self.apply(RatFunc.variable(self.table.nvars, i))

    def inverse(self):
        return _IteratedAut(self.table, self.base.inverse(), self.times)


# ---------------------------------------------------------------------------
# Finite permutation group
# ---------------------------------------------------------------------------


def _perm_compose(a, b):
    # (a o b)(i) = a[b[i]]
    return tuple(a[j] for j in b)


def _perm_inverse(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class Group:
    """A finite group of variable permutations, eagerly enumerated.

    The enumeration order (identity first, then breadth-first products with
    the generators in their given order) is deterministic and is the order
    used for coset-representative choices downstream.
    """

    __slots__ = ("table", "perms", "gen_perms", "_pos")

    def __init__(self, table, perms, gen_perms=()):
        self.table = table
        self.perms = tuple(perms)
        self.gen_perms = tuple(gen_perms)
        self._pos = {p: i for i, p in enumerate(self.perms)}

    @classmethod
    def trivial(cls, table):
        return cls(table, (tuple(range(table.nvars)),))

    @classmethod
    def from_generators(cls, table, generators, cap=DEFAULT_GROUP_CAP):
        gens = []
        for g in generators:
            if isinstance(g, PermutationAut):
                gens.append(g.images)
            else:
                gens.append(PermutationAut(table, tuple(g)).images)
        identity = tuple(range(table.nvars))
        seen = {identity}
        order = [identity]
        frontier = [identity]
        while frontier:
            nxt = []
            for p in frontier:
                for g in gens:
                    q = _perm_compose(p, g)
                    if q not in seen:
                        seen.add(q)
                        order.append(q)
                        nxt.append(q)
                        if len(order) > cap:
                            raise ResourceCapError(
                                f"group closure exceeded the cap of {cap} elements"
                            )
            frontier = nxt
        return cls(table, order, gen_perms=tuple(gens))

    def __len__(self):
        return len(self.perms)

    def __iter__(self):
        return (GroupElement(self, i) for i in range(len(self.perms)))

    @property
    def identity(self):
        return GroupElement(self, 0)

    def element_of(self, perm):
        i = self._pos.get(tuple(perm))
        if i is None:
            raise PreconditionError(f"{perm} is not an element of the group")
        return GroupElement(self, i)

    def compose(self, g, h):
        return self.element_of(_perm_compose(g.perm, h.perm))

    def inverse(self, g):
        return self.element_of(_perm_inverse(g.perm))

    def is_trivial(self):
        return len(self.perms) == 1

    def generator_elements(self):
        """Generators when known, otherwise every non-identity element."""
        if self.gen_perms:
            return [self.element_of(p) for p in self.gen_perms]
        return [GroupElement(self, i) for i in range(1, len(self.perms))]

    def __repr__(self):
        return f"Group(order={len(self.perms)})"


class GroupElement:
    """An element of an enumerated permutation group."""

    __slots__ = ("group", "index")

    def __init__(self, group, index):
        self.group = group
        self.index = index

    @property
    def perm(self):
        return self.group.perms[self.index]

    def aut(self):
        return PermutationAut(self.group.table, self.perm)

    def apply(self, f):
        return self.aut().apply(f)

    def is_identity(self):
        return self.index == 0

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group is other.group and self.index == other.index

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __repr__(self):
        return f"GroupElement({self.perm})"


# ---------------------------------------------------------------------------
# Context: the shared algebra descriptor
# ---------------------------------------------------------------------------

LATTICE = "lattice"
FINITE_GROUP = "finite_group"


class Context:
    """Shared descriptor: variable table, monoid action, finite group G.

    ``lattice`` mode: keys of skew elements are integer vectors of length
    ``rank``; vector v acts as the product of the i-th generator to the power
    v_i.  ``coord_vars`` optionally records which acted variable each lattice
    coordinate is attached to (needed for conjugation by variable
    permutations).

    ``finite_group`` mode: keys are the permutations of a finite group W
    acting on the variables, and the "monoid" is W itself.
    """

    __slots__ = ("table", "mode", "generators", "nonneg", "group", "coord_vars", "key_group")

    def __init__(
        self,
        table,
        mode=LATTICE,
        generators=(),
        nonneg=False,
        group=None,
        coord_vars=None,
        key_group=None,
    ):
        self.table = table
        self.mode = mode
        self.generators = tuple(generators)
        self.nonneg = nonneg
        self.group = group if group is not None else Group.trivial(table)
        self.coord_vars = tuple(coord_vars) if coord_vars is not None else None
        self.key_group = key_group
        if mode == LATTICE:
            for i, a in enumerate(self.generators):
                for b in self.generators[i + 1 :]:
                    if not a.commutes_with(b):
                        raise PreconditionError(
                            "lattice generators must commute (checked symbolically)"
                        )
        elif mode == FINITE_GROUP:
            if key_group is None:
                raise PreconditionError("finite-group mode requires a key group")
        else:
            raise PreconditionError(f"unknown context mode {mode!r}")

    @property
    def rank(self):
        if self.mode != LATTICE:
            raise PreconditionError("rank is defined for lattice mode only")
        return len(self.generators)

    # -- key algebra ---------------------------------------------------------

    def key_identity(self):
        if self.mode == LATTICE:
            return (0,) * self.rank
        return tuple(range(self.table.nvars))

    def key_compose(self, a, b):
        if self.mode == LATTICE:
            return tuple(x + y for x, y in zip(a, b))
        return _perm_compose(a, b)

    def key_inverse(self, a):
        if self.mode == LATTICE:
            if self.nonneg and any(a):
                raise NotInvertibleError(
                    f"{a} is not invertible in the N^m monoid"
                )
            return tuple(-x for x in a)
        return _perm_inverse(a)

    def key_valid(self, a):
        if self.mode == LATTICE:
            return len(a) == self.rank and (not self.nonneg or all(x >= 0 for x in a))
        return tuple(a) in self.key_group._pos

    def act_key(self, key, f):
        """Apply the automorphism named by a key to a rational function."""
        if self.mode == FINITE_GROUP:
            return PermutationAut(self.table, key).apply(f)
        if not any(key):
            return f
        gens = self.generators
        if all(isinstance(s, ShiftAut) for s in gens):
            nv = self.table.nvars
            total = [QQ(0)] * nv
            for i, k in enumerate(key):
                if k:
                    for j, c in enumerate(gens[i].offsets):
                        if c != 0:
                            total[j] += c * k
            return ShiftAut(self.table, tuple(total)).apply(f)
        if all(isinstance(s, ScalingAut) for s in gens):
            nv = self.table.nvars
            coeffs = [QQ(1)] * nv
            exps = [[0] * nv for _ in range(nv)]
            for i, k in enumerate(key):
                if k:
                    s = gens[i]
                    for j in range(nv):
                        if s.coeffs[j] != 1:
                            coeffs[j] = coeffs[j] * s.coeffs[j] ** k
                        for t, e in enumerate(s.exps[j]):
                            if e:
                                exps[j][t] += e * k
            return ScalingAut(self.table, tuple(coeffs), tuple(tuple(e) for e in exps)).apply(f)
        for i, k in enumerate(key):
            if k:
                f = gens[i].power(k).apply(f)
        return f

    def key_aut(self, key):
        """The key's action packaged as an Automorphism (slow path, small uses)."""
        return _KeyAut(self, tuple(key))

    def conjugate_key(self, g, key):
        """g.key = g key g^{-1}, with the result verified symbolically."""
        if isinstance(g, GroupElement):
            perm = g.perm
        elif isinstance(g, PermutationAut):
            perm = g.images
        else:
            perm = tuple(g)
        if self.mode == FINITE_GROUP:
            out = _perm_compose(perm, _perm_compose(key, _perm_inverse(perm)))
            if not self.key_valid(out):
                raise NormalizationViolationError(
                    f"conjugated key {out} left the key group"
                )
            return out
        if perm == tuple(range(self.table.nvars)):
            return tuple(key)
        if self.coord_vars is not None:
            var_of = {v: i for i, v in enumerate(self.coord_vars)}
            out = [0] * len(key)
            for i, v in enumerate(self.coord_vars):
                target = perm[v]
                j = var_of.get(target)
                if j is None:
                    raise NormalizationViolationError(
                        "permutation moves an acted variable outside the lattice"
                    )
                out[j] = key[i]
            candidate = tuple(out)
        else:
            candidate = tuple(key)
        self._verify_conjugation(perm, key, candidate)
        if not self.key_valid(candidate):
            raise NormalizationViolationError(
                f"conjugated key {candidate} left the monoid"
            )
        return candidate

    def _verify_conjugation(self, perm, key, candidate):
        aut_g = PermutationAut(self.table, perm)
        aut_g_inv = aut_g.inverse()
        nv = self.table.nvars
        for i in range(nv):
            lhs = aut_g.apply(self.act_key(key, aut_g_inv.apply(RatFunc.variable(nv, i))))
            rhs = self.act_key(candidate, RatFunc.variable(nv, i))
            if lhs != rhs:
                raise NormalizationViolationError(
                    f"conjugation of {key} by {perm} is not a lattice element"
                )

    def key_sort(self, key):
        return tuple(key)

    def render_key(self, key):
        return "[" + ",".join(str(x) for x in key) + "]"

    def __repr__(self):
        if self.mode == LATTICE:
            kind = "N" if self.nonneg else "Z"
            return f"Context({self.table!r}, {kind}^{self.rank}, |G|={len(self.group)})"
        return f"Context({self.table!r}, finite-group keys, |W|={len(self.key_group)})"


class _KeyAut(Automorphism):
    """The action of a single monoid key, packaged as an Automorphism."""

    __slots__ = ("table", "context", "key")

    def __init__(self, context, key):
        self.table = context.table
        self.context = context
        self.key = key

    def apply(self, f):
        return self.context.act_key(self.key, f)

    def image_of_var(self, i):
        return self.apply(RatFunc.variable(self.table.nvars, i))

    def inverse(self):
        return _KeyAut(self.context, self.context.key_inverse(self.key))


# ---------------------------------------------------------------------------
# Monoid elements and the public action operations
# ---------------------------------------------------------------------------


class MonoidElement:
    """An element of the acting monoid: an integer lattice vector."""

    __slots__ = ("context", "vector")

    def __init__(self, context, vector):
        vector = tuple(int(x) for x in vector)
        if not context.key_valid(vector):
            raise PreconditionError(f"{vector} is not a valid monoid element")
        self.context = context
        self.vector = vector

    def act(self, f):
        return self.context.act_key(self.vector, f)

    def __eq__(self, other):
        if not isinstance(other, MonoidElement):
            return NotImplemented
        return self.context is other.context and self.vector == other.vector

    def __hash__(self):
        return hash((id(self.context), self.vector))

    def __repr__(self):
        return f"MonoidElement({self.vector})"


def act(a, f):
    """Apply an automorphism or a monoid element to a rational function."""
    if isinstance(a, Automorphism):
        return a.apply(f)
    if isinstance(a, (MonoidElement, GroupElement)):
        return a.act(f) if isinstance(a, MonoidElement) else a.apply(f)
    raise PreconditionError(f"cannot act with {a!r}")


def compose(a, b):
    if a.context is not b.context:
        raise ContextMismatchError("monoid elements from different contexts")
    return MonoidElement(a.context, a.context.key_compose(a.vector, b.vector))


def inverse(a):
    return MonoidElement(a.context, a.context.key_inverse(a.vector))


def conjugate(g, mu):
    """g.mu = g mu g^{-1}, verified symbolically on all variables."""
    return MonoidElement(mu.context, mu.context.conjugate_key(g, mu.vector))


def orbit(group, mu):
    """The G-orbit of a monoid element under conjugation."""
    return {conjugate(g, mu) for g in group}


def stabilizer(group, mu):
    """The stabilizer subgroup {g : g.mu = mu}."""
    members = [g.perm for g in group if conjugate(g, mu).vector == mu.vector]
    return Group(group.table, members)
