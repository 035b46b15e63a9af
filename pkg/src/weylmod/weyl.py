"""
Normal-ordered arithmetic in the Weyl algebra W_n over exact scalar rings.

Ring tags:
  QQ  coefficients in Q
  QZ  coefficients in Q(z), z a central parameter living in the scalars
  ZP  coefficients in Q[z], z carried as a central monomial exponent
  H1  homogenized W_1 with [d, x] = h^2, h carried in the z-exponent slot

Elements are stored normal-ordered: a term is (alpha, beta, e) -> coeff,
meaning coeff * z^e * x^alpha * d^beta (h^e for H1).  All noncommutativity
lives in the product, which applies the closed-form reordering

    d^beta x^gamma = sum_nu C(beta,nu) C(gamma,nu) nu! x^(gamma-nu) d^(beta-nu)

termwise instead of iterating single commutators.
"""

from fractions import Fraction
from itertools import product as _iproduct
from math import comb, factorial

from .errors import MixedAmbient, UnsupportedAmbient, ZeroElement
from .scalars import QPoly, RatFunc

QQ = "QQ"
QZ = "QZ"
ZP = "ZP"
H1 = "H1"

RING_TAGS = (QQ, QZ, ZP, H1)


def _coerce(ring, c):
    if ring == QZ:
        if isinstance(c, RatFunc):
            return c
        if isinstance(c, (int, Fraction)):
            return RatFunc(c)
    else:
        if isinstance(c, Fraction):
            return c
        if isinstance(c, int):
            return Fraction(c)
    raise TypeError("bad scalar %r for ring %s" % (c, ring))


def _one(ring):
    return RatFunc(1) if ring == QZ else Fraction(1)


def _zero_index(n):
    return (0,) * n


def _add_idx(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_idx(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _reorder_terms(beta, gamma):
    """Expansion of d^beta x^gamma: yields (nu, integer multiplier)."""
    ranges = [range(min(b, g) + 1) for b, g in zip(beta, gamma)]
    for nu in _iproduct(*ranges):
        m = 1
        for b, g, v in zip(beta, gamma, nu):
            if v:
                m *= comb(b, v) * comb(g, v) * factorial(v)
        yield nu, m


class WeylElement:
    __slots__ = ("n", "ring", "terms")

    def __init__(self, n, ring, terms):
        cleaned = {}
        for key, c in terms.items():
            if isinstance(c, int):
                c = _coerce(ring, c)
            if c:
                cleaned[key] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("WeylElement is immutable")

    def _check(self, other):
        if self.n != other.n or self.ring != other.ring:
            raise MixedAmbient("operands live in different algebras: "
                               "W_%d/%s vs W_%d/%s"
                               % (self.n, self.ring, other.n, other.ring))

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylAlgebra(self.n, self.ring).scalar(other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return (self.n == other.n and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.ring, frozenset(self.terms.items())))

    def __neg__(self):
        return WeylElement(self.n, self.ring,
                           {k: -c for k, c in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylAlgebra(self.n, self.ring).scalar(other)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return WeylElement(self.n, self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylAlgebra(self.n, self.ring).scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _coerce(self.ring, c)
        if not c:
            return WeylElement(self.n, self.ring, {})
        return WeylElement(self.n, self.ring,
                           {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or (
                self.ring == QZ and isinstance(other, RatFunc)):
            return self.scale(other)
        self._check(other)
        return normal_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) or (
                self.ring == QZ and isinstance(other, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, c):
        one = _one(self.ring)
        return self.scale(one / _coerce(self.ring, c))

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a Weyl element")
        result = WeylAlgebra(self.n, self.ring).one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def support_degree(self, key):
        a, b, e = key
        return sum(a) + sum(b) + (e if self.ring == H1 else 0)

    def sorted_terms(self):
        """Deterministic descending term list for printing and hashing-free walks."""
        return sorted(self.terms.items(),
                      key=lambda kv: (self.support_degree(kv[0]),) + kv[0],
                      reverse=True)

    def __repr__(self):
        return to_str(self)


def normal_product(u, v):
    """Product in normal order; the only place commutators are expanded."""
    u._check(v)
    n, ring = u.n, u.ring
    homog = ring == H1
    out = {}
    for (a1, b1, e1), c1 in u.terms.items():
        for (a2, b2, e2), c2 in v.terms.items():
            c12 = c1 * c2
            for nu, m in _reorder_terms(b1, a2):
                alpha = _add_idx(_sub_idx(a2, nu), a1)
                beta = _add_idx(_sub_idx(b1, nu), b2)
                e = e1 + e2 + (2 * sum(nu) if homog else 0)
                key = (alpha, beta, e)
                c = c12 * m
                s = out.get(key)
                s = c if s is None else s + c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
    return WeylElement(n, ring, out)


class WeylAlgebra:
    """Factory for elements of W_n over a tagged scalar ring."""

    def __init__(self, n, ring=QQ):
        if n < 1:
            raise UnsupportedAmbient("need n >= 1")
        if ring not in RING_TAGS:
            raise ValueError("unknown ring tag %r" % (ring,))
        if ring == H1 and n != 1:
            raise UnsupportedAmbient("homogenized algebra is n = 1 only")
        self.n = n
        self.ring = ring

    def zero(self):
        return WeylElement(self.n, self.ring, {})

    def scalar(self, c):
        if self.ring == ZP and isinstance(c, QPoly):
            z0 = _zero_index(self.n)
            return WeylElement(self.n, self.ring,
                               {(z0, z0, i): ci
                                for i, ci in enumerate(c.coeffs) if ci})
        c = _coerce(self.ring, c)
        if not c:
            return self.zero()
        z0 = _zero_index(self.n)
        return WeylElement(self.n, self.ring, {(z0, z0, 0): c})

    def one(self):
        return self.scalar(1)

    def x(self, i):
        """Generator x_i, 1-based."""
        if not 1 <= i <= self.n:
            raise UnsupportedAmbient("x index %d out of range" % i)
        z0 = _zero_index(self.n)
        a = tuple(1 if j == i - 1 else 0 for j in range(self.n))
        return WeylElement(self.n, self.ring, {(a, z0, 0): _one(self.ring)})

    def d(self, i):
        """Generator d_i (the i-th derivation), 1-based."""
        if not 1 <= i <= self.n:
            raise UnsupportedAmbient("d index %d out of range" % i)
        z0 = _zero_index(self.n)
        b = tuple(1 if j == i - 1 else 0 for j in range(self.n))
        return WeylElement(self.n, self.ring, {(z0, b, 0): _one(self.ring)})

    def z(self):
        if self.ring == ZP:
            z0 = _zero_index(self.n)
            return WeylElement(self.n, self.ring, {(z0, z0, 1): Fraction(1)})
        if self.ring == QZ:
            z0 = _zero_index(self.n)
            return WeylElement(self.n, self.ring, {(z0, z0, 0): RatFunc.z()})
        raise UnsupportedAmbient("z only exists over QZ or ZP")

    def h(self):
        if self.ring != H1:
            raise UnsupportedAmbient("h only exists in the homogenized algebra")
        z0 = _zero_index(self.n)
        return WeylElement(self.n, self.ring, {(z0, z0, 1): Fraction(1)})

    def monomial(self, alpha, beta, e=0, coeff=1):
        return WeylElement(self.n, self.ring,
                           {(tuple(alpha), tuple(beta), e):
                            _coerce(self.ring, coeff)})


def bernstein_degree(u):
    """Max over terms of |alpha| + |beta|; z has weight 0, h weight 1."""
    if not u.terms:
        raise ZeroElement("Bernstein degree of 0 is undefined")
    return max(u.support_degree(k) for k in u.terms)


class SymbolPolynomial:
    """Commutative polynomial in x_1..x_n, xi_1..xi_n (and z over ZP)."""

    __slots__ = ("n", "ring", "terms")

    def __init__(self, n, ring, terms):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", {k: c for k, c in terms.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("SymbolPolynomial is immutable")

    def __eq__(self, other):
        if not isinstance(other, SymbolPolynomial):
            return NotImplemented
        return (self.n == other.n and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.ring, frozenset(self.terms.items())))

    def __mul__(self, other):
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = (_add_idx(k1[0], k2[0]), _add_idx(k1[1], k2[1]),
                       k1[2] + k2[2])
                c = c1 * c2
                s = out.get(key)
                s = c if s is None else s + c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return SymbolPolynomial(self.n, self.ring, out)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return SymbolPolynomial(self.n, self.ring, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, reverse=True):
            a, b, e = key
            c = self.terms[key]
            factors = []
            if e:
                factors.append("z^%d" % e if e > 1 else "z")
            for i, ai in enumerate(a):
                if ai:
                    factors.append("x%d" % (i + 1) + ("^%d" % ai if ai > 1 else ""))
            for i, bi in enumerate(b):
                if bi:
                    factors.append("xi%d" % (i + 1) + ("^%d" % bi if bi > 1 else ""))
            body = "*".join(factors) if factors else "1"
            cs = c.to_str() if isinstance(c, RatFunc) else str(c)
            if cs != "1" or not factors:
                if not (cs == "1" and factors):
                    body = cs + "*" + body if factors else cs
            parts.append(body)
        return " + ".join(parts)


def principal_symbol(u):
    """Top Bernstein-degree part with d_i renamed to the commuting xi_i."""
    top = bernstein_degree(u)
    terms = {k: c for k, c in u.terms.items() if u.support_degree(k) == top}
    return SymbolPolynomial(u.n, u.ring, terms)


def fourier(u):
    """The automorphism x_i -> d_i, d_i -> -x_i, renormalized; order four."""
    A = WeylAlgebra(u.n, u.ring)
    out = A.zero()
    z0 = _zero_index(u.n)
    for (a, b, e), c in u.terms.items():
        w = A.monomial(z0, a, e, c)
        if sum(b):
            w = w * A.monomial(b, z0, 0, (-1) ** sum(b))
        out = out + w
    return out


def fourier_inverse(u):
    """The inverse automorphism x_i -> -d_i, d_i -> x_i."""
    A = WeylAlgebra(u.n, u.ring)
    out = A.zero()
    z0 = _zero_index(u.n)
    for (a, b, e), c in u.terms.items():
        w = A.monomial(z0, a, e, c * (-1) ** sum(a))
        if sum(b):
            w = w * A.monomial(b, z0, 0, 1)
        out = out + w
    return out


def transpose(u):
    """The anti-automorphism x -> x, d -> -d; transpose(uv) = transpose(v)transpose(u)."""
    A = WeylAlgebra(u.n, u.ring)
    out = A.zero()
    z0 = _zero_index(u.n)
    for (a, b, e), c in u.terms.items():
        w = A.monomial(z0, b, e, c * (-1) ** sum(b))
        if sum(a):
            w = w * A.monomial(a, z0, 0, 1)
        out = out + w
    return out


class XPoly:
    """Commutative polynomial in x_1..x_n, the module Q[x] the algebra acts on."""

    __slots__ = ("n", "ring", "terms")

    def __init__(self, n, ring, terms=()):
        data = dict(terms) if not isinstance(terms, dict) else dict(terms)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", {k: c for k, c in data.items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("XPoly is immutable")

    @staticmethod
    def monomial(n, ring, alpha, coeff=1):
        return XPoly(n, ring, {tuple(alpha): _coerce(ring, coeff)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return (self.n == other.n and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
        return XPoly(self.n, self.ring, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _coerce(self.ring, c)
        if not c:
            return XPoly(self.n, self.ring, {})
        return XPoly(self.n, self.ring,
                     {k: v * c for k, v in self.terms.items()})

    def diff(self, i):
        """Partial derivative along x_i, 1-based."""
        out = {}
        for a, c in self.terms.items():
            if a[i - 1] == 0:
                continue
            b = tuple(v - 1 if j == i - 1 else v for j, v in enumerate(a))
            out[b] = out.get(b, 0) + c * a[i - 1]
        return XPoly(self.n, self.ring, out)

    def mul_x(self, alpha):
        return XPoly(self.n, self.ring,
                     {_add_idx(a, alpha): c for a, c in self.terms.items()})

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(a) for a in self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for a in sorted(self.terms, key=lambda t: (sum(t),) + t, reverse=True):
            c = self.terms[a]
            factors = ["x%d" % (i + 1) + ("^%d" % v if v > 1 else "")
                       for i, v in enumerate(a) if v]
            cs = c.to_str() if isinstance(c, RatFunc) else str(c)
            if factors and cs == "1":
                parts.append("*".join(factors))
            elif factors:
                parts.append(cs + "*" + "*".join(factors))
            else:
                parts.append(cs)
        return " + ".join(parts)


def apply_to_polynomial(u, f):
    """The standard action on Q[x]: x_i multiplies, d_i differentiates."""
    if u.ring not in (QQ, QZ):
        raise UnsupportedAmbient("polynomial action needs field coefficients")
    if u.n != f.n or u.ring != f.ring:
        raise MixedAmbient("element and polynomial ambients differ")
    out = XPoly(u.n, u.ring, {})
    for (a, b, _e), c in u.terms.items():
        g = f
        for i in range(u.n):
            for _ in range(b[i]):
                g = g.diff(i + 1)
            if g.is_zero():
                break
        if g.is_zero():
            continue
        out = out + g.mul_x(a).scale(c)
    return out


def _coeff_str(c, need_parens):
    if isinstance(c, RatFunc):
        s = c.to_str()
        if need_parens and (" " in s or "/" in s) and not s.startswith("("):
            s = "(%s)" % s
        return s
    return str(c)


def to_str(u):
    """Deterministic normal-form string; reparses to the same element."""
    if not u.terms:
        return "0"
    zname = "h" if u.ring == H1 else "z"
    parts = []
    for (a, b, e), c in u.sorted_terms():
        factors = []
        if e:
            factors.append(zname + ("^%d" % e if e > 1 else ""))
        for i, ai in enumerate(a):
            if ai:
                factors.append("x%d" % (i + 1) + ("^%d" % ai if ai > 1 else ""))
        for i, bi in enumerate(b):
            if bi:
                factors.append("d%d" % (i + 1) + ("^%d" % bi if bi > 1 else ""))
        mono = "*".join(factors)
        negative = False
        cs = _coeff_str(c, need_parens=bool(factors))
        if cs.startswith("-") and not cs.startswith("(-"):
            negative = True
            cs = cs[1:]
        if mono and cs == "1":
            body = mono
        elif mono:
            body = cs + "*" + mono
        else:
            body = cs
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts)


def convert_ring(u, target):
    """Move an element between coefficient representations when lossless.

    ZP -> QZ folds the z exponent into the scalars; QZ -> ZP expands
    polynomial scalars into z exponents (denominators must be 1);
    QQ -> QZ / QQ -> ZP are inclusions; ZP/QZ -> QQ requires no z at all.
    """
    if u.ring == target:
        return u
    A = WeylAlgebra(u.n, target)
    out = A.zero()
    for (a, b, e), c in u.terms.items():
        if u.ring == ZP and target == QZ:
            zc = RatFunc(QPoly((0,) * e + (1,))) * RatFunc(c)
            out = out + WeylElement(u.n, QZ, {(a, b, 0): zc})
        elif u.ring == QZ and target == ZP:
            if c.den.degree() != 0:
                raise UnsupportedAmbient(
                    "coefficient %s is not polynomial in z" % (c,))
            poly = c.num * (1 / c.den.lead()) if c.den.lead() != 1 else c.num
            for i, ci in enumerate(poly.coeffs):
                if ci:
                    out = out + WeylElement(u.n, ZP, {(a, b, e + i): ci})
        elif u.ring == QQ and target == QZ:
            out = out + WeylElement(u.n, QZ, {(a, b, e): RatFunc(c)})
        elif u.ring == QQ and target == ZP:
            out = out + WeylElement(u.n, ZP, {(a, b, e): c})
        elif u.ring == ZP and target == QQ:
            if e:
                raise UnsupportedAmbient("element involves z, not in W_n(Q)")
            out = out + WeylElement(u.n, QQ, {(a, b, 0): c})
        elif u.ring == QZ and target == QQ:
            if c.den.degree() != 0 or c.num.degree() > 0:
                raise UnsupportedAmbient("element involves z, not in W_n(Q)")
            out = out + WeylElement(u.n, QQ, {(a, b, e): c.residue0()})
        else:
            raise UnsupportedAmbient("no conversion %s -> %s" % (u.ring, target))
    return out


def reduce_element_mod_z(u):
    """Residue of an integral element: ZP drops z-divisible terms, QZ evaluates."""
    A = WeylAlgebra(u.n, QQ)
    out = A.zero()
    for (a, b, e), c in u.terms.items():
        if u.ring == ZP:
            if e == 0:
                out = out + WeylElement(u.n, QQ, {(a, b, 0): c})
        elif u.ring == QZ:
            r = c.residue0()
            if r:
                out = out + WeylElement(u.n, QQ, {(a, b, 0): r})
        elif u.ring == QQ:
            out = out + WeylElement(u.n, QQ, {(a, b, e): c})
        else:
            raise UnsupportedAmbient("reduction undefined for %s" % u.ring)
    return out
