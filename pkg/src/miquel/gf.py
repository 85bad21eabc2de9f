"""Exact arithmetic in the finite field tower GF(p) <= GF(q) <= GF(q^2), q = p^m odd.

GF(q) is realized as GF(p)[x] modulo a fixed monic irreducible polynomial.
Elements are stored as fully reduced coefficient tuples (low degree first),
so equality is plain value equality.  The quadratic extension is
GF(q^2) = GF(q)(w) with w**2 = alpha for a fixed nonsquare alpha of GF(q);
every extension element is x + y*w and conjugation sends it to x - y*w.

Canonical element order compares coefficient tuples lexicographically with
residues taken in 0..p-1; extension elements compare by (x, y).  Square
roots are canonicalized to the smaller root of the pair {r, -r} in this
order.  By convention 0 counts as a square and sqrt(0) = 0, so callers
never need a special zero case.

Text forms: an Fq value prints as a single integer for m == 1 and as a
comma separated coefficient list "a0,a1,..." for m > 1; an Fq2 value prints
as "X+Y*w".  The parsers here are exact inverses of the printers.

All values are immutable; a FieldSpec may be shared freely across threads.
"""
from __future__ import annotations

import itertools
import re
from typing import Iterator, Optional, Sequence, Union


class FieldError(ValueError):
    """Base class for field construction and arithmetic errors."""


class NotPrime(FieldError):
    pass


class EvenCharacteristic(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class AlphaIsSquare(FieldError):
    pass


class MixedFields(FieldError):
    pass


class ZeroElement(FieldError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


# ---------------------------------------------------------------------------
# polynomial helpers (coefficient tuples over GF(p), low degree first)

def _trim(cs: Sequence[int]) -> tuple[int, ...]:
    n = len(cs)
    while n > 0 and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _poly_mod(a: Sequence[int], f: Sequence[int], p: int) -> tuple[int, ...]:
    # f monic
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df])


def _poly_powmod(a: Sequence[int], e: int, f: Sequence[int], p: int) -> tuple[int, ...]:
    result: tuple[int, ...] = (1,)
    base = _poly_mod(a, f, p)
    while e > 0:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_gcd(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    a, b = _trim(a), _trim(b)
    while b:
        lead_inv = pow(b[-1], p - 2, p)
        monic_b = tuple(c * lead_inv % p for c in b)
        a, b = b, _poly_mod(a, monic_b, p)
    return a


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin test: f monic of degree m is irreducible over GF(p) iff
    x^(p^m) == x (mod f) and gcd(x^(p^(m/l)) - x, f) = 1 for prime l | m."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = (0, 1)

    def x_frobenius(k: int) -> tuple[int, ...]:
        t: tuple[int, ...] = x
        for _ in range(k):
            t = _poly_powmod(t, p, f, p)
        return t

    for ell in _prime_factors_of(m):
        g = list(x_frobenius(m // ell))
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        if len(_poly_gcd(f, _trim(g), p)) > 1:
            return False
    t = list(x_frobenius(m))
    while len(t) < 2:
        t.append(0)
    t[1] = (t[1] - 1) % p
    return not _trim(t)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors_of(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def _int_sqrt_mod(a: int, p: int) -> Optional[int]:
    """Canonical square root of a mod odd prime p, or None.  Tonelli-Shanks
    with the usual shortcuts; the returned root is min(r, p - r)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    elif p % 8 == 5:
        r = pow(a, (p + 3) // 8, p)
        if r * r % p != a:
            r = r * pow(2, (p - 1) // 4, p) % p
    else:
        t, s = p - 1, 0
        while t % 2 == 0:
            t //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        c = pow(z, t, p)
        r = pow(a, (t + 1) // 2, p)
        b = pow(a, t, p)
        m = s
        while b != 1:
            b2, i = b * b % p, 1
            while b2 != 1:
                b2 = b2 * b2 % p
                i += 1
            zz = pow(c, 1 << (m - i - 1), p)
            r = r * zz % p
            c = zz * zz % p
            b = b * c % p
            m = i
    return min(r, p - r)


def _group_sqrt(a, order: int, nonsquare, one):
    """Tonelli-Shanks in a cyclic group of even order, written against the
    element's ** and * operators.  Assumes a is a residue."""
    t, s = order, 0
    while t % 2 == 0:
        t //= 2
        s += 1
    c = nonsquare ** t
    r = a ** ((t + 1) // 2)
    b = a ** t
    m = s
    while b != one:
        b2, i = b * b, 1
        while b2 != one:
            b2 = b2 * b2
            i += 1
        z = c ** (1 << (m - i - 1))
        r = r * z
        c = z * z
        b = b * c
        m = i
    return r


# ---------------------------------------------------------------------------


class FieldSpec:
    """The tower GF(p) <= GF(q = p^m) <= GF(q^2), pinned down by a monic
    irreducible modulus for GF(q) and a nonsquare alpha with w = sqrt(alpha)
    generating the extension.

    Defaults are deterministic: the lexicographically smallest monic
    irreducible modulus (coefficients compared low degree first) and the
    smallest nonsquare alpha in canonical element order.
    """

    __slots__ = ("p", "m", "q", "modulus", "alpha", "zero", "one",
                 "ext_zero", "ext_one", "_hash", "_ext_ns", "_factors")

    def __init__(self, p: int, m: int = 1,
                 modulus: Optional[Sequence[int]] = None,
                 alpha: Union[None, int, Sequence[int], "Fq"] = None):
        if not isinstance(p, int) or not _is_prime(p):
            raise NotPrime(f"p = {p} is not prime")
        if p == 2:
            raise EvenCharacteristic("characteristic 2 is not supported")
        if not isinstance(m, int) or m < 1:
            raise FieldError(f"m = {m} must be a positive integer")
        self.p = p
        self.m = m
        self.q = p ** m
        if modulus is None:
            self.modulus = self._default_modulus()
        else:
            mod = tuple(c % p for c in modulus)
            if len(mod) != m + 1 or mod[-1] != 1:
                raise ReducibleModulus(
                    f"modulus must be monic of degree {m}: {modulus}")
            if not _is_irreducible(mod, p):
                raise ReducibleModulus(f"modulus {mod} is reducible over GF({p})")
            self.modulus = mod
        self.zero = Fq(self, (0,) * m)
        self.one = Fq(self, (1,) + (0,) * (m - 1))
        self.ext_zero = Fq2(self.zero, self.zero)
        self.ext_one = Fq2(self.one, self.zero)
        self._hash = None
        self._ext_ns = None
        self._factors = {}
        if alpha is None:
            self.alpha = self._default_alpha()
        else:
            a = self.fq(alpha)
            if a.is_zero() or a.is_square():
                raise AlphaIsSquare(f"alpha = {a} is not a nonsquare in GF({self.q})")
            self.alpha = a

    def _default_modulus(self) -> tuple[int, ...]:
        if self.m == 1:
            return (0, 1)
        for tail in itertools.product(range(self.p), repeat=self.m):
            cand = tuple(tail) + (1,)
            if _is_irreducible(cand, self.p):
                return cand
        raise ReducibleModulus(f"no irreducible degree-{self.m} polynomial found")

    def _default_alpha(self) -> "Fq":
        for x in self.elements():
            if not x.is_zero() and not x.is_square():
                return x
        raise AlphaIsSquare(f"GF({self.q}) has no nonsquare")

    # -- element construction ------------------------------------------------

    def fq(self, value: Union[int, Sequence[int], "Fq"]) -> "Fq":
        """Coerce an integer (constant) or coefficient sequence into GF(q)."""
        if isinstance(value, Fq):
            if value.spec is not self and value.spec != self:
                raise MixedFields("element belongs to a different field")
            return value
        if isinstance(value, int):
            return Fq(self, (value % self.p,) + (0,) * (self.m - 1))
        cs = tuple(int(c) % self.p for c in value)
        if len(cs) > self.m:
            raise FieldError(f"too many coefficients for GF({self.q}): {value}")
        return Fq(self, cs + (0,) * (self.m - len(cs)))

    def fq2(self, x: Union[int, Sequence[int], "Fq"] = 0,
            y: Union[int, Sequence[int], "Fq"] = 0) -> "Fq2":
        return Fq2(self.fq(x), self.fq(y))

    def embed(self, x: "Fq") -> "Fq2":
        return Fq2(self.fq(x), self.zero)

    def elements(self) -> Iterator["Fq"]:
        """All of GF(q) in canonical order."""
        for t in itertools.product(range(self.p), repeat=self.m):
            yield Fq(self, t)

    def ext_elements(self) -> Iterator["Fq2"]:
        """All of GF(q^2) in canonical order."""
        for x in self.elements():
            for y in self.elements():
                yield Fq2(x, y)

    # -- internals -----------------------------------------------------------

    def ext_nonsquare(self) -> "Fq2":
        """Smallest nonsquare of GF(q^2), cached (used for extension roots)."""
        if self._ext_ns is None:
            for z in self.ext_elements():
                if not z.is_zero() and not z.is_square():
                    self._ext_ns = z
                    break
        return self._ext_ns

    def prime_factors(self, n: int) -> tuple[int, ...]:
        got = self._factors.get(n)
        if got is None:
            got = _prime_factors_of(n)
            self._factors[n] = got
        return got

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p == other.p and self.m == other.m
                and self.modulus == other.modulus
                and self.alpha.coeffs == other.alpha.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self.m, self.modulus, self.alpha.coeffs))
        return self._hash

    def __repr__(self):
        return f"FieldSpec(p={self.p}, m={self.m}, modulus={self.modulus}, alpha={self.alpha})"


def field_make(p: int, m: int = 1,
               modulus: Optional[Sequence[int]] = None,
               alpha: Union[None, int, Sequence[int], "Fq"] = None) -> FieldSpec:
    """Build the field tower for GF(p^m); see FieldSpec for the defaults."""
    return FieldSpec(p, m, modulus=modulus, alpha=alpha)


class Fq:
    """An element of GF(q), a reduced coefficient tuple over GF(p)."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    def _check(self, other: "Fq"):
        if self.spec is not other.spec and self.spec != other.spec:
            raise MixedFields("operands belong to different fields")

    def __add__(self, other):
        if not isinstance(other, Fq):
            return NotImplemented
        self._check(other)
        s = self.spec
        if s.m == 1:
            return Fq(s, ((self.coeffs[0] + other.coeffs[0]) % s.p,))
        p = s.p
        return Fq(s, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, Fq):
            return NotImplemented
        self._check(other)
        s = self.spec
        if s.m == 1:
            return Fq(s, ((self.coeffs[0] - other.coeffs[0]) % s.p,))
        p = s.p
        return Fq(s, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.spec.p
        return Fq(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, Fq):
            return NotImplemented
        self._check(other)
        s = self.spec
        if s.m == 1:
            return Fq(s, ((self.coeffs[0] * other.coeffs[0]) % s.p,))
        prod = _poly_mod(_poly_mul(self.coeffs, other.coeffs, s.p), s.modulus, s.p)
        return Fq(s, prod + (0,) * (s.m - len(prod)))

    def inverse(self) -> "Fq":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        s = self.spec
        if s.m == 1:
            return Fq(s, (pow(self.coeffs[0], s.p - 2, s.p),))
        return self ** (s.q - 2)

    def __truediv__(self, other):
        if not isinstance(other, Fq):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, e: int):
        s = self.spec
        if s.m == 1:
            if e < 0 and self.coeffs[0] == 0:
                raise DivisionByZero("inverse of zero")
            return Fq(s, (pow(self.coeffs[0], e, s.p),))
        if e < 0:
            return self.inverse() ** (-e)
        result = s.one
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Fq):
            return NotImplemented
        return self.coeffs == other.coeffs and (
            self.spec is other.spec or self.spec == other.spec)

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self == self.spec.one

    def key(self) -> tuple[int, ...]:
        """Canonical ordering key (lexicographic coefficient tuple)."""
        return self.coeffs

    def is_square(self) -> bool:
        """Euler criterion; zero counts as a square by convention."""
        if self.is_zero():
            return True
        return (self ** ((self.spec.q - 1) // 2)) == self.spec.one

    def sqrt(self) -> Optional["Fq"]:
        """Canonical square root in GF(q), or None if there is none here.
        Use sqrt_in_ext for the root that always exists in GF(q^2)."""
        if self.is_zero():
            return self
        s = self.spec
        if s.m == 1:
            r = _int_sqrt_mod(self.coeffs[0], s.p)
            return None if r is None else Fq(s, (r,))
        if not self.is_square():
            return None
        r = _group_sqrt(self, s.q - 1, s.alpha, s.one)
        rn = -r
        return r if r.key() <= rn.key() else rn

    def mult_order(self) -> int:
        """Least k >= 1 with self**k == 1."""
        if self.is_zero():
            raise ZeroElement("zero has no multiplicative order")
        s = self.spec
        n = s.q - 1
        order = n
        for f in s.prime_factors(n):
            while order % f == 0 and (self ** (order // f)) == s.one:
                order //= f
        return order

    def text(self) -> str:
        if self.spec.m == 1:
            return str(self.coeffs[0])
        return ",".join(str(c) for c in self.coeffs)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Fq({self.text()} in GF({self.spec.q}))"


class Fq2:
    """An element x + y*w of GF(q^2), with w**2 = alpha."""

    __slots__ = ("x", "y")

    def __init__(self, x: Fq, y: Fq):
        self.x = x
        self.y = y

    @property
    def spec(self) -> FieldSpec:
        return self.x.spec

    def _coerce(self, other):
        if isinstance(other, Fq2):
            return other
        if isinstance(other, Fq):
            return Fq2(other, other.spec.zero)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fq2(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fq2(self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fq2(o.x - self.x, o.y - self.y)

    def __neg__(self):
        return Fq2(-self.x, -self.y)

    def __mul__(self, other):
        if isinstance(other, Fq):
            return Fq2(self.x * other, self.y * other)
        if not isinstance(other, Fq2):
            return NotImplemented
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        s = x1.spec
        if s.m == 1:
            x1._check(x2)
            p = s.p
            al = s.alpha.coeffs[0]
            a, b = x1.coeffs[0], y1.coeffs[0]
            c, d = x2.coeffs[0], y2.coeffs[0]
            return Fq2(Fq(s, ((a * c + al * b * d) % p,)),
                       Fq(s, ((a * d + b * c) % p,)))
        return Fq2(x1 * x2 + s.alpha * (y1 * y2), x1 * y2 + x2 * y1)

    def __rmul__(self, other):
        if isinstance(other, Fq):
            return Fq2(self.x * other, self.y * other)
        return NotImplemented

    def inverse(self) -> "Fq2":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        ni = self.norm().inverse()
        return Fq2(self.x * ni, -(self.y * ni))

    def __truediv__(self, other):
        if isinstance(other, Fq):
            return Fq2(self.x / other, self.y / other)
        if not isinstance(other, Fq2):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, Fq):
            return Fq2(other, other.spec.zero) * self.inverse()
        return NotImplemented

    def __pow__(self, e: int):
        s = self.spec
        if e < 0:
            return self.inverse() ** (-e)
        result = s.ext_one
        base = self
        while e > 0:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Fq2):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x.coeffs, self.y.coeffs))

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def is_zero(self) -> bool:
        return self.x.is_zero() and self.y.is_zero()

    def in_base(self) -> bool:
        """True when the element lies in GF(q), i.e. is fixed by conjugation."""
        return self.y.is_zero()

    def key(self):
        return (self.x.coeffs, self.y.coeffs)

    def conj(self) -> "Fq2":
        """Frobenius conjugate z -> z**q, i.e. x + y*w -> x - y*w."""
        return Fq2(self.x, -self.y)

    def norm(self) -> Fq:
        """z * conj(z) = x**2 - alpha*y**2, a GF(q) value."""
        return self.x * self.x - self.spec.alpha * (self.y * self.y)

    def trace(self) -> Fq:
        """z + conj(z) = 2*x, a GF(q) value."""
        return self.x + self.x

    def is_square(self) -> bool:
        if self.is_zero():
            return True
        s = self.spec
        return (self ** ((s.q * s.q - 1) // 2)) == s.ext_one

    def sqrt(self) -> Optional["Fq2"]:
        """Canonical square root in GF(q^2), or None for a nonsquare."""
        if self.is_zero():
            return self
        if self.y.is_zero():
            return sqrt_in_ext(self.x)
        s = self.spec
        n = s.q * s.q - 1
        if (self ** (n // 2)) != s.ext_one:
            return None
        r = _group_sqrt(self, n, s.ext_nonsquare(), s.ext_one)
        rn = -r
        return r if r.key() <= rn.key() else rn

    def mult_order(self) -> int:
        if self.is_zero():
            raise ZeroElement("zero has no multiplicative order")
        s = self.spec
        n = s.q * s.q - 1
        order = n
        for f in s.prime_factors(n):
            while order % f == 0 and (self ** (order // f)) == s.ext_one:
                order //= f
        return order

    def text(self) -> str:
        return f"{self.x.text()}+{self.y.text()}*w"

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Fq2({self.text()} in GF({self.spec.q}^2))"


def sqrt_in_ext(a: Fq) -> Fq2:
    """Canonical square root of a GF(q) value inside GF(q^2).

    Every GF(q) value has one: the root sits in GF(q) when a is a square
    there, and is purely imaginary (y*w) otherwise.
    """
    s = a.spec
    r = a.sqrt()
    if r is not None:
        e = s.embed(r)
        en = -e
        return e if e.key() <= en.key() else en
    y = (a / s.alpha).sqrt()
    z = Fq2(s.zero, y)
    zn = -z
    return z if z.key() <= zn.key() else zn


# -- thin operation aliases --------------------------------------------------

def conj(z: Fq2) -> Fq2:
    return z.conj()


def norm(z: Fq2) -> Fq:
    return z.norm()


def trace(z: Fq2) -> Fq:
    return z.trace()


def is_square(x: Union[Fq, Fq2]) -> bool:
    return x.is_square()


def sqrt(x: Union[Fq, Fq2]):
    return x.sqrt()


def mult_order(x: Union[Fq, Fq2]) -> int:
    return x.mult_order()


# -- text parsing ------------------------------------------------------------

_FQ_RE = re.compile(r"^[0-9]+(?:,[0-9]+)*$")
_FQ2_RE = re.compile(r"^(?P<x>[0-9]+(?:,[0-9]+)*)\+(?P<y>[0-9]+(?:,[0-9]+)*)\*w$")


def parse_fq(spec: FieldSpec, text: str) -> Fq:
    """Inverse of Fq.text(): a single integer for m == 1, a coefficient
    list of length m otherwise."""
    text = text.strip()
    if not _FQ_RE.match(text):
        raise FieldError(f"bad GF({spec.q}) literal: {text!r}")
    parts = [int(c) for c in text.split(",")]
    if len(parts) != spec.m:
        raise FieldError(
            f"GF({spec.q}) literal needs {spec.m} coefficient(s): {text!r}")
    if any(c >= spec.p for c in parts):
        raise FieldError(f"coefficient out of range 0..{spec.p - 1}: {text!r}")
    return spec.fq(parts)


def parse_fq2(spec: FieldSpec, text: str) -> Fq2:
    """Inverse of Fq2.text(): "X+Y*w" with X, Y in the Fq grammar."""
    m = _FQ2_RE.match(text.strip())
    if not m:
        raise FieldError(f"bad GF({spec.q}^2) literal: {text!r}")
    return Fq2(parse_fq(spec, m.group("x")), parse_fq(spec, m.group("y")))
