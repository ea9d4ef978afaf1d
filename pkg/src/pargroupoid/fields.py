"""
Exact scalar fields: the rationals (via fractions.Fraction) and prime fields Z/p.

Elements of both fields support the ordinary arithmetic operators, so the
linear algebra code never needs to know which field it is working over.
A field object is only consulted for coercion and text I/O.
"""

from fractions import Fraction


class FieldError(ValueError):
    pass


class RationalField:
    name = "Q"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, FpElement):
            raise FieldError("cannot coerce a Z/p element into Q")
        return Fraction(x)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def parse(self, text):
        try:
            return Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational {text!r}") from exc

    def format(self, x):
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class FpElement:
    __slots__ = ("value", "p")

    def __init__(self, value, p):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise FieldError(f"mixed fields Z/{self.p} and Z/{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in Z/{self.p}")
        return FpElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FpElement(o, self.p) / self

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, Fraction)):
            try:
                return self.value == self._coerce(other) % self.p
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    characteristic: int

    def __init__(self, p):
        if not (isinstance(p, int) and _is_prime(p)):
            raise FieldError(f"{p!r} is not a prime")
        if p > 2**31:
            raise FieldError(f"prime {p} exceeds 2^31")
        self.characteristic = p

    @property
    def name(self):
        return f"Fp:{self.characteristic}"

    def __call__(self, x):
        p = self.characteristic
        if isinstance(x, FpElement):
            if x.p != p:
                raise FieldError(f"cannot coerce Z/{x.p} element into Z/{p}")
            return x
        x = Fraction(x)
        if x.denominator % p == 0:
            raise FieldError(f"{x} has no image in Z/{p}")
        return FpElement(x.numerator * pow(x.denominator, -1, p), p)

    @property
    def zero(self):
        return FpElement(0, self.characteristic)

    @property
    def one(self):
        return FpElement(1, self.characteristic)

    def parse(self, text):
        try:
            return self(Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad scalar {text!r} for Z/{self.characteristic}") from exc

    def format(self, x):
        return str(self(x).value)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Fp", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})"


QQ = RationalField()


def GF(p):
    return PrimeField(p)


def parse_field(text):
    """Parse a field selector: ``"Q"`` or ``"Fp:<p>"``."""
    text = text.strip()
    if text == "Q":
        return QQ
    if text.startswith("Fp:"):
        try:
            p = int(text[3:])
        except ValueError as exc:
            raise FieldError(f"bad field selector {text!r}") from exc
        return PrimeField(p)
    raise FieldError(f"bad field selector {text!r} (expected 'Q' or 'Fp:<p>')")
