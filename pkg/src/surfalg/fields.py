"""Exact ground fields: arbitrary-precision rationals and prime fields.

Every scalar in this package is either a ``fractions.Fraction`` (over the
rationals) or a plain ``int`` in ``0..p-1`` (over a prime field).  No
floating point is used anywhere.
"""

from fractions import Fraction


class RationalField:
    """The field of rational numbers with exact ``Fraction`` arithmetic."""

    char = 0
    name = "Q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def of_int(self, n):
        return Fraction(n)

    def parse(self, value):
        """Parse a scalar from its JSON form: a string ``"n"`` or ``"n/d"``."""
        if isinstance(value, bool) or not isinstance(value, str):
            raise ValueError(
                f"rational scalar must be a string 'n' or 'n/d', got {value!r}"
            )
        parts = value.split("/")
        if len(parts) == 1:
            num, den = parts[0], "1"
        elif len(parts) == 2:
            num, den = parts
        else:
            raise ValueError(f"malformed rational scalar {value!r}")
        try:
            n = int(num.strip())
            d = int(den.strip())
        except ValueError:
            raise ValueError(f"malformed rational scalar {value!r}") from None
        if d == 0:
            raise ValueError(f"zero denominator in scalar {value!r}")
        return Fraction(n, d)

    def fmt(self, a):
        """Format a scalar back to its JSON string form."""
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The prime field F_p, elements represented as ints in ``0..p-1``."""

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"field order must be a prime integer, got {p!r}")
        self.p = p
        self.char = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def of_int(self, n):
        return n % self.p

    def parse(self, value):
        """Parse a scalar from its JSON form: an integer reduced mod p."""
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"F{self.p} scalar must be an integer, got {value!r}")
        return value % self.p

    def fmt(self, a):
        return a % self.p

    def to_json(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()


def field_from_json(value):
    """Build a field object from its JSON description ``"Q"`` or ``{"Fp": p}``."""
    if value == "Q":
        return RationalField()
    if isinstance(value, dict) and set(value) == {"Fp"}:
        return PrimeField(value["Fp"])
    raise ValueError(f"unknown field description {value!r}")
