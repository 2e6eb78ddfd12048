"""Concrete finitely generated groups and integer homomorphisms on them.

Elements are plain tuples of Python integers in a canonical form, so they
hash, compare and sort without wrappers:

* ``FreeAbelian(d)``: integer vector of length ``d``.
* ``Heisenberg3``: triple ``(a, b, c)`` with law
  ``(a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')``.
* ``FreeGroup(k)``: freely reduced word, a tuple of nonzero letters where
  ``+i`` is the i-th generator and ``-i`` its inverse (1-based).

Canonical byte keys are ``b"<tag>:<comma separated integers>"`` with tag
``Z<d>``, ``H3`` or ``F<k>``; the identity of ``FreeAbelian(2)`` is
``b"Z2:0,0"`` and the identity of ``FreeGroup(2)`` is ``b"F2:"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidHomomorphism, WordOverflow

Element = tuple

_LETTERS = "abcdefghijklmnopqrstuvwxyz"
_SUPERSCRIPT = str.maketrans("⁻¹²³⁴⁵⁶⁷⁸⁹⁰", "-1234567890")


class Group:
    """Interface every concrete group implements."""

    kind: str = ""
    width: int = 0

    def identity(self) -> Element:
        raise NotImplementedError

    def multiply(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inverse(self, a: Element) -> Element:
        raise NotImplementedError

    def abelianize(self, a: Element) -> tuple:
        raise NotImplementedError

    def norm(self, a: Element) -> int:
        raise NotImplementedError

    def generators(self) -> list:
        raise NotImplementedError

    def element_with_abelianization(self, vec: Sequence[int]) -> Element:
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    # shared helpers

    @property
    def rank_ab(self) -> int:
        return len(self.abelianize(self.identity()))

    def is_identity(self, a: Element) -> bool:
        return a == self.identity()

    def power(self, g: Element, n: int) -> Element:
        if n < 0:
            g, n = self.inverse(g), -n
        result, base = self.identity(), g
        while n:
            if n & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            n >>= 1
        return result

    def conjugate_step(self, u: Element, v: Element) -> Element:
        """The step ``u^{-1} v`` taking vertex ``u`` to vertex ``v``."""
        return self.multiply(self.inverse(u), v)

    def sort_key(self, a: Element):
        return a

    def canonical_key(self, a: Element) -> bytes:
        return (self.tag + ":" + ",".join(str(x) for x in a)).encode()

    def format(self, a: Element) -> str:
        return "(" + ",".join(str(x) for x in a) + ")"

    def parse(self, text) -> Element:
        if isinstance(text, (list, tuple)):
            vals = tuple(int(x) for x in text)
        else:
            body = str(text).strip().strip("()[]")
            vals = tuple(int(x) for x in body.split(",")) if body else ()
        return self.validate(vals)

    def validate(self, a) -> Element:
        a = tuple(int(x) for x in a)
        if len(a) != self.width:
            raise ValueError(f"{self.tag} element needs {self.width} coordinates, got {a}")
        return a

    def log_base(self, g: Element, x: Element):
        """Return n with ``g**n == x`` or None (g must have infinite order)."""
        raise NotImplementedError

    def parse_step_token(self, token: str) -> Element:
        """Parse one step of a walk file: ``a``, ``A``, ``b^-1``, ``a^3`` or a literal."""
        token = token.strip().translate(_SUPERSCRIPT)
        if token.startswith("(") or token.startswith("["):
            return self.parse(token)
        m = re.fullmatch(r"([A-Za-z])(?:\^(-?\d+))?", token)
        if not m:
            raise ValueError(f"cannot parse step {token!r}")
        letter, exp = m.group(1), int(m.group(2) or 1)
        idx = _LETTERS.index(letter.lower())
        gens = self.named_generators()
        if idx >= len(gens):
            raise ValueError(f"generator {letter!r} out of range for {self.tag}")
        if letter.isupper():
            exp = -exp
        return self.power(gens[idx], exp)

    def named_generators(self) -> list:
        """Positive generators named a, b, c, ... in walk files."""
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Group) and self.spec() == other.spec()

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"<{self.tag}>"


class FreeAbelian(Group):
    kind = "free_abelian"

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("FreeAbelian rank must be >= 1")
        self.d = d
        self.width = d
        self.tag = f"Z{d}"

    def identity(self):
        return (0,) * self.d

    def multiply(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def inverse(self, a):
        return tuple(-x for x in a)

    def abelianize(self, a):
        return a

    def norm(self, a):
        return sum(abs(x) for x in a)

    def generators(self):
        gens = []
        for i in range(self.d):
            e = [0] * self.d
            e[i] = 1
            gens.append(tuple(e))
            e[i] = -1
            gens.append(tuple(e))
        return sorted(gens)

    def named_generators(self):
        return [tuple(1 if j == i else 0 for j in range(self.d)) for i in range(self.d)]

    def element_with_abelianization(self, vec):
        return tuple(int(v) for v in vec)

    def spec(self):
        return {"kind": self.kind, "rank": self.d}

    def log_base(self, g, x):
        i = next((i for i, v in enumerate(g) if v), None)
        if i is None or x[i] % g[i]:
            return None
        n = x[i] // g[i]
        return n if tuple(n * v for v in g) == tuple(x) else None


class Heisenberg3(Group):
    kind = "heisenberg3"
    width = 3
    tag = "H3"

    def identity(self):
        return (0, 0, 0)

    def multiply(self, x, y):
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1])

    def inverse(self, x):
        a, b, c = x
        return (-a, -b, a * b - c)

    def abelianize(self, x):
        return (x[0], x[1])

    def norm(self, x):
        a, b, c = x
        return abs(a) + abs(b) + abs(2 * c - a * b)

    def generators(self):
        return sorted([(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)])

    def named_generators(self):
        return [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def element_with_abelianization(self, vec):
        return (int(vec[0]), int(vec[1]), 0)

    def spec(self):
        return {"kind": self.kind}

    def log_base(self, g, x):
        a, b, c = g
        if a:
            if x[0] % a:
                return None
            n = x[0] // a
        elif b:
            if x[1] % b:
                return None
            n = x[1] // b
        elif c:
            if x[2] % c:
                return None
            n = x[2] // c
        else:
            return None
        return n if self.power(g, n) == tuple(x) else None


class FreeGroup(Group):
    kind = "free_group"

    def __init__(self, k: int, max_word_length: int = 256):
        if k < 1:
            raise ValueError("FreeGroup rank must be >= 1")
        self.k = k
        self.max_word_length = max_word_length
        self.tag = f"F{k}"
        self.width = 2  # kernel encoding (length, packed letters)

    def identity(self):
        return ()

    def multiply(self, a, b):
        out = list(a)
        for letter in b:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
        if len(out) > self.max_word_length:
            raise WordOverflow(f"word of length {len(out)} exceeds {self.max_word_length}")
        return tuple(out)

    def inverse(self, a):
        return tuple(-x for x in reversed(a))

    def reduce(self, letters: Iterable[int]):
        return self.multiply((), tuple(letters))

    def abelianize(self, a):
        sums = [0] * self.k
        for letter in a:
            sums[abs(letter) - 1] += 1 if letter > 0 else -1
        return tuple(sums)

    def norm(self, a):
        return len(a)

    def generators(self):
        words = [(i,) for i in range(1, self.k + 1)] + [(-i,) for i in range(1, self.k + 1)]
        return sorted(words, key=self.sort_key)

    def named_generators(self):
        return [(i,) for i in range(1, self.k + 1)]

    def element_with_abelianization(self, vec):
        word = []
        for i, v in enumerate(vec, start=1):
            word.extend([i if v > 0 else -i] * abs(int(v)))
        return tuple(word)

    def sort_key(self, a):
        return (len(a), a)

    def spec(self):
        return {"kind": self.kind, "rank": self.k}

    def validate(self, a):
        a = tuple(int(x) for x in a)
        if any(x == 0 or abs(x) > self.k for x in a):
            raise ValueError(f"letters of {self.tag} words must be in ±1..±{self.k}")
        if self.reduce(a) != a:
            raise ValueError(f"word {a} is not freely reduced")
        return a

    def parse(self, text):
        if isinstance(text, (list, tuple)):
            return self.validate(text)
        text = str(text).strip().translate(_SUPERSCRIPT)
        if text in ("", "e", "1", "id"):
            return ()
        letters = []
        for m in re.finditer(r"([A-Za-z])(?:\^(-?\d+))?", text.replace(" ", "").replace("*", "")):
            letter, exp = m.group(1), int(m.group(2) or 1)
            idx = _LETTERS.index(letter.lower()) + 1
            if idx > self.k:
                raise ValueError(f"generator {letter!r} out of range for {self.tag}")
            sign = -1 if letter.isupper() else 1
            letters.extend([sign * idx if exp > 0 else -sign * idx] * abs(exp))
        return self.reduce(letters)

    def format(self, a):
        if not a:
            return "e"
        return "".join(_LETTERS[abs(x) - 1] + ("" if x > 0 else "^-1") for x in a)

    def log_base(self, g, x):
        if not g:
            return None
        for sign in (1, -1):
            n = 1
            while True:
                p = self.power(g, sign * n)
                if len(p) > len(x):
                    break
                if p == tuple(x):
                    return sign * n
                n += 1
        return None if x else 0


def make_group(spec: dict) -> Group:
    kind = spec.get("kind")
    if kind == "free_abelian":
        return FreeAbelian(int(spec.get("rank", 1)))
    if kind == "heisenberg3":
        return Heisenberg3()
    if kind == "free_group":
        return FreeGroup(int(spec.get("rank", 2)), int(spec.get("max_word_length", 256)))
    raise ValueError(f"unknown group kind {kind!r}")


def identity(group: Group) -> Element:
    return group.identity()


def multiply(group: Group, a: Element, b: Element) -> Element:
    return group.multiply(a, b)


def inverse(group: Group, a: Element) -> Element:
    return group.inverse(a)


def canonical_key(group: Group, a: Element) -> bytes:
    return group.canonical_key(a)


@dataclass(frozen=True)
class Homomorphism:
    """Integer homomorphism evaluated through the abelianization.

    For ``Heisenberg3`` a third coefficient (on the central coordinate) is
    accepted only when it is zero, since ``c`` is not additive.
    """

    group: Group
    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        n = self.group.rank_ab
        if isinstance(self.group, Heisenberg3) and len(coeffs) == 3:
            if coeffs[2] != 0:
                raise InvalidHomomorphism("Heisenberg3 homomorphisms must vanish on the centre (c-coefficient 0)")
            coeffs = coeffs[:2]
        if len(coeffs) != n:
            raise InvalidHomomorphism(f"{self.group.tag} homomorphism needs {n} coefficients, got {len(coeffs)}")
        if not any(coeffs):
            raise InvalidHomomorphism("homomorphism is identically zero")
        object.__setattr__(self, "coefficients", coeffs)

    def __call__(self, a: Element) -> int:
        return sum(c * x for c, x in zip(self.coefficients, self.group.abelianize(a)))


def evaluate_homomorphism(F: Homomorphism, a: Element) -> int:
    return F(a)
