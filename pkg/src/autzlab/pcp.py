"""Power-commutator presentations: parsing, collection, element arithmetic.

Relations follow the convention

    g_i^p = w(i)                 (word in generators with index > i)
    [g_j, g_i] = w(j, i),  j > i (word in generators with index > j)

with ``[x, y] = x^-1 y^-1 x y``.  Every generator has relative order p, so a
normal form is an exponent vector in ``[0, p)^n``.  Generator indices are
1-based at the public surface and 0-based inside the collector.
"""
from __future__ import annotations

import re
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    GeneratorIndexError,
    NonPrimeError,
    PresentationSyntaxError,
)

Word = tuple[tuple[int, int], ...]

SUPPORTED_PRIMES = (2, 3, 5)
MAX_GENERATORS = 7

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_.\-]*$")


def _is_prime(k: int) -> bool:
    return k >= 2 and all(k % d for d in range(2, int(k**0.5) + 1))


def _check_word(word: Word, p: int, n: int, lower: int, what: str) -> Word:
    clean = []
    last = lower
    for idx, exp in word:
        if not (lower < idx <= n):
            raise GeneratorIndexError(
                f"{what}: generator {idx} not in range {lower + 1}..{n}"
            )
        if idx <= last and clean:
            raise ValueError(f"{what}: generator indices must strictly increase")
        if not 0 <= exp < p:
            raise ValueError(f"{what}: exponent {exp} not in [0, {p})")
        last = idx
        if exp:
            clean.append((idx, exp))
    return tuple(clean)


@dataclass(frozen=True)
class PcPresentation:
    name: str
    p: int
    n: int
    power_rel: Mapping[int, Word] = field(default_factory=dict, hash=False)
    comm_rel: Mapping[tuple[int, int], Word] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        if not _is_prime(self.p):
            raise NonPrimeError(f"{self.p} is not prime")
        if self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"prime {self.p} unsupported (use one of {SUPPORTED_PRIMES})")
        if not 1 <= self.n <= MAX_GENERATORS:
            raise ValueError(f"generator count must lie in 1..{MAX_GENERATORS}")
        powers = {}
        for i, w in self.power_rel.items():
            if not 1 <= i <= self.n:
                raise GeneratorIndexError(f"power relation for generator {i} out of range")
            w = _check_word(tuple(w), self.p, self.n, i, f"pow {i}")
            if w:
                powers[i] = w
        comms = {}
        for (j, i), w in self.comm_rel.items():
            if not 1 <= i < j <= self.n:
                raise GeneratorIndexError(f"commutator ({j}, {i}) needs n >= j > i >= 1")
            w = _check_word(tuple(w), self.p, self.n, j, f"comm {j} {i}")
            if w:
                comms[(j, i)] = w
        object.__setattr__(self, "power_rel", dict(sorted(powers.items())))
        object.__setattr__(self, "comm_rel", dict(sorted(comms.items())))

    @property
    def order(self) -> int:
        return self.p**self.n

    def power_word(self, i: int) -> Word:
        return self.power_rel.get(i, ())

    def comm_word(self, j: int, i: int) -> Word:
        return self.comm_rel.get((j, i), ())

    def to_text(self) -> str:
        lines = [f"name {self.name}", f"prime {self.p}", f"gens {self.n}"]
        for i, w in self.power_rel.items():
            lines.append(f"pow {i} = {format_word(w)}".rstrip())
        for (j, i), w in self.comm_rel.items():
            lines.append(f"comm {j} {i} = {format_word(w)}".rstrip())
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GroupElement:
    exps: tuple[int, ...]

    def is_identity(self) -> bool:
        return not any(self.exps)

    def __str__(self):
        return format_word(tuple((i + 1, e) for i, e in enumerate(self.exps) if e)) or "1"


def format_word(word: Word) -> str:
    return " ".join(f"{i}:{e}" for i, e in word)


# ---------------------------------------------------------------------------
# parsing


def _parse_int(tok: str, line: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise PresentationSyntaxError(f"expected integer {what}, got {tok!r}", line, col) from None


def _parse_word(tokens: list[tuple[str, int]], line: int) -> list[tuple[int, int, int]]:
    word = []
    for tok, col in tokens:
        m = re.fullmatch(r"(-?\d+):(-?\d+)", tok)
        if not m:
            raise PresentationSyntaxError(f"bad word token {tok!r} (want index:exponent)", line, col)
        word.append((int(m.group(1)), int(m.group(2)), col))
    return word


def _tokenize(raw: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", raw)]


def parse_presentation(text: str) -> PcPresentation:
    """Parse the line-oriented presentation format.

    Raises PresentationSyntaxError (with line/column), GeneratorIndexError when
    a word mentions a generator not strictly above its left-hand side, and
    NonPrimeError for a composite prime.
    """
    name = prime = gens = None
    powers: dict[int, tuple[list, int]] = {}
    comms: dict[tuple[int, int], tuple[list, int]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        raw = raw.split("#", 1)[0]
        toks = _tokenize(raw)
        if not toks:
            continue
        key, kcol = toks[0]
        if key in ("name", "prime", "gens"):
            if len(toks) != 2:
                raise PresentationSyntaxError(f"'{key}' takes exactly one value", lineno, kcol)
            val, vcol = toks[1]
            if key == "name":
                if name is not None:
                    raise PresentationSyntaxError("duplicate 'name'", lineno, kcol)
                if not _IDENT.match(val):
                    raise PresentationSyntaxError(f"bad identifier {val!r}", lineno, vcol)
                name = val
            elif key == "prime":
                if prime is not None:
                    raise PresentationSyntaxError("duplicate 'prime'", lineno, kcol)
                prime = _parse_int(val, lineno, vcol, "prime")
            else:
                if gens is not None:
                    raise PresentationSyntaxError("duplicate 'gens'", lineno, kcol)
                gens = _parse_int(val, lineno, vcol, "generator count")
        elif key in ("pow", "comm"):
            nidx = 1 if key == "pow" else 2
            if len(toks) < nidx + 2 or toks[nidx + 1][0] != "=":
                raise PresentationSyntaxError(
                    f"expected '{key} {' '.join(['<i>'] * nidx)} = <word>'", lineno, kcol
                )
            idx = tuple(_parse_int(t, lineno, c, "generator index") for t, c in toks[1 : nidx + 1])
            word = _parse_word(toks[nidx + 2 :], lineno)
            if key == "pow":
                if idx[0] in powers:
                    raise PresentationSyntaxError(f"duplicate pow {idx[0]}", lineno, kcol)
                powers[idx[0]] = (word, lineno)
            else:
                if idx[0] <= idx[1]:
                    raise GeneratorIndexError(
                        f"line {lineno}: comm {idx[0]} {idx[1]} requires j > i"
                    )
                if idx in comms:
                    raise PresentationSyntaxError(f"duplicate comm {idx[0]} {idx[1]}", lineno, kcol)
                comms[idx] = (word, lineno)
        else:
            raise PresentationSyntaxError(f"unknown keyword {key!r}", lineno, kcol)

    for key, val in (("name", name), ("prime", prime), ("gens", gens)):
        if val is None:
            raise PresentationSyntaxError(f"missing '{key}' line", max(1, len(text.splitlines())))
    if not _is_prime(prime):
        raise NonPrimeError(f"{prime} is not prime")
    if prime not in SUPPORTED_PRIMES:
        raise PresentationSyntaxError(f"prime {prime} unsupported", 1)
    if not 1 <= gens <= MAX_GENERATORS:
        raise PresentationSyntaxError(f"gens must lie in 1..{MAX_GENERATORS}", 1)

    def checked(word, lower, lineno):
        out = []
        last = lower
        for i, e, col in word:
            if not (lower < i <= gens):
                raise GeneratorIndexError(
                    f"line {lineno}, column {col}: generator {i} must lie in {lower + 1}..{gens}"
                )
            if out and i <= last:
                raise PresentationSyntaxError("word indices must strictly increase", lineno, col)
            if not 0 <= e < prime:
                raise PresentationSyntaxError(f"exponent {e} not in [0, {prime})", lineno, col)
            last = i
            out.append((i, e))
        return tuple(out)

    power_rel = {}
    for i, (word, lineno) in powers.items():
        if not 1 <= i <= gens:
            raise GeneratorIndexError(f"line {lineno}: pow {i} outside 1..{gens}")
        power_rel[i] = checked(word, i, lineno)
    comm_rel = {}
    for (j, i), (word, lineno) in comms.items():
        if not (1 <= i and j <= gens):
            raise GeneratorIndexError(f"line {lineno}: comm {j} {i} outside 1..{gens}")
        comm_rel[(j, i)] = checked(word, j, lineno)
    return PcPresentation(name, prime, gens, power_rel, comm_rel)


def load_presentation(path) -> PcPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


# ---------------------------------------------------------------------------
# collection


class Collector:
    """Collection from the left on exponent vectors.

    ``x * g_i`` is rewritten as ``prefix * g_i^(e_i + 1) * s^(g_i)`` where ``s``
    is the part of ``x`` above ``i``; conjugating ``s`` by ``g_i`` only
    introduces generators above ``i``, so the letter stack always terminates.
    """

    def __init__(self, pres: PcPresentation):
        self.pres = pres
        self.p = pres.p
        self.n = pres.n
        n = self.n
        self._power = [self._letters(pres.power_word(i + 1)) for i in range(n)]
        # conj[k][i] = letters of g_k^{g_i} = g_k [g_k, g_i], k > i
        self._conj = [[None] * n for _ in range(n)]
        self._commutes = [[True] * n for _ in range(n)]
        for k in range(n):
            for i in range(k):
                w = self._letters(pres.comm_word(k + 1, i + 1))
                self._conj[k][i] = [k] + w
                self._commutes[k][i] = not w
        self._gen_inverse: list[list[int] | None] = [None] * n

    @staticmethod
    def _letters(word: Word) -> list[int]:
        out = []
        for idx, exp in word:
            out.extend([idx - 1] * exp)
        return out

    def _run(self, e: list[int], stack: list[int]) -> list[int]:
        p, n = self.p, self.n
        conj, commutes, power = self._conj, self._commutes, self._power
        while stack:
            i = stack.pop()
            # fast path: everything above i commutes with g_i and no carry
            if e[i] + 1 < p and all(e[k] == 0 or commutes[k][i] for k in range(i + 1, n)):
                e[i] += 1
                continue
            seq: list[int] = []
            if e[i] + 1 == p:
                e[i] = 0
                seq.extend(power[i])
            else:
                e[i] += 1
            for k in range(i + 1, n):
                ek = e[k]
                if ek:
                    c = conj[k][i]
                    for _ in range(ek):
                        seq.extend(c)
                    e[k] = 0
            seq.reverse()
            stack.extend(seq)
        return e

    def mul_letters(self, exps: Sequence[int], letters: Iterable[int]) -> list[int]:
        """Right-multiply a normal form by generator letters, one at a time."""
        e = list(exps)
        for g in letters:
            self._run(e, [g])
        return e

    def letters_of(self, exps: Sequence[int]) -> list[int]:
        out = []
        for k, ek in enumerate(exps):
            out.extend([k] * ek)
        return out

    def multiply(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        return self.mul_letters(x, self.letters_of(y))

    def inverse(self, x: Sequence[int]) -> list[int]:
        # choose f_k so that x * g_1^f_1 ... g_n^f_n = 1; right-multiplying by
        # g_k never touches coordinates below k
        n, p = self.n, self.p
        cur = list(x)
        letters = []
        for k in range(n):
            f = (p - cur[k]) % p
            if f:
                cur = self.mul_letters(cur, [k] * f)
                letters.extend([k] * f)
        assert not any(cur)
        return self.mul_letters([0] * n, letters)

    def generator_inverse(self, k: int) -> list[int]:
        if self._gen_inverse[k] is None:
            unit = [0] * self.n
            unit[k] = 1
            self._gen_inverse[k] = self.letters_of(self.inverse(unit))
        return self._gen_inverse[k]

    def collect(self, raw: Iterable[tuple[int, int]]) -> list[int]:
        e = [0] * self.n
        for idx, exp in raw:
            if not 1 <= idx <= self.n:
                raise GeneratorIndexError(f"generator {idx} outside 1..{self.n}")
            if exp >= 0:
                e = self.mul_letters(e, [idx - 1] * exp)
            else:
                inv = self.generator_inverse(idx - 1)
                for _ in range(-exp):
                    e = self.mul_letters(e, inv)
        return e


@lru_cache(maxsize=64)
def _collector(pres: PcPresentation) -> Collector:
    return Collector(pres)


def _as_exps(pres: PcPresentation, x) -> tuple[int, ...]:
    exps = tuple(x.exps if isinstance(x, GroupElement) else x)
    if len(exps) != pres.n or any(not 0 <= v < pres.p for v in exps):
        raise ValueError(f"{exps} is not a normal form for {pres.name}")
    return exps


def collect(pres: PcPresentation, raw: Iterable[tuple[int, int]]) -> GroupElement:
    """Normal form of the product ``prod g_idx^exp`` (exponents may be any integer)."""
    return GroupElement(tuple(_collector(pres).collect(raw)))


def multiply(pres: PcPresentation, x, y) -> GroupElement:
    c = _collector(pres)
    return GroupElement(tuple(c.multiply(_as_exps(pres, x), _as_exps(pres, y))))


def inverse(pres: PcPresentation, x) -> GroupElement:
    return GroupElement(tuple(_collector(pres).inverse(_as_exps(pres, x))))


def identity(pres: PcPresentation) -> GroupElement:
    return GroupElement((0,) * pres.n)


def realize(pres: PcPresentation, *, check: bool = True):
    """Enumerate the group defined by ``pres`` and check it is consistent."""
    from .groups import RealizedGroup

    return RealizedGroup.from_presentation(pres, check=check)


# ---------------------------------------------------------------------------
# constructions used by tests and catalog generation


def cyclic_presentation(p: int, k: int, name: str | None = None) -> PcPresentation:
    """C_{p^k}: a chain of k generators each the p-th power of the previous."""
    return PcPresentation(
        name or f"C{p**k}", p, k, {i: ((i + 1, 1),) for i in range(1, k)}, {}
    )


def abelian_presentation(p: int, orders: Sequence[int], name: str | None = None) -> PcPresentation:
    """Direct product of cyclic groups of the given p-power orders."""
    parts = []
    for m in orders:
        k = 0
        while p**k < m:
            k += 1
        if p**k != m or k == 0:
            raise ValueError(f"{m} is not a nontrivial power of {p}")
        parts.append(cyclic_presentation(p, k))
    pres = parts[0]
    for q in parts[1:]:
        pres = direct_product(pres, q)
    return PcPresentation(
        name or "x".join(f"C{m}" for m in orders), p, pres.n, pres.power_rel, pres.comm_rel
    )


def direct_product(a: PcPresentation, b: PcPresentation, name: str | None = None) -> PcPresentation:
    if a.p != b.p:
        raise ValueError("direct factors must share the prime")
    shift = a.n

    def moved(w):
        return tuple((i + shift, e) for i, e in w)

    powers = dict(a.power_rel)
    powers.update({i + shift: moved(w) for i, w in b.power_rel.items()})
    comms = dict(a.comm_rel)
    comms.update({(j + shift, i + shift): moved(w) for (j, i), w in b.comm_rel.items()})
    return PcPresentation(name or f"{a.name}_x_{b.name}", a.p, a.n + b.n, powers, comms)
