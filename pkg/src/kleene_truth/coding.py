"""Injective Goedel numberings of terms and formulas.

Both codecs serialise the syntax tree in prefix order into a byte string and
read that string as a big-endian natural number.  Codes therefore grow
linearly with the size of the expression, which keeps self-referential
sentences (whose bodies carry numerals of codes) tractable.

* codec ``A``: compact tag bytes, LEB128 naturals.
* codec ``B``: a permuted tag table and a closing byte after every node, so
  code magnitudes differ from ``A`` and arithmetic on codes behaves
  differently: in ``A`` the successor of a code often codes a neighbouring
  sentence, in ``B`` it breaks the closing byte and codes nothing.

Decoding is strict: only byte strings produced by ``encode`` decode, so
``decode(encode(x)) == x`` and every other natural decodes to ``None``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .syntax import (PA, RELATIONS, And, Eq, Exists, Forall, Formula, Func,
                     LanguageProfile, Not, Num, Or, Plus, Rel, Succ, Term,
                     Times, Tr, TermOrFormula, Var, substitute)

_KINDS = ("Num", "Var", "Succ", "Plus", "Times", "Func",
          "Eq", "Tr", "Rel", "Not", "And", "Or", "Forall", "Exists")


class _Cursor:
    __slots__ = ("data", "pos")

    def __init__(self, data: bytes, pos: int):
        self.data = data
        self.pos = pos

    def byte(self) -> int:
        if self.pos >= len(self.data):
            raise ValueError("truncated")
        b = self.data[self.pos]
        self.pos += 1
        return b


def _put_nat(out: bytearray, n: int) -> None:
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return


def _get_nat(cur: _Cursor) -> int:
    n, shift = 0, 0
    while True:
        b = cur.byte()
        n |= (b & 0x7F) << shift
        shift += 7
        if not b & 0x80:
            if b == 0 and shift > 7:
                raise ValueError("non-canonical natural")
            return n


def _put_str(out: bytearray, s: str) -> None:
    raw = s.encode()
    _put_nat(out, len(raw))
    out += raw


def _get_str(cur: _Cursor) -> str:
    n = _get_nat(cur)
    raw = cur.data[cur.pos:cur.pos + n]
    if len(raw) != n:
        raise ValueError("truncated")
    cur.pos += n
    return raw.decode()


class Codec:
    """Base class; subclasses fix ``ident``, ``marker``, ``tags`` and ``close``."""

    ident = "?"
    marker = 0
    tags: dict = {}
    close: Optional[int] = None     # byte written after every node

    def __init__(self, profile: LanguageProfile = PA):
        self.profile = profile
        self._kind_of = {v: k for k, v in self.tags.items()}
        self.encode = lru_cache(maxsize=200_000)(self._encode)
        self.decode = lru_cache(maxsize=200_000)(self._decode)

    def __repr__(self):
        return f"Codec{self.ident}({self.profile.name})"

    # -- encoding ---------------------------------------------------------
    def _emit(self, out: bytearray, x: TermOrFormula) -> None:
        self._emit_node(out, x)
        if self.close is not None:
            out.append(self.close)

    def _emit_node(self, out: bytearray, x: TermOrFormula) -> None:
        out.append(self.tags[type(x).__name__])
        if isinstance(x, Num):
            _put_nat(out, x.n)
        elif isinstance(x, Var):
            _put_str(out, x.name)
        elif isinstance(x, (Succ, Tr)):
            self._emit(out, x.arg)
        elif isinstance(x, Not):
            self._emit(out, x.body)
        elif isinstance(x, (Plus, Times, Eq, And, Or)):
            self._emit(out, x.left)
            self._emit(out, x.right)
        elif isinstance(x, (Func, Rel)):
            _put_str(out, x.name)
            _put_nat(out, len(x.args))
            for a in x.args:
                self._emit(out, a)
        elif isinstance(x, (Forall, Exists)):
            _put_str(out, x.var)
            self._emit(out, x.body)
        else:
            raise TypeError(x)

    def _encode(self, x: TermOrFormula) -> int:
        out = bytearray([self.marker])
        self._emit(out, x)
        return int.from_bytes(out, "big")

    # -- decoding ---------------------------------------------------------
    def _read(self, cur: _Cursor):
        x = self._read_node(cur)
        if self.close is not None and cur.byte() != self.close:
            raise ValueError("missing closing byte")
        return x

    def _read_node(self, cur: _Cursor):
        kind = self._kind_of.get(cur.byte())
        if kind is None:
            raise ValueError("unknown tag")
        if kind == "Num":
            return Num(_get_nat(cur))
        if kind == "Var":
            name = _get_str(cur)
            if not name:
                raise ValueError("empty name")
            return Var(name)
        if kind == "Succ":
            arg = self._term(cur)
            if isinstance(arg, Num):
                raise ValueError("non-canonical successor")
            return Succ(arg)
        if kind in ("Plus", "Times"):
            a, b = self._term(cur), self._term(cur)
            return Plus(a, b) if kind == "Plus" else Times(a, b)
        if kind in ("Func", "Rel"):
            name = _get_str(cur)
            n = _get_nat(cur)
            if kind == "Func":
                if self.profile.arity(name) != n:
                    raise ValueError("unknown function")
                return Func(name, tuple(self._term(cur) for _ in range(n)))
            if RELATIONS.get(name) != n:
                raise ValueError("unknown relation")
            return Rel(name, tuple(self._term(cur) for _ in range(n)))
        if kind == "Eq":
            return Eq(self._term(cur), self._term(cur))
        if kind == "Tr":
            return Tr(self._term(cur))
        if kind == "Not":
            return Not(self._formula(cur))
        if kind in ("And", "Or"):
            a, b = self._formula(cur), self._formula(cur)
            return And(a, b) if kind == "And" else Or(a, b)
        name = _get_str(cur)
        if not name:
            raise ValueError("empty name")
        body = self._formula(cur)
        return Forall(name, body) if kind == "Forall" else Exists(name, body)

    def _term(self, cur) -> Term:
        x = self._read(cur)
        if not isinstance(x, Term):
            raise ValueError("expected term")
        return x

    def _formula(self, cur) -> Formula:
        x = self._read(cur)
        if not isinstance(x, Formula):
            raise ValueError("expected formula")
        return x

    def _decode(self, n: int) -> Optional[TermOrFormula]:
        if n <= 0:
            return None
        data = n.to_bytes((n.bit_length() + 7) // 8, "big")
        if data[0] != self.marker:
            return None
        cur = _Cursor(data, 1)
        try:
            x = self._read(cur)
        except (ValueError, UnicodeDecodeError, RecursionError):
            return None
        return x if cur.pos == len(data) else None

    # -- meta-level name / sub -------------------------------------------
    def decode_sentence(self, n: int) -> Optional[Formula]:
        x = self.decode(n)
        if isinstance(x, Formula) and x.is_sentence:
            return x
        return None

    def eval_name(self, y: int) -> int:
        """Code of the numeral denoting ``y``."""
        return self.encode(Num(y))

    def eval_sub(self, y: int, v: int, s: int) -> Optional[int]:
        """Code of the result of substituting closed term ``s`` for ``v`` in ``y``.

        ``None`` when ``y`` is not a formula code, ``v`` not a variable code or
        ``s`` not the code of a closed term.
        """
        f, var, t = self.decode(y), self.decode(v), self.decode(s)
        if not (isinstance(f, Formula) and isinstance(var, Var)
                and isinstance(t, Term) and not t._fv):
            return None
        return self.encode(substitute(f, var, t))


class CodecA(Codec):
    ident = "A"
    marker = 0xA1
    tags = {k: i + 1 for i, k in enumerate(_KINDS)}


class CodecB(Codec):
    ident = "B"
    marker = 0xB7
    tags = {k: 0xF0 - 7 * i for i, k in enumerate(reversed(_KINDS))}
    close = 0x5A


CODECS = {"A": CodecA, "B": CodecB}


def make_codec(ident: str, profile: LanguageProfile = PA) -> Codec:
    try:
        return CODECS[ident.upper()](profile)
    except KeyError:
        raise ValueError(f"unknown codec {ident!r}; choose from {sorted(CODECS)}") from None
