"""A term language for dagger-compact string diagrams, evaluated into relations.

Text grammar (``;`` binds loosest and runs left to right, ``*`` is tensor)::

    term   := tensor (";" tensor)*
    tensor := atom ("*" atom)*
    atom   := "(" term ")" | "dg" "(" term ")" | "id" "[" objs "]"
            | "cup" "[" OBJ "]" | "cap" "[" OBJ "]" | "sw" "[" OBJ "," OBJ "]"
            | "del" "[" OBJ "]" | "codel" "[" OBJ "]" | generator
    objs   := (OBJ ("," OBJ)*)?

Generators are lowercase identifiers; object names are looked up in a
caller-supplied table.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from . import rel
from .backend import BackendKind, ObjectRef, prod
from .errors import BoundaryMismatch, ParseError, TypeMismatch, UnboundGenerator
from .rel import Relation

Objs = tuple[ObjectRef, ...]


@dataclass(frozen=True)
class Gen:
    name: str
    dom: Objs
    cod: Objs


@dataclass(frozen=True)
class Id:
    objs: Objs


@dataclass(frozen=True)
class Compose:
    """``upper`` after ``lower``."""
    upper: "Term"
    lower: "Term"


@dataclass(frozen=True)
class Tensor:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Dagger:
    t: "Term"


@dataclass(frozen=True)
class Swap:
    A: ObjectRef
    B: ObjectRef


@dataclass(frozen=True)
class Cup:
    A: ObjectRef


@dataclass(frozen=True)
class Cap:
    A: ObjectRef


@dataclass(frozen=True)
class Delete:
    A: ObjectRef


@dataclass(frozen=True)
class Codelete:
    A: ObjectRef


Term = Union[Gen, Id, Compose, Tensor, Dagger, Swap, Cup, Cap, Delete, Codelete]
Env = Mapping[str, Relation]


def gen(name: str, R: Relation) -> Gen:
    """A generator typed by a single-object boundary taken from ``R``."""
    return Gen(name, (R.dom,), (R.cod,))


def seq(*terms: Term) -> Term:
    """Diagrammatic composite: the first term runs first."""
    out = terms[0]
    for t in terms[1:]:
        out = Compose(t, out)
    return out


def par(*terms: Term) -> Term:
    out = terms[0]
    for t in terms[1:]:
        out = Tensor(out, t)
    return out


# -- typing --------------------------------------------------------------------

def _lists_equal(xs: Objs, ys: Objs) -> bool:
    return len(xs) == len(ys) and all(x == y for x, y in zip(xs, ys))


def typecheck(t: Term, path: tuple[str, ...] = ()) -> tuple[Objs, Objs]:
    """Boundary ``(dom, cod)`` of a term, as object lists.

    A TypeMismatch carries the path of child fields leading to the bad node.
    """
    if isinstance(t, Gen):
        return tuple(t.dom), tuple(t.cod)
    if isinstance(t, Id):
        return tuple(t.objs), tuple(t.objs)
    if isinstance(t, Compose):
        ldom, lcod = typecheck(t.lower, _sub(path, "lower"))
        udom, ucod = typecheck(t.upper, _sub(path, "upper"))
        if not _lists_equal(lcod, udom):
            raise TypeMismatch(f"lower ends in {list(lcod)} but upper starts at {list(udom)}", path)
        return ldom, ucod
    if isinstance(t, Tensor):
        a, b = typecheck(t.left, _sub(path, "left"))
        c, d = typecheck(t.right, _sub(path, "right"))
        return a + c, b + d
    if isinstance(t, Dagger):
        a, b = typecheck(t.t, _sub(path, "t"))
        return b, a
    if isinstance(t, Swap):
        return (t.A, t.B), (t.B, t.A)
    if isinstance(t, Cup):
        return (), (t.A, t.A)
    if isinstance(t, Cap):
        return (t.A, t.A), ()
    if isinstance(t, Delete):
        return (t.A,), ()
    if isinstance(t, Codelete):
        return (), (t.A,)
    raise TypeMismatch(f"not a diagram term: {t!r}", path)


def _sub(path: tuple[str, ...], step: str) -> tuple[str, ...]:
    return path + (step,)


def _objects(t: Term):
    if isinstance(t, Gen):
        yield from t.dom
        yield from t.cod
    elif isinstance(t, Id):
        yield from t.objs
    elif isinstance(t, Compose):
        yield from _objects(t.lower)
        yield from _objects(t.upper)
    elif isinstance(t, Tensor):
        yield from _objects(t.left)
        yield from _objects(t.right)
    elif isinstance(t, Dagger):
        yield from _objects(t.t)
    elif isinstance(t, Swap):
        yield t.A
        yield t.B
    else:
        yield t.A


def _kind_of(t: Term, env: Env) -> BackendKind:
    for o in _objects(t):
        return o.kind
    for R in env.values():
        return R.kind
    raise TypeMismatch("cannot infer a backend for a term without objects")


# -- evaluation ----------------------------------------------------------------

def evaluate(t: Term, env: Env | None = None, kind: BackendKind | None = None) -> Relation:
    env = env or {}
    typecheck(t)
    kind = kind or _kind_of(t, env)
    return _eval(t, env, kind)


def _fold(objs: Objs, kind) -> ObjectRef:
    return prod(*objs, kind=kind)


def _eval(t: Term, env: Env, kind) -> Relation:
    if isinstance(t, Gen):
        if t.name not in env:
            raise UnboundGenerator(f"no relation bound to generator {t.name!r}")
        R = env[t.name]
        dom, cod = _fold(t.dom, kind), _fold(t.cod, kind)
        if R.dom != dom or R.cod != cod:
            raise TypeMismatch(f"generator {t.name!r} is bound to {R.dom!r} -> {R.cod!r}, "
                               f"declared {dom!r} -> {cod!r}", (t.name,))
        return R
    if isinstance(t, Id):
        return rel.identity(_fold(t.objs, kind))
    if isinstance(t, Compose):
        return rel.compose(_eval(t.lower, env, kind), _eval(t.upper, env, kind))
    if isinstance(t, Tensor):
        return rel.tensor(_eval(t.left, env, kind), _eval(t.right, env, kind))
    if isinstance(t, Dagger):
        return rel.dagger(_eval(t.t, env, kind))
    if isinstance(t, Swap):
        return rel.swap(t.A, t.B)
    if isinstance(t, Cup):
        return rel.cup(t.A)
    if isinstance(t, Cap):
        return rel.cap(t.A)
    if isinstance(t, Delete):
        return rel.delete(t.A)
    return rel.codelete(t.A)


def terms_equal(t1: Term, t2: Term, env: Env | None = None) -> bool:
    d1, c1 = typecheck(t1)
    d2, c2 = typecheck(t2)
    if not (_lists_equal(d1, d2) and _lists_equal(c1, c2)):
        raise BoundaryMismatch(f"boundaries differ: {list(d1)} -> {list(c1)} vs {list(d2)} -> {list(c2)}")
    env = env or {}
    try:
        kind = _kind_of(t1, env)
    except TypeMismatch:
        kind = _kind_of(t2, env)
    return _eval(t1, env, kind) == _eval(t2, env, kind)


# -- text syntax ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[;*()\[\],]))")
_KEYWORDS = {"dg", "id", "cup", "cap", "sw", "del", "codel"}


class _Parser:
    def __init__(self, text: str, objects: Mapping[str, ObjectRef], signatures: Mapping):
        self.text = text
        self.objects = objects
        self.signatures = signatures
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            mt = _TOKEN.match(text, pos)
            if not mt:
                off = len(text[pos:]) - len(text[pos:].lstrip())
                raise ParseError(f"unexpected character {text[pos + off]!r}", pos + off)
            kind = "name" if mt.group("name") else "sym"
            val = mt.group(kind)
            self.tokens.append((kind, val, mt.start(kind)))
            pos = mt.end()
        self.k = 0

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else ("eof", "", len(self.text))

    def take(self, val: str | None = None):
        tok = self.peek()
        if val is not None and tok[1] != val:
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {val!r}, got {got}", tok[2])
        if tok[0] == "eof":
            raise ParseError("unexpected end of input", tok[2])
        self.k += 1
        return tok

    def parse(self) -> Term:
        t = self.term()
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return t

    def term(self) -> Term:
        parts = [self.tensor()]
        while self.peek()[1] == ";":
            self.take(";")
            parts.append(self.tensor())
        return seq(*parts)

    def tensor(self) -> Term:
        parts = [self.atom()]
        while self.peek()[1] == "*":
            self.take("*")
            parts.append(self.atom())
        return par(*parts)

    def obj(self) -> ObjectRef:
        kind, val, pos = self.take()
        if kind != "name" or val not in self.objects:
            raise ParseError(f"unknown object {val!r}", pos)
        return self.objects[val]

    def objs(self) -> Objs:
        self.take("[")
        out = []
        if self.peek()[1] != "]":
            out.append(self.obj())
            while self.peek()[1] == ",":
                self.take(",")
                out.append(self.obj())
        self.take("]")
        return tuple(out)

    def one_obj(self) -> ObjectRef:
        pos = self.peek()[2]
        os = self.objs()
        if len(os) != 1:
            raise ParseError("expected exactly one object", pos)
        return os[0]

    def atom(self) -> Term:
        kind, val, pos = self.take()
        if val == "(":
            t = self.term()
            self.take(")")
            return t
        if kind != "name":
            raise ParseError(f"unexpected {val!r}", pos)
        if val == "dg":
            self.take("(")
            t = self.term()
            self.take(")")
            return Dagger(t)
        if val == "id":
            return Id(self.objs())
        if val in ("cup", "cap", "del", "codel"):
            A = self.one_obj()
            return {"cup": Cup, "cap": Cap, "del": Delete, "codel": Codelete}[val](A)
        if val == "sw":
            os = self.objs()
            if len(os) != 2:
                raise ParseError("sw takes two objects", pos)
            return Swap(*os)
        if not val[0].islower():
            raise ParseError(f"generator names are lowercase, got {val!r}", pos)
        if val not in self.signatures:
            raise ParseError(f"unknown generator {val!r}", pos)
        sig = self.signatures[val]
        if isinstance(sig, Relation):
            return Gen(val, (sig.dom,), (sig.cod,))
        dom, cod = sig
        return Gen(val, tuple(dom), tuple(cod))


def parse_term(text: str, objects: Mapping[str, ObjectRef] | None = None,
               signatures: Mapping | None = None) -> Term:
    """Parse the text grammar.

    ``signatures`` maps a generator name to either a Relation (boundary taken
    from it) or a ``(dom_list, cod_list)`` pair of objects.
    """
    return _Parser(text, objects or {}, signatures or {}).parse()


def format_term(t: Term, names: Mapping[ObjectRef, str]) -> str:
    """Render a term back into the text grammar."""
    def objs(os):
        return "[" + ",".join(_name(names, o) for o in os) + "]"

    def go(t, ctx):
        if isinstance(t, Gen):
            return t.name
        if isinstance(t, Id):
            return "id" + objs(t.objs)
        if isinstance(t, Compose):
            s = f"{go(t.lower, 0)} ; {go(t.upper, 1)}"
            return f"({s})" if ctx > 0 else s
        if isinstance(t, Tensor):
            s = f"{go(t.left, 1)} * {go(t.right, 2)}"
            return f"({s})" if ctx > 1 else s
        if isinstance(t, Dagger):
            return f"dg({go(t.t, 0)})"
        if isinstance(t, Swap):
            return "sw" + objs((t.A, t.B))
        word = {Cup: "cup", Cap: "cap", Delete: "del", Codelete: "codel"}[type(t)]
        return word + objs((t.A,))

    return go(t, 0)


def _name(names, o):
    for k, v in names.items():
        if k is o:
            return v
    for k, v in names.items():
        if k == o:
            return v
    raise KeyError(f"no name for object {o!r}")


# -- JSON mirror -----------------------------------------------------------------

def term_to_json(t: Term, names: Mapping[ObjectRef, str]) -> dict:
    def objs(os):
        return [_name(names, o) for o in os]

    if isinstance(t, Gen):
        return {"op": "gen", "name": t.name, "dom": objs(t.dom), "cod": objs(t.cod)}
    if isinstance(t, Id):
        return {"op": "id", "objects": objs(t.objs)}
    if isinstance(t, Compose):
        return {"op": "compose", "upper": term_to_json(t.upper, names), "lower": term_to_json(t.lower, names)}
    if isinstance(t, Tensor):
        return {"op": "tensor", "left": term_to_json(t.left, names), "right": term_to_json(t.right, names)}
    if isinstance(t, Dagger):
        return {"op": "dagger", "t": term_to_json(t.t, names)}
    if isinstance(t, Swap):
        return {"op": "swap", "objects": objs((t.A, t.B))}
    word = {Cup: "cup", Cap: "cap", Delete: "delete", Codelete: "codelete"}[type(t)]
    return {"op": word, "objects": objs((t.A,))}


def term_from_json(d: dict, objects: Mapping[str, ObjectRef]) -> Term:
    try:
        op = d["op"]

        def objs(key="objects"):
            return tuple(objects[n] for n in d[key])

        if op == "gen":
            return Gen(d["name"], objs("dom"), objs("cod"))
        if op == "id":
            return Id(objs())
        if op == "compose":
            return Compose(term_from_json(d["upper"], objects), term_from_json(d["lower"], objects))
        if op == "tensor":
            return Tensor(term_from_json(d["left"], objects), term_from_json(d["right"], objects))
        if op == "dagger":
            return Dagger(term_from_json(d["t"], objects))
        if op == "swap":
            return Swap(*objs())
        cls = {"cup": Cup, "cap": Cap, "delete": Delete, "codelete": Codelete}[op]
        (A,) = objs()
        return cls(A)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed term JSON: {e}", 0) from None
