"""Recursive-descent parser for the supported PDDL subset.

Supported requirements: :strips :typing :negative-preconditions
:action-costs. Keywords and names are case-insensitive (normalized to lower
case); ";" starts a comment that runs to end of line. Anything outside the
subset raises UnsupportedFeature rather than being silently dropped.
"""

from __future__ import annotations

from fractions import Fraction

from .ast import (ActionSchema, DomainAst, Literal, PredicateDecl, ProblemAst,
                  TypedName)
from .errors import ParseError, PddlTypeError, UnknownObject, UnsupportedFeature

SUPPORTED_REQUIREMENTS = frozenset(
    {":strips", ":typing", ":negative-preconditions", ":action-costs"})

_UNSUPPORTED_CONNECTIVES = frozenset(
    {"or", "imply", "exists", "forall", "when", "=", "oneof"})


class Token(str):
    __slots__ = ("line", "col")

    def __new__(cls, text: str, line: int, col: int):
        obj = super().__new__(cls, text)
        obj.line = line
        obj.col = col
        return obj


class SList(list):
    __slots__ = ("line", "col")


def _tokenize(text: str):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            yield Token(ch, line, col)
            col += 1
            i += 1
        else:
            start = i
            start_col = col
            while i < n and text[i] not in " \t\r\n();":
                i += 1
                col += 1
            yield Token(text[start:i].lower(), line, start_col)


def read_sexprs(text: str) -> list:
    """Parse the whole text into nested lists of lower-cased tokens."""
    stack: list[SList] = []
    top: list = []
    for tok in _tokenize(text):
        if tok == "(":
            lst = SList()
            lst.line, lst.col = tok.line, tok.col
            stack.append(lst)
        elif tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'", tok.line, tok.col)
            done = stack.pop()
            (stack[-1] if stack else top).append(done)
        else:
            if not stack:
                raise ParseError(f"stray token {tok!r} outside any form",
                                 tok.line, tok.col)
            stack[-1].append(tok)
    if stack:
        raise ParseError("unbalanced '('", stack[-1].line, stack[-1].col)
    return top


def _pos(node):
    if isinstance(node, (Token, SList)):
        return node.line, node.col
    return None, None


def _need_list(node, what: str) -> SList:
    if not isinstance(node, list):
        line, col = _pos(node)
        raise ParseError(f"expected a list for {what}", line, col, expected="(")
    return node


def _need_name(node, what: str) -> Token:
    if isinstance(node, list) or node.startswith(":") or node.startswith("?"):
        line, col = _pos(node)
        raise ParseError(f"expected a name for {what}", line, col, expected="name")
    return node


def _parse_typed_list(items, *, variables: bool, what: str) -> list[TypedName]:
    """Parse `a b - t c - u d` style lists; untyped trailing names get
    type "object"."""
    out: list[TypedName] = []
    pending: list[Token] = []
    i = 0
    while i < len(items):
        tok = items[i]
        if isinstance(tok, list):
            raise ParseError(f"unexpected list in {what}", tok.line, tok.col)
        if tok == "-":
            if not pending:
                raise ParseError(f"dangling '-' in {what}", tok.line, tok.col)
            if i + 1 >= len(items) or isinstance(items[i + 1], list):
                raise ParseError(f"missing type after '-' in {what}",
                                 tok.line, tok.col, expected="type name")
            t = items[i + 1]
            out.extend(TypedName(p, str(t)) for p in pending)
            pending = []
            i += 2
            continue
        if variables and not tok.startswith("?"):
            raise ParseError(f"expected a ?variable in {what}, got {tok!r}",
                             tok.line, tok.col)
        if not variables and tok.startswith("?"):
            raise ParseError(f"unexpected variable {tok!r} in {what}",
                             tok.line, tok.col)
        pending.append(tok)
        i += 1
    out.extend(TypedName(str(p), "object") for p in pending)
    return out


def _parse_number(tok) -> Fraction:
    if isinstance(tok, list):
        raise ParseError("expected a number", tok.line, tok.col)
    try:
        return Fraction(str(tok))
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", tok.line, tok.col) from None


def _literal_of(node, what: str) -> tuple[Literal, bool]:
    """Return (literal, negated) for `(p a b)` or `(not (p a b))`."""
    node = _need_list(node, what)
    if not node:
        raise ParseError(f"empty literal in {what}", node.line, node.col)
    head = node[0]
    if isinstance(head, list):
        raise ParseError(f"expected predicate name in {what}", head.line, head.col)
    if head == "not":
        if len(node) != 2:
            raise ParseError("'not' takes exactly one atom", node.line, node.col)
        lit, neg = _literal_of(node[1], what)
        if neg:
            raise ParseError("nested 'not'", node.line, node.col)
        return lit, True
    if head in _UNSUPPORTED_CONNECTIVES:
        raise UnsupportedFeature(str(head), node.line, node.col)
    args = []
    for a in node[1:]:
        if isinstance(a, list):
            raise ParseError(f"unexpected list inside atom in {what}",
                             a.line, a.col)
        args.append(str(a))
    return Literal(str(head), tuple(args)), False


def _conjunction(node, what: str) -> list[tuple[Literal, bool]]:
    """Flatten `(and lit*)`, a bare literal, or `()` into literal/negation
    pairs."""
    node = _need_list(node, what)
    if not node:
        return []
    head = node[0]
    if not isinstance(head, list) and head == "and":
        out = []
        for child in node[1:]:
            out.append(_literal_of(child, what))
        return out
    return [_literal_of(node, what)]


class _DomainChecker:
    def __init__(self, domain: DomainAst):
        self.domain = domain

    def check_literal(self, lit: Literal, arg_types: dict[str, str]):
        decl = self.domain.predicates.get(lit.predicate)
        if decl is None:
            raise PddlTypeError(str(lit), f"undeclared predicate {lit.predicate!r}")
        if len(lit.args) != decl.arity:
            raise PddlTypeError(str(lit),
                                f"arity {len(lit.args)} != declared {decl.arity}")
        for arg, param in zip(lit.args, decl.params):
            t = arg_types.get(arg)
            if t is None:
                raise UnknownObject(arg)
            if not self.domain.is_subtype(t, param.type):
                raise PddlTypeError(str(lit),
                                    f"{arg!r} has type {t}, needs {param.type}")


def parse_domain(text: str) -> DomainAst:
    exprs = read_sexprs(text)
    if len(exprs) != 1:
        raise ParseError("expected exactly one (define ...) form")
    top = _need_list(exprs[0], "domain")
    if not top or top[0] != "define":
        raise ParseError("expected (define (domain ...) ...)", *_pos(top))
    header = _need_list(top[1] if len(top) > 1 else None, "domain header")
    if len(header) != 2 or header[0] != "domain":
        raise ParseError("expected (domain NAME)", *_pos(header))
    name = str(_need_name(header[1], "domain name"))

    requirements: set[str] = set()
    types: dict[str, str] = {}
    predicates: dict[str, PredicateDecl] = {}
    schemas: list = []   # raw, typed after all declarations are known

    for section in top[2:]:
        section = _need_list(section, "domain section")
        if not section:
            raise ParseError("empty domain section", section.line, section.col)
        key = section[0]
        if isinstance(key, list):
            raise ParseError("expected a :keyword section", key.line, key.col)
        if key == ":requirements":
            for req in section[1:]:
                if str(req) not in SUPPORTED_REQUIREMENTS:
                    raise UnsupportedFeature(str(req), *_pos(req))
                requirements.add(str(req))
        elif key == ":types":
            for tn in _parse_typed_list(section[1:], variables=False, what=":types"):
                if tn.name == "object":
                    continue
                prev = types.get(tn.name)
                if prev is not None and prev != tn.type:
                    raise ParseError(f"type {tn.name!r} declared twice with "
                                     f"different parents", section.line, section.col)
                types[tn.name] = tn.type
            for parent in list(types.values()):
                if parent != "object" and parent not in types:
                    types[parent] = "object"
        elif key == ":predicates":
            for pred in section[1:]:
                pred = _need_list(pred, "predicate declaration")
                if not pred:
                    raise ParseError("empty predicate declaration",
                                     pred.line, pred.col)
                pname = str(_need_name(pred[0], "predicate name"))
                if pname in predicates:
                    raise ParseError(f"duplicate predicate {pname!r}",
                                     pred.line, pred.col)
                params = _parse_typed_list(pred[1:], variables=True,
                                           what=f"predicate {pname}")
                predicates[pname] = PredicateDecl(
                    pname, tuple(TypedName(p.name, p.type) for p in params))
        elif key == ":functions":
            for fn in section[1:]:
                if isinstance(fn, list):
                    if len(fn) == 1 and fn[0] == "total-cost":
                        continue
                    raise UnsupportedFeature(f"function {fn[0] if fn else '()'}",
                                             fn.line, fn.col)
                if fn == "-" or fn == "number":
                    continue
                raise UnsupportedFeature(f"function {fn}", *_pos(fn))
        elif key == ":action":
            schemas.append(section)
        else:
            raise UnsupportedFeature(str(key), *_pos(key))

    domain = DomainAst(name, frozenset(requirements), types, predicates, ())
    checker = _DomainChecker(domain)
    actions: list[ActionSchema] = []
    seen_actions: set[str] = set()
    for section in schemas:
        actions.append(_parse_action(section, domain, checker, seen_actions))
    domain.actions = tuple(actions)
    return domain


def _parse_action(section, domain: DomainAst, checker: _DomainChecker,
                  seen: set[str]) -> ActionSchema:
    if len(section) < 2:
        raise ParseError("missing action name", section.line, section.col)
    aname = str(_need_name(section[1], "action name"))
    if aname in seen:
        raise ParseError(f"duplicate action {aname!r}", section.line, section.col)
    seen.add(aname)

    fields: dict[str, object] = {}
    i = 2
    while i < len(section):
        key = section[i]
        if isinstance(key, list) or not key.startswith(":"):
            raise ParseError(f"expected :keyword in action {aname!r}", *_pos(key))
        if i + 1 >= len(section):
            raise ParseError(f"missing value for {key} in action {aname!r}",
                             key.line, key.col)
        if key not in (":parameters", ":precondition", ":effect"):
            raise UnsupportedFeature(f"{key} in action", key.line, key.col)
        fields[str(key)] = section[i + 1]
        i += 2

    if ":parameters" not in fields:
        raise ParseError(f"action {aname!r} has no :parameters")
    params = _parse_typed_list(
        _need_list(fields[":parameters"], ":parameters"),
        variables=True, what=f"parameters of {aname}")
    arg_types: dict[str, str] = {}
    for p in params:
        if p.name in arg_types:
            raise ParseError(f"duplicate parameter {p.name!r} in action {aname!r}")
        if p.type != "object" and p.type not in domain.types:
            raise ParseError(f"undeclared type {p.type!r} in action {aname!r}")
        arg_types[p.name] = p.type

    def resolve(lits, what) -> list[tuple[Literal, bool]]:
        out = []
        for lit, neg in lits:
            for a in lit.args:
                if not a.startswith("?"):
                    raise UnsupportedFeature(
                        f"constant {a!r} in action body (no :constants support)")
                if a not in arg_types:
                    raise ParseError(f"unbound variable {a!r} in {what} of {aname!r}")
            checker.check_literal(lit, arg_types)
            out.append((lit, neg))
        return out

    pre_pos: list[Literal] = []
    pre_neg: list[Literal] = []
    if ":precondition" in fields:
        for lit, neg in resolve(_conjunction(fields[":precondition"],
                                             "precondition"), "precondition"):
            (pre_neg if neg else pre_pos).append(lit)

    if ":effect" not in fields:
        raise ParseError(f"action {aname!r} has no :effect")
    add: list[Literal] = []
    delete: list[Literal] = []
    cost: Fraction | None = None
    effect = _need_list(fields[":effect"], ":effect")
    parts = effect[1:] if (effect and not isinstance(effect[0], list)
                           and effect[0] == "and") else [effect]
    for part in parts:
        part = _need_list(part, "effect")
        if not part:
            continue
        head = part[0]
        if not isinstance(head, list) and head == "increase":
            if (len(part) != 3 or not isinstance(part[1], list)
                    or list(part[1]) != ["total-cost"]):
                raise UnsupportedFeature("increase of a non total-cost function",
                                         part.line, part.col)
            if cost is not None:
                raise ParseError(f"multiple total-cost increases in {aname!r}",
                                 part.line, part.col)
            cost = _parse_number(part[2])
            if cost < 0:
                raise ParseError(f"negative action cost in {aname!r}",
                                 part.line, part.col)
            continue
        lit, neg = _literal_of(part, "effect")
        for pair in resolve([(lit, neg)], "effect"):
            (delete if pair[1] else add).append(pair[0])

    return ActionSchema(aname, tuple(TypedName(p.name, p.type) for p in params),
                        tuple(pre_pos), tuple(pre_neg), tuple(add), tuple(delete),
                        Fraction(1) if cost is None else cost)


def parse_problem(text: str, domain: DomainAst) -> ProblemAst:
    exprs = read_sexprs(text)
    if len(exprs) != 1:
        raise ParseError("expected exactly one (define ...) form")
    top = _need_list(exprs[0], "problem")
    if not top or top[0] != "define":
        raise ParseError("expected (define (problem ...) ...)", *_pos(top))
    header = _need_list(top[1] if len(top) > 1 else None, "problem header")
    if len(header) != 2 or header[0] != "problem":
        raise ParseError("expected (problem NAME)", *_pos(header))
    name = str(_need_name(header[1], "problem name"))

    checker = _DomainChecker(domain)
    domain_name = None
    objects: dict[str, str] = {}
    init: list[Literal] = []
    goal: list[Literal] = []
    metric = False

    for section in top[2:]:
        section = _need_list(section, "problem section")
        if not section:
            raise ParseError("empty problem section", section.line, section.col)
        key = section[0]
        if key == ":domain":
            domain_name = str(_need_name(section[1], "domain reference"))
            if domain_name != domain.name:
                raise ParseError(f"problem requires domain {domain_name!r}, "
                                 f"got {domain.name!r}", section.line, section.col)
        elif key == ":objects":
            for tn in _parse_typed_list(section[1:], variables=False,
                                        what=":objects"):
                if tn.name in objects:
                    raise ParseError(f"duplicate object {tn.name!r}",
                                     section.line, section.col)
                if tn.type != "object" and tn.type not in domain.types:
                    raise ParseError(f"object {tn.name!r} has undeclared type "
                                     f"{tn.type!r}", section.line, section.col)
                objects[tn.name] = tn.type
        elif key == ":init":
            for item in section[1:]:
                item = _need_list(item, ":init entry")
                if item and not isinstance(item[0], list) and item[0] == "=":
                    # tolerate the conventional (= (total-cost) 0)
                    if (len(item) == 3 and isinstance(item[1], list)
                            and list(item[1]) == ["total-cost"]
                            and _parse_number(item[2]) == 0):
                        continue
                    raise UnsupportedFeature("numeric initialization",
                                             item.line, item.col)
                lit, neg = _literal_of(item, ":init")
                if neg:
                    raise UnsupportedFeature("negative literal in :init",
                                             item.line, item.col)
                _check_ground(lit, objects, checker)
                init.append(lit)
        elif key == ":goal":
            if len(section) < 2:
                raise ParseError("missing :goal body", section.line, section.col)
            for lit, neg in _conjunction(section[1], ":goal"):
                if neg:
                    raise UnsupportedFeature("negative goal literal")
                _check_ground(lit, objects, checker)
                goal.append(lit)
        elif key == ":metric":
            rest = list(section[1:])
            if (len(rest) != 2 or rest[0] != "minimize"
                    or not isinstance(rest[1], list)
                    or list(rest[1]) != ["total-cost"]):
                raise UnsupportedFeature("metric other than minimize total-cost",
                                         section.line, section.col)
            metric = True
        else:
            raise UnsupportedFeature(str(key), *_pos(key))

    return ProblemAst(name, domain_name or domain.name, objects,
                      tuple(dict.fromkeys(init)), tuple(dict.fromkeys(goal)),
                      metric)


def _check_ground(lit: Literal, objects: dict[str, str], checker: _DomainChecker):
    for a in lit.args:
        if a.startswith("?"):
            raise ParseError(f"variable {a!r} in ground literal {lit}")
    checker.check_literal(lit, objects)
