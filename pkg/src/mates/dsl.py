"""Textual knowledge-base language: parser and canonical renderer.

One declaration per line; ``#`` starts a comment that runs to end of line
and blank lines are ignored:

    kb         := (decl NEWLINE)*
    decl       := symptom | disease | rule
    symptom    := "SYMPTOM" ident STRING
    disease    := "DISEASE" ident STRING
                  "SYMPTOMS:" ident ("," ident)*
                  "TREATMENT:" STRING
                  "IF_UNTREATED:" STRING
    rule       := "RULE" ident ":" "IF" expr "THEN" fact ("AND" fact)*
    expr       := term ("OR" term)*
    term       := atom ("AND" atom)*
    atom       := fact | "(" expr ")"
    fact       := ident "(" (ident ("," ident)*)? ")"

Identifiers are lowercase (``[a-z][a-z0-9_]*``), keywords uppercase, so the
two never collide. Strings are double-quoted with backslash escapes for the
quote and the backslash only. AND binds tighter than OR; unparenthesised
chains of the same operator collapse into a single n-ary node, while
explicit parentheses are preserved as nested nodes, which is what makes
``parse_kb(render_kb(kb))`` reproduce ``kb`` exactly.

Parsing is total: any input yields either a KnowledgeBase or a ParseError
carrying the 1-based line and column of the offending token. Premise
nesting is capped (MAX_NESTING) so adversarial paren towers fail with a
positioned error instead of exhausting the interpreter stack.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kb import DiseaseRecord, KnowledgeBase, Symptom
from .rules import And, Atom, Fact, Or, PremiseExpr, Rule

KEYWORDS = frozenset({
    "SYMPTOM", "DISEASE", "RULE", "IF", "THEN", "AND", "OR",
    "SYMPTOMS", "TREATMENT", "IF_UNTREATED",
})

MAX_NESTING = 200


class ParseError(Exception):
    """Grammar violation at a known position (1-based line and column)."""

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class _Token:
    kind: str  # KEYWORD IDENT STRING LPAREN RPAREN COMMA COLON NEWLINE EOF
    value: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == "NEWLINE":
            return "end of line"
        if self.kind == "EOF":
            return "end of input"
        if self.kind == "STRING":
            return "string"
        return repr(self.value)


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)

    def error(message: str, at_line: int, at_col: int) -> ParseError:
        return ParseError(at_line, at_col, message)

    while i < n:
        ch = text[i]
        if ch == "\n":
            tokens.append(_Token("NEWLINE", "\n", line, col))
            i += 1
            line += 1
            col = 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
                col += 1
        elif ch == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            parts: list[str] = []
            while True:
                if i >= n or text[i] == "\n":
                    raise error("unterminated string", start_line, start_col)
                c = text[i]
                if c == '"':
                    i += 1
                    col += 1
                    break
                if c == "\\":
                    if i + 1 >= n or text[i + 1] not in '"\\':
                        raise error(
                            "invalid string escape (only \\\" and \\\\ are allowed)",
                            line, col)
                    parts.append(text[i + 1])
                    i += 2
                    col += 2
                else:
                    parts.append(c)
                    i += 1
                    col += 1
            tokens.append(_Token("STRING", "".join(parts), start_line, start_col))
        elif ch == "(":
            tokens.append(_Token("LPAREN", "(", line, col))
            i += 1
            col += 1
        elif ch == ")":
            tokens.append(_Token("RPAREN", ")", line, col))
            i += 1
            col += 1
        elif ch == ",":
            tokens.append(_Token("COMMA", ",", line, col))
            i += 1
            col += 1
        elif ch == ":":
            tokens.append(_Token("COLON", ":", line, col))
            i += 1
            col += 1
        elif ch.isascii() and (ch.isalpha() or ch == "_"):
            start_col = col
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in KEYWORDS:
                tokens.append(_Token("KEYWORD", word, line, start_col))
            elif word[0].islower() and word == word.lower():
                tokens.append(_Token("IDENT", word, line, start_col))
            else:
                raise error(f"unknown keyword or invalid identifier {word!r}",
                            line, start_col)
            col += j - i
            i = j
        else:
            raise error(f"unexpected character {ch!r}", line, col)

    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self._tokens = tokens
        self._pos = 0

    @property
    def current(self) -> _Token:
        return self._tokens[self._pos]

    def _advance(self) -> _Token:
        token = self.current
        if token.kind != "EOF":
            self._pos += 1
        return token

    def _fail(self, expected: str) -> ParseError:
        token = self.current
        return ParseError(token.line, token.column,
                          f"expected {expected}, found {token.describe()}")

    def _expect(self, kind: str, expected: str, value: str | None = None) -> _Token:
        token = self.current
        if token.kind != kind or (value is not None and token.value != value):
            raise self._fail(expected)
        return self._advance()

    def _at_keyword(self, word: str) -> bool:
        return self.current.kind == "KEYWORD" and self.current.value == word

    def _skip_newlines(self) -> None:
        while self.current.kind == "NEWLINE":
            self._advance()

    # --- declarations ---------------------------------------------------

    def parse_kb(self) -> KnowledgeBase:
        symptoms: list[Symptom] = []
        diseases: list[DiseaseRecord] = []
        rules: list[Rule] = []
        while True:
            self._skip_newlines()
            if self.current.kind == "EOF":
                break
            if self._at_keyword("SYMPTOM"):
                symptoms.append(self._parse_symptom())
            elif self._at_keyword("DISEASE"):
                diseases.append(self._parse_disease())
            elif self._at_keyword("RULE"):
                rules.append(self._parse_rule())
            else:
                raise self._fail("'SYMPTOM', 'DISEASE', or 'RULE'")
            self._end_of_decl()
        return KnowledgeBase(tuple(symptoms), tuple(diseases), tuple(rules))

    def _end_of_decl(self) -> None:
        if self.current.kind == "EOF":
            return
        self._expect("NEWLINE", "end of line")

    def _parse_symptom(self) -> Symptom:
        self._advance()  # SYMPTOM
        ident = self._expect("IDENT", "symptom identifier").value
        display = self._expect("STRING", "quoted display name").value
        return Symptom(ident, display)

    def _parse_disease(self) -> DiseaseRecord:
        self._advance()  # DISEASE
        ident = self._expect("IDENT", "disease identifier").value
        display = self._expect("STRING", "quoted display name").value
        self._expect("KEYWORD", "'SYMPTOMS:'", "SYMPTOMS")
        self._expect("COLON", "':' after 'SYMPTOMS'")
        symptom_ids = [self._expect("IDENT", "symptom identifier").value]
        while self.current.kind == "COMMA":
            self._advance()
            symptom_ids.append(self._expect("IDENT", "symptom identifier").value)
        self._expect("KEYWORD", "'TREATMENT:'", "TREATMENT")
        self._expect("COLON", "':' after 'TREATMENT'")
        treatment = self._expect("STRING", "quoted treatment text").value
        self._expect("KEYWORD", "'IF_UNTREATED:'", "IF_UNTREATED")
        self._expect("COLON", "':' after 'IF_UNTREATED'")
        untreated = self._expect("STRING", "quoted if-untreated text").value
        return DiseaseRecord(ident, display, frozenset(symptom_ids), treatment, untreated)

    def _parse_rule(self) -> Rule:
        self._advance()  # RULE
        name = self._expect("IDENT", "rule name").value
        self._expect("COLON", "':' after rule name")
        self._expect("KEYWORD", "'IF'", "IF")
        premise = self._parse_expr(0)
        self._expect("KEYWORD", "'THEN'", "THEN")
        conclusion = [self._parse_fact()]
        while self._at_keyword("AND"):
            self._advance()
            conclusion.append(self._parse_fact())
        return Rule(name, premise, tuple(conclusion))

    # --- premise expressions ---------------------------------------------

    def parse_premise(self) -> PremiseExpr:
        self._skip_newlines()
        expr = self._parse_expr(0)
        self._skip_newlines()
        if self.current.kind != "EOF":
            raise self._fail("end of input")
        return expr

    def _parse_expr(self, depth: int) -> PremiseExpr:
        children = [self._parse_term(depth)]
        while self._at_keyword("OR"):
            self._advance()
            children.append(self._parse_term(depth))
        if len(children) == 1:
            return children[0]
        return Or(tuple(children))

    def _parse_term(self, depth: int) -> PremiseExpr:
        children = [self._parse_atom(depth)]
        while self._at_keyword("AND"):
            self._advance()
            children.append(self._parse_atom(depth))
        if len(children) == 1:
            return children[0]
        return And(tuple(children))

    def _parse_atom(self, depth: int) -> PremiseExpr:
        if self.current.kind == "LPAREN":
            if depth >= MAX_NESTING:
                raise ParseError(self.current.line, self.current.column,
                                 f"premise nested deeper than {MAX_NESTING} levels")
            self._advance()
            expr = self._parse_expr(depth + 1)
            self._expect("RPAREN", "')'")
            return expr
        if self.current.kind == "IDENT":
            return Atom(self._parse_fact())
        raise self._fail("fact or '('")

    def _parse_fact(self) -> Fact:
        predicate = self._expect("IDENT", "fact predicate").value
        self._expect("LPAREN", "'(' after fact predicate")
        args: list[str] = []
        if self.current.kind == "IDENT":
            args.append(self._advance().value)
            while self.current.kind == "COMMA":
                self._advance()
                args.append(self._expect("IDENT", "fact argument").value)
        self._expect("RPAREN", "')'")
        return Fact(predicate, tuple(args))


def parse_kb(text: str) -> KnowledgeBase:
    """Parse knowledge-base text into a KnowledgeBase.

    Raises ParseError on any grammar violation; a partially read KB is
    never returned. Structural validation (referential integrity,
    duplicate ids) is a separate step, see ``mates.kb.validate``.
    """
    return _Parser(_tokenize(text)).parse_kb()


def parse_premise(text: str) -> PremiseExpr:
    """Parse a standalone premise expression, e.g. ``a() AND (b() OR c())``."""
    return _Parser(_tokenize(text)).parse_premise()


# --- rendering -----------------------------------------------------------


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def render_fact(fact: Fact) -> str:
    return f"{fact.predicate}({', '.join(fact.args)})"


def render_premise(expr: PremiseExpr) -> str:
    """Render a premise fully parenthesised; composite nodes always get
    their own parentheses so nesting survives a reparse."""
    if isinstance(expr, Atom):
        return render_fact(expr.fact)
    joiner = " AND " if isinstance(expr, And) else " OR "
    return "(" + joiner.join(render_premise(child) for child in expr.children) + ")"


def render_kb(kb: KnowledgeBase) -> str:
    """Render a KnowledgeBase in canonical form, one declaration per line.

    Declaration order is preserved per kind (symptoms, then diseases, then
    rules); a disease's symptom list is emitted in catalogue declaration
    order. Reparsing the output reproduces the input structurally.
    """
    declared_order = {s.id: i for i, s in enumerate(kb.symptoms)}
    lines: list[str] = []
    for symptom in kb.symptoms:
        lines.append(f"SYMPTOM {symptom.id} {_quote(symptom.display_name)}")
    for disease in kb.diseases:
        members = sorted(disease.symptoms,
                         key=lambda s: (declared_order.get(s, len(declared_order)), s))
        lines.append(
            f"DISEASE {disease.id} {_quote(disease.display_name)}"
            f" SYMPTOMS: {', '.join(members)}"
            f" TREATMENT: {_quote(disease.care_treatment)}"
            f" IF_UNTREATED: {_quote(disease.if_untreated)}"
        )
    for rule in kb.rules:
        conclusion = " AND ".join(render_fact(f) for f in rule.conclusion)
        lines.append(f"RULE {rule.name}: IF {render_premise(rule.premise)} THEN {conclusion}")
    if not lines:
        return ""
    return "\n".join(lines) + "\n"
