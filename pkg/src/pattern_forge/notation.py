"""Text and JSON notation for permutations and patterns.

Text grammar::

    pattern  := perm [ '|{' square,... '}' ] clause*
    perm     := digits            (length 1..9)
              | '(' int* ')'      (empty, or any length; space separated)
    square   := '(' c ',' r ')'
    clause   := '[' region ':' count ']'        marking
              | 'A[' region ':' pattern ']'     avoidance decoration
              | 'C[' region ':' pattern ']'     containment decoration
    region   := rect ( '+' rect )*
    rect     := c1 '..' c2 ',' r1 '..' r2

Example: ``3241|{(1,4)}``.
"""

import json

from .errors import ParseError
from .patterns import (DecoratedPattern, MarkedMeshPattern, MeshPattern, as_decorated,
                       mask_from_squares, rect_mask, squares_of)
from .perm import Perm


# --------------------------------------------------------------------------
# permutations
# --------------------------------------------------------------------------

def format_perm(perm):
    if 1 <= len(perm) <= 9:
        return "".join(map(str, perm))
    return "(" + " ".join(map(str, perm)) + ")"


def parse_perm(text, line=None):
    """Parse a permutation: bare digits, or integers separated by spaces/commas."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        if not s:
            return Perm(())
        if any(ch in s for ch in " ,\t"):
            values = [int(tok) for tok in s.replace(",", " ").split()]
        else:
            values = [int(ch) for ch in s]
        return Perm(values)
    except ValueError as exc:
        raise ParseError(f"bad permutation {text!r}: {exc}", line) from None


def read_perms(lines):
    """Parse one permutation per non-blank, non-comment line."""
    out = []
    for no, raw in enumerate(lines, 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            out.append(parse_perm(s, line=no))
    return out


# --------------------------------------------------------------------------
# regions
# --------------------------------------------------------------------------

def rectangles(k, mask):
    """Deterministic decomposition of a square set into disjoint rectangles."""
    remaining = set(squares_of(k, mask))
    out = []
    while remaining:
        c1, r1 = min(remaining)
        r2 = r1
        while (c1, r2 + 1) in remaining:
            r2 += 1
        c2 = c1
        while all((c2 + 1, r) in remaining for r in range(r1, r2 + 1)):
            c2 += 1
        for c in range(c1, c2 + 1):
            for r in range(r1, r2 + 1):
                remaining.discard((c, r))
        out.append((c1, c2, r1, r2))
    return out


def format_region(k, mask):
    return "+".join(f"{c1}..{c2},{r1}..{r2}" for c1, c2, r1, r2 in rectangles(k, mask))


# --------------------------------------------------------------------------
# patterns
# --------------------------------------------------------------------------

def format_pattern(patt):
    if isinstance(patt, (list, tuple)) and not isinstance(patt, Perm):
        patt = Perm(patt)
    if isinstance(patt, Perm):
        return format_perm(patt)
    dp = as_decorated(patt)
    k = dp.k
    out = [format_perm(dp.pattern)]
    if dp.shading:
        out.append("|{" + ",".join(f"({c},{r})" for c, r in squares_of(k, dp.shading)) + "}")
    for region, count in sorted(dp.marks):
        out.append(f"[{format_region(k, region)}:{count}]")
    for tag, decs in (("A", dp.avoid), ("C", dp.contain)):
        for region, q in sorted(decs, key=lambda d: (d[0], d[1].sort_key())):
            out.append(f"{tag}[{format_region(k, region)}:{format_pattern(q)}]")
    return "".join(out)


class _Parser:
    def __init__(self, text):
        self.s = text
        self.i = 0

    def error(self, msg):
        raise ParseError(f"{msg} at offset {self.i} in {self.s!r}")

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, tok):
        self.skip()
        return self.s.startswith(tok, self.i)

    def expect(self, tok):
        if not self.peek(tok):
            self.error(f"expected {tok!r}")
        self.i += len(tok)

    def integer(self):
        self.skip()
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected an integer")
        val = int(self.s[self.i:j])
        self.i = j
        return val

    def perm(self):
        self.skip()
        if self.peek("("):
            j = self.s.index(")", self.i)
            body = self.s[self.i + 1:j]
            self.i = j + 1
            try:
                return Perm(int(t) for t in body.replace(",", " ").split())
            except ValueError as exc:
                self.error(str(exc))
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected a permutation")
        digits = self.s[self.i:j]
        self.i = j
        try:
            return Perm(int(ch) for ch in digits)
        except ValueError as exc:
            self.error(str(exc))

    def region(self, k):
        mask = self.rect(k)
        while self.peek("+"):
            self.expect("+")
            mask |= self.rect(k)
        return mask

    def rect(self, k):
        c1 = self.integer()
        self.expect("..")
        c2 = self.integer()
        self.expect(",")
        r1 = self.integer()
        self.expect("..")
        r2 = self.integer()
        if not (0 <= c1 <= c2 <= k and 0 <= r1 <= r2 <= k):
            self.error("rectangle outside the pattern grid")
        return rect_mask(k, c1, c2, r1, r2)

    def pattern(self):
        p = self.perm()
        k = len(p)
        shading = 0
        if self.peek("|"):
            self.expect("|")
            self.expect("{")
            squares = []
            while not self.peek("}"):
                if squares:
                    self.expect(",")
                self.expect("(")
                c = self.integer()
                self.expect(",")
                r = self.integer()
                self.expect(")")
                squares.append((c, r))
            self.expect("}")
            try:
                shading = mask_from_squares(k, squares)
            except ValueError as exc:
                self.error(str(exc))
        marks, avoid, contain = [], [], []
        while True:
            if self.peek("["):
                self.expect("[")
                region = self.region(k)
                self.expect(":")
                marks.append((region, self.integer()))
                self.expect("]")
            elif self.peek("A[") or self.peek("C["):
                target = avoid if self.peek("A[") else contain
                self.i += 2
                region = self.region(k)
                self.expect(":")
                q = self.pattern()
                target.append((region, MeshPattern(q.pattern, q.shading)))
                self.expect("]")
            else:
                break
        if avoid or contain:
            return DecoratedPattern(p, shading, marks, avoid, contain)
        if marks:
            return MarkedMeshPattern(MeshPattern(p, shading), marks)
        return MeshPattern(p, shading)


def parse_pattern(text):
    parser = _Parser(text)
    patt = parser.pattern()
    parser.skip()
    if parser.i != len(text):
        parser.error("trailing characters")
    return patt


def parse_pattern_list(text):
    """Patterns separated by whitespace or semicolons."""
    items = []
    for chunk in text.replace(";", " ").split():
        items.append(parse_pattern(chunk))
    return items


# --------------------------------------------------------------------------
# JSON
# --------------------------------------------------------------------------

def pattern_to_json(patt):
    """Dictionary with a stable field order."""
    dp = as_decorated(patt)
    k = dp.k

    def region(mask):
        return [list(sq) for sq in squares_of(k, mask)]

    def decs(ds):
        return [{"region": region(r), "pattern": pattern_to_json(q)}
                for r, q in sorted(ds, key=lambda d: (d[0], d[1].sort_key()))]

    return {
        "pattern": list(dp.pattern),
        "shading": region(dp.shading),
        "marks": [{"region": region(r), "min": c} for r, c in sorted(dp.marks)],
        "avoid_dec": decs(dp.avoid),
        "contain_dec": decs(dp.contain),
    }


def pattern_from_json(obj):
    p = Perm(obj["pattern"])
    k = len(p)

    def region(sqs):
        return mask_from_squares(k, [tuple(sq) for sq in sqs])

    shading = region(obj.get("shading", []))
    marks = [(region(m["region"]), m["min"]) for m in obj.get("marks", [])]

    def decs(key):
        out = []
        for d in obj.get(key, []):
            q = pattern_from_json(d["pattern"])
            out.append((region(d["region"]), MeshPattern(q.pattern, q.shading)))
        return out

    avoid, contain = decs("avoid_dec"), decs("contain_dec")
    if avoid or contain:
        return DecoratedPattern(p, shading, marks, avoid, contain)
    if marks:
        return MarkedMeshPattern(MeshPattern(p, shading), marks)
    return MeshPattern(p, shading)


def patterns_to_json(patts):
    return json.dumps([pattern_to_json(p) for p in patts])
