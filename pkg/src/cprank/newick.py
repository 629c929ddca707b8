"""Newick reading and writing for tree shapes.

Accepted grammar (a practical subset of Newick):

    Tree    := Subtree ";"
    Subtree := Leaf | "(" Subtree "," Subtree ")" Label? Length?
    Leaf    := Label? Length?
    Label   := run of characters excluding "(),:;" and whitespace,
               or a single-quoted string
    Length  := ":" decimal

Whitespace between tokens is ignored.  Labels and branch lengths are
parsed and then discarded: only the unlabeled topology matters here, and
child order is canonicalized away.  Any node with a child count other
than 0 or 2 is rejected with :class:`NonBinaryNodeError`.

Emission is minimal: unlabeled, no lengths, canonical child order,
trailing semicolon (so the one-leaf shape serializes as ``";"``).
"""

from __future__ import annotations

from .trees import TreeShape, leaf, node

__all__ = ["NewickError", "NonBinaryNodeError", "parse_newick", "to_newick"]

_SPECIAL = set("(),:;")


class NewickError(ValueError):
    """Malformed Newick input; ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class NonBinaryNodeError(NewickError):
    """A node whose child count is neither 0 nor 2."""


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        if self.pos >= len(self.text):
            raise NewickError("unexpected end of input", self.pos)
        return self.text[self.pos]

    def take(self) -> str:
        c = self.peek()
        self.pos += 1
        return c

    def read_label(self) -> None:
        # label content is discarded; we only validate its form
        self.skip_ws()
        t = self.text
        if self.pos < len(t) and t[self.pos] == "'":
            end = t.find("'", self.pos + 1)
            if end < 0:
                raise NewickError("unterminated quoted label", self.pos)
            self.pos = end + 1
            return
        while self.pos < len(t) and t[self.pos] not in _SPECIAL and not t[self.pos].isspace():
            self.pos += 1

    def read_length(self) -> None:
        # ":" has been consumed; the decimal is validated then discarded
        self.skip_ws()
        t = self.text
        start = self.pos
        while self.pos < len(t) and (t[self.pos].isdigit() or t[self.pos] in "+-.eE"):
            self.pos += 1
        token = t[start:self.pos]
        try:
            float(token)
        except ValueError:
            raise NewickError("malformed branch length", start) from None


def parse_newick(text: str) -> TreeShape:
    """Parse a Newick string into its canonical shape.

    Labels, branch lengths and child order are discarded.  Raises
    :class:`NewickError` on syntax errors and :class:`NonBinaryNodeError`
    when any node has a child count other than 0 or 2.
    """
    sc = _Scanner(text)
    # stack of open "(" groups; each entry is (children so far, position of "(")
    stack: list[tuple[list[TreeShape], int]] = []
    result: TreeShape | None = None

    while True:
        c = sc.peek()
        if c == "(":
            pos = sc.pos
            sc.take()
            stack.append(([], pos))
            continue

        # a subtree item: either a leaf token or nothing before ,/)/;
        if c not in "),;":
            start = sc.pos
            sc.read_label()
            if sc.pos == start and sc.peek() != ":":
                raise NewickError(f"unexpected character {c!r}", sc.pos)
            if sc.pos < len(sc.text):
                sc.skip_ws()
                if sc.pos < len(sc.text) and sc.text[sc.pos] == ":":
                    sc.pos += 1
                    sc.read_length()
            item: TreeShape = leaf()
        else:
            item = leaf()  # empty leaf token, e.g. "(,)"

        # attach the item, then resolve any ")" closers and separators
        while True:
            sc.skip_ws()
            nxt = sc.text[sc.pos] if sc.pos < len(sc.text) else ""
            if nxt == ",":
                if not stack:
                    raise NewickError("',' outside parentheses", sc.pos)
                sc.pos += 1
                stack[-1][0].append(item)
                break  # read the next sibling subtree
            if nxt == ")":
                if not stack:
                    raise NewickError("unbalanced ')'", sc.pos)
                children, open_pos = stack.pop()
                children.append(item)
                sc.pos += 1
                if len(children) != 2:
                    raise NonBinaryNodeError(
                        f"non-binary node with {len(children)} children", open_pos
                    )
                # optional label / length on the internal node
                sc.skip_ws()
                if sc.pos < len(sc.text) and sc.text[sc.pos] not in _SPECIAL:
                    sc.read_label()
                sc.skip_ws()
                if sc.pos < len(sc.text) and sc.text[sc.pos] == ":":
                    sc.pos += 1
                    sc.read_length()
                item = node(children[0], children[1])
                continue  # the joined node may itself be followed by , ) ;
            if nxt == ";":
                if stack:
                    raise NewickError("';' inside unclosed '('", sc.pos)
                sc.pos += 1
                result = item
                break
            if nxt == "":
                raise NewickError("missing ';' terminator", sc.pos)
            raise NewickError(f"unexpected character {nxt!r}", sc.pos)

        if result is not None:
            sc.skip_ws()
            if sc.pos != len(sc.text):
                raise NewickError("trailing content after ';'", sc.pos)
            return result


def to_newick(t: TreeShape) -> str:
    """Serialize a shape as unlabeled Newick in canonical child order.

    Round-trips: ``parse_newick(to_newick(t)) is t``.
    """
    parts: list[str] = []
    stack: list[TreeShape | str] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        if item.first is None:
            continue  # leaves are empty tokens
        parts.append("(")
        stack.append(")")
        stack.append(item.second)
        stack.append(",")
        stack.append(item.first)
    parts.append(";")
    return "".join(parts)
