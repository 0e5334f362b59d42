"""Finitely presented groups: parsing, coset enumeration, normal forms.

Words are tuples of ``(generator, exponent_sign)`` letters written in text
as lowercase for a generator and uppercase for its inverse, with optional
integer powers and parenthesised groups: ``a8``, ``(ab)2``, ``a6b2a5``.

The enumerator is a relator-scanning (HLT) Todd-Coxeter over the trivial
subgroup; coincidences are merged with a union-find queue.
"""

import json
import re
from collections import deque
from dataclasses import dataclass

from .surface_map import compose, identity, inverse, perm_order


class PresentationError(ValueError):
    pass


class EnumerationInconclusive(RuntimeError):
    """The coset budget ran out before the table closed."""


_TOKEN = re.compile(r"\s*(?:([A-Za-z])|(\()|(\))|(-?\d+))")


def _tokens(text):
    pos = 0
    out = []
    text = text.replace("^", "")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PresentationError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("letter", m.group(1)))
        elif m.group(2):
            out.append(("open", None))
        elif m.group(3):
            out.append(("close", None))
        else:
            out.append(("power", int(m.group(4))))
    return out


def free_reduce(word):
    out = []
    for g, s in word:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def invert_word(word):
    return tuple((g, -s) for g, s in reversed(word))


def _power(word, k):
    if k < 0:
        word, k = invert_word(word), -k
    return word * k


def parse_word(text):
    """Parse ``'a6b2a5'``, ``'(aabb)3'``, ``'A'`` or ``'1'`` into a reduced word."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    toks = _tokens(text)
    stack = [[]]
    i = 0
    while i < len(toks):
        kind, val = toks[i]
        if kind == "letter":
            unit = ((val.lower(), 1 if val.islower() else -1),)
        elif kind == "open":
            stack.append([])
            i += 1
            continue
        elif kind == "close":
            if len(stack) == 1:
                raise PresentationError("unbalanced parenthesis")
            unit = tuple(stack.pop())
        else:
            raise PresentationError("power without a base")
        if i + 1 < len(toks) and toks[i + 1][0] == "power":
            unit = _power(unit, toks[i + 1][1])
            i += 1
        stack[-1].extend(unit)
        i += 1
    if len(stack) != 1:
        raise PresentationError("unbalanced parenthesis")
    return free_reduce(stack[0])


def format_word(word):
    if not word:
        return "1"
    parts = []
    for g, s in word:
        letter = g if s > 0 else g.upper()
        if parts and parts[-1][0] == letter:
            parts[-1][1] += 1
        else:
            parts.append([letter, 1])
    return "".join(l if k == 1 else f"{l}{k}" for l, k in parts)


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relators: tuple

    @classmethod
    def parse(cls, text, generators=None):
        """Whitespace-separated relators, e.g. ``'a8 b3 (ab)2 (aabb)3 (aaaabb)3'``."""
        rels = tuple(parse_word(t) for t in text.split())
        rels = tuple(r for r in rels if r)
        gens = generators or tuple(sorted({g for r in rels for g, _ in r}))
        if not rels:
            raise PresentationError("no relators")
        return cls(tuple(gens), rels)

    def __str__(self):
        return " ".join(format_word(r) for r in self.relators)


AUT_PRESENTATION = "a8 b3 (ab)2 (aabb)3 (aaaabb)3"


class CosetTable:
    """Coset table over the trivial subgroup; columns are ``g, G, h, H, ...``."""

    def __init__(self, presentation, rows, complete):
        self.presentation = presentation
        self.rows = rows
        self.complete = complete
        self.columns = [(g, s) for g in presentation.generators for s in (1, -1)]
        self._col = {c: i for i, c in enumerate(self.columns)}

    def __len__(self):
        return len(self.rows)

    @property
    def order(self):
        return len(self.rows)

    def act(self, coset, word):
        for letter in word:
            coset = self.rows[coset][self._col[letter]]
        return coset

    def permutation(self, word):
        return [self.act(c, word) for c in range(len(self.rows))]

    def relators_close(self):
        return all(self.act(c, r) == c for r in self.presentation.relators for c in range(len(self.rows)))

    def to_json(self):
        return json.dumps({
            "generators": list(self.presentation.generators),
            "relators": [format_word(r) for r in self.presentation.relators],
            "columns": [format_word((c,)) for c in self.columns],
            "complete": self.complete,
            "rows": self.rows,
        }, separators=(",", ":"))


def todd_coxeter(p, max_cosets=10 ** 6):
    """Enumerate the cosets of the trivial subgroup of ``p``.

    Raises :class:`EnumerationInconclusive` when more than ``max_cosets``
    coset numbers would be needed.
    """
    cols = [(g, s) for g in p.generators for s in (1, -1)]
    col = {c: i for i, c in enumerate(cols)}
    inv_col = [col[(g, -s)] for g, s in cols]
    rels = [[col[x] for x in r] for r in p.relators]
    # cyclic conjugates are implied by scanning at every coset, so plain relators suffice
    ncol = len(cols)
    table = [[None] * ncol]
    parent = [0]

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def new_coset():
        if len(table) >= max_cosets:
            raise EnumerationInconclusive(f"coset budget {max_cosets} exhausted")
        table.append([None] * ncol)
        parent.append(len(parent))
        return len(table) - 1

    def merge(k, l, queue):
        k, l = find(k), find(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        parent[l] = k
        queue.append(l)

    def coincidence(a, b):
        queue = deque()
        merge(a, b, queue)
        while queue:
            e = queue.popleft()
            for x in range(ncol):
                f = table[e][x]
                if f is None:
                    continue
                ix = inv_col[x]
                table[f][ix] = None
                e1, f1 = find(e), find(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][ix] is not None:
                    merge(e1, table[f1][ix], queue)
                else:
                    table[e1][x] = f1
                    table[f1][ix] = e1

    def define(c, x):
        d = new_coset()
        table[c][x] = d
        table[d][inv_col[x]] = c
        return d

    def scan_and_fill(c, rel):
        n = len(rel)
        while True:
            f, i = c, 0
            while i < n and table[f][rel[i]] is not None:
                f = table[f][rel[i]]
                i += 1
            if i == n:
                if f != c:
                    coincidence(f, c)
                return
            b, j = c, n - 1
            while j >= i and table[b][inv_col[rel[j]]] is not None:
                b = table[b][inv_col[rel[j]]]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if j == i:
                table[f][rel[i]] = b
                table[b][inv_col[rel[i]]] = f
                return
            define(f, rel[i])

    c = 0
    while c < len(table):
        if find(c) == c:
            for rel in rels:
                if find(c) != c:
                    break
                scan_and_fill(c, rel)
            if find(c) == c:
                for x in range(ncol):
                    if table[c][x] is None:
                        define(c, x)
        c += 1

    live = [c for c in range(len(table)) if find(c) == c]
    # renumber in breadth-first order from coset 0 so the table is canonical
    order = {}
    queue = deque([0])
    order[0] = 0
    while queue:
        c = queue.popleft()
        for x in range(ncol):
            t = find(table[c][x])
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    if len(order) != len(live):
        raise RuntimeError("coset table is not connected")
    rows = [None] * len(order)
    for c, k in order.items():
        rows[k] = [order[find(table[c][x])] for x in range(ncol)]
    out = CosetTable(p, rows, True)
    if not out.relators_close():
        raise RuntimeError("relator scan fails on the completed table")
    return out


def enumerate_normal_forms(table):
    """One word per coset from a breadth-first scan (order ``a < A < b < B``)."""
    words = {0: ()}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x, letter in enumerate(table.columns):
            t = table.rows[c][x]
            if t not in words:
                words[t] = words[c] + (letter,)
                queue.append(t)
    if len(words) != table.order:
        raise RuntimeError("normal forms do not reach every coset")
    return [words[c] for c in range(table.order)]


def element_order(table, word):
    return perm_order(table.permutation(word))


def _word_to_perm(word, images, n):
    out = identity(n)
    for g, s in word:
        img = images[g] if s > 0 else inverse(images[g])
        out = compose(out, img)
    return out


def generated_group(perms):
    """Closure of a set of permutations under composition."""
    n = len(perms[0])
    start = tuple(identity(n))
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for p in perms:
            y = tuple(compose(list(x), p))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


@dataclass
class RealizationReport:
    relators_hold: dict
    group_size: int
    transitive: bool
    free: bool
    expected_order: int
    coset_to_dart: list

    @property
    def ok(self):
        return (all(self.relators_hold.values()) and self.group_size == self.expected_order
                and self.transitive and self.free)


def realize_on_map(m, a_image, b_image, presentation=None, table=None, base_dart=0):
    """Check that ``a -> a_image, b -> b_image`` realises the presentation on the map.

    Words act on darts as compositions ``x1 o x2 o ...`` of the images, so
    coset ``[w]`` goes to the dart ``w(base_dart)``.
    """
    p = presentation or Presentation.parse(AUT_PRESENTATION)
    table = table or todd_coxeter(p)
    n = m.dart_count
    images = {"a": a_image, "b": b_image}
    holds = {format_word(r): _word_to_perm(r, images, n) == identity(n) for r in p.relators}
    group = generated_group([a_image, b_image])
    orbit = {g[base_dart] for g in group}
    free = all(g[base_dart] != base_dart for g in group if list(g) != identity(n))
    coset_to_dart = []
    if all(holds.values()):
        coset_to_dart = [_word_to_perm(w, images, n)[base_dart] for w in enumerate_normal_forms(table)]
    return RealizationReport(holds, len(group), len(orbit) == n, free, table.order, coset_to_dart)


# Table of the 96 automorphism words: prefixes by column block, suffixes by row.
_TAIL = ["", "a", "a2", "a2b", "a2b2", "a2b2a", "a3", "a3b", "a3b2", "a3b2a",
         "a4", "a4b", "a4b2", "a4b2a", "a4b2a2", "a4b2a3",
         "a5", "a5b", "a5b2", "a5b2a", "a5b2a2", "a5b2a3",
         "a6", "a6b", "a6b2", "a6b2a", "a6b2a2", "a6b2a3", "a6b2a4", "a6b2a5",
         "a7", "a7b"]


def table_one_words():
    """The 96 words listing Aut(X) in the source table, as text."""
    out = []
    for prefix in ("", "b", "b2"):
        for tail in _TAIL:
            out.append((prefix + tail) or "1")
    return out
