"""Truncated completion of two-sided ideals in the free algebra on x, y.

Elements are kept monic with leading words selected by a MonomialOrder.
All computations happen below a degree cap. Resolving every overlap and
inclusion ambiguity whose witness degree is at most the cap makes the
normal-word counts exact in each degree up to the cap; the recorded
complete_through = cap - max(leading degree) is the conservative
certificate carried by the system.

In local mode every rewrite replaces a word by words that are strictly
later in the order (same or higher degree), so reduction terminates below
any cap. Global mode is ordinary deglex and is offered as a cross-check;
it always runs under a cap as well.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .fields import QQ, FieldError, ResourceCapError
from .freepoly import FreePoly
from .words import MonomialOrder, all_words

_DEFAULT_ORDER = MonomialOrder()


@dataclass(frozen=True)
class Ambiguity:
    """An overlap or inclusion between two leading words.

    kind is "overlap" (a proper nonempty suffix of the left element's lead
    equals a proper prefix of the right's) or "inclusion" (the right lead
    is a factor of the left lead). witness is the common multiple word;
    left_at/right_at give the positions of the two leads inside it.
    """

    kind: str
    left: int
    right: int
    witness: str
    left_at: int
    right_at: int

    @property
    def degree(self):
        return len(self.witness)


class RewriteSystem:
    """An interreduced truncated rewriting system."""

    __slots__ = ("elements", "order", "cap", "complete_through", "field")

    def __init__(self, elements, order, cap, complete_through=None, field=None):
        self.elements = tuple(elements)
        self.order = order
        self.cap = cap
        if self.elements:
            self.field = self.elements[0].field
        elif field is not None:
            self.field = field
        else:
            raise ValueError("an empty rewrite system needs an explicit field")
        if complete_through is None:
            if self.elements:
                maxlead = max(len(g.leading_word(order))
                              for g in self.elements)
                complete_through = cap - maxlead
            else:
                complete_through = cap
        self.complete_through = complete_through

    @property
    def leads(self):
        return [g.leading_word(self.order) for g in self.elements]

    def to_json(self) -> dict:
        from .parsing import render
        return {
            "order": self.order.to_json(),
            "cap": self.cap,
            "complete_through": self.complete_through,
            "field": self.field.name,
            "elements": [render(g, self.order) for g in self.elements],
            "leading_words": self.leads,
        }


def _find_reduction(word, leads):
    """Leftmost position where some lead occurs; elements in basis order.

    Returns (position, element index) or None.
    """
    n = len(word)
    for i in range(n):
        for gi, lw in enumerate(leads):
            if word.startswith(lw, i):
                return i, gi
    return None


def normal_form(f: FreePoly, system) -> FreePoly:
    """Reduce f modulo the system, most significant words first.

    Deterministic: at each step the earliest word in the order with a
    reducible occurrence is rewritten at its leftmost occurrence, trying
    elements in basis order.
    """
    if isinstance(system, RewriteSystem):
        elements, order, cap = system.elements, system.order, system.cap
    else:
        elements, order, cap = system
    leads = [g.leading_word(order) for g in elements]
    field = f.field
    add, mul, neg = field.add, field.mul, field.neg
    cur = dict(f.terms)
    if cap is not None:
        for w in [w for w in cur if len(w) > cap]:
            del cur[w]
    heap = [(order.leading_key(w), w) for w in cur]
    heapq.heapify(heap)
    normal = set()
    while heap:
        _, w = heapq.heappop(heap)
        c = cur.get(w)
        if not c or w in normal:
            continue
        hit = _find_reduction(w, leads)
        if hit is None:
            normal.add(w)
            continue
        i, gi = hit
        g = elements[gi]
        lw = leads[gi]
        pre, post = w[:i], w[i + len(lw):]
        del cur[w]
        for t, ct in g.terms.items():
            if t == lw:
                continue
            nw = pre + t + post
            if cap is not None and len(nw) > cap:
                continue
            piece = neg(mul(c, ct))
            if nw in cur:
                s = add(cur[nw], piece)
                if s:
                    cur[nw] = s
                else:
                    del cur[nw]
                    continue
            else:
                cur[nw] = piece
            if nw not in normal:
                heapq.heappush(heap, (order.leading_key(nw), nw))
    return FreePoly(field, cur, f.cap if cap is None else cap)


def _interreduce(elements, order, cap):
    """Full autoreduction: every element is monic, no lead divides another
    lead or any tail word. Deterministic processing by leading key."""
    pool = [g for g in elements if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        pool.sort(key=lambda g: (order.leading_key(g.leading_word(order))))
        for i, g in enumerate(pool):
            others = pool[:i] + pool[i + 1:]
            if not others:
                continue
            r = normal_form(g, (others, order, cap))
            if r.is_zero():
                pool = others
                changed = True
                break
            r = r.monic(order)
            if r != g:
                pool[i] = r
                changed = True
                break
    # tail-reduce each element by the full system, own lead included
    out = []
    for g in sorted(pool, key=lambda g: order.leading_key(g.leading_word(order))):
        lw = g.leading_word(order)
        tail = FreePoly(g.field,
                        {w: c for w, c in g.terms.items() if w != lw}, cap)
        tail = normal_form(tail, (pool, order, cap))
        out.append(FreePoly.term(lw, g.field.one, g.field, cap) + tail)
    return out


def ambiguities(elements, order, cap):
    """All overlap/inclusion ambiguities with witness degree <= cap,
    sorted by (witness degree, discovery order)."""
    leads = [g.leading_word(order) for g in elements]
    found = []
    for i, li in enumerate(leads):
        for j, lj in enumerate(leads):
            # overlap: proper nonempty suffix of li == proper prefix of lj
            for k in range(1, min(len(li), len(lj))):
                if li[-k:] == lj[:k]:
                    w = li + lj[k:]
                    if len(w) <= cap:
                        found.append(Ambiguity("overlap", i, j, w,
                                               0, len(li) - k))
            # inclusion: lj a proper factor of li
            if i != j and len(lj) < len(li):
                start = li.find(lj)
                while start != -1:
                    found.append(Ambiguity("inclusion", i, j, li, 0, start))
                    start = li.find(lj, start + 1)
    found.sort(key=lambda a: a.degree)
    return found


def s_polynomial(amb: Ambiguity, elements, order, cap) -> FreePoly:
    """Difference of the two one-step reductions of the witness."""
    gi = elements[amb.left]
    gj = elements[amb.right]
    li = gi.leading_word(order)
    lj = gj.leading_word(order)
    w = amb.witness
    field = gi.field
    one = field.one

    def expand(g, lw, at):
        pre, post = w[:at], w[at + len(lw):]
        out = {}
        for t, c in g.terms.items():
            if t == lw:
                continue
            nw = pre + t + post
            if cap is not None and len(nw) > cap:
                continue
            out[nw] = field.neg(c) if nw not in out else field.add(
                out[nw], field.neg(c))
        return FreePoly(field, out, cap)

    return expand(gi, li, amb.left_at) - expand(gj, lj, amb.right_at)


def complete(relations, order=_DEFAULT_ORDER, cap=12) -> RewriteSystem:
    """Truncated completion of the two-sided ideal the relations generate.

    Requires cap >= the largest relation degree (its minimal degree in
    local mode). Ambiguities are processed in ascending witness degree,
    FIFO within a degree; the basis is interreduced after every insertion
    and canonically sorted at the end, so the result does not depend on
    scheduling. In finite characteristic an element whose every leading
    candidate has zero coefficient cannot be made monic and is reported.
    """
    rels = []
    for r in relations:
        if r.is_zero():
            raise ValueError("zero relation given to complete()")
        r = r.truncated(cap)
        if r.is_zero():
            raise ValueError("cap %d drops a relation entirely" % cap)
        lc = r.leading_coeff(order)
        if not lc:
            raise FieldError("relation with vanishing leading coefficient "
                             "cannot be made monic")
        rels.append(r.monic(order))
    if not rels:
        # free algebra: nothing to resolve, counts are exact through cap
        return RewriteSystem([], order, cap, field=QQ)
    need = max(len(r.leading_word(order)) for r in rels)
    if cap < need:
        raise ValueError("cap %d below max relation degree %d" % (cap, need))

    basis = _interreduce(rels, order, cap)
    done = set()

    def signature(amb, basis):
        li = basis[amb.left].leading_word(order)
        lj = basis[amb.right].leading_word(order)
        return (amb.kind, li, lj, amb.witness, amb.left_at, amb.right_at)

    progress = True
    while progress:
        progress = False
        for amb in ambiguities(basis, order, cap):
            sig = signature(amb, basis)
            if sig in done:
                continue
            s = s_polynomial(amb, basis, order, cap)
            r = normal_form(s, (basis, order, cap))
            done.add(sig)
            if not r.is_zero():
                basis = _interreduce(basis + [r.monic(order)], order, cap)
                done.clear()
                progress = True
                break

    basis = _interreduce(basis, order, cap)
    system = RewriteSystem(basis, order, cap)
    return system


def verify_complete(system: RewriteSystem) -> bool:
    """Every ambiguity with witness degree <= cap reduces to zero."""
    for amb in ambiguities(system.elements, system.order, system.cap):
        s = s_polynomial(amb, system.elements, system.order, system.cap)
        if not normal_form(s, system).is_zero():
            return False
    return True


def normal_words_by_degree(system: RewriteSystem, through=None):
    """Normal words grouped by degree, using factor closure degree by
    degree: a word is normal iff no leading word occurs in it."""
    cap = system.cap if through is None else min(through, system.cap)
    leads = system.leads
    prec = system.order.precedence
    lead_lens = sorted({len(l) for l in leads})
    out = [[""]]
    cur = [""]
    for d in range(1, cap + 1):
        nxt = []
        for w in cur:
            for ch in prec:
                nw = w + ch
                ok = True
                for L in lead_lens:
                    if L <= len(nw) and nw[-L:] in leads:
                        ok = False
                        break
                if ok:
                    nxt.append(nw)
        out.append(nxt)
        cur = nxt
    return out


_ORACLE_MAX_CAP = 12


def oracle_dimension(relations, cap, order=_DEFAULT_ORDER):
    """Per-degree dimensions by exact row reduction, no rewriting.

    Spans all truncated products u * r * v inside the word space of degree
    <= cap and counts non-pivot columns per degree, with columns ordered by
    the local order so pivots respect minimal degrees. Caps above 12 are
    refused: the row space grows as 4^cap.

    Local orders only. The row space is the truncation of the closure of
    the ideal, which is what a local quotient sees; pivoting it by a
    global order would report closure dimensions against the wrong
    quotient (x - x^2 telescopes to x in the closure, so the oracle would
    undercount the polynomial quotient of x^2 - x).
    """
    if order.mode != "local":
        raise ValueError("the dimension oracle is only sound for local "
                         "orders")
    if cap > _ORACLE_MAX_CAP:
        raise ResourceCapError("oracle cap %d exceeds %d" %
                               (cap, _ORACLE_MAX_CAP))
    rels = [r.truncated(cap) for r in relations if not r.is_zero()]
    rels = [r for r in rels if not r.is_zero()]
    field = rels[0].field if rels else QQ
    sub, mul, div = None, None, None
    if rels:
        sub, mul, div = field.sub, field.mul, field.div

    pivots = {}

    def reduce_row(row):
        while row:
            lead = min(row, key=order.leading_key)
            piv = pivots.get(lead)
            if piv is None:
                c = row[lead]
                if c != field.one:
                    inv = field.inv(c)
                    row = {w: mul(v, inv) for w, v in row.items()}
                pivots[lead] = row
                return
            c = row[lead]
            new = dict(row)
            for w, v in piv.items():
                got = new.get(w)
                if got is None:
                    new[w] = field.neg(mul(c, v))
                else:
                    s = sub(got, mul(c, v))
                    if s:
                        new[w] = s
                    else:
                        del new[w]
            row = new

    prec = order.precedence
    for r in rels:
        d = r.min_degree()
        budget = cap - d
        for total in range(budget + 1):
            for la in range(total + 1):
                lb = total - la
                for u in all_words(la, prec):
                    for v in all_words(lb, prec):
                        row = {}
                        for w, c in r.terms.items():
                            nw = u + w + v
                            if len(nw) <= cap:
                                row[nw] = c
                        if row:
                            reduce_row(dict(row))

    counts = [0] * (cap + 1)
    for w in pivots:
        counts[len(w)] += 1
    return tuple(2 ** d - counts[d] for d in range(cap + 1))
