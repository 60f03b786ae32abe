"""Finite-dimensional data of a truncated quotient algebra.

The quotient of the free algebra by a completed relation system has the
normal words as a filtered basis. h_n counts normal words of degree n;
factor closure of normal words makes a zero count propagate upward, so
the first empty degree certifies finiteness and bounds the nilpotency
index of the radical.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .fields import FieldError
from .freepoly import FreePoly
from .rewrite import RewriteSystem, normal_form, normal_words_by_degree

_ASSOC_EXHAUSTIVE_LIMIT = 12


def _word_label(w: str) -> str:
    return w if w else "1"


def _label_word(s: str) -> str:
    return "" if s == "1" else s


@dataclass
class QuotientAlgebra:
    system: RewriteSystem
    normal_basis: list          # words grouped by degree
    hilbert: tuple              # h_0..h_cap
    finite: bool
    first_empty_degree: object  # int or None
    growth: str                 # "finite" | "bounded-constant" | "growing"
    table: object = None        # {(u, v): FreePoly} when finite and built

    @property
    def basis_words(self):
        return [w for layer in self.normal_basis for w in layer]

    @property
    def dimension(self):
        if not self.finite:
            return None
        return sum(self.hilbert)

    @property
    def nilpotency_index(self):
        return self.first_empty_degree

    def to_json(self) -> dict:
        from .parsing import render
        doc = {
            "field": self.system.field.name,
            "order": self.system.order.to_json(),
            "cap": self.system.cap,
            "complete_through": self.system.complete_through,
            "hilbert": list(self.hilbert),
            "finite": self.finite,
            "growth": self.growth,
            "relations": [render(g, self.system.order)
                          for g in self.system.elements],
            "leading_words": self.system.leads,
        }
        if self.finite:
            doc["total_dimension"] = self.dimension
            doc["first_empty_degree"] = self.first_empty_degree
            doc["basis"] = [_word_label(w) for w in self.basis_words]
        if self.table is not None:
            ser = {}
            words = self.basis_words
            for (u, v), p in self.table.items():
                key = "%s,%s" % (_word_label(u), _word_label(v))
                ser[key] = [self.system.field.to_str(p.coeff(w))
                            for w in words]
            doc["table"] = ser
        return doc


def hilbert(system: RewriteSystem) -> QuotientAlgebra:
    """Normal-word counts through the cap, with a finiteness verdict.

    Counts are exact in every degree up to the cap once the completion has
    resolved all ambiguities below it. Finiteness is claimed as soon as a
    degree is empty: factor closure then empties all higher degrees, which
    is asserted rather than assumed.
    """
    layers = normal_words_by_degree(system)
    h = tuple(len(layer) for layer in layers)
    first_empty = None
    for d, hd in enumerate(h):
        if hd == 0:
            first_empty = d
            break
    if first_empty is not None:
        for d in range(first_empty, len(h)):
            if h[d] != 0:
                raise AssertionError("normal word count rose after an empty "
                                     "degree; monotone vanishing violated")
        finite = True
        growth = "finite"
        layers = layers[:first_empty]
    else:
        finite = False
        tail = h[-3:]
        growth = "bounded-constant" if len(set(tail)) == 1 else "growing"
    return QuotientAlgebra(system, layers, h, finite, first_empty, growth)


def _product(system, u, v):
    f = FreePoly.term(u + v, system.field.one, system.field, system.cap)
    return normal_form(f, system)


def mult_table(Q: QuotientAlgebra, workers: int = 1) -> QuotientAlgebra:
    """Structure constants on the normal basis. Requires finiteness.

    Products of basis words whose degree exceeds the cap are genuinely
    zero: their normal forms would live in empty degrees. Worker threads
    split the pair list but results are merged in index order, so output
    never depends on the worker count.
    """
    if not Q.finite:
        raise ValueError("multiplication table of an infinite algebra")
    words = Q.basis_words
    pairs = [(u, v) for u in words for v in words]

    def run(chunk):
        return [_product(Q.system, u, v) for u, v in chunk]

    if workers <= 1 or len(pairs) < 64:
        results = run(pairs)
    else:
        size = (len(pairs) + workers - 1) // workers
        chunks = [pairs[i:i + size] for i in range(0, len(pairs), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(run, chunks))
        results = [p for part in out for p in part]
    Q.table = {pair: res for pair, res in zip(pairs, results)}
    _check_table_closure(Q)
    return Q


def _check_table_closure(Q):
    basis = set(Q.basis_words)
    for (u, v), p in Q.table.items():
        for w in p.terms:
            if w not in basis:
                raise AssertionError("product %r * %r left the normal basis"
                                     % (u, v))


def check_associative(Q: QuotientAlgebra) -> bool:
    """Exhaustive associativity check through the table (dim <= 12)."""
    if Q.table is None:
        mult_table(Q)
    words = Q.basis_words
    if len(words) > _ASSOC_EXHAUSTIVE_LIMIT:
        raise ValueError("exhaustive associativity limited to dim <= %d"
                         % _ASSOC_EXHAUSTIVE_LIMIT)
    table = Q.table

    def times(p: FreePoly, v: str) -> FreePoly:
        out = FreePoly.zero(Q.system.field, Q.system.cap)
        for w, c in p.terms.items():
            out = out + table[(w, v)].scale(c)
        return out

    for u in words:
        for v in words:
            uv = table[(u, v)]
            for w in words:
                left = times(uv, w)
                right_p = table[(v, w)]
                right = FreePoly.zero(Q.system.field, Q.system.cap)
                for t, c in right_p.terms.items():
                    right = right + table[(u, t)].scale(c)
                if left != right:
                    return False
    return True


def _solve_kernel_dim(rows, ncols, field):
    """Dimension of the solution space of rows * a = 0, exact elimination."""
    mat = [list(r) for r in rows]
    rank = 0
    col = 0
    nrows = len(mat)
    while col < ncols and rank < nrows:
        piv = None
        for r in range(rank, nrows):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = field.inv(mat[rank][col])
        mat[rank] = [field.mul(v, inv) for v in mat[rank]]
        for r in range(nrows):
            if r != rank and mat[r][col]:
                c = mat[r][col]
                mat[r] = [field.sub(a, field.mul(c, b))
                          for a, b in zip(mat[r], mat[rank])]
        rank += 1
        col += 1
    return ncols - rank


def invariant_profile(Q: QuotientAlgebra, square_zero=False) -> dict:
    """Field-independent fingerprint used before any isomorphism search.

    Radical powers are spanned by normal words of degree >= k, so their
    dimensions come straight from the Hilbert data. Annihilators and the
    center are exact kernel computations against the table. The square-zero
    count is only meaningful over a finite field; requesting it over the
    rationals raises FieldError.
    """
    if Q.table is None:
        mult_table(Q)
    field = Q.system.field
    words = Q.basis_words
    n = len(words)
    index = {w: i for i, w in enumerate(words)}
    h = Q.hilbert

    rad_dims = []
    k = 1
    while True:
        dim = sum(h[k:])
        rad_dims.append(dim)
        if dim == 0:
            break
        k += 1

    gens = [w for w in words if 0 < len(w)]
    deg1 = [w for w in words if len(w) == 1]
    rad_gens = deg1 if len(deg1) == 2 else gens

    def vec(p):
        return [p.coeff(w) for w in words]

    def left_rows():
        # rows of the map a -> (a*g)_g over radical generators
        rows = []
        for g in gens:
            for out_i in range(n):
                row = [Q.table[(w, g)].coeff(words[out_i]) for w in words]
                rows.append(row)
        return rows

    def right_rows():
        rows = []
        for g in gens:
            for out_i in range(n):
                row = [Q.table[(g, w)].coeff(words[out_i]) for w in words]
                rows.append(row)
        return rows

    lrows = left_rows()
    rrows = right_rows()
    left_ann = _solve_kernel_dim(lrows, n, field)
    right_ann = _solve_kernel_dim(rrows, n, field)
    two_sided = _solve_kernel_dim(lrows + rrows, n, field)

    center_rows = []
    for g in rad_gens:
        for out_i in range(n):
            row = []
            for w in words:
                c = field.sub(Q.table[(w, g)].coeff(words[out_i]),
                              Q.table[(g, w)].coeff(words[out_i]))
                row.append(c)
            center_rows.append(row)
    center = _solve_kernel_dim(center_rows, n, field)

    profile = {
        "hilbert": list(h[:len(Q.normal_basis) + 1]),
        "dimension": Q.dimension,
        "radical_power_dims": rad_dims,
        "left_annihilator_dim": left_ann,
        "right_annihilator_dim": right_ann,
        "two_sided_annihilator_dim": two_sided,
        "center_dim": center,
    }
    if square_zero:
        if field.characteristic == 0:
            raise FieldError("square-zero counting needs a finite field")
        profile["square_zero_count"] = _square_zero_count(Q)
    return profile


def _square_zero_count(Q):
    """|{a : a^2 = 0}|. Unit components are forced to zero, so only
    radical vectors are enumerated: p^(dim-1) candidates."""
    field = Q.system.field
    p = field.characteristic
    words = Q.basis_words
    rad = [w for w in words if len(w) > 0]
    count = 0

    def square_is_zero(coeffs):
        acc = {}
        for (i, wi) in enumerate(rad):
            ci = coeffs[i]
            if not ci:
                continue
            for (j, wj) in enumerate(rad):
                cj = coeffs[j]
                if not cj:
                    continue
                prod = Q.table[(wi, wj)]
                scale = field.mul(ci, cj)
                for w, c in prod.terms.items():
                    acc[w] = field.add(acc.get(w, field.zero),
                                       field.mul(scale, c))
        return all(not v for v in acc.values())

    total = p ** len(rad)
    for idx in range(total):
        coeffs = []
        t = idx
        for _ in rad:
            coeffs.append(t % p)
            t //= p
        if square_is_zero(coeffs):
            count += 1
    return count
