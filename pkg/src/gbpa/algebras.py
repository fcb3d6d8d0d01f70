"""Bound quiver algebras kQ/(I) as residue path bases with multiplication tables.

The construction works degree by degree inside the space of paths of length
below a cutoff: the two-sided ideal span of the relation generators is closed
under left and right arrow multiplication, terms that overflow the cutoff are
truncated (so the raw result presents kQ/((I)+R^max_len)), and a separate
truncation-free closure provides the nilpotency witness that certifies the
answer equals kQ/(I).  Residue basis elements are the non-pivot paths of the
ideal span under length-then-lex order, so the basis is monomial and the
multiplication table stays sparse.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .exactlin import QQ, Field
from .quivers import Path, Quiver, Relation, enumerate_paths, is_acyclic


class AlgebraError(ValueError):
    pass


class InexactAlgebraError(AlgebraError):
    """An operation required a certified presentation of kQ/(I)."""


def default_max_len(q: Quiver) -> int:
    return 2 * len(q.vertices) + 2


class BoundQuiverAlgebra:
    """Finite-dimensional algebra presented by a quiver with relations.

    Instances are produced by :func:`build_algebra`; all fields are read-only
    after construction.  ``basis`` is a tuple of residue representative paths
    (stationary paths first), ``exact`` records whether the presentation was
    certified to equal kQ/(I) below the cutoff.
    """

    def __init__(self, quiver: Quiver, relations: tuple, field: Field,
                 max_len: int, basis: tuple, rewrite: dict, exact: bool,
                 zero_residue_path: bool) -> None:
        self.quiver = quiver
        self.relations = relations
        self.field = field
        self.max_len = max_len
        self.basis = basis
        self.exact = exact
        self.has_zero_residue_path = zero_residue_path
        self._index = {p: i for i, p in enumerate(basis)}
        self._rewrite = rewrite  # reducible Path -> {basis index: coeff}
        self._idempotent = {p.source: i for i, p in enumerate(basis)
                            if p.length == 0}
        self._mult: dict = {}
        self._opposite: Optional[BoundQuiverAlgebra] = None
        self._residue_classes = None

    # -- basic queries -------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_index(self, path: Path) -> Optional[int]:
        return self._index.get(path)

    def idempotent_index(self, v: str) -> int:
        return self._idempotent[v]

    def require_exact(self, what: str) -> None:
        if not self.exact:
            raise InexactAlgebraError(
                f"{what} needs a certified presentation; raise max_len "
                f"(currently {self.max_len})")

    # -- reduction and multiplication -----------------------------------------

    def reduce_path(self, path: Path) -> dict:
        """Residue of a path as ``{basis index: coeff}``."""
        i = self._index.get(path)
        if i is not None:
            return {i: self.field.one}
        if path.length >= self.max_len:
            if self.exact:
                return {}
            raise InexactAlgebraError(
                f"path of length {path.length} beyond uncertified cutoff")
        r = self._rewrite.get(path)
        if r is None:
            raise AlgebraError(f"{path} is not a path of this quiver")
        return dict(r)

    def multiply_basis(self, i: int, j: int) -> dict:
        """Product of two basis elements as ``{basis index: coeff}``."""
        key = (i, j)
        cached = self._mult.get(key)
        if cached is None:
            p = self.basis[i].compose(self.basis[j])
            cached = {} if p is None else self.reduce_path(p)
            self._mult[key] = cached
        return dict(cached)

    def multiply(self, x: dict, y: dict) -> dict:
        """Bilinear extension of the basis table to ``{index: coeff}`` maps."""
        f = self.field
        out: dict = {}
        for i, ci in x.items():
            if not ci:
                continue
            for j, cj in y.items():
                if not cj:
                    continue
                c = f.mul(ci, cj)
                for kk, ck in self.multiply_basis(i, j).items():
                    s = f.add(out.get(kk, f.zero), f.mul(c, ck))
                    if s:
                        out[kk] = s
                    else:
                        out.pop(kk, None)
        return out

    def identity_element(self) -> dict:
        return {i: self.field.one for i in self._idempotent.values()}

    def path_residue_classes(self) -> list:
        """Distinct residues realized by paths, each as a ``{index: coeff}`` map.

        Includes the empty map when some path has residue zero.  Used when
        interleaving outer relations: path interleavings and residue
        interleavings generate the same ideal once the presentation ideal is
        present, so the finite residue list is a faithful choice set.
        """
        if self._residue_classes is None:
            seen = {}
            for p in enumerate_paths(self.quiver, self.max_len - 1):
                r = self.reduce_path(p)
                key = tuple(sorted(r.items()))
                seen.setdefault(key, r)
            if self.exact and not is_acyclic(self.quiver) and () not in seen:
                # Longer paths exist and all reduce to zero.
                seen[()] = {}
            self._residue_classes = [dict(v) for _, v in sorted(seen.items())]
        return [dict(r) for r in self._residue_classes]

    # -- derived algebras ------------------------------------------------------

    def opposite(self) -> "BoundQuiverAlgebra":
        """Algebra on the reversed quiver with term-by-term reversed relations.

        Memoized, and the memo is symmetric, so ``B.opposite().opposite()``
        is ``B`` itself.
        """
        self.require_exact("opposite")
        if self._opposite is None:
            from .quivers import Arrow
            rq = Quiver(self.quiver.vertices,
                        [Arrow(a.name, a.target, a.source)
                         for a in self.quiver.arrows])
            rels = tuple(r.reversed() for r in self.relations)
            opp = build_algebra(rq, rels, max_len=self.max_len, field=self.field)
            opp._opposite = self
            self._opposite = opp
        return self._opposite

    def element_str(self, x: dict) -> str:
        if not x:
            return "0"
        parts = []
        for i in sorted(x):
            c = x[i]
            parts.append(f"({c})*{self.basis[i]}" if c != self.field.one
                         else str(self.basis[i]))
        return " + ".join(parts)

    def __repr__(self) -> str:
        flag = "exact" if self.exact else "truncated"
        return (f"BoundQuiverAlgebra(dim={self.dim}, "
                f"|Q0|={len(self.quiver.vertices)}, "
                f"|Q1|={len(self.quiver.arrows)}, {flag})")


class _SpanBuilder:
    """Incremental reduced row space over sparse path-index vectors.

    Rows are kept fully inter-reduced: each row's support meets the pivot set
    only at its own pivot, so reducing a vector is a single ascending pass.
    """

    def __init__(self, field: Field) -> None:
        self.field = field
        self.rows: dict = {}  # pivot index -> {index: coeff}, pivot coeff 1

    def reduce(self, vec: dict) -> dict:
        f = self.field
        vec = {k: c for k, c in vec.items() if c}
        for p in sorted(vec):
            row = self.rows.get(p)
            if row is None or not vec.get(p):
                continue
            c = vec[p]
            for k, rc in row.items():
                s = f.sub(vec.get(k, f.zero), f.mul(c, rc))
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        return vec

    def add(self, vec: dict) -> Optional[dict]:
        """Insert a vector; returns the new normalized row or None if absorbed."""
        f = self.field
        vec = self.reduce(vec)
        if not vec:
            return None
        pivot = min(vec)
        inv = f.inv(vec[pivot])
        if inv != f.one:
            vec = {k: f.mul(inv, c) for k, c in vec.items()}
        for piv, row in self.rows.items():
            c = row.get(pivot)
            if c:
                for k, rc in vec.items():
                    s = f.sub(row.get(k, f.zero), f.mul(c, rc))
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
        self.rows[pivot] = vec
        return dict(vec)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def _relation_vector(rel: Relation, index: dict, field: Field,
                     max_len: int) -> dict:
    vec: dict = {}
    for coeff, path in rel.terms:
        if path.length >= max_len:
            raise AlgebraError(
                f"relation term {path} has length >= cutoff {max_len}")
        i = index.get(path)
        if i is None:
            raise AlgebraError(f"relation path {path} is not a path of the quiver")
        c = field.of(coeff)
        s = field.add(vec.get(i, field.zero), c)
        if s:
            vec[i] = s
        else:
            vec.pop(i, None)
    return vec


def _ideal_closure(q: Quiver, gen_vectors: list, paths: list, index: dict,
                   field: Field, max_len: int, pure: bool) -> _SpanBuilder:
    """Close the generator span under arrow multiplication below the cutoff.

    ``pure=False`` truncates overflowing terms (quotient by the extra
    R^max_len); ``pure=True`` discards any product that would overflow, so the
    resulting span consists of honest ideal members only.
    """
    span = _SpanBuilder(field)
    queue = []
    for v in gen_vectors:
        row = span.add(dict(v))
        if row is not None:
            queue.append(row)
    while queue:
        vec = queue.pop()
        for a in q.arrows:
            for left in (True, False):
                prod: dict = {}
                overflow = False
                for i, c in vec.items():
                    p = paths[i]
                    if left:
                        if a.target != p.source:
                            continue
                        np = Path(a.source, p.target, (a.name,) + p.arrows)
                    else:
                        if p.target != a.source:
                            continue
                        np = Path(p.source, a.target, p.arrows + (a.name,))
                    if np.length >= max_len:
                        overflow = True
                        if pure:
                            break
                        continue
                    j = index[np]
                    s = field.add(prod.get(j, field.zero), c)
                    if s:
                        prod[j] = s
                    else:
                        prod.pop(j, None)
                if pure and overflow:
                    continue
                if prod:
                    row = span.add(prod)
                    if row is not None:
                        queue.append(row)
    return span


def build_algebra(q: Quiver, relations: Iterable[Relation],
                  max_len: Optional[int] = None,
                  field: Field = QQ) -> BoundQuiverAlgebra:
    """Construct kQ/(I) with residue path basis and certified exactness flag.

    The basis consists of the non-pivot paths of the ideal span under
    length-then-lex order.  ``exact`` is set when some length L < max_len has
    every length-L path inside the truncation-free ideal span (vacuously when
    no length-L path exists), which witnesses R^L inside (I) and hence that
    truncation changed nothing.
    """
    relations = tuple(relations)
    if max_len is None:
        max_len = default_max_len(q)
    if max_len < 2:
        raise AlgebraError("max_len must be >= 2")
    paths = enumerate_paths(q, max_len - 1)
    index = {p: i for i, p in enumerate(paths)}
    by_length: dict = {}
    for p in paths:
        by_length.setdefault(p.length, []).append(p)

    gens = [_relation_vector(r, index, field, max_len) for r in relations]
    span = _ideal_closure(q, gens, paths, index, field, max_len, pure=False)
    if any(vec != {} for vec in gens):
        pure_span = _ideal_closure(q, gens, paths, index, field, max_len,
                                   pure=True)
    else:
        pure_span = span  # no generators: spans coincide (both empty)

    exact = False
    for length in range(1, max_len):
        ps = by_length.get(length)
        if ps is None:
            exact = True  # no paths of this length at all: R^length = 0
            break
        if all(pure_span.contains({index[p]: field.one}) for p in ps):
            exact = True
            break

    pivot_set = set(span.rows)
    basis = tuple(p for i, p in enumerate(paths) if i not in pivot_set)
    basis_pos = {i: k for k, i in
                 enumerate(i for i in range(len(paths)) if i not in pivot_set)}
    rewrite = {}
    for piv, row in span.rows.items():
        rewrite[paths[piv]] = {basis_pos[i]: field.neg(c)
                               for i, c in row.items() if i != piv}

    zero_residue = any(not r for r in rewrite.values())
    if exact and not is_acyclic(q):
        zero_residue = True  # long paths exist and reduce to zero

    return BoundQuiverAlgebra(q, relations, field, max_len, basis, rewrite,
                              exact, zero_residue)


def canonical_modules(B: BoundQuiverAlgebra) -> dict:
    """Per-vertex (simple, projective, injective) canonical modules.

    ``P_v`` is e_v B as a representation, ``S_v`` its top, and ``I_v`` the
    dual of the projective at v over the opposite algebra.
    """
    from . import modules

    B.require_exact("canonical_modules")
    out = {}
    opp = B.opposite()
    for v in B.quiver.vertices:
        P = modules.projective_module(B, v)
        S = modules.simple_module(B, v)
        I = modules.dual(modules.projective_module(opp, v))
        out[v] = modules.CanonicalTriple(simple=S, projective=P, injective=I)
    return out


def is_hereditary(B: BoundQuiverAlgebra) -> bool:
    """True when the global dimension is certified <= 1."""
    from . import modules

    B.require_exact("is_hereditary")
    gd = modules.global_dim(B)
    if gd.kind == "finite":
        return gd.n <= 1
    return False
