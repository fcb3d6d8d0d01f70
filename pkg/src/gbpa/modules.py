"""Finite-dimensional right modules over bound quiver algebras.

A module is stored as a representation: one dimension per vertex, one matrix
per arrow (the matrix for an arrow u -> w has shape dims[w] x dims[u] and maps
the u-component into the w-component, acting on column vectors).  Everything
here is exact and deterministic; randomized searches (isomorphism, Fitting
splits) derive their seeds from the inputs.
"""

from __future__ import annotations

import random
import zlib
from collections import namedtuple
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from . import exactlin
from .exactlin import Matrix
from .quivers import Path


class ModuleError(ValueError):
    pass


CanonicalTriple = namedtuple("CanonicalTriple", "simple projective injective")


# ---------------------------------------------------------------------------
# homological dimension values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomDim:
    """A projective/injective dimension: finite, infinite, or '>= cutoff'.

    'at_least' values are uncertified: comparison helpers return None rather
    than guessing when a comparison would need the unknown tail.  The zero
    module reports finite(-1), neutral under max.
    """

    kind: str
    n: int = 0

    @classmethod
    def finite(cls, n: int) -> "HomDim":
        return cls("finite", n)

    @classmethod
    def infinite(cls) -> "HomDim":
        return cls("infinite")

    @classmethod
    def at_least(cls, n: int) -> "HomDim":
        return cls("at_least", n)

    @property
    def certified(self) -> bool:
        return self.kind != "at_least"

    def __str__(self) -> str:
        if self.kind == "finite":
            return str(self.n)
        if self.kind == "infinite":
            return "infinite"
        return f">={self.n}"

    @classmethod
    def parse(cls, s: str) -> "HomDim":
        if s == "infinite":
            return cls.infinite()
        if s.startswith(">="):
            return cls.at_least(int(s[2:]))
        return cls.finite(int(s))


def dim_le(a: HomDim, b: HomDim) -> Optional[bool]:
    """Certified a <= b, or None when the cutoff hides the answer."""
    if b.kind == "infinite":
        return True
    if a.kind == "infinite":
        return None if b.kind == "at_least" else False
    if a.kind == "finite":
        if b.kind == "finite":
            return a.n <= b.n
        return True if a.n <= b.n else None
    # a uncertified
    if b.kind == "finite" and a.n > b.n:
        return False
    return None


def dim_eq(a: HomDim, b: HomDim) -> Optional[bool]:
    if a.kind == "at_least" or b.kind == "at_least":
        return None
    if a.kind != b.kind:
        return False
    return a.kind == "infinite" or a.n == b.n


def dim_max(dims: Sequence[HomDim]) -> HomDim:
    dims = list(dims)
    if not dims:
        return HomDim.finite(-1)
    if any(d.kind == "infinite" for d in dims):
        return HomDim.infinite()
    m = max(d.n for d in dims)
    if any(d.kind == "at_least" for d in dims):
        return HomDim.at_least(m)
    return HomDim.finite(m)


def dim_add(a: HomDim, k: int) -> HomDim:
    if a.kind == "infinite":
        return a
    return HomDim(a.kind, a.n + k)


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

class AlgebraModule:
    """Right module over a :class:`~gbpa.algebras.BoundQuiverAlgebra`."""

    def __init__(self, algebra, dims: dict, maps: dict) -> None:
        self.algebra = algebra
        f = algebra.field
        q = algebra.quiver
        self.dims = {v: int(dims.get(v, 0)) for v in q.vertices}
        if any(d < 0 for d in self.dims.values()):
            raise ModuleError("negative dimension")
        self.maps = {}
        for a in q.arrows:
            m = maps.get(a.name)
            if m is None:
                m = Matrix.zero(f, self.dims[a.target], self.dims[a.source])
            elif not isinstance(m, Matrix):
                m = Matrix.build(f, m) if m else Matrix.zero(
                    f, self.dims[a.target], self.dims[a.source])
            if m.rows != self.dims[a.target] or m.cols != self.dims[a.source]:
                raise ModuleError(
                    f"map for arrow {a.name} has shape {m.rows}x{m.cols}, "
                    f"expected {self.dims[a.target]}x{self.dims[a.source]}")
            if m.field != f:
                raise ModuleError("map over wrong field")
            self.maps[a.name] = m
        offset = {}
        k = 0
        for v in q.vertices:
            offset[v] = k
            k += self.dims[v]
        self._offset = offset
        self.total_dim = k

    @property
    def support(self) -> frozenset:
        return frozenset(v for v, d in self.dims.items() if d > 0)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def offset(self, v: str) -> int:
        return self._offset[v]

    def dims_vector(self) -> tuple:
        return tuple(self.dims[v] for v in self.algebra.quiver.vertices)

    def path_matrix(self, path: Path) -> Matrix:
        """Action of a path, composed left to right (first arrow acts first)."""
        f = self.algebra.field
        m = Matrix.identity(f, self.dims[path.source])
        for name in path.arrows:
            m = self.maps[name] @ m
        return m

    def total_action(self, element: dict) -> Matrix:
        """Right action of an algebra element on the total space."""
        f = self.algebra.field
        B = self.algebra
        out = Matrix.zero(f, self.total_dim, self.total_dim).to_lists()
        for idx, c in element.items():
            if not c:
                continue
            p = B.basis[idx]
            block = self.path_matrix(p)
            r0 = self._offset[p.target]
            c0 = self._offset[p.source]
            for i in range(block.rows):
                row = out[r0 + i]
                br = block.row(i)
                for j in range(block.cols):
                    if br[j]:
                        row[c0 + j] = f.add(row[c0 + j], f.mul(c, br[j]))
        return Matrix(f, self.total_dim, self.total_dim, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraModule)
                and other.algebra is self.algebra
                and other.dims == self.dims and other.maps == self.maps)

    def __hash__(self):
        return hash((id(self.algebra), tuple(sorted(self.dims.items()))))

    def __repr__(self) -> str:
        dv = ",".join(f"{v}:{d}" for v, d in self.dims.items() if d)
        return f"AlgebraModule({dv or '0'})"


def check_module(algebra, dims: dict, maps: dict) -> AlgebraModule:
    """Validate and wrap module data; names the first violated relation."""
    M = AlgebraModule(algebra, dims, maps)
    f = algebra.field
    for rel in algebra.relations:
        total = None
        for coeff, path in rel.terms:
            term = M.path_matrix(path).scale(f.of(coeff))
            total = term if total is None else total + term
        if total is not None and not total.is_zero():
            raise ModuleError(f"module violates relation {rel}")
    return M


def zero_module(algebra) -> AlgebraModule:
    return AlgebraModule(algebra, {}, {})


def simple_module(algebra, v: str) -> AlgebraModule:
    cache = _cache(algebra, "simple")
    if v not in cache:
        cache[v] = AlgebraModule(algebra, {v: 1}, {})
    return cache[v]


def projective_layout(algebra, v: str) -> dict:
    """Basis paths of e_v B grouped per target vertex, in basis order."""
    layout: dict = {w: [] for w in algebra.quiver.vertices}
    for p in algebra.basis:
        if p.source == v:
            layout[p.target].append(p)
    return layout


def projective_module(algebra, v: str) -> AlgebraModule:
    """Indecomposable projective P_v = e_v B as a representation."""
    cache = _cache(algebra, "projective")
    if v in cache:
        return cache[v]
    f = algebra.field
    layout = projective_layout(algebra, v)
    pos = {w: {p: i for i, p in enumerate(ps)} for w, ps in layout.items()}
    dims = {w: len(ps) for w, ps in layout.items()}
    maps = {}
    for a in algebra.quiver.arrows:
        src, tgt = a.source, a.target
        cols = []
        a_idx = algebra.basis_index(Path(src, tgt, (a.name,)))
        for p in layout[src]:
            col = [f.zero] * dims[tgt]
            prod = algebra.multiply_basis(algebra.basis_index(p), a_idx)
            for k, c in prod.items():
                col[pos[tgt][algebra.basis[k]]] = c
            cols.append(col)
        maps[a.name] = Matrix.from_columns(f, dims[tgt], cols)
    cache[v] = AlgebraModule(algebra, dims, maps)
    return cache[v]


def injective_module(algebra, v: str) -> AlgebraModule:
    """Indecomposable injective I_v, the dual of the opposite projective."""
    cache = _cache(algebra, "injective")
    if v not in cache:
        cache[v] = dual(projective_module(algebra.opposite(), v))
    return cache[v]


def regular_module(algebra) -> AlgebraModule:
    """B as a right module over itself (sum of the vertex projectives)."""
    return direct_sum([projective_module(algebra, v)
                       for v in algebra.quiver.vertices])


def _cache(algebra, name: str) -> dict:
    key = "_module_cache_" + name
    c = getattr(algebra, key, None)
    if c is None:
        c = {}
        setattr(algebra, key, c)
    return c


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class ModuleMorphism:
    """Vertexwise linear maps commuting with every arrow action."""

    def __init__(self, source: AlgebraModule, target: AlgebraModule,
                 components: dict, validate: bool = False) -> None:
        if source.algebra is not target.algebra:
            raise ModuleError("morphism between modules over different algebras")
        self.source = source
        self.target = target
        f = source.algebra.field
        comps = {}
        for v in source.algebra.quiver.vertices:
            m = components.get(v)
            if m is None:
                m = Matrix.zero(f, target.dims[v], source.dims[v])
            if m.rows != target.dims[v] or m.cols != source.dims[v]:
                raise ModuleError(f"component at {v} has wrong shape")
            comps[v] = m
        self.components = comps
        if validate and not self.is_valid():
            raise ModuleError("components do not commute with arrow actions")

    def is_valid(self) -> bool:
        for a in self.source.algebra.quiver.arrows:
            lhs = self.components[a.target] @ self.source.maps[a.name]
            rhs = self.target.maps[a.name] @ self.components[a.source]
            if lhs != rhs:
                return False
        return True

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())

    def compose(self, inner: "ModuleMorphism") -> "ModuleMorphism":
        """self after inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise ModuleError("composition mismatch")
        comps = {v: self.components[v] @ inner.components[v]
                 for v in self.components}
        return ModuleMorphism(inner.source, self.target, comps)

    def is_invertible(self) -> bool:
        if self.source.dims != self.target.dims:
            return False
        return all(exactlin.rank(m) == m.rows
                   for m in self.components.values())

    def inverse(self) -> "ModuleMorphism":
        comps = {}
        for v, m in self.components.items():
            inv = exactlin.inverse(m)
            if inv is None:
                raise ModuleError("morphism is not invertible")
            comps[v] = inv
        return ModuleMorphism(self.target, self.source, comps)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ModuleMorphism)
                and other.source == self.source and other.target == self.target
                and other.components == self.components)

    def __repr__(self) -> str:
        return f"ModuleMorphism({self.source!r} -> {self.target!r})"


def identity_morphism(M: AlgebraModule) -> ModuleMorphism:
    f = M.algebra.field
    return ModuleMorphism(M, M, {v: Matrix.identity(f, M.dims[v])
                                 for v in M.dims})


def morphism_lincomb(coeffs: Sequence, morphs: Sequence[ModuleMorphism]) -> ModuleMorphism:
    base = morphs[0]
    f = base.source.algebra.field
    comps = {}
    for v in base.components:
        m = Matrix.zero(f, base.target.dims[v], base.source.dims[v])
        for c, h in zip(coeffs, morphs):
            if c:
                m = m + h.components[v].scale(f.of(c))
        comps[v] = m
    return ModuleMorphism(base.source, base.target, comps)


def hom_space(M: AlgebraModule, N: AlgebraModule) -> list:
    """Basis of Hom(M, N) from the commuting-square linear system."""
    if M.algebra is not N.algebra:
        raise ModuleError("hom between modules over different algebras")
    f = M.algebra.field
    q = M.algebra.quiver
    offs = {}
    n_unknowns = 0
    for v in q.vertices:
        offs[v] = n_unknowns
        n_unknowns += N.dims[v] * M.dims[v]
    if n_unknowns == 0:
        return []

    def u_index(v, r, c):
        return offs[v] + r * M.dims[v] + c

    rows = []
    for a in q.arrows:
        u, w = a.source, a.target
        Ma, Na = M.maps[a.name], N.maps[a.name]
        for r in range(N.dims[w]):
            for c in range(M.dims[u]):
                row = [f.zero] * n_unknowns
                for k in range(M.dims[w]):
                    if Ma[k, c]:
                        row[u_index(w, r, k)] = f.add(
                            row[u_index(w, r, k)], Ma[k, c])
                for k in range(N.dims[u]):
                    if Na[r, k]:
                        row[u_index(u, k, c)] = f.sub(
                            row[u_index(u, k, c)], Na[r, k])
                if any(row):
                    rows.append(row)
    if rows:
        ker = exactlin.kernel_basis(Matrix(f, len(rows), n_unknowns, rows))
        vectors = [ker.column(j) for j in range(ker.cols)]
    else:
        eye = Matrix.identity(f, n_unknowns)
        vectors = [eye.column(j) for j in range(n_unknowns)]

    basis = []
    for vec in vectors:
        comps = {}
        for v in q.vertices:
            ents = [[vec[u_index(v, r, c)] for c in range(M.dims[v])]
                    for r in range(N.dims[v])]
            comps[v] = Matrix(f, N.dims[v], M.dims[v], ents)
        basis.append(ModuleMorphism(M, N, comps))
    return basis


def kernel(g: ModuleMorphism) -> tuple:
    """(K, incl) with K the vertexwise kernel sub-representation."""
    M = g.source
    f = M.algebra.field
    bases = {v: exactlin.kernel_basis(g.components[v]) for v in M.dims}
    return _sub_module_from_bases(M, bases)


def _sub_module_from_bases(M: AlgebraModule, bases: dict) -> tuple:
    f = M.algebra.field
    dims = {v: bases[v].cols for v in bases}
    maps = {}
    for a in M.algebra.quiver.arrows:
        img = M.maps[a.name] @ bases[a.source]
        coords = exactlin.solve_matrix(bases[a.target], img)
        if coords is None:
            raise ModuleError("subspaces are not closed under the arrow action")
        maps[a.name] = coords
    S = AlgebraModule(M.algebra, dims, maps)
    incl = ModuleMorphism(S, M, dict(bases))
    return S, incl


def submodule_spanned_by(M: AlgebraModule, vectors: dict) -> tuple:
    """Smallest submodule containing the given per-vertex column vectors."""
    f = M.algebra.field
    spans = {v: [list(x) for x in vectors.get(v, ())] for v in M.dims}
    changed = True
    while changed:
        changed = False
        for a in M.algebra.quiver.arrows:
            src, tgt = a.source, a.target
            for x in list(spans[src]):
                y = list(M.maps[a.name].apply(x))
                if _extends_span(f, spans, tgt, y):
                    changed = True
    bases = {}
    for v in M.dims:
        cols = spans[v]
        mat = Matrix.from_columns(f, M.dims[v], cols)
        bases[v] = exactlin.column_space_basis(mat)
    return _sub_module_from_bases(M, bases)


def _extends_span(f, spans, v, y) -> bool:
    if not any(y):
        return False
    cols = spans[v]
    if cols:
        m = Matrix.from_columns(f, len(y), cols)
        if exactlin.solve(m, y) is not None:
            return False
    cols.append(y)
    return True


def quotient_module(M: AlgebraModule, sub_bases: dict) -> tuple:
    """(Q, proj) for the quotient of M by the submodule with given bases."""
    f = M.algebra.field
    projections = {}
    sections = {}
    for v in M.dims:
        S = sub_bases[v]
        d, k = M.dims[v], S.cols
        _, piv, _ = exactlin.row_reduce(S.transpose())
        lead = set(piv)  # coordinates pinned by the submodule
        comp = [i for i in range(d) if i not in lead]
        cols = [S.column(j) for j in range(k)]
        eye = Matrix.identity(f, d)
        cols += [eye.column(i) for i in comp]
        B = Matrix.from_columns(f, d, cols)
        Binv = exactlin.inverse(B)
        if Binv is None:
            raise ModuleError("submodule basis is not independent")
        projections[v] = Matrix(f, len(comp), d,
                                [Binv.row(k + t) for t in range(len(comp))])
        sections[v] = Matrix.from_columns(f, d, [eye.column(i) for i in comp])
    dims = {v: projections[v].rows for v in M.dims}
    maps = {}
    for a in M.algebra.quiver.arrows:
        maps[a.name] = (projections[a.target] @ M.maps[a.name]
                        @ sections[a.source])
    Q = AlgebraModule(M.algebra, dims, maps)
    proj = ModuleMorphism(M, Q, projections)
    return Q, proj


def direct_sum(summands: Sequence[AlgebraModule]) -> AlgebraModule:
    M, _, _ = direct_sum_with_maps(summands)
    return M


def direct_sum_with_maps(summands: Sequence[AlgebraModule]) -> tuple:
    """(sum, injections, projections), blockwise in the given order."""
    summands = list(summands)
    if not summands:
        raise ModuleError("direct sum needs at least one summand")
    B = summands[0].algebra
    f = B.field
    if any(s.algebra is not B for s in summands):
        raise ModuleError("direct sum of modules over different algebras")
    dims = {v: sum(s.dims[v] for s in summands) for v in summands[0].dims}
    maps = {a.name: exactlin.block_diagonal(
                f, [s.maps[a.name] for s in summands])
            for a in B.quiver.arrows}
    # block_diagonal orders blocks per summand; rows/cols group per summand
    # in the same order at source and target, which is the blockwise action.
    total = AlgebraModule(B, dims, maps)
    injections = []
    projections = []
    for i, s in enumerate(summands):
        inj = {}
        prj = {}
        for v in dims:
            before = sum(t.dims[v] for t in summands[:i])
            m = Matrix.zero(f, dims[v], s.dims[v]).to_lists()
            for r in range(s.dims[v]):
                m[before + r][r] = f.one
            inj[v] = Matrix(f, dims[v], s.dims[v], m)
            p = Matrix.zero(f, s.dims[v], dims[v]).to_lists()
            for r in range(s.dims[v]):
                p[r][before + r] = f.one
            prj[v] = Matrix(f, s.dims[v], dims[v], p)
        injections.append(ModuleMorphism(s, total, inj))
        projections.append(ModuleMorphism(total, s, prj))
    return total, injections, projections


# ---------------------------------------------------------------------------
# radical, covers, resolutions
# ---------------------------------------------------------------------------

def top_and_radical(M: AlgebraModule) -> tuple:
    """(top multiplicities, rad M, inclusion).

    rad M is the sum of the arrow-map images; for an admissible presentation
    the arrows generate the radical, so this is M rad(B) vertexwise.
    """
    f = M.algebra.field
    bases = {}
    for v in M.dims:
        incoming = [M.maps[a.name] for a in M.algebra.quiver.arrows_into(v)]
        if incoming:
            stacked = exactlin.hstack(f, incoming)
            bases[v] = exactlin.column_space_basis(stacked)
        else:
            bases[v] = Matrix.zero(f, M.dims[v], 0)
    rad, incl = _sub_module_from_bases(M, bases)
    top = {v: M.dims[v] - rad.dims[v] for v in M.dims}
    return top, rad, incl


def projective_cover(M: AlgebraModule) -> tuple:
    """(P, g) with P the projective cover and g the covering morphism."""
    if M.is_zero():
        raise ModuleError("projective cover of the zero module")
    B = M.algebra
    f = B.field
    top, rad, rad_incl = top_and_radical(M)

    pieces = []
    lifts = []
    for v in B.quiver.vertices:
        if top[v] == 0:
            continue
        # Standard coordinates complementary to rad M at v lift the top.
        if rad.dims[v]:
            _, piv, _ = exactlin.row_reduce(rad_incl.components[v].transpose())
            lead = set(piv)
        else:
            lead = set()
        comp = [i for i in range(M.dims[v]) if i not in lead]
        assert len(comp) == top[v]
        eye = Matrix.identity(f, M.dims[v])
        for i in comp:
            pieces.append(projective_module(B, v))
            lifts.append((v, eye.column(i)))

    P, injections, _ = direct_sum_with_maps(pieces)
    comps = {w: Matrix.zero(f, M.dims[w], P.dims[w]).to_lists()
             for w in M.dims}
    col_offset = {w: 0 for w in M.dims}
    for (v, x), piece in zip(lifts, pieces):
        layout = projective_layout(B, v)
        for w in M.dims:
            base = col_offset[w]
            for j, p in enumerate(layout[w]):
                y = M.path_matrix(p).apply(x)
                for r in range(M.dims[w]):
                    comps[w][r][base + j] = y[r]
            col_offset[w] = base + len(layout[w])
    g = ModuleMorphism(P, M, {w: Matrix(f, M.dims[w], P.dims[w], comps[w])
                              for w in M.dims})
    for v in M.dims:
        if exactlin.rank(g.components[v]) != M.dims[v]:
            raise ModuleError("projective cover construction is not surjective")
    return P, g


def syzygy(M: AlgebraModule) -> AlgebraModule:
    """Kernel of the projective cover."""
    _, g = projective_cover(M)
    K, _ = kernel(g)
    return K


@dataclass
class Resolution:
    """Minimal projective resolution data, possibly truncated at a cutoff."""

    resolved: AlgebraModule
    terms: list
    differentials: list  # differentials[k]: terms[k+1] -> terms[k]
    augmentation: Optional[ModuleMorphism]
    minimal: bool
    truncated: bool

    @property
    def length(self) -> int:
        return len(self.terms) - 1


def minimal_resolution(M: AlgebraModule, cutoff: int = 24) -> Resolution:
    """Iterate projective covers on syzygies until zero or the cutoff."""
    if cutoff < 0:
        raise ModuleError("cutoff must be >= 0")
    if M.is_zero():
        return Resolution(M, [], [], None, True, False)
    terms = []
    diffs = []
    augmentation = None
    current = M
    embed = None  # inclusion of the current syzygy into the previous term
    truncated = False
    while True:
        P, g = projective_cover(current)
        terms.append(P)
        if embed is None:
            augmentation = g
        else:
            diffs.append(embed.compose(g))
        K, incl = kernel(g)
        if K.is_zero():
            break
        if len(terms) > cutoff:
            truncated = True
            break
        current, embed = K, incl
    return Resolution(M, terms, diffs, augmentation, True, truncated)


def proj_dim(M: AlgebraModule, cutoff: int = 24) -> HomDim:
    """Projective dimension with a periodic-syzygy infinity certificate.

    Returns finite(n) when the minimal resolution stops, infinite() when a
    syzygy repeats up to isomorphism, at_least(cutoff) otherwise.  The zero
    module reports finite(-1).
    """
    if cutoff < 1:
        raise ModuleError("cutoff must be >= 1")
    if M.is_zero():
        return HomDim.finite(-1)
    seen = [M]
    current = M
    for step in range(1, cutoff + 1):
        K = syzygy(current)
        if K.is_zero():
            return HomDim.finite(step - 1)
        for old in seen:
            if old.dims == K.dims and isomorphic(old, K) is not None:
                return HomDim.infinite()
        seen.append(K)
        current = K
    return HomDim.at_least(cutoff)


def dual(M: AlgebraModule) -> AlgebraModule:
    """Standard k-dual, a module over the opposite algebra.

    Dimensions are preserved; the map of a reversed arrow is the transpose of
    the original one.  Applying it twice gives back an equal module because
    the opposite construction is an involution on algebra objects.
    """
    opp = M.algebra.opposite()
    maps = {a.name: M.maps[a.name].transpose() for a in opp.quiver.arrows}
    return AlgebraModule(opp, dict(M.dims), maps)


def inj_dim(M: AlgebraModule, cutoff: int = 24) -> HomDim:
    """Injective dimension, computed as proj_dim of the dual module."""
    return proj_dim(dual(M), cutoff)


def global_dim(B, cutoff: int = 24) -> HomDim:
    """Max projective dimension over the simple modules."""
    B.require_exact("global_dim")
    return dim_max([proj_dim(simple_module(B, v), cutoff)
                    for v in B.quiver.vertices])


# ---------------------------------------------------------------------------
# isomorphism and indecomposability
# ---------------------------------------------------------------------------

def _derived_rng(M: AlgebraModule, salt: int) -> random.Random:
    # str.__hash__ is randomized per process; use a stable digest instead.
    key = repr(sorted(M.dims.items())).encode()
    return random.Random(zlib.crc32(key) ^ salt)


def isomorphic(M: AlgebraModule, N: AlgebraModule,
               tries: int = 40) -> Optional[ModuleMorphism]:
    """An invertible morphism M -> N, or None when the search fails.

    Equal dimension vectors are necessary; beyond that the search tries the
    hom basis, deterministic random combinations, and a small exhaustive grid
    for hom spaces of dimension <= 2.  A returned morphism is a certificate;
    None is not a disproof.
    """
    if M.algebra is not N.algebra or M.dims != N.dims:
        return None
    if M.total_dim == 0:
        return ModuleMorphism(M, N, {})
    H = hom_space(M, N)
    if not H:
        return None
    for h in H:
        if h.is_invertible():
            return h
    f = M.algebra.field
    rng = _derived_rng(M, 7321)
    hi = f.char - 1 if f.char else 9
    for _ in range(tries):
        coeffs = [rng.randint(0, hi) if f.char else rng.randint(-hi, hi)
                  for _ in H]
        if not any(coeffs):
            continue
        h = morphism_lincomb(coeffs, H)
        if h.is_invertible():
            return h
    if len(H) <= 2:
        grid = range(f.char) if f.char and f.char <= 5 else range(-2, 3)
        combos = [[a] for a in grid] if len(H) == 1 else [
            [a, b] for a in grid for b in grid]
        for coeffs in combos:
            if not any(coeffs):
                continue
            h = morphism_lincomb(coeffs, H)
            if h.is_invertible():
                return h
    return None


def _stable_power(h: ModuleMorphism, exponent: int) -> ModuleMorphism:
    out = h
    k = 1
    while k < exponent:
        out = out.compose(out)
        k *= 2
    return out


def fitting_split(M: AlgebraModule, tries: int = 24) -> Optional[tuple]:
    """A direct-sum split (A, B) of M from a Fitting decomposition, or None.

    For an endomorphism h, M = ker(h^d) + im(h^d) with d = total dimension;
    a candidate with neither part zero certifies decomposability.
    """
    if M.is_zero():
        return None
    H = hom_space(M, M)
    f = M.algebra.field
    rng = _derived_rng(M, 40193)
    candidates = list(H)
    hi = f.char - 1 if f.char else 5
    for _ in range(tries):
        coeffs = [rng.randint(0, hi) if f.char else rng.randint(-hi, hi)
                  for _ in H]
        if any(coeffs):
            candidates.append(morphism_lincomb(coeffs, H))
    for h in candidates:
        hp = _stable_power(h, max(M.total_dim, 1))
        r = sum(exactlin.rank(hp.components[v]) for v in M.dims)
        if 0 < r < M.total_dim:
            im_bases = {v: exactlin.column_space_basis(hp.components[v])
                        for v in M.dims}
            ker_bases = {v: exactlin.kernel_basis(hp.components[v])
                         for v in M.dims}
            A, _ = _sub_module_from_bases(M, im_bases)
            B, _ = _sub_module_from_bases(M, ker_bases)
            return A, B
    return None


@dataclass(frozen=True)
class IndecomposabilityReport:
    verdict: str            # "yes" | "no" | "unknown"
    certified: bool
    detail: str


def is_indecomposable(M: AlgebraModule) -> IndecomposabilityReport:
    """Decide indecomposability from the endomorphism algebra.

    Over Q the radical of End(M) is the radical of the trace form of the
    action on M (valid in characteristic zero), and "yes" means the semisimple
    quotient is one-dimensional (absolute indecomposability).  "no" always
    exhibits a split.  Over F_p a "yes" beyond dim End = 1 is only the absence
    of a split in the search budget and is reported uncertified.
    """
    if M.is_zero():
        raise ModuleError("indecomposability of the zero module")
    H = hom_space(M, M)
    if len(H) == 1:
        return IndecomposabilityReport("yes", True, "End(M) = k")
    f = M.algebra.field
    if f.char == 0:
        gram = [[_total_trace(a.compose(b)) for b in H] for a in H]
        ss_dim = exactlin.rank(Matrix.build(f, gram))
        if ss_dim == 1:
            return IndecomposabilityReport(
                "yes", True, "End(M)/rad is one-dimensional")
        split = fitting_split(M)
        if split is not None:
            a, b = split
            return IndecomposabilityReport(
                "no", True,
                f"splits as dims {sorted(a.dims.items())} + {sorted(b.dims.items())}")
        return IndecomposabilityReport(
            "unknown", False,
            f"End(M)/rad has dimension {ss_dim} and no split was found")
    split = fitting_split(M)
    if split is not None:
        a, b = split
        return IndecomposabilityReport(
            "no", True,
            f"splits as dims {sorted(a.dims.items())} + {sorted(b.dims.items())}")
    return IndecomposabilityReport(
        "yes", False, "no split found (probabilistic over a finite field)")


def _total_trace(h: ModuleMorphism) -> object:
    f = h.source.algebra.field
    t = f.zero
    for v, m in h.components.items():
        for i in range(min(m.rows, m.cols)):
            t = f.add(t, m[i, i])
    return t


def indecomposable_summands(M: AlgebraModule, budget: int = 64) -> list:
    """Split M into summands until no further Fitting split is found."""
    if M.is_zero():
        return []
    stack = [M]
    out = []
    while stack and budget > 0:
        X = stack.pop()
        budget -= 1
        split = fitting_split(X)
        if split is None:
            out.append(X)
        else:
            stack.extend(split)
    out.extend(stack)
    return out
