"""Projective presentations, AR translates, extensions, AR-quiver enumeration.

tau is computed along the minimal-presentation route: apply the Nakayama
functor to p1 -> p0 and take the kernel.  The transpose Tr is implemented
independently (cokernel of the starred presentation map), which yields the
cross-check D(Tr m) = tau m for free.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import Algebra, Path
from .errors import CapExceededError, ContractViolation, NotCertifiableError
from .linalg import Matrix, Subspace, subspace_complement
from .rep import (
    Morphism,
    Representation,
    decompose,
    direct_sum,
    end_radical,
    hom_basis,
    hom_dim,
    image_subrep,
    is_isomorphic,
    kernel_subrep,
    quotient_rep,
    radical_subrep,
    restrict_through_inclusion,
    socle_subrep,
    zero_morphism,
    zero_rep,
)

DEFAULT_COUNT_CAP = 256
DEFAULT_DIM_CAP = 24


def projective(a: Algebra, i: int) -> Representation:
    memo = a.memo("projective")
    if i not in memo:
        memo[i] = a.projective(i)
    return memo[i]


def injective(a: Algebra, i: int) -> Representation:
    memo = a.memo("injective")
    if i not in memo:
        memo[i] = a.injective(i)
    return memo[i]


# -- sums of structural projectives with a summand registry -----------------------


@dataclass
class ProjSum:
    """A direct sum of P(i)'s remembering which vertex each copy came from."""

    algebra: Algebra
    vertices: Tuple[int, ...]
    rep: Representation
    inclusions: List[Morphism]
    projections: List[Morphism]

    @property
    def copies(self) -> int:
        return len(self.vertices)

    def is_zero(self) -> bool:
        return not self.vertices


def projective_sum(a: Algebra, vertices: Sequence[int]) -> ProjSum:
    parts = [projective(a, i) for i in vertices]
    ds = direct_sum(a, parts)
    return ProjSum(a, tuple(vertices), ds.total, ds.inclusions, ds.projections)


def _proj_copy_morphism(a: Algebra, i: int, x: Representation, vector: Sequence[Fraction]) -> Morphism:
    """The module map P(i) -> x sending the trivial path to the given vector."""
    p = projective(a, i)
    maps = []
    for v in a.quiver.vertices:
        cols = [x.path_matrix(path).apply(vector) for path in a.block_paths(i, v)]
        rows = [[cols[c][r] for c in range(len(cols))] for r in range(x.dims[v - 1])]
        maps.append(Matrix.from_rows(rows, cols=len(cols)))
    return Morphism(p, x, maps, verify=False)


def proj_sum_morphism(ps: ProjSum, x: Representation, vectors: Sequence[Sequence[Fraction]]) -> Morphism:
    """The map ps.rep -> x determined by one vector of x per projective copy."""
    if len(vectors) != ps.copies:
        raise ContractViolation("one vector per projective copy required")
    total = zero_morphism(ps.rep, x)
    for k, (i, vec) in enumerate(zip(ps.vertices, vectors)):
        total = total + (_proj_copy_morphism(ps.algebra, i, x, vec) @ ps.projections[k])
    return total


def hom_basis_from_projsum(ps: ProjSum, x: Representation) -> List[Morphism]:
    """Basis of Hom(ps.rep, x): dim Hom(P(i), x) = dim x_i, no solve needed."""
    out = []
    for k, i in enumerate(ps.vertices):
        d = x.dims[i - 1]
        for r in range(d):
            vec = [Fraction(0)] * d
            vec[r] = Fraction(1)
            out.append(_proj_copy_morphism(ps.algebra, i, x, vec) @ ps.projections[k])
    return out


# -- minimal presentations -----------------------------------------------------


@dataclass
class Presentation:
    """Minimal projective presentation p1 -> p0 ->> m."""

    m: Representation
    p0: ProjSum
    p1: ProjSum
    d: Morphism
    eps: Morphism
    syzygy: Representation
    syzygy_incl: Morphism


def projective_cover_map(m: Representation) -> Tuple[ProjSum, Morphism]:
    """p0 ->> m lifting a basis of top(m); eps induces an iso on tops."""
    a = m.algebra
    rad = radical_subrep(m)
    vertices: List[int] = []
    vectors: List[List[Fraction]] = []
    for v in a.quiver.vertices:
        comp = subspace_complement(rad.spaces[v - 1])
        for r in range(comp.dim):
            vertices.append(v)
            vectors.append(list(comp.basis.row(r)))
    ps = projective_sum(a, vertices)
    eps = proj_sum_morphism(ps, m, vectors)
    if not eps.is_surjective():
        raise ContractViolation("internal: projective cover map is not surjective")
    return ps, eps


def minimal_presentation(m: Representation) -> Presentation:
    memo = m.algebra.memo("presentation")
    key = m.key()
    if key in memo:
        return memo[key]
    p0, eps = projective_cover_map(m)
    ker = kernel_subrep(eps)
    syz, incl = ker.to_rep()
    if syz.is_zero():
        p1 = projective_sum(m.algebra, [])
        d = zero_morphism(p1.rep, p0.rep)
    else:
        p1, eps1 = projective_cover_map(syz)
        d = incl @ eps1
    # minimality: the image of d lies in rad p0
    radp0 = radical_subrep(p0.rep)
    img = image_subrep(d)
    for v in range(m.algebra.vertex_count):
        if not radp0.spaces[v].contains(img.spaces[v]):
            raise ContractViolation("internal: presentation is not minimal")
    pres = Presentation(m, p0, p1, d, eps, syz, incl)
    memo[key] = pres
    return pres


def g_vector(m: Representation) -> Tuple[int, ...]:
    """[p0] - [p1] in the projective basis of K0(proj A)."""
    pres = minimal_presentation(m)
    n = m.algebra.vertex_count
    g = [0] * n
    for i in pres.p0.vertices:
        g[i - 1] += 1
    for i in pres.p1.vertices:
        g[i - 1] -= 1
    return tuple(g)


def bracket(g: Sequence[int], d: Sequence[int]) -> int:
    """<[P], dim M> pairing; bilinear since dim Hom(P(i), M) = dim M_i."""
    if len(g) != len(d):
        raise ContractViolation("coordinate length mismatch")
    return sum(int(x) * int(y) for x, y in zip(g, d))


# -- duality, star, transpose ----------------------------------------------------


def dualize(m: Representation) -> Representation:
    """D(m) over the opposite algebra: transpose all matrices."""
    op = m.algebra.opposite()
    maps = {arrow.name: m.arrow_maps[arrow.name].transpose() for arrow in m.algebra.quiver.arrows}
    return Representation(op, m.dims, maps)


def dualize_morphism(f: Morphism) -> Morphism:
    """D is contravariant: a map X -> Y dualizes to D(Y) -> D(X)."""
    return Morphism(dualize(f.target), dualize(f.source),
                    [mat.transpose() for mat in f.maps], verify=False)


def right_multiplication(a: Algebra, s: int, t: int, element: Dict[Path, Fraction]) -> Morphism:
    """The map P(s) -> P(t) given by right multiplication with an element of
    span{paths t -> s} (the identification Hom(Ae_s, Ae_t) = e_s A e_t)."""
    ps, pt = projective(a, s), projective(a, t)
    maps = []
    for v in a.quiver.vertices:
        src_paths = a.block_paths(s, v)
        tgt_paths = a.block_paths(t, v)
        tgt_pos = {p: r for r, p in enumerate(tgt_paths)}
        rows = [[Fraction(0)] * len(src_paths) for _ in range(len(tgt_paths))]
        for c, q in enumerate(src_paths):
            for w, coeff in element.items():
                for res, c2 in a.reduce_path(Path(t, w.arrows + q.arrows)).items():
                    rows[tgt_pos[res]][c] += coeff * c2
        maps.append(Matrix.from_rows(rows, cols=len(src_paths)))
    return Morphism(ps, pt, maps, verify=False)


def star_of_presentation_map(pres: Presentation) -> Tuple[ProjSum, ProjSum, Morphism]:
    """(-)* = Hom(-, A) applied to d: p1 -> p0, yielding p0* -> p1* over A^op.

    Components of d are right multiplications by elements z of path blocks;
    their stars are right multiplications by the reversed elements.
    """
    a = pres.m.algebra
    op = a.opposite()
    op_p0 = projective_sum(op, pres.p0.vertices)
    op_p1 = projective_sum(op, pres.p1.vertices)
    dstar = zero_morphism(op_p0.rep, op_p1.rep)
    for b, i_b in enumerate(pres.p1.vertices):
        # d restricted to copy b, evaluated on its trivial path (vertex i_b):
        # locate that column inside p1's block at vertex i_b
        triv_paths = a.block_paths(i_b, i_b)
        triv_col = triv_paths.index(Path(i_b, ()))
        dmat_at_ib = pres.d.maps[i_b - 1]
        offset = 0
        for x in range(b):
            offset += projective(a, pres.p1.vertices[x]).dims[i_b - 1]
        copy_col = offset + triv_col
        row_offset = 0
        for aa, j_a in enumerate(pres.p0.vertices):
            block = a.block_paths(j_a, i_b)
            element: Dict[Path, Fraction] = {}
            for r, p in enumerate(block):
                coeff = dmat_at_ib[row_offset + r, copy_col]
                if coeff:
                    element[Path(i_b, tuple(reversed(p.arrows)))] = coeff
            row_offset += len(block)
            if element:
                comp = right_multiplication(op, j_a, i_b, element)
                dstar = dstar + (op_p1.inclusions[b] @ comp @ op_p0.projections[aa])
    return op_p0, op_p1, dstar


def transpose(m: Representation) -> Representation:
    """Tr(m) over the opposite algebra: the cokernel of d*; zero on projectives."""
    pres = minimal_presentation(m)
    if pres.p1.is_zero():
        return zero_rep(m.algebra.opposite())
    _, op_p1, dstar = star_of_presentation_map(pres)
    coker, _ = quotient_rep(op_p1.rep, image_subrep(dstar))
    return coker


def tau(m: Representation) -> Representation:
    """AR translate: kernel of nu(d) for a minimal presentation; 0 on projectives."""
    memo = m.algebra.memo("tau")
    key = m.key()
    if key in memo:
        return memo[key]
    pres = minimal_presentation(m)
    if pres.p1.is_zero():
        result = zero_rep(m.algebra)
    else:
        _, _, dstar = star_of_presentation_map(pres)
        nud = dualize_morphism(dstar)  # nu p1 -> nu p0 over the base algebra
        result, _ = kernel_subrep(nud).to_rep()
    memo[key] = result
    return result


def tau_kernel_inclusion(m: Representation) -> Tuple[Representation, Morphism]:
    """tau(m) together with its inclusion into nu(p1)."""
    pres = minimal_presentation(m)
    if pres.p1.is_zero():
        t = zero_rep(m.algebra)
        return t, zero_morphism(t, zero_rep(m.algebra))
    _, _, dstar = star_of_presentation_map(pres)
    nud = dualize_morphism(dstar)
    return kernel_subrep(nud).to_rep()


def tau_minus(m: Representation) -> Representation:
    """Inverse AR translate: Tr over the opposite, pulled back; 0 on injectives."""
    memo = m.algebra.memo("tau_minus")
    key = m.key()
    if key in memo:
        return memo[key]
    result = dualize(tau(dualize(m)))
    memo[key] = result
    return result


def nakayama_of_vertices(a: Algebra, vertices: Sequence[int]) -> Representation:
    """nu(sum of P(i)) = sum of I(i)."""
    return direct_sum(a, [injective(a, i) for i in vertices]).total


def nakayama_inverse_of_vertices(a: Algebra, vertices: Sequence[int]) -> Representation:
    return direct_sum(a, [projective(a, i) for i in vertices]).total


def injective_envelope_map(m: Representation) -> Morphism:
    """m -> E(m): dual of the projective cover of D(m)."""
    dm = dualize(m)
    _, eps_op = projective_cover_map(dm)
    env = dualize_morphism(eps_op)
    # source of env is D(D(m)), which is data-equal to m
    return Morphism(m, env.target, env.maps, verify=False)


def proj_dim_le1(m: Representation) -> bool:
    """projdim <= 1, with the injectives-to-tau cross-check asserted."""
    pres = minimal_presentation(m)
    primary = kernel_subrep(pres.d).is_zero()
    tm = tau(m)
    secondary = all(
        hom_dim(injective(m.algebra, i), tm) == 0 for i in m.algebra.quiver.vertices
    )
    if primary != secondary:
        raise ContractViolation("internal: projective dimension tests disagree")
    return primary


# -- Ext^1 spaces ------------------------------------------------------------------


@dataclass
class ExtClass:
    """An element of Ext^1(m, n): a map from the syzygy of m into n, taken
    modulo restrictions of maps p0 -> n.

    The presentation the syzygy came from rides along so a class can be
    realized against the exact same objects it was computed with.
    """

    m: Representation
    n: Representation
    theta: Morphism  # syzygy(m) -> n
    presentation: Optional["Presentation"] = None


@dataclass
class ExtSpace:
    m: Representation
    n: Representation
    dim: int
    classes: List[ExtClass]
    presentation: Presentation
    _flat_len: int
    _w_space: Subspace
    _rep_rows: List[tuple]

    def coords_of(self, theta: Morphism) -> Tuple[Fraction, ...]:
        """Coordinates of a class in the chosen complement basis."""
        if self.dim == 0:
            return ()
        flat = list(theta.flat())
        stack = [list(r) for r in self._rep_rows]
        w_rows = [list(self._w_space.basis.row(i)) for i in range(self._w_space.dim)]
        from .linalg import solve_linear as _solve

        mat = Matrix.from_rows(stack + w_rows, cols=self._flat_len).transpose()
        sol, _ = _solve(mat, Matrix.from_rows([[x] for x in flat], cols=1))
        if sol is None:
            raise ContractViolation("internal: class outside Hom space")
        return tuple(sol[i, 0] for i in range(self.dim))

    def class_from_coords(self, coords: Sequence[Fraction]) -> ExtClass:
        flat = [Fraction(0)] * self._flat_len
        for c, row in zip(coords, self._rep_rows):
            if c:
                flat = [x + c * y for x, y in zip(flat, row)]
        from .rep import morphism_from_flat

        theta = morphism_from_flat(self.presentation.syzygy, self.n, flat)
        return ExtClass(self.m, self.n, theta, self.presentation)


def ext1(m: Representation, n: Representation) -> ExtSpace:
    """Ext^1(m, n) via Hom(syzygy, n) modulo restrictions from p0.

    The dimension is cross-checked against the AR-formula count
    dim stable-Hom(n, tau m) (maps modulo those factoring through injectives);
    the two must agree.
    """
    if m.algebra is not n.algebra:
        raise ContractViolation("different algebras")
    memo = m.algebra.memo("ext1")
    key = (m.key(), n.key())
    if key in memo:
        return memo[key]
    pres = minimal_presentation(m)
    omega = pres.syzygy
    v_basis = hom_basis(omega, n)
    flat_len = len(zero_morphism(omega, n).flat())
    if not v_basis:
        space = ExtSpace(m, n, 0, [], pres, flat_len, Subspace.zero(max(flat_len, 0)), [])
    else:
        restrictions = []
        for phi in hom_basis_from_projsum(pres.p0, n):
            restrictions.append(list((phi @ pres.syzygy_incl).flat()))
        w_space = Subspace.from_rows(flat_len, restrictions)
        v_space = Subspace.from_rows(flat_len, [list(b.flat()) for b in v_basis])
        comp = subspace_complement(w_space, v_space)
        rep_rows = [comp.basis.row(i) for i in range(comp.dim)]
        from .rep import morphism_from_flat

        classes = [ExtClass(m, n, morphism_from_flat(omega, n, row), pres) for row in rep_rows]
        space = ExtSpace(m, n, comp.dim, classes, pres, flat_len, w_space, rep_rows)

    # AR-formula cross-check: dim Ext^1(m, n) = dim stable-Hom(n, tau m)
    tm = tau(m)
    full = hom_dim(n, tm)
    if full == 0:
        stable = 0
    else:
        env = injective_envelope_map(n)
        through = [list((psi @ env).flat()) for psi in hom_basis(env.target, tm)]
        flat_dim = len(zero_morphism(n, tm).flat())
        stable = full - Subspace.from_rows(flat_dim, through).dim
    if stable != space.dim:
        raise ContractViolation(
            f"internal: Ext dimension {space.dim} disagrees with stable Hom {stable}"
        )
    memo[key] = space
    return space


def ext_dim(m: Representation, n: Representation) -> int:
    return ext1(m, n).dim


def _combination_coefficients(composed: List[Morphism], target_flat: List[Fraction]) -> Optional[List[Fraction]]:
    """Coefficients c with sum c_k composed_k = target, or None."""
    if not composed:
        return [] if not any(target_flat) else None
    cols = [list(h.flat()) for h in composed]
    mat = Matrix.from_rows(cols, cols=len(target_flat)).transpose()
    from .linalg import solve_linear as _solve

    sol, _ = _solve(mat, Matrix.from_rows([[x] for x in target_flat], cols=1))
    if sol is None:
        return None
    return [sol[k, 0] for k in range(len(composed))]


def _assemble(cand: List[Morphism], coeffs: List[Fraction],
              src: Representation, tgt: Representation) -> Morphism:
    out = None
    for c, base in zip(coeffs, cand):
        if c:
            term = base.scale(c)
            out = term if out is None else out + term
    return out if out is not None else zero_morphism(src, tgt)


def factor_through(f: Morphism, g: Morphism, basis: Optional[List[Morphism]] = None) -> Optional[Morphism]:
    """h with g . h = f, for f: X -> Z and g: Y -> Z; None when impossible."""
    if f.source.algebra is not g.source.algebra:
        raise ContractViolation("different algebras")
    cand = basis if basis is not None else hom_basis(f.source, g.source)
    coeffs = _combination_coefficients([g @ h for h in cand], list(f.flat()))
    if coeffs is None:
        return None
    return _assemble(cand, coeffs, f.source, g.source)


def factor_left(phi: Morphism, f: Morphism, basis: Optional[List[Morphism]] = None) -> Optional[Morphism]:
    """g with g . f = phi, for phi: X -> W and f: X -> C; None when impossible."""
    if phi.source != f.source:
        raise ContractViolation("factor_left: sources differ")
    cand = basis if basis is not None else hom_basis(f.target, phi.target)
    coeffs = _combination_coefficients([h @ f for h in cand], list(phi.flat()))
    if coeffs is None:
        return None
    return _assemble(cand, coeffs, f.target, phi.target)


def realize_extension(c: ExtClass) -> Tuple[Representation, Morphism, Morphism]:
    """Short exact sequence 0 -> n -> e -> m -> 0 with class c (pushout of
    syzygy -> p0 along the representative)."""
    pres = c.presentation if c.presentation is not None else minimal_presentation(c.m)
    n = c.n
    ds = direct_sum(n.algebra, [n, pres.p0.rep])
    psi = (ds.inclusions[0] @ c.theta) - (ds.inclusions[1] @ pres.syzygy_incl)
    e, pi = quotient_rep(ds.total, image_subrep(psi))
    incl_n = pi @ ds.inclusions[0]
    g = pres.eps @ ds.projections[1]
    proj_maps = []
    for v in range(n.algebra.vertex_count):
        from .linalg import solve_linear as _solve

        sol, _ = _solve(pi.maps[v].transpose(), g.maps[v].transpose())
        if sol is None:
            raise ContractViolation("internal: extension projection failed")
        proj_maps.append(sol.transpose())
    proj_m = Morphism(e, c.m, proj_maps, verify=True)
    if not incl_n.is_injective() or not proj_m.is_surjective():
        raise ContractViolation("internal: realized sequence is not exact")
    if not (proj_m @ incl_n).is_zero():
        raise ContractViolation("internal: realized sequence does not compose to zero")
    if e.total_dim != n.total_dim + c.m.total_dim:
        raise ContractViolation("internal: middle term has wrong dimension")
    return e, incl_n, proj_m


def extension_class_of(seq_incl: Morphism, seq_proj: Morphism) -> ExtClass:
    """The class of an exact sequence 0 -> n -> e -> m -> 0."""
    n = seq_incl.source
    e = seq_incl.target
    m = seq_proj.target
    pres = minimal_presentation(m)
    lift = factor_through(pres.eps, seq_proj, hom_basis_from_projsum(pres.p0, e))
    if lift is None:
        raise ContractViolation("internal: projective lift failed")
    theta_into_e = lift @ pres.syzygy_incl
    theta = restrict_through_inclusion(seq_incl, theta_into_e)
    return ExtClass(m, n, theta)


# -- almost split sequences ---------------------------------------------------------


@dataclass
class ARSequence:
    start: Representation   # tau m
    middle: Representation
    end: Representation     # m
    incl: Morphism          # tau m -> middle
    proj: Morphism          # middle -> m


def _end_action_on_ext(space: ExtSpace, psi: Morphism) -> Matrix:
    """Matrix of the right action of psi in End(m) on Ext^1(m, n) coordinates
    (precompose representatives with the induced map on the syzygy)."""
    pres = space.presentation
    lifted = factor_through(psi @ pres.eps, pres.eps,
                            hom_basis_from_projsum(pres.p0, pres.p0.rep))
    if lifted is None:
        raise ContractViolation("internal: endomorphism does not lift")
    psi_omega = restrict_through_inclusion(pres.syzygy_incl, lifted @ pres.syzygy_incl)
    cols = []
    for cls in space.classes:
        cols.append(space.coords_of(cls.theta @ psi_omega))
    return Matrix.from_rows([[cols[c][r] for c in range(len(cols))] for r in range(space.dim)],
                            cols=space.dim)


def ar_sequence(m: Representation, seed: int = 0) -> ARSequence:
    """The almost split sequence ending at an indecomposable non-projective m.

    The class is the unique (up to scalar) element of Ext^1(m, tau m)
    annihilated by rad End(m); socle dimension != 1 means the certificate
    fails (non-split End) and raises instead of guessing.
    """
    tm = tau(m)
    if tm.is_zero():
        raise ContractViolation("projective modules have no almost split sequence")
    space = ext1(m, tm)
    if space.dim == 0:
        raise ContractViolation("internal: Ext^1(m, tau m) = 0 for non-projective m")
    endo = hom_basis(m, m)
    rad = end_radical(m, endo)
    if len(endo) - len(rad) != 1:
        raise NotCertifiableError("cannot certify almost split sequence: End not split local")
    if not rad:
        socle_dim = space.dim
        coords = (Fraction(1),) + (Fraction(0),) * (space.dim - 1)
    else:
        rows = []
        for psi in rad:
            act = _end_action_on_ext(space, psi)
            for r in range(act.rows):
                rows.append(list(act.row(r)))
        from .linalg import kernel_basis as _kernel

        ker = _kernel(Matrix.from_rows(rows, cols=space.dim))
        socle_dim = ker.dim
        coords = tuple(ker.basis.row(0)) if ker.dim else ()
    if socle_dim != 1:
        raise NotCertifiableError(
            f"cannot certify almost split sequence: socle dimension {socle_dim} != 1"
        )
    cls = space.class_from_coords(coords)
    e, incl, proj = realize_extension(cls)
    return ARSequence(tm, e, m, incl, proj)


# -- enumeration of indecomposables ---------------------------------------------------


@dataclass
class ARSequenceData:
    end: int
    start: int
    middle: List[int]


class ARQuiverData:
    """The enumerated indecomposables of a representation-finite algebra with
    tau links, AR sequences, and the irreducible-arrow multiset."""

    def __init__(self, algebra: Algebra):
        self.algebra = algebra
        self.indecomposables: List[Representation] = []
        self.labels: List[str] = []
        self.tau_links: Dict[int, int] = {}
        self.tau_inv_links: Dict[int, int] = {}
        self.sequences: Dict[int, ARSequenceData] = {}
        self.arrows: Dict[Tuple[int, int], int] = {}
        self.projective_vertex: Dict[int, int] = {}
        self.injective_vertex: Dict[int, int] = {}
        self._label_counts: Dict[str, int] = {}
        self._hom_table: Optional[List[List[int]]] = None
        self._ext_table: Optional[List[List[int]]] = None

    @property
    def count(self) -> int:
        return len(self.indecomposables)

    def label_of(self, idx: int) -> str:
        return self.labels[idx]

    def index_of(self, m: Representation, seed: int = 0) -> Optional[int]:
        for i, x in enumerate(self.indecomposables):
            if x.dims == m.dims and is_isomorphic(x, m, seed):
                return i
        return None

    def add(self, m: Representation) -> int:
        base = m.dim_label()
        suffix = "'" * self._label_counts.get(base, 0)
        self._label_counts[base] = self._label_counts.get(base, 0) + 1
        self.indecomposables.append(m)
        self.labels.append(base + suffix)
        return len(self.indecomposables) - 1

    # -- cached pairwise tables ------------------------------------------------

    def hom_table(self) -> List[List[int]]:
        if self._hom_table is None:
            n = self.count
            self._hom_table = [
                [hom_dim(self.indecomposables[i], self.indecomposables[j]) for j in range(n)]
                for i in range(n)
            ]
        return self._hom_table

    def hom_to_tau(self, i: int, j: int) -> int:
        """dim Hom(X_i, tau X_j); zero when X_j is projective."""
        if j in self.projective_vertex:
            return 0
        return self.hom_table()[i][self.tau_links[j]]

    def ext_table(self) -> List[List[int]]:
        if self._ext_table is None:
            n = self.count
            self._ext_table = [
                [ext_dim(self.indecomposables[i], self.indecomposables[j]) for j in range(n)]
                for i in range(n)
            ]
        return self._ext_table

    def to_json(self) -> dict:
        from .rep import rep_to_json

        return {
            "algebra": self.algebra.content_hash(),
            "indecomposables": [
                {"label": self.labels[i], "dims": list(x.dims), "rep": rep_to_json(x)}
                for i, x in enumerate(self.indecomposables)
            ],
            "tau": {str(k): v for k, v in sorted(self.tau_links.items())},
            "sequences": [
                {"end": s.end, "start": s.start, "middle": sorted(s.middle)}
                for _, s in sorted(self.sequences.items())
            ],
            "arrows": [[i, j, mult] for (i, j), mult in sorted(self.arrows.items())],
            "projectives": {str(k): v for k, v in sorted(self.projective_vertex.items())},
            "injectives": {str(k): v for k, v in sorted(self.injective_vertex.items())},
        }


def enumerate_indecomposables(a: Algebra, count_cap: int = DEFAULT_COUNT_CAP,
                              dim_cap: int = DEFAULT_DIM_CAP, seed: int = 0) -> ARQuiverData:
    """Neighbor closure from the projectives.

    Neighbors of X: summands of rad X (X projective), summands of X/soc X
    (X injective), tau X and the AR middle at X (X non-projective), tau- X
    (X non-injective).  On representation-finite input this walks every mesh;
    cap overruns raise CapExceededError.
    """
    memo = a.memo("ar_quiver")
    memo_key = (count_cap, dim_cap, seed)
    if memo_key in memo:
        return memo[memo_key]

    data = ARQuiverData(a)
    if a.is_zero:
        memo[memo_key] = data
        return data

    projectives = {i: projective(a, i) for i in a.quiver.vertices}
    injectives = {i: injective(a, i) for i in a.quiver.vertices}

    def find_or_add(m: Representation) -> int:
        idx = data.index_of(m, seed)
        if idx is not None:
            return idx
        if m.total_dim > dim_cap or data.count + 1 > count_cap:
            raise CapExceededError("not representation-finite within caps")
        idx = data.add(m)
        queue.append(idx)
        return idx

    queue: deque = deque()
    for i in a.quiver.vertices:
        find_or_add(projectives[i])

    while queue:
        idx = queue.popleft()
        x = data.indecomposables[idx]
        proj_v = next((i for i, p in projectives.items()
                       if p.dims == x.dims and is_isomorphic(p, x, seed)), None)
        inj_v = next((i for i, p in injectives.items()
                      if p.dims == x.dims and is_isomorphic(p, x, seed)), None)
        if proj_v is not None:
            data.projective_vertex[idx] = proj_v
        if inj_v is not None:
            data.injective_vertex[idx] = inj_v

        if proj_v is not None:
            rad_rep, _ = radical_subrep(x).to_rep()
            if not rad_rep.is_zero():
                for part, mult in decompose(rad_rep, seed).factors:
                    j = find_or_add(part)
                    data.arrows[(j, idx)] = data.arrows.get((j, idx), 0) + mult
        else:
            tm = tau(x)
            if x.total_dim + tm.total_dim > dim_cap:
                raise CapExceededError("not representation-finite within caps")
            seq = ar_sequence(x, seed)
            t_idx = find_or_add(seq.start)
            data.tau_links[idx] = t_idx
            data.tau_inv_links[t_idx] = idx
            middle_ids: List[int] = []
            for part, mult in decompose(seq.middle, seed).factors:
                j = find_or_add(part)
                middle_ids.extend([j] * mult)
                data.arrows[(j, idx)] = data.arrows.get((j, idx), 0) + mult
            data.sequences[idx] = ARSequenceData(idx, t_idx, middle_ids)

        if inj_v is None:
            tminus = tau_minus(x)
            find_or_add(tminus)
        else:
            soc = socle_subrep(x)
            quot, _ = quotient_rep(x, soc)
            if not quot.is_zero():
                for part, _ in decompose(quot, seed).factors:
                    find_or_add(part)

    memo[memo_key] = data
    return data
