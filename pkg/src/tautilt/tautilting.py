"""Torsion classes, tau-rigidity, Bongartz completions, mutation, Hasse quivers.

Class-level operations represent torsion classes extensionally as sets of
indecomposables from a completed AR enumeration, so they are confined to
representation-finite algebras; the finiteness probe and the exchange-sequence
mutation work without enumeration and detect the boundary honestly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .algebra import Algebra, quotient_by_vertices
from .errors import CapExceededError, ContractViolation, DomainError
from .homology import (
    ARQuiverData,
    ExtClass,
    Presentation,
    enumerate_indecomposables,
    ext1,
    factor_left,
    projective,
    projective_sum,
    proj_dim_le1,
    realize_extension,
    tau,
    tau_minus,
    transpose,
)
from .linalg import Matrix
from .rep import (
    Morphism,
    Representation,
    cokernel,
    decompose,
    direct_sum,
    end_radical,
    extend_from_quotient,
    hom_basis,
    hom_dim,
    image_subrep,
    in_gen,
    is_isomorphic,
    iso_test,
    quotient_rep,
    restrict_to_quotient,
    sub_sum,
    support_rank,
    trace_and_reject,
    zero_morphism,
    zero_rep,
)

ORACLE_MAX_INDECS = 20
DEFAULT_VERTEX_CAP = 256


# --------------------------------------------------------------------------
# module classes over an enumeration
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ModuleClass:
    """add(sum of members): an extensional module class over an AR index."""

    ar: ARQuiverData
    members: FrozenSet[int]

    def reps(self) -> List[Representation]:
        return [self.ar.indecomposables[i] for i in sorted(self.members)]

    def labels(self) -> List[str]:
        return sorted(self.ar.labels[i] for i in self.members)

    @property
    def size(self) -> int:
        return len(self.members)

    def support_vertices(self) -> Set[int]:
        out = set()
        for i in self.members:
            for v, d in enumerate(self.ar.indecomposables[i].dims, start=1):
                if d:
                    out.add(v)
        return out

    def support_rank(self) -> int:
        return len(self.support_vertices())


@dataclass(frozen=True)
class TorsionPairData:
    torsion: ModuleClass
    torsion_free: ModuleClass


def perp_right(cls: ModuleClass) -> ModuleClass:
    """cls^{perp0}: everything receiving no map from cls."""
    hom = cls.ar.hom_table()
    out = frozenset(
        y for y in range(cls.ar.count) if all(hom[x][y] == 0 for x in cls.members)
    )
    return ModuleClass(cls.ar, out)


def perp_left(cls: ModuleClass) -> ModuleClass:
    """{}^{perp0} cls: everything mapping nowhere into cls."""
    hom = cls.ar.hom_table()
    out = frozenset(
        x for x in range(cls.ar.count) if all(hom[x][y] == 0 for y in cls.members)
    )
    return ModuleClass(cls.ar, out)


def is_torsion_class(cls: ModuleClass) -> Tuple[bool, Optional[int]]:
    """Double-perp fixpoint test; the witness is a differing indecomposable."""
    double = perp_left(perp_right(cls))
    if double.members == cls.members:
        return True, None
    return False, min(double.members.symmetric_difference(cls.members))


def torsion_pair_of(cls: ModuleClass) -> TorsionPairData:
    ok, witness = is_torsion_class(cls)
    if not ok:
        raise DomainError(f"not a torsion class (witness indecomposable {witness})")
    return TorsionPairData(cls, perp_right(cls))


def enumerate_torsion_classes_oracle(ar: ARQuiverData) -> List[ModuleClass]:
    """Brute-force oracle: all double-perp fixpoint subsets, by a 2^n scan.

    Deliberately desk-scale; refuses beyond ORACLE_MAX_INDECS indecomposables.
    Result is sorted by descending size (the full class first), then labels.
    """
    n = ar.count
    if n > ORACLE_MAX_INDECS:
        raise DomainError(
            f"oracle is a 2^n subset scan; {n} indecomposables exceed the limit {ORACLE_MAX_INDECS}"
        )
    hom = ar.hom_table()
    out_mask = [0] * n   # y-sets hit from x
    in_mask = [0] * n    # x-sets hitting y
    for x in range(n):
        for y in range(n):
            if hom[x][y]:
                out_mask[x] |= 1 << y
                in_mask[y] |= 1 << x
    full = (1 << n) - 1
    total = 1 << n
    dp_out = [0] * total
    dp_in = [0] * total
    for s in range(1, total):
        low = s & (-s)
        rest = s & (s - 1)
        dp_out[s] = dp_out[rest] | out_mask[low.bit_length() - 1]
        dp_in[s] = dp_in[rest] | in_mask[low.bit_length() - 1]
    classes = []
    for s in range(total):
        f = full & ~dp_out[s]
        if (full & ~dp_in[f]) == s:
            classes.append(s)
    out = [
        ModuleClass(ar, frozenset(i for i in range(n) if s >> i & 1)) for s in classes
    ]
    out.sort(key=lambda c: (-c.size, c.labels()))
    return out


def gen_cogen_class(m, ar: ARQuiverData) -> Tuple[ModuleClass, ModuleClass]:
    """(gen, cogen) of a module or a list of modules, extensionally."""
    gens = list(m) if isinstance(m, (list, tuple)) else [m]
    gens = [g for g in gens if not g.is_zero()]
    gen_members = set()
    cogen_members = set()
    for i, x in enumerate(ar.indecomposables):
        if not gens:
            continue
        tr, rj = trace_and_reject(gens, x)
        if tr.is_full():
            gen_members.add(i)
        if rj.is_zero():
            cogen_members.add(i)
    return ModuleClass(ar, frozenset(gen_members)), ModuleClass(ar, frozenset(cogen_members))


def gen_class(m, ar: ARQuiverData) -> ModuleClass:
    return gen_cogen_class(m, ar)[0]


def torsion_theory_of(cls: ModuleClass, x: Representation):
    """The canonical sequence 0 -> tX -> X -> X/tX -> 0 for a torsion class."""
    ok, witness = is_torsion_class(cls)
    if not ok:
        raise DomainError(f"not a torsion class (witness indecomposable {witness})")
    gens = cls.reps()
    if not gens:
        from .rep import SubRep
        from .linalg import Subspace

        tx = SubRep(x, [Subspace.zero(d) for d in x.dims], check=False)
    else:
        tx = trace_and_reject(gens, x)[0]
    quot, _ = quotient_rep(x, tx)
    return tx, quot


# --------------------------------------------------------------------------
# rigidity and Ext-projectives
# --------------------------------------------------------------------------


def is_tau_rigid(t: Representation, kill: Optional[Set[int]] = None) -> bool:
    """Hom(T, tau T) = 0; the pair form additionally needs Hom(P, T) = 0,
    i.e. T vanishing on the killed vertices."""
    if not t.is_zero() and hom_dim(t, tau(t)) != 0:
        return False
    if kill:
        return all(t.dims[v - 1] == 0 for v in kill)
    return True


def ext_projectives_in(cls: ModuleClass) -> ModuleClass:
    """{X in cls : Ext^1(X, cls) = 0}, via the exact Ext table."""
    ext = cls.ar.ext_table()
    out = frozenset(
        x for x in cls.members if all(ext[x][y] == 0 for y in cls.members)
    )
    return ModuleClass(cls.ar, out)


def ext_injectives_in(cls: ModuleClass) -> ModuleClass:
    """{X in cls : Ext^1(cls, X) = 0}."""
    ext = cls.ar.ext_table()
    out = frozenset(
        x for x in cls.members if all(ext[y][x] == 0 for y in cls.members)
    )
    return ModuleClass(cls.ar, out)


def ext_projectives(cls: ModuleClass) -> ModuleClass:
    """P(T) for a torsion class, by the Auslander-Smalo test
    Hom(cls, tau X) = 0; cross-checked against the Ext table."""
    ar = cls.ar
    out = frozenset(
        x for x in cls.members
        if all(ar.hom_to_tau(y, x) == 0 for y in cls.members)
    )
    direct = ext_projectives_in(cls).members
    if out != direct:
        raise ContractViolation("internal: Auslander-Smalo test disagrees with Ext table")
    return ModuleClass(ar, out)


def ext_injectives(cls: ModuleClass) -> ModuleClass:
    """I(F) for a torsion-free class: X with tau^- X in the torsion side,
    i.e. Hom(tau^- X, cls) = 0; cross-checked against the Ext table."""
    ar = cls.ar
    hom = ar.hom_table()
    out = set()
    for x in cls.members:
        if x in ar.injective_vertex:
            out.add(x)
            continue
        tminus = ar.tau_inv_links.get(x)
        if tminus is None:
            tm_rep = tau_minus(ar.indecomposables[x])
            tminus = ar.index_of(tm_rep)
        if all(hom[tminus][y] == 0 for y in cls.members):
            out.add(x)
    direct = ext_injectives_in(cls).members
    if frozenset(out) != direct:
        raise ContractViolation("internal: dual Auslander-Smalo test disagrees with Ext table")
    return ModuleClass(ar, frozenset(out))


# --------------------------------------------------------------------------
# tilting
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TiltingCheck:
    partial_tilting: bool
    tilting: bool
    summands: int


def tilting_checks(t: Representation) -> TiltingCheck:
    """partial tilting = rigid + projdim <= 1; tilting adds #T = #A."""
    if t.is_zero():
        return TiltingCheck(True, t.algebra.vertex_count == 0, 0)
    partial = ext1(t, t).dim == 0 and proj_dim_le1(t)
    count = decompose(t).summand_count
    return TiltingCheck(partial, partial and count == t.algebra.vertex_count, count)


def _summed_presentation(pres: Presentation, n: int) -> Presentation:
    """The direct sum of n copies of a minimal presentation (sums of minimal
    maps are minimal)."""
    a = pres.m.algebra
    m_n = direct_sum(a, [pres.m] * n)
    p0_n = projective_sum(a, tuple(pres.p0.vertices) * n)
    p1_n = projective_sum(a, tuple(pres.p1.vertices) * n)
    syz = direct_sum(a, [pres.syzygy] * n)

    def block(base: Morphism) -> List[Matrix]:
        return [Matrix.block_diag([base.maps[v]] * n) for v in range(a.vertex_count)]

    d = Morphism(p1_n.rep, p0_n.rep, block(pres.d), verify=False)
    eps = Morphism(p0_n.rep, m_n.total, block(pres.eps), verify=False)
    incl = Morphism(syz.total, p0_n.rep, block(pres.syzygy_incl), verify=False)
    return Presentation(m_n.total, p0_n, p1_n, d, eps, syz.total, incl)


def bongartz_tilting(m: Representation) -> Representation:
    """Classical Bongartz completion via the universal extension of a basis
    of Ext^1(m, A); the result is basic and certified tilting."""
    checks = tilting_checks(m)
    if not checks.partial_tilting:
        raise DomainError("bongartz_tilting requires a partial tilting module")
    a = m.algebra
    a_rep = direct_sum(a, [projective(a, i) for i in a.quiver.vertices]).total
    space = ext1(m, a_rep)
    if space.dim == 0:
        e = a_rep
    else:
        n = space.dim
        pres_n = _summed_presentation(space.presentation, n)
        syz_parts = direct_sum(a, [space.presentation.syzygy] * n)
        theta = zero_morphism(pres_n.syzygy, a_rep)
        for i, cls in enumerate(space.classes):
            theta = theta + (cls.theta @ syz_parts.projections[i])
        univ = ExtClass(pres_n.m, a_rep, theta, pres_n)
        e, _, _ = realize_extension(univ)
    combined = direct_sum(a, [e, m]).total
    parts = decompose(combined).factors
    result = direct_sum(a, [p for p, _ in parts]).total
    final = tilting_checks(result)
    if not final.tilting:
        raise ContractViolation("internal: Bongartz completion failed the tilting check")
    return result


def bongartz_tau(u: Representation, ar: ARQuiverData) -> ModuleClass:
    """P(perp0(tau u)): the tau-tilting Bongartz completion of a tau-rigid u."""
    if not is_tau_rigid(u):
        raise DomainError("bongartz_tau requires a tau-rigid module")
    tu = tau(u)
    members = frozenset(
        i for i in range(ar.count) if hom_dim(ar.indecomposables[i], tu) == 0
    )
    cls = ModuleClass(ar, members)
    ok, witness = is_torsion_class(cls)
    if not ok:
        raise ContractViolation(f"internal: perp class not torsion (witness {witness})")
    if cls.support_rank() != ar.algebra.vertex_count:
        raise ContractViolation("internal: Bongartz class is not sincere")
    result = ext_projectives(cls)
    if len(result.members) != ar.algebra.vertex_count:
        raise ContractViolation("internal: Bongartz completion has wrong summand count")
    # u must embed into add(result)
    for part, _ in decompose(u).factors:
        if all(iso_test(part, ar.indecomposables[i]) is None for i in result.members):
            raise ContractViolation("internal: input lost by Bongartz completion")
    # gen(result) = perp0(tau result)
    summed = direct_sum(ar.algebra, result.reps()).total
    gen_side = gen_class(result.reps(), ar).members
    perp_side = frozenset(
        i for i in range(ar.count)
        if all(ar.hom_to_tau(i, j) == 0 for j in result.members)
    )
    if gen_side != perp_side:
        raise ContractViolation("internal: gen(T) != perp0(tau T) for Bongartz completion")
    if not is_tau_rigid(summed):
        raise ContractViolation("internal: Bongartz completion not tau-rigid")
    return result


# --------------------------------------------------------------------------
# support tau-tilting pairs
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SupportTauTiltingPair:
    """(T, P): basic tau-rigid module plus killed projective vertices with
    #T + #P = #A."""

    algebra: Algebra
    summands: Tuple[Representation, ...]
    kill: FrozenSet[int]
    ids: Optional[Tuple[int, ...]] = None

    def key(self):
        if self.ids is not None:
            return (tuple(sorted(self.ids)), tuple(sorted(self.kill)))
        return (
            tuple(sorted(r.key() for r in self.summands)),
            tuple(sorted(self.kill)),
        )

    def label(self, ar: Optional[ARQuiverData] = None) -> str:
        if self.ids is not None and ar is not None:
            mods = sorted(ar.labels[i] for i in self.ids)
        else:
            mods = sorted(r.dim_label() for r in self.summands)
        body = "+".join(mods) if mods else "0"
        if self.kill:
            body += " | kill " + ",".join(str(v) for v in sorted(self.kill))
        return body

    @property
    def summand_count(self) -> int:
        return len(self.summands)


def pair_from_ids(ar: ARQuiverData, ids: Sequence[int], kill: Sequence[int]) -> SupportTauTiltingPair:
    return SupportTauTiltingPair(
        ar.algebra,
        tuple(ar.indecomposables[i] for i in sorted(ids)),
        frozenset(kill),
        tuple(sorted(ids)),
    )


def check_pair(pair: SupportTauTiltingPair, ar: Optional[ARQuiverData] = None) -> None:
    """Assert the support tau-tilting pair axioms exactly."""
    a = pair.algebra
    n = a.vertex_count
    if len(pair.summands) + len(pair.kill) != n:
        raise DomainError("#T + #P != #A")
    for i, x in enumerate(pair.summands):
        for v in pair.kill:
            if x.dims[v - 1] != 0:
                raise DomainError("Hom(P, T) != 0: summand supported on a killed vertex")
        for y in pair.summands[i + 1:]:
            if x.dims == y.dims and is_isomorphic(x, y):
                raise DomainError("pair is not basic")
    total = direct_sum(a, list(pair.summands)).total
    if not is_tau_rigid(total):
        raise DomainError("module part is not tau-rigid")


def support_tau_tilting_check(t: Representation) -> bool:
    """tau-rigid T is support tau-tilting iff #T = supportrank T."""
    if not is_tau_rigid(t):
        raise DomainError("not tau-rigid")
    if t.is_zero():
        return True
    return decompose(t).summand_count == support_rank(t)


def complete_pair(t: Representation, ar: ARQuiverData) -> SupportTauTiltingPair:
    """The pair (T, P) with P maximal projective with Hom(P, T) = 0."""
    if not support_tau_tilting_check(t):
        raise DomainError("#T != supportrank T: completion refused")
    kill = frozenset(
        v for v in t.algebra.quiver.vertices if t.is_zero() or t.dims[v - 1] == 0
    )
    ids = []
    for part, _ in ([] if t.is_zero() else decompose(t).factors):
        idx = ar.index_of(part)
        if idx is None:
            raise DomainError("summand not found in the AR index")
        ids.append(idx)
    pair = pair_from_ids(ar, ids, kill)
    check_pair(pair, ar)
    return pair


def pair_torsion_class(pair: SupportTauTiltingPair, ar: ARQuiverData) -> ModuleClass:
    if pair.ids is None:
        raise ContractViolation("pair is not indexed against this enumeration")
    return gen_class([ar.indecomposables[i] for i in pair.ids], ar)


def _class_to_pair(cls: ModuleClass) -> SupportTauTiltingPair:
    """The support tau-tilting pair of a functorially finite torsion class."""
    ar = cls.ar
    p = ext_projectives(cls)
    kill = frozenset(set(ar.algebra.quiver.vertices) - cls.support_vertices())
    return pair_from_ids(ar, sorted(p.members), kill)


@dataclass(frozen=True)
class MutationResult:
    pair: SupportTauTiltingPair
    direction: str                  # "left" or "right"
    removed: Optional[str]
    added: Optional[str]


def mutate(pair: SupportTauTiltingPair, ar: ARQuiverData, k) -> MutationResult:
    """Replace one summand (module or killed vertex) by the unique alternative.

    k is ("module", ar-index of a summand) or ("vertex", killed vertex).
    Both candidate torsion classes of the almost complete pair are computed;
    the completion differing from the input is returned, with the direction
    flag (left iff the removed module is outside gen of the rest).
    """
    if pair.ids is None:
        raise ContractViolation("pair is not indexed against this enumeration")
    kind, which = k
    if kind == "module":
        if which not in pair.ids:
            raise DomainError(f"index {which} is not a summand of the pair")
        u_ids = tuple(i for i in pair.ids if i != which)
        q_kill = set(pair.kill)
    elif kind == "vertex":
        if which not in pair.kill:
            raise DomainError(f"vertex {which} is not killed by the pair")
        u_ids = pair.ids
        q_kill = set(pair.kill) - {which}
    else:
        raise ContractViolation("k must be ('module', id) or ('vertex', v)")

    u_reps = [ar.indecomposables[i] for i in u_ids]
    c1 = gen_class(u_reps, ar)
    c2_members = frozenset(
        y for y in range(ar.count)
        if all(ar.hom_to_tau(y, u) == 0 for u in u_ids)
        and all(ar.indecomposables[y].dims[v - 1] == 0 for v in q_kill)
    )
    c2 = ModuleClass(ar, c2_members)
    if c1.members == c2.members:
        raise ContractViolation("internal: the two completions coincide")
    pair1 = _class_to_pair(c1)
    pair2 = _class_to_pair(c2)
    if pair1.key() == pair.key():
        other, direction = pair2, "right"
    elif pair2.key() == pair.key():
        other, direction = pair1, "left"
    else:
        raise ContractViolation("internal: input pair is neither completion")
    removed = ar.labels[which] if kind == "module" else f"P({which})"
    added_ids = set(other.ids or ()) - set(pair.ids)
    added = ar.labels[next(iter(added_ids))] if added_ids else None
    check_pair(other, ar)
    return MutationResult(other, direction, removed, added)


# --------------------------------------------------------------------------
# envelopes, covers, exchange sequences
# --------------------------------------------------------------------------


def add_preenvelope(x: Representation, types: Sequence[Representation]) -> Tuple[Morphism, List[int]]:
    """The stacked map x -> sum of W^{dim Hom(x, W)}: an add(U)-preenvelope.

    Returns the map and the list of type indices, one per codomain copy.
    """
    legs: List[Morphism] = []
    owners: List[int] = []
    for t_idx, w in enumerate(types):
        for phi in hom_basis(x, w):
            legs.append(phi)
            owners.append(t_idx)
    if not legs:
        target = zero_rep(x.algebra)
        return zero_morphism(x, target), []
    ds = direct_sum(x.algebra, [types[o] for o in owners])
    total = zero_morphism(x, ds.total)
    for leg, inc in zip(legs, ds.inclusions):
        total = total + (inc @ leg)
    return total, owners


def _is_preenvelope(f: Morphism, types: Sequence[Representation]) -> bool:
    """Every map from f.source into each type must factor through f."""
    for w in types:
        for phi in hom_basis(f.source, w):
            if factor_left(phi, f) is None:
                return False
    return True


def minimize_preenvelope(f: Morphism, owners: List[int], types: Sequence[Representation]) -> Tuple[Morphism, List[int]]:
    """Greedy copy removal with a factoring re-check after each removal,
    producing a codomain-minimal preenvelope (the envelope)."""
    current_owners = list(owners)
    current = f

    def rebuild(keep: List[int]) -> Tuple[Morphism, List[int]]:
        kept_types = [current_owners[i] for i in keep]
        ds = direct_sum(f.source.algebra, [types[current_owners[i]] for i in keep])
        maps = []
        for v in range(f.source.algebra.vertex_count):
            rows = []
            offset = 0
            spans = []
            for i, o in enumerate(current_owners):
                d = types[o].dims[v]
                spans.append((offset, offset + d, i))
                offset += d
            for lo, hi, i in spans:
                if i in keep:
                    for r in range(lo, hi):
                        rows.append(list(current.maps[v].row(r)))
            maps.append(Matrix.from_rows(rows, cols=f.source.dims[v]))
        return Morphism(f.source, ds.total, maps, verify=False), kept_types

    changed = True
    while changed:
        changed = False
        for drop in range(len(current_owners)):
            keep = [i for i in range(len(current_owners)) if i != drop]
            cand, cand_owners = rebuild(keep)
            if _is_preenvelope(cand, types):
                current, current_owners = cand, cand_owners
                changed = True
                break
    return current, current_owners


def add_precover(x: Representation, types: Sequence[Representation]) -> Tuple[Morphism, List[int]]:
    """The stacked map sum of W^{dim Hom(W, x)} -> x: an add(U)-precover."""
    legs: List[Morphism] = []
    owners: List[int] = []
    for t_idx, w in enumerate(types):
        for phi in hom_basis(w, x):
            legs.append(phi)
            owners.append(t_idx)
    if not legs:
        source = zero_rep(x.algebra)
        return zero_morphism(source, x), []
    ds = direct_sum(x.algebra, [types[o] for o in owners])
    total = zero_morphism(ds.total, x)
    for leg, proj in zip(legs, ds.projections):
        total = total + (leg @ proj)
    return total, owners


def _is_precover(f: Morphism, types: Sequence[Representation]) -> bool:
    """Every map from each type into f.target must factor through f."""
    from .homology import factor_through

    for w in types:
        for phi in hom_basis(w, f.target):
            if factor_through(phi, f) is None:
                return False
    return True


def minimize_precover(f: Morphism, owners: List[int], types: Sequence[Representation]) -> Tuple[Morphism, List[int]]:
    """Greedy domain-copy removal: the result is a domain-minimal precover,
    i.e. the add(U)-cover."""
    current_owners = list(owners)
    current = f

    def rebuild(keep: List[int]) -> Tuple[Morphism, List[int]]:
        kept_types = [current_owners[i] for i in keep]
        ds = direct_sum(f.target.algebra, [types[current_owners[i]] for i in keep])
        maps = []
        for v in range(f.target.algebra.vertex_count):
            spans = []
            offset = 0
            for i, o in enumerate(current_owners):
                d = types[o].dims[v]
                spans.append((offset, offset + d, i))
                offset += d
            cols = []
            for lo, hi, i in spans:
                if i in keep:
                    cols.extend(range(lo, hi))
            rows = [
                [current.maps[v][r, c] for c in cols]
                for r in range(f.target.dims[v])
            ]
            maps.append(Matrix.from_rows(rows, cols=len(cols)))
        return Morphism(ds.total, f.target, maps, verify=False), kept_types

    changed = True
    while changed:
        changed = False
        for drop in range(len(current_owners)):
            keep = [i for i in range(len(current_owners)) if i != drop]
            cand, cand_owners = rebuild(keep)
            if _is_precover(cand, types):
                current, current_owners = cand, cand_owners
                changed = True
                break
    return current, current_owners


def add_cover(x: Representation, types: Sequence[Representation]) -> Morphism:
    """A domain-minimal right add(U)-approximation of x."""
    pre, owners = add_precover(x, types)
    cover, _ = minimize_precover(pre, owners, types)
    return cover


@dataclass
class ExchangeResult:
    f: Morphism                       # the add(U)-envelope of x
    y: Representation                 # cokernel (zero when U is not sincere)
    new_summands: List[Representation]
    dead_vertices: Set[int]           # vertices dropped into the kill set


def exchange_step(u_summands: Sequence[Representation], x: Representation) -> ExchangeResult:
    """One left mutation by the exchange sequence x -> U' -> y -> 0."""
    a = x.algebra
    types = list(u_summands)
    pre, owners = add_preenvelope(x, types)
    env, env_owners = minimize_preenvelope(pre, owners, types)
    y, _ = cokernel(env)
    if y.is_zero():
        support = set()
        for u in types:
            support |= {v for v in a.quiver.vertices if u.dims[v - 1] > 0}
        dead = {v for v in a.quiver.vertices if v not in support}
        if len(dead) != 1:
            raise ContractViolation("internal: exactly one vertex must die")
        return ExchangeResult(env, y, list(types), dead)
    parts = decompose(y).factors
    if len(parts) != 1 or parts[0][1] != 1:
        raise ContractViolation("internal: exchange cokernel is not indecomposable")
    y_indec = parts[0][0]
    for u in types:
        if u.dims == y_indec.dims and is_isomorphic(u, y_indec):
            raise ContractViolation("internal: exchange produced an existing summand")
    return ExchangeResult(env, y_indec, list(types) + [y_indec], set())


def exchange_sequence(t: Representation, x: Representation) -> ExchangeResult:
    """Spec-level form: t tau-tilting with summand x; U = t minus x."""
    parts = decompose(t).factors
    if not is_tau_rigid(t) or len(parts) != t.algebra.vertex_count:
        raise DomainError("exchange_sequence requires a tau-tilting module")
    u = []
    removed = False
    for p, mult in parts:
        if not removed and p.dims == x.dims and is_isomorphic(p, x):
            removed = True
            continue
        u.append(p)
    if not removed:
        raise DomainError("x is not a summand of t")
    result = exchange_step(u, x)
    total = direct_sum(t.algebra, result.new_summands).total
    if not is_tau_rigid(total):
        raise ContractViolation("internal: exchange result is not tau-rigid")
    return result


# --------------------------------------------------------------------------
# Hasse quiver
# --------------------------------------------------------------------------


@dataclass
class HasseQuiver:
    algebra: Algebra
    vertices: List[SupportTauTiltingPair]
    edges: List[Tuple[int, int, str]]     # (from, to, exchanged label): left mutations
    classes: List[FrozenSet[int]]         # gen-classes per vertex (AR indices)
    ar: ARQuiverData

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return sum(1 for e in self.edges if e[0] == i or e[1] == i)

    def source_index(self) -> int:
        return max(range(self.vertex_count), key=lambda i: len(self.classes[i]))

    def sink_index(self) -> int:
        return min(range(self.vertex_count), key=lambda i: len(self.classes[i]))

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.content_hash(),
            "vertices": [
                {
                    "label": p.label(self.ar),
                    "summands": sorted(self.ar.labels[i] for i in (p.ids or ())),
                    "kill": sorted(p.kill),
                }
                for p in self.vertices
            ],
            "edges": [
                {"from": i, "to": j, "exchanged": lbl} for i, j, lbl in self.edges
            ],
            "counts": {"vertices": self.vertex_count, "edges": len(self.edges)},
        }


def hasse(a: Algebra, vertex_cap: int = DEFAULT_VERTEX_CAP,
          ar: Optional[ARQuiverData] = None, seed: int = 0) -> HasseQuiver:
    """Breadth-first mutation closure from (A, empty), edges = left mutations.

    The edge set is recomputed independently as maximal gen-inclusions and the
    two must coincide; the quiver is #A-regular with unique source and sink.
    """
    if ar is None:
        ar = enumerate_indecomposables(a, seed=seed)
    proj_ids = sorted(ar.projective_vertex.keys())
    start = pair_from_ids(ar, proj_ids, frozenset())
    check_pair(start, ar)

    vertices: List[SupportTauTiltingPair] = []
    classes: List[FrozenSet[int]] = []
    index_of: Dict[tuple, int] = {}
    edges: Set[Tuple[int, int, str]] = set()

    def intern(pair: SupportTauTiltingPair) -> int:
        key = pair.key()
        if key in index_of:
            return index_of[key]
        if len(vertices) + 1 > vertex_cap:
            raise CapExceededError("possibly tau-tilting infinite: vertex cap exceeded")
        idx = len(vertices)
        vertices.append(pair)
        classes.append(pair_torsion_class(pair, ar).members)
        index_of[key] = idx
        return idx

    queue = deque([intern(start)])
    seen_processed: Set[int] = set()
    while queue:
        vi = queue.popleft()
        if vi in seen_processed:
            continue
        seen_processed.add(vi)
        pair = vertices[vi]
        moves = [("module", i) for i in (pair.ids or ())] + [("vertex", v) for v in sorted(pair.kill)]
        for mv in moves:
            res = mutate(pair, ar, mv)
            wi = intern(res.pair)
            if wi not in seen_processed:
                queue.append(wi)
            if res.direction == "left":
                edges.add((vi, wi, res.removed))
            else:
                edges.add((wi, vi, res.removed if res.added is None else res.added))

    # independent recomputation: maximal inclusions among the gen-classes
    incl_edges = set()
    for i in range(len(vertices)):
        for j in range(len(vertices)):
            if i == j or not classes[j] < classes[i]:
                continue
            if any(classes[j] < classes[k] < classes[i] for k in range(len(vertices))):
                continue
            incl_edges.add((i, j))
    mut_edges = {(i, j) for i, j, _ in edges}
    if mut_edges != incl_edges:
        raise ContractViolation("internal: mutation edges differ from maximal inclusions")

    hq = HasseQuiver(a, vertices, sorted(edges), classes, ar)
    n = a.vertex_count
    for i in range(hq.vertex_count):
        if hq.degree(i) != n:
            raise ContractViolation("internal: Hasse quiver is not #A-regular")
    sources = [i for i in range(hq.vertex_count) if all(e[1] != i for e in hq.edges)]
    sinks = [i for i in range(hq.vertex_count) if all(e[0] != i for e in hq.edges)]
    if len(sources) != 1 or len(sinks) != 1:
        raise ContractViolation("internal: Hasse quiver must have unique source and sink")
    return hq


# --------------------------------------------------------------------------
# dagger
# --------------------------------------------------------------------------


def dagger(pair: SupportTauTiltingPair) -> SupportTauTiltingPair:
    """(T, P)^dagger = (Tr T_np + P*, T_pr*) over the opposite algebra."""
    a = pair.algebra
    op = a.opposite()
    pr_vertices: List[int] = []
    np_parts: List[Representation] = []
    for x in pair.summands:
        found = None
        for i in a.quiver.vertices:
            p = projective(a, i)
            if p.dims == x.dims and is_isomorphic(p, x):
                found = i
                break
        if found is not None:
            pr_vertices.append(found)
        else:
            np_parts.append(x)
    new_summands = [transpose(x) for x in np_parts]
    new_summands += [projective(op, v) for v in sorted(pair.kill)]
    new_kill = frozenset(pr_vertices)
    out = SupportTauTiltingPair(op, tuple(new_summands), new_kill)
    check_pair(out)
    return out


# --------------------------------------------------------------------------
# bricks
# --------------------------------------------------------------------------


@dataclass
class BrickRecord:
    module: Representation
    is_brick: bool
    fbrick_image: Representation


def fbrick_of(x: Representation) -> Representation:
    """x / rad_End(x): quotient by the sum of images of radical endomorphisms."""
    rad = end_radical(x)
    if not rad:
        return x
    sub = image_subrep(rad[0])
    for psi in rad[1:]:
        sub = sub_sum(sub, image_subrep(psi))
    quot, _ = quotient_rep(x, sub)
    return quot


def bricks(ar: ARQuiverData) -> List[BrickRecord]:
    out = []
    for x in ar.indecomposables:
        out.append(BrickRecord(x, hom_dim(x, x) == 1, fbrick_of(x)))
    return out


# --------------------------------------------------------------------------
# finiteness probe (no enumeration required)
# --------------------------------------------------------------------------


@dataclass
class ProbeResult:
    tau_tilting_finite: Optional[bool]    # None = unknown
    count: Optional[int]
    evidence: str
    oracle_agrees: Optional[bool] = None


def _pair_signature(summands: Sequence[Representation], kill: FrozenSet[int]):
    return (tuple(sorted(r.dims for r in summands)), tuple(sorted(kill)))


def finiteness_probe(a: Algebra, vertex_cap: int = DEFAULT_VERTEX_CAP,
                     dim_cap: int = 24, seed: int = 0) -> ProbeResult:
    """Left-mutation closure from (A, empty) via exchange sequences.

    Needs no enumeration of indecomposables, so it runs on
    representation-infinite algebras and reports 'unknown' at the caps.
    """
    if a.is_zero:
        return ProbeResult(True, 1, "zero algebra")
    start = SupportTauTiltingPair(
        a, tuple(projective(a, i) for i in a.quiver.vertices), frozenset()
    )
    quotients: Dict[FrozenSet[int], object] = {}
    buckets: Dict[tuple, List[SupportTauTiltingPair]] = {}
    count = 0

    def lookup(summands, kill) -> Optional[SupportTauTiltingPair]:
        sig = _pair_signature(summands, kill)
        for known in buckets.get(sig, []):
            matched = [False] * len(known.summands)
            good = True
            for x in summands:
                ok = False
                for i, y in enumerate(known.summands):
                    if not matched[i] and x.dims == y.dims and is_isomorphic(x, y, seed):
                        matched[i] = True
                        ok = True
                        break
                if not ok:
                    good = False
                    break
            if good:
                return known
        return None

    def intern(summands, kill) -> Tuple[SupportTauTiltingPair, bool]:
        nonlocal count
        found = lookup(summands, kill)
        if found is not None:
            return found, False
        if count + 1 > vertex_cap:
            raise CapExceededError("vertex cap")
        pair = SupportTauTiltingPair(a, tuple(summands), frozenset(kill))
        buckets.setdefault(_pair_signature(summands, kill), []).append(pair)
        count += 1
        check_pair(pair)
        return pair, True

    try:
        queue = deque()
        first, _ = intern(start.summands, start.kill)
        queue.append(first)
        processed = set()
        while queue:
            pair = queue.popleft()
            if pair.key() in processed:
                continue
            processed.add(pair.key())
            kill = frozenset(pair.kill)
            if kill:
                if kill not in quotients:
                    quotients[kill] = quotient_by_vertices(a, set(kill))
                vq = quotients[kill]
                local = [restrict_to_quotient(vq, x) for x in pair.summands]
            else:
                vq = None
                local = list(pair.summands)
            for drop in range(len(local)):
                if any(x.total_dim > dim_cap for x in local):
                    raise CapExceededError("dim cap")
                u = [x for i, x in enumerate(local) if i != drop]
                x = local[drop]
                if u and in_gen(u, x):
                    continue   # right mutation; reached from above instead
                res = exchange_step(u, x)
                if any(s.total_dim > dim_cap for s in res.new_summands):
                    raise CapExceededError("dim cap")
                if vq is None:
                    back = res.new_summands
                    new_kill = set(pair.kill) | set(res.dead_vertices)
                else:
                    back = [extend_from_quotient(vq, s, a) for s in res.new_summands]
                    new_kill = set(pair.kill) | {vq.kept[v - 1] for v in res.dead_vertices}
                new_pair, fresh = intern(back, frozenset(new_kill))
                if fresh:
                    queue.append(new_pair)
    except CapExceededError as e:
        return ProbeResult(None, None,
                           f"mutation closure exceeded caps ({e}); possibly tau-tilting infinite")

    oracle_agrees = None
    try:
        ar = enumerate_indecomposables(a, dim_cap=dim_cap, seed=seed)
        if ar.count <= ORACLE_MAX_INDECS:
            oracle_agrees = len(enumerate_torsion_classes_oracle(ar)) == count
    except CapExceededError:
        oracle_agrees = None
    return ProbeResult(True, count, f"mutation closure complete with {count} pairs",
                       oracle_agrees)
