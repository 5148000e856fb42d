"""Highest-weight representations of the level-N algebra.

A representation is a dict of exact matrices, one per generator.  The
universal highest-weight module of weight z has basis (v_t) indexed by
0 <= t < ell^(N+1) and action

    E[i] v_t = [z_i + 1 - t_i] v_(t - ell^i)   (0 if t_i = 0)
    F[i] v_t = [t_i + 1] v_(t + ell^i)
    K[i] v_t = lam^(z_i - 2 t_i) v_t

with ell-adic digits z_i, t_i.  Because 2 is invertible mod odd ell, the map
t -> (z_i - 2 t_i mod ell) is injective, so all weight spaces are lines and
every submodule is spanned by a subset of the v_t.  The simple quotient is
therefore computed by reachability: v_t survives iff v_0 is reachable from
v_t along single-generator moves with nonzero scalars.  That reasoning is
not assumed silently: the weight-injectivity fact is itself covered by the
test-suite (characters of universal modules are multiplicity-free).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import (AlgebraParams, AlgElement, GeneratorId, uq_params)
from .cyclotomic import CycNum
from .linalg import Mat, nullspace_of_columns
from .qcomb import q_factorial, q_int, to_digits


@dataclass
class ModuleRep:
    """Exact generator matrices indexed by ("E"|"F"|"K", level)."""

    params: AlgebraParams
    dim: int
    action: dict[GeneratorId, Mat]
    basis_labels: tuple[int, ...]

    def mat(self, kind: str, i: int) -> Mat:
        if kind == "Kinv":
            return self.action[("K", i)].diagonal_inverse()
        return self.action[(kind, i)]

    def generator_ids(self):
        for i in range(self.params.level + 1):
            for kind in ("E", "F", "K"):
                yield (kind, i)


def verma(params: AlgebraParams, z: int) -> ModuleRep:
    """The universal highest-weight module of weight z, dimension ell^(N+1)."""
    bound = params.bound
    if not 0 <= z < bound:
        raise ValueError(f"weight {z} outside [0, {bound})")
    ell = params.level + 1
    zdig = to_digits(z, params.ell, ell)
    field = params.field
    dim = bound
    action: dict[GeneratorId, Mat] = {}
    for i in range(params.level + 1):
        step = params.ell ** i
        e_mat = Mat.zero(dim, dim, field)
        f_mat = Mat.zero(dim, dim, field)
        k_mat = Mat.zero(dim, dim, field)
        for t in range(dim):
            ti = (t // step) % params.ell
            if ti > 0:
                scalar = q_int(field, zdig[i] + 1 - ti)
                e_mat.set(t - step, t, scalar)
            if ti < params.ell - 1:
                f_mat.set(t + step, t, q_int(field, ti + 1))
            k_mat.set(t, t, field.lambda_pow(zdig[i] - 2 * ti))
        action[("E", i)] = e_mat
        action[("F", i)] = f_mat
        action[("K", i)] = k_mat
    return ModuleRep(params, dim, action, tuple(range(dim)))


def _support_of_simple(params: AlgebraParams, z: int) -> list[int]:
    """Labels t from which v_0 is reachable along nonzero generator moves."""
    bound = params.bound
    zdig = to_digits(z, params.ell, params.level + 1)
    field = params.field
    # Predecessor search from 0: t reaches u iff u is reachable from t.
    reachable = {0}
    frontier = [0]
    while frontier:
        u = frontier.pop()
        for i in range(params.level + 1):
            step = params.ell ** i
            ui = (u // step) % params.ell
            # t = u + step reaches u by E[i] when the E-scalar at t is nonzero
            if ui < params.ell - 1:
                t = u + step
                if t not in reachable and not q_int(field, zdig[i] - ui).is_zero():
                    reachable.add(t)
                    frontier.append(t)
            # t = u - step reaches u by F[i] when the F-scalar at t is nonzero
            if ui > 0:
                t = u - step
                if t not in reachable and not q_int(field, ui).is_zero():
                    reachable.add(t)
                    frontier.append(t)
    return sorted(reachable)


def simple(params: AlgebraParams, p: int) -> ModuleRep:
    """The simple highest-weight module of weight p: the universal module
    modulo the labels that cannot reach v_0."""
    big = verma(params, p)
    support = _support_of_simple(params, p)
    index = {t: k for k, t in enumerate(support)}
    dim = len(support)
    action: dict[GeneratorId, Mat] = {}
    for gid, mat in big.action.items():
        small = Mat.zero(dim, dim, params.field)
        for (r, c), v in mat.entries.items():
            ri, ci = index.get(r), index.get(c)
            if ri is not None and ci is not None:
                small.set(ri, ci, v)
        action[gid] = small
    return ModuleRep(params, dim, action, tuple(support))


def uq_simple(ell: int, z: int, root_exponent: int = 1) -> ModuleRep:
    """Simple module of the small quantum group; dimension z + 1."""
    if not 0 <= z < ell:
        raise ValueError(f"weight {z} outside [0, {ell})")
    return simple(uq_params(ell, root_exponent), z)


def trivial_rep(params: AlgebraParams) -> ModuleRep:
    """The one-dimensional module through the augmentation."""
    field = params.field
    action: dict[GeneratorId, Mat] = {}
    for i in range(params.level + 1):
        action[("E", i)] = Mat.zero(1, 1, field)
        action[("F", i)] = Mat.zero(1, 1, field)
        action[("K", i)] = Mat.identity(1, field)
    return ModuleRep(params, 1, action, (0,))


def divided_power_matrix(rep: ModuleRep, kind: str, m: int) -> Mat:
    """Matrix of E^(m) or F^(m) (per-level powers divided by q-factorials)."""
    field = rep.params.field
    result = Mat.identity(rep.dim, field)
    rest = m
    i = 0
    while rest:
        rest, digit = divmod(rest, rep.params.ell)
        if digit:
            block = rep.mat(kind, i).pow(digit)
            block = block.scaled(q_factorial(field, digit).inverse())
            result = result @ block
        i += 1
    return result


def k_monomial_matrix(rep: ModuleRep, n: int) -> Mat:
    field = rep.params.field
    result = Mat.identity(rep.dim, field)
    rest, i = n, 0
    while rest:
        rest, digit = divmod(rest, rep.params.ell)
        if digit:
            result = result @ rep.mat("K", i).pow(digit)
        i += 1
    return result


def monomial_matrix(rep: ModuleRep, mono: tuple[int, int, int]) -> Mat:
    m, n, p = mono
    return (divided_power_matrix(rep, "F", m)
            @ k_monomial_matrix(rep, n)
            @ divided_power_matrix(rep, "E", p))


def element_matrix(rep: ModuleRep, x: AlgElement) -> Mat:
    result = Mat.zero(rep.dim, rep.dim, rep.params.field)
    for mono, coeff in x.terms.items():
        result = result + monomial_matrix(rep, mono).scaled(coeff)
    return result


def weight_of_coordinate(rep: ModuleRep, idx: int) -> tuple[int, ...]:
    """Residues (p_i) with K[i] acting by lam^(p_i) on the idx-th basis vector."""
    field = rep.params.field
    out = []
    for i in range(rep.params.level + 1):
        d = rep.mat("K", i).get(idx, idx)
        for e in range(rep.params.ell):
            if d == field.lambda_pow(e):
                out.append(e)
                break
        else:
            raise ValueError("K-matrix entry is not a power of the root")
    return tuple(out)


def character(rep: ModuleRep) -> dict[tuple[int, ...], int]:
    """Weight-multiplicity table; multiplicities sum to the dimension."""
    table: dict[tuple[int, ...], int] = {}
    for idx in range(rep.dim):
        w = weight_of_coordinate(rep, idx)
        table[w] = table.get(w, 0) + 1
    return table


def primitive_vectors(rep: ModuleRep) -> list[tuple[dict[int, CycNum], tuple[int, ...]]]:
    """Basis of the joint kernel of the E-matrices, organized by weight."""
    by_weight: dict[tuple[int, ...], list[int]] = {}
    for idx in range(rep.dim):
        by_weight.setdefault(weight_of_coordinate(rep, idx), []).append(idx)
    e_mats = [rep.mat("E", i) for i in range(rep.params.level + 1)]
    out = []
    for w in sorted(by_weight):
        coords = by_weight[w]
        columns = []
        for c in coords:
            col: dict = {}
            for lvl, mat in enumerate(e_mats):
                for (r, cc), v in mat.entries.items():
                    if cc == c:
                        col[(lvl, r)] = v
            columns.append(col)
        for vec in nullspace_of_columns(columns, rep.params.field):
            out.append(({coords[j]: v for j, v in vec.items()}, w))
    return out


def pullback_via_pi(u_rep: ModuleRep, params: AlgebraParams) -> ModuleRep:
    """Make a small-quantum-group module a level-N module through the
    level-lowering map: only the top generators act nontrivially."""
    if u_rep.params.level != 0:
        raise ValueError("pullback starts from a level-0 module")
    if (u_rep.params.ell, u_rep.params.root_exponent) != (params.ell, params.root_exponent):
        raise ValueError("incompatible root-of-unity data")
    field = params.field
    action: dict[GeneratorId, Mat] = {}
    top = params.level
    for i in range(params.level + 1):
        if i == top:
            action[("E", i)] = u_rep.action[("E", 0)]
            action[("F", i)] = u_rep.action[("F", 0)]
            action[("K", i)] = u_rep.action[("K", 0)]
        else:
            action[("E", i)] = Mat.zero(u_rep.dim, u_rep.dim, field)
            action[("F", i)] = Mat.zero(u_rep.dim, u_rep.dim, field)
            action[("K", i)] = Mat.identity(u_rep.dim, field)
    return ModuleRep(params, u_rep.dim, action, u_rep.basis_labels)


def extend_by_trivial_top(rep: ModuleRep) -> ModuleRep:
    """Lift a level-(N-1) module to level N: the new E and F act by zero
    and the new K by the identity."""
    params = rep.params
    target = AlgebraParams(params.ell, params.level + 1, params.root_exponent)
    field = params.field
    action = dict(rep.action)
    action[("E", target.level)] = Mat.zero(rep.dim, rep.dim, field)
    action[("F", target.level)] = Mat.zero(rep.dim, rep.dim, field)
    action[("K", target.level)] = Mat.identity(rep.dim, field)
    return ModuleRep(target, rep.dim, action, rep.basis_labels)


def tensor_rep(u_rep: ModuleRep, d_rep: ModuleRep) -> ModuleRep:
    """Tensor a small-quantum-group module onto a level-N module through the
    comodule structure: the top generators act by

        E[N] -> E (x) 1 + K (x) E[N]
        F[N] -> F (x) K[N]^-1 + 1 (x) F[N]
        K[N] -> K (x) K[N]

    and the lower generators act on the right factor alone.
    """
    if u_rep.params.level != 0:
        raise ValueError("left tensor factor must be a level-0 module")
    params = d_rep.params
    if (u_rep.params.ell, u_rep.params.root_exponent) != (params.ell, params.root_exponent):
        raise ValueError("incompatible root-of-unity data")
    field = params.field
    iu = Mat.identity(u_rep.dim, field)
    idm = Mat.identity(d_rep.dim, field)
    ue, uf, uk = u_rep.mat("E", 0), u_rep.mat("F", 0), u_rep.mat("K", 0)
    top = params.level
    action: dict[GeneratorId, Mat] = {}
    for i in range(top):
        action[("E", i)] = iu.kron(d_rep.mat("E", i))
        action[("F", i)] = iu.kron(d_rep.mat("F", i))
        action[("K", i)] = iu.kron(d_rep.mat("K", i))
    action[("E", top)] = ue.kron(idm) + uk.kron(d_rep.mat("E", top))
    action[("F", top)] = uf.kron(d_rep.mat("Kinv", top)) + iu.kron(d_rep.mat("F", top))
    action[("K", top)] = uk.kron(d_rep.mat("K", top))
    dim = u_rep.dim * d_rep.dim
    return ModuleRep(params, dim, action, tuple(range(dim)))


class SteinbergError(Exception):
    """Raised with a counterexample payload when the factorization fails."""

    def __init__(self, message: str, detail: dict):
        super().__init__(message)
        self.detail = detail


@dataclass
class SteinbergResult:
    params: AlgebraParams
    p: int
    p_top: int
    p_rest: int
    dim: int
    intertwiner: Mat = dc_field(repr=False)


def _simple_rest_factor(params: AlgebraParams, p_rest: int) -> ModuleRep:
    """The right tensor factor: the simple of weight p_rest one level down,
    lifted back up with a trivial top level."""
    lower = AlgebraParams(params.ell, params.level - 1, params.root_exponent)
    return extend_by_trivial_top(simple(lower, p_rest))


def steinberg_intertwiner(params: AlgebraParams, p: int) -> SteinbergResult:
    """Explicit isomorphism from the simple of weight p onto
    (small-quantum-group simple of the top digit) (x) (simple of the rest).

    The map sends the highest-weight vector to v0 (x) v0 and each surviving
    F^(t) v0 to F^(t) (v0 (x) v0); bijectivity and equivariance for every
    generator are verified, not assumed.
    """
    if params.level < 1:
        raise ValueError("the tensor factorization needs level >= 1")
    bound = params.bound
    if not 0 <= p < bound:
        raise ValueError(f"weight {p} outside [0, {bound})")
    top_power = params.ell ** params.level
    p_top, p_rest = divmod(p, top_power)

    left = simple(params, p)
    u_factor = uq_simple(params.ell, p_top, params.root_exponent)
    d_factor = _simple_rest_factor(params, p_rest)
    right = tensor_rep(u_factor, d_factor)

    if left.dim != right.dim:
        raise SteinbergError("dimension mismatch", {
            "p": p, "simple_dim": left.dim, "tensor_dim": right.dim})

    field = params.field
    # Column t of the intertwiner: F^(t) applied to v0 (x) v0.
    v0 = {0: field.one()}
    smat = Mat.zero(right.dim, left.dim, field)
    for col, t in enumerate(left.basis_labels):
        vec = dict(v0)
        rest, i = t, 0
        while rest and vec:
            rest, digit = divmod(rest, params.ell)
            if digit:
                f_mat = right.mat("F", i)
                for _ in range(digit):
                    vec = f_mat.matvec(vec)
                inv = q_factorial(field, digit).inverse()
                vec = {r: v * inv for r, v in vec.items()}
            i += 1
        for r, v in vec.items():
            smat.set(r, col, v)

    columns = []
    for col in range(left.dim):
        columns.append({r: v for (r, c), v in smat.entries.items() if c == col})
    if nullspace_of_columns(columns, field):
        raise SteinbergError("intertwiner is not injective", {"p": p})

    for gid in left.generator_ids():
        lhs = smat @ left.mat(*gid)
        rhs = right.mat(*gid) @ smat
        if lhs != rhs:
            diff = lhs - rhs
            raise SteinbergError("intertwiner is not equivariant", {
                "p": p, "generator": gid,
                "residue_entries": len(diff.entries)})
    return SteinbergResult(params, p, p_top, p_rest, left.dim, smat)


def rep_relation_check(rep: ModuleRep) -> list[dict]:
    """Verify every defining relation as an exact matrix identity."""
    from .algebra import bracket_rhs

    params = rep.params
    field = params.field
    ell = params.ell
    report: list[dict] = []

    def record(name, i, j, residue: Mat):
        report.append({"relation": name, "i": i, "j": j,
                       "zero": residue.is_zero_matrix(),
                       "residue_entries": len(residue.entries)})

    ident = Mat.identity(rep.dim, field)
    for i in range(params.level + 1):
        ki = rep.mat("K", i)
        ei = rep.mat("E", i)
        fi = rep.mat("F", i)
        for j in range(params.level + 1):
            kj, ej, fj = rep.mat("K", j), rep.mat("E", j), rep.mat("F", j)
            record("k_commute", i, j, ki @ kj - kj @ ki)
            twist = field.lambda_pow(2) if i == j else field.one()
            record("k_twist_e", i, j, ki @ ej - (ej @ ki).scaled(twist))
            twist = field.lambda_pow(-2) if i == j else field.one()
            record("k_twist_f", i, j, ki @ fj - (fj @ ki).scaled(twist))
            record("e_commute", i, j, ei @ ej - ej @ ei)
            record("f_commute", i, j, fi @ fj - fj @ fi)
            if i != j:
                record("ef_commute", i, j, ei @ fj - fj @ ei)
        record("k_order", i, i, ki.pow(ell) - ident)
        record("e_nilpotent", i, i, ei.pow(ell))
        record("f_nilpotent", i, i, fi.pow(ell))
        rhs = element_matrix(rep, bracket_rhs(params, i))
        record("ef_bracket", i, i, ei @ fi - rhs)
    return report
