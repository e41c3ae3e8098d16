"""Exact homology of finite chain complexes over Z, Q, and prime fields.

Integer homology runs through a sparse Smith normal form on arbitrary
precision integers, pivoting on the smallest nonzero magnitude with a
row/column fill tie-break.  Field Betti numbers use direct sparse Gaussian
ranks instead, so the two coefficient routes stay independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegreeOutOfRange, NotChainMap, ResourceBound

MATRIX_CAP = 5_000


@dataclass(frozen=True)
class SparseIntMatrix:
    """Integer matrix stored as {(row, col): nonzero value}."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], int]

    def column(self, j: int) -> list[tuple[int, int]]:
        return [(r, v) for (r, c), v in self.entries.items() if c == j]

    def by_columns(self) -> dict[int, list[tuple[int, int]]]:
        out: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(c, []).append((r, v))
        return out


@dataclass
class SNFResult:
    """Diagonal d_1 | d_2 | ... plus optional unimodular transforms U M V = D."""

    diag: tuple[int, ...]
    u: list[list[int]] | None = None
    uinv: list[list[int]] | None = None
    v: list[list[int]] | None = None
    vinv: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.diag)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diag if d > 1)


class _Smith:
    def __init__(self, mat: SparseIntMatrix, with_transforms: bool):
        self.nrows = mat.rows
        self.ncols = mat.cols
        self.rows: dict[int, dict[int, int]] = {}
        self.cols: dict[int, set[int]] = {}
        for (r, c), v in mat.entries.items():
            if v:
                self.rows.setdefault(r, {})[c] = v
                self.cols.setdefault(c, set()).add(r)
        self.wt = with_transforms
        if with_transforms:
            self.u = [[int(i == j) for j in range(self.nrows)] for i in range(self.nrows)]
            self.uinv = [[int(i == j) for j in range(self.nrows)] for i in range(self.nrows)]
            self.v = [[int(i == j) for j in range(self.ncols)] for i in range(self.ncols)]
            self.vinv = [[int(i == j) for j in range(self.ncols)] for i in range(self.ncols)]

    # -- elementary operations (mirrored on the transforms) ------------------

    def row_sub(self, i: int, t: int, q: int) -> None:
        """row_i -= q * row_t"""
        row_t = self.rows.get(t, {})
        row_i = self.rows.get(i)
        if row_i is None:
            row_i = self.rows[i] = {}
        for c, v in list(row_t.items()):
            nv = row_i.get(c, 0) - q * v
            if nv:
                row_i[c] = nv
                self.cols.setdefault(c, set()).add(i)
            elif c in row_i:
                del row_i[c]
                self.cols[c].discard(i)
        if not row_i:
            del self.rows[i]
        if self.wt:
            ut = self.u[t]
            ui = self.u[i]
            for c in range(self.nrows):
                ui[c] -= q * ut[c]
            uinv = self.uinv
            for r in range(self.nrows):
                uinv[r][t] += q * uinv[r][i]

    def col_sub(self, j: int, t: int, q: int) -> None:
        """col_j -= q * col_t"""
        for r in list(self.cols.get(t, ())):
            row = self.rows[r]
            nv = row.get(j, 0) - q * row[t]
            if nv:
                row[j] = nv
                self.cols.setdefault(j, set()).add(r)
            elif j in row:
                del row[j]
                self.cols[j].discard(r)
        if self.wt:
            v = self.v
            for r in range(self.ncols):
                v[r][j] -= q * v[r][t]
            vt = self.vinv[t]
            vj = self.vinv[j]
            for c in range(self.ncols):
                vt[c] += q * vj[c]

    def swap_rows(self, a: int, b: int) -> None:
        if a == b:
            return
        ra = self.rows.pop(a, None)
        rb = self.rows.pop(b, None)
        if ra is not None:
            self.rows[b] = ra
        if rb is not None:
            self.rows[a] = rb
        for c in set(ra or ()) | set(rb or ()):
            s = self.cols[c]
            s.discard(a)
            s.discard(b)
            if ra and c in ra:
                s.add(b)
            if rb and c in rb:
                s.add(a)
        if self.wt:
            self.u[a], self.u[b] = self.u[b], self.u[a]
            for r in range(self.nrows):
                self.uinv[r][a], self.uinv[r][b] = self.uinv[r][b], self.uinv[r][a]

    def swap_cols(self, a: int, b: int) -> None:
        if a == b:
            return
        for r in self.cols.get(a, set()) | self.cols.get(b, set()):
            row = self.rows[r]
            va = row.pop(a, None)
            vb = row.pop(b, None)
            if va is not None:
                row[b] = va
            if vb is not None:
                row[a] = vb
        sa = self.cols.pop(a, None)
        sb = self.cols.pop(b, None)
        if sa:
            self.cols[b] = sa
        if sb:
            self.cols[a] = sb
        if self.wt:
            for r in range(self.ncols):
                self.v[r][a], self.v[r][b] = self.v[r][b], self.v[r][a]
            self.vinv[a], self.vinv[b] = self.vinv[b], self.vinv[a]

    def negate_row(self, t: int) -> None:
        row = self.rows[t]
        for c in row:
            row[c] = -row[c]
        if self.wt:
            self.u[t] = [-v for v in self.u[t]]
            for r in range(self.nrows):
                self.uinv[r][t] = -self.uinv[r][t]

    # -- pivoting -------------------------------------------------------------

    def pick(self) -> tuple[int, int]:
        best = None
        best_key = None
        for i, row in self.rows.items():
            li = len(row) - 1
            for j, v in row.items():
                key = (abs(v), li * (len(self.cols[j]) - 1), i, j)
                if best_key is None or key < best_key:
                    best_key, best = key, (i, j)
                    if key[0] == 1 and key[1] == 0:
                        return best
        return best

    def clear(self, t: int) -> None:
        while True:
            if self.rows[t][t] < 0:
                self.negate_row(t)
            restart = False
            for i in sorted(r for r in self.cols.get(t, ()) if r != t):
                v = self.rows.get(i, {}).get(t)
                if not v:
                    continue
                q = v // self.rows[t][t]
                if q:
                    self.row_sub(i, t, q)
                if self.rows.get(i, {}).get(t, 0):
                    # remainder smaller than the pivot: promote it (Euclid)
                    self.swap_rows(t, i)
                    restart = True
                    break
            if restart:
                continue
            for j in sorted(c for c in self.rows[t] if c != t):
                v = self.rows[t].get(j)
                if not v:
                    continue
                q = v // self.rows[t][t]
                if q:
                    self.col_sub(j, t, q)
                if self.rows[t].get(j, 0):
                    self.swap_cols(t, j)
                    restart = True
                    break
            if restart:
                continue
            d = self.rows[t][t]
            if d < 0:
                self.negate_row(t)
                d = -d
            if d != 1:
                culprit = None
                for i, row in self.rows.items():
                    if i == t:
                        continue
                    if any(v % d for v in row.values()):
                        culprit = i
                        break
                if culprit is not None:
                    self.row_sub(t, culprit, -1)  # row_t += row_culprit
                    continue
            return

    def run(self) -> tuple[int, ...]:
        diag = []
        t = 0
        while self.rows:
            i, j = self.pick()
            self.swap_rows(t, i)
            self.swap_cols(t, j)
            self.clear(t)
            diag.append(self.rows[t][t])
            del self.rows[t]
            self.cols.pop(t, None)
            t += 1
        return tuple(diag)


def smith_normal_form(mat: SparseIntMatrix, with_transforms: bool = False) -> SNFResult:
    """Diagonalize over Z; with transforms, U M V = D with det(U), det(V) = +-1."""
    state = _Smith(mat, with_transforms)
    diag = state.run()
    for a, b in zip(diag, diag[1:]):
        if b % a:
            raise AssertionError(f"invariant factors {a}, {b} break the divisibility chain")
    if with_transforms:
        return SNFResult(diag, state.u, state.uinv, state.v, state.vinv)
    return SNFResult(diag)


def gaussian_rank(mat: SparseIntMatrix, p: int | None = None) -> int:
    """Rank by sparse Gaussian elimination over GF(p), or over Q when p is None."""
    rows: dict[int, dict[int, object]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in mat.entries.items():
        if p is not None:
            v = v % p
            if not v:
                continue
        rows.setdefault(r, {})[c] = v if p is not None else Fraction(v)
        cols.setdefault(c, set()).add(r)
    rank = 0
    for j in range(mat.cols):
        holders = cols.get(j)
        if not holders:
            continue
        i = min(holders, key=lambda r: (len(rows[r]), r))
        pivot_row = rows.pop(i)
        for c in pivot_row:
            cols[c].discard(i)
        rank += 1
        piv = pivot_row[j]
        inv = pow(piv, -1, p) if p is not None else 1 / piv
        for r in sorted(cols.get(j, set())):
            row = rows[r]
            factor = row[j] * inv
            if p is not None:
                factor %= p
            for c, v in pivot_row.items():
                nv = row.get(c, 0) - factor * v
                if p is not None:
                    nv %= p
                if nv:
                    row[c] = nv
                    cols.setdefault(c, set()).add(r)
                elif c in row:
                    del row[c]
                    cols[c].discard(r)
            if not row:
                del rows[r]
    return rank


def field_characteristic(coeff: str) -> int | None:
    """Map a coefficient tag to a field characteristic; None means Q."""
    if coeff == "Q":
        return None
    if coeff.startswith("F"):
        p = int(coeff[1:])
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{coeff} is not a prime field")
        return p
    raise ValueError(f"unknown field coefficient tag {coeff!r}")


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    coeff: str
    betti: int
    torsion: tuple[int, ...]

    def render(self) -> str:
        sym = "Z" if self.coeff == "Z" else self.coeff
        parts = []
        if self.betti == 1:
            parts.append(sym)
        elif self.betti > 1:
            parts.append(f"{sym}^{self.betti}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) or "0"

    def machine(self) -> str:
        return f"{self.degree};{self.coeff};{self.betti};{','.join(str(t) for t in self.torsion)}"

    def same_group(self, other: "HomologyGroup") -> bool:
        return (self.degree, self.betti, self.torsion) == (
            other.degree,
            other.betti,
            other.torsion,
        )


@dataclass
class ChainComplex:
    """Normalized chains: one ordered label basis per degree plus boundary matrices."""

    bases: list[list[str]]
    boundaries: list[SparseIntMatrix]
    simplices: list[list] | None = None
    spec: object | None = None
    _snf_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.boundaries) != len(self.bases):
            raise AssertionError("one boundary matrix per degree expected")
        for k, mat in enumerate(self.boundaries):
            want_rows = 0 if k == 0 else len(self.bases[k - 1])
            if mat.rows != want_rows or mat.cols != len(self.bases[k]):
                raise AssertionError(f"boundary {k} has shape {mat.rows}x{mat.cols}")
        for k in range(2, len(self.boundaries)):
            _assert_composes_to_zero(self.boundaries[k - 1], self.boundaries[k], k)

    @property
    def max_degree(self) -> int:
        return len(self.bases) - 1

    def dim(self, k: int) -> int:
        return len(self.bases[k])

    def snf(self, k: int) -> SNFResult:
        if k not in self._snf_cache:
            self._snf_cache[k] = smith_normal_form(self.boundaries[k])
        return self._snf_cache[k]


def _assert_composes_to_zero(a: SparseIntMatrix, b: SparseIntMatrix, k: int) -> None:
    acols = a.by_columns()
    bcols = b.by_columns()
    for j, col in bcols.items():
        acc: dict[int, int] = {}
        for mid, v in col:
            for r, w in acols.get(mid, ()):
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            raise AssertionError(f"boundary composition in degree {k} is nonzero")


def chain_complex(spec, m_max: int, length_bound: int | None = None,
                  simplex_cap: int | None = None, matrix_cap: int | None = None) -> ChainComplex:
    """Normalized chain complex of a spec in degrees 0..m_max+1."""
    from .simplicial import is_degenerate  # local import avoids a cycle

    matrix_cap = MATRIX_CAP if matrix_cap is None else matrix_cap
    bases: list[list[str]] = []
    simps: list[list] = []
    lookups: list[dict] = []
    for k in range(m_max + 2):
        everything = spec.simplices(k, length_bound, cap=simplex_cap)
        nondeg = [s for s in everything if not is_degenerate(spec, s)]
        if len(nondeg) > matrix_cap:
            raise ResourceBound(
                f"degree {k} basis of size {len(nondeg)} exceeds matrix cap {matrix_cap}"
            )
        bases.append([spec.encode(s) for s in nondeg])
        simps.append(nondeg)
        lookups.append({s.payload: i for i, s in enumerate(nondeg)})
    boundaries = [SparseIntMatrix(0, len(bases[0]), {})]
    for k in range(1, m_max + 2):
        entries: dict[tuple[int, int], int] = {}
        lookup = lookups[k - 1]
        for c, s in enumerate(simps[k]):
            for i in range(k + 1):
                r = lookup.get(spec.face(s, i).payload)
                if r is None:
                    continue  # degenerate face contributes zero
                key = (r, c)
                val = entries.get(key, 0) + (1 if i % 2 == 0 else -1)
                if val:
                    entries[key] = val
                elif key in entries:
                    del entries[key]
        boundaries.append(SparseIntMatrix(len(bases[k - 1]), len(bases[k]), entries))
    return ChainComplex(bases, boundaries, simps, spec)


def homology(comp: ChainComplex, m: int, coeff: str = "Z") -> HomologyGroup:
    """Betti rank and torsion of H_m with the requested coefficients."""
    if m < 0 or m + 1 > comp.max_degree:
        raise DegreeOutOfRange(f"H_{m} needs degree {m + 1}; complex stops at {comp.max_degree}")
    dim = comp.dim(m)
    if coeff == "Z":
        below = comp.snf(m + 1)
        return HomologyGroup(m, coeff, dim - comp.snf(m).rank - below.rank, below.torsion)
    p = field_characteristic(coeff)
    r1 = gaussian_rank(comp.boundaries[m], p)
    r2 = gaussian_rank(comp.boundaries[m + 1], p)
    return HomologyGroup(m, coeff, dim - r1 - r2, ())


@dataclass
class HomologyBasis:
    """Integral generators of H_m plus the data needed to classify any cycle."""

    degree: int
    orders: list[int]  # 0 marks a free generator, d > 1 torsion of order d
    chains: list[list[int]]
    kernel: list[list[int]]
    ksnf: SNFResult
    ua: list[list[int]]
    kept: list[int]

    @property
    def group(self) -> tuple[int, tuple[int, ...]]:
        betti = sum(1 for d in self.orders if d == 0)
        torsion = tuple(d for d in self.orders if d > 1)
        return betti, torsion


def _solve_in_lattice(snf: SNFResult, b: list[int], ncols: int) -> list[int]:
    """Solve K y = b given the transformed SNF of K; b must lie in the column lattice."""
    nrows = len(b)
    ub = [sum(snf.u[i][k] * b[k] for k in range(nrows)) for i in range(nrows)]
    z = [0] * ncols
    for i in range(nrows):
        if i < snf.rank:
            d = snf.diag[i]
            if ub[i] % d:
                raise AssertionError("vector lies outside the kernel lattice")
            z[i] = ub[i] // d
        elif ub[i]:
            raise AssertionError("vector lies outside the kernel span")
    return [sum(snf.v[i][k] * z[k] for k in range(ncols)) for i in range(ncols)]


def homology_generators(comp: ChainComplex, m: int) -> HomologyBasis:
    """Present H_m(Z) with explicit generator cycles."""
    if m < 0 or m + 1 > comp.max_degree:
        raise DegreeOutOfRange(f"H_{m} needs degree {m + 1}; complex stops at {comp.max_degree}")
    dim = comp.dim(m)
    sm = smith_normal_form(comp.boundaries[m], with_transforms=True)
    r = sm.rank
    kappa = dim - r
    kernel = [[sm.v[i][r + c] for i in range(dim)] for c in range(kappa)]
    kmat = SparseIntMatrix(
        dim,
        kappa,
        {(i, c): kernel[c][i] for c in range(kappa) for i in range(dim) if kernel[c][i]},
    )
    ksnf = smith_normal_form(kmat, with_transforms=True)
    bnd = comp.boundaries[m + 1]
    a_entries: dict[tuple[int, int], int] = {}
    bycol = bnd.by_columns()
    for j in range(bnd.cols):
        b = [0] * dim
        for rr, v in bycol.get(j, ()):
            b[rr] = v
        for i, val in enumerate(_solve_in_lattice(ksnf, b, kappa)):
            if val:
                a_entries[(i, j)] = val
    asnf = smith_normal_form(SparseIntMatrix(kappa, bnd.cols, a_entries), with_transforms=True)
    orders: list[int] = []
    chains: list[list[int]] = []
    kept: list[int] = []
    for i in range(kappa):
        d = asnf.diag[i] if i < asnf.rank else 0
        if d == 1:
            continue
        kept.append(i)
        orders.append(d)
        col = [asnf.uinv[rr][i] for rr in range(kappa)]
        chains.append(
            [sum(kernel[c][row] * col[c] for c in range(kappa)) for row in range(dim)]
        )
    return HomologyBasis(m, orders, chains, kernel, ksnf, asnf.u, kept)


def classify_cycle(basis: HomologyBasis, vec: list[int]) -> tuple[int, ...]:
    """Coordinates of a cycle's homology class in the generator presentation."""
    kappa = len(basis.kernel)
    y = _solve_in_lattice(basis.ksnf, list(vec), kappa)
    w = [sum(basis.ua[i][k] * y[k] for k in range(kappa)) for i in range(kappa)]
    return tuple(
        w[i] % d if d else w[i] for i, d in zip(basis.kept, basis.orders)
    )


@dataclass
class InducedMap:
    """Matrix of a simplicial map on homology generators (rows: target, cols: source)."""

    degree: int
    matrix: list[list[int]]
    source_orders: list[int]
    target_orders: list[int]

    def is_isomorphism(self) -> bool:
        """Exact for free homology and for a single cyclic factor; otherwise False."""
        import math

        if self.source_orders != self.target_orders:
            return False
        n = len(self.source_orders)
        if n == 0:
            return True
        if not any(self.source_orders):
            return abs(_det(self.matrix)) == 1
        if n == 1:
            return math.gcd(self.matrix[0][0], self.source_orders[0]) == 1
        return False


def _det(matrix: list[list[int]]) -> int:
    """Bareiss fraction-free determinant of a small integer matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def induced_map(f, c_src: ChainComplex, c_tgt: ChainComplex, m: int) -> InducedMap:
    """Matrix of the induced map on H_m; verifies the rule commutes with faces first."""
    if c_src.simplices is None or c_tgt.simplices is None or c_src.spec is None:
        raise NotChainMap("induced maps need spec-built complexes")
    for k in range(1, min(m + 1, c_src.max_degree) + 1):
        for s in c_src.simplices[k]:
            fs = f.apply(s)
            for i in range(k + 1):
                if f.apply(c_src.spec.face(s, i)) != c_tgt.spec.face(fs, i):
                    raise NotChainMap(
                        f"rule fails d_{i} at degree-{k} simplex {c_src.spec.encode(s)}"
                    )
    b_src = homology_generators(c_src, m)
    b_tgt = homology_generators(c_tgt, m)
    tgt_index = {s.payload: i for i, s in enumerate(c_tgt.simplices[m])}
    columns = []
    for chain in b_src.chains:
        pushed = [0] * c_tgt.dim(m)
        for idx, coeff in enumerate(chain):
            if not coeff:
                continue
            image = f.apply(c_src.simplices[m][idx])
            ti = tgt_index.get(image.payload)
            if ti is not None:
                pushed[ti] += coeff
        columns.append(classify_cycle(b_tgt, pushed))
    matrix = [
        [columns[c][r] for c in range(len(columns))] for r in range(len(b_tgt.orders))
    ]
    return InducedMap(m, matrix, b_src.orders, b_tgt.orders)
