"""Empirical counting of visible tuples over cube and ball regions.

Three routes: a direct per-tuple test (exact, pure ideal arithmetic), a
prime-ideal sieve (exact, residue marking over a numpy bit array), and a
Monte Carlo estimator for regions beyond enumeration caps.  The sieve and
the direct count must agree exactly wherever both run.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import ideals as il
from . import primes as pr
from .errors import CapExceeded
from .ideals import IdealHNF, PointTuple
from .numfield import AlgInt, FieldSpec, _det_bareiss, norm_of_coords

DEFAULT_REGION_CAP = 2 ** 22
DEFAULT_TUPLE_CAP = 2 ** 31

# pi to 49 decimal places; enough that ball-volume normalization error is
# far below every tolerance in play
PI = Fraction(31415926535897932384626433832795028841971693993751, 10 ** 49)


@dataclass(frozen=True)
class Region:
    """A cube C[L] or ball B[R] of coordinate vectors over the field basis.

    ``basis_transform`` rows, when given, are a replacement Z-basis in
    coordinates of the field basis (must be unimodular): the region becomes
    {a . T : a in the cube/ball}, i.e. the same shape over the new basis.
    """

    field: FieldSpec
    shape: str
    size: Fraction
    basis_transform: Optional[tuple[tuple[int, ...], ...]] = None

    def __post_init__(self):
        if self.shape not in ("cube", "ball"):
            raise ValueError(f"unknown region shape {self.shape!r}")
        if self.size <= 0:
            raise ValueError("region size must be positive")
        if self.shape == "cube" and self.size.denominator != 1:
            raise ValueError("cube side L must be an integer")
        if self.basis_transform is not None:
            T = self.basis_transform
            n = self.field.degree
            if len(T) != n or any(len(r) != n for r in T):
                raise ValueError("basis transform must be n x n")
            if abs(_det_bareiss([list(r) for r in T])) != 1:
                raise ValueError("basis transform must be unimodular")

    @property
    def L(self) -> int:
        return int(self.size)

    def volume(self) -> Fraction:
        """Continuous volume: (2L)^n for cubes, V_n R^n for balls.

        Used for the main term of the ideal-count checks; empirical density
        estimates divide by the exact tuple count instead.
        """
        n = self.field.degree
        if self.shape == "cube":
            return Fraction((2 * self.L) ** n)
        return _ball_volume_unit(n) * self.size ** n

    def label(self) -> str:
        if self.shape == "cube":
            base = f"cube:L={self.L}"
        else:
            r = self.size
            base = f"ball:R={int(r) if r.denominator == 1 else float(r)}"
        if self.basis_transform is not None:
            base += ":T=" + str([list(r) for r in self.basis_transform]).replace(" ", "")
        return base


def cube_region(field: FieldSpec, L: int, basis_transform=None) -> Region:
    return Region(field, "cube", Fraction(int(L)),
                  _norm_transform(basis_transform))


def ball_region(field: FieldSpec, R, basis_transform=None) -> Region:
    return Region(field, "ball", Fraction(R),
                  _norm_transform(basis_transform))


def _norm_transform(T):
    if T is None:
        return None
    return tuple(tuple(int(x) for x in row) for row in T)


def _ball_volume_unit(n: int) -> Fraction:
    """Volume of the unit n-ball as an exact rational in pi."""
    if n % 2 == 0:
        k = n // 2
        return PI ** k / math.factorial(k)
    k = (n - 1) // 2
    return Fraction(2 * math.factorial(k) * 4 ** k, math.factorial(n)) * PI ** k


@dataclass(frozen=True)
class CountResult:
    """Outcome of one counting run over region^m."""

    visible_count: int
    total_tuples: int
    density_estimate: Fraction
    method: str
    region: Region
    mc_stderr: Optional[float] = None
    prime_norm_bound: Optional[int] = None


@dataclass(frozen=True)
class IdealCountCheck:
    """Observed vs expected count of ideal points in a region."""

    count: int
    main_term: Fraction
    error: Fraction
    normalized_error: float


# ----------------------------------------------------------------------
# region enumeration
# ----------------------------------------------------------------------

def region_coords(region: Region,
                  region_cap: int = DEFAULT_REGION_CAP) -> list[tuple[int, ...]]:
    """Coordinate vectors of the region in lexicographic order."""
    n = region.field.degree
    if region.shape == "cube":
        L = region.L
        est = (2 * L + 1) ** n
        if est > region_cap:
            raise CapExceeded("region exceeds enumeration cap", estimate=est)
        base = [tuple(c) for c in
                itertools.product(range(-L, L + 1), repeat=n)]
    else:
        R = region.size
        est = int(float(_ball_volume_unit(n)) * (float(R) + n) ** n) + 1
        if est > region_cap:
            raise CapExceeded("region exceeds enumeration cap", estimate=est)
        base = list(_ball_points(n, R * R))
    T = region.basis_transform
    if T is None:
        return base
    return [tuple(sum(a[i] * T[i][j] for i in range(n)) for j in range(n))
            for a in base]


def _ball_points(n: int, R2: Fraction):
    """Integer points with squared length <= R2, lexicographic order."""
    amax = math.isqrt(R2.numerator // R2.denominator)
    if n == 1:
        for a in range(-amax, amax + 1):
            yield (a,)
        return
    for a in range(-amax, amax + 1):
        rem = R2 - a * a
        for rest in _ball_points(n - 1, rem):
            yield (a,) + rest


def enumerate_region(region: Region,
                     region_cap: int = DEFAULT_REGION_CAP) -> list[AlgInt]:
    """The region as field elements, deterministic lexicographic order."""
    f = region.field
    return [AlgInt(f, c) for c in region_coords(region, region_cap)]


# ----------------------------------------------------------------------
# direct counting
# ----------------------------------------------------------------------

def count_visible_direct(field: FieldSpec, S: Sequence[PointTuple], m: int,
                         region: Region,
                         region_cap: int = DEFAULT_REGION_CAP,
                         tuple_cap: int = DEFAULT_TUPLE_CAP,
                         threads: int = 1) -> CountResult:
    """Exact count of visible tuples by testing every tuple in region^m."""
    S = _check_inputs(field, S, m, region)
    coords = region_coords(region, region_cap)
    W = len(coords)
    total = W ** m
    if total > tuple_cap:
        raise CapExceeded("tuple space exceeds cap", estimate=total)

    # |N(a - s_i)| tables, one per distinct s-coordinate; gcd of the norms
    # being 1 certifies visibility (N of the gcd ideal divides each of them)
    tabs = {}
    for s in S:
        for p in s.points:
            key = p.coords
            if key not in tabs:
                tabs[key] = [
                    abs(norm_of_coords(field, _sub(c, key))) for c in coords]
    s_tables = [[tabs[p.coords] for p in s.points] for s in S]
    s_coords = [[p.coords for p in s.points] for s in S]

    def test(idx: tuple[int, ...]) -> bool:
        for tables, scs in zip(s_tables, s_coords):
            g = 0
            for i in range(m):
                g = math.gcd(g, tables[i][idx[i]])
                if g == 1:
                    break
            if g == 1:
                continue
            if g == 0:
                return False
            diffs = [AlgInt(field, _sub(coords[idx[i]], scs[i]))
                     for i in range(m)]
            if il.ideal_from_generators(diffs).norm != 1:
                return False
        return True

    if threads <= 1:
        visible = sum(
            1 for idx in itertools.product(range(W), repeat=m) if test(idx))
    else:
        def chunk(lo: int, hi: int) -> int:
            cnt = 0
            for flat in range(lo, hi):
                idx = []
                v = flat
                for _ in range(m):
                    v, r = divmod(v, W)
                    idx.append(r)
                if test(tuple(reversed(idx))):
                    cnt += 1
            return cnt

        bounds = [(total * k // threads, total * (k + 1) // threads)
                  for k in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            visible = sum(ex.map(lambda b: chunk(*b), bounds))

    return CountResult(visible_count=visible, total_tuples=total,
                       density_estimate=Fraction(visible, total),
                       method="direct", region=region)


def _sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


# ----------------------------------------------------------------------
# sieve counting
# ----------------------------------------------------------------------

def count_visible_sieve(field: FieldSpec, S: Sequence[PointTuple], m: int,
                        region: Region,
                        region_cap: int = DEFAULT_REGION_CAP,
                        tuple_cap: int = DEFAULT_TUPLE_CAP,
                        seed: int = 0) -> CountResult:
    """Exact count by marking residue classes of all small-norm primes.

    An invisible tuple z (z != s) has all coordinates of z - s in some prime
    P, and any nonzero coordinate bounds N(P) by its norm, so primes of norm
    <= B := max |N(a - s_i)| suffice.  Marks are a union of coordinate-wise
    residue matches, stored in an m-dimensional boolean array.
    """
    S = _check_inputs(field, S, m, region)
    coords = region_coords(region, region_cap)
    W = len(coords)
    total = W ** m
    if total > tuple_cap:
        raise CapExceeded("tuple space exceeds cap", estimate=total)

    B = 1
    for key in {p.coords for s in S for p in s.points}:
        for c in coords:
            d = _sub(c, key)
            if any(d):
                nv = abs(norm_of_coords(field, d))
                if nv > B:
                    B = nv

    marks = np.zeros((W,) * m, dtype=bool)

    index_of = {c: i for i, c in enumerate(coords)}
    for s in S:
        idx = [index_of.get(p.coords) for p in s.points]
        if all(i is not None for i in idx):
            marks[tuple(idx)] = True

    if B >= 2:
        arr = np.array(coords, dtype=np.int64)
        amax = int(np.abs(arr).max()) if W else 0
        if field.degree * max(amax, 1) * B >= 2 ** 62:
            raise CapExceeded("sieve residue arithmetic would overflow int64",
                              estimate=field.degree * amax * B)
        for P in pr.primes_up_to_norm(field, B, seed):
            ids = _residue_ids(P, arr)
            for s in S:
                targets = [pr.reduce(p, P).encode() for p in s.points]
                sel = [np.nonzero(ids == t)[0] for t in targets]
                if any(len(x) == 0 for x in sel):
                    continue
                marks[np.ix_(*sel)] = True

    visible = total - int(marks.sum())
    return CountResult(visible_count=visible, total_tuples=total,
                       density_estimate=Fraction(visible, total),
                       method="sieve", region=region,
                       prime_norm_bound=B)


def _residue_ids(P: pr.PrimeIdeal, arr: np.ndarray) -> np.ndarray:
    """Packed residue of every coordinate row modulo P, vectorized."""
    rows = np.array(pr.reduction_rows(P), dtype=np.int64)
    reps = (arr @ rows) % P.under_p
    pows = P.under_p ** np.arange(P.f, dtype=np.int64)
    return reps @ pows


# ----------------------------------------------------------------------
# Monte Carlo
# ----------------------------------------------------------------------

def mc_estimate(field: FieldSpec, S: Sequence[PointTuple], m: int,
                region: Region, samples: int, seed: int,
                threads: int = 1) -> CountResult:
    """Estimate the visible density from uniform i.i.d. tuples of region^m.

    Coordinates come from a counter-based Philox stream keyed by the seed,
    so results are reproducible and independent of worker count.
    """
    if samples < 100:
        raise ValueError("need at least 100 samples")
    S = _check_inputs(field, S, m, region)
    n = field.degree
    gen = np.random.Generator(np.random.Philox(key=seed))
    need = samples * m
    if region.shape == "cube":
        L = region.L
        flat = gen.integers(-L, L + 1, size=(need, n), dtype=np.int64)
    else:
        R2 = region.size * region.size
        amax = math.isqrt(R2.numerator // R2.denominator)
        got = []
        count = 0
        while count < need:
            batch = gen.integers(-amax, amax + 1, size=(2 * need + 64, n),
                                 dtype=np.int64)
            sq = (batch * batch).sum(axis=1)
            keep = batch[sq * R2.denominator <= R2.numerator]
            got.append(keep)
            count += len(keep)
        flat = np.concatenate(got)[:need]
    if region.basis_transform is not None:
        flat = flat @ np.array(region.basis_transform, dtype=np.int64)
    pts = flat.reshape(samples, m, n)

    def chunk(lo: int, hi: int) -> int:
        hits = 0
        for k in range(lo, hi):
            z = il.point(field, [[int(x) for x in pts[k, i]] for i in range(m)])
            if il.is_visible_from_all(z, S):
                hits += 1
        return hits

    if threads <= 1:
        hits = chunk(0, samples)
    else:
        bounds = [(samples * k // threads, samples * (k + 1) // threads)
                  for k in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as ex:
            hits = sum(ex.map(lambda b: chunk(*b), bounds))

    phat = hits / samples
    stderr = math.sqrt(phat * (1 - phat) / samples)
    return CountResult(visible_count=hits, total_tuples=samples,
                       density_estimate=Fraction(hits, samples),
                       method="mc", region=region, mc_stderr=stderr)


# ----------------------------------------------------------------------
# ideal lattice counting checks
# ----------------------------------------------------------------------

def ideal_count_check(field: FieldSpec, I: IdealHNF, region: Region,
                      region_cap: int = DEFAULT_REGION_CAP) -> IdealCountCheck:
    """Count |I ∩ region| and compare with volume/N(I).

    The normalized error divides by (R/N^(1/n))^(n-1) for balls and by
    (2L/N^(1/n) + 1)^(n-1) for cubes, the shape the counting bound says is
    O(1) uniformly in the ideal and the region size.
    """
    if I.is_zero:
        raise ValueError("zero ideal")
    if I.field != field:
        raise ValueError("mismatched field")
    coords = region_coords(region, region_cap)
    count = _count_members(I, coords)
    n = field.degree
    vol = region.volume()
    main = vol / I.norm
    error = abs(Fraction(count) - main)
    radius_ratio = float(region.size) / I.norm ** (1.0 / n)
    if region.shape == "ball":
        denom = radius_ratio ** (n - 1)
    else:
        denom = (2 * radius_ratio + 1) ** (n - 1)
    return IdealCountCheck(count=count, main_term=main, error=error,
                           normalized_error=float(error) / denom)


def _count_members(I: IdealHNF, coords: list[tuple[int, ...]]) -> int:
    n = I.field.degree
    h = I.hnf
    hmax = max(abs(x) for row in h for x in row)
    amax = max((abs(x) for c in coords for x in c), default=0)
    if (amax + 1) * (hmax + 1) * n < 2 ** 50:
        c = np.array(coords, dtype=np.int64)
        ok = np.ones(len(coords), dtype=bool)
        for i in range(n):
            q, r = np.divmod(c[:, i], h[i][i])
            ok &= r == 0
            if i + 1 < n:
                c[:, i + 1:] -= q[:, None] * np.array(h[i][i + 1:],
                                                      dtype=np.int64)
        return int(ok.sum())
    return sum(1 for cc in coords
               if il.contains(I, AlgInt(I.field, cc)))


def _check_inputs(field: FieldSpec, S: Sequence[PointTuple], m: int,
                  region: Region) -> list[PointTuple]:
    if region.field != field:
        raise ValueError("region belongs to a different field")
    if m < 2:
        raise ValueError("m must be >= 2")
    return il.validate_point_set(S, field, m)
