"""p-spectral radii of uniform hypergraphs.

The p-spectral radius of an r-uniform hypergraph H is the maximum of

    P_H(x) = r * sum over edges e of prod(x_v for v in e)

over the nonnegative part of the unit p-sphere (the maximum over the whole
sphere is always attained at a nonnegative point, so nothing is lost).  A
maximizer with positive entries satisfies the stationarity equations

    grad_i / r = lambda * x_i**(p-1)      for every i with x_i > 0.

Three solve regimes, chosen by p relative to r-1:

* p > r-1: multiplicative fixed point x <- (grad/r)**(1/(p-1)), p-normalized.
  On connected inputs the converged witness is strictly positive.
* 1 < p <= r-1: projected gradient ascent with a Barzilai-Borwein step and
  backtracking; maximizers may sit on the boundary of the orthant.
* p = 1: the maximizer can hide on any face of the simplex, so every support
  realizable as a union of edges is searched by simplex ascent.

All randomness flows from a single 64-bit seed; restart k draws from a rng
seeded with (seed, k), so results never depend on execution order or worker
count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError, ParameterDomainError
from .hgraph import Graph, UniformHypergraph, as_hypergraph

_POSITIVITY_FLOOR = 1e-12
_STAGNATION_WINDOW = 300


@dataclass(frozen=True)
class SolverOptions:
    """Knobs for p_spectral_radius; defaults favor accuracy over speed."""

    tol: float = 1e-10
    restarts: int = 64
    max_iters: int = 100_000
    seed: int = 1729
    tie_eps: float = 1e-7


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative weights with unit p-norm (empty tuple for the 0 estimate)."""

    entries: tuple[float, ...]
    p: float

    def __post_init__(self):
        if any(v < 0 or not math.isfinite(v) for v in self.entries):
            raise ParameterDomainError("weights must be finite and nonnegative")
        if self.entries:
            nrm = float(np.sum(np.asarray(self.entries) ** self.p) ** (1.0 / self.p))
            if abs(nrm - 1.0) > 1e-12:
                raise ParameterDomainError(f"weights have p-norm {nrm}, expected 1")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.entries, dtype=float)


@dataclass(frozen=True)
class SpectralEstimate:
    """Solver output: value, witness, and convergence diagnostics."""

    lambda_: float
    witness: WeightVector
    residual: float
    iterations: int
    restarts_used: int
    converged: bool
    seed: int

    def to_json_dict(self) -> dict:
        return {
            "lambda": self.lambda_,
            "p": self.witness.p,
            "residual": self.residual,
            "witness": list(self.witness.entries),
            "iterations": self.iterations,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "seed": self.seed,
        }


class _Ops:
    """Vectorized polynomial form and gradient for one hypergraph."""

    def __init__(self, H: UniformHypergraph):
        self.n = H.n
        self.r = H.r
        self.m = H.m
        self.edges = np.asarray(H.edges, dtype=np.intp).reshape(H.m, H.r)
        self.adj = None
        self._scatter = None
        if H.r == 2 and H.m > 0:
            # graphs dominate the sampled suites; one symmetric matvec beats
            # the per-edge cumprod path by a wide margin at these sizes
            adj = np.zeros((H.n, H.n))
            for a, b in H.edges:
                adj[a, b] = adj[b, a] = 1.0
            self.adj = adj

    def poly(self, x: np.ndarray) -> float:
        if self.m == 0:
            return 0.0
        if self.adj is not None:
            return float(x @ (self.adj @ x))
        return float(self.r * np.prod(x[self.edges], axis=1).sum())

    def grad(self, x: np.ndarray) -> np.ndarray:
        g = np.zeros(self.n)
        if self.m == 0:
            return g
        if self.adj is not None:
            return 2.0 * (self.adj @ x)
        vals = x[self.edges]
        left = np.ones_like(vals)
        right = np.ones_like(vals)
        if self.r > 1:
            left[:, 1:] = np.cumprod(vals[:, :-1], axis=1)
            right[:, :-1] = np.cumprod(vals[:, :0:-1], axis=1)[:, ::-1]
        contrib = self.r * left * right
        g = np.bincount(self.edges.ravel(), weights=contrib.ravel(), minlength=self.n)
        return g

    def poly_batch(self, X: np.ndarray) -> np.ndarray:
        """P_H evaluated on each row of X."""
        if self.m == 0:
            return np.zeros(len(X))
        if self.adj is not None:
            return ((X @ self.adj) * X).sum(axis=1)
        return self.r * np.prod(X[:, self.edges], axis=2).sum(axis=1)

    def grad_batch(self, X: np.ndarray) -> np.ndarray:
        """Gradient of P_H on each row of X."""
        if self.m == 0:
            return np.zeros_like(X)
        if self.adj is not None:
            return 2.0 * (X @ self.adj)
        vals = X[:, self.edges]
        left = np.ones_like(vals)
        right = np.ones_like(vals)
        if self.r > 1:
            left[:, :, 1:] = np.cumprod(vals[:, :, :-1], axis=2)
            right[:, :, :-1] = np.cumprod(vals[:, :, :0:-1], axis=2)[:, :, ::-1]
        contrib = (self.r * left * right).reshape(len(X), -1)
        if self._scatter is None:
            # one-hot slot-to-vertex map; turns the per-edge scatter-add into
            # a single matmul across the whole batch
            s = np.zeros((self.m * self.r, self.n))
            s[np.arange(self.m * self.r), self.edges.ravel()] = 1.0
            self._scatter = s
        return contrib @ self._scatter


def _as_vector(H: UniformHypergraph, x) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.shape != (H.n,):
        raise ParameterDomainError(f"weight list must have length {H.n}")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise ParameterDomainError("weights must be finite and nonnegative")
    return arr


def polynomial_form(H: UniformHypergraph, x) -> float:
    """Evaluate P_H at a nonnegative weight list (no normalization assumed)."""
    return _Ops(H).poly(_as_vector(H, x))


def gradient(H: UniformHypergraph, x) -> list[float]:
    """Gradient of P_H; component i is r times the sum of products over edges
    through i of the other endpoints' weights."""
    return list(_Ops(H).grad(_as_vector(H, x)))


def eigen_residual(H: UniformHypergraph, p: float, lam: float, x: WeightVector) -> float:
    """Max deviation from stationarity over the support of x."""
    arr = _as_vector(H, x.entries)
    g = _Ops(H).grad(arr)
    supp = arr > 0
    if not supp.any():
        return abs(lam)
    return float(np.abs(g[supp] / H.r - lam * arr[supp] ** (p - 1)).max())


def _pnormalize(y: np.ndarray, p: float) -> np.ndarray | None:
    if p == 1.0:
        # iterates are clipped nonnegative and bounded, so the plain sum is
        # safe without the peak rescale
        s = float(np.sum(y))
        if not math.isfinite(s) or s <= 0.0:
            return None
        return y / s
    peak = y.max()
    if not np.isfinite(peak) or peak <= 0:
        return None
    y = y / peak
    nrm = np.sum(y**p) ** (1.0 / p)
    return y / nrm


def _start_vector(ops: _Ops, rng: np.random.Generator | None, p: float) -> np.ndarray:
    x = np.zeros(ops.n)
    supp = np.zeros(ops.n, dtype=bool)
    supp[ops.edges.ravel()] = True
    if rng is None:
        x[supp] = 1.0
    else:
        x[supp] = 0.1 + rng.random(int(supp.sum()))
    return _pnormalize(x, p)


@dataclass
class _RunResult:
    lam: float
    x: np.ndarray
    residual: float
    iterations: int
    converged: bool


def _iterate_multiplicative(ops, p, x, tol, max_iters) -> _RunResult:
    # theta=1 is the plain fixed point, convergent for p >= r.  In the band
    # r-1 < p < r the dominant oscillation can be marginally stable, so start
    # damped there; the averaged update has the same fixed points.  Stagnation
    # requires geometric progress: slow residual creep must not stall a run
    # for the full iteration budget.
    expo = 1.0 / (p - 1.0)
    theta = 1.0 if p >= ops.r else 0.5
    best = None
    mark_resid = math.inf
    mark_iter = 0
    for it in range(1, max_iters + 1):
        g = ops.grad(x)
        lam = float(x @ g) / ops.r
        supp = x > 0
        resid = float(np.abs(g[supp] / ops.r - lam * x[supp] ** (p - 1.0)).max()) if supp.any() else abs(lam)
        if best is None or resid < best.residual:
            best = _RunResult(lam, x.copy(), resid, it, False)
        if resid <= tol:
            best.converged = True
            return best
        if resid <= 0.5 * mark_resid:
            mark_resid = resid
            mark_iter = it
        elif it - mark_iter > _STAGNATION_WINDOW:
            if theta > 0.26:
                theta *= 0.5
                mark_iter = it
                mark_resid = resid
            else:
                return best
        base = g / ops.r
        if theta != 1.0:
            base = theta * base + (1.0 - theta) * np.where(supp, x, 0.0) ** (p - 1.0)
        y = np.power(base, expo)
        x_new = _pnormalize(y, p)
        if x_new is None:
            return best
        x = x_new
    return best


def _iterate_ascent(ops, p, x, tol, max_iters, window=_STAGNATION_WINDOW) -> _RunResult:
    # Projected gradient ascent on the nonnegative p-sphere: step along the
    # gradient, clip, renormalize.  Barzilai-Borwein step seeding plus
    # backtracking keeps every accepted step an improvement.
    best = None
    eta = 0.5
    last_step = None
    prev_x = None
    prev_g = None
    mark_resid = math.inf
    mark_iter = 0
    for it in range(1, max_iters + 1):
        g = ops.grad(x)
        lam = float(x @ g) / ops.r
        supp = x > 0
        resid = float(np.abs(g[supp] / ops.r - lam * x[supp] ** (p - 1.0)).max()) if supp.any() else abs(lam)
        if best is None or resid < best.residual:
            best = _RunResult(lam, x.copy(), resid, it, False)
        if resid <= tol:
            best.converged = True
            return best
        if resid <= 0.5 * mark_resid:
            mark_resid = resid
            mark_iter = it
        elif it - mark_iter > window:
            return best
        # Step along the tangent-projected gradient: raw-gradient steps stall
        # where g is parallel to the renormalization direction even though the
        # eigenequations are far from satisfied.
        u = np.where(supp, x ** (p - 1.0), 0.0)
        uu = float(u @ u)
        d = g - (float(g @ u) / uu) * u if uu > 0 else g
        if prev_x is not None:
            dx = x - prev_x
            dg = g - prev_g
            denom = float(dg @ dg)
            if denom > 0:
                bb = abs(float(dx @ dg)) / denom
                if math.isfinite(bb) and bb > 0:
                    eta = min(max(bb, 1e-12), 1e6)
        prev_x, prev_g = x, g
        accepted = False
        # BB estimates overshoot along the projected direction; growing from
        # the last accepted step saves most of the backtracking halvings
        step = min(eta, 4.0 * last_step) if last_step is not None else eta
        for _ in range(60):
            cand = _pnormalize(np.maximum(x + step * d, 0.0), p)
            if cand is not None:
                cand_lam = ops.poly(cand)
                if cand_lam > lam + 1e-18:
                    x = cand
                    accepted = True
                    last_step = step
                    break
            step *= 0.5
        if not accepted:
            return best
    return best


def _union_supports(H: UniformHypergraph, cap: int = 4096) -> list[int]:
    """All vertex sets realizable as unions of edges, as bitmasks."""
    masks = []
    for e in H.edges:
        m = 0
        for v in e:
            m |= 1 << v
        masks.append(m)
    closure = {0}
    for em in masks:
        closure |= {u | em for u in closure}
        if len(closure) > cap:
            raise ParameterDomainError(
                f"support enumeration needs <= {cap} edge-union supports, got more"
            )
    closure.discard(0)
    return sorted(closure)


def _batch_ascent_p1(ops: _Ops, X: np.ndarray, M: np.ndarray, tol, max_iters, window):
    """Row-parallel projected ascent at p=1, one row per (support, start).

    A row never needs its sub-hypergraph: coordinates outside its support
    stay zero, so the full polynomial form is already the restricted one,
    and masking the gradient by the support finishes the restriction.  Same
    update rule, stagnation window, and acceptance test as the scalar loop;
    rows drop out as they converge, stall, or exhaust the line search.
    """
    R, n = X.shape
    best_lam = np.full(R, -np.inf)
    best_x = X.copy()
    best_resid = np.full(R, np.inf)
    best_iter = np.zeros(R, dtype=int)
    conv = np.zeros(R, dtype=bool)
    eta = np.full(R, 0.5)
    last_step = np.full(R, np.nan)
    have_prev = np.zeros(R, dtype=bool)
    prev_X = np.zeros_like(X)
    prev_G = np.zeros_like(X)
    mark_resid = np.full(R, np.inf)
    mark_iter = np.zeros(R, dtype=int)
    active = np.ones(R, dtype=bool)
    for it in range(1, max_iters + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Xa = X[idx]
        G = ops.grad_batch(Xa) * M[idx]
        lam = (Xa * G).sum(axis=1) / ops.r
        supp = Xa > 0
        resid = np.where(supp, np.abs(G / ops.r - lam[:, None]), 0.0).max(axis=1)
        better = resid < best_resid[idx]
        bidx = idx[better]
        best_resid[bidx] = resid[better]
        best_lam[bidx] = lam[better]
        best_x[bidx] = Xa[better]
        best_iter[bidx] = it
        done = resid <= tol
        conv[idx[done]] = True
        prog = resid <= 0.5 * mark_resid[idx]
        mark_resid[idx[prog]] = resid[prog]
        mark_iter[idx[prog]] = it
        stall = ~prog & (it - mark_iter[idx] > window)
        go = ~done & ~stall
        active[idx[~go]] = False
        gidx = idx[go]
        if gidx.size == 0:
            continue
        Xg = Xa[go]
        Gg = G[go]
        lamg = lam[go]
        suppg = supp[go]
        cnt = suppg.sum(axis=1)
        gdot = np.where(suppg, Gg, 0.0).sum(axis=1)
        D = Gg - (gdot / cnt)[:, None] * suppg
        hp = have_prev[gidx]
        if hp.any():
            dX = Xg - prev_X[gidx]
            dG = Gg - prev_G[gidx]
            denom = (dG * dG).sum(axis=1)
            bb = np.abs((dX * dG).sum(axis=1)) / np.where(denom > 0, denom, 1.0)
            ok = hp & (denom > 0) & np.isfinite(bb) & (bb > 0)
            eta[gidx[ok]] = np.clip(bb[ok], 1e-12, 1e6)
        prev_X[gidx] = Xg
        prev_G[gidx] = Gg
        have_prev[gidx] = True
        step = eta[gidx].copy()
        ls = last_step[gidx]
        wls = ~np.isnan(ls)
        step[wls] = np.minimum(step[wls], 4.0 * ls[wls])
        rem = np.arange(gidx.size)
        accepted = np.zeros(gidx.size, dtype=bool)
        for _ in range(60):
            if rem.size == 0:
                break
            C = np.maximum(Xg[rem] + step[rem, None] * D[rem], 0.0)
            s = C.sum(axis=1)
            valid = np.isfinite(s) & (s > 0)
            Cn = C / np.where(valid, s, 1.0)[:, None]
            clam = ops.poly_batch(Cn)
            ok = valid & (clam > lamg[rem] + 1e-18)
            hit = rem[ok]
            if hit.size:
                Xg[hit] = Cn[ok]
                accepted[hit] = True
                last_step[gidx[hit]] = step[hit]
            rem = rem[~ok]
            step[rem] *= 0.5
        X[gidx] = Xg
        active[gidx[~accepted]] = False
    return best_lam, best_x, best_resid, best_iter, conv


def _solve_p1(H: UniformHypergraph, ops: _Ops, opts: SolverOptions) -> SpectralEstimate:
    supports = _union_supports(H)
    extra_starts = max(1, opts.restarts // max(1, len(supports)))
    reps = 1 + extra_starts
    sel = np.zeros((len(supports), H.n), dtype=bool)
    for i, mask in enumerate(supports):
        for v in range(H.n):
            sel[i, v] = bool(mask >> v & 1)
    X = np.zeros((len(supports) * reps, H.n))
    M = np.repeat(sel, reps, axis=0)
    row = 0
    for s_idx in range(len(supports)):
        cols = np.flatnonzero(sel[s_idx])
        for k in range(reps):
            if k == 0:
                X[row, cols] = 1.0
            else:
                rng = np.random.default_rng(np.random.SeedSequence((opts.seed, s_idx, k)))
                X[row, cols] = 0.1 + rng.random(cols.size)
            row += 1
    X /= X.sum(axis=1, keepdims=True)
    if not len(X):
        raise NonConvergenceError("no admissible start produced an iterate")
    # Short stagnation window: a run that drifts toward the boundary is
    # migrating to a smaller support, and that support's own rows solve it
    # as an interior problem.
    lam_rows, x_rows, _, iter_rows, _ = _batch_ascent_p1(ops, X, M, opts.tol, opts.max_iters, window=60)
    w = int(np.argmax(lam_rows))
    x = x_rows[w] / np.sum(x_rows[w])
    lam = ops.poly(x)
    resid = _residual_of(ops, 1.0, lam, x)
    if resid > opts.tol:
        polished = _polish_newton(H, 1.0, x)
        if polished is not None and polished.sum() > 0:
            x2 = polished / np.sum(polished)
            lam2 = ops.poly(x2)
            resid2 = _residual_of(ops, 1.0, lam2, x2)
            if resid2 < resid and lam2 >= lam - 1e-12:
                x, lam, resid = x2, lam2, resid2
    witness = WeightVector(tuple(float(v) for v in x), 1.0)
    return SpectralEstimate(
        lambda_=lam,
        witness=witness,
        residual=resid,
        iterations=int(iter_rows[w]),
        restarts_used=len(X),
        converged=resid <= opts.tol,
        seed=opts.seed,
    )


def _residual_of(ops: _Ops, p: float, lam: float, x: np.ndarray) -> float:
    g = ops.grad(x)
    supp = x > 0
    if not supp.any():
        return abs(lam)
    return float(np.abs(g[supp] / ops.r - lam * x[supp] ** (p - 1.0)).max())


def _polish_newton(H: UniformHypergraph, p: float, x: np.ndarray) -> np.ndarray | None:
    """Few Newton steps on the stationarity system, restricted to the support.

    Ascent iterates plateau in value while the witness still carries ~sqrt of
    the value error; Newton converges quadratically from there.  Returns the
    refined full-length vector, or None when the support is unusable.
    """
    mask = x > 1e-12 * x.max()
    idx = np.nonzero(mask)[0]
    pos = {int(v): i for i, v in enumerate(idx)}
    sub_edges = [tuple(pos[v] for v in e) for e in H.edges if all(mask[v] for v in e)]
    if not sub_edges:
        return None
    s = len(idx)
    r = H.r
    sub_ops = _Ops(UniformHypergraph(r, s, tuple(sub_edges)))
    xs = x[idx].astype(float)
    xs /= np.sum(xs**p) ** (1.0 / p)
    g = sub_ops.grad(xs)
    lam = float(xs @ g) / r
    best_xs = xs.copy()
    best_err = math.inf
    for _ in range(12):
        g = sub_ops.grad(xs)
        xp1 = xs ** (p - 1.0)
        F = g / r - lam * xp1
        C = (np.sum(xs**p) - 1.0) / p
        err = max(float(np.abs(F).max()), abs(C))
        if err < best_err:
            best_err = err
            best_xs = xs.copy()
        if err <= 1e-15:
            break
        hess = np.zeros((s, s))
        for e in sub_edges:
            for a in range(len(e)):
                for b in range(a + 1, len(e)):
                    prod = 1.0
                    for c, v in enumerate(e):
                        if c != a and c != b:
                            prod *= xs[v]
                    hess[e[a], e[b]] += r * prod
                    hess[e[b], e[a]] += r * prod
        J = np.zeros((s + 1, s + 1))
        J[:s, :s] = hess / r
        if p > 1.0:
            J[np.arange(s), np.arange(s)] -= lam * (p - 1.0) * xs ** (p - 2.0)
        J[:s, s] = -xp1
        J[s, :s] = xp1
        # lstsq handles the singular systems that arise on ridges of
        # non-isolated maximizers, stepping onto the stationary manifold
        try:
            d = np.linalg.lstsq(J, -np.concatenate([F, [C]]), rcond=None)[0]
        except np.linalg.LinAlgError:
            break
        t = 1.0
        for _ in range(40):
            if np.all(xs + t * d[:s] > 0):
                break
            t *= 0.5
        else:
            break
        xs = xs + t * d[:s]
        lam = lam + t * d[s]
    out = np.zeros(H.n)
    out[idx] = best_xs
    return out


def p_spectral_radius(H: UniformHypergraph | Graph, p: float, opts: SolverOptions | None = None) -> SpectralEstimate:
    """Best p-spectral radius estimate over seeded multistart.

    The reported lambda is P_H at the returned witness, so it is a rigorous
    lower bound on the true value even when `converged` is False.  Restart 0
    starts uniform on the non-isolated vertices; restart k draws its start
    from a rng seeded with (seed, k).  The best run wins by value, earliest
    restart on ties, making the result independent of evaluation order.
    """
    if isinstance(H, Graph):
        H = as_hypergraph(H)
    if opts is None:
        opts = SolverOptions()
    if not (p >= 1.0 and math.isfinite(p)):
        raise ParameterDomainError("p must be a finite number >= 1")
    if opts.restarts < 1 or opts.max_iters < 1:
        raise ParameterDomainError("restarts and max_iters must be positive")
    if H.m == 0:
        return SpectralEstimate(
            lambda_=0.0,
            witness=WeightVector((), p),
            residual=0.0,
            iterations=0,
            restarts_used=0,
            converged=True,
            seed=opts.seed,
        )
    ops = _Ops(H)
    if p == 1.0:
        return _solve_p1(H, ops, opts)

    multiplicative = p > H.r - 1
    best: _RunResult | None = None
    for k in range(opts.restarts):
        rng = None if k == 0 else np.random.default_rng(np.random.SeedSequence((opts.seed, k)))
        x0 = _start_vector(ops, rng, p)
        if x0 is None:
            continue
        if multiplicative:
            run = _iterate_multiplicative(ops, p, x0, opts.tol, opts.max_iters)
        else:
            run = _iterate_ascent(ops, p, x0, opts.tol, opts.max_iters)
        if run is not None and (best is None or run.lam > best.lam):
            best = run
    if best is None:
        raise NonConvergenceError("no admissible start produced an iterate")
    x = _pnormalize(best.x, p)
    lam = ops.poly(x)
    resid = _residual_of(ops, p, lam, x)
    if resid > opts.tol:
        # Near the regime boundary the ascent can strand tiny positive mass
        # off the true support; retry the polish on progressively truncated
        # supports until one lands.
        for cut in (0.0, 1e-8, 1e-5, 1e-2):
            xc = np.where(x > cut * x.max(), x, 0.0) if cut > 0.0 else x
            if cut > 0.0 and np.count_nonzero(xc) in (0, np.count_nonzero(x)):
                continue
            polished = _polish_newton(H, p, xc)
            if polished is None:
                continue
            renorm = _pnormalize(polished, p)
            if renorm is None:
                continue
            lam2 = ops.poly(renorm)
            resid2 = _residual_of(ops, p, lam2, renorm)
            if resid2 < resid and lam2 >= lam - 1e-12:
                x, lam, resid = renorm, lam2, resid2
            if resid <= opts.tol:
                break
    converged = resid <= opts.tol
    if multiplicative and converged and H.is_connected():
        # Connected inputs in this regime admit only strictly positive
        # converged witnesses; a zero entry exposes a bad fixed point.
        converged = bool(x.min() > _POSITIVITY_FLOOR)
    witness = WeightVector(tuple(float(v) for v in x), p)
    return SpectralEstimate(
        lambda_=lam,
        witness=witness,
        residual=resid,
        iterations=best.iterations,
        restarts_used=opts.restarts,
        converged=converged,
        seed=opts.seed,
    )


# ---------------------------------------------------------------------------
# independent oracle


def oracle_spectral_radius(H: UniformHypergraph | Graph, p: float) -> float:
    """Reference value for n <= 8 by constrained optimization over supports.

    Deliberately shares no iteration code with p_spectral_radius: each support
    is handed to scipy's SLSQP from a dense set of starts.  For p > r-1 on a
    connected input only the full support can carry a maximizer, so smaller
    faces are skipped.
    """
    from scipy.optimize import minimize

    if isinstance(H, Graph):
        H = as_hypergraph(H)
    stripped, _ = H.strip_isolated()
    if stripped.n > 8:
        raise ParameterDomainError("oracle is limited to n <= 8 after stripping")
    if not (p >= 1.0 and math.isfinite(p)):
        raise ParameterDomainError("p must be a finite number >= 1")
    if stripped.m == 0:
        return 0.0
    H = stripped

    if p > H.r - 1 and H.is_connected():
        support_masks = [(1 << H.n) - 1]
    else:
        support_masks = _union_supports(H)

    seed_key = hash((H.r, H.n, H.edges, round(p * 1e9))) & 0xFFFFFFFF
    rng = np.random.default_rng(np.random.SeedSequence((0xBEEF, seed_key)))
    best = 0.0
    for mask in support_masks:
        verts = [v for v in range(H.n) if mask >> v & 1]
        sub_edges = [e for e in H.edges if all(mask >> v & 1 for v in e)]
        if not sub_edges:
            continue
        remap = {v: i for i, v in enumerate(verts)}
        sub = UniformHypergraph(H.r, len(verts), tuple(tuple(remap[v] for v in e) for e in sub_edges))
        ops = _Ops(sub)
        nv = sub.n

        def neg_poly(z, ops=ops):
            return -ops.poly(np.abs(z))

        def neg_grad(z, ops=ops):
            return -ops.grad(np.abs(z))

        def norm_con(z, p=p):
            return float(np.sum(np.abs(z) ** p) - 1.0)

        def norm_jac(z, p=p):
            return p * np.abs(z) ** (p - 1.0)

        starts = [np.full(nv, nv ** (-1.0 / p))]
        for _ in range(4):
            draw = rng.dirichlet(np.ones(nv)) + 1e-3
            starts.append(draw / np.sum(draw**p) ** (1.0 / p))
        for x0 in starts:
            res = minimize(
                neg_poly,
                x0,
                jac=neg_grad,
                method="SLSQP",
                bounds=[(0.0, 1.0)] * nv,
                constraints=[{"type": "eq", "fun": norm_con, "jac": norm_jac}],
                options={"ftol": 1e-14, "maxiter": 500},
            )
            z = np.clip(res.x, 0.0, None)
            nrm = np.sum(z**p) ** (1.0 / p)
            if nrm > 0:
                best = max(best, ops.poly(z / nrm))
    return best


# ---------------------------------------------------------------------------
# closed forms


def star_lambda(n: int, p: float) -> float:
    """p-spectral radius of the star on n vertices: 2**(1-2/p) * (n-1)**(1-1/p)."""
    if n < 2:
        raise ParameterDomainError("star closed form needs n >= 2")
    if not (p >= 1.0 and math.isfinite(p)):
        raise ParameterDomainError("p must be a finite number >= 1")
    return 2.0 ** (1.0 - 2.0 / p) * (n - 1.0) ** (1.0 - 1.0 / p)


def star_plus_lambda_p2(n: int) -> float:
    """2-spectral radius of the star on n-1 vertices with one extra edge
    between two leaves: the largest root of x^3 - x^2 - (n-2)x + (n-4)."""
    if n < 5:
        raise ParameterDomainError("closed form needs n >= 5")

    def f(x: float) -> float:
        return ((x - 1.0) * x - (n - 2.0)) * x + (n - 4.0)

    lo = (1.0 + math.sqrt(1.0 + 3.0 * (n - 2.0))) / 3.0  # past the last bend
    hi = max(lo + 1.0, 2.0)
    while f(hi) < 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    x = 0.5 * (lo + hi)
    for _ in range(4):  # Newton polish
        d = (3.0 * x - 2.0) * x - (n - 2.0)
        if d == 0:
            break
        x -= f(x) / d
    return x


def suspension_factor(r: int, p: float) -> float:
    """Ratio lambda(H*K1)/lambda(H) for r-uniform H: (r+1)**(1-(r+1)/p) / r**(1-r/p)."""
    if r < 1:
        raise ParameterDomainError("rank must be >= 1")
    if not (p >= 1.0 and math.isfinite(p)):
        raise ParameterDomainError("p must be a finite number >= 1")
    return (r + 1.0) ** (1.0 - (r + 1.0) / p) / r ** (1.0 - r / p)


def motzkin_straus_lambda1(G: Graph) -> float:
    """1-spectral radius of a graph: 1 - 1/clique_number (0 when edgeless)."""
    from .hgraph import graph_stats

    if G.m == 0:
        return 0.0
    return 1.0 - 1.0 / graph_stats(G).clique_number


@dataclass(frozen=True)
class ScanPoint:
    p: float
    lambda_: float
    normalized: float
    converged: bool


def lambda_p_monotone_scan(
    H: UniformHypergraph | Graph, p_grid: list[float], opts: SolverOptions | None = None
) -> list[ScanPoint]:
    """Solve along an ascending p grid; `normalized` is (lambda/(r*m))**p,
    which never increases in p for a fixed hypergraph."""
    if isinstance(H, Graph):
        H = as_hypergraph(H)
    if list(p_grid) != sorted(p_grid) or not p_grid:
        raise ParameterDomainError("p grid must be nonempty and ascending")
    if H.m == 0:
        raise ParameterDomainError("scan needs at least one edge")
    out = []
    for p in p_grid:
        est = p_spectral_radius(H, p, opts)
        normalized = (est.lambda_ / (H.r * H.m)) ** p
        out.append(ScanPoint(p=p, lambda_=est.lambda_, normalized=normalized, converged=est.converged))
    return out
