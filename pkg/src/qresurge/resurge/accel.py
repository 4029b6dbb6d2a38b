"""Richardson extrapolation and small linear-algebra helpers."""

from __future__ import annotations

from math import comb, factorial


class IllConditionedError(ArithmeticError):
    pass


def richardson(seq, n: int, d: int, mp):
    """Order-d Richardson transform of ``seq`` at index n.

    If s_m = s + a_1/m + ... + a_d/m^d + O(m^-(d+1)), the combination

        sum_{k=0..d} s_{n+k} (n+k)^d (-1)^(k+d) / (k! (d-k)!)

    cancels the first d correction terms.  ``seq`` is indexed by m.
    """
    acc = mp.mpc(0)
    for k in range(d + 1):
        w = mp.mpf((n + k) ** d * (-1) ** (k + d) * comb(d, k)) / factorial(d)
        acc += w * seq[n + k]
    return acc


def lstsq(rows, rhs, mp, max_cond_bits: int | None = None):
    """Least-squares solution of rows @ x = rhs with column equilibration.

    Returns ``(x, cond)`` where ``cond`` is the ratio of extreme singular
    values of the equilibrated matrix.  Raises :class:`IllConditionedError`
    when log2(cond) exceeds ``max_cond_bits``.
    """
    m = len(rows)
    k = len(rows[0])
    if m < k:
        raise ValueError(f"need at least {k} equations, got {m}")
    scales = []
    for j in range(k):
        s = mp.sqrt(mp.fsum(abs(rows[i][j]) ** 2 for i in range(m)))
        scales.append(s if s else mp.mpf(1))
    A = mp.matrix(m, k)
    for i in range(m):
        for j in range(k):
            A[i, j] = rows[i][j] / scales[j]
    b = mp.matrix([mp.mpc(v) for v in rhs])
    sv = (mp.svd_c if _is_complex(A, mp) else mp.svd_r)(A, compute_uv=False)
    smax = max(abs(v) for v in sv)
    smin = min(abs(v) for v in sv)
    cond = smax / smin if smin else mp.inf
    if max_cond_bits is not None and (cond == mp.inf or mp.log(cond, 2) > max_cond_bits):
        raise IllConditionedError(f"least-squares system is ill-conditioned (condition ~ {mp.nstr(cond, 3)})")
    # normal equations are adequate at the working precision once equilibrated
    AH = A.H
    x = mp.lu_solve(AH * A, AH * b)
    return [x[j] / scales[j] for j in range(k)], cond


def _is_complex(A, mp):
    for i in range(A.rows):
        for j in range(A.cols):
            v = A[i, j]
            if isinstance(v, mp.mpc) and v.imag:
                return True
    return False
