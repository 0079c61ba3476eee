"""Generate the classical modular polynomial data files.

Phi_ell(X, Y) is built from q-expansions: it is the product of (X - f_i)
over the ell+1 functions f_0 = j(ell*tau) and f_i = j((tau + i)/ell).
Expanding in s = q^(1/ell) with zeta an ell-th root of unity, the f_i are
j-series evaluated at zeta^i s. Roots of unity are tracked exactly in the
group ring Z[x]/(x^ell - 1); after multiplying out, every X-coefficient is
a rational q-series with a pole of order at most ell+1, which pole-killing
rewrites as a polynomial in j.

Usage: python3 tools/gen_phi.py ELL [OUTFILE]
"""

from __future__ import annotations

import sys


# ---------------------------------------------------------------------------
# integer q-series for j


def j_q_series(nterms: int) -> dict[int, int]:
    """Coefficients of j(q) = 1/q + 744 + ... through q^nterms, exactly."""
    N = nterms + 2
    # E4 = 1 + 240 sum sigma_3(n) q^n
    e4 = [0] * (N + 1)
    e4[0] = 1
    for n in range(1, N + 1):
        s3 = sum(d**3 for d in range(1, n + 1) if n % d == 0)
        e4[n] = 240 * s3
    e4_3 = _poly_mul(_poly_mul(e4, e4, N), e4, N)
    # Delta / q = prod (1 - q^n)^24
    dq = [0] * (N + 1)
    dq[0] = 1
    from math import comb

    for n in range(1, N + 1):
        factor = [0] * (N + 1)
        for t in range(0, N // n + 1):
            factor[n * t] = (-1) ** t * comb(24, t) if t <= 24 else 0
        dq = _poly_mul(dq, factor, N)
    inv = _poly_inv(dq, N)
    series = _poly_mul(e4_3, inv, N)
    return {k - 1: series[k] for k in range(0, nterms + 2)}


def _poly_mul(a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * (N + 1)
    for i, ai in enumerate(a):
        if ai == 0 or i > N:
            continue
        for j, bj in enumerate(b):
            if i + j > N:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def _poly_inv(a: list[int], N: int) -> list[int]:
    assert a[0] == 1
    inv = [0] * (N + 1)
    inv[0] = 1
    for n in range(1, N + 1):
        inv[n] = -sum(a[k] * inv[n - k] for k in range(1, n + 1) if k < len(a))
    return inv


# ---------------------------------------------------------------------------
# group ring Z[x]/(x^ell - 1) and Laurent series over it


def ring_mul(a: tuple, b: tuple, ell: int) -> tuple:
    out = [0] * ell
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[(i + j) % ell] += ai * bj
    return tuple(out)


def ring_scalar(c: int, ell: int) -> tuple:
    return (c,) + (0,) * (ell - 1)


def ring_rational(a: tuple) -> int:
    """Value of a as a rational integer; requires equal zeta-coefficients."""
    rest = set(a[1:])
    assert len(rest) <= 1, f"not rational: {a}"
    tail = a[1] if len(a) > 1 else 0
    return a[0] - tail


class Series:
    """Laurent series in s with group-ring coefficients, exponent-capped."""

    def __init__(self, coeffs: dict[int, tuple], ell: int):
        self.c = {k: v for k, v in coeffs.items() if any(v)}
        self.ell = ell

    def mul(self, other: "Series", keep: int) -> "Series":
        out: dict[int, tuple] = {}
        for i, ai in self.c.items():
            for j, bj in other.c.items():
                k = i + j
                if k > keep:
                    continue
                prod = ring_mul(ai, bj, self.ell)
                if k in out:
                    out[k] = tuple(x + y for x, y in zip(out[k], prod))
                else:
                    out[k] = prod
        return Series(out, self.ell)

    def sub(self, other: "Series") -> "Series":
        out = dict(self.c)
        for k, v in other.c.items():
            if k in out:
                out[k] = tuple(x - y for x, y in zip(out[k], v))
            else:
                out[k] = tuple(-x for x in v)
        return Series(out, self.ell)

    def truncate(self, keep: int) -> "Series":
        return Series({k: v for k, v in self.c.items() if k <= keep}, self.ell)


def build_phi(ell: int) -> dict[tuple[int, int], int]:
    """Coefficient table {(i, j): c} of Phi_ell, i = X-degree, j = Y-degree."""
    depth = ell * ell + 3 * ell
    j = j_q_series(depth)
    keep_final = 2 * ell

    # f_0 = j(s^(ell^2)): rational coefficients at exponents ell^2 * k
    f0 = Series(
        {ell * ell * k: ring_scalar(j[k], ell) for k in j if ell * ell * k <= depth},
        ell,
    )
    # f_i = j(zeta^i s): handled uniformly as coefficient j_k placed at x^(ik)
    conj = []
    for i in range(ell):
        coeffs = {}
        for k, ck in j.items():
            if k > depth:
                continue
            vec = [0] * ell
            vec[(i * k) % ell] = ck
            coeffs[k] = tuple(vec)
        conj.append(Series(coeffs, ell))

    # multiply out prod (X - f_i), X-degree-indexed list of series
    zero = Series({}, ell)
    P = [zero.sub(f0), Series({0: ring_scalar(1, ell)}, ell)]
    for t, f in enumerate(conj):
        keep = keep_final + (ell - 1 - t)
        new = [zero.sub(P[0].mul(f, keep))]
        for m in range(1, len(P)):
            new.append(P[m - 1].sub(P[m].mul(f, keep)).truncate(keep))
        new.append(P[-1].truncate(keep))
        P = new

    # convert each X-coefficient to a rational q-series and kill poles with j
    jq = {k: v for k, v in j.items() if k <= 2 * ell + 4}
    table: dict[tuple[int, int], int] = {(ell + 1, 0): 1}
    for m in range(ell + 1):
        qser: dict[int, int] = {}
        for k, v in P[m].c.items():
            val = ring_rational(v)
            if val == 0:
                continue
            assert k % ell == 0, f"survived non-integral exponent s^{k} in X^{m}"
            qser[k // ell] = val
        for t in range(ell + 1, 0, -1):
            b = qser.get(-t, 0)
            if b == 0:
                continue
            table[(m, t)] = b
            jp = {0: 1}
            for step in range(t):
                # keep slack so later factors can still raise low terms to q^1
                jp = _qmul(jp, jq, 1 + (t - 1 - step))
            for k, v in jp.items():
                qser[k] = qser.get(k, 0) - b * v
        assert all(v == 0 for k, v in qser.items() if k < 0), qser
        if qser.get(0, 0):
            table[(m, 0)] = qser[0]
        assert qser.get(1, 0) == 0, "series not a polynomial in j"
    # symmetry check
    full = dict(table)
    for (i, jdeg), c in table.items():
        assert full.get((jdeg, i), 0) == c, f"asymmetric at {(i, jdeg)}"
    return table


def _qmul(a: dict[int, int], b: dict[int, int], hi: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, ai in a.items():
        for j, bj in b.items():
            if i + j <= hi:
                out[i + j] = out.get(i + j, 0) + ai * bj
    return out


def validate(ell: int, table: dict[tuple[int, int], int]) -> None:
    # Kronecker congruence: Phi_ell(X, Y) = (X^ell - Y)(X - Y^ell) mod ell
    kron: dict[tuple[int, int], int] = {}
    kron[(ell + 1, 0)] = 1
    kron[(ell, ell)] = kron.get((ell, ell), 0) - 1
    kron[(1, 1)] = kron.get((1, 1), 0) - 1
    kron[(0, ell + 1)] = kron.get((0, ell + 1), 0) + 1
    keys = set(table) | set(kron)
    for key in keys:
        assert (table.get(key, 0) - kron.get(key, 0)) % ell == 0, key
    if ell == 2:
        assert table[(2, 2)] == -1
        assert table[(1, 1)] == 40773375
        # Phi_2(0, 54000) = 0
        y = 54000
        val = sum(c * 0**i * y**j for (i, j), c in table.items())
        assert val == 0


def main() -> None:
    ell = int(sys.argv[1])
    out = sys.argv[2] if len(sys.argv) > 2 else f"src/isovolcano/data/phi/{ell}.txt"
    table = build_phi(ell)
    validate(ell, table)
    lines = []
    for (i, j), c in sorted(table.items()):
        if i <= j:
            lines.append(f"{i} {j} {c}")
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {out}: {len(lines)} entries")


if __name__ == "__main__":
    main()
