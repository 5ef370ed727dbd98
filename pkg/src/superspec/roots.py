"""Real root isolation by Sturm sequences, and integer root extraction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Polynomial, squarefree_decomposition


@dataclass(frozen=True)
class RealRoot:
    """A real root isolated in ``[lo, hi]`` (``lo == hi`` for exact roots)."""

    lo: Fraction
    hi: Fraction
    approx: str
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float(self.approx)

    def to_dict(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "approx": self.approx}


def decimal_string(x: Fraction, digits: int) -> str:
    """``x`` rounded half-up to ``digits`` places after the point."""
    x = Fraction(x)
    scale = 10 ** digits
    q = x * scale
    n = (q.numerator * 2 + q.denominator) // (2 * q.denominator)  # floor(q + 1/2)
    sign = "-" if n < 0 else ""
    n = abs(n)
    whole, frac = divmod(n, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    """Signed remainder sequence of ``p`` and ``p'``.

    Each remainder is rescaled by a positive constant to a primitive integral
    polynomial, which leaves sign-variation counts unchanged.
    """
    if p.is_zero():
        raise ValueError("Sturm sequence of the zero polynomial")
    dp = p.derivative()
    seq = [_pos_primitive(p)]
    if dp.is_zero():
        return seq
    seq.append(_pos_primitive(dp))
    while True:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(_pos_primitive(r))
    return seq


def _pos_primitive(q: Polynomial) -> Polynomial:
    c = q.content()
    return Polynomial([x / c for x in q.coefficients])


def _variations(seq: list[Polynomial], t: Fraction) -> int:
    signs = [s for s in (q.sign_at(t) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at_infinity(seq: list[Polynomial], positive: bool) -> int:
    signs = []
    for q in seq:
        s = 1 if q.leading > 0 else -1
        if not positive and q.degree % 2:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_bound(p: Polynomial) -> Fraction:
    """Cauchy bound: every complex root has modulus below the return value."""
    lc = abs(p.leading)
    return 1 + max((Fraction(abs(c)) / lc for c in p.coefficients[:-1]), default=Fraction(0))


def count_real_roots(p: Polynomial, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots in ``(lo, hi]`` (whole line by default)."""
    seq = sturm_sequence(p)
    vlo = _variations_at_infinity(seq, False) if lo is None else _variations(seq, Fraction(lo))
    vhi = _variations_at_infinity(seq, True) if hi is None else _variations(seq, Fraction(hi))
    return vlo - vhi


def _isolate_squarefree(p: Polynomial, precision: int) -> list[RealRoot]:
    seq = sturm_sequence(p)
    B = root_bound(p)
    # power-of-two bound keeps bisection points dyadic
    b = Fraction(1)
    while b <= B:
        b *= 2
    out: list[RealRoot] = []
    # two guard digits so the rounded midpoint is correct in the last printed place
    width = Fraction(1, 10 ** (precision + 2))
    stack = [(-b, b, _variations(seq, -b), _variations(seq, b))]
    found: list[tuple[Fraction, Fraction]] = []
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        k = vlo - vhi
        if k == 0:
            continue
        if k == 1:
            found.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vm = _variations(seq, mid)
        stack.append((lo, mid, vlo, vm))
        stack.append((mid, hi, vm, vhi))
    for lo, hi in sorted(found):
        out.append(_refine(p, seq, lo, hi, width, precision))
    return out


def _refine(p: Polynomial, seq, lo: Fraction, hi: Fraction, width: Fraction, precision: int) -> RealRoot:
    # the interval (lo, hi] holds exactly one simple root
    if p(hi) == 0:
        return RealRoot(hi, hi, decimal_string(hi, precision))
    while p.sign_at(lo) == 0:
        # lo is a neighbouring root; shrink with Sturm counts until it is not
        mid = (lo + hi) / 2
        if p(mid) == 0:
            return RealRoot(mid, mid, decimal_string(mid, precision))
        if _variations(seq, mid) - _variations(seq, hi) == 1:
            lo = mid
        else:
            hi = mid
    slo = p.sign_at(lo)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        sm = p.sign_at(mid)
        if sm == 0:
            return RealRoot(mid, mid, decimal_string(mid, precision))
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return RealRoot(lo, hi, decimal_string((lo + hi) / 2, precision))


def isolate_real_roots(p: Polynomial, precision: int = 12) -> list[RealRoot]:
    """Disjoint isolating intervals, one per distinct real root, ascending.

    Intervals are refined until narrower than ``10**-precision``.  Repeated
    roots are reported once with their multiplicity.
    """
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    roots: list[RealRoot] = []
    for factor, mult in squarefree_decomposition(p):
        for r in _isolate_squarefree(factor, precision):
            roots.append(RealRoot(r.lo, r.hi, r.approx, mult))
    roots.sort(key=lambda r: (r.lo, r.hi))
    return roots


def _iroot_ceil(a: int, k: int) -> int:
    """Smallest integer ``r >= 0`` with ``r**k >= a``."""
    if a <= 0:
        return 0
    r = 1 << ((a.bit_length() + k - 1) // k)
    lo, hi = 0, r
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k >= a:
            hi = mid
        else:
            lo = mid + 1
    return lo


def fujiwara_bound(p: Polynomial) -> int:
    """Integer bound on root moduli for a monic integral polynomial."""
    c = p.coefficients
    n = p.degree
    best = 0
    for i in range(1, n + 1):
        a = abs(c[n - i])
        if i == n:
            a = (a + 1) // 2
        best = max(best, _iroot_ceil(a, i))
    return 2 * best + 1


def integer_roots(p: Polynomial) -> tuple[dict[int, int], Polynomial]:
    """Split off every integer root of a monic integral polynomial.

    Returns ``(roots, rest)`` with ``roots`` mapping each integer root to its
    multiplicity and ``rest`` the deflated cofactor, so that
    ``p == rest * prod((x - r)**m)``.  Candidates are divisors of the constant
    term (after removing powers of ``x``) inside the Fujiwara root bound; a
    monic integral polynomial has no other rational roots.
    """
    if not (p.is_monic() and p.is_integral()):
        raise ValueError("integer root scan requires a monic integral polynomial")
    roots: dict[int, int] = {}
    z = p.trailing_zeros()
    rest = Polynomial(p.coefficients[z:])
    if z:
        roots[0] = z
    if rest.degree <= 0:
        return roots, rest
    bound = fujiwara_bound(rest)
    c0 = abs(rest[0])
    candidates = []
    for k in range(1, bound + 1):
        if c0 % k == 0:
            candidates.extend((k, -k))
    for r in sorted(candidates):
        while rest.degree > 0 and rest[0] % r == 0 and rest(r) == 0:
            rest = _deflate(rest, r)
            roots[r] = roots.get(r, 0) + 1
    return dict(sorted(roots.items())), rest


def _deflate(p: Polynomial, r: int) -> Polynomial:
    # synthetic division by (x - r); exact by construction
    c = p.coefficients
    out = [0] * (len(c) - 1)
    acc = 0
    for k in range(len(c) - 1, 0, -1):
        acc = acc * r + c[k]
        out[k - 1] = acc
    if acc * r + c[0] != 0:
        raise ArithmeticError(f"{r} is not a root")
    return Polynomial(out)
