"""Hecke eigenform coefficient sources.

Two kinds of forms enter the computation:

* ``g`` in S_{2k+2}(SL_2(Z)), generated here exactly from Delta, E_4, E_6
  for the weights where the cusp space is one-dimensional;
* ``f`` in S_{2k+1}(Gamma_0(D), chi), read from JSON fixtures (or fetched
  and cached), with optional exact values in a quadratic field.

Twisted forms ``f_Q`` are rebuilt prime-by-prime and extended by the Hecke
recursion ``a(p^{r+1}) = a(p) a(p^r) - chi(p) p^{2k} a(p^{r-1})``.
"""

from __future__ import annotations

import cmath
import hashlib
import json
import logging
import math
import os
import urllib.request
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

import jsonschema
import numpy as np

from .chartools import as_disc, chi_Q, chi_Q_prime, kronecker
from .exact import QuadElement

log = logging.getLogger(__name__)

LEVEL1_WEIGHTS = (12, 16, 18, 20, 22, 26)
BUNDLED = {
    "example1": "newform_D3_k11.json",
    "example2": "newform_D15_k11.json",
}


class NewformValidationError(ValueError):
    """Ingested coefficients violate an eigenform invariant."""


class InsufficientCoefficients(ValueError):
    """More Fourier coefficients are needed than are available."""

    def __init__(self, needed: int, available: int, what: str = "a_f"):
        super().__init__(f"{what}({needed}) needed but only n <= {available} available")
        self.needed = needed
        self.available = available


# ---------------------------------------------------------------------------
# level one


def _mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    return np.convolve(a[:n], b[:n])[:n]


def _sigma(k: int, n: int) -> np.ndarray:
    s = np.zeros(n, dtype=object)
    for d in range(1, n):
        s[d::d] += d**k
    return s


def eisenstein_series(k: int, n: int) -> np.ndarray:
    """Exact q-expansion of E_4 or E_6 (constant term 1) to ``q^{n-1}``."""
    c = {4: 240, 6: -504}[k]
    e = c * _sigma(k - 1, n)
    e[0] = 1
    return e


def delta_series(n: int) -> np.ndarray:
    """Exact q-expansion of Delta = q prod (1 - q^m)^24 to ``q^{n-1}``."""
    eta = np.zeros(n, dtype=object)
    eta[:] = 0
    # pentagonal numbers: prod(1 - q^m) = sum (-1)^k q^{k(3k-1)/2}
    k = 0
    while True:
        hit = False
        for j in (k, -k) if k else (0,):
            e = j * (3 * j - 1) // 2
            if e < n:
                eta[e] += (-1) ** (j % 2)
                hit = True
        if not hit:
            break
        k += 1
    p2 = _mul(eta, eta, n)
    p4 = _mul(p2, p2, n)
    p8 = _mul(p4, p4, n)
    p16 = _mul(p8, p8, n)
    p24 = _mul(p16, p8, n)
    out = np.zeros(n, dtype=object)
    out[:] = 0
    out[1:] = p24[: n - 1]
    return out


@dataclass(frozen=True)
class Level1Eigenform:
    """Normalised eigenform in a one-dimensional S_k(SL_2(Z))."""

    weight: int
    coeffs: tuple  # exact ints, index n -> a_g(n); coeffs[0] == 0

    @property
    def kappa(self) -> int:
        return (self.weight - 2) // 2

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def a(self, n: int) -> int:
        if n > self.n_max:
            raise InsufficientCoefficients(n, self.n_max, "a_g")
        return self.coeffs[n]

    def as_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])


def level1_eigenform(weight: int, n_max: int) -> Level1Eigenform:
    if weight not in LEVEL1_WEIGHTS:
        raise ValueError(
            f"weight {weight} unsupported: need dim S_k(SL_2(Z)) = 1, k in {LEVEL1_WEIGHTS}"
        )
    n = n_max + 1
    g = delta_series(n)
    extra = {12: (), 16: (4,), 18: (6,), 20: (4, 4), 22: (4, 6), 26: (4, 4, 6)}[weight]
    for k in extra:
        g = _mul(g, eisenstein_series(k, n), n)
    return Level1Eigenform(weight, tuple(int(x) for x in g))


# ---------------------------------------------------------------------------
# newforms with character


@dataclass(frozen=True)
class NewformSeries:
    """Coefficients of a normalised eigenform in S_{2k+1}(Gamma_0(D), chi).

    ``values[n]`` is the complex embedding of ``a_f(n)`` (``values[0]`` is
    unused).  When ``exact`` is present it holds :class:`QuadElement` values
    in ``Q(sqrt(-d0))``.
    """

    label: str
    D: int
    kappa: int
    values: np.ndarray
    exact: Optional[tuple] = None
    d0: Optional[int] = None
    embedding: Optional[str] = None
    digest: str = field(default="", compare=False)

    @property
    def weight(self) -> int:
        return 2 * self.kappa + 1

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def a(self, n: int) -> complex:
        if n > self.n_max:
            raise InsufficientCoefficients(n, self.n_max)
        return complex(self.values[n])

    def coeff(self, n: int, exact: bool = False):
        """``a_f(n)``, as a :class:`QuadElement` if ``exact`` is requested."""
        if n > self.n_max:
            raise InsufficientCoefficients(n, self.n_max)
        if exact:
            if self.exact is None:
                raise ValueError(f"{self.label} carries no exact coefficients")
            return self.exact[n]
        return complex(self.values[n])

    def conjugate(self) -> "NewformSeries":
        """The series with every coefficient complex conjugated."""
        ex = None if self.exact is None else tuple(
            None if x is None else x.conjugate() for x in self.exact
        )
        emb = f"conjugate of ({self.embedding})" if self.embedding else None
        return replace(self, label=self.label + ".conj", values=np.conj(self.values),
                       exact=ex, embedding=emb)


FIXTURE_SCHEMA = {
    "type": "object",
    "required": ["label", "D", "weight", "kappa", "character", "coefficients", "n_start"],
    "properties": {
        "label": {"type": "string"},
        "D": {"type": "integer", "minimum": 3},
        "weight": {"type": "integer"},
        "kappa": {"type": "integer", "minimum": 1},
        "character": {"type": "string"},
        "embedding": {"type": ["string", "null"]},
        "exact_generator": {"type": ["integer", "null"], "minimum": 1},
        "n_start": {"const": 1},
        "coefficients": {
            "type": "array",
            "minItems": 1,
            "items": {
                "oneOf": [
                    {"type": "array", "items": {"type": "string"},
                     "minItems": 2, "maxItems": 2},
                    {
                        "type": "object",
                        "required": ["u", "v"],
                        "properties": {
                            "u": {"type": "array", "items": {"type": "string"},
                                  "minItems": 2, "maxItems": 2},
                            "v": {"type": "array", "items": {"type": "string"},
                                  "minItems": 2, "maxItems": 2},
                        },
                    },
                ]
            },
        },
    },
}


def parse_fixture(doc: dict, digest: str = "") -> NewformSeries:
    try:
        jsonschema.validate(doc, FIXTURE_SCHEMA)
    except jsonschema.ValidationError as e:
        raise NewformValidationError(f"fixture schema violation: {e.message}") from e
    D, kappa = doc["D"], doc["kappa"]
    if doc["weight"] != 2 * kappa + 1:
        raise NewformValidationError(f"weight {doc['weight']} != 2*kappa+1 = {2 * kappa + 1}")
    if doc["character"] != f"kronecker(-{D})":
        raise NewformValidationError(
            f"character {doc['character']!r} is not kronecker(-{D})"
        )
    as_disc(D)
    d0 = doc.get("exact_generator")
    coeffs = doc["coefficients"]
    values = np.zeros(len(coeffs) + 1, dtype=complex)
    exact = None
    if d0:
        exact = [None]
        for n, c in enumerate(coeffs, start=1):
            if not isinstance(c, dict):
                raise NewformValidationError(f"coefficient {n} is not exact but exact_generator set")
            x = QuadElement(Fraction(int(c["u"][0]), int(c["u"][1])),
                            Fraction(int(c["v"][0]), int(c["v"][1])), d0)
            exact.append(x)
            values[n] = complex(x)
        exact = tuple(exact)
    else:
        for n, c in enumerate(coeffs, start=1):
            if not isinstance(c, list):
                raise NewformValidationError(f"coefficient {n} is exact but no exact_generator")
            values[n] = complex(float(c[0]), float(c[1]))
    return NewformSeries(doc["label"], D, kappa, values, exact, d0 or None,
                         doc.get("embedding"), digest)


def load_fixture(path) -> NewformSeries:
    raw = Path(path).read_bytes()
    return parse_fixture(json.loads(raw), hashlib.sha256(raw).hexdigest())


def bundled_fixture(name: str) -> Path:
    fname = BUNDLED.get(name, name)
    return Path(str(resources.files("hermlift") / "data" / fname))


def default_cache_dir() -> Path:
    return Path(os.environ.get("HERMLIFT_CACHE", Path.home() / ".cache" / "hermlift"))


LMFDB_API = "https://www.lmfdb.org/api/mf_hecke_cc/?label={label}&_format=json"


def _http_get(url: str, timeout: float = 30.0) -> bytes:
    with urllib.request.urlopen(url, timeout=timeout) as resp:  # noqa: S310
        return resp.read()


def lmfdb_to_fixture(label: str, payload: dict) -> dict:
    """Convert an LMFDB complex-embedding record into the fixture layout.

    Expects a record with ``an_normalized`` (pairs ``[re, im]`` of
    ``a(n)/n^{(k-1)/2}``), the level and weight encoded in ``label`` as
    ``N.k.x.y[.i.j]``, and a character of the form kronecker(-N).
    """
    data = payload.get("data", payload)
    rec = data[0] if isinstance(data, list) else data
    level, weight = (int(t) for t in label.split(".")[:2])
    kappa = (weight - 1) // 2
    coeffs = []
    for n, (re_, im_) in enumerate(rec["an_normalized"], start=1):
        s = n ** ((weight - 1) / 2)
        coeffs.append([repr(float(re_) * s), repr(float(im_) * s)])
    return {
        "label": label, "D": level, "weight": weight, "kappa": kappa,
        "character": f"kronecker(-{level})", "embedding": label,
        "exact_generator": None, "coefficients": coeffs, "n_start": 1,
    }


def fetch_newform(label: str, cache_dir=None, *,
                  getter: Optional[Callable[[str], bytes]] = None) -> Path:
    """Fetch ``label`` from the LMFDB API into ``cache/<label>.json``.

    A warm cache is returned as-is without network access.
    """
    cache = Path(cache_dir) if cache_dir else default_cache_dir()
    target = cache / f"{label}.json"
    if target.exists():
        return target
    raw = (getter or _http_get)(LMFDB_API.format(label=label))
    doc = lmfdb_to_fixture(label, json.loads(raw))
    cache.mkdir(parents=True, exist_ok=True)
    tmp = target.with_suffix(".tmp")
    tmp.write_text(json.dumps(doc, indent=1))
    tmp.replace(target)
    log.info("cached %s at %s", label, target)
    return target


def ingest_newform(source, *, cache_dir=None, fetch: bool = False,
                   validate: bool = True) -> NewformSeries:
    """Load a newform from a fixture path, a bundled name or a cached label."""
    p = Path(str(source))
    if not p.exists():
        b = bundled_fixture(str(source))
        if b.exists():
            p = b
        else:
            cache = Path(cache_dir) if cache_dir else default_cache_dir()
            cached = cache / f"{source}.json"
            if cached.exists():
                p = cached
            elif fetch:
                p = fetch_newform(str(source), cache)
            else:
                raise FileNotFoundError(f"no fixture for {source!r} (use fetch=True)")
    series = load_fixture(p)
    if validate:
        validate_newform(series)
    return series


# ---------------------------------------------------------------------------
# validation and Hecke structure


def _primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


def _close(x, y, scale: float, rtol: float, exact: bool) -> bool:
    if exact:
        return x == y
    return abs(complex(x) - complex(y)) <= rtol * max(scale, 1.0)


def satake_parameter(a_p: complex, p: int, kappa: int, chi_p: int) -> complex:
    """Root alpha of ``alpha^2 - (a_p / p^k) alpha + chi(p) = 0``."""
    t = a_p / p**kappa
    disc = cmath.sqrt(t * t - 4 * chi_p)
    return (t + disc) / 2


def validate_newform(series: NewformSeries, rtol: float = 1e-10) -> None:
    """Check normalisation, character, multiplicativity, Hecke and Ramanujan."""
    D, k = series.D, series.kappa
    N = series.n_max
    modes = [False] + ([True] if series.is_exact else [])
    for exact in modes:
        a = lambda n: series.coeff(n, exact)  # noqa: E731
        if not _close(a(1), 1, 1.0, rtol, exact):
            raise NewformValidationError(f"a_f(1) = {a(1)} is not 1")
        for m in range(2, N // 2 + 1):
            for n in range(m + 1, N // m + 1):
                if math.gcd(m, n) == 1:
                    lhs, rhs = a(m * n), a(m) * a(n)
                    if not _close(lhs, rhs, abs(complex(rhs)), rtol, exact):
                        raise NewformValidationError(
                            f"multiplicativity fails at n={m * n} = {m}*{n}"
                        )
        for p in _primes_upto(N):
            chi = kronecker(D, p)
            if chi:
                if not _close(a(p).conjugate() * chi, a(p), abs(complex(a(p))), rtol, exact):
                    raise NewformValidationError(
                        f"a_f({p}) inconsistent with character kronecker(-{D})"
                    )
            q = p
            while q * p <= N:
                if chi:
                    rhs = a(p) * a(q) - chi * p ** (2 * k) * a(q // p)
                    scale = abs(complex(a(p) * a(q))) + p ** (2 * k) * abs(complex(a(q // p)))
                else:
                    rhs = a(p) * a(q)
                    scale = abs(complex(rhs))
                if not _close(a(q * p), rhs, scale, rtol, exact):
                    raise NewformValidationError(f"Hecke relation fails at n={q * p}")
                q *= p
    for p in _primes_upto(N):
        chi = kronecker(D, p)
        ap = series.a(p)
        if chi:
            alpha = satake_parameter(ap, p, k, chi)
            if abs(abs(alpha) - 1) > 1e-6:
                raise NewformValidationError(f"Ramanujan bound fails at p={p}")
        elif abs(abs(ap) / p**k - 1) > 1e-8:
            raise NewformValidationError(f"|a_f({p})| != {p}^{k}")
    if D <= N:
        if abs(abs(series.a(D)) / D**k - 1) > 1e-8:
            raise NewformValidationError(f"|a_f({D})| != {D}^{k}")


def validate_level1(g: Level1Eigenform) -> None:
    k = g.weight
    N = g.n_max
    if g.coeffs[1] != 1:
        raise NewformValidationError("a_g(1) != 1")
    for p in _primes_upto(N):
        q = p
        while q * p <= N:
            if g.coeffs[q * p] != g.coeffs[p] * g.coeffs[q] - p ** (k - 1) * g.coeffs[q // p]:
                raise NewformValidationError(f"level-1 Hecke relation fails at n={q * p}")
            q *= p


def multiplicative_extension(prime_values: dict, D: int, kappa: int, n_max: int, one=1):
    """Coefficients ``a(1..n_max)`` from prime values via the Hecke recursion.

    Returns a list indexed by n (entry 0 is ``None``).
    """
    primes = _primes_upto(n_max)
    missing = [p for p in primes if p not in prime_values]
    if missing:
        raise InsufficientCoefficients(missing[0], min(missing) - 1)
    spf = list(range(n_max + 1))
    for p in primes:
        for m in range(p * p, n_max + 1, p):
            if spf[m] == m:
                spf[m] = p
    out: list = [None] * (n_max + 1)
    if n_max >= 1:
        out[1] = one
    for n in range(2, n_max + 1):
        p = spf[n]
        q, m = 1, n
        while m % p == 0:
            m //= p
            q *= p
        if m > 1:
            out[n] = out[q] * out[m]
            continue
        # n = p^r
        ap = prime_values[p]
        if q == p:
            out[n] = ap
            continue
        chi = kronecker(D, p)
        prev, prev2 = out[q // p], out[q // (p * p)]
        out[n] = ap * prev - chi * p ** (2 * kappa) * prev2 if chi else ap * prev
    return out


def extend_hecke(series: NewformSeries, n_max: int, *, rtol: float = 1e-9,
                 prime_values: Optional[dict] = None,
                 exact_prime_values: Optional[dict] = None,
                 label: Optional[str] = None) -> NewformSeries:
    """Rebuild ``a_f(n)`` for ``n <= n_max`` from prime coefficients.

    Prime values come from ``series`` unless overridden.  Values already
    present in ``series`` must agree with the extension.
    """
    have = series.n_max
    if prime_values is None:
        if n_max > have:
            raise InsufficientCoefficients(n_max, have)
        prime_values = {p: complex(series.values[p]) for p in _primes_upto(n_max)}
        if series.exact is not None and exact_prime_values is None:
            exact_prime_values = {p: series.exact[p] for p in _primes_upto(n_max)}
    vals = multiplicative_extension(prime_values, series.D, series.kappa, n_max, 1 + 0j)
    values = np.zeros(n_max + 1, dtype=complex)
    values[1:] = vals[1:]
    exact = None
    if exact_prime_values is not None:
        one = QuadElement(1, 0, series.d0)
        exact = tuple(multiplicative_extension(exact_prime_values, series.D, series.kappa,
                                               n_max, one))
    out = replace(series, values=values, exact=exact, label=label or series.label)
    if label is None:
        m = min(have, n_max)
        scale = np.maximum(np.abs(series.values[1 : m + 1]), 1.0)
        bad = np.nonzero(np.abs(series.values[1 : m + 1] - values[1 : m + 1]) > rtol * scale)[0]
        if bad.size:
            raise NewformValidationError(
                f"extension disagrees with stored a_f({int(bad[0]) + 1})"
            )
        if exact is not None and series.exact is not None:
            for n in range(1, m + 1):
                if exact[n] != series.exact[n]:
                    raise NewformValidationError(f"exact extension disagrees at n={n}")
    return out


def twist_fQ(series: NewformSeries, Q: Iterable[int], n_max: Optional[int] = None) -> NewformSeries:
    """The eigenform ``f_Q`` attached to a subset ``Q`` of the ramified primes."""
    Q = frozenset(Q)
    D = series.D
    n_max = series.n_max if n_max is None else n_max
    if not Q:
        return extend_hecke(series, n_max) if n_max != series.n_max else series
    primes = _primes_upto(n_max)
    if primes and primes[-1] > series.n_max:
        raise InsufficientCoefficients(primes[-1], series.n_max)

    def rule(p, ap):
        if p in Q:
            return chi_Q_prime(D, Q, p) * ap.conjugate()
        return chi_Q(D, Q, p) * ap

    pv = {p: rule(p, complex(series.values[p])) for p in primes}
    epv = None
    if series.exact is not None:
        epv = {p: rule(p, series.exact[p]) for p in primes}
    tag = "".join(str(p) for p in sorted(Q))
    return extend_hecke(series, n_max, prime_values=pv, exact_prime_values=epv,
                        label=f"{series.label}.Q{tag}")
