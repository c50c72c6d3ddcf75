"""Upper and lower estimates for the squared Frobenius deviation of the
pseudoinverses of a matrix pair, plus the classical unsquared norm bounds.

Every estimator returns a ``BoundValue`` carrying its applicability; the
inapplicable ones record why.  ``full_report`` evaluates the whole family,
forms the tightest envelope from the applicable squared estimates, and can
check it against the exact deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    PerturbationPair,
    deviation_fro,
    deviation_spectral,
    deviation_sq,
)

SQUARED = "squared_frobenius"
NORM = "norm"

# multiplier for the general-rank unsquared bound, by norm family
MU = {
    "spectral": (1.0 + math.sqrt(5.0)) / 2.0,
    "frobenius": math.sqrt(2.0),
    "unitarily_invariant": 3.0,
}


def equal_rank_multiplier(m, n, r, norm):
    """Constant for the equal-rank unsquared bound, by how rank fills the shape."""
    if r == m == n:
        return 1.0
    if r == min(m, n) and m != n:
        return {"spectral": math.sqrt(2.0), "frobenius": 1.0, "unitarily_invariant": 2.0}[norm]
    return {
        "spectral": MU["spectral"],
        "frobenius": math.sqrt(2.0),
        "unitarily_invariant": 3.0,
    }[norm]


@dataclass(frozen=True)
class BoundValue:
    """One evaluated estimator.

    ``target`` is ``squared_frobenius`` for the squared-deviation estimates
    or ``norm`` for unsquared ones; ``norm_used`` names the norm the value
    refers to.  ``value`` is None when not applicable, with ``reason`` set.
    """

    name: str
    kind: str  # "upper" or "lower"
    target: str
    norm_used: str
    applicable: bool
    value: float | None
    reason: str = ""


def _skip(name, kind, target, norm, reason):
    return BoundValue(
        name=name, kind=kind, target=target, norm_used=norm, applicable=False, value=None, reason=reason
    )


def _up(name, value, target=SQUARED, norm="frobenius"):
    return BoundValue(
        name=name, kind="upper", target=target, norm_used=norm, applicable=True, value=float(value)
    )


def _lo(name, value, target=SQUARED, norm="frobenius"):
    return BoundValue(
        name=name, kind="lower", target=target, norm_used=norm, applicable=True,
        value=float(max(value, 0.0)),
    )


def _d(t):
    """Clamp tiny negative roundoff in terms that are nonnegative exactly."""
    return t if t > 0.0 else 0.0


def wedin(p, norm="frobenius"):
    """General-rank unsquared bound: mu * max(|a+|, |b+|)^2 * |e|."""
    name = f"wedin_{norm}"
    if norm == "unitarily_invariant":
        return _skip(
            name, "upper", NORM, norm,
            "constant 3 holds for every unitarily invariant norm; no single norm to evaluate",
        )
    nm = p.norms
    e_norm = nm.ef if norm == "frobenius" else nm.es
    return _up(name, MU[norm] * max(nm.nai, nm.nbi) ** 2 * e_norm, target=NORM, norm=norm)


def wedin_equal_rank(p, norm="frobenius"):
    """Sharper unsquared bound nu * |a+| * |b+| * |e| when the ranks agree."""
    name = f"wedin_equal_rank_{norm}"
    if p.rank_a != p.rank_b:
        return _skip(
            name, "upper", NORM, norm, f"needs equal ranks, got {p.rank_a} and {p.rank_b}"
        )
    m, n = p.shape
    nu = equal_rank_multiplier(m, n, p.rank_a, norm)
    if norm == "unitarily_invariant":
        return _skip(
            name, "upper", NORM, norm,
            f"constant {nu:g} holds for every unitarily invariant norm; no single norm to evaluate",
        )
    nm = p.norms
    e_norm = nm.ef if norm == "frobenius" else nm.es
    return _up(name, nu * nm.nai * nm.nbi * e_norm, target=NORM, norm=norm)


def meng_zheng(p):
    """Unsquared Frobenius bound with constant 1: max(|a+|, |b+|)^2 * |e|_F."""
    nm = p.norms
    return _up("meng_zheng", max(nm.nai, nm.nbi) ** 2 * nm.ef, target=NORM)


def meng_zheng_equal_rank(p):
    """Equal-rank refinement |a+| * |b+| * |e|_F."""
    if p.rank_a != p.rank_b:
        return _skip(
            "meng_zheng_equal_rank", "upper", NORM, "frobenius",
            f"needs equal ranks, got {p.rank_a} and {p.rank_b}",
        )
    nm = p.norms
    return _up("meng_zheng_equal_rank", nm.nai * nm.nbi * nm.ef, target=NORM)


def li_refined(p):
    """Squared bound subtracting the aligned cross mass from the worst-case energy."""
    nm = p.norms
    if nm.nai == 0.0 or nm.nbi == 0.0:
        return _skip(
            "li_refined", "upper", SQUARED, "frobenius",
            "needs both operands nonzero, a pseudoinverse norm is 0",
        )
    ratio = max(nm.nai**2 / nm.nbi**2, nm.nbi**2 / nm.nai**2)
    val = max(nm.nai, nm.nbi) ** 4 * nm.e2 - 0.5 * (ratio - 1.0) * (nm.x + nm.y)
    return _up("li_refined", _d(val))


def li_full_column_rank(p):
    """Squared bound available when a has full column rank."""
    m, n = p.shape
    if p.rank_a != n:
        return _skip(
            "li_full_column_rank", "upper", SQUARED, "frobenius",
            f"needs full column rank of a, got rank {p.rank_a} of {n}",
        )
    nm = p.norms
    if nm.nbi == 0.0:
        return _skip(
            "li_full_column_rank", "upper", SQUARED, "frobenius",
            "needs b nonzero, its pseudoinverse norm is 0",
        )
    pref = nm.nai**2 * nm.nbi**2 / (nm.nai**2 + nm.nbi**2)
    val = pref * (nm.ea + nm.eb + (n - p.rank_b) * nm.nai**2 / nm.nbi**2)
    return _up("li_full_column_rank", val)


def li_full_rank_pair(p):
    """Squared bound when both operands have full column rank."""
    m, n = p.shape
    if p.rank_a != n or p.rank_b != n:
        return _skip(
            "li_full_rank_pair", "upper", SQUARED, "frobenius",
            f"needs both ranks equal to {n}, got {p.rank_a} and {p.rank_b}",
        )
    nm = p.norms
    return _up("li_full_rank_pair", min(nm.nbi**2 * nm.ea, nm.nai**2 * nm.eb))


def _sv_core(p):
    ra = 1.0 / p.fa.sigma1
    rb = 1.0 / p.fb.sigma1
    total = float(np.sum(ra**2) + np.sum(rb**2))
    k = min(ra.size, rb.size)
    # largest reciprocal pairs with largest: the trace bound for the aligned part
    aligned = float(np.sum(np.sort(ra)[::-1][:k] * np.sort(rb)[::-1][:k]))
    return total, aligned


def singular_value_lower(p):
    """Deviation bounded below using only the two singular value lists."""
    total, aligned = _sv_core(p)
    return _lo("singular_value_lower", total - 2.0 * aligned)


def singular_value_upper(p):
    """Deviation bounded above using only the two singular value lists."""
    total, aligned = _sv_core(p)
    return _up("singular_value_upper", total + 2.0 * aligned)


def alpha_upper(p):
    """Projected-residual upper bound, minimum over the two routes."""
    nm = p.norms
    a1 = nm.nai**2 * _d(nm.ae - nm.aebb) + nm.nbi**2 * _d(nm.eb - nm.aaeb)
    a2 = nm.nai**2 * _d(nm.ea - nm.bbea) + nm.nbi**2 * _d(nm.be - nm.beaa)
    return _up("alpha_upper", min(a1 + nm.x, a2 + nm.y))


def beta_upper(p):
    """Weaker route replacing inverted products by raw perturbation energy."""
    nm = p.norms
    b1 = nm.nai**4 * _d(nm.e2 - nm.ebb) + nm.nbi**4 * _d(nm.e2 - nm.aae)
    b2 = nm.nai**4 * _d(nm.e2 - nm.bbe) + nm.nbi**4 * _d(nm.e2 - nm.eaa)
    return _up("beta_upper", min(b1 + nm.x, b2 + nm.y))


def gamma_upper(p):
    """Route subtracting the cross mass scaled back through the inverse norms."""
    nm = p.norms
    if nm.nai == 0.0 or nm.nbi == 0.0:
        return _skip(
            "gamma_upper", "upper", SQUARED, "frobenius",
            "needs both operands nonzero, a pseudoinverse norm is 0",
        )
    g1 = nm.nai**2 * _d(nm.ae - nm.y / nm.nbi**2) + nm.nbi**2 * _d(nm.eb - nm.y / nm.nai**2)
    g2 = nm.nai**2 * _d(nm.ea - nm.x / nm.nbi**2) + nm.nbi**2 * _d(nm.be - nm.x / nm.nai**2)
    return _up("gamma_upper", min(g1 + nm.x, g2 + nm.y))


def _delta_terms(nm):
    big = max(nm.nai, nm.nbi) ** 4
    d1 = big * _d(nm.e2 - max(nm.aaeb / nm.nbi**2, nm.aebb / nm.nai**2))
    d2 = big * _d(nm.e2 - max(nm.bbea / nm.nai**2, nm.beaa / nm.nbi**2))
    return d1, d2


def delta_upper(p):
    """Energy route with the aligned core subtracted before amplification."""
    nm = p.norms
    if nm.nai == 0.0 or nm.nbi == 0.0:
        return _skip(
            "delta_upper", "upper", SQUARED, "frobenius",
            "needs both operands nonzero, a pseudoinverse norm is 0",
        )
    d1, d2 = _delta_terms(nm)
    return _up("delta_upper", min(d1 + nm.x, d2 + nm.y))


def averaged_upper(p):
    """Mean of the two delta routes; never below either minimum component."""
    nm = p.norms
    if nm.nai == 0.0 or nm.nbi == 0.0:
        return _skip(
            "averaged_upper", "upper", SQUARED, "frobenius",
            "needs both operands nonzero, a pseudoinverse norm is 0",
        )
    d1, d2 = _delta_terms(nm)
    return _up("averaged_upper", 0.5 * (d1 + d2 + nm.x + nm.y))


def epsilon_upper(p):
    """Equal-rank sharpening of the energy route."""
    nm = p.norms
    if p.rank_a != p.rank_b:
        return _skip(
            "epsilon_upper", "upper", SQUARED, "frobenius",
            f"needs equal ranks, got {p.rank_a} and {p.rank_b}",
        )
    if nm.nai == 0.0 or nm.nbi == 0.0:
        return _skip(
            "epsilon_upper", "upper", SQUARED, "frobenius",
            "needs both operands nonzero, a pseudoinverse norm is 0",
        )
    pref = nm.nai**2 * nm.nbi**2
    e1 = pref * _d(nm.e2 - max(nm.bbea / nm.nai**2, nm.beaa / nm.nbi**2))
    e2 = pref * _d(nm.e2 - max(nm.aaeb / nm.nbi**2, nm.aebb / nm.nai**2))
    return _up("epsilon_upper", min(e1 + nm.x, e2 + nm.y))


def alpha_lower(p):
    """Lower counterpart of the projected-residual route, maximum of the two."""
    nm = p.norms
    if nm.na == 0.0 or nm.nb == 0.0:
        return _skip(
            "alpha_lower", "lower", SQUARED, "frobenius",
            "needs both operands nonzero, a spectral norm is 0",
        )
    a1 = _d(nm.ae - nm.aebb) / nm.na**2 + _d(nm.eb - nm.aaeb) / nm.nb**2
    a2 = _d(nm.ea - nm.bbea) / nm.na**2 + _d(nm.be - nm.beaa) / nm.nb**2
    return _lo("alpha_lower", max(a1 + nm.x, a2 + nm.y))


def beta_lower(p):
    """Lower counterpart of the raw-energy route."""
    nm = p.norms
    if nm.na == 0.0 or nm.nb == 0.0:
        return _skip(
            "beta_lower", "lower", SQUARED, "frobenius",
            "needs both operands nonzero, a spectral norm is 0",
        )
    b1 = _d(nm.e2 - nm.ebb) / nm.na**4 + _d(nm.e2 - nm.aae) / nm.nb**4
    b2 = _d(nm.e2 - nm.bbe) / nm.na**4 + _d(nm.e2 - nm.eaa) / nm.nb**4
    return _lo("beta_lower", max(b1 + nm.x, b2 + nm.y))


def gamma_lower(p):
    """Lower route with the cross mass scaled up; terms may legitimately go negative."""
    nm = p.norms
    if nm.na == 0.0 or nm.nb == 0.0:
        return _skip(
            "gamma_lower", "lower", SQUARED, "frobenius",
            "needs both operands nonzero, a spectral norm is 0",
        )
    g1 = (nm.ae - nm.nb**2 * nm.y) / nm.na**2 + (nm.eb - nm.na**2 * nm.y) / nm.nb**2
    g2 = (nm.ea - nm.nb**2 * nm.x) / nm.na**2 + (nm.be - nm.na**2 * nm.x) / nm.nb**2
    return _lo("gamma_lower", max(g1 + nm.x, g2 + nm.y))


def delta_lower(p):
    """Lower energy route normalized by the larger spectral norm."""
    nm = p.norms
    if max(nm.na, nm.nb) == 0.0:
        return _skip(
            "delta_lower", "lower", SQUARED, "frobenius",
            "needs a nonzero operand, both spectral norms are 0",
        )
    big = max(nm.na, nm.nb) ** 4
    d1 = (nm.e2 - min(nm.nb**2 * nm.aaeb, nm.na**2 * nm.aebb)) / big
    d2 = (nm.e2 - min(nm.na**2 * nm.bbea, nm.nb**2 * nm.beaa)) / big
    return _lo("delta_lower", max(d1 + nm.x, d2 + nm.y))


def epsilon_lower(p):
    """Equal-rank sharpening of the lower energy route."""
    nm = p.norms
    if p.rank_a != p.rank_b:
        return _skip(
            "epsilon_lower", "lower", SQUARED, "frobenius",
            f"needs equal ranks, got {p.rank_a} and {p.rank_b}",
        )
    if nm.na == 0.0 or nm.nb == 0.0:
        return _skip(
            "epsilon_lower", "lower", SQUARED, "frobenius",
            "needs both operands nonzero, a spectral norm is 0",
        )
    pref = nm.na**2 * nm.nb**2
    e1 = (nm.e2 - min(nm.na**2 * nm.bbea, nm.nb**2 * nm.beaa)) / pref
    e2 = (nm.e2 - min(nm.nb**2 * nm.aaeb, nm.na**2 * nm.aebb)) / pref
    return _lo("epsilon_lower", max(e1 + nm.x, e2 + nm.y))


def evaluate_all(p):
    """The whole family in a fixed, deterministic order."""
    return [
        wedin(p, "spectral"),
        wedin(p, "frobenius"),
        wedin(p, "unitarily_invariant"),
        wedin_equal_rank(p, "spectral"),
        wedin_equal_rank(p, "frobenius"),
        wedin_equal_rank(p, "unitarily_invariant"),
        meng_zheng(p),
        meng_zheng_equal_rank(p),
        li_refined(p),
        li_full_column_rank(p),
        li_full_rank_pair(p),
        singular_value_upper(p),
        alpha_upper(p),
        beta_upper(p),
        gamma_upper(p),
        delta_upper(p),
        epsilon_upper(p),
        averaged_upper(p),
        singular_value_lower(p),
        alpha_lower(p),
        beta_lower(p),
        gamma_lower(p),
        delta_lower(p),
        epsilon_lower(p),
    ]


@dataclass(frozen=True)
class BoundReport:
    """Exact deviation plus every estimator and the squared envelope."""

    exact_sq: float
    exact_fro: float
    exact_spectral: float
    values: tuple[BoundValue, ...]
    envelope: tuple[float, float]

    @property
    def uppers(self):
        return tuple(v for v in self.values if v.kind == "upper")

    @property
    def lowers(self):
        return tuple(v for v in self.values if v.kind == "lower")

    def by_name(self, name):
        for v in self.values:
            if v.name == name:
                return v
        raise KeyError(name)


def full_report(p):
    values = evaluate_all(p)
    lows = [v.value for v in values if v.applicable and v.kind == "lower" and v.target == SQUARED]
    ups = [v.value for v in values if v.applicable and v.kind == "upper" and v.target == SQUARED]
    # the singular-value pair is always applicable, so neither list is empty
    return BoundReport(
        exact_sq=deviation_sq(p),
        exact_fro=deviation_fro(p),
        exact_spectral=deviation_spectral(p),
        values=tuple(values),
        envelope=(max(lows), min(ups)),
    )


def envelope_ok(report, tol=1e-8):
    """Squared envelope brackets the exact squared deviation within slack."""
    lo, up = report.envelope
    slack = tol * (1.0 + report.exact_sq)
    return lo <= report.exact_sq + slack and up >= report.exact_sq - slack


def norm_bounds_ok(report, tol=1e-8):
    """Every applicable unsquared upper bound dominates its exact norm."""
    for v in report.uppers:
        if not v.applicable or v.target != NORM:
            continue
        exact = report.exact_spectral if v.norm_used == "spectral" else report.exact_fro
        if v.value < exact - tol * (1.0 + exact):
            return False
    return True


def _fmt(x):
    return f"{x:.17g}"


def report_csv(report):
    """Machine-readable report: name, kind, target, norm, applicable, value."""
    lines = ["name,kind,target,norm,applicable,value"]
    lines.append(f"exact_squared_frobenius,exact,{SQUARED},frobenius,true,{_fmt(report.exact_sq)}")
    lines.append(f"exact_frobenius,exact,{NORM},frobenius,true,{_fmt(report.exact_fro)}")
    lines.append(f"exact_spectral,exact,{NORM},spectral,true,{_fmt(report.exact_spectral)}")
    for v in report.values:
        flag = "true" if v.applicable else "false"
        val = _fmt(v.value) if v.applicable else ""
        lines.append(f"{v.name},{v.kind},{v.target},{v.norm_used},{flag},{val}")
    lines.append(f"envelope_lower,envelope,{SQUARED},frobenius,true,{_fmt(report.envelope[0])}")
    lines.append(f"envelope_upper,envelope,{SQUARED},frobenius,true,{_fmt(report.envelope[1])}")
    return "\n".join(lines) + "\n"


def report_table(report):
    """Human-readable report with one row per estimator."""
    rows = [("name", "kind", "target", "norm", "value", "note")]
    rows.append(("exact_squared_frobenius", "exact", SQUARED, "frobenius", _fmt(report.exact_sq), ""))
    rows.append(("exact_frobenius", "exact", NORM, "frobenius", _fmt(report.exact_fro), ""))
    rows.append(("exact_spectral", "exact", NORM, "spectral", _fmt(report.exact_spectral), ""))
    for v in report.values:
        val = _fmt(v.value) if v.applicable else "-"
        rows.append((v.name, v.kind, v.target, v.norm_used, val, v.reason))
    rows.append(("envelope_lower", "envelope", SQUARED, "frobenius", _fmt(report.envelope[0]), ""))
    rows.append(("envelope_upper", "envelope", SQUARED, "frobenius", _fmt(report.envelope[1]), ""))
    widths = [max(len(r[c]) for r in rows) for c in range(6)]
    out = []
    for r in rows:
        out.append("  ".join(r[c].ljust(widths[c]) for c in range(6)).rstrip())
    return "\n".join(out) + "\n"
