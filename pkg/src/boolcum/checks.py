"""Seeded identity sweeps, scalar and operator-valued.

Every check pairs a formula path with an independent route: the run
factorization models, exhaustive sums over interval partitions, or binomial
expansion.  Each sweep returns a :class:`~boolcum.report.Report`.
"""

from __future__ import annotations

import random
from typing import Callable, Sequence

from . import model, opvalued as ov, scalar as sc
from .exact import MatrixB, TruncatedSeries, basis
from .model import X, Y
from .opvalued import OVElement, OVJointState
from .report import Report


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


# ---------------------------------------------------------------------------
# scalar


def check_roundtrip(seed: int, order: int = 10, cases: int = 100) -> Report:
    rng, rep = _rng(seed, "roundtrip"), Report("roundtrip")
    for _ in range(cases):
        m = sc.random_moments(rng, order)
        back = sc.cumulants_to_moments(sc.moments_to_cumulants(m))
        rep.record(back == m, moments=m, result=back)
    return rep


def check_compositions(seed: int, order: int = 10, cases: int = 5) -> Report:
    rng, rep = _rng(seed, "compositions"), Report("composition-oracle")
    for _ in range(cases):
        b = sc.CumulantSeq(sc.random_moments(rng, order).values)
        m = sc.cumulants_to_moments(b)
        for n in range(1, order + 1):
            via = sc.moments_via_compositions(b, n)
            rep.record(m[n] == via, cumulants=b, n=n, recursion=m[n], compositions=via)
    return rep


def check_series_relation(seed: int, order: int = 10, cases: int = 50) -> Report:
    rng, rep = _rng(seed, "series"), Report("M=B(1+zM)")
    for _ in range(cases):
        m = sc.random_moments(rng, order)
        rep.record(sc.series_relation_holds(m), moments=m)
    return rep


def check_vanishing(seed: int, states: int = 50, max_length: int = 6, draws: int = 2) -> Report:
    rng, rep = _rng(seed, "vanishing"), Report("vanishing-adjacent-XY")
    for _ in range(states):
        s = model.random_state(rng, 2 * max_length)
        for total in range(2, max_length + 1):
            for n in range(total - 1):
                rep.merge(model.verify_vanishing(s, n, total - 2 - n, rng, draws))
    return rep


def check_unit_rules(seed: int, states: int = 20, max_length: int = 6, draws: int = 2) -> Report:
    rng, rep = _rng(seed, "units"), Report("unit-entries")
    for _ in range(states):
        s = model.random_state(rng, 2 * max_length)
        for n in range(1, max_length):
            rep.merge(model.verify_unit_rules(s, n, rng, draws))
        # b^n(1, ..., 1) is 1 for n = 1 and 0 otherwise
        for n in range(1, max_length + 1):
            val = model.mixed_cumulant(s, [model.ONE] * n)
            rep.record(val == (1 if n == 1 else 0), rule="all-units", n=n, value=val)
    return rep


def check_product_rules(seed: int, states: int = 20, max_length: int = 6, draws: int = 2) -> Report:
    rng, rep = _rng(seed, "products"), Report("product-entries")
    for _ in range(states):
        s = model.random_state(rng, 2 * max_length)
        for n in range(0, max_length):
            rep.merge(model.verify_product_rules(s, n, rng, draws, max_length))
    return rep


def check_convolutions(seed: int, order: int = 8, cases: int = 100) -> Report:
    """Additive and multiplicative boolean convolution, formula path against the joint model."""
    rng, rep = _rng(seed, "convolutions"), Report("convolutions")
    Z = X + Y + X * Y
    for _ in range(cases):
        s = model.random_state(rng, order)
        bX, bY = sc.moments_to_cumulants(s.mX), sc.moments_to_cumulants(s.mY)
        # additive: cumulants add, and the moments agree with phi((X+Y)^n)
        m_sum = model.joint_moments(s, X + Y)
        rep.record(sc.moments_to_cumulants(m_sum) == bX + bY, rule="B_{X+Y}=B_X+B_Y", state=s)
        rep.record(sc.bconv_add(s.mX, s.mY) == m_sum, rule="bconv_add=oracle", state=s)
        # shift by one: binomial formula against phi((1+X)^n)
        shifted = model.joint_moments(s, model.ONE + X)
        rep.record(sc.shift_moments(s.mX) == shifted, rule="shift-moments=oracle", state=s)
        rep.record(sc.shift_one(bX) == sc.moments_to_cumulants(shifted), rule="shift_one=oracle", state=s)
        # product: formula cumulants of X+Y+XY against phi(Z^n)
        mZ = model.joint_moments(s, Z)
        bZ_formula = sc.product_cumulants(bX, bY)
        rep.record(bZ_formula == sc.moments_to_cumulants(mZ), rule="b_{X+Y+XY}=oracle", state=s)
        rep.record(sc.bconv_mul(s.mX, s.mY) == mZ, rule="bconv_mul=oracle", state=s)
        # multiplicativity of the shifted B-transform, both paths
        formula = sc.check_multiplicative(s.mX, s.mY)
        oracle = sc.check_multiplicative(s.mX, s.mY, mZ)
        rep.record(formula.ok, rule="B_(1+X)(1+Y)=B_(1+X)B_(1+Y) formula", state=s, index=formula.first_difference)
        rep.record(oracle.ok, rule="B_(1+X)(1+Y)=B_(1+X)B_(1+Y) oracle", state=s, index=oracle.first_difference)
        rep.record(formula.lhs == oracle.lhs, rule="formula B-transform = oracle B-transform", state=s)
    return rep


def check_binomial(max_n: int = 20) -> Report:
    rep = Report("binomial-identity")
    for n in range(max_n + 1):
        for a in range(n + 1):
            for b in range(n - a + 1):
                rep.record(sc.binomial_identity_check(n, a, b), n=n, a=a, b=b)
    return rep


def scalar_suite(seed: int = 0, order: int = 8, cases: int = 100) -> list[Report]:
    return [
        check_roundtrip(seed, max(order, 10), cases),
        check_compositions(seed, min(max(order, 10), 10)),
        check_series_relation(seed, order, cases),
        check_vanishing(seed, states=max(cases // 2, 1)),
        check_unit_rules(seed, states=max(cases // 5, 1)),
        check_product_rules(seed, states=max(cases // 5, 1)),
        check_convolutions(seed, order, cases),
        check_binomial(20),
    ]


# ---------------------------------------------------------------------------
# operator-valued


def ov_pool(dim: int, rng: random.Random) -> list[OVElement]:
    """Lower entries for the sweeps: letters, products, sums, base elements, the unit."""
    X_, Y_ = ov.ov_letters(dim)
    f = rng.choice(basis(dim))
    return [X_, Y_, X_ * Y_, Y_ * X_, X_ + Y_, X_ * f * X_, X_ * f * Y_, OVElement.const(f), OVElement.unit(dim)]


def _doubled(a: OVElement) -> bool:
    return any(x == y for w in a.words for x, y in zip(w.letters, w.letters[1:]))


def draw_entries(rng: random.Random, pool: Sequence[OVElement], k: int) -> list[OVElement]:
    """``k`` pool entries with at most one of them holding a repeated letter.

    Every run of one letter then has length at most ``k + 1``.
    """
    singles = [a for a in pool if not _doubled(a)]
    out, seen = [], False
    for _ in range(k):
        a = rng.choice(pool)
        if _doubled(a):
            if seen:
                a = rng.choice(singles)
            seen = True
        out.append(a)
    return out


def _uppers(dim: int, count: int) -> list[tuple[MatrixB, ...]]:
    units = basis(dim)
    return [tuple(units[b] for b in idx) for idx in ov.basis_tuples(dim, count)]


def check_ov_roundtrip(seed: int, order: int, dim: int, cases: int) -> Report:
    rng, rep = _rng(seed, "ov-roundtrip"), Report("ov-roundtrip")
    for _ in range(cases):
        D = ov.random_distribution(rng, order, dim)
        B = ov.ov_moments_to_cumulants(D)
        back = ov.ov_cumulants_to_moments(B, check=False)
        rep.record(back == D, rule="roundtrip")
        rep.record(ov.series_identity_holds(D.as_series(), B), rule="M=B(1+IM)")
        # triangularity: b^n only sees m^1..m^n
        if order > 1:
            head = ov.ov_moments_to_cumulants(ov.OVDistribution(D.moments[:-1]))
            rep.record(head.components == B.components[:-1], rule="triangular")
    return rep


def check_ov_shift(seed: int, order: int, dim: int, cases: int) -> Report:
    rng, rep = _rng(seed, "ov-shift"), Report("ov-shift-by-one")
    for _ in range(cases):
        D = ov.random_distribution(rng, order, dim)
        formula = ov.ov_shift_one(ov.ov_moments_to_cumulants(D))
        oracle = ov.ov_moments_to_cumulants(ov.ov_shift_moments(D))
        rep.record(formula == oracle, where=formula.first_difference(oracle))
    return rep


def check_ov_collapse(seed: int, order: int = 6, cases: int = 50) -> Report:
    """Every operator-valued operation at ``d = 1`` against its scalar counterpart."""
    rng, rep = _rng(seed, "ov-collapse"), Report("ov-collapse-d1")
    I = MatrixB.identity(1)
    X1, Y1 = ov.ov_letters(1)
    to_ov = {"X": X1, "Y": Y1}

    def ov_entry(a: model.AlgElement) -> OVElement:
        total = OVElement(1)
        for w, c in a.terms.items():
            term = OVElement.unit(1).scale(c)
            for ch in w:
                term = term * to_ov[ch]
            total = total + term
        return total

    for _ in range(cases):
        s = model.random_state(rng, order)
        DX, DY = ov.OVDistribution.from_scalar(s.mX), ov.OVDistribution.from_scalar(s.mY)
        ovs = OVJointState(DX, DY)
        bX, bY = sc.moments_to_cumulants(s.mX), sc.moments_to_cumulants(s.mY)
        BX, BY = ov.ov_moments_to_cumulants(DX), ov.ov_moments_to_cumulants(DY)
        rep.record(ov.scalar_cumulants(BX) == bX, op="ov_moments_to_cumulants")
        rep.record(ov.ov_cumulants_to_moments(BX).to_scalar() == sc.cumulants_to_moments(bX), op="ov_cumulants_to_moments")
        rep.record(ov.scalar_cumulants(ov.ov_shift_one(BX)) == sc.shift_one(bX), op="ov_shift_one")
        rep.record(ov.scalar_cumulants(ov.ov_bconv_add(ovs)) == bX + bY, op="ov_bconv_add")
        rep.record(
            ov.scalar_cumulants(ov.ov_bconv_mul(ovs)) == sc.product_cumulants(bX, bY), op="ov_bconv_mul"
        )
        lhs = ov.ov_bconv_mul(ovs, shift=True)
        check = sc.check_multiplicative(s.mX, s.mY)
        rep.record(TruncatedSeries(lhs.to_scalars()) == check.lhs, op="ov_bconv_mul(shift)")
        rep.record(
            TruncatedSeries((ov.ov_shift_one(BX) * ov.ov_shift_one(BY)).to_scalars()) == check.rhs,
            op="mulseries_mul",
        )
        rep.record(TruncatedSeries((BX + BY).to_scalars()) == sc.b_transform(s.mX) + sc.b_transform(s.mY), op="mulseries_add")
        for _ in range(3):
            length = rng.randint(1, order)
            w = "".join(rng.choice("XY") for _ in range(length))
            # runs in a random word of length <= order stay within the moment order
            val = ov.ov_phi_word(ovs, ov.OVWord(w, (I,) * (length + 1)))
            rep.record(val[0, 0] == model.phi_word(s, w), op="ov_phi_word", word=w)
        # entries hold at most two equal letters in a row, so runs stay within the order
        n = rng.randint(1, order // 2)
        entries = [rng.choice(model.POOL[:6]) for _ in range(n)]
        val = ov.ov_mixed_cumulant(ovs, [ov_entry(a) for a in entries], [I] * (n - 1))
        rep.record(val[0, 0] == model.mixed_cumulant(s, entries), op="ov_mixed_cumulant", entries=entries)
    return rep


def check_unit_uppers(seed: int, order: int, dim: int, cases: int) -> Report:
    """Cumulants at all-unit upper arguments equal the plain cumulants of ``Phi``."""
    rng, rep = _rng(seed, "unit-uppers"), Report("unit-upper-arguments")
    I = MatrixB.identity(dim)
    for _ in range(cases):
        # one extra moment order covers the longest run of the pool entries
        s = ov.random_joint_state(rng, order + 1, dim)
        X_, Y_ = ov.ov_letters(dim)
        for elem, B in ((X_, ov.ov_moments_to_cumulants(s.distX)), (Y_, ov.ov_moments_to_cumulants(s.distY))):
            for n in range(1, order + 1):
                tensor = B[n - 1](*([I] * (n - 1)))
                direct = ov.phi_cumulant(s, [elem] * n)
                rep.record(tensor == direct, n=n, tensor=tensor, direct=direct)
        pool = ov_pool(dim, rng)
        for n in range(1, order + 1):
            lower = draw_entries(rng, pool, n)
            a = ov.ov_mixed_cumulant(s, lower, [I] * (n - 1))
            b = ov.phi_cumulant(s, lower)
            rep.record(a == b, n=n, lower=lower, recurrence=a, direct=b)
    return rep


def check_base_transfer(seed: int, order: int, dim: int, cases: int, draws: int = 4) -> Report:
    """``f_0 b^n_X(h_1 f_1, ..., h_{n-1} f_{n-1}) h_n = b^n(f_0 X h_1, ..., f_{n-1} X h_n)``."""
    rng, rep = _rng(seed, "base-transfer"), Report("base-element-transfer")
    units = basis(dim)
    for _ in range(cases):
        s = ov.random_joint_state(rng, order, dim)
        X_, _ = ov.ov_letters(dim)
        B = ov.ov_moments_to_cumulants(s.distX)
        for n in range(1, order + 1):
            for trial in range(draws):
                # alternate matrix units with dense random matrices
                pick = (lambda: rng.choice(units)) if trial % 2 == 0 else (lambda: ov.random_matrix(rng, dim))
                f = [pick() for _ in range(n)]
                h = [pick() for _ in range(n)]
                args = [h[i].matmul(f[i + 1]) for i in range(n - 1)]
                lhs = f[0].matmul(B[n - 1](*args)).matmul(h[n - 1])
                rhs = ov.phi_cumulant(s, [f[i] * X_ * h[i] for i in range(n)])
                rep.record(lhs == rhs, n=n, f=f, h=h, lhs=lhs, rhs=rhs)
    return rep


def _sweep_uppers(
    rep: Report, s: OVJointState, lower: Sequence[OVElement], expected: Callable[[tuple], MatrixB], **witness
) -> None:
    for upper in _uppers(s.dim, len(lower) - 1):
        val = ov.ov_mixed_cumulant(s, lower, upper)
        exp = expected(upper)
        if not rep.record(val == exp, lower=lower, upper=upper, value=val, expected=exp, **witness):
            return


def check_ov_vanishing(seed: int, order: int, dim: int, cases: int, max_length: int = 4) -> Report:
    rng, rep = _rng(seed, "ov-vanishing"), Report("ov-vanishing-XY")
    zero = MatrixB.zero(dim)
    for _ in range(cases):
        s = ov.random_joint_state(rng, max(order, max_length + 1), dim)
        X_, Y_ = ov.ov_letters(dim)
        pool = ov_pool(dim, rng)
        for total in range(2, max_length + 1):
            for n in range(total - 1):
                for pair in ((X_, Y_), (Y_, X_)):
                    rest = draw_entries(rng, pool, total - 2)
                    lower = rest[:n] + list(pair) + rest[n:]
                    _sweep_uppers(rep, s, lower, lambda u: zero, position=n)
    return rep


def check_ov_base_rules(seed: int, order: int, dim: int, cases: int, max_length: int = 4) -> Report:
    """A base-algebra lower entry: vanishing at either end, absorbed into the upper argument inside."""
    rng, rep = _rng(seed, "ov-base"), Report("ov-base-entries")
    units = basis(dim)
    zero = MatrixB.zero(dim)
    for _ in range(cases):
        s = ov.random_joint_state(rng, max(order, max_length + 1), dim)
        pool = ov_pool(dim, rng)
        for n in range(1, max_length):
            a = draw_entries(rng, pool, n)
            f = rng.choice([rng.choice(units), ov.random_matrix(rng, dim)])
            F = OVElement.const(f)
            _sweep_uppers(rep, s, [F] + a, lambda u: zero, rule="first")
            _sweep_uppers(rep, s, a + [F], lambda u: zero, rule="last")
            for k in range(1, n):

                def merged(u, k=k):
                    # lower a_1..a_k, f, a_{k+1}..: f sits between u[k-1] and u[k]
                    args = u[: k - 1] + (u[k - 1].matmul(f).matmul(u[k]),) + u[k + 1 :]
                    return ov.ov_mixed_cumulant(s, a, args)

                _sweep_uppers(rep, s, a[:k] + [F] + a[k:], merged, rule="interior", position=k)
    return rep


def check_ov_product_rules(seed: int, order: int, dim: int, cases: int, max_length: int = 4) -> Report:
    rng, rep = _rng(seed, "ov-product"), Report("ov-product-entries")
    for _ in range(cases):
        s = ov.random_joint_state(rng, max(order, max_length + 1), dim)
        X_, Y_ = ov.ov_letters(dim)
        XY = X_ * Y_
        pool = ov_pool(dim, rng)
        for n in range(0, max_length):
            a = draw_entries(rng, pool, n)
            for k in range(0, n + 1):
                left, right = a[:k], a[k:]

                def factored(u, left=left, right=right, k=k):
                    return ov.ov_mixed_cumulant(s, left + [X_], u[:k]).matmul(
                        ov.ov_mixed_cumulant(s, [Y_] + right, u[k:])
                    )

                _sweep_uppers(rep, s, left + [XY] + right, factored, position=k)
    return rep


def check_ov_convolutions(
    seed: int, order: int, dim: int, cases: int, identity_report: Report | None = None
) -> Report:
    """Additive and multiplicative identities for cumulant series, as exact tensor equalities.

    ``M = B(1 + I M)`` is checked for every distribution involved (both
    marginals, ``X + Y`` and ``X + Y + XY``); those records go to
    ``identity_report`` when one is given.
    """
    rng, rep = _rng(seed, "ov-convolutions"), Report("ov-convolutions")
    ident = rep if identity_report is None else identity_report
    for _ in range(cases):
        s = ov.random_joint_state(rng, order, dim)
        X_, Y_ = ov.ov_letters(dim)
        dists = {
            "X": s.distX,
            "Y": s.distY,
            "X+Y": ov.ov_joint_moments(s, X_ + Y_),
            "X+Y+XY": ov.ov_joint_moments(s, X_ + Y_ + X_ * Y_),
        }
        B = {name: ov.ov_moments_to_cumulants(D) for name, D in dists.items()}
        add = B["X"] + B["Y"]
        rep.record(B["X+Y"] == add, rule="B_{X+Y}=B_X+B_Y", where=B["X+Y"].first_difference(add))
        lhs = ov.ov_shift_one(B["X+Y+XY"])
        rhs = ov.ov_shift_one(B["X"]) * ov.ov_shift_one(B["Y"])
        rep.record(lhs == rhs, rule="B_(1+X)(1+Y)=B_(1+X)B_(1+Y)", where=lhs.first_difference(rhs))
        rep.record(ov.ov_bconv_add(s) == add, rule="ov_bconv_add")
        for name, D in dists.items():
            ident.record(ov.series_identity_holds(D.as_series(), B[name]), rule="M=B(1+IM)", variable=name)
    return rep


def ov_suite(seed: int = 0, order: int = 4, dim: int = 2, cases: int = 5) -> list[Report]:
    return [
        check_ov_roundtrip(seed, order, dim, cases),
        check_ov_shift(seed, order, dim, cases),
        check_ov_collapse(seed, max(order, 6), 10 * cases),
        check_unit_uppers(seed, order, dim, cases),
        check_base_transfer(seed, order, dim, cases),
        check_ov_vanishing(seed, order, dim, cases, max_length=min(order, 4)),
        check_ov_base_rules(seed, order, dim, cases, max_length=min(order, 4)),
        check_ov_product_rules(seed, order, dim, cases, max_length=min(order, 4)),
        check_ov_convolutions(seed, order, dim, cases),
    ]


def summarize(reports: Sequence[Report]) -> dict:
    reports = sorted(reports, key=lambda r: r.name)
    return {
        "ok": all(r.ok for r in reports),
        "checks": [r.to_json() for r in reports],
    }

