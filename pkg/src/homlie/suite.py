"""Desk-scale verification suite.

Runs every classification and vanishing result on truncation windows and
reports one pass/fail line per criterion.  Window checks certify finitely
many instances plus stability under window growth; they are reported as
finite-range evidence, not as proofs over the full graded algebras.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .algebra import Vector, Window, builtin
from .checker import (
    check_axioms,
    check_bilinear_class,
    check_bilinear_skew,
    check_linear_class,
    check_multiplicative,
)
from .classify import corollary_check, decompose, known_map, solve_commuting_maps
from .maps import BilinearMap, LinearMap
from .qfield import QRational, qbracket, qbrace, qpow
from .solver import (
    build_ansatz,
    build_system,
    nullspace,
    nullspace_dim_specialized,
    span_rank,
    stable_solve,
)
from . import rowrefs

Q1 = QRational(1)


@dataclass
class SuiteConfig:
    window: Window = Window(-6, 6)
    delta: int = 2
    degree_range: tuple = (-4, 4)
    threads: Optional[int] = None

    def resolved_threads(self):
        if self.threads is not None:
            return max(1, self.threads)
        env = os.environ.get("HOMLIE_THREADS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                pass
        return min(2, os.cpu_count() or 1)


@dataclass
class CriterionResult:
    name: str
    status: str  # "pass" | "fail"
    details: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return self.status == "pass"

    def line(self):
        return f"[{self.status.upper():4s}] {self.name}"


def _result(name, ok, details=None):
    return CriterionResult(name, "pass" if ok else "fail", details or [])


# -- parallel scan machinery -------------------------------------------------


def _scan_task(task):
    """Worker: one stable solve plus its bookkeeping; returns plain data."""
    (tid, alg, kind, cls, k, s, parity, lo, hi, delta, knowns, roundtrip) = task
    p = builtin(alg)
    window = Window(lo, hi)
    space = stable_solve(
        p, kind, cls, s=s, parity=parity, window=window, delta=delta, k=k
    )
    out = {
        "id": tid,
        "dim": space.dim,
        "raw_window_dim": space.raw_window_dim,
        "raw_enlarged_dim": space.raw_enlarged_dim,
        "roundtrip_total": 0,
        "roundtrip_passed": 0,
        "residual": None,
    }
    if roundtrip and space.dim:
        for concrete in space.maps():
            if kind == "bilinear":
                rep = check_bilinear_class(p, concrete, cls, window)
            else:
                rep = check_linear_class(p, concrete, cls, window, k=k)
            out["roundtrip_total"] += 1
            out["roundtrip_passed"] += int(rep.passed)
    if knowns and space.dim:
        maps = {name: known_map(name, p) for name in knowns}
        out["residual"] = decompose(space, maps).residual_dim
    return out


def _run_scan_tasks(tasks, threads):
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan_task, tasks))
    else:
        results = [_scan_task(t) for t in tasks]
    return {r["id"]: r for r in results}


class AcceptanceSuite:
    """All desk-scale criteria; results come back in a fixed order."""

    def __init__(self, config=None, log=None):
        self.cfg = config or SuiteConfig()
        self.log = log or (lambda line: None)
        self._scans = None

    # -- shared heavy scans ------------------------------------------------

    def _scan_specs(self):
        lo, hi = self.cfg.degree_range
        degrees = range(lo, hi + 1)
        w = self.cfg.window
        specs = []

        def add(alg, kind, cls, parity, knowns_at=None, k=1):
            for s in degrees:
                knowns = None
                if knowns_at is not None and s in knowns_at:
                    knowns = knowns_at[s]
                specs.append((
                    (alg, kind, cls, parity, s),
                    (alg, kind, cls, k, s, parity, w.lo, w.hi, self.cfg.delta,
                     knowns, True),
                ))

        add("w22q", "bilinear", "biderivation", 0,
            knowns_at={0: ("phi_ad", "phi_0")})
        add("wittq", "bilinear", "biderivation", 0,
            knowns_at={0: ("phi_ad",)})
        add("wittsuperq", "bilinear", "super_biderivation", 0,
            knowns_at={0: ("phi_ad",)})
        add("wittsuperq", "bilinear", "super_biderivation", 1,
            knowns_at={-1: ("phi_minus1",)})
        add("w22q", "bilinear", "alpha_biderivation", 0)
        add("wittq", "bilinear", "alpha_biderivation", 0)
        add("wittsuperq", "bilinear", "alpha_super_biderivation", 0)
        add("wittsuperq", "bilinear", "alpha_super_biderivation", 1)
        add("w22q", "linear", "alpha_k_derivation", 0, k=1)
        add("wittq", "linear", "alpha_k_derivation", 0, k=1)
        add("wittsuperq", "linear", "alpha_k_derivation", 0, k=1)
        add("wittsuperq", "linear", "alpha_k_derivation", 1, k=1)
        return specs

    def scans(self):
        if self._scans is None:
            specs = self._scan_specs()
            tasks = [(key, *body) for key, body in specs]
            self.log(f"running {len(tasks)} stable scans "
                     f"(threads={self.cfg.resolved_threads()})")
            self._scans = _run_scan_tasks(tasks, self.cfg.resolved_threads())
        return self._scans

    def _scan(self, alg, kind, cls, parity, s):
        return self.scans()[(alg, kind, cls, parity, s)]

    # -- criteria ------------------------------------------------------------

    def criterion_01_axioms(self):
        details = []
        ok = True
        w = self.cfg.window
        for name in ("w22q", "wittq", "wittsuperq"):
            p = builtin(name)
            rep = check_axioms(p, w)
            details.append(f"{name}: axioms {rep}")
            ok = ok and rep.passed
            mul = check_multiplicative(p, w)
            details.append(f"{name}: multiplicative {mul}")
            ok = ok and (not mul.passed) and len(mul.witnesses) >= 1
        p49 = builtin("example49")
        rep = check_axioms(p49, w)
        details.append(f"example49: axioms {rep}")
        ok = ok and rep.passed
        return _result("01 axioms hold; twists are not multiplicative", ok, details)

    def criterion_02_qnumbers(self):
        ok = True
        for m in range(-8, 9):
            for n in range(-8, 9):
                ok = ok and qpow(n) * qbracket(m) - qpow(m) * qbracket(n) == qbracket(m - n)
                ok = ok and qpow(-n) * qbracket(m) + qpow(m) * qbracket(n) == qbracket(m + n)
                ok = ok and qbrace(n + m) == qbrace(n) + qpow(n) * qbrace(m)
            ok = ok and qbracket(-m) == -qbracket(m)
            ok = ok and qbrace(m + 1) == Q1 + qpow(1) * qbrace(m)
            ok = ok and qbrace(m + 1) == qbrace(m) + qpow(m)
            ok = ok and qpow(m) * qbrace(-m) == -qbrace(m)
        return _result("02 q-number identities on [-8,8]^2", ok,
                       ["all identity families checked exactly"])

    def _vanishing_scan(self, alg, kind, cls, parity, keep=()):
        lo, hi = self.cfg.degree_range
        details = []
        ok = True
        for s in range(lo, hi + 1):
            r = self._scan(alg, kind, cls, parity, s)
            if s in keep:
                continue
            if r["dim"] != 0:
                ok = False
                details.append(f"{alg} {cls} parity {parity} s={s}: dim {r['dim']} != 0")
        return ok, details

    def criterion_03_w22q(self):
        details = []
        r0 = self._scan("w22q", "bilinear", "biderivation", 0, 0)
        ok = r0["dim"] == 2 and r0["residual"] == 0
        details.append(
            f"s=0: stable dim {r0['dim']} (want 2), residual vs "
            f"{{phi_ad, phi_0}} = {r0['residual']}"
        )
        ok2, det2 = self._vanishing_scan("w22q", "bilinear", "biderivation", 0, keep=(0,))
        details += det2 or ["s != 0: all stable dims 0"]
        return _result("03 w22q biderivations = span{phi_ad, phi_0}", ok and ok2, details)

    def criterion_04_wittq(self):
        details = []
        r0 = self._scan("wittq", "bilinear", "biderivation", 0, 0)
        ok = r0["dim"] == 1 and r0["residual"] == 0
        details.append(f"s=0: stable dim {r0['dim']} (want 1), residual vs phi_ad = {r0['residual']}")
        ok2, det2 = self._vanishing_scan("wittq", "bilinear", "biderivation", 0, keep=(0,))
        details += det2 or ["s != 0: all stable dims 0"]
        return _result("04 wittq biderivations are inner", ok and ok2, details)

    def criterion_05_wittsuperq(self):
        details = []
        re0 = self._scan("wittsuperq", "bilinear", "super_biderivation", 0, 0)
        ok = re0["dim"] == 1 and re0["residual"] == 0
        details.append(f"even s=0: stable dim {re0['dim']} (want 1), residual vs phi_ad = {re0['residual']}")
        oke, dete = self._vanishing_scan("wittsuperq", "bilinear", "super_biderivation", 0, keep=(0,))
        details += dete or ["even s != 0: all stable dims 0"]
        ro = self._scan("wittsuperq", "bilinear", "super_biderivation", 1, -1)
        ok2 = ro["dim"] == 1 and ro["residual"] == 0
        details.append(f"odd s=-1: stable dim {ro['dim']} (want 1), residual vs phi_minus1 = {ro['residual']}")
        oko, deto = self._vanishing_scan("wittsuperq", "bilinear", "super_biderivation", 1, keep=(-1,))
        details += deto or ["odd s != -1: all stable dims 0"]
        return _result(
            "05 wittsuperq: even super-biderivations inner, odd = span{phi_minus1}",
            ok and oke and ok2 and oko, details,
        )

    def criterion_06_alpha_vanishing(self):
        details = []
        ok = True
        for alg, kind, cls, parity in (
            ("w22q", "bilinear", "alpha_biderivation", 0),
            ("wittq", "bilinear", "alpha_biderivation", 0),
            ("wittsuperq", "bilinear", "alpha_super_biderivation", 0),
            ("wittsuperq", "bilinear", "alpha_super_biderivation", 1),
            ("w22q", "linear", "alpha_k_derivation", 0),
            ("wittq", "linear", "alpha_k_derivation", 0),
            ("wittsuperq", "linear", "alpha_k_derivation", 0),
            ("wittsuperq", "linear", "alpha_k_derivation", 1),
        ):
            good, det = self._vanishing_scan(alg, kind, cls, parity)
            ok = ok and good
            details += det
        if ok:
            details.append("all twisted-output derivation/biderivation scans vanish")
        return _result("06 alpha-twisted derivation spaces vanish", ok, details)

    def criterion_07_example(self):
        p = builtin("example49")
        w = self.cfg.window
        details = []
        ok = check_axioms(p, w).passed
        details.append(f"axioms: {'pass' if ok else 'fail'}")
        lam = qpow(1)
        x1 = p.generator("x1")
        x2 = p.generator("x2")
        y = p.generator("y")

        def dmap(b, c):
            table = {
                x1: Vector.of(x1, QRational(2 * c) * lam),
                x2: Vector.of(x1, QRational(b)),
                y: Vector.of(y, QRational(c)),
            }
            return LinearMap.from_table(0, table)

        for (b, c) in ((1, 0), (0, 1)):
            rep = check_linear_class(p, dmap(b, c), "alpha_k_derivation", w, k=1)
            details.append(f"twisted derivation (b,c)=({b},{c}): {rep}")
            ok = ok and rep.passed

        def phimap(a, k):
            d = (Q1 / lam ** 2) * (QRational(Fraction(1, 2)) - lam) * QRational(k)
            table = {
                (x1, x2): Vector.of(x1, QRational(-2) * d * lam),
                (x2, x1): Vector.of(x1, QRational(2) * d * lam),
                (x2, x2): Vector.of(x1, QRational(a)),
                (x2, y): Vector.of(y, d),
                (y, x2): Vector.of(y, -d),
                (y, y): Vector.of(x1, QRational(k)),
            }
            full = {}
            for g1 in (x1, x2, y):
                for g2 in (x1, x2, y):
                    full[(g1, g2)] = table.get((g1, g2), Vector({}))
            return BilinearMap.from_table(0, full)

        for (a, k) in ((1, 0), (0, 1)):
            rep = check_bilinear_class(p, phimap(a, k), "alpha_super_biderivation", w)
            details.append(f"twisted biderivation (a,k)=({a},{k}): {rep}")
            ok = ok and rep.passed
        skew = check_bilinear_skew(p, phimap(1, 0), w)
        hit = any(inputs == (x2, x2) for (_, inputs, _, _) in skew.witnesses)
        details.append(
            f"skew-symmetry fails at (x2, x2) for a=1: {'yes' if hit else 'no'}"
        )
        ok = ok and not skew.passed and hit
        return _result("07 three-dimensional example behaves as stated", ok, details)

    def criterion_08_rows(self):
        try:
            n = rowrefs.check_all()
            return _result("08 generated rows match hand-coded references",
                           True, [f"{n} comparisons"])
        except AssertionError as exc:
            return _result("08 generated rows match hand-coded references",
                           False, [str(exc)])

    def _expected_commuting(self, p, parity):
        """Hand-built commuting families for the three infinite presentations."""
        w = self.cfg.window
        gens = p.gens_in(w)
        expected = []
        if p.name == "w22q" and parity == 0:
            expected.append(LinearMap.from_table(0, {g: Vector.of(g) for g in gens}))
            table = {}
            for g in gens:
                if g.family == "L":
                    table[g] = Vector.of(p.generator("W", g.degree))
                else:
                    table[g] = Vector({})
            expected.append(LinearMap.from_table(0, table, degree=0))
        elif p.name == "wittq" and parity == 0:
            expected.append(LinearMap.from_table(0, {g: Vector.of(g) for g in gens}))
        elif p.name == "wittsuperq" and parity == 0:
            expected.append(LinearMap.from_table(0, {g: Vector.of(g) for g in gens}))
        elif p.name == "wittsuperq" and parity == 1:
            table = {}
            for g in gens:
                if g.family == "L":
                    table[g] = Vector.of(p.generator("G", g.degree - 1))
                else:
                    table[g] = Vector({})
            expected.append(LinearMap.from_table(1, table, degree=-1))
        return expected

    def criterion_09_commuting(self):
        details = []
        ok = True
        self._families = {}
        for alg, parity in (("w22q", 0), ("wittq", 0), ("wittsuperq", 0), ("wittsuperq", 1)):
            p = builtin(alg)
            fam = solve_commuting_maps(
                p, parity, self.cfg.window, delta=self.cfg.delta,
                degree_range=self.cfg.degree_range,
            )
            self._families[(alg, parity)] = (p, fam)
            expected = self._expected_commuting(p, parity)
            good = fam.dim == len(expected)
            # span equality in slot coordinates, degree component by component
            if good and fam.dim:
                vecs = []
                for (s, vec, _) in fam.instances:
                    ansatz = fam.spaces[s].ansatz
                    vecs.append({ansatz.index[k]: v for k, v in vec.items()})
                evecs = []
                for f in expected:
                    s = f.degree or 0
                    ansatz = fam.spaces[s].ansatz
                    keyed = ansatz.slot_vector_of_map(f)
                    evecs.append({ansatz.index[k]: v for k, v in keyed.items()})
                good = span_rank(vecs + evecs) == span_rank(vecs) == span_rank(evecs)
            ok = ok and good
            details.append(
                f"{alg} parity {parity}: family dim {fam.dim} "
                f"(want {len(expected)}){'' if good else ' MISMATCH'}"
            )
            # round-trip: each instance induces a (super-)biderivation
            for i, (s, vec, f) in enumerate(fam.instances):
                if p.is_super:
                    phi = BilinearMap.from_rule(
                        f.parity,
                        lambda g1, g2, f=f: (
                            None if f(g1) is None else p.bracket(f(g1), Vector.of(g2))
                        ),
                        degree=s,
                    )
                    rep = check_bilinear_class(p, phi, "super_biderivation", self.cfg.window)
                else:
                    phi = BilinearMap.from_rule(
                        f.parity,
                        lambda g1, g2, f=f: (
                            None if f(g2) is None else p.bracket(Vector.of(g1), f(g2))
                        ),
                        degree=s,
                    )
                    rep = check_bilinear_class(p, phi, "biderivation", self.cfg.window)
                ok = ok and rep.passed
                if not rep.passed:
                    details.append(f"{alg} parity {parity} instance {i}: induced map fails")
        if ok:
            details.append("all induced bilinear maps pass their class checks")
        return _result("09 commuting maps reproduce the classified families", ok, details)

    def criterion_10_corollaries(self):
        if not hasattr(self, "_families"):
            self.criterion_09_commuting()
        details = []
        ok = True
        for alg, parity in (("w22q", 0), ("wittq", 0), ("wittsuperq", 0), ("wittsuperq", 1)):
            p, fam = self._families[(alg, parity)]
            if parity == 0:
                rep = corollary_check(p, fam, "automorphism", self.cfg.window)
                good = rep.classifications == ["identity"]
                ok = ok and good
                details.append(
                    f"{alg} parity 0 automorphisms: {rep.classifications} "
                    f"{'' if good else 'MISMATCH'}"
                )
            prop = "super_derivation" if p.is_super else "derivation"
            rep = corollary_check(p, fam, prop, self.cfg.window)
            good = rep.classifications == ["zero"]
            ok = ok and good
            details.append(
                f"{alg} parity {parity} {prop}s: {rep.classifications} "
                f"{'' if good else 'MISMATCH'}"
            )
        return _result("10 commuting automorphisms are the identity; commuting derivations vanish", ok, details)

    def criterion_11_soundness(self):
        total = 0
        passed = 0
        for r in self.scans().values():
            total += r["roundtrip_total"]
            passed += r["roundtrip_passed"]
        ok = total > 0 and passed == total
        return _result(
            "11 every nullspace element passes its checker class",
            ok, [f"{passed}/{total} solution maps verified"],
        )

    def criterion_12_oracle(self):
        details = []
        ok = True
        small = Window(-2, 2)
        checked = 0
        for alg, cls, parity in (
            ("w22q", "biderivation", 0),
            ("w22q", "alpha_biderivation", 0),
            ("wittq", "biderivation", 0),
            ("wittq", "alpha_biderivation", 0),
            ("wittsuperq", "super_biderivation", 0),
            ("wittsuperq", "super_biderivation", 1),
            ("wittsuperq", "alpha_super_biderivation", 0),
            ("wittsuperq", "alpha_super_biderivation", 1),
        ):
            p = builtin(alg)
            for s in range(-2, 3):
                ansatz = build_ansatz(p, "bilinear", cls, s=s, parity=parity, window=small)
                sys = build_system(p, ansatz)
                dsym = nullspace(sys).dim
                dspec = nullspace_dim_specialized(sys, 2)
                checked += 1
                if dsym != dspec:
                    dspec3 = nullspace_dim_specialized(sys, 3)
                    if dsym != dspec3:
                        ok = False
                        details.append(
                            f"{alg} {cls} parity {parity} s={s}: symbolic {dsym}, "
                            f"q=2 gives {dspec}, q=3 gives {dspec3}"
                        )
                    else:
                        details.append(
                            f"{alg} {cls} parity {parity} s={s}: q=2 degenerate, "
                            f"q=3 agrees"
                        )
        details.insert(0, f"{checked} small-window systems compared")
        return _result("12 symbolic dims match dense rational elimination", ok, details)

    CRITERIA = (
        "criterion_01_axioms",
        "criterion_02_qnumbers",
        "criterion_03_w22q",
        "criterion_04_wittq",
        "criterion_05_wittsuperq",
        "criterion_06_alpha_vanishing",
        "criterion_07_example",
        "criterion_08_rows",
        "criterion_09_commuting",
        "criterion_10_corollaries",
        "criterion_11_soundness",
        "criterion_12_oracle",
    )

    def run_all(self):
        results = []
        for name in self.CRITERIA:
            res = getattr(self, name)()
            self.log(res.line())
            results.append(res)
        return results
