"""Command-line driver assembling the library's verifiers into reports.

Six subcommands: ``relations`` extracts the minimal RTT relation set of a
built-in or file-supplied R-matrix and compares its ideal against the
stored reference set; ``verify`` runs the full bracket/coproduct suite for
one algebra; ``reps`` prints module catalogs, degree spectra and induced
ladders; ``gauge`` certifies the diagonal normal form of the two unitary
specializations; ``basis`` counts normal-form words per degree; ``pair``
evaluates a single bracket.

Output is byte-deterministic for a fixed invocation.  ``--format machine``
emits one JSON document in which every verified fact is keyed by the same
stable tag the library reports use, so regression diffs point at a single
claim.  The exit status is 0 when every check passed, 1 when any failed,
and 2 for unusable invocations (unknown names, unreadable files).
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb

from .bialgebra import ALGEBRA_NAMES, MATRIX_LETTERS
from .bialgebra import algebra as presentation
from .duality import CheckLine, antipode_certificates, duality, full_report
from .induced import (antipode_axiom_report, dual_antipode_report, induce,
                      omega_report, sl2_generators)
from .linalg import inverse, mat_eq
from .reps import UnsupportedModuleError, WeightError, irrep_catalog
from .rtt import (GAUGE_MINUS, GAUGE_PLUS, RMATRICES, canonical_relations,
                  gauge_conjugate, ideal_equal_quadratic, load_rmatrix,
                  rmatrix, rtt_relations, specialize_rmatrix, yang_baxter)

DUALITY_NAMES = ("s03", "s14", "s14o")
COMMANDS = ("relations", "verify", "reps", "gauge", "basis", "pair")

# registry keys whose extracted ideal has a stored reference set
_REFERENCE_SET = {
    "S03": "s03",
    "S14": "s14",
    "S14q1": "s14q1",
    "S14qm1": "s14qm1",
    "ID": "commutative",
}

_COUNT_FORMULAS = {
    "s03": lambda n: 2 ** (n + 1),
    "s14": lambda n: 2 * n + 2,
    "s14o": lambda n: comb(n + 3, 3),
}


class CLIError(Exception):
    """Unusable invocation, reported before (or instead of) computing."""


class RunConfig:
    """One validated invocation: names resolved, flags bounded."""

    def __init__(self, ns):
        self.command = ns.command
        self.algebra = getattr(ns, "algebra", None)
        self.maxdeg = getattr(ns, "maxdeg", 8)
        self.L = getattr(ns, "L", 12)
        self.fmt = getattr(ns, "fmt", "text")
        self.rmatrix = getattr(ns, "rmatrix", None)
        self.q = getattr(ns, "q", None)
        self.source = getattr(ns, "source", None)
        self.degree = getattr(ns, "degree", None)
        self.induced = getattr(ns, "induced", None)
        self.eta = getattr(ns, "eta", False)
        self.weight_letter = getattr(ns, "weight_letter", None)
        self.weight = getattr(ns, "weight", None)
        self.exprs = getattr(ns, "exprs", ())
        self.validate()

    def validate(self):
        if self.command not in COMMANDS:
            raise CLIError(f"unknown command {self.command!r}")
        if self.maxdeg < 0:
            raise CLIError("maxdeg must be nonnegative")
        if self.L < 1:
            raise CLIError("L must be positive")

        if self.command == "relations":
            if self.rmatrix and self.algebra:
                raise CLIError("give a built-in name or --rmatrix, not both")
            if not self.rmatrix:
                if not self.algebra:
                    raise CLIError("relations needs an R-matrix name or "
                                   "--rmatrix FILE")
                bykey = {k.lower(): k for k in RMATRICES}
                key = bykey.get(self.algebra.lower())
                if key is None:
                    raise CLIError(
                        f"unknown R-matrix {self.algebra!r}; "
                        f"have {sorted(RMATRICES)}")
                self.algebra = key
        elif self.command in ("verify", "pair"):
            self._want_duality()
        elif self.command == "reps":
            self._want_duality()
            if self.induced is not None and self.source is not None:
                raise CLIError("choose --induced or --source, not both")
            if self.induced is None and self.source is None:
                raise CLIError("reps needs --source or --induced")
            if self.induced is not None and self.algebra != "s14o":
                raise CLIError("induced ladders exist for s14o only")
            if self.source == "weight" and (self.weight_letter is None
                                            or self.weight is None):
                raise CLIError("weight catalog needs --weight-letter and "
                               "--weight")
        elif self.command == "basis":
            if not self.algebra:
                raise CLIError("basis needs an algebra name")
            self.algebra = self.algebra.lower()
            if self.algebra not in ALGEBRA_NAMES:
                raise CLIError(f"unknown algebra {self.algebra!r}; "
                               f"have {sorted(ALGEBRA_NAMES)}")
        elif self.command == "gauge":
            if self.algebra:
                raise CLIError("gauge takes no algebra argument")
        if self.command == "pair" and len(self.exprs) != 2:
            raise CLIError("pair needs two expressions: functional, element")

    def _want_duality(self):
        if not self.algebra:
            raise CLIError(f"{self.command} needs an algebra name")
        self.algebra = self.algebra.lower()
        if self.algebra not in DUALITY_NAMES:
            raise CLIError(f"unknown algebra {self.algebra!r}; "
                           f"have {list(DUALITY_NAMES)}")


class Report:
    """Ordered report: prose lines, then tagged checks, then a verdict."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.lines = []
        self.checks = []
        self.warnings = []
        self.data = {}

    def say(self, text=""):
        self.lines.append(text)

    def warn(self, text):
        self.warnings.append(text)

    def extend(self, check_lines):
        self.checks.extend(check_lines)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def render(self):
        if self.cfg.fmt == "machine":
            doc = {
                "command": self.cfg.command,
                "algebra": self.cfg.algebra,
                "config": {"maxdeg": self.cfg.maxdeg, "L": self.cfg.L},
                "warnings": self.warnings,
                "data": self.data,
                "checks": [{
                    "tag": c.tag,
                    "ok": c.ok,
                    "maxdeg": c.maxdeg,
                    "detail": c.detail,
                    "witness": None if c.witness is None else str(c.witness),
                } for c in self.checks],
                "ok": self.ok,
            }
            return json.dumps(doc, sort_keys=True, indent=2) + "\n"
        out = [f"warning: {w}" for w in self.warnings]
        out.extend(self.lines)
        if self.checks:
            out.append("")
            for c in self.checks:
                mark = "ok  " if c.ok else "FAIL"
                line = f"{mark} {c.tag}  [maxdeg {c.maxdeg}]  {c.detail}"
                if not c.ok and c.witness is not None:
                    line += f"  witness: {c.witness}"
                out.append(line)
            bad = sum(1 for c in self.checks if not c.ok)
            total = len(self.checks)
            out.append(f"{total - bad}/{total} checks passed"
                       + (f", {bad} FAILED" if bad else ""))
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_relations(cfg, rep):
    if cfg.rmatrix:
        label = cfg.rmatrix
        try:
            R = load_rmatrix(cfg.rmatrix)
        except OSError as e:
            raise CLIError(f"cannot read {cfg.rmatrix}: {e}") from e
        except ValueError as e:
            raise CLIError(f"{cfg.rmatrix}: {e}") from e
        refkey = None
    else:
        label = cfg.algebra
        R = rmatrix(label)
        refkey = _REFERENCE_SET.get(label)
    if cfg.q is not None:
        R = specialize_rmatrix(R, cfg.q)
        if label == "S14":
            refkey = {1: "s14q1", -1: "s14qm1"}.get(cfg.q, "s14")
    if inverse(R) is None:
        raise CLIError("R-matrix is singular (exact determinant 0)")

    rep.say(f"R-matrix: {label}"
            + (f" at q = {cfg.q}" if cfg.q is not None else ""))
    rels = rtt_relations(R)
    rep.data["relations"] = [str(r) for r in rels]
    rep.data["count"] = len(rels)
    if not rels:
        rep.say("no relations")
    else:
        rep.say(f"relations ({len(rels)}):")
        for r in rels:
            rep.say(f"  {r}")
    rep.checks.append(CheckLine(
        "rtt.ybe.input", yang_baxter(R), 0,
        "input matrix satisfies the Yang-Baxter equation"))
    if refkey is not None:
        ok, info = ideal_equal_quadratic(
            rels, canonical_relations(refkey), MATRIX_LETTERS, maxdeg=4)
        rep.checks.append(CheckLine(
            f"rtt.ideal.{refkey}", ok, 4,
            "extracted ideal equals the stored reference set",
            None if ok else str(info)))


def cmd_verify(cfg, rep):
    name = cfg.algebra
    rep.say(f"duality suite: {name} at maxdeg {cfg.maxdeg}")
    if cfg.maxdeg == 0:
        rep.warn("maxdeg 0: only unit-word brackets are checked; "
                 "the pass is vacuous")
    rep.extend(full_report(name, cfg.maxdeg))
    if name in ("s03", "s14"):
        if cfg.maxdeg >= 2:
            depth = min(cfg.maxdeg, 6)
            certs = antipode_certificates(depth)
            for tag in sorted(certs):
                if not tag.startswith(name + "."):
                    continue
                solve = certs[tag]
                if tag.endswith(".control"):
                    ok = solve.feasible
                    detail = "control convolution equation stays solvable"
                else:
                    ok = not solve.feasible
                    detail = ("flip-axiom convolution equation is "
                              f"infeasible (rank {solve.rank_lhs} vs "
                              f"{solve.rank_aug} augmented)")
                rep.checks.append(CheckLine(tag, ok, depth, detail,
                                            None if ok else solve.witness))
        else:
            rep.warn("antipode feasibility analysis needs maxdeg >= 2; "
                     "skipped")
    else:
        rep.extend(omega_report())
        cap = min(cfg.maxdeg, 3)
        rep.extend([antipode_axiom_report(cap), dual_antipode_report(cap)])
        rep.extend([sl2_generators(min(cfg.maxdeg, 4))[2]])


def _fmt_pairs(d):
    return " ".join(f"{k}={v}" for k, v in sorted(d.items()))


def cmd_reps(cfg, rep):
    if cfg.induced is not None:
        _cmd_reps_induced(cfg, rep)
        return
    try:
        rows = irrep_catalog(cfg.algebra, cfg.source, degree=cfg.degree,
                             weight_letter=cfg.weight_letter,
                             weight=cfg.weight, L=cfg.L)
    except (UnsupportedModuleError, WeightError, ValueError) as e:
        raise CLIError(str(e)) from e
    rep.say(f"catalog: {cfg.algebra} source={cfg.source}"
            + (f" degree={cfg.degree}" if cfg.degree is not None else ""))
    total = 0
    for row in rows:
        total += row["members"]
        rep.say(f"  {row['construction']}: dim {row['dim']} "
                f"x{row['members']}, casimirs[{_fmt_pairs(row['casimirs'])}],"
                f" labels[{_fmt_pairs(row['labels'])}]")
    rep.say(f"{total} irreducible summands in {len(rows)} isomorphism "
            "classes")
    halves = sorted({row["labels"]["half"] for row in rows
                     if "half" in row["labels"]})
    for h in halves:
        taus = sorted(int(row["labels"]["tau"]) for row in rows
                      if row["labels"].get("half") == h)
        rep.say(f"half {h}: weight spectrum {taus}")
    rep.data["rows"] = [
        {"construction": r["construction"], "dim": r["dim"],
         "members": r["members"],
         "casimirs": dict(sorted(r["casimirs"].items())),
         "labels": dict(sorted(r["labels"].items()))} for r in rows]
    rep.data["summands"] = total


def _cmd_reps_induced(cfg, rep):
    nu, rho = cfg.induced
    try:
        mod = induce(nu, rho, cfg.L)
    except (WeightError, ValueError) as e:
        raise CLIError(str(e)) from e
    rep.say(f"induced ladder: diagonal weight {nu}, degree weight {rho}, "
            f"window 0..{cfg.L}")
    rep.say("basis: v (sign-free)" if cfg.eta else "basis: u")
    if cfg.eta:
        _, mats, up, down = mod.eta_transform()
    else:
        mats, up, down = mod.rep.matrices, mod.up, mod.down
    n = cfg.L + 1
    bdiag = [str(mats["B"][l][l]) for l in range(n)]
    xp = [str(up[l - 1][l]) for l in range(1, n)]
    xm = [str(down[l + 1][l]) for l in range(n - 1)]
    rep.say(f"A acts by {mod.rep.matrices['A'][0][0]}; "
            f"K acts by {mod.rep.matrices['K'][0][0]}")
    rep.say("B weights: " + " ".join(bdiag))
    rep.say("Xp steps l -> l-1 with entries: " + " ".join(xp))
    rep.say("Xm steps l -> l+1 with entries: " + " ".join(xm)
            + "  (step off the window dropped)")
    if nu >= 0:
        cert = mod.certificate()
        rep.say(f"invariant submodule: dimension {cert['dim']} "
                f"(u0..u{nu}), irreducible: weights distinct and both "
                "ladder steps connect every adjacent rung")
    else:
        rep.say("no invariant subspace within truncation")
    rep.data.update({
        "nu": nu, "rho": rho, "L": cfg.L,
        "basis": "v" if cfg.eta else "u",
        "A": str(mod.rep.matrices["A"][0][0]),
        "K": str(mod.rep.matrices["K"][0][0]),
        "B_weights": bdiag, "Xp_entries": xp, "Xm_entries": xm,
        "dropped": [list(d) for d in mod.dropped],
        "invariant_dimension": (nu + 1 if nu >= 0 else 0),
    })
    rep.extend([mod.ladder_report(), mod.sl2_report(),
                mod.invariant_report()])
    if nu >= 0:
        sub = mod.submodule()
        cert = mod.certificate()
        rep.checks.append(CheckLine(
            "s14o.ind.bottom", cert["ok"] and sub.relations_hold(), cfg.L,
            f"nu={nu} rho={rho}: invariant bottom is irreducible "
            "and satisfies all relations"))
    rep.extend([mod.eta_report(), mod.vector_field_report()])
    rep.checks.append(CheckLine(
        "s14o.ind.window", mod.rep.relations_hold(), cfg.L,
        f"nu={nu} rho={rho}: truncated matrices satisfy the relations "
        "away from the top two columns"))


def cmd_gauge(cfg, rep):
    rep.say("gauge normal form and Yang-Baxter sweep of the registry")
    R0 = rmatrix("R0")
    rep.checks.append(CheckLine(
        "rtt.gauge.plus",
        mat_eq(gauge_conjugate(rmatrix("S14q1"), GAUGE_PLUS), R0), 0,
        "q=1 specialization conjugates to the diagonal normal form"))
    rep.checks.append(CheckLine(
        "rtt.gauge.minus",
        mat_eq(gauge_conjugate(rmatrix("S14qm1"), GAUGE_MINUS), R0), 0,
        "q=-1 specialization conjugates to the diagonal normal form"))
    rep.checks.append(CheckLine(
        "rtt.gauge.distinct",
        not mat_eq(gauge_conjugate(rmatrix("S14qm1"), GAUGE_PLUS), R0), 0,
        "the two gauge matrices are not interchangeable"))
    for key in sorted(RMATRICES):
        rep.checks.append(CheckLine(
            f"rtt.ybe.{key}", yang_baxter(rmatrix(key)), 0,
            "registry matrix satisfies the Yang-Baxter equation"))


def cmd_basis(cfg, rep):
    P = presentation(cfg.algebra)
    rep.say(f"normal-form words of {cfg.algebra} up to degree {cfg.maxdeg}")
    counts = []
    for n in range(cfg.maxdeg + 1):
        words = P.basis(n)
        counts.append(len(words))
        shown = " ".join("*".join(w) if w else "1" for w in words)
        rep.say(f"degree {n}: {len(words)} word(s): {shown}")
    rep.data["counts"] = counts
    formula = _COUNT_FORMULAS.get(cfg.algebra)
    if formula is not None:
        ok = counts[0] == 1 and all(
            counts[n] == formula(n) for n in range(1, cfg.maxdeg + 1))
        rep.checks.append(CheckLine(
            f"basis.count.{cfg.algebra}", ok, cfg.maxdeg,
            "per-degree dimensions match the closed-form count"))


def cmd_pair(cfg, rep):
    d = duality(cfg.algebra)
    u, f = cfg.exprs
    try:
        val = d.pair(u, f)
    except (KeyError, ValueError) as e:
        raise CLIError(f"cannot evaluate bracket: {e}") from e
    rep.say(f"<{u}, {f}> = {val}")
    rep.data["value"] = str(val)


_DISPATCH = {
    "relations": cmd_relations,
    "verify": cmd_verify,
    "reps": cmd_reps,
    "gauge": cmd_gauge,
    "basis": cmd_basis,
    "pair": cmd_pair,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_format(p):
    p.add_argument("--format", choices=("text", "machine"), default="text",
                   dest="fmt", help="output format (default text)")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="matbialg",
        description="exact reports over the R-matrix bialgebras")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relations",
                       help="extract the minimal RTT relation set")
    p.add_argument("algebra", nargs="?",
                   help="built-in R-matrix name (e.g. S03, S14, S14q1)")
    p.add_argument("--rmatrix", metavar="PATH",
                   help="file with 16 scalar entries, row-major")
    p.add_argument("--q", type=int, help="specialize the parameter exactly")
    _add_format(p)

    p = sub.add_parser("verify", help="run the full duality suite")
    p.add_argument("algebra", help="one of s03, s14, s14o")
    p.add_argument("--maxdeg", type=int, default=8,
                   help="check words up to this degree (default 8)")
    _add_format(p)

    p = sub.add_parser("reps", help="module catalogs and induced ladders")
    p.add_argument("algebra", help="one of s03, s14, s14o")
    p.add_argument("--source", choices=("lrr", "rrr", "weight", "pir"),
                   help="catalog construction")
    p.add_argument("--degree", type=int,
                   help="restrict to one polynomial degree (source pir)")
    p.add_argument("--weight-letter", dest="weight_letter",
                   help="generator letter for the weight catalog")
    p.add_argument("--weight", help="weight value for the weight catalog")
    p.add_argument("--induced", nargs=2, type=int, metavar=("NU", "RHO"),
                   help="build the induced ladder for this weight pair")
    p.add_argument("--L", type=int, default=12,
                   help="truncation window (default 12)")
    p.add_argument("--eta", action="store_true",
                   help="display the sign-free ladder basis")
    _add_format(p)

    p = sub.add_parser("gauge",
                       help="diagonal normal form of the q^2=1 family")
    _add_format(p)

    p = sub.add_parser("basis", help="normal-form words per degree")
    p.add_argument("algebra", help=f"one of {sorted(ALGEBRA_NAMES)}")
    p.add_argument("--maxdeg", type=int, default=8,
                   help="largest degree listed (default 8)")
    _add_format(p)

    p = sub.add_parser("pair", help="evaluate one bracket")
    p.add_argument("algebra", help="one of s03, s14, s14o")
    p.add_argument("exprs", nargs=2, metavar=("FUNCTIONAL", "ELEMENT"),
                   help="dual expression and algebra expression")
    _add_format(p)
    return ap


def main(argv=None):
    ns = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(ns)
    except CLIError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    rep = Report(cfg)
    try:
        _DISPATCH[cfg.command](cfg, rep)
    except CLIError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.render())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
