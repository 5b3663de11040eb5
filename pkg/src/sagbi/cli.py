"""Command line front end: ``sagbi|sg|syz|reduce|member <file>``.

Every command builds one ordered report; ``--json`` prints it as JSON and
the default text form renders the same data as indented ``key: value``
lines, so the two never disagree.  Exit codes: 0 success, 2 parse or
validation error, 3 iteration cap reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .poly import Monomial, Polynomial, format_monomial, format_poly
from .sg import NotInSubalgebraError, ideal_member, sg_construct, si_reduce
from .subalgebra import (
    DEFAULT_MAX_PASSES,
    AlgebraElement,
    SubalgebraPresentation,
    s_reduce,
    sagbi_construct,
    subalgebra_member,
)
from .syzygy import subset_syzygy_generators
from .textio import ProblemError, ProblemFile, parse_polynomial, parse_problem

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_CAP = 3


class _Stop(Exception):
    def __init__(self, code: int):
        self.code = code


def render_text(data: dict, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    for key, value in data.items():
        if isinstance(value, dict):
            out.append(f"{pad}{key}:")
            out.extend(render_text(value, indent + 1))
        elif isinstance(value, list):
            out.append(f"{pad}{key}:" + ("" if value else " (none)"))
            for item in value:
                if isinstance(item, dict):
                    first, *rest = render_text(item, indent + 2)
                    out.append(f"{pad}  - {first.strip()}")
                    out.extend(rest)
                else:
                    out.append(f"{pad}  {item}")
        else:
            out.append(f"{pad}{key}: {value}")
    return out


def _fmt(p: Polynomial) -> str:
    return format_poly(p)


def _mono(m: Monomial, names: Sequence[str]) -> str:
    return format_monomial(m, names) or "1"


class Session:
    def __init__(self, problem: ProblemFile, args: argparse.Namespace):
        self.problem = problem
        self.args = args
        self.max_passes = args.max_passes or problem.max_passes or DEFAULT_MAX_PASSES
        self.report: dict = {
            "command": args.command,
            "ring": problem.domain.value,
            "vars": ", ".join(problem.ring.names),
            "order": problem.order,
        }

    # ----- helpers -----

    def elem(self, a: AlgebraElement, names) -> str:
        return a.format(names)

    def vector(self, coords: Sequence[AlgebraElement], names) -> str:
        return "(" + ", ".join(c.format(names) for c in coords) + ")"

    def ambient(self) -> SubalgebraPresentation:
        """Complete [F] to a SAGBI basis and record it as the legend."""
        F = self.problem.section("F")
        if not F:
            raise ProblemError("this command needs an [F] section")
        res = sagbi_construct(F, self.max_passes, self.problem.ring)
        P = res.basis
        legend = {n: _fmt(f) for n, f in zip(P.names(), P.F)}
        self.report["subalgebra"] = {"status": res.status, "passes": res.passes,
                                     "legend": legend}
        if not res.completed:
            raise _Stop(EXIT_CAP)
        return P

    def ideal_section(self) -> Optional[tuple[str, list[Polynomial]]]:
        for name in ("G", "H"):
            if name in self.problem.sections:
                return name, self.problem.sections[name]
        return None

    def poly_flag(self) -> Polynomial:
        if self.args.poly is None:
            raise ProblemError(f"'{self.args.command}' needs --poly EXPR")
        try:
            return parse_polynomial(self.args.poly, self.problem.ring)
        except ProblemError as e:
            raise ProblemError(f"in --poly, column {e.column}: {e.message}") from None

    def lift(self, polys: Sequence[Polynomial], P: SubalgebraPresentation, label: str
             ) -> list[AlgebraElement]:
        out = []
        for k, p in enumerate(polys, start=1):
            try:
                out.append(AlgebraElement.from_polynomial(p, P))
            except NotInSubalgebraError as e:
                raise ProblemError(f"{label}{k} = {_fmt(p)} is not in the subalgebra "
                                   f"(final s-reductum {_fmt(e.reductum)})") from None
        return out

    # ----- commands -----

    def cmd_sagbi(self) -> int:
        F = self.problem.section("F")
        if not F:
            raise ProblemError("'sagbi' needs an [F] section")
        res = sagbi_construct(F, self.max_passes, self.problem.ring)
        P = res.basis
        names = P.names()
        self.report["status"] = res.status
        self.report["passes"] = res.passes
        if P.constants:
            self.report["constants dropped"] = [_fmt(c) for c in P.constants]
        self.report["basis"] = {n: _fmt(f) for n, f in zip(names, P.F)}
        if self.args.trail:
            trail = []
            for rec in res.trail:
                trail.append({
                    "pass": rec.number,
                    "relations": [format_poly(k, names) for k in rec.kernel],
                    "evaluations": [_fmt(e) for e in rec.evaluations],
                    "adjoined": [_fmt(r) for r in rec.reducta],
                })
            self.report["trail"] = trail
        if not res.completed:
            return EXIT_CAP
        self.report["verified"] = "yes"
        if self.args.certificates:
            certs = {}
            for k, f in enumerate(F, start=1):
                if f.is_constant:
                    certs[f"input{k}"] = f"{_fmt(f)} (constant)"
                    continue
                cert = s_reduce(f, P)
                ok = cert.final.is_zero and cert.replays(P)
                certs[f"input{k}"] = (f"{_fmt(f)} = {format_poly(cert.tag_polynomial(P.tags), names)}"
                                      f" [{'replays' if ok else 'FAILED'}]")
            self.report["certificates"] = certs
        return EXIT_OK

    def cmd_sg(self) -> int:
        P = self.ambient()
        names = P.names()
        sec = self.ideal_section()
        if sec is None:
            raise ProblemError("'sg' needs a [G] or [H] section")
        label, G0 = sec
        inputs = self.lift(G0, P, label.lower())
        res = sg_construct(G0, P, self.max_passes)
        self.report["status"] = res.status
        self.report["passes"] = res.passes
        self.report["basis"] = {f"g{i}": _fmt(g.value) for i, g in enumerate(res.basis.G, 1)}
        self.report["cofactors over input"] = {
            f"g{i}": self.vector(row, names) for i, row in enumerate(res.U, 1)}
        if self.args.trail:
            trail = []
            for rec in res.trail:
                trail.append({
                    "pass": rec.number,
                    "lt-syzygies": [f"{self.vector(q.coords, names)} at "
                                    f"{_mono(q.degree, self.problem.ring.names)}"
                                    for q in rec.syzygies],
                    "evaluations": [_fmt(e) for e in rec.evaluations],
                    "adjoined": [_fmt(r) for r in rec.reducta],
                })
            self.report["trail"] = trail
        if not res.completed:
            return EXIT_CAP
        self.report["verified"] = "yes"
        if self.args.certificates:
            self.report["certificates"] = {
                f"{label.lower()}{k}": f"{_fmt(a.value)} = {self.elem(a, names)}"
                for k, a in enumerate(inputs, 1)}
            self.report["replay"] = "ok" if res.U_replays() else "FAILED"
        return EXIT_OK

    def cmd_syz(self) -> int:
        P = self.ambient()
        names = P.names()
        sec = self.ideal_section()
        if sec is None:
            raise ProblemError("'syz' needs an [H] or [G] section")
        label, H0 = sec
        self.lift(H0, P, label.lower())
        res = subset_syzygy_generators(H0, P, self.max_passes)
        self.report["status"] = res.status
        G = res.sg.basis.G
        self.report["sg basis"] = {f"g{i}": _fmt(g.value) for i, g in enumerate(G, 1)}
        if self.args.trail:
            self.report["passes"] = res.sg.passes
            self.report["basis syzygies"] = [self.vector(v.coords, names)
                                             for v in res.basis_syzygies]
        if not res.completed:
            return EXIT_CAP
        mats = res.matrices
        self.report["W"] = [self.vector(r, names) for r in mats.W]
        self.report["U"] = [self.vector(r, names) for r in mats.U]
        self.report["generators"] = [self.vector(v.coords, names) for v in res.vectors]
        if self.args.certificates:
            self.report["coordinate replay"] = (
                "ok" if all(v.replays(P) for v in res.vectors) else "FAILED")
        ok = all(v.annihilates(H0) for v in res.vectors)
        ok = ok and mats.replays(H0, [g.value for g in G])
        n = len(res.vectors)
        self.report["replay"] = (f"all {n} generators annihilate {label}; "
                                 f"{label} = W*G and G = U*{label} hold") if ok else "FAILED"
        return EXIT_OK if ok else EXIT_INVALID

    def cmd_reduce(self) -> int:
        p = self.poly_flag()
        self.report["poly"] = _fmt(p)
        P = self.ambient()
        names = P.names()
        cert = s_reduce(p, P)
        self.report["s-reductum"] = _fmt(cert.final)
        if self.args.certificates:
            self.report["s-steps"] = [
                f"{_mono(st.monomial, self.problem.ring.names)}: "
                + format_poly(P.tags.from_dict({e: r for r, e in st.atoms}), names)
                for st in cert.steps]
        sec = self.ideal_section()
        if sec is not None:
            res = sg_construct(sec[1], P, self.max_passes)
            if not res.completed:
                self.report["ideal status"] = res.status
                return EXIT_CAP
            red = si_reduce(p, res.basis)
            self.report["si-reductum"] = _fmt(red.final)
            if self.args.certificates:
                self.report["si-parts"] = [f"g{i + 1}: {self.elem(a, names)}"
                                           for a, i in red.parts]
        return EXIT_OK

    def cmd_member(self) -> int:
        p = self.poly_flag()
        self.report["poly"] = _fmt(p)
        if p.is_zero:
            self.report["result"] = "member (trivially)"
            return EXIT_OK
        P = self.ambient()
        names = P.names()
        cert = subalgebra_member(p, P)
        sec = self.ideal_section()
        if cert is None:
            self.report["result"] = (f"not a member (not in the subalgebra; final s-reductum "
                                     f"{_fmt(s_reduce(p, P).final)})")
            return EXIT_OK
        if sec is None:
            self.report["result"] = "member"
            self.report["representation"] = format_poly(cert.tag_polynomial(P.tags), names)
            return EXIT_OK
        res = sg_construct(sec[1], P, self.max_passes)
        if not res.completed:
            self.report["ideal status"] = res.status
            return EXIT_CAP
        self.report["sg basis"] = {f"g{i}": _fmt(g.value) for i, g in enumerate(res.basis.G, 1)}
        rep = ideal_member(p, res.basis)
        if rep is None:
            self.report["result"] = (f"not a member (final si-reductum "
                                     f"{_fmt(si_reduce(p, res.basis).final)})")
            return EXIT_OK
        self.report["result"] = "member"
        self.report["representation"] = " + ".join(
            f"({self.elem(a, names)})*g{i + 1}" for a, i in rep.parts)
        if self.args.certificates:
            ok = rep.replays(res.basis.G) and rep.satisfies_height_law(res.basis.G)
            self.report["replay"] = "ok" if ok else "FAILED"
        return EXIT_OK


COMMANDS = ("sagbi", "sg", "syz", "reduce", "member")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sagbi", description="SAGBI and SG-basis computations")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("file", type=Path)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--trail", action="store_true", help="show every completion pass")
    ap.add_argument("--certificates", action="store_true", help="show and replay certificates")
    ap.add_argument("--max-passes", type=int, default=None, metavar="N")
    ap.add_argument("--poly", default=None, metavar="EXPR", help="query polynomial")
    return ap


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID if e.code else EXIT_OK
    if args.max_passes is not None and args.max_passes < 1:
        err.write("error: --max-passes must be at least 1\n")
        return EXIT_INVALID
    try:
        text = args.file.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        err.write(f"error: cannot read {args.file}: {e}\n")
        return EXIT_INVALID
    session = None
    try:
        problem = parse_problem(text)
        session = Session(problem, args)
        code = getattr(session, f"cmd_{args.command}")()
    except ProblemError as e:
        err.write(f"error: {e}\n")
        return EXIT_INVALID
    except _Stop as s:
        code = s.code
    if code == EXIT_CAP:
        session.report.setdefault("status", "IterationCapReached")
    if args.json:
        out.write(json.dumps(session.report, indent=2) + "\n")
    else:
        out.write("\n".join(render_text(session.report)) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
