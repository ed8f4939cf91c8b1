"""Command-line front end: problem-file parsing, the gb / invariant /
minprimes / decompose / verify commands, and the benchmark suite that
reproduces the component and orbit counts of the reference table.

Exit codes: 0 success, 1 "not invariant" from the invariant command,
2 parse or usage errors, 3 symmetric decomposition of a non-invariant
ideal, 4 verification or count-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .multipoly import GREVLEX, LEX, ParseError, format_poly, parse_poly
from .ideal_ops import Ideal, intersect_many
from .minprimes import minimal_primes
from .perm import (
    PermGroup, closure, format_cycles, parse_cycles, symmetric_group,
    act_on_ideal, is_invariant, orbit_decompose,
)
from .sy_decomp import (
    DecompositionResult, PrimaryComponent, Provenance, sy, symmetric_sy,
    verify,
)

EXIT_OK = 0
EXIT_NOT_INVARIANT = 1
EXIT_PARSE = 2
EXIT_NON_INVARIANT_SYMSY = 3
EXIT_VERIFY = 4


class ProblemFileError(ValueError):
    def __init__(self, msg, line=None):
        where = " (line %d)" % line if line else ""
        super().__init__(msg + where)
        self.line = line


class ProblemFile:
    """ring / ideal / group sections of a problem file."""

    def __init__(self, names, ideal, group):
        self.names = names
        self.ideal = ideal
        self.group = group  # PermGroup or None


def _split_entries(text):
    return [chunk.strip() for chunk in text.split(",") if chunk.strip()]


def parse_problem(text):
    sections = {}
    lines = text.splitlines()
    current = None
    starts = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.split(":", 1)
        if len(head) == 2 and head[0].strip() in ("ring", "ideal", "group"):
            current = head[0].strip()
            if current in sections:
                raise ProblemFileError("duplicate section %r" % current, lineno)
            sections[current] = head[1]
            starts[current] = lineno
        elif current is not None:
            sections[current] += " " + line
        else:
            raise ProblemFileError("content before any section header", lineno)
    if "ring" not in sections:
        raise ProblemFileError("missing ring: section")
    if "ideal" not in sections:
        raise ProblemFileError("missing ideal: section")
    names = _split_entries(sections["ring"])
    if not names:
        raise ProblemFileError("empty ring", starts.get("ring"))
    if len(set(names)) != len(names):
        raise ProblemFileError("repeated variable name", starts.get("ring"))
    gens = []
    for entry in _split_entries(sections["ideal"]):
        try:
            gens.append(parse_poly(entry, names))
        except ParseError as exc:
            raise ProblemFileError("bad generator %r: %s" % (entry, exc),
                                   starts.get("ideal"))
    group = None
    if "group" in sections:
        perms = []
        for entry in _split_entries(sections["group"]):
            try:
                perms.append(parse_cycles(entry, len(names)))
            except ValueError as exc:
                raise ProblemFileError("bad permutation %r: %s" % (entry, exc),
                                       starts.get("group"))
        group = closure(len(names), perms)
    return ProblemFile(names, Ideal(len(names), gens), group)


def load_problem(path):
    if path == "-":
        return parse_problem(sys.stdin.read())
    with open(path) as fh:
        return parse_problem(fh.read())


# ---------------------------------------------------------------------------
# rendering

def _poly_strs(ideal, names):
    return [format_poly(p, names) for p in ideal.reduced_gens()]


def result_to_json(result, names):
    comps = list(result.components)
    index_of = {c.q.canonical_key(): i for i, c in enumerate(comps)}
    comp_objs = []
    for c in comps:
        prov = {"kind": c.provenance.kind}
        if c.provenance.kind == "transported":
            prov["sigma"] = format_cycles(c.provenance.sigma)
            src = c.provenance.source
            prov["source"] = index_of.get(src.q.canonical_key()) \
                if src is not None else None
        comp_objs.append({
            "generators": _poly_strs(c.q, names),
            "prime": _poly_strs(c.prime, names),
            "provenance": prov,
        })
    orbits = None
    if result.orbits is not None:
        orbits = []
        prime_to_comp = {c.prime.canonical_key(): i for i, c in enumerate(comps)}
        for cls in result.orbits.classes:
            orbits.append({
                "members": [prime_to_comp[m.canonical_key()] for m in cls.members],
                "transporters": [format_cycles(t) for t in cls.transporters],
            })
    stats = dict(result.stats)
    report = verify(result)
    verify_obj = {name: status for name, status, _ in report}
    verify_obj["ok"] = report.ok
    group_obj = None
    if result.group is not None:
        group_obj = [format_cycles(g) for g in result.group.generators]
    return {
        "input": {
            "ring": list(names),
            "generators": [format_poly(g, names) for g in result.input.gens],
            "group": group_obj,
        },
        "method": result.method,
        "components": comp_objs,
        "orbits": orbits,
        "stats": stats,
        "verify": verify_obj,
    }, report


def render_result(result, names, out):
    report = verify(result)
    print("method: %s" % result.method, file=out)
    print("#components: %d" % result.stats["components"], file=out)
    if result.stats.get("orbit_count") is not None:
        print("#orbits: %d" % result.stats["orbit_count"], file=out)
    print("computed: %d, transported: %d"
          % (result.stats["computed"], result.stats["transported"]), file=out)
    for i, c in enumerate(result.components, 1):
        print("component %d:" % i, file=out)
        print("  primary: %s" % ", ".join(_poly_strs(c.q, names)), file=out)
        print("  prime:   %s" % ", ".join(_poly_strs(c.prime, names)), file=out)
        if c.provenance.kind == "transported":
            print("  provenance: transported by %s"
                  % format_cycles(c.provenance.sigma), file=out)
        else:
            print("  provenance: computed", file=out)
    if result.orbits is not None:
        print("orbit classes: %d" % len(result.orbits.classes), file=out)
        for k, cls in enumerate(result.orbits.classes, 1):
            print("  class %d: size %d, transporters: %s"
                  % (k, len(cls.members),
                     ", ".join(format_cycles(t) for t in cls.transporters)),
                  file=out)
    print("wall time: %.2f s" % result.stats["wall_time"], file=out)
    for name, status, detail in report:
        print("verify %s: %s (%s)" % (name, status, detail), file=out)
    return report


# ---------------------------------------------------------------------------
# commands

def cmd_gb(args):
    problem = load_problem(args.file)
    order = LEX if args.order == "lex" else GREVLEX
    basis = problem.ideal.groebner(order)
    for p in basis:
        print(format_poly(p, problem.names))
    return EXIT_OK


def cmd_invariant(args):
    problem = load_problem(args.file)
    if problem.group is None:
        print("error: no group section in the problem file", file=sys.stderr)
        return EXIT_PARSE
    if is_invariant(problem.ideal, problem.group.generators):
        print("invariant")
        return EXIT_OK
    print("not invariant")
    return EXIT_NOT_INVARIANT


def cmd_minprimes(args):
    problem = load_problem(args.file)
    primes = minimal_primes(problem.ideal)
    for P in primes:
        cert = P.prime_cert or "unknown"
        print("%s  [%s]" % (", ".join(_poly_strs(P, problem.names)), cert))
    if args.json:
        payload = [{"generators": _poly_strs(P, problem.names),
                    "certificate": P.prime_cert} for P in primes]
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    return EXIT_OK


def cmd_decompose(args):
    problem = load_problem(args.file)
    if args.method == "symsy":
        if problem.group is None:
            print("error: symsy needs a group section", file=sys.stderr)
            return EXIT_PARSE
        if not is_invariant(problem.ideal, problem.group.generators):
            print("error: ideal is not invariant under the group",
                  file=sys.stderr)
            return EXIT_NON_INVARIANT_SYMSY
        result = symmetric_sy(problem.ideal, problem.group)
    else:
        result = sy(problem.ideal)
    report = render_result(result, problem.names, sys.stdout)
    if args.json:
        payload, _ = result_to_json(result, problem.names)
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_verify(args):
    with open(args.file) as fh:
        payload = json.load(fh)
    names = payload["input"]["ring"]
    n = len(names)
    I = Ideal(n, [parse_poly(t, names) for t in payload["input"]["generators"]])
    group = None
    if payload["input"].get("group"):
        group = closure(n, [parse_cycles(t, n)
                            for t in payload["input"]["group"]])
    comps = []
    for obj in payload["components"]:
        q = Ideal(n, [parse_poly(t, names) for t in obj["generators"]])
        prime = Ideal(n, [parse_poly(t, names) for t in obj["prime"]])
        comps.append(PrimaryComponent(q, prime, Provenance("computed")))
    result = DecompositionResult(I, group, comps, None, {}, payload["method"])
    report = verify(result)
    for name, status, detail in report:
        print("verify %s: %s (%s)" % (name, status, detail))
    return EXIT_OK if report.ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# benchmark suite

def _orbit_generators(seed_text, names, group):
    f = parse_poly(seed_text, names)
    seen = {}
    for sigma in group:
        g = f.act(sigma.images)
        seen.setdefault(g.terms, g)
    return sorted(seen.values(), key=lambda p: p.sort_key())


def _orbit_intersection(seed_texts, names, group):
    base = Ideal(len(names), [parse_poly(t, names) for t in seed_texts])
    images = {}
    for sigma in group:
        J = act_on_ideal(sigma, base)
        images.setdefault(J.canonical_key(), J)
    return intersect_many(images.values())


def _cyclic_group(n):
    return closure(n, [parse_cycles("(" + " ".join(str(i) for i in
                                                   range(1, n + 1)) + ")", n)])


def _cyclic_ideal(names):
    n = len(names)
    texts = []
    for k in range(1, n):
        terms = []
        for i in range(n):
            factors = [names[(i + j) % n] for j in range(k)]
            terms.append("*".join(factors))
        texts.append(" + ".join(terms))
    texts.append("*".join(names) + " - 1")
    return texts


def table1_rows():
    """The benchmark ideals, their groups, and expected
    (#components, #orbits)."""
    rows = []
    n2 = ["x1", "x2"]
    rows.append(("I1", n2, symmetric_group(2),
                 lambda: Ideal.from_strings(
                     n2, ["(x1+x2)^3 - 1", "x1*x2*(x1+x2)"]),
                 (4, 2)))
    n3 = ["x1", "x2", "x3"]
    rows.append(("I2", n3, symmetric_group(3),
                 lambda: Ideal(3, _orbit_generators(
                     "x1^2*x2 + x1*x3", n3, symmetric_group(3))),
                 (7, 3)))
    rows.append(("I3", n3, _cyclic_group(3),
                 lambda: Ideal(3, _orbit_generators(
                     "x1^4*x2 + x1*x3", n3, _cyclic_group(3))),
                 (15, 7)))
    c4 = ["c1", "c2", "c3", "c4"]
    rows.append(("I4", c4, _cyclic_group(4),
                 lambda: Ideal.from_strings(c4, _cyclic_ideal(c4)),
                 (8, 3)))
    rows.append(("I5", c4, _cyclic_group(4),
                 lambda: Ideal.from_strings(
                     c4, ["(%s)^2" % t for t in _cyclic_ideal(c4)]),
                 (8, 3)))
    n4 = ["x1", "x2", "x3", "x4"]
    rows.append(("I6", n4, symmetric_group(4),
                 lambda: _orbit_intersection(
                     ["x1^3 - 1", "x2^2"], n4, symmetric_group(4)),
                 (24, 2)))
    rows.append(("I7", n4, symmetric_group(4),
                 lambda: _orbit_intersection(
                     ["x1*x2", "x3^2 - x4"], n4, symmetric_group(4)),
                 (24, 1)))
    n5 = ["x1", "x2", "x3", "x4", "x5"]
    rows.append(("I8", n5, symmetric_group(5),
                 lambda: _orbit_intersection(
                     ["x1*x2*x3", "x4^2 + x5^2"], n5, symmetric_group(5)),
                 (30, 1)))
    rows.append(("I9", n5, symmetric_group(5),
                 lambda: _orbit_intersection(
                     ["x1^2 - 1", "x2^3", "x3^4"], n5, symmetric_group(5)),
                 (60, 2)))
    n6 = ["x1", "x2", "x3", "x4", "x5", "x6"]
    rows.append(("I10", n6, symmetric_group(6),
                 lambda: _orbit_intersection(
                     ["x1^2 - 1", "x2^3", "x3^4"], n6, symmetric_group(6)),
                 (120, 2)))
    return rows


def _bench_child(conn, ideal, group, method):
    try:
        started = time.perf_counter()
        if method == "symsy":
            result = symmetric_sy(ideal, group)
        else:
            result = sy(ideal)
        elapsed = time.perf_counter() - started
        orbit_count = result.stats.get("orbit_count")
        if orbit_count is None:
            orbit_count = len(orbit_decompose(
                [c.prime for c in result.components], group).classes)
        conn.send({
            "status": "ok",
            "components": result.stats["components"],
            "orbits": orbit_count,
            "time": elapsed,
            "verified": verify(result).ok,
        })
    except Exception as exc:  # surfaced in the report, not swallowed
        conn.send({"status": "error", "error": repr(exc)})
    finally:
        conn.close()


def _run_with_timeout(ideal, group, method, timeout):
    import multiprocessing as mp
    ctx = mp.get_context("fork")
    parent, child = ctx.Pipe()
    proc = ctx.Process(target=_bench_child, args=(child, ideal, group, method))
    proc.start()
    child.close()
    payload = None
    if parent.poll(timeout if timeout > 0 else None):
        payload = parent.recv()
    proc.join(1)
    if proc.is_alive():
        proc.terminate()
        proc.join()
    if payload is None:
        return {"status": "timeout"}
    return payload


def cmd_bench(args):
    rows = table1_rows()
    order = [r[0] for r in rows]
    upto = args.upto
    if upto not in order:
        print("error: unknown row %r (use I1..I10)" % upto, file=sys.stderr)
        return EXIT_PARSE
    rows = rows[: order.index(upto) + 1]
    report = []
    all_counts_ok = True
    header = "%-4s %-6s %8s %8s %10s %10s  %s" % (
        "row", "expect", "#Q", "#Orbit", "sy[s]", "symsy[s]", "status")
    print(header)
    for name, names, group, build, expected in rows:
        built = build()
        cells = {}
        for method in ("sy", "symsy"):
            cells[method] = _run_with_timeout(built, group, method,
                                              args.timeout)
        counts = set()
        status_bits = []
        for method in ("sy", "symsy"):
            cell = cells[method]
            if cell["status"] == "timeout":
                status_bits.append("%s: timeout" % method)
            elif cell["status"] == "error":
                status_bits.append("%s: error %s" % (method, cell["error"]))
                all_counts_ok = False
            else:
                counts.add((cell["components"], cell["orbits"]))
                if (cell["components"], cell["orbits"]) != expected:
                    status_bits.append("%s: count mismatch" % method)
                    all_counts_ok = False
                if not cell["verified"]:
                    status_bits.append("%s: verify failed" % method)
                    all_counts_ok = False
        got = counts.pop() if len(counts) == 1 else ("-", "-")
        status = "ok" if not status_bits else "; ".join(status_bits)

        def cell_time(cell):
            return "%.2f" % cell["time"] if cell["status"] == "ok" else cell["status"]

        print("%-4s %-6s %8s %8s %10s %10s  %s" % (
            name, "%d/%d" % expected, got[0], got[1],
            cell_time(cells["sy"]), cell_time(cells["symsy"]), status))
        report.append({
            "row": name, "expected": list(expected),
            "sy": cells["sy"], "symsy": cells["symsy"],
        })
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)
    return EXIT_OK if all_counts_ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# entry point

def build_parser():
    parser = argparse.ArgumentParser(
        prog="symid",
        description="Primary decomposition of permutation-invariant ideals "
                    "over Q.")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for orbit scans (output is "
                             "identical for any value)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gb", help="print a reduced Groebner basis")
    p.add_argument("--order", choices=["lex", "grevlex"], default="grevlex")
    p.add_argument("file")
    p.set_defaults(func=cmd_gb)

    p = sub.add_parser("invariant", help="decide group invariance")
    p.add_argument("file")
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("minprimes", help="minimal associated primes")
    p.add_argument("--json", help="write a JSON report")
    p.add_argument("file")
    p.set_defaults(func=cmd_minprimes)

    p = sub.add_parser("decompose", help="minimal primary decomposition")
    p.add_argument("--method", choices=["sy", "symsy"], default="sy")
    p.add_argument("--json", help="write a JSON mirror of the result")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="re-verify a JSON decomposition")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run the benchmark table")
    p.add_argument("--suite", choices=["table1"], default="table1")
    p.add_argument("--upto", default="I6")
    p.add_argument("--timeout", type=float, default=600.0,
                   help="per-method timeout in seconds (0 disables)")
    p.add_argument("--json", help="write a JSON report")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ProblemFileError, ParseError, FileNotFoundError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
