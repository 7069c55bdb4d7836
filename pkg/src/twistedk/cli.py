"""Command-line front end.

Every subcommand prints a report: plain text by default, or a JSON document
(``--json``) carrying ``"schema": 1``, the echoed inputs, the results and
provenance.  Exit status is 0 on success, 2 for invalid input (one-line
diagnostic on stderr) and 1 for internal assertion failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, cache
from .ahss import twisted_k
from .cohomology import (
    INFINITE,
    bockstein,
    class_order,
    cohomology,
    element,
    integral_lift,
)
from .complex import ComplexFormatError, SimplicialComplex, builtin, parse_complex, serialize_complex
from .groups import INTEGERS, CoefficientRing
from .linalg import IntegerMatrix, smith_normal_form
from .products import cup, sq, sq3_integral
from .twist import (
    Flavor,
    NotTorsion,
    Twist,
    delta_from_gamma,
    is_trivial,
    realize_torsion,
    twist_add,
    twist_conjugate,
    twist_order,
)

SCHEMA = 1


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument errors become one-line diagnostics instead of a usage dump."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_coords(text: str) -> list:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise UsageError(f"coordinates must be comma-separated integers, got {text!r}") from None


def _class(K: SimplicialComplex, degree: int, ring: CoefficientRing, text: str):
    G = cohomology(K, degree, ring)
    coords = parse_coords(text)
    if G.ngens == 0 and all(c == 0 for c in coords):
        coords = []
    if len(coords) != G.ngens:
        raise UsageError(
            f"H^{degree}(X; {ring}) = {G.describe()} has {G.ngens} generators, got {len(coords)} coordinates")
    return element(K, degree, ring, coords)


def _order_json(order):
    return "infinite" if order == INFINITE else order


def load_complex(args) -> SimplicialComplex:
    if bool(args.builtin) == bool(args.complex):
        raise UsageError("give exactly one of --builtin or --complex")
    if args.builtin:
        return builtin(args.builtin)
    path = Path(args.complex)
    if not path.exists():
        raise UsageError(f"complex file {path} does not exist")
    return parse_complex(path.read_text(encoding="utf-8"))


def _ring(text: str) -> CoefficientRing:
    try:
        return CoefficientRing.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommand handlers: each returns (inputs, result, text) ----------------


def cmd_cohomology(K, args):
    ring = _ring(args.coeff)
    G = cohomology(K, args.degree, ring)
    lines = [G.describe()]
    for i, g in enumerate(G.generators):
        t = G.orders[i]
        lines.append(f"  g{i} (order {'inf' if t == 0 else t}): {list(g)}")
    return {"degree": args.degree, "coeff": str(ring)}, G.to_json(), "\n".join(lines)


def cmd_bockstein(K, args):
    y = _class(K, args.degree, CoefficientRing(args.mod), args.cls)
    b = bockstein(y)
    order = class_order(b)
    result = {"source": y.to_json(), "image": b.to_json(), "order": _order_json(order)}
    text = f"beta({list(y.coords)}) = {list(b.coords)} in H^{b.degree}(X; Z) = {b.group.describe()}, order {order}"
    return {"degree": args.degree, "mod": args.mod, "class": list(y.coords)}, result, text


def cmd_lift(K, args):
    y = _class(K, args.degree, CoefficientRing(args.mod), args.cls)
    z = integral_lift(y)
    result = {"source": y.to_json(), "lift": None if z is None else z.to_json()}
    text = "no integral lift" if z is None else f"lifts to {list(z.coords)} in H^{z.degree}(X; Z) = {z.group.describe()}"
    return {"degree": args.degree, "mod": args.mod, "class": list(y.coords)}, result, text


def cmd_cup(K, args):
    ring = _ring(args.coeff)
    x = _class(K, args.a_degree, ring, args.a)
    y = _class(K, args.b_degree, ring, args.b)
    z = cup(x, y)
    inputs = {"coeff": str(ring), "a": [x.degree, list(x.coords)], "b": [y.degree, list(y.coords)]}
    return inputs, {"product": z.to_json()}, f"{list(x.coords)} cup {list(y.coords)} = {list(z.coords)} in {z.group.describe()}"


def cmd_sq(K, args):
    x = _class(K, args.degree, CoefficientRing(2), args.cls)
    z = sq(args.k, x)
    inputs = {"k": args.k, "degree": args.degree, "class": list(x.coords)}
    return inputs, {"square": z.to_json()}, f"Sq^{args.k}({list(x.coords)}) = {list(z.coords)} in H^{z.degree}(X; Z/2) = {z.group.describe()}"


def cmd_sq3z(K, args):
    x = _class(K, args.degree, INTEGERS, args.cls)
    z = sq3_integral(x)
    inputs = {"degree": args.degree, "class": list(x.coords)}
    return inputs, {"image": z.to_json()}, f"Sq^3_Z({list(x.coords)}) = {list(z.coords)} in H^{z.degree}(X; Z) = {z.group.describe()}"


def _flavor(n):
    return Flavor() if n is None else Flavor(n)


def _twist(K, text, flavor=None) -> Twist:
    return Twist(_class(K, 3, INTEGERS, text), _flavor(flavor))


def _realize(K, args):
    x = _class(K, 3, INTEGERS, args.cls)
    try:
        g = realize_torsion(x, start=args.start)
    except NotTorsion as exc:
        raise UsageError(str(exc)) from None
    tw = delta_from_gamma(g)
    gamma = {"modulus": g.n, "class": None if g.cls is None else g.cls.to_json()}
    text = f"realized by gamma in H^2(X; Z/{g.n})" + ("" if g.cls is None else f" with coords {list(g.cls.coords)}")
    return {"class": list(x.coords), "start": args.start}, {"gamma": gamma, "twist": tw.to_json()}, text


def cmd_twist(K, args):
    op = args.op
    if op == "add":
        a = _twist(K, args.a, args.a_flavor)
        b = _twist(K, args.b, args.b_flavor)
        s = twist_add(a, b)
        inputs = {"op": op, "a": a.to_json(), "b": b.to_json()}
        return inputs, {"sum": s.to_json()}, f"sum = {list(s.coords)}, order {_order_json(twist_order(s))}, flavor {s.flavor}"
    if op == "neg":
        a = _twist(K, args.cls, args.flavor)
        c = twist_conjugate(a)
        return {"op": op, "twist": a.to_json()}, {"conjugate": c.to_json()}, f"conjugate = {list(c.coords)}"
    if op == "order":
        a = _twist(K, args.cls, args.flavor)
        trivial, cert = is_trivial(a)
        result = {"twist": a.to_json(), "trivial": trivial, "certificate": cert}
        return {"op": op}, result, f"order {_order_json(twist_order(a))}, trivial: {trivial}"
    if op == "realize":
        return _realize(K, args)
    raise UsageError(f"unknown twist operation {op!r}")


def cmd_realize(K, args):
    return _realize(K, args)


def cmd_twisted_k(K, args):
    tw = _twist(K, args.twist)
    res = twisted_k(K, tw)
    e2, e3, e4 = res.pages
    if args.emit_pages:
        out = Path(args.emit_pages)
        out.mkdir(parents=True, exist_ok=True)
        for page in (e2, e3, e4):
            doc = {"schema": SCHEMA, "complex_sha256": K.digest, "twist": list(tw.coords), **page.to_json()}
            (out / f"E{page.r}.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    result = res.to_json()
    result["pages"] = [e2.to_json(), e3.to_json(), e4.to_json()]
    text = "\n".join([
        e2.table(), e3.table(), e4.table(),
        f"K^0 graded: {[g.describe() for g in res.graded_even]}",
        f"K^1 graded: {[g.describe() for g in res.graded_odd]}",
        f"converged: {res.converged}",
        res.note,
    ])
    return {"twist": tw.to_json()}, result, text


def read_matrix(path: Path) -> IntegerMatrix:
    rows = []
    for line in path.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            try:
                rows.append([int(v) for v in line.split()])
            except ValueError:
                raise UsageError(f"non-integer entry in matrix line {line!r}") from None
    if not rows:
        raise UsageError("matrix file is empty")
    if len({len(r) for r in rows}) != 1:
        raise UsageError("matrix rows have different lengths")
    return IntegerMatrix.from_rows(rows)


def cmd_snf(args):
    path = Path(args.matrix)
    if not path.exists():
        raise UsageError(f"matrix file {path} does not exist")
    A = read_matrix(path)
    s = smith_normal_form(A)
    result = {"invariant_factors": s.invariant_factors, "rank": s.rank,
              "D": s.D.tolist(), "U": s.U.tolist(), "V": s.V.tolist()}
    text = "\n".join([f"invariant factors: {s.invariant_factors}", f"rank: {s.rank}"] +
                     ["D:"] + [" ".join(map(str, r)) for r in s.D.rows])
    return {"matrix": str(path), "shape": list(A.shape)}, result, text


def cmd_complex(K, args):
    info = {
        "name": K.name,
        "dim": K.dim,
        "f_vector": list(K.f_vector),
        "euler_characteristic": K.euler_characteristic,
        "vertices": len(K.vertices),
    }
    if args.op == "validate":
        return {"op": "validate"}, {"valid": True, **info}, f"valid: dim {K.dim}, f-vector {list(K.f_vector)}"
    if args.op == "info":
        info["canonical"] = serialize_complex(K)
        return {"op": "info"}, info, serialize_complex(K).rstrip() + f"\n# f-vector {list(K.f_vector)}, chi {K.euler_characteristic}"
    raise UsageError(f"unknown complex operation {args.op!r}")


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--cache-dir", help="directory for cached cohomology presentations")

    source = _Parser(add_help=False, parents=[common])
    source.add_argument("--builtin", help="sphere:n | moore:n | rp2 | point | susp:<tag>")
    source.add_argument("--complex", help="path to a complex document")

    parser = _Parser(prog="twistedk", description="Twist data and twisted K-theory of simplicial complexes.")
    parser.add_argument("--version", action="version", version=f"twistedk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", parents=[source], help="H^k(X; Z or Z/n)")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--coeff", default="Z")

    for name, helptext in (("bockstein", "Bockstein of a Z/n class"), ("lift", "integral lift of a Z/n class")):
        p = sub.add_parser(name, parents=[source], help=helptext)
        p.add_argument("--degree", type=int, required=True)
        p.add_argument("--mod", type=int, required=True)
        p.add_argument("--class", dest="cls", required=True)

    p = sub.add_parser("cup", parents=[source], help="cup product of two classes")
    p.add_argument("--a-degree", type=int, required=True)
    p.add_argument("--a", required=True)
    p.add_argument("--b-degree", type=int, required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--coeff", default="Z")

    p = sub.add_parser("sq", parents=[source], help="Steenrod square of a Z/2 class")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--class", dest="cls", required=True)

    p = sub.add_parser("sq3z", parents=[source], help="integral Sq^3 of an integral class")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--class", dest="cls", required=True)

    p = sub.add_parser("twist", parents=[source], help="twist group operations on H^3(X; Z)")
    p.add_argument("op", choices=["add", "neg", "order", "realize"])
    p.add_argument("--class", dest="cls", default="")
    p.add_argument("--flavor", type=int, help="n for a PU_n twist (default: infinite-dimensional)")
    p.add_argument("--a", default="")
    p.add_argument("--b", default="")
    p.add_argument("--a-flavor", type=int)
    p.add_argument("--b-flavor", type=int)
    p.add_argument("--start", type=int, help="first modulus tried by realize")

    p = sub.add_parser("realize", parents=[source], help="realize a torsion class as a Bockstein")
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--start", type=int)

    p = sub.add_parser("twisted-k", parents=[source], help="twisted K-theory via the AHSS")
    p.add_argument("--twist", required=True, help="coordinates in H^3(X; Z); an integer m on sphere:3")
    p.add_argument("--emit-pages", help="directory to write E2/E3/E4 pages as JSON")

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix file")
    p.add_argument("matrix")

    p = sub.add_parser("complex", parents=[source], help="validate or describe a complex")
    p.add_argument("op", choices=["validate", "info"])
    return parser


HANDLERS = {
    "cohomology": cmd_cohomology,
    "bockstein": cmd_bockstein,
    "lift": cmd_lift,
    "cup": cmd_cup,
    "sq": cmd_sq,
    "sq3z": cmd_sq3z,
    "twist": cmd_twist,
    "realize": cmd_realize,
    "twisted-k": cmd_twisted_k,
    "complex": cmd_complex,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.cache_dir:
            cache.set_cache_dir(args.cache_dir)
        if args.command == "snf":
            K = None
            inputs, result, text = cmd_snf(args)
        else:
            K = load_complex(args)
            inputs, result, text = HANDLERS[args.command](K, args)
    except (AssertionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=stderr)
        return 1
    except (UsageError, ComplexFormatError, ValueError, OSError) as exc:
        print(f"error: {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}", file=stderr)
        return 2
    if args.json:
        doc = {
            "schema": SCHEMA,
            "command": args.command,
            "inputs": inputs,
            "result": result,
            "provenance": {
                "version": __version__,
                "complex": None if K is None else K.name,
                "complex_sha256": None if K is None else K.digest,
            },
        }
        if K is not None:
            doc["inputs"]["complex"] = args.builtin or args.complex
        stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        stdout.write(text + "\n")
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
