"""Command-line front end.  Every verb prints one JSON document.

Exit codes: 0 success, 1 domain error, 2 usage error.  Scalars cross the
boundary as decimal strings ("p/q" for rationals); counts stay integers.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .descent import (
    CurvePoint,
    integral_orbit_from_divisor,
    norm_condition_check,
    one_point_integral_orbit,
    soluble_plane_from_point,
    validate_mumford,
    x_minus_T,
)
from .exactnum import DEFAULT_SEED, DomainError, Poly, RankError, charpoly, mat_det_inv
from .forms import BinaryForm, DegenerateFormError, Pencil, binary_discriminant, invariant_form
from .localglobal import local_soluble_good_odd, parity_certificate, reduction_classify_odd, twist_family
from .orbits import (
    brute_force_census_n2,
    brute_table_csv,
    census_Fq,
    census_sweep,
    pencil_from_triple,
    real_classification,
    sl_order,
    theta_action_from_pencil,
)
from .order import EtaleAlgebra

S = str


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# parsing helpers

def _scalar(tok):
    if isinstance(tok, bool):
        raise UsageError("booleans are not scalars")
    if isinstance(tok, int):
        return Fraction(tok)
    if isinstance(tok, str):
        try:
            return Fraction(tok.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad scalar {tok!r}")
    raise UsageError(f"scalars must be integers or strings, got {tok!r}")


def parse_form(text: str) -> BinaryForm:
    """'[f0, f1, ...]' or '{"n": n, "coeffs": [...]}' (f0 first)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"--form is not JSON: {e}")
    if isinstance(obj, dict):
        coeffs = obj.get("coeffs")
        if not isinstance(coeffs, list):
            raise UsageError("form object needs a coeffs list")
        if "n" in obj and obj["n"] != len(coeffs) - 1:
            raise UsageError("n does not match the number of coefficients")
    else:
        coeffs = obj
    if not isinstance(coeffs, list) or len(coeffs) < 2:
        raise UsageError("a form needs at least two coefficients")
    return BinaryForm([_scalar(c) for c in coeffs])


def _matrix(obj):
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise UsageError("matrices are lists of rows")
    return [[_scalar(v) for v in r] for r in obj]


def load_pencil(path: str) -> Pencil:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read pencil file: {e}")
    if not isinstance(obj, dict) or "A" not in obj or "B" not in obj:
        raise UsageError("pencil file needs keys A and B")
    try:
        return Pencil(_matrix(obj["A"]), _matrix(obj["B"]))
    except ValueError as e:
        raise DomainError(str(e))


def _strs(xs):
    return [S(x) for x in xs]


def pencil_json(P: Pencil) -> dict:
    return {"A": [_strs(r) for r in P.A], "B": [_strs(r) for r in P.B]}


def ideal_json(I) -> dict:
    return {"den": S(I.den), "basis": [_strs(col) for col in zip(*I.H)]}


def form_out(f: BinaryForm):
    return _strs(f.coeffs)


# verbs

def cmd_disc(a):
    return {"disc": S(binary_discriminant(parse_form(_need(a, "form"))))}


def cmd_census(a):
    n, q = _need(a, "n"), _need(a, "q")
    if a.form:
        f = parse_form(a.form)
        if f.n != n:
            raise UsageError("--n does not match the form degree")
        return census_Fq(f, q, seed=a.seed).to_json(brief=True)
    count = None if a.all else (a.count or 100)
    return {"n": n, "q": q, "rows": census_sweep(n, q, count, a.seed, a.jobs)}


def cmd_brute(a):
    rows = brute_force_census_n2(_need(a, "q"))
    if a.format == "csv":
        return brute_table_csv(rows)
    return {"q": a.q, "rows": [{"form": _strs(r.form), "pairs": r.pairs, "orbit_sizes": r.orbit_sizes}
                               for r in rows.values()]}


def cmd_orbit_build(a):
    f = parse_form(_need(a, "form"))
    pair = one_point_integral_orbit(f)
    t = pair.minus if a.negative else pair.plus
    P = pencil_from_triple(t.parent, t)
    return {"form": form_out(f),
            "triple": {"ideal": ideal_json(t.I), "alpha": _strs(t.alpha.coords), "s": S(t.s)},
            "pencil": pencil_json(P), "invariant": form_out(invariant_form(P))}


def cmd_orbit_verify(a):
    P = load_pencil(_need(a, "pencil_file"))
    f = invariant_form(P)
    out = {"invariant": form_out(f), "integral": P.is_integral(), "symmetric": True}
    if a.form:
        out["matches"] = parse_form(a.form) == f
    if mat_det_inv(P.A)[1] is not None:
        out["theta_charpoly"] = _strs(charpoly(theta_action_from_pencil(P)).coeffs)
    return out


def cmd_descend(a):
    f = parse_form(_need(a, "form"))
    L = EtaleAlgebra(f)
    if sum(x is not None for x in (a.point, a.divisor, a.bound)) != 1:
        raise UsageError("descend needs exactly one of --point, --divisor, --bound")
    if a.bound is not None:
        if a.bound < 0:
            raise UsageError("--bound must be >= 0")
        r = norm_condition_check(L, bound=a.bound)
        return {"status": r.status,
                "alpha": _strs(r.alpha.coords) if r.alpha is not None else None,
                "norm": S(r.norm) if r.norm is not None else None,
                "root": S(r.root) if r.root is not None else None,
                "message": r.message}
    if a.point:
        try:
            pt = json.loads(a.point)
        except json.JSONDecodeError as e:
            raise UsageError(f"--point is not JSON: {e}")
        if not isinstance(pt, list) or len(pt) != 3:
            raise UsageError("--point needs [x0, y0, z0]")
        Q = CurvePoint(*[_scalar(v) for v in pt])
        plane = soluble_plane_from_point(L, Q)
        alpha = plane.alpha
        return {"alpha": _strs(alpha.coords), "norm": S(alpha.norm()), "isotropic": plane.is_isotropic(),
                "plane": [[_strs(v[0].coords), S(v[1]), S(v[2])] for v in plane.vectors]}
    try:
        obj = json.loads(a.divisor)
        P, R = obj["P"], obj["R"]
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise UsageError(f"--divisor needs {{\"P\": [...], \"R\": [...]}}: {e}")
    D = validate_mumford(f, Poly([_scalar(c) for c in P]), Poly([_scalar(c) for c in R]))
    alpha = x_minus_T(L, D)
    out = {"alpha": _strs(alpha.coords), "norm": S(alpha.norm())}
    if D.integral and not D.weierstrass and D.m <= f.n - 3:
        t = integral_orbit_from_divisor(f, D).plus
        out["triple"] = {"ideal": ideal_json(t.I), "s": S(t.s), "ideal_norm": S(t.I.norm())}
    return out


def cmd_real(a):
    return real_classification(parse_form(_need(a, "form"))).to_json()


def cmd_reduce(a):
    f = parse_form(_need(a, "form"))
    p = _need(a, "p")
    out = reduction_classify_odd(f, p).to_json()
    out["locally_soluble"] = "true" if local_soluble_good_odd(f, p) else "unknown"
    return out


def cmd_twists(a):
    return twist_family(parse_form(_need(a, "form"))).to_json()


def cmd_parity(a):
    return parity_certificate(parse_form(_need(a, "form"))).to_json()


def cmd_selftest(a):
    items = run_selftest(fast=a.fast, seed=a.seed)
    out = {"items": items, "passed": all(i["status"] != "fail" for i in items)}
    return out


def run_selftest(fast: bool = False, seed: int = DEFAULT_SEED) -> list[dict]:
    items = []

    def item(name, fn):
        try:
            ok = bool(fn())
        except Exception:  # a crash is a failed item, not a crashed runner
            ok = False
        items.append({"name": name, "status": "pass" if ok else "fail"})

    item("disc-3x4", lambda: binary_discriminant(BinaryForm([3, -12, 0, 11, -11])) == -40252707)
    item("disc-minus-x4", lambda: binary_discriminant(BinaryForm([-1, 2, 104, -104, -2764])) == -146176)

    def norm36():
        L = EtaleAlgebra(BinaryForm([-1, 0, 2, -2, 3]))
        return (L.theta ** 3 - L.theta).norm() == -36

    item("norm-36", norm36)

    def brute(q):
        rows = brute_force_census_n2(q)
        return rows and all(
            r.pairs == sl_order(2, q)
            and len(r.orbit_sizes) == census_Fq(BinaryForm(r.form, q)).orbit_count
            for r in rows.values())

    item("census-brute-q3", lambda: brute(3))
    if fast:
        items.append({"name": "census-brute-q5", "status": "skip"})
    else:
        item("census-brute-q5", lambda: brute(5))

    rng = random.Random(seed)
    for k in range(10):
        n = 4 if k % 2 == 0 else 6
        while True:
            c = rng.randint(1, 5)
            coeffs = [rng.choice([1, -1, 2, 3])] + [rng.randint(-9, 9) for _ in range(n - 1)] + [c * c]
            f = BinaryForm(coeffs)
            if binary_discriminant(f) != 0:
                break

        def rt(f=f):
            t = one_point_integral_orbit(f).plus
            P = pencil_from_triple(t.parent, t)
            return invariant_form(P) == f and P.is_integral()

        item(f"roundtrip-{k + 1}", rt)
    return items


VERBS = {
    "disc": cmd_disc,
    "census": cmd_census,
    "brute": cmd_brute,
    "orbit-build": cmd_orbit_build,
    "orbit-verify": cmd_orbit_verify,
    "descend": cmd_descend,
    "real": cmd_real,
    "reduce": cmd_reduce,
    "twists": cmd_twists,
    "parity": cmd_parity,
    "selftest": cmd_selftest,
}


def _need(a, name):
    v = getattr(a, name, None)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pencils", description=__doc__)
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)
    sub.required = True

    def verb(name, *flags):
        sp = sub.add_parser(name)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        for fl in flags:
            if fl == "form":
                sp.add_argument("--form")
            elif fl in ("n", "q", "p", "count", "bound"):
                sp.add_argument(f"--{fl}", type=int)
            elif fl == "jobs":
                sp.add_argument("--jobs", type=int, default=1)
            elif fl in ("all", "fast", "negative"):
                sp.add_argument(f"--{fl}", action="store_true")
            elif fl == "pencil-file":
                sp.add_argument("--pencil-file")
            elif fl == "format":
                sp.add_argument("--format", choices=["json", "csv"], default="json")
            else:
                sp.add_argument(f"--{fl}")
        return sp

    verb("disc", "form")
    verb("census", "form", "n", "q", "all", "count", "jobs")
    verb("brute", "q", "format")
    verb("orbit-build", "form", "negative")
    verb("orbit-verify", "pencil-file", "form")
    verb("descend", "form", "point", "divisor", "bound")
    verb("real", "form")
    verb("reduce", "form", "p")
    verb("twists", "form")
    verb("parity", "form")
    verb("selftest", "fast")
    return p


def _emit(obj, out):
    if isinstance(obj, str):
        out.write(obj)
    else:
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _error(code, message, context, out):
    _emit({"error": {"code": code, "message": message, "context": context}}, out)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        result = VERBS[args.verb](args)
    except UsageError as e:
        _error("usage", str(e), {"argv": argv}, out)
        return 2
    except (DegenerateFormError, DomainError, RankError, ValueError, ArithmeticError,
            NotImplementedError) as e:
        _error(type(e).__name__, str(e), {"argv": argv}, out)
        return 1
    _emit(result, out)
    if args.verb == "selftest" and not result["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
