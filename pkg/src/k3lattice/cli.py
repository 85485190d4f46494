"""Command-line interface.

Structured results go to stdout as JSON, one-line summaries to stderr.
Exit codes: 0 success, 1 error, 2 inconclusive verdict.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from . import charges, group_actions, hassett, jsonio, lattices, mukai

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Result:
    def __init__(self, payload, summary: str = "", code: int = EXIT_OK):
        self.payload = payload
        self.summary = summary
        self.code = code


def _read(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return jsonio.loads(text)


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return jsonio.int_vector(jsonio.loads(text))
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise jsonio.FormatError(f"expected comma-separated integers, got {text!r}") from exc


def _charge_input(obj):
    if isinstance(obj, dict) and "omega" in obj:
        obj = obj["omega"]
    return jsonio.charge_from_json(obj)


# -- handlers ---------------------------------------------------------------


def _hassett_check(a):
    v = hassett.verdict(a.d)
    return _Result(v.as_dict(), f"d={a.d}: {'admissible' if v.admissible else 'not admissible'}")


def _hassett_list(a):
    ds = hassett.admissible_discriminants(a.max)
    return _Result(ds, f"{len(ds)} admissible discriminants up to {a.max}")


def _lattice_info(a):
    lat = jsonio.lattice_from_json(_read(a.inp))
    inv = lattices.invariants(lat)
    out = jsonio.lattice_to_json(lat)
    out.update(inv.as_dict())
    return _Result(out, f"rank {inv.rank}, det {inv.det}, signature {inv.signature}")


def _lattice_disc(a):
    lat = jsonio.lattice_from_json(_read(a.inp))
    dg = lattices.discriminant_group(lat)
    out = jsonio.lattice_to_json(lat)
    out["invariant_factors"] = list(dg.invariant_factors)
    out["order"] = dg.order
    return _Result(out, f"discriminant group of order {dg.order}")


def _sub_payload(sub):
    out = jsonio.sublattice_to_json(sub)
    out["invariants"] = lattices.invariants(sub.as_lattice()).as_dict()
    return out


def _sub_complement(a):
    sub = jsonio.sublattice_from_json(_read(a.inp))
    perp = lattices.orthogonal_complement(sub)
    return _Result(_sub_payload(perp), f"complement has rank {perp.rank}")


def _sub_saturate(a):
    sub = jsonio.sublattice_from_json(_read(a.inp))
    idx = lattices.saturation_index(sub)
    out = _sub_payload(lattices.saturate(sub))
    out["index"] = idx
    return _Result(out, f"saturation index {idx}")


def _mukai_a2(a):
    sub, lam = mukai.embed_a2_in_mukai()
    perp = lattices.orthogonal_complement(sub)
    v, norm = mukai.fano_mukai_vector(lam, sub.ambient)
    out = _sub_payload(sub)
    out["lambda1"] = list(lam.lambda1)
    out["lambda2"] = list(lam.lambda2)
    out["fano_vector"] = list(v)
    out["fano_norm"] = norm
    out["complement_invariants"] = lattices.invariants(perp.as_lattice()).as_dict()
    return _Result(out, "A2 in MUKAI24; complement rank 22, |det| 3")


def _mukai_lk(a):
    kappa = _int_list(a.kappa)
    lk = mukai.build_L_K(kappa)
    out = _sub_payload(lk)
    out["kappa"] = kappa
    out["saturation_index"] = mukai.l_k_index(kappa)
    out["picard_number"] = mukai.kuznetsov_picard_number(lk.rank)
    return _Result(out, f"L_K has rank {lk.rank}, |det| {abs(lk.as_lattice().det())}")


def _mukai_find_u(a):
    lat = jsonio.lattice_from_json(_read(a.inp))
    if a.bound < 0:
        raise UsageError("--bound must be nonnegative")
    v = mukai.find_hyperbolic_plane(lat, a.bound)
    code = EXIT_UNKNOWN if v.verdict == "Unknown" else EXIT_OK
    return _Result(v.as_dict(), f"hyperbolic plane: {v.verdict}", code)


def _charge_gamma(a):
    omega = _charge_input(_read(a.inp))
    g = charges.gamma_set(omega, jsonio.parse_rational(a.c))
    return _Result(jsonio.gamma_to_json(g), f"Gamma has {len(g.members)} members")


def _charge_p0(a):
    omega = _charge_input(_read(a.inp))
    v = charges.p_zero_check(omega)
    out = jsonio.charge_to_json(omega)
    out.update(v.as_dict())
    return _Result(out, f"P0 check: {v.verdict}")


def _charge_n_bound(a):
    obj = _read(a.inp)
    if isinstance(obj, dict) and "members" in obj:
        gamma = jsonio.gamma_from_json(obj)
    else:
        gamma = charges.gamma_set(_charge_input(obj), jsonio.parse_rational(a.c))
    n = charges.genericity_bound(gamma, _int_list(a.functional))
    return _Result({"N": n, "members": len(gamma.members)}, f"N = {n}")


def _group_coinv(a):
    action = jsonio.action_from_json(_read(a.inp))
    classes = [jsonio.int_vector(c, "class") for c in jsonio.loads(a.classes)] if a.classes else []
    bound = group_actions.picard_bound_from_action(action, classes)
    fixed, coinv = group_actions.invariant_and_coinvariant(action)
    out = jsonio.action_to_json(action)
    out["invariant"] = _sub_payload(fixed)
    out["coinvariant"] = _sub_payload(coinv)
    out["picard_bound"] = bound
    return _Result(out, f"rk L^G = {fixed.rank}, rk S_G = {coinv.rank}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="k3lattice", description=__doc__.splitlines()[0])
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def add(group, name, fn: Callable, *flags):
        sp = group.add_parser(name)
        for args, kwargs in flags:
            sp.add_argument(*args, **kwargs)
        sp.set_defaults(func=fn)

    inp = (("--in",), {"dest": "inp", "required": True, "help": "input JSON file, or - for stdin"})

    g = top.add_parser("hassett").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "check", _hassett_check, (("--d",), {"type": int, "required": True}))
    add(g, "list", _hassett_list, (("--max",), {"type": int, "required": True}))

    g = top.add_parser("lattice").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "info", _lattice_info, inp)
    add(g, "disc-group", _lattice_disc, inp)

    g = top.add_parser("sublattice").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "complement", _sub_complement, inp)
    add(g, "saturate", _sub_saturate, inp)

    g = top.add_parser("mukai").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "a2", _mukai_a2)
    add(g, "lk", _mukai_lk, (("--kappa",), {"required": True, "help": "24 integers, JSON list or comma-separated"}))
    add(g, "find-u", _mukai_find_u, inp, (("--bound",), {"type": int, "default": 3}))

    g = top.add_parser("charge").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "gamma", _charge_gamma, inp, (("--c",), {"default": "1"}))
    add(g, "p0", _charge_p0, inp)
    add(g, "n-bound", _charge_n_bound, inp, (("--functional",), {"required": True}), (("--c",), {"default": "1"}))

    g = top.add_parser("group").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    add(g, "coinv", _group_coinv, inp, (("--classes",), {"default": None, "help": "JSON list of classes that must be fixed"}))
    return p


def run_cli(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one invocation; return (exit code, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(list(argv))
        result = args.func(args)
    except (UsageError, jsonio.FormatError, lattices.LatticeError, ValueError, TypeError, OSError) as exc:
        kind = type(exc).__name__
        err = {"error": {"type": kind, "message": str(exc)}}
        return EXIT_ERROR, jsonio.dumps(err) + "\n", f"error: {exc}\n"
    return result.code, jsonio.dumps(result.payload) + "\n", (result.summary + "\n") if result.summary else ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run_cli(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
