"""Command-line front end.

Exit codes: 0 success, 1 check failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import json
import os
import sys
import tempfile
import time
from pathlib import Path

import click
import numpy as np

from .algebra import cartan_matrix, centre
from .combinatorics import Quiver2Reg, brauer_graph, graph_predicates
from .errors import ArtifactError, CheckFailure, InputError, ParameterOutOfRange, PreconditionFailed, ResourceCap
from .gwsa import GWSAData, make_gwsa, make_twisted_bga, preset, validate_gwsa
from .orders import (
    central_z,
    decomposition_matrix,
    lift_central_xi,
    make_gamma0,
    make_ribbon_order,
    verify_reduction,
)
from .silting import compare_posets, enumerate_two_term, quotient_of, transport_node
from .textformat import load, serialize

__all__ = ["main", "parse_m"]

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def parse_m(text: str | None, q: Quiver2Reg) -> dict[str, int]:
    """``1,2,1`` (one value per g-orbit, in orbit order) or ``a1=2,a3=1``."""
    if not text:
        return {}
    reps = [orb[0] for orb in q.g_orbits()]
    parts = [s.strip() for s in text.split(",") if s.strip()]
    out: dict[str, int] = {}
    try:
        if all("=" in s for s in parts):
            for s in parts:
                k, v = s.split("=", 1)
                k = k.strip()
                if k not in reps:
                    raise ParameterOutOfRange(f"{k} is not a g-orbit representative; use one of {reps}")
                out[k] = int(v)
        else:
            if len(parts) != len(reps):
                raise ParameterOutOfRange(f"expected {len(reps)} multiplicities (orbits {reps}), got {len(parts)}")
            out = {r: int(v) for r, v in zip(reps, parts)}
    except ValueError:
        raise ParameterOutOfRange(f"cannot read multiplicities {text!r}") from None
    for k, v in out.items():
        if v < 1:
            raise ParameterOutOfRange(f"multiplicity of {k} must be positive")
    return out


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(obj, out_dir: str | None, name: str) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, default=_jsonable)
    if out_dir:
        _write(Path(out_dir) / name, text + "\n")
    else:
        click.echo(text)


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    raise TypeError(f"not serializable: {type(x)}")


def _run(fn):
    """Map library exceptions to exit codes."""
    try:
        code = fn()
    except ResourceCap as exc:
        click.echo(f"resource cap: {exc}", err=True)
        sys.exit(EXIT_CAP)
    except InputError as exc:
        click.echo(f"input error ({type(exc).__name__}): {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except CheckFailure as exc:
        click.echo(f"check failed ({type(exc).__name__}): {exc}", err=True)
        sys.exit(EXIT_CHECK)
    except ArtifactError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CHECK)
    sys.exit(code or EXIT_OK)


_common = [
    click.option("--input", "input_path", required=True, type=click.Path(dir_okay=False), help="algebra definition file"),
    click.option("--prime", default=2, show_default=True, type=int),
    click.option("--out-dir", default=None, type=click.Path(file_okay=False), help="write files here instead of stdout"),
    click.option("--seed", default=0, show_default=True, type=int),
]


def common(f):
    for opt in reversed(_common):
        f = opt(f)
    return f


def _check_prime(p: int) -> None:
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise ParameterOutOfRange(f"--prime {p} is not a prime")


@click.group()
def main() -> None:
    """Build and check generalised weighted surface algebras and silting bijections."""


@main.command("validate")
@common
def cmd_validate(input_path: str, prime: int, out_dir: str | None, seed: int) -> None:
    """Build the algebra and check the dimension and socle axioms."""

    def go():
        _check_prime(prime)
        data = load(input_path)
        alg = make_gwsa(data, prime)
        report = validate_gwsa(alg, data)
        report["seed"] = seed
        _emit(report, out_dir, "validate.json")
        if not report["ok"]:
            bad = [s for s in report["socle_checks"] if not s["ok"]]
            click.echo(f"checks failed: dim_ok={report['dim_ok']}, socle failures={bad}", err=True)
            return EXIT_CHECK
        return EXIT_OK

    _run(go)


@main.command("report")
@common
@click.option("--what", type=click.Choice(["dim", "cartan", "centre", "graph", "decomp"]), required=True)
@click.option("--m", "m_text", default=None, help="multiplicities for decomp (default: those in the file)")
def cmd_report(input_path: str, prime: int, out_dir: str | None, seed: int, what: str, m_text: str | None) -> None:
    """Emit one derived artifact as JSON (and DOT for graphs)."""

    def go():
        _check_prime(prime)
        data = load(input_path)
        q = data.quiver
        out: dict = {"what": what, "seed": seed}
        if what == "graph":
            bg = brauer_graph(q)
            out["graph"] = {"vertices": list(bg.vertices), "edges": [list(e) for e in bg.edges]}
            out["predicates"] = graph_predicates(bg)
            if out_dir:
                _write(Path(out_dir) / "graph.dot", bg.to_dot())
            else:
                click.echo(bg.to_dot(), nl=False)
        elif what == "decomp":
            m = parse_m(m_text, q) if m_text else data.m
            out.update(decomposition_matrix(q, m).to_json())
        else:
            alg = make_gwsa(data, prime)
            if what == "dim":
                out["dim"] = alg.dim
            elif what == "cartan":
                out["cartan"] = cartan_matrix(alg)
            else:
                out["centre_dim"] = int(centre(alg, full=True).shape[0])
        _emit(out, out_dir, f"{what}.json")
        return EXIT_OK

    _run(go)


def _lift_parameters(data: GWSAData, target: dict[str, int]) -> dict[str, int]:
    """m' = target - m; the reduction of the lift by xi(m') has multiplicities m + m'."""
    q = data.quiver
    t = GWSAData(q, target)
    out = {}
    for orb in q.g_orbits():
        r = orb[0]
        if t.m_of(r) - data.m_of(r) < 1:
            raise PreconditionFailed(f"inequality m(i)_{r} >= m_{r} + 1 fails: {t.m_of(r)} < {data.m_of(r) + 1}")
        out[r] = t.m_of(r) - data.m_of(r)
    return out


def _bga_only(data: GWSAData) -> None:
    if data.Z or any(v != (0, 0) for v in data.t.values()):
        raise ParameterOutOfRange("ribbon mode needs Brauer graph data: empty [Z] and all t zero")


@main.command("bijection")
@common
@click.option("--m", "m_text", required=True, help="first multiplicities, e.g. 1,1,1 or a1=2")
@click.option("--m2", "m2_text", required=True, help="second multiplicities")
@click.option("--mode", type=click.Choice(["ribbon", "gamma0"]), default="ribbon", show_default=True)
@click.option("--trunc-N", "trunc_n", default=None, type=int, help="coefficient truncation X^N (gamma0)")
@click.option("--trunc-L", "trunc_l", default=None, type=int, help="path length truncation")
@click.option("--node-cap", default=5000, show_default=True, type=int)
def cmd_bijection(
    input_path: str,
    prime: int,
    out_dir: str | None,
    seed: int,
    m_text: str,
    m2_text: str,
    mode: str,
    trunc_n: int | None,
    trunc_l: int | None,
    node_cap: int,
) -> None:
    """Enumerate two-term silting posets of two reductions of one lift and transport between them."""

    def go():
        _check_prime(prime)
        data = load(input_path)
        q = data.quiver
        m1, m2 = parse_m(m_text, q), parse_m(m2_text, q)
        full1 = GWSAData(q, m1).full_m()
        full2 = GWSAData(q, m2).full_m()
        if trunc_l is not None and trunc_l < 1:
            raise ParameterOutOfRange("--trunc-L must be positive")
        if node_cap < 1:
            raise ParameterOutOfRange("--node-cap must be positive")
        t0 = time.time()
        if mode == "ribbon":
            _bga_only(data)
            d1, d2 = GWSAData(q, m1), GWSAData(q, m2)
            need = 2 * max(max(d1.mn(a), d2.mn(a)) for a in q.arrows)
            L = trunc_l if trunc_l is not None else need
            order = make_ribbon_order(q, L, prime)
            x1, x2 = central_z(order, m1), central_z(order, m2)
        else:
            mp1, mp2 = _lift_parameters(data, m1), _lift_parameters(data, m2)
            L = trunc_l
            if L is None:
                d1, d2 = GWSAData(q, mp1), GWSAData(q, mp2)
                base = 2 * (2 * max(data.m_of(a) for a in q.arrows) + 1) * max(q.n(a) for a in q.arrows) + 2
                L = max(base, 2 * max(max(d1.mn(a), d2.mn(a)) for a in q.arrows) + 2)
            order = make_gamma0(data, prime, N=trunc_n, L=L)
            x1 = lift_central_xi(order, mp1, strict=False)
            x2 = lift_central_xi(order, mp2, strict=False)
        Q1, Q2 = quotient_of(order, x1), quotient_of(order, x2)
        if mode == "ribbon":
            checks = [verify_reduction(Q1, make_twisted_bga(q, m1, prime)), verify_reduction(Q2, make_twisted_bga(q, m2, prime))]
        else:
            checks = [verify_reduction(Q1, data.with_m(m1)), verify_reduction(Q2, data.with_m(m2))]
        P1 = enumerate_two_term(Q1, cap=node_cap)
        P2 = enumerate_two_term(Q2, cap=node_cap)
        images = [P2.find(transport_node(order, x1, x2, n)) for n in P1.nodes]
        bijective = None not in images and len(set(images)) == len(images) == len(P2.nodes)
        edges_ok = bijective and {(images[i], images[j]) for i, j in P1.edges} == P2.edges
        back = [P1.find(transport_node(order, x2, x1, P2.nodes[j])) for j in images] if bijective else []
        round_trip = bijective and back == list(range(len(images)))
        cmp = compare_posets(P1, P2, seed=seed)
        verdict = "isomorphic" if bijective and edges_ok and round_trip else "not isomorphic"
        if cmp == "inconclusive" and verdict != "isomorphic":
            verdict = "inconclusive"
        cert = {
            "mode": mode,
            "prime": prime,
            "seed": seed,
            "m1": full1,
            "m2": full2,
            "truncation": {"L": order.L, "N": order.N},
            "order_dim": order.alg.dim,
            "reduction_dims": [Q1.dim, Q2.dim],
            "reductions_verified": [bool(c["ok"]) for c in checks],
            "nodes": [len(P1.nodes), len(P2.nodes)],
            "transport_bijective": bijective,
            "transport_preserves_edges": edges_ok,
            "round_trip_identity": round_trip,
            "abstract_isomorphism_found": isinstance(cmp, dict),
            "verdict": verdict,
            "seconds": round(time.time() - t0, 3),
        }
        bundle = {
            "poset1.json": P1.to_json(),
            "poset2.json": P2.to_json(),
            "transport.json": {"map": {str(i): j for i, j in enumerate(images)}},
            "certificate.json": cert,
        }
        if out_dir:
            for name, obj in bundle.items():
                _emit(obj, out_dir, name)
            _write(Path(out_dir) / "poset1.dot", P1.to_dot())
            _write(Path(out_dir) / "poset2.dot", P2.to_dot())
        click.echo(json.dumps(cert, indent=2, default=_jsonable))
        return EXIT_OK if verdict == "isomorphic" and all(c["ok"] for c in checks) else EXIT_CHECK

    _run(go)


@main.command("preset")
@click.argument("name")
@click.argument("params", nargs=-1, type=int)
@click.option("--prime", default=2, show_default=True, type=int)
@click.option("--output", default=None, type=click.Path(dir_okay=False))
def cmd_preset(name: str, params: tuple[int, ...], prime: int, output: str | None) -> None:
    """Write the definition file of a named family, e.g. ``preset 'Q(3K)' 2 2 2``."""

    def go():
        text = serialize(preset(name, *params, p=prime))
        if output:
            _write(Path(output), text)
        else:
            click.echo(text, nl=False)
        return EXIT_OK

    _run(go)


if __name__ == "__main__":
    main()
