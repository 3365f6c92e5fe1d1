"""Per-composition verification pipeline and sweep aggregation.

Check names: vanishing, weierstrass, covering, dimension, injectivity,
orbital.  A report is a plain JSON-ready dict, deterministic for a fixed
(composition, checks, seed) triple.
"""

from __future__ import annotations

from random import Random

from .analysis import (
    covering_check,
    injectivity_witness,
    orbital_variety_test,
    tangent_dimension,
)
from .builder import component_tableaux
from .core import Composition, diagram_of
from .invariants import DEFAULT_SYMBOLIC_MAX_N, vanishing_check, weierstrass_check
from .roots import excluded_roots

ALL_CHECKS = ("vanishing", "weierstrass", "covering", "dimension", "injectivity", "orbital")
SCHEMA_VERSION = 1


def _seeded(seed: int, parts: tuple[int, ...], salt: str) -> Random:
    return Random(f"{seed}:{salt}:{','.join(map(str, parts))}")


def verify_composition(
    composition: Composition,
    checks: tuple[str, ...] = ALL_CHECKS,
    seed: int = 0,
    symbolic_max_n: int = DEFAULT_SYMBOLIC_MAX_N,
) -> dict:
    """Run the selected theorem checks on every tableau of the composition."""
    unknown = set(checks) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    parts = composition.parts
    diagram = diagram_of(parts)
    tableaux = component_tableaux(parts)
    report: dict = {
        "schemaVersion": SCHEMA_VERSION,
        "composition": list(parts),
        "n": composition.n,
        "seed": seed,
        "checks": list(checks),
        "tableauCount": len(tableaux),
        "tableaux": [],
        "injectivityPairs": [],
        "engineModes": [],
        "pass": True,
        "inconclusive": False,
    }
    modes: set[str] = set()
    for idx, ct in enumerate(tableaux):
        roots = excluded_roots(ct)
        entry: dict = {"index": idx, "data": ct.choice_json()}
        if "vanishing" in checks:
            result = vanishing_check(
                ct,
                roots,
                symbolic_max_n=symbolic_max_n,
                rng=_seeded(seed, parts, f"vanishing:{idx}"),
            )
            modes.update(r.mode for r in result.results)
            entry["vanishing"] = result.to_json()
            report["pass"] &= result.ok
        if "weierstrass" in checks:
            result = weierstrass_check(ct)
            entry["weierstrass"] = {
                "ok": result.ok,
                "variables": [list(r.variable) if r.variable else None for r in result.results],
            }
            report["pass"] &= result.ok
        if "covering" in checks:
            result = covering_check(ct, roots)
            entry["covering"] = result.to_json()
            report["pass"] &= result.ok and result.labels_ok
        if "dimension" in checks:
            result = tangent_dimension(ct, roots)
            entry["dimension"] = result.to_json()
            entry["jordanType"] = list(result.jordan_of_e)
            report["pass"] &= result.ok
        if "orbital" in checks:
            result = orbital_variety_test(
                ct, roots, rng=_seeded(seed, parts, f"orbital:{idx}")
            )
            entry["orbital"] = result.to_json()
            if result.status == "inconclusive":
                report["inconclusive"] = True
        report["tableaux"].append(entry)
    if "injectivity" in checks:
        for a in range(len(tableaux)):
            for b in range(a + 1, len(tableaux)):
                witness = injectivity_witness(tableaux[a], tableaux[b])
                report["injectivityPairs"].append(
                    {"i": a, "j": b, "witness": witness.to_json()}
                )
                report["pass"] &= witness.ok
    report["engineModes"] = sorted(modes)
    return report


def compositions_of(n: int) -> list[tuple[int, ...]]:
    """All 2^(n-1) compositions of n, in cut-set order."""
    out = []
    for mask in range(1 << (n - 1)):
        parts = []
        run = 1
        for bit in range(n - 1):
            if mask >> bit & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(tuple(parts))
    return out


def sweep(
    bound: int,
    checks: tuple[str, ...] = ALL_CHECKS,
    seed: int = 0,
    symbolic_max_n: int = DEFAULT_SYMBOLIC_MAX_N,
    threads: int = 1,
) -> dict:
    """Verify every composition of every n <= bound; failures are collected,
    never fatal."""
    jobs = [(n, parts) for n in range(1, bound + 1) for parts in compositions_of(n)]
    args = [
        (parts, checks, seed, symbolic_max_n)
        for _, parts in jobs
    ]
    if threads > 1:
        import multiprocessing

        with multiprocessing.get_context("fork").Pool(threads) as pool:
            results = pool.map(_verify_job, args)
    else:
        results = [_verify_job(a) for a in args]
    by_n: dict[int, list[dict]] = {}
    for (n, _), result in zip(jobs, results):
        by_n.setdefault(n, []).append(result)
    failures = [
        r["composition"] for rs in by_n.values() for r in rs if not r["pass"]
    ]
    return {
        "schemaVersion": SCHEMA_VERSION,
        "bound": bound,
        "seed": seed,
        "checks": list(checks),
        "perN": {
            str(n): {
                "compositions": len(rs),
                "tableaux": sum(r["tableauCount"] for r in rs),
                "reports": rs,
            }
            for n, rs in sorted(by_n.items())
        },
        "failures": failures,
        "pass": not failures,
        "inconclusive": any(r["inconclusive"] for rs in by_n.values() for r in rs),
    }


def _verify_job(args) -> dict:
    parts, checks, seed, symbolic_max_n = args
    return verify_composition(Composition(parts), checks, seed, symbolic_max_n)
