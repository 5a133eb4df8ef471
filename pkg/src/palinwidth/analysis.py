"""Analysis pipelines behind the CLI commands.

Each pipeline returns plain dicts so the CLI can serialise them to JSON,
CSV or text without further knowledge of the library types.
"""

from __future__ import annotations

import math
import re
import time
from contextlib import contextmanager
from dataclasses import dataclass

import numpy as np

from palinwidth.errors import InapplicableError, ParseError, PalinwidthError
from palinwidth.genset import (
    catalog_group,
    involution_class_genset,
    lemma_augment,
    read_genset_file,
    sigma_class_genset,
)
from palinwidth.group import (
    DEFAULT_MAX_ORDER,
    closure,
    conjugacy_class,
    conjugation_closure,
    is_abelian,
    is_simple,
    subgroup_generated,
)
from palinwidth.palindromes import (
    covering_number,
    conjugates_in_p2,
    involution_step,
    moved_points,
    n_subgroup,
    palindrome_set,
    palindromic_width,
    relator_images,
    verify_prop_normal,
    width_upper_bound_via_subgroup,
)
from palinwidth.words import format_word

GENSET_MODES = ("as-given", "involution-class", "sigma-class", "lemma-augmented")


@dataclass
class RunConfig:
    group: str | None = None
    genset_file: str | None = None
    genset: str = "as-given"
    max_order: int = DEFAULT_MAX_ORDER
    max_relation_len: int = 12
    format: str = "json"
    seed: int = 0
    samples: int = 1000
    timings: bool = False

    def __post_init__(self):
        if (self.group is None) == (self.genset_file is None):
            raise ParseError("exactly one of --group / --genset-file is required")
        if self.genset not in GENSET_MODES:
            raise ParseError(f"unknown genset mode {self.genset!r}")
        if self.max_order < 1 or self.max_relation_len < 2:
            raise ParseError("caps must be positive (max_relation_len >= 2)")

    @property
    def group_label(self) -> str:
        return self.group if self.group is not None else str(self.genset_file)


class Timer:
    def __init__(self):
        self.ms: dict[str, float] = {}

    @contextmanager
    def phase(self, name):
        t0 = time.perf_counter()
        yield
        self.ms[name] = round(1000 * (time.perf_counter() - t0), 3)


def _alternating_degree(name: str) -> int | None:
    m = re.fullmatch(r"\s*A_?(\d+)\s*", name or "", re.IGNORECASE)
    return int(m.group(1)) if m else None


def resolve(config: RunConfig, timer: Timer | None = None):
    """Build the group and the generating set selected by the config.

    Returns ``(gens, table, info)``; ``info`` carries augmentation details.
    """
    timer = timer or Timer()
    info: dict = {}
    with timer.phase("closure"):
        if config.group is not None:
            gens, table = catalog_group(config.group, max_order=config.max_order)
        else:
            gens = read_genset_file(config.genset_file)
            table = closure(list(gens.perms), max_order=config.max_order)
    mode = config.genset
    with timer.phase("genset"):
        if mode == "involution-class":
            gens = involution_class_genset(table)
            table = closure(list(gens.perms), max_order=config.max_order)
        elif mode == "sigma-class":
            n = _alternating_degree(config.group)
            if n is None or table.order != math.factorial(n) // 2:
                raise InapplicableError("sigma-class generating sets are defined for alternating groups A<n>")
            gens, table = sigma_class_genset(n, max_order=config.max_order)
            info["sigma_n"] = n
        elif mode == "lemma-augmented":
            aug = lemma_augment(gens, table, config.max_relation_len, max_order=config.max_order)
            gens, table = aug.gens_out, aug.table_out
            info["augmentation"] = {
                "added": aug.added,
                "witness": format_word(aug.witness_relation, gens) if aug.witness_relation is not None else None,
                "generators_in": len(gens) - (1 if aug.added else 0),
                "generators_out": len(gens),
            }
    return gens, table, info


def describe_genset(gens, mode) -> str:
    if len(gens) > 6:
        return f"{mode}: {len(gens)} generators"
    from palinwidth.perm import print_cycles

    return f"{mode}: " + ", ".join(f"{l}={print_cycles(p)}" for l, p in zip(gens.labels, gens.perms))


def _nsub_status(nsub, nsub_prev, order) -> str:
    if nsub.exact:
        return "exact"
    if len(nsub) == order:
        return "full"
    if nsub_prev is not None and nsub_prev.members == nsub.members:
        return "stable"
    return "lower-approximation"


def covering_bound(gens, table):
    """Least 2 * covering number over generator classes that generate G."""
    best = None
    seen = np.zeros(table.order, dtype=bool)
    for p in gens.perms:
        g = table.index_of(p)
        if seen[g] or g == 0:
            continue
        cls = conjugacy_class(g, table)
        seen |= cls.bits
        if not subgroup_generated(cls).is_full():
            continue
        m = covering_number(cls, table)
        best = 2 * m if best is None else min(best, 2 * m)
    return best


def width_report(config: RunConfig) -> dict:
    timer = Timer()
    gens, table, info = resolve(config, timer)

    with timer.phase("palindromes"):
        data = palindrome_set(gens, table)
    with timer.phase("width"):
        rep = palindromic_width(gens, table, data)

    with timer.phase("n_subgroup"):
        rel = relator_images(gens, table)
        nsub = n_subgroup(gens, table, config.max_relation_len, relators=rel)
        prev = None
        if not nsub.exact and len(nsub) < table.order:
            prev = n_subgroup(gens, table, config.max_relation_len - 1, relators=rel) \
                if config.max_relation_len > 2 else None
        status = _nsub_status(nsub, prev, table.order)

    verdicts = {}
    bounds = {"involution": None, "coset": None, "covering2x": None}
    with timer.phase("bounds"):
        try:
            step = involution_step(gens, table)
            bounds["involution"] = int(np.ceil(moved_points(table) / step).max())
        except InapplicableError:
            pass
        if nsub.normal and nsub.members.issubset(data.members):
            bounds["coset"] = width_upper_bound_via_subgroup(nsub.members, data)
        bounds["covering2x"] = covering_bound(gens, table)

    width = rep.width
    inv_closed = bool(data.members.bits[table.inv[data.members.indices()]].all())
    verdicts["palindromes_inverse_closed"] = "pass" if inv_closed else "fail"
    verdicts["n_subgroup_normal"] = "pass" if nsub.normal else ("fail" if nsub.exact else "inconclusive")
    verdicts["n_subgroup_palindromic"] = "pass" if nsub.members.issubset(data.members) else "fail"
    bracket = width is not None
    if width is not None:
        lows = [b for b in (bounds["involution"],) if b is not None]
        highs = [b for b in (bounds["coset"], bounds["covering2x"]) if b is not None]
        bracket = all(l <= width for l in lows) and all(width <= h for h in highs)
    verdicts["bounds_bracket_width"] = "pass" if bracket else "fail"
    if "sigma_n" in info and width is not None:
        verdicts["sigma_lower_bound"] = "pass" if width >= math.ceil(info["sigma_n"] / 4) else "fail"

    report = {
        "group": config.group_label,
        "order": table.order,
        "genset": describe_genset(gens, config.genset),
        "generators": len(gens),
        "palindrome_count": len(data),
        "width": width if width is not None else "unreached",
        "layers": rep.layer_sizes,
        "n_subgroup_order": len(nsub),
        "n_subgroup_status": status,
        "n_subgroup_normal": nsub.normal,
        "augmentation": info.get("augmentation"),
        "bounds": bounds,
        "verdicts": verdicts,
        "timings_ms": timer.ms if config.timings else {},
    }
    if "sigma_n" in info:
        report["n_over_4"] = math.ceil(info["sigma_n"] / 4)
    return report


# -- verification suites -----------------------------------------------------


def _verdict(ok: bool, detail: str = "") -> dict:
    return {"verdict": "pass" if ok else "fail", "detail": detail}


def _na(reason: str) -> dict:
    return {"verdict": f"not applicable ({reason})", "detail": ""}


def verify_report(config: RunConfig) -> dict:
    """Run every applicable verification suite for the configured group."""
    gens, table, info = resolve(config)
    suites: dict[str, dict] = {}
    data = palindrome_set(gens, table)

    prop = verify_prop_normal(gens, table, config.samples, seed=config.seed)
    if prop.inconclusive:
        suites["prop_normal_identities"] = {"verdict": "inconclusive", "detail": "; ".join(prop.notes)}
    else:
        suites["prop_normal_identities"] = _verdict(
            prop.failures == 0, f"{prop.checks} checks, {prop.failures} failures")
    nsub = n_subgroup(gens, table, None)
    suites["n_subgroup_normal_palindromic"] = _verdict(
        nsub.normal and nsub.members.issubset(data.members), f"|N| = {len(nsub)}")

    suites["conjugates_in_p2"] = _verdict(conjugates_in_p2(gens, table, data))

    inv_closed = bool(data.members.bits[table.inv[data.members.indices()]].all())
    wrap_ok = all(
        data.members.bits[table.trans[table.left_letter(data.members.indices(), c), c]].all()
        for c in range(table.n_letters))
    suites["palindrome_set_closure"] = _verdict(inv_closed and wrap_ok)

    abelian = is_abelian(table)
    simple = table.order > 1 and not abelian and is_simple(table)

    if abelian:
        suites["lemma_augment"] = {"verdict": "inapplicable (abelian)", "detail": ""}
    else:
        aug = lemma_augment(gens, table, config.max_relation_len, max_order=config.max_order)
        added = len(aug.gens_out) - len(gens)
        if aug.witness_relation is None:
            suites["lemma_augment"] = {"verdict": "inconclusive",
                                       "detail": f"no witness within length {config.max_relation_len}"}
        else:
            suites["lemma_augment"] = _verdict(
                added <= 1, f"added {added} generator(s); witness {format_word(aug.witness_relation, aug.gens_out)}")

    if not simple:
        reason = "abelian" if abelian else "not simple"
        suites["simple_width_one"] = _na(reason)
        suites["involution_alphabet"] = _na(reason)
    else:
        aug = lemma_augment(gens, table, config.max_relation_len, max_order=config.max_order)
        d2 = palindrome_set(aug.gens_out, aug.table_out)
        w2 = palindromic_width(aug.gens_out, aug.table_out, d2)
        suites["simple_width_one"] = _verdict(d2.members.is_full() and w2.width == 1, f"width {w2.width}")

        igens = involution_class_genset(table)
        itab = closure(list(igens.perms), max_order=config.max_order)
        idata = palindrome_set(igens, itab)
        members = idata.members.indices()
        squares_trivial = bool((itab.multiply(members, members) == 0).all())
        odd_outside = all(not idata.members.bits[g] for g in range(1, itab.order)
                          if itab.element(g).order() % 2 == 1)
        cls = conjugation_closure(itab.set_of([itab.index_of(igens.perms[0])]))
        exact_set = idata.members == (cls | itab.set_of([0]))
        iw = palindromic_width(igens, itab, idata)
        suites["involution_alphabet"] = _verdict(
            squares_trivial and odd_outside and exact_set and (iw.width or 0) > 1,
            f"|P| = {len(idata)}, width {iw.width}")

    failed = [k for k, v in suites.items() if v["verdict"] == "fail"]
    return {
        "group": config.group_label,
        "order": table.order,
        "genset": describe_genset(gens, config.genset),
        "verdicts": suites,
        "failed": failed,
    }


SURVEY_COLUMNS = (
    "group", "genset", "order", "generators", "palindrome_count", "width", "n_over_4",
    "involution_bound", "coset_bound", "covering2x_bound", "n_subgroup_order", "status",
)


def survey_rows(groups, modes, base: RunConfig) -> list[dict]:
    rows = []
    for g in groups:
        for mode in modes:
            row = dict.fromkeys(SURVEY_COLUMNS)
            row["group"] = g
            row["genset"] = mode
            try:
                cfg = RunConfig(group=g, genset=mode, max_order=base.max_order,
                                max_relation_len=base.max_relation_len)
                rep = width_report(cfg)
                row.update(
                    order=rep["order"], generators=rep["generators"],
                    palindrome_count=rep["palindrome_count"], width=rep["width"],
                    n_over_4=rep.get("n_over_4"),
                    involution_bound=rep["bounds"]["involution"], coset_bound=rep["bounds"]["coset"],
                    covering2x_bound=rep["bounds"]["covering2x"], n_subgroup_order=rep["n_subgroup_order"],
                    status="fail" if "fail" in rep["verdicts"].values() else "ok",
                )
            except (PalinwidthError, ValueError) as exc:
                row["status"] = f"error: {exc}"
            rows.append(row)
    return rows
