"""Three fibers, one beamsplitter: contexts, outcome tables, and the two
structural consistency checks (marginal no-disturbance and partner
indistinguishability).

Fibers are named A, B, C and each holds one photon.  A context connects one
or two fibers to the beamsplitter; the six contexts are A, B, C, AB, AC, BC,
with the alphabetically first fiber of a pair entering input port 1.

Outcome token grammar (used in tables, event definitions and files):

* a single-fiber outcome is a two-character token, lowercase fiber letter
  followed by ``t`` (transmitted) or ``r`` (reflected), e.g. ``at``;
* a pair outcome joins the two tokens in port order with a comma,
  e.g. ``ar,bt`` means A reflected and B transmitted;
* ``coinc`` is the unresolved one-photon-per-output-port coincidence of the
  interfering bosonic fraction, which carries no per-fiber labels.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .optics import (
    BeamsplitterSpec,
    DistinguishabilityParam,
    pair_outcome_distribution,
    single_outcome_distribution,
)

FIBERS = ("A", "B", "C")
SINGLE_CONTEXTS = ("A", "B", "C")
PAIR_CONTEXTS = ("AB", "AC", "BC")
ALL_CONTEXTS = SINGLE_CONTEXTS + PAIR_CONTEXTS

TRANSMITTED = "t"
REFLECTED = "r"
COINCIDENCE = "coinc"

SCHEMA_VERSION = 1
DEFAULT_TOLERANCE = 1e-12


def validate_context(ctx: str) -> str:
    """Check a context token against the six canonical contexts."""
    if ctx not in ALL_CONTEXTS:
        raise ValueError(
            f"unknown context {ctx!r}; expected one of {', '.join(ALL_CONTEXTS)}")
    return ctx


def make_outcome(assignments: Mapping[str, str]) -> str:
    """Render per-fiber transmit/reflect labels as a canonical outcome token."""
    if not assignments:
        raise ValueError("outcome needs at least one fiber label")
    parts = []
    for fiber in sorted(assignments):
        value = assignments[fiber]
        if fiber not in FIBERS:
            raise ValueError(f"unknown fiber {fiber!r}")
        if value not in (TRANSMITTED, REFLECTED):
            raise ValueError(f"label must be {TRANSMITTED!r} or {REFLECTED!r}, got {value!r}")
        parts.append(fiber.lower() + value)
    return ",".join(parts)


def outcome_assigns(token: str) -> dict[str, str]:
    """Per-fiber labels carried by an outcome token.

    The unresolved coincidence assigns nothing and returns an empty mapping.
    """
    if token == COINCIDENCE:
        return {}
    labels: dict[str, str] = {}
    for part in token.split(","):
        if len(part) != 2 or part[0].upper() not in FIBERS or part[1] not in "tr":
            raise ValueError(f"malformed outcome token {token!r}")
        fiber = part[0].upper()
        if fiber in labels:
            raise ValueError(f"fiber repeated in outcome token {token!r}")
        labels[fiber] = part[1]
    return labels


def outcome_matches(token: str, requirements: Mapping[str, str]) -> bool:
    """Whether an outcome token determinately satisfies every requirement.

    ``coinc`` never matches: it leaves both fibers unlabeled.
    """
    got = outcome_assigns(token)
    return all(got.get(fiber) == value for fiber, value in requirements.items())


def _validate_outcome_for_context(token: str, ctx: str) -> None:
    if token == COINCIDENCE:
        if len(ctx) != 2:
            raise ValueError(f"{COINCIDENCE!r} is only valid in a pair context, not {ctx!r}")
        return
    labels = outcome_assigns(token)
    if set(labels) != set(ctx):
        raise ValueError(f"outcome {token!r} does not label exactly the fibers of {ctx!r}")
    # canonical port order: tokens must be sorted alphabetically
    if token != make_outcome(labels):
        raise ValueError(f"outcome {token!r} is not in canonical port order")


def run_context(ctx: str, bs: BeamsplitterSpec,
                d: DistinguishabilityParam) -> dict[str, float]:
    """Outcome distribution for one context, keyed by outcome token.

    Pair contexts map bunching at output port 1 to (first fiber transmitted,
    second reflected) and bunching at port 2 to the opposite labels.  The
    resolved both-transmitted / both-reflected entries appear only for
    eta < 1; the unresolved bosonic coincidence is always present.
    """
    ctx = validate_context(ctx)
    if len(ctx) == 1:
        single = single_outcome_distribution(bs)
        f = ctx.lower()
        return {f + TRANSMITTED: single.p_transmitted,
                f + REFLECTED: single.p_reflected}

    f1, f2 = ctx[0].lower(), ctx[1].lower()
    pair = pair_outcome_distribution(bs, d)
    dist = {
        f"{f1}t,{f2}r": pair.p_bunch_port1,
        f"{f1}r,{f2}t": pair.p_bunch_port2,
    }
    if pair.resolved_coincidence is not None:
        both_t, both_r = pair.resolved_coincidence
        dist[f"{f1}t,{f2}t"] = both_t
        dist[f"{f1}r,{f2}r"] = both_r
    T, R = bs.transmittance, bs.reflectance
    dist[COINCIDENCE] = d.eta * (T - R) ** 2
    return dist


@dataclass(frozen=True)
class OutcomeTable:
    """Conditional outcome probabilities for all six contexts.

    ``contexts`` maps a context token to an outcome-token distribution.
    Construction does not validate; call :meth:`validate` (loaders do), so
    that deliberately perturbed tables can be built for fault injection.
    """

    theta: float
    eta: float
    contexts: dict[str, dict[str, float]]

    def probability(self, ctx: str, outcome: str) -> float:
        dist = self.context_distribution(ctx)
        if outcome not in dist:
            raise ValueError(f"context {ctx!r} has no outcome {outcome!r}")
        return dist[outcome]

    def context_distribution(self, ctx: str) -> dict[str, float]:
        if ctx not in self.contexts:
            raise ValueError(f"table has no context {ctx!r}")
        return self.contexts[ctx]

    def validate_structure(self) -> None:
        """Shape checks only: contexts, token grammar, header sanity."""
        for ctx in ALL_CONTEXTS:
            if ctx not in self.contexts:
                raise ValueError(f"table is missing context {ctx!r}")
        for ctx, dist in self.contexts.items():
            validate_context(ctx)
            for token, p in dist.items():
                _validate_outcome_for_context(token, ctx)
                if not math.isfinite(p):
                    raise ValueError(f"probability of {token!r} in {ctx!r} is not finite")
        if not (0.0 <= self.eta <= 1.0) or not math.isfinite(self.theta):
            raise ValueError("table header needs finite theta and eta in [0, 1]")

    def validate(self, tol: float = DEFAULT_TOLERANCE) -> None:
        """Structure plus probability range and per-context normalization."""
        self.validate_structure()
        for ctx, dist in self.contexts.items():
            for token, p in dist.items():
                if not (-tol <= p <= 1.0 + tol):
                    raise ValueError(
                        f"probability {p!r} of {token!r} in {ctx!r} is outside [0, 1]")
            total = sum(dist.values())
            if abs(total - 1.0) > tol:
                raise ValueError(
                    f"context {ctx!r} probabilities sum to {total!r}, not 1")

    # -- serialization ----------------------------------------------------

    def to_records(self) -> list[dict]:
        records = []
        for ctx in ALL_CONTEXTS:
            if ctx not in self.contexts:
                continue
            for token, p in self.contexts[ctx].items():
                records.append({"context": ctx, "outcome": token, "probability": p})
        return records

    def to_json(self) -> str:
        payload = {
            "schema": SCHEMA_VERSION,
            "theta": self.theta,
            "eta": self.eta,
            "records": self.to_records(),
        }
        return json.dumps(payload, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# schema={SCHEMA_VERSION}\n")
        buf.write(f"# theta={self.theta!r}\n")
        buf.write(f"# eta={self.eta!r}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["context", "outcome", "probability"])
        for rec in self.to_records():
            writer.writerow([rec["context"], rec["outcome"], repr(rec["probability"])])
        return buf.getvalue()

    @classmethod
    def from_records(cls, theta: float, eta: float,
                     records: list[Mapping]) -> "OutcomeTable":
        contexts: dict[str, dict[str, float]] = {}
        for rec in records:
            try:
                ctx = validate_context(str(rec["context"]))
                token = str(rec["outcome"])
                p = float(rec["probability"])
            except (KeyError, TypeError) as exc:
                raise ValueError(f"bad table record {rec!r}") from exc
            _validate_outcome_for_context(token, ctx)
            dist = contexts.setdefault(ctx, {})
            if token in dist:
                raise ValueError(f"duplicate record for {ctx!r}/{token!r}")
            dist[token] = p
        return cls(float(theta), float(eta), contexts)

    @classmethod
    def from_json(cls, text: str) -> "OutcomeTable":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"not valid JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise ValueError("table JSON must be an object")
        if payload.get("schema", SCHEMA_VERSION) != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema {payload.get('schema')!r}")
        try:
            theta = float(payload["theta"])
            eta = float(payload["eta"])
            records = payload["records"]
        except (KeyError, TypeError) as exc:
            raise ValueError("table JSON needs theta, eta and records") from exc
        if not isinstance(records, list):
            raise ValueError("records must be a list")
        return cls.from_records(theta, eta, records)

    @classmethod
    def from_csv(cls, text: str) -> "OutcomeTable":
        meta: dict[str, str] = {}
        rows = []
        for line in text.splitlines():
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
            elif line.strip():
                rows.append(line)
        if not rows:
            raise ValueError("CSV table has no data rows")
        reader = csv.DictReader(io.StringIO("\n".join(rows)))
        if reader.fieldnames != ["context", "outcome", "probability"]:
            raise ValueError(
                f"CSV header must be context,outcome,probability, got {reader.fieldnames}")
        if "theta" not in meta or "eta" not in meta:
            raise ValueError("CSV table needs '# theta=' and '# eta=' metadata lines")
        try:
            theta = float(meta["theta"])
            eta = float(meta["eta"])
        except ValueError as exc:
            raise ValueError("CSV theta/eta metadata must be numbers") from exc
        return cls.from_records(theta, eta, list(reader))


def parse_table(text: str) -> OutcomeTable:
    """Parse a serialized table, sniffing JSON vs CSV."""
    stripped = text.lstrip()
    if not stripped:
        raise ValueError("empty table file")
    if stripped[0] in "{[":
        return OutcomeTable.from_json(text)
    return OutcomeTable.from_csv(text)


def load_table(path) -> OutcomeTable:
    return parse_table(Path(path).read_text())


def full_table(bs: BeamsplitterSpec, d: DistinguishabilityParam) -> OutcomeTable:
    """Simulate all six contexts at the given splitter angle and overlap."""
    contexts = {ctx: run_context(ctx, bs, d) for ctx in ALL_CONTEXTS}
    return OutcomeTable(bs.theta, d.eta, contexts)


# -- consistency checks ---------------------------------------------------


def _coincidence_weights(theta: float) -> dict[str, float]:
    # Split unresolved coincidence mass between the two classical paths
    # (both transmitted vs both reflected) by their squared weights.
    T = math.cos(theta) ** 2
    R = math.sin(theta) ** 2
    denom = T * T + R * R
    return {TRANSMITTED: T * T / denom, REFLECTED: R * R / denom}


def marginal_probability(table: OutcomeTable, ctx: str, fiber: str, value: str) -> float:
    """Marginal probability that ``fiber`` got ``value`` within one context.

    Unresolved coincidence mass is apportioned by the squared classical path
    weights (evenly at a balanced splitter); resolved outcomes contribute
    their full probability.
    """
    if fiber not in ctx:
        raise ValueError(f"fiber {fiber!r} not measured in context {ctx!r}")
    weights = _coincidence_weights(table.theta)
    total = 0.0
    for token, p in table.context_distribution(ctx).items():
        if token == COINCIDENCE:
            total += p * weights[value]
        elif outcome_assigns(token).get(fiber) == value:
            total += p
    return total


@dataclass(frozen=True)
class IdentityResult:
    """One checked identity: a name, the two compared values, their deviation."""

    name: str
    lhs: float
    rhs: float
    deviation: float
    checked: bool = True
    note: str = ""


@dataclass(frozen=True)
class CheckReport:
    check: str
    tolerance: float
    passed: bool
    max_deviation: float
    identities: tuple[IdentityResult, ...]

    def failures(self) -> list[IdentityResult]:
        return [i for i in self.identities if i.checked and i.deviation > self.tolerance]

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "max_deviation": self.max_deviation,
            "identities": len(self.identities),
            "skipped": sum(1 for i in self.identities if not i.checked),
            "failures": [
                {"name": i.name, "lhs": i.lhs, "rhs": i.rhs, "deviation": i.deviation}
                for i in self.failures()
            ],
        }


def _require_complete(table: OutcomeTable) -> None:
    missing = [ctx for ctx in ALL_CONTEXTS if ctx not in table.contexts]
    if missing:
        raise ValueError(f"incomplete table, missing contexts: {missing}")


def _finish(check: str, tol: float, identities: list[IdentityResult]) -> CheckReport:
    checked = [i for i in identities if i.checked]
    max_dev = max((i.deviation for i in checked), default=0.0)
    passed = all(i.deviation <= tol for i in checked)
    return CheckReport(check, tol, passed, max_dev, tuple(identities))


def check_no_disturbance(table: OutcomeTable,
                         tol: float = DEFAULT_TOLERANCE) -> CheckReport:
    """Verify that each fiber's transmit/reflect marginal is context-independent.

    For every fiber and value the marginal is computed in both pair contexts
    containing the fiber and compared across them; that identity is always
    checked.  Each pair-context marginal is also compared against the
    single-fiber context, but only where the pair context's unresolved
    coincidence mass is within tolerance: when unresolved mass is present the
    marginal depends on the apportionment convention rather than on data, so
    the single-context comparison is reported but marked as skipped.
    """
    _require_complete(table)
    identities: list[IdentityResult] = []
    for fiber in FIBERS:
        pair_ctxs = [c for c in PAIR_CONTEXTS if fiber in c]
        for value in (TRANSMITTED, REFLECTED):
            marginals = {c: marginal_probability(table, c, fiber, value) for c in pair_ctxs}
            c1, c2 = pair_ctxs
            identities.append(IdentityResult(
                name=f"marginal {fiber}={value}: {c1} vs {c2}",
                lhs=marginals[c1], rhs=marginals[c2],
                deviation=abs(marginals[c1] - marginals[c2]),
            ))
            p_single = table.probability(fiber, fiber.lower() + value)
            for c in pair_ctxs:
                unresolved = table.context_distribution(c).get(COINCIDENCE, 0.0)
                resolvable = unresolved <= tol
                identities.append(IdentityResult(
                    name=f"marginal {fiber}={value}: {c} vs single-{fiber}",
                    lhs=marginals[c], rhs=p_single,
                    deviation=abs(marginals[c] - p_single),
                    checked=resolvable,
                    note="" if resolvable else (
                        f"skipped: unresolved coincidence mass {unresolved!r} in {c}"),
                ))
    return _finish("no_disturbance", tol, identities)


def check_indistinguishability(table: OutcomeTable,
                               tol: float = DEFAULT_TOLERANCE) -> CheckReport:
    """Verify that pair-outcome probabilities do not depend on the partner fiber.

    For each fiber the four labeled patterns (own value, partner value) and
    the unresolved coincidence rate must agree between the two pair contexts
    the fiber takes part in.
    """
    _require_complete(table)
    identities: list[IdentityResult] = []

    def pattern_probability(ctx: str, requirements: dict[str, str]) -> float:
        return sum(p for token, p in table.context_distribution(ctx).items()
                   if outcome_matches(token, requirements))

    for fiber in FIBERS:
        c1, c2 = [c for c in PAIR_CONTEXTS if fiber in c]
        partner1 = c1.replace(fiber, "")
        partner2 = c2.replace(fiber, "")
        for own in (TRANSMITTED, REFLECTED):
            for other in (TRANSMITTED, REFLECTED):
                p1 = pattern_probability(c1, {fiber: own, partner1: other})
                p2 = pattern_probability(c2, {fiber: own, partner2: other})
                identities.append(IdentityResult(
                    name=f"pattern {fiber}={own}, partner={other}: {c1} vs {c2}",
                    lhs=p1, rhs=p2, deviation=abs(p1 - p2),
                ))
        q1 = table.context_distribution(c1).get(COINCIDENCE, 0.0)
        q2 = table.context_distribution(c2).get(COINCIDENCE, 0.0)
        identities.append(IdentityResult(
            name=f"unresolved coincidence: {c1} vs {c2}",
            lhs=q1, rhs=q2, deviation=abs(q1 - q2),
        ))
    return _finish("indistinguishability", tol, identities)
