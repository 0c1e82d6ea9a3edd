"""Structural checks on outcome tables, including externally supplied ones.

A table (simulated here, but the same file format accepts experimental
counts) must satisfy two identities: a fiber's transmit/reflect marginal
cannot depend on which partner fiber accompanied it, and pair-outcome
probabilities cannot depend on which partner supplied the second photon.
The demo runs both checks on a clean table, then corrupts one entry and
shows the checkers localize it.
"""

from bosonctx import (
    BALANCED,
    DistinguishabilityParam,
    OutcomeTable,
    check_indistinguishability,
    check_no_disturbance,
    full_table,
    parse_table,
)

table = full_table(BALANCED, DistinguishabilityParam(1.0))

print("=" * 64)
print("Round trip through the on-disk format")
print("=" * 64)
text = table.to_json()
print(text.splitlines()[0:6], "...")
reloaded = parse_table(text)
print(f"reloaded == original: {reloaded.contexts == table.contexts}")

print()
print("=" * 64)
print("Checks on the clean table")
print("=" * 64)
for checker in (check_no_disturbance, check_indistinguishability):
    report = checker(reloaded)
    print(f"{report.check:<22} passed={report.passed}  "
          f"max deviation = {report.max_deviation:.3e}  "
          f"identities = {len(report.identities)}")

print()
print("=" * 64)
print("Checks after corrupting p(A reflected, B transmitted | AB) by 1e-3")
print("=" * 64)
contexts = {ctx: dict(dist) for ctx, dist in table.contexts.items()}
contexts["AB"]["ar,bt"] += 1e-3
dirty = OutcomeTable(table.theta, table.eta, contexts)
for checker in (check_no_disturbance, check_indistinguishability):
    report = checker(dirty)
    print(f"{report.check:<22} passed={report.passed}  "
          f"max deviation = {report.max_deviation:.3e}")
    for failure in report.failures()[:3]:
        print(f"    violated: {failure.name}  ({failure.lhs:.6f} vs {failure.rhs:.6f})")
