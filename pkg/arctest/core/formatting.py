"""Human-readable rendering of permutations and reports.

Machine output is always the JSON report on stdout; everything here is meant
for a person reading stderr.
"""

from typing import Optional

from rich.console import Console
from rich.table import Table

from arctest.algebra.perm import Perm
from arctest.core.report import Report

STATUS_STYLES = {
    "pass": "green",
    "fail": "bold red",
    "skipped": "yellow",
}


def format_cycles(perm: Perm, one_based: bool = True) -> str:
    """Write a permutation in cycle notation.

    Fixed points are omitted; the identity is written ``()``.

    Args:
        perm: Permutation to format
        one_based: Shift every point by one, as printed mathematics does

    Returns:
        Cycle string such as ``"(1 2 5 3 4)"``

    Example:
        >>> format_cycles(Perm([1, 4, 3, 0, 2]))
        '(1 2 5 3 4)'
        >>> format_cycles(Perm([1, 0, 2]), one_based=False)
        '(0 1)'
    """
    shift = 1 if one_based else 0
    cycles = perm.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(point + shift) for point in cycle) + ")" for cycle in cycles)


def summary_table(report: Report) -> Table:
    """Build a rich Table with one row per claim.

    Args:
        report: Report to summarise

    Returns:
        Table with claim, status, elapsed and reason columns and a totals caption
    """
    table = Table(title=f"{report.tool} {report.version}", show_lines=False)
    table.add_column("claim", style="cyan", no_wrap=True)
    table.add_column("status")
    table.add_column("ms", justify="right")
    table.add_column("reason", overflow="fold")

    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for claim in report:
        counts[claim.status] += 1
        style = STATUS_STYLES[claim.status]
        table.add_row(
            claim.claim_id,
            f"[{style}]{claim.status}[/{style}]",
            f"{claim.elapsed_ms:.1f}",
            claim.reason or "",
        )
    table.caption = f"{counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped"
    return table


def render_summary(report: Report, console: Optional[Console] = None) -> None:
    """Print the summary table of ``report`` to ``console`` (stderr by default).

    Args:
        report: Report to summarise
        console: Target console; a new stderr console when omitted
    """
    console = console or Console(stderr=True)
    console.print(summary_table(report))
