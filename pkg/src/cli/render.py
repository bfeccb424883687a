"""Human-readable tables, JSON emission and DOT lattice diagrams"""

import json
import sys
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..congruence.lattice import covers
from ..congruence.partition import Partition

console = Console()
error_console = Console(stderr=True)


def emit_json(data: Any) -> None:
    """Deterministic JSON on stdout"""
    sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def verdict_text(value: bool, yes: str = "yes", no: str = "no") -> Text:
    return Text(yes if value else no, style="bold green" if value else "bold red")


def key_value_table(title: str, rows: Iterable[Tuple[str, Any]]) -> Table:
    table = Table(title=title, show_header=False, title_style="bold cyan")
    table.add_column("field", style="bold white")
    table.add_column("value")
    for key, value in rows:
        table.add_row(key, value if isinstance(value, Text) else str(value))
    return table


def list_table(title: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Table:
    table = Table(title=title, title_style="bold cyan")
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(v if isinstance(v, Text) else str(v) for v in row))
    return table


def show(*renderables: Any) -> None:
    for item in renderables:
        console.print(item)


def show_error(message: str, code: str, details: Optional[dict] = None) -> None:
    body = Text(message, style="red")
    if details:
        body.append("\n" + json.dumps(details, sort_keys=True, default=str), style="dim")
    error_console.print(Panel(body, title=code, border_style="red", expand=False))


def lattice_dot(lattice: Sequence[Partition], name: str = "Con") -> str:
    """Hasse diagram of a congruence lattice, bottom to top"""
    lines: List[str] = [f'digraph "{name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    ordered = sorted(lattice, key=lambda p: p.sort_key())
    for p in ordered:
        lines.append(f'  "{p}";')
    for lower in ordered:
        for upper in ordered:
            if covers(lattice, lower, upper):
                lines.append(f'  "{lower}" -> "{upper}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
