from __future__ import annotations

from typing import Any, Optional

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text


def _console(console: Optional[Console]) -> Console:
    return console or Console(stderr=True)


def _ok_text(ok: Any) -> Text:
    if ok is None:
        return Text("-", style="dim")
    return Text("OK", style="bold green") if ok else Text("FAIL", style="bold red")


def _table(title: str) -> Table:
    t = Table(title=title, show_header=True, header_style="bold bright_white", box=box.MINIMAL, pad_edge=False)
    t.row_styles = ["none", "dim"]
    return t


def show_blocks(result: dict[str, Any], console: Optional[Console] = None) -> None:
    """Block census of a classify report."""
    t = _table("blocks")
    t.add_column("#", justify="right")
    t.add_column("variant")
    t.add_column("f")
    t.add_column("d", justify="right")
    t.add_column("dim", justify="right")
    for i, b in enumerate(result.get("blocks", [])):
        t.add_row(str(i), b["variant"], b.get("f_str", "-"), str(b["d"]), str(b["dim"]))
    _console(console).print(t)


def show_witness(result: dict[str, Any], console: Optional[Console] = None) -> None:
    t = _table("witness checks")
    t.add_column("check")
    t.add_column("result")
    for name, ok in sorted(result.get("checks", {}).items()):
        t.add_row(name, _ok_text(ok))
    _console(console).print(t)


def show_descent(result: dict[str, Any], console: Optional[Console] = None) -> None:
    t = _table("hermitian descent")
    t.add_column("field")
    t.add_column("value", overflow="fold")
    for k in ("degree", "rank", "is_hermitian", "correspondence_holds", "centralizer_order", "unitary_order"):
        if k in result:
            t.add_row(k, str(result[k]))
    _console(console).print(t)


def show_suite(result: dict[str, Any], console: Optional[Console] = None) -> None:
    t = _table("verification suite")
    t.add_column("suite")
    t.add_column("space")
    t.add_column("mode")
    t.add_column("instances", justify="right")
    t.add_column("vacuous", justify="right")
    t.add_column("failures", justify="right")
    t.add_column("result")
    space = f"{result['algebra']}_{result['n']} over p={result['field']['p']} deg={result['field']['deg']}"
    failures = len(result.get("failures", []))
    t.add_row(
        result["suite"],
        space,
        "exhaustive" if result.get("exhaustive") else "sampled",
        str(result["instances"]),
        str(result.get("vacuous", 0)),
        str(failures),
        _ok_text(failures == 0),
    )
    _console(console).print(t)


def show_orbits(result: dict[str, Any], console: Optional[Console] = None, limit: int = 20) -> None:
    """Orbit census; only the first `limit` orbits are listed."""
    t = _table(f"{result['space']} orbits of {result['group']}_{result['n']}  (|G| = {result['group_order']})")
    t.add_column("#", justify="right")
    t.add_column("size", justify="right")
    t.add_column("representative", overflow="fold")
    t.add_column("stable")
    for i, o in enumerate(result.get("orbits", [])[:limit]):
        t.add_row(str(i), str(o["size"]), str(o["representative"]), _ok_text(o.get("twisted_stable")))
    c = _console(console)
    c.print(t)
    c.print(
        Panel(
            Text(f"{result['points']} points  •  {result['orbit_count']} orbits  •  all stable: {result.get('all_stable')}"),
            subtitle=result.get("header", ""),
            border_style="bright_cyan",
            box=box.ROUNDED,
        )
    )


def show_fixtures(paths: list[str], console: Optional[Console] = None) -> None:
    t = _table("fixtures written")
    t.add_column("file")
    for p in paths:
        t.add_row(p)
    _console(console).print(t)
