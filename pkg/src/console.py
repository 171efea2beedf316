# src/console.py
from __future__ import annotations

from rich.console import Console
from rich.markup import escape

# Data goes to stdout; everything printed here goes to stderr.
console = Console(stderr=True, highlight=False)


def status(tag: str, message: str) -> None:
    console.print(f"[bold cyan]\\[{tag}][/bold cyan] {escape(message)}")


def warn(tag: str, message: str) -> None:
    console.print(f"[bold yellow]\\[{tag}][/bold yellow] ⚠️  {escape(message)}")


def fail(tag: str, message: str) -> None:
    console.print(f"[bold red]\\[{tag}][/bold red] ❌ {escape(message)}")
