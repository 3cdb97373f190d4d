"""Optional matplotlib figures for analyze/verify output (Agg backend, files only)."""
from __future__ import annotations

from pathlib import Path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _slug(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_" else "_" for c in name)


def plot_series(report, directory) -> Path:
    """Orders of the lower and upper central series terms, log_p scale."""
    plt = _pyplot()
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    p = report["p"]
    lower = [_logp(x, p) for x in report["lower_central_orders"]]
    upper = [_logp(x, p) for x in report["upper_central_orders"]]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(range(1, len(lower) + 1), lower, "o-", label="gamma_i")
    ax.plot(range(len(upper)), upper, "s--", label="Z_i")
    ax.set_xlabel("i")
    ax.set_ylabel(f"log_{p} order")
    ax.set_title(report["name"])
    ax.legend()
    fig.tight_layout()
    out = directory / f"{_slug(report['name'])}_series.png"
    fig.savefig(out, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return out


def plot_autz_vs_zinn(names, autz, zinn, directory, filename="autz_vs_zinn.png") -> Path:
    """Grouped bars of |Aut_z| and |Z(Inn)| per group."""
    plt = _pyplot()
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    xs = range(len(names))
    fig, ax = plt.subplots(figsize=(max(4, 0.8 * len(names) + 2), 3.5))
    ax.bar([x - 0.2 for x in xs], autz, width=0.4, label="|Aut_z|")
    ax.bar([x + 0.2 for x in xs], zinn, width=0.4, label="|Z(Inn)|")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=45, ha="right")
    ax.set_yscale("log")
    ax.legend()
    fig.tight_layout()
    out = directory / filename
    fig.savefig(out, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return out


def _logp(x: int, p: int) -> int:
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k
