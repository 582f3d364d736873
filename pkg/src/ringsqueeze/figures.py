"""Figure rendering for sweep tables.

One PNG per table, written next to the CSV. Plots are plain matplotlib line
charts meant as quick visual reports, not publication artwork.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .sweeps import Table


def _col(table: Table, name: str) -> np.ndarray:
    i = table.columns.index(name)
    return np.array([row[i] for row in table.rows], dtype=float)


def render_figure(table: Table, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    cmd = table.command
    if cmd == "threshold":
        d = _col(table, "delta")
        ax.loglog(d, _col(table, "p_ratio_peak"), "o-", label="peak")
        ax.loglog(d, _col(table, "p_ratio_energy"), "s-", label="energy")
        ax.set_xlabel(r"pump bandwidth $\delta/\gamma$")
        ax.set_ylabel(r"$P_{\rm th}/P_{\rm th,CW}$")
        ax.legend()
    elif cmd == "modes":
        nu = _col(table, "nu")
        ax2 = ax.twinx()
        for k, color in zip((1, 2, 3), ("C0", "C1", "C2")):
            ax.plot(nu, _col(table, f"abs_f{k}"), color=color, label=f"mode {k}")
            ax2.plot(nu, _col(table, f"arg_f{k}"), color=color, ls="--",
                     alpha=0.5)
        ax.set_xlabel(r"detuning $\nu/\gamma$")
        ax.set_ylabel("amplitude")
        ax2.set_ylabel("phase (rad)")
        span = table.meta.get("span")
        if span:
            ax.set_xlim(-min(8.0, span / 2), min(8.0, span / 2))
        ax.legend()
    elif cmd == "squeeze":
        x = _col(table, table.columns[0])
        db_col = "db1" if "db1" in table.columns else "db"
        ax.plot(x, _col(table, db_col), "o-")
        ax.set_xlabel(table.columns[0])
        ax.set_ylabel("squeezing (dB)")
    elif cmd == "mode-number":
        x = _col(table, table.columns[0])
        if table.meta.get("axis") in ("delta", "gamma_p"):
            ax.semilogx(x, _col(table, "K"), "o-")
        else:
            ax.plot(x, _col(table, "K"), "o-")
        ax.set_xlabel(table.columns[0])
        ax.set_ylabel("effective mode number K")
    elif cmd == "lo":
        d = _col(table, "delta")
        ax.semilogx(d, _col(table, "measured_db"), "o-", label="filtered LO")
        ax.semilogx(d, _col(table, "matched_db"), "s-", label="matched LO")
        ax.set_xlabel(r"pump bandwidth $\delta/\gamma$")
        ax.set_ylabel("squeezing (dB)")
        ax2 = ax.twinx()
        ax2.semilogx(d, _col(table, "overlap"), "^--", color="C2", alpha=0.6)
        ax2.set_ylabel("overlap")
        ax.legend(loc="lower left")
    elif cmd == "convergence":
        labels = table.columns[1:]
        rel = table.rows[-1][1:]
        ax.bar(range(len(labels)), rel)
        ax.set_xticks(range(len(labels)), labels)
        ax.set_yscale("log")
        ax.set_ylabel("relative change under grid doubling")
    else:
        x = _col(table, table.columns[0])
        for name in table.columns[1:]:
            ax.plot(x, _col(table, name), label=name)
        ax.set_xlabel(table.columns[0])
        ax.legend()
    ax.set_title(cmd)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
