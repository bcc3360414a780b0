"""Figure rendering for sweep results.

Uses the non-interactive Agg backend so sweeps can render on headless
machines; figures go to files next to the CSV they illustrate.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweep import SweepConfig, SweepRow


def plot_sweep(config: SweepConfig, rows: list[SweepRow], path: str) -> str:
    """Render bound curves (and oracle markers, if present) to ``path``."""
    n = [r.n for r in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    ax.plot(n, [r.q_u1 for r in rows], color="tab:blue", label="upper bound (linear form)")
    ax.plot(
        n,
        [r.q_u2 for r in rows],
        color="tab:orange",
        linestyle="--",
        label="upper bound (exponential form)",
    )
    ax.plot(n, [r.q_l for r in rows], color="tab:green", label="lower bound")

    gauss = [(r.n, r.i_c_gaussian) for r in rows if r.i_c_gaussian is not None]
    if gauss:
        ax.plot(
            *zip(*gauss),
            linestyle="none",
            marker=".",
            color="black",
            markersize=4,
            label="coherent information (covariance)",
        )
    fock = [(r.n, r.i_c_fock) for r in rows if r.i_c_fock is not None]
    if fock:
        ax.plot(
            *zip(*fock),
            linestyle="none",
            marker="x",
            color="tab:red",
            markersize=4,
            label="coherent information (Fock simulation)",
        )

    ax.set_xlabel("input mean photon number N")
    ax.set_ylabel(f"rate ({config.units})")
    title = f"{config.channel}, {config.env}"
    if config.label:
        title = f"{config.label.removeprefix('preset=')}: {title}"
    ax.set_title(title)
    ax.axhline(0.0, color="gray", linewidth=0.6)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
