"""Figure rendering for sweep output.

Kept separate from the CLI so matplotlib is only imported when a
figure is actually requested.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_sweep_figure(rows, geometry, path, log_x=False):
    """Render Q(eta) curves from sweep rows to an image file."""
    eta = [r["eta"] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(eta, [r["q_te"] for r in rows], label=r"$Q_\mathrm{TE}$")
    ax.plot(eta, [r["q_tm"] for r in rows], label=r"$Q_\mathrm{TM}$")
    ax.plot(eta, [r["q_total"] for r in rows], "k-", lw=2, label=r"$Q$")
    if geometry == "sphere":
        ax.axhline(0.0, color="0.6", lw=0.8, ls="--")
    if log_x:
        ax.set_xscale("log")
    ax.set_xlabel(r"$\eta$")
    ax.set_ylabel(r"$Q^{p}(\eta)$" if geometry == "planar" else r"$Q^{s}(\eta)$")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
