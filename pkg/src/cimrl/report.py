"""CSV output, diagnostics and optional figures for sweep results."""

import csv
from pathlib import Path

import numpy as np

FMT = "%.8e"


def _upper(size):
    return [(i, j) for i in range(size) for j in range(i, size)]


def result_matrices(res):
    """The matrices written out: reduced when a reference is set, partial otherwise."""
    if res.reference is not None:
        return [r.reduced for r in res.records]
    return [r.partial for r in res.records]


def csv_header(size):
    pairs = _upper(size)
    return (["freq_hz"] + [f"R_{i + 1}_{j + 1}" for i, j in pairs]
            + [f"L_{i + 1}_{j + 1}" for i, j in pairs])


def diagnostics_path(path):
    path = Path(path)
    return path.with_name(path.stem + ".diagnostics.csv")


def write_csv(res, path):
    """Write one row per solved frequency plus a sibling diagnostics file."""
    if not res.records:
        raise ValueError("no solved frequencies to write")
    mats = result_matrices(res)
    size = mats[0].size
    pairs = _upper(size)
    path = Path(path)
    lines = [",".join(csv_header(size))]
    for rec, m in zip(res.records, mats):
        row = [rec.frequency] + [m.r[i, j] for i, j in pairs] + [m.l[i, j] for i, j in pairs]
        lines.append(",".join(FMT % v for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    _write_diagnostics(res, diagnostics_path(path))
    return path


def _write_diagnostics(res, path):
    names = res.names or tuple(str(i + 1) for i in range(len(res.records[0].c0)))
    header = ["freq_hz", "status"]
    for n in names:
        header += [f"c0_{n}", f"c0_out_{n}", f"cond_P_{n}", f"cond_Pout_{n}"]
    header += ["cond_efie", "asymmetry", "seconds", "message"]
    rows = []
    for rec in res.records:
        row = [FMT % rec.frequency, "ok"]
        for c0, cond in zip(rec.c0, rec.condition):
            row += ["%g" % abs(c0[0]), "%g" % abs(c0[1]), "%.3e" % cond[0], "%.3e" % cond[1]]
        row += ["%.3e" % rec.efie_condition, "%.3e" % rec.partial.asymmetry,
                "%.4f" % rec.seconds, ""]
        rows.append((rec.frequency, row))
    for fail in res.failures:
        row = [FMT % fail.frequency, "failed"] + [""] * (4 * len(names)) + ["", "", "", fail.error]
        rows.append((fail.frequency, row))
    rows.sort(key=lambda r: r[0])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(r for _, r in rows)


def read_csv(path):
    """Return ``(freqs, columns)`` with ``columns`` mapping header names to arrays."""
    with open(path, newline="", encoding="ascii") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], np.array(rows[1:], dtype=float).reshape(-1, len(rows[0]))
    cols = {name: body[:, k] for k, name in enumerate(header)}
    return cols["freq_hz"], cols


def plot_result(res, path):
    """Log-log R(f) and L(f) of every matrix entry, saved to ``path``."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    mats = result_matrices(res)
    f = np.array(res.frequencies)
    size = mats[0].size
    fig, (ax_r, ax_l) = plt.subplots(1, 2, figsize=(10, 4), constrained_layout=True)
    for i, j in _upper(size):
        label = f"{i + 1},{j + 1}"
        ax_r.loglog(f, [abs(m.r[i, j]) for m in mats], marker=".", label=label)
        ax_l.semilogx(f, [m.l[i, j] * 1e6 for m in mats], marker=".", label=label)
    ax_r.set(xlabel="frequency (Hz)", ylabel="|R| (ohm/m)", title="resistance")
    ax_l.set(xlabel="frequency (Hz)", ylabel="L (uH/m)", title="inductance")
    for ax in (ax_r, ax_l):
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(title="entry", fontsize="small")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return Path(path)
