# %% [markdown]
# # Reproducing the data tables from the command line
#
# Every scenario of the ``oimac`` command writes deterministic CSV or JSON.
# This script drives the CLI in-process and writes each scenario to
# ``demo_output/``.

# %%
from pathlib import Path

from oimac.cli import main

out = Path("demo_output")
runs = [
    ["pnr-star"],
    ["avg-region", "--snr-db", "15,10"],
    ["peak-region", "--pnr-db", "10,5"],
    ["gap-vs-k", "--k", "1,2,4", "--grid", "0:30:7"],
    ["type-compare", "--k", "2,4", "--grid", "10:30:5"],
    ["lemma5-dist", "--a", "4.7"],
    ["joint-outer", "--pnr-db", "10,5"],
]

# %%
for argv in runs:
    code = main(argv + ["--out", str(out), "--units", "bits"])
    print(" ".join(argv), "->", code)

# %%
for path in sorted(out.iterdir()):
    print(path.name, len(path.read_text().splitlines()), "lines")
