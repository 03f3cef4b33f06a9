"""Write direction-set, model and scenario files for the twin-argument demos.

    python scripts/make_argument_inputs.py OUTDIR

Then, for example:

    kslab contextual OUTDIR/peres-33.txt OUTDIR/peres-loophole.json OUTDIR/peres-scenario.json
"""

import argparse
import random
from pathlib import Path

from kslab.catalog import format_direction_set, gen_peres_33, gen_single_triad
from kslab.contextual import build_loophole_model, context_free_model, lift_loophole_model
from kslab.ks import search_colorings
from kslab.spacetime import Event, symmetric_twin_scenario


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("outdir", type=Path)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    out = args.outdir
    out.mkdir(parents=True, exist_ok=True)

    peres = gen_peres_33()
    triad = gen_single_triad()
    (out / "peres-33.txt").write_text(format_direction_set(peres))
    (out / "single-triad.txt").write_text(format_direction_set(triad))

    # context-free (hence TWIN-consistent) tables over random colorings
    rnd = random.Random(args.seed)
    cols = {f"h{k}": [rnd.randint(0, 1) for _ in peres] for k in range(4)}
    (out / "peres-context-free.json").write_text(context_free_model(peres, cols).to_json())
    loophole = lift_loophole_model(peres, build_loophole_model(peres))
    (out / "peres-loophole.json").write_text(loophole.to_json())
    witness = search_colorings(triad).witness
    (out / "triad-witness.json").write_text(context_free_model(triad, witness).to_json())

    signal = [Event(50), Event(60, (1, 2, 0))]
    (out / "peres-scenario.json").write_text(symmetric_twin_scenario(len(peres), signals=signal).to_json())
    (out / "triad-scenario.json").write_text(symmetric_twin_scenario(len(triad), signals=signal).to_json())
    for p in sorted(out.iterdir()):
        print(p)


if __name__ == "__main__":
    main()
