#!/usr/bin/env python3
"""Build a synthetic demo bundle: catalog, features, labeled pairs and three
trained checkpoints, everything the service and CLI need to run locally.

    python scripts/make_demo_data.py --out data/demo
"""

import argparse
import json
from pathlib import Path

from outfitbox.decoder import HyperParams, PairType
from outfitbox.synth import hue_match_pairs, make_world
from outfitbox.training import save_checkpoint, train_decoder


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("data/demo"))
    parser.add_argument("--per-type", type=int, default=48)
    parser.add_argument("--pairs", type=int, default=400, help="positives and negatives per decoder")
    parser.add_argument("--epochs", type=int, default=15)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    world = make_world(per_type=args.per_type, seed=args.seed)
    (args.out / "catalog.jsonl").write_text(world.catalog.to_jsonl(), encoding="utf-8")
    world.features.save(args.out / "features.npz")

    ckpt_dir = args.out / "checkpoints"
    ckpt_dir.mkdir(exist_ok=True)
    hyper = HyperParams.desk(epochs=args.epochs, seed=args.seed)
    for n, pt in enumerate(PairType):
        dataset = hue_match_pairs(world, pt, args.pairs, args.pairs, seed=args.seed + n)
        with (args.out / f"pairs-{pt.tag}.jsonl").open("w") as fh:
            for a, b, y in dataset.labeled():
                fh.write(json.dumps({"a": a, "b": b, "label": y}) + "\n")
        result = train_decoder(dataset, world.catalog, world.features, hyper)
        save_checkpoint(ckpt_dir / f"{pt.tag}.npz", result.params, hyper, world.catalog.vocab_sha256())
        print(f"{pt.tag}: loss {result.history[-1].mean_loss:.4f} after {args.epochs} epochs")

    print(f"\ndemo bundle in {args.out}/")
    print("run the service with:")
    print(f"  OUTFITBOX_CATALOG={args.out}/catalog.jsonl \\")
    print(f"  OUTFITBOX_FEATURES={args.out}/features.npz \\")
    print(f"  OUTFITBOX_CKPT_DIR={ckpt_dir} \\")
    print(f"  OUTFITBOX_STORE={args.out}/sessions.db \\")
    print("  outfitbox serve")


if __name__ == "__main__":
    main()
