"""Run the tensor-formula sweep over several n and write a JSON report.

    python scripts/sweep.py --ns 2 4 6 --mus 0 --workers 1 --out sweep.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from dhopf.derived import TensorGrid, verify_tensor_theorem


@dataclass
class SweepConfig:
    ns: tuple = (2, 4, 6)
    mus: tuple = (0,)
    grid: TensorGrid = field(default_factory=TensorGrid)
    workers: int = 1
    out: str | None = None


def run(cfg: SweepConfig) -> dict:
    runs = []
    for n in cfg.ns:
        for mu in cfg.mus:
            if mu and n < 4:
                continue
            t0 = time.perf_counter()
            rep = verify_tensor_theorem(n, mu, cfg.grid, workers=cfg.workers)
            secs = time.perf_counter() - t0
            doc = rep.to_json()
            doc["seconds"] = round(secs, 2)
            runs.append(doc)
            print(f"n={n} mu={mu}: {rep.checked} tuples, {len(rep.mismatches)} mismatches, "
                  f"{len(rep.table_mismatches)} table mismatches, {secs:.1f}s", flush=True)
    return {"config": asdict(cfg), "runs": runs,
            "total_mismatches": sum(r["mismatch_count"] + r["table_mismatch_count"] for r in runs)}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[2, 4, 6])
    ap.add_argument("--mus", type=int, nargs="+", default=[0])
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--no-tables", action="store_true")
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    cfg = SweepConfig(tuple(a.ns), tuple(a.mus), TensorGrid(check_tables=not a.no_tables), a.workers, a.out)
    result = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump(result, fh, indent=1, sort_keys=True)
    return 0 if result["total_mismatches"] == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
