import json

import src.config as config
from src.sweep import classify

# Settings
GOLDEN_Q = (11, 19)
RANK = 4

config.GOLDEN_DIR.mkdir(parents=True, exist_ok=True)

for q in GOLDEN_Q:
    rows = classify(q, RANK, workers=config.DEFAULT_WORKERS)
    filename = config.GOLDEN_DIR / f"sweep_q{q}_rank{RANK}.jsonl"
    with open(filename, "w") as fh:
        for row in rows:
            fh.write(row.to_json() + "\n")
    print(f"Wrote {filename} with {len(rows)} class(es).")

print(json.dumps({"golden": [str(config.GOLDEN_DIR / f"sweep_q{q}_rank{RANK}.jsonl") for q in GOLDEN_Q]}))
