"""Generate the bundled toy corpus (20 dialogues, 4 candidates each).

The output is committed under src/sicf/data/toy/; rerun this script only
when the corpus needs to change. Candidate 0 tracks the reference closely
and quality degrades toward candidate 3, so scores spread enough for the
selection and elimination paths to be exercised.
"""

import argparse
import json
import random
from pathlib import Path

NAMES = ["Anna", "Ben", "Clara", "Dan", "Eva", "Finn", "Greta", "Hugo", "Iris", "Jonas"]
NOUNS = [
    "party", "birthday", "cake", "picnic", "park", "train", "ticket", "meeting",
    "report", "deadline", "movie", "dinner", "restaurant", "trip", "hotel",
    "concert", "guitar", "garden", "flowers", "recipe", "coffee", "museum",
    "bike", "laptop", "photo", "wedding", "gift", "exam", "homework", "game",
]
DAYS = ["monday", "tuesday", "friday", "saturday", "sunday"]


def make_dialogue(rng: random.Random, idx: int) -> tuple[dict, dict]:
    a, b = rng.sample(NAMES, 2)
    n1, n2, n3, off1, off2 = rng.sample(NOUNS, 5)
    day = rng.choice(DAYS)
    style = idx % 4

    if style == 0:
        turns = [
            f"{a}: Are we still on for the {n1} on {day}?",
            f"{b}: Yes, I already got the {n2}.",
            f"{a}: Great. I will bring the {n3}.",
            f"{b}: Perfect, see you then.",
        ]
        summary = f"{a} and {b} confirm the {n1} on {day}. {b} got the {n2} and {a} brings the {n3}."
    elif style == 1:
        turns = [
            f"{a}: Did you finish the {n1}?",
            f"{b}: Not yet, the {n2} took all morning.",
            f"{a}: The {n1} is due on {day}.",
            f"{b}: I know. I will finish it after the {n3}.",
        ]
        summary = f"{b} has not finished the {n1} because of the {n2}. It is due on {day}."
    elif style == 2:
        turns = [
            f"{a}: I found a nice {n1} for the {n2}.",
            f"{b}: How much is it?",
            f"{a}: Less than the {n3} we saw on {day}.",
            f"{b}: Then take it.",
        ]
        summary = f"{a} found a {n1} for the {n2} and {b} agrees to take it."
    else:
        turns = [
            f"{a}: The {n1} starts at seven.",
            f"{b}: Should we meet at the {n2} first?",
            f"{a}: Yes, and bring your {n3}.",
        ]
        summary = f"{a} and {b} meet at the {n2} before the {n1}. {b} brings the {n3}."

    candidates = [
        summary,
        f"{a} and {b} talk about the {n1} and the {n2}.",
        f"{a} and {b} make a plan together.",
        f"They mention a {off1} and a {off2}.",
    ]
    rotation = idx % 4
    candidates = candidates[rotation:] + candidates[:rotation]
    did = f"d{idx:02d}"
    return (
        {"id": did, "dialogue": turns, "summary": summary},
        {"id": did, "candidates": candidates},
    )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="src/sicf/data/toy", help="output directory")
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dialogues = []
    candidates = []
    for idx in range(1, args.count + 1):
        d, c = make_dialogue(rng, idx)
        dialogues.append(d)
        candidates.append(c)
    with (out / "dialogues.jsonl").open("w", encoding="utf-8") as fh:
        for rec in dialogues:
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
    with (out / "candidates.jsonl").open("w", encoding="utf-8") as fh:
        for rec in candidates:
            fh.write(json.dumps(rec, ensure_ascii=False, sort_keys=True) + "\n")
    print(f"wrote {len(dialogues)} dialogues to {out}")


if __name__ == "__main__":
    main()
