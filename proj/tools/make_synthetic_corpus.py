#!/usr/bin/env python3
"""Writes an E2E-style test corpus of unique meaning representations.

The real E2E test split is not redistributed with this repository, so the
bundled corpus is drawn from the same attribute inventory with a fixed seed.
The output uses the E2E CSV conventions (header ``mr,ref``, one quoted MR
field, ``customer rating`` spelled with a space, repeated MR rows carrying
alternative references).

    python3 tools/make_synthetic_corpus.py --count 278 --out data/e2e_test_synthetic.csv
"""

import argparse
import csv
import random

NAMES = [
    "Browns Cambridge", "The Vaults", "The Wrestlers", "Fitzbillies", "The Cricketers",
    "Blue Spice", "The Rice Boat", "Loch Fyne", "The Golden Palace", "The Mill",
    "Wildwood", "The Plough", "Green Man", "Giraffe", "Aromi", "Taste of Cambridge",
    "The Twenty Two", "Clowns", "The Punter", "The Phoenix", "The Olive Grove",
    "Midsummer House", "Bibimbap House", "Alimentum", "The Dumpling Tree", "The Eagle",
    "Travellers Rest Beefeater", "Cocum", "The Cambridge Blue", "The Golden Curry",
    "Zizzi", "Strada", "Cotto", "The Waterman",
]
NEAR = [
    "Café Sicilia", "Burger King", "Crowne Plaza Hotel", "The Portland Arms",
    "Raja Indian Cuisine", "All Bar One", "Rainbow Vegetarian Café",
    "Express by Holiday Inn", "Ranch", "Clare Hall", "Avalon", "The Bakers",
    "Café Rouge", "Yippee Noodle Bar", "The Sorrento", "Café Brazil", "Café Adriatic",
    "The Six Bells", "Little Seoul", "Adriatic",
]
VALUES = {
    "eatType": ["pub", "coffee shop", "restaurant"],
    "food": ["Chinese", "English", "Fast food", "French", "Indian", "Italian", "Japanese"],
    "priceRange": ["cheap", "moderate", "high", "less than £20", "£20-25", "more than £30"],
    "customer rating": ["low", "average", "high", "1 out of 5", "3 out of 5", "5 out of 5"],
    "area": ["city centre", "riverside"],
    "familyFriendly": ["yes", "no"],
    "near": NEAR,
}
ORDER = ["eatType", "food", "priceRange", "customer rating", "area", "familyFriendly", "near"]
# Test MRs skew towards more attributes.
SIZE_WEIGHTS = {2: 8, 3: 17, 4: 25, 5: 25, 6: 15, 7: 10}


def reference(rng, name, attrs):
    parts = [f"{name} is a {attrs.get('eatType', 'place')}"]
    if "food" in attrs:
        food = attrs["food"]
        parts.append(f"serving {food}" if food.endswith("food") else f"serving {food} food")
    if "priceRange" in attrs:
        parts.append(f"with a {attrs['priceRange']} price range")
    if "customer rating" in attrs:
        parts.append(f"rated {attrs['customer rating']} by customers")
    if "area" in attrs:
        parts.append(f"in the {attrs['area']}")
    if "near" in attrs:
        parts.append(f"near {attrs['near']}")
    text = " ".join(parts) + "."
    if "familyFriendly" in attrs:
        text += " It is " + ("" if attrs["familyFriendly"] == "yes" else "not ") + "family friendly."
    if rng.random() < 0.5:
        text = text.replace(" is a ", " is a lovely ", 1)
    return text


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=278)
    ap.add_argument("--seed", type=int, default=20180903)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    sizes = list(SIZE_WEIGHTS)
    weights = [SIZE_WEIGHTS[s] for s in sizes]
    seen = set()
    rows = []
    while len(seen) < args.count:
        name = rng.choice(NAMES)
        k = rng.choices(sizes, weights)[0]
        keys = sorted(rng.sample(ORDER, k), key=ORDER.index)
        attrs = {key: rng.choice(VALUES[key]) for key in keys}
        mr = ", ".join([f"name[{name}]"] + [f"{key}[{attrs[key]}]" for key in keys])
        if mr in seen:
            continue
        seen.add(mr)
        for _ in range(rng.choice([1, 1, 2, 3])):
            rows.append((mr, reference(rng, name, attrs)))

    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_ALL, lineterminator="\n")
        writer.writerow(["mr", "ref"])
        writer.writerows(rows)


if __name__ == "__main__":
    main()
