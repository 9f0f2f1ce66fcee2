"""Builds corpus_fixture.jsonl: 200 hand-labelled synthetic sentences over 50
charts. Deterministic; rerun after editing to refresh the fixture.

Totals the tests rely on:
  charts 50: bar 18, line 21, scatter 11; academic 15, business 18,
  journalism 17; easy 21, medium 20, hard 9
  levels: L1 18, L2 70, L3 86, L4 26 (9%, 35%, 43%, 13%)
  chart A: one description with levels 1,2,3,3,4,3,2,3,4,3
  chart V02: twelve one-sentence descriptions
"""
import json
import random
from pathlib import Path

rng = random.Random(2021)

TYPES = ["bar"] * 18 + ["line"] * 21 + ["scatter"] * 11
TOPICS = ["academic"] * 15 + ["business"] * 18 + ["journalism"] * 17
DIFFICULTY = ["easy"] * 21 + ["medium"] * 20 + ["hard"] * 9
for seq in (TYPES, TOPICS, DIFFICULTY):
    rng.shuffle(seq)

# chart A is the mortality bar chart
i = TYPES.index("bar")
TYPES[0], TYPES[i] = TYPES[i], TYPES[0]

CHARTS = ["A"] + [f"V{n:02d}" for n in range(2, 51)]

PHRASES = {
    1: ["This is a {t} chart with a title.", "The x-axis shows the categories.",
        "The y-axis runs from zero to the maximum.", "Colors mark the series."],
    2: ["The highest value is in the last group.", "The average is about twelve.",
        "The lowest value is shared by three groups.", "One group is twice the other."],
    3: ["The values rise steadily.", "There is a sharp drop near the end.",
        "The series seem to fluctuate but increase.", "The two clusters are well separated."],
    4: ["This likely reflects the recession.", "Policy changes explain the jump.",
        "Older people are more vulnerable.", "The market was recovering at the time."],
}

A_LEVELS = [1, 2, 3, 3, 4, 3, 2, 3, 4, 3]
V02_LEVELS = [1, 2, 2, 3, 3, 3, 3, 2, 4, 3, 2, 3]
TARGET = {1: 18, 2: 70, 3: 86, 4: 26}

remaining = dict(TARGET)
for lv in A_LEVELS + V02_LEVELS:
    remaining[lv] -= 1
pool = [lv for lv, n in remaining.items() for _ in range(n)]
rng.shuffle(pool)

descriptions = {"A": [("P01", A_LEVELS)], "V02": [(f"P{n:02d}", [lv]) for n, lv in enumerate(V02_LEVELS, 1)]}
others = CHARTS[2:]
# every other chart gets at least one description of 2-6 sentences
for chart in others:
    descriptions[chart] = []
cursor = 0
chart_cycle = 0
while cursor < len(pool):
    chart = others[chart_cycle % len(others)]
    first_pass = chart_cycle < len(others)
    chart_cycle += 1
    size = rng.randint(2, 4) if first_pass else rng.randint(2, 6)
    size = min(size, len(pool) - cursor)
    levels = pool[cursor:cursor + size]
    cursor += size
    levels.sort(key=lambda lv: (lv != 1, rng.random()))
    descriptions[chart].append((f"P{len(descriptions[chart]) + 1:02d}", levels))

lines = []
for idx, chart in enumerate(CHARTS):
    for pid, levels in descriptions[chart]:
        for s, lv in enumerate(levels):
            text = rng.choice(PHRASES[lv]).format(t=TYPES[idx])
            lines.append(json.dumps({
                "chart_id": chart, "chart_type": TYPES[idx], "topic": TOPICS[idx],
                "difficulty": DIFFICULTY[idx], "participant_id": pid, "sentence_index": s,
                "text": text, "level": lv,
            }))

assert len(lines) == 200
Path(__file__).with_name("corpus_fixture.jsonl").write_text("\n".join(lines) + "\n")
