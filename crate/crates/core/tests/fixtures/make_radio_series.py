"""Writes golden/radio_article_730d.csv by recounting the bundled corpus.

Tokens are maximal runs of letters, lowercased. Each document contributes
(radio + radios matches) / tokens; bins are 730 days from the earliest document.
"""
import datetime as dt
import json
import re

WORD = re.compile(r"[^\W\d_]+")
FORMS = {"radio", "radios"}

docs = [json.loads(l) for l in open("../../data/mini_corpus.jsonl") if l.strip()]
start = min(dt.date.fromisoformat(d["date"]) for d in docs)
last = max(dt.date.fromisoformat(d["date"]) for d in docs)
n_bins = (last - start).days // 730 + 1
bins = [[] for _ in range(n_bins)]
for d in docs:
    if d["type"] != "article":
        continue
    toks = [t.lower() for t in WORD.findall(d["text"])]
    if toks:
        b = (dt.date.fromisoformat(d["date"]) - start).days // 730
        bins[b].append(sum(t in FORMS for t in toks) / len(toks))

with open("golden/radio_article_730d.csv", "w") as fh:
    fh.write("bin_start,value,count\n")
    for i, vals in enumerate(bins):
        mean = sum(sorted(vals)) / len(vals) if vals else 0.0
        fh.write(f"{start + dt.timedelta(days=730 * i)},{mean!r},{len(vals)}\n")
