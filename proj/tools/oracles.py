#!/usr/bin/env python3
"""Reference values frozen into the C++ tests. Run: python3 tools/oracles.py"""
import math
from collections import Counter

import numpy as np
from scipy import stats

M64 = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for c in data:
        h ^= c
        h = (h * 0x100000001B3) & M64
    return h


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & M64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
    return z ^ (z >> 31)


def mock_embedding(text: str, seed: int, dim: int = 64) -> np.ndarray:
    counts = Counter(text.split())
    v = np.zeros(dim)
    for j in range(dim):
        salt = splitmix64((seed * 1024 + j) & M64)
        for tok, n in counts.items():
            r = splitmix64(fnv1a64(tok.encode()) ^ salt) >> 11
            v[j] += n * (2.0 * r / 2.0**53 - 1.0)
    return v


def cos(a, b):
    return float(a @ b / math.sqrt((a @ a) * (b @ b)))


def ttest():
    a = [0.91, 0.85, 0.88, 0.93, 0.79, 0.95, 0.87, 0.90, 0.84, 0.92]
    b = [0.88, 0.86, 0.81, 0.90, 0.80, 0.89, 0.85, 0.86, 0.83, 0.87]
    r = stats.ttest_rel(a, b, alternative="greater")
    print(f"ttest t={r.statistic!r} p={r.pvalue!r}")


def tfidf():
    docs = ["the cat sat on the mat", "the dog sat", "a cat and a dog"]
    toks = [d.split() for d in docs]
    n = len(docs)
    df = Counter(t for d in toks for t in set(d))
    idf = {t: math.log((n + 1) / (c + 1)) + 1 for t, c in df.items()}

    def vec(ts):
        tf = Counter(t for t in ts if t in idf)
        v = {t: c * idf[t] for t, c in tf.items()}
        norm = math.sqrt(sum(w * w for w in v.values()))
        return {t: w / norm for t, w in v.items()}

    q = vec("cat mat".split())
    for i, d in enumerate(toks):
        dv = vec(d)
        print(f"tfidf doc{i} score={sum(w * dv.get(t, 0) for t, w in q.items())!r}")
    print(f"tfidf idf(the)={idf['the']!r} idf(mat)={idf['mat']!r}")


def embeddings():
    a, b = mock_embedding("a", 1), mock_embedding("b", 1)
    print(f"embed cos(a,b) seed1={cos(a, b)!r}")
    v = mock_embedding("a b a", 1)
    print(f"embed 'a b a' seed1 v[0:3]={v[0]!r} {v[1]!r} {v[2]!r}")
    print(f"splitmix64(0)={splitmix64(0)} fnv1a64('a')={fnv1a64(b'a')}")




def rouge_f(cand: str, ref: str) -> float:
    a, b = cand.split(), ref.split()
    dp = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a)):
        for j in range(len(b)):
            dp[i + 1][j + 1] = dp[i][j] + 1 if a[i] == b[j] else max(dp[i][j + 1], dp[i + 1][j])
    lcs = dp[-1][-1]
    if lcs == 0:
        return 0.0
    p, r = lcs / len(a), lcs / len(b)
    return 2 * p * r / (p + r)


def rex_shapley():
    from itertools import permutations

    source = "The German shepherd named Rex barked loudly at the mail carrier at 7:00 AM."

    def text(s):
        breed = "The German shepherd" if 0 in s else "A dog"
        name, article = (" named Rex", "the") if 1 in s else ("", "a")
        time = " at 7:00 AM" if 2 in s else ""
        return f"{breed}{name} barked loudly at {article} mail carrier{time}."

    v = lambda s: rouge_f(text(s), source)
    phi = [0.0] * 3
    perms = list(permutations(range(3)))
    for order in perms:
        seen = set()
        for p in order:
            phi[p] += v(seen | {p}) - v(seen)
            seen.add(p)
    print("rex phi", [repr(x / len(perms)) for x in phi], "v(N)-v(0)", repr(v({0, 1, 2}) - v(set())))


if __name__ == "__main__":
    ttest()
    tfidf()
    embeddings()
    rex_shapley()
