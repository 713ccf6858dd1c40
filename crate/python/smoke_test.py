"""Smoke test for the pygcis extension.

Build it first:  pip install --no-build-isolation -e crates/python
"""

import random

import pygcis


def naive_sa(text):
    t = [b + 1 for b in text] + [0]
    return sorted(range(len(t)), key=lambda i: t[i:])


def main():
    rng = random.Random(5)
    seed = bytes(rng.randrange(256) for _ in range(2000))
    text = pygcis.gen_repetitive(seed, 50, 0.002, 7)
    assert len(text) == 100_000

    for profile in ("s8b", "ef"):
        blob = pygcis.compress(text, profile)
        assert pygcis.decompress(blob) == text
        info = pygcis.info(blob)
        assert info["total_bytes"] == len(blob)
        assert info["profile"] == profile

    g = pygcis.Grammar.compress(text)
    assert len(g) == len(text) and g.depth >= 1
    assert g.decompress() == text
    assert pygcis.Grammar.from_bytes(g.to_bytes("ef")).decompress() == text

    ex = pygcis.Extractor.from_bytes(g.to_bytes("ef"))
    for _ in range(200):
        l = rng.randrange(len(text) + 1)
        r = min(len(text), l + rng.randrange(300))
        assert ex.extract(l, r) == text[l:r]
    try:
        ex.extract(0, len(text) + 1)
    except IndexError:
        pass
    else:
        raise AssertionError("out-of-range extraction must fail")

    small = b"mississippi banana"
    sa, lcp = pygcis.Grammar.compress(small).suffix_lcp()
    assert sa == naive_sa(small)
    assert pygcis.Grammar.compress(b"banana").suffix_lcp() == (
        [6, 5, 3, 1, 0, 4, 2],
        [0, 0, 1, 3, 0, 0, 2],
    )

    try:
        pygcis.decompress(b"not a container")
    except pygcis.GcisError:
        pass
    else:
        raise AssertionError("junk must be rejected")
    try:
        pygcis.Extractor.from_bytes(pygcis.compress(small, "s8b"))
    except pygcis.GcisError as e:
        assert "random access" in str(e)
    else:
        raise AssertionError("sequential profile has no extractor")

    print("pygcis smoke test: ok")


if __name__ == "__main__":
    main()
