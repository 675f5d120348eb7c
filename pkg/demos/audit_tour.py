"""Run every claim suite over the standard corpus and list the instances that fail.

    python3 demos/audit_tour.py [--purity rd|ideal|cohn]
"""

from __future__ import annotations

import argparse

from puremod.corpus import standard_corpus
from puremod.suites import SEARCH_PROPERTIES, SUITES, counterexample_search, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--purity", default=None)
    ap.add_argument("--search", action="store_true", help="also run the bounded searches")
    args = ap.parse_args()

    corpus = standard_corpus()
    print(f"corpus: {len(corpus)} modules")
    for sid in SUITES:
        rep = run_suite(sid, corpus, args.purity)
        for c in rep.claims:
            label = c.claim_id + (f" [{c.kind}]" if c.kind else "")
            line = f"{label:<40} {c.status:<34} {c.passes}/{c.instances_checked}"
            if c.undecided:
                line += f" (+{len(c.undecided)} undecided)"
            print(line)
            for f in c.failures:
                print(f"    fails on {f['instance']}")
    if args.search:
        for prop in SEARCH_PROPERTIES:
            r = counterexample_search(prop)
            print(f"search {prop}: {r['status']} after {r['checked']} checks")


if __name__ == "__main__":
    main()
