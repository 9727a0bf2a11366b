"""Print the auxiliary-graph pictogram for a representative of each tree family."""

import argparse

from rbx.cli import render_pictogram
from rbx.embedding import h0_construction
from rbx.trees import describe_tree, path_tree, pendant_tree, spider_tree, star_tree

EXAMPLES = [
    ("path", path_tree(8)),
    ("pendant", pendant_tree(star_tree(2), 7, 0)),
    ("leaves", spider_tree([3, 1, 1, 1, 1])),
    ("even_spider", spider_tree([4, 2, 2])),
    ("three_spider", spider_tree([3, 3])),
    ("three_spider", spider_tree([3, 3, 3])),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", help="only show this family")
    args = ap.parse_args()
    for case, T in EXAMPLES:
        if args.case and case != args.case:
            continue
        ordering, H = h0_construction(T, case)
        rep = H.report
        print(f"{case}: {describe_tree(T)}  k={T.k}  |H0|={len(H.h0)}  "
              f"checks {'ok' if rep.ok else 'FAILED'} on {rep.paths_checked} even paths")
        print(render_pictogram(H))


if __name__ == "__main__":
    main()
