"""Time recognition of a^n on G0 and print the ratio per doubling."""
import argparse
import statistics
import time

from regform.fixtures import load_fixture
from regform.recognizer import recognize, recognizer_for


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--grammar", default="G0")
    p.add_argument("--token", default="a")
    p.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    p.add_argument("--repeats", type=int, default=5)
    args = p.parse_args()
    g = load_fixture(args.grammar)
    recognizer_for(g)
    prev = None
    print(f"{'n':>6} {'median s':>10} {'ratio':>7}")
    for n in args.sizes:
        w = [args.token] * n
        runs = []
        for _ in range(args.repeats):
            t = time.perf_counter()
            recognize(g, w)
            runs.append(time.perf_counter() - t)
        med = statistics.median(runs)
        ratio = f"{med / prev:7.2f}" if prev else "      -"
        print(f"{n:>6} {med:>10.4f} {ratio}")
        prev = med


if __name__ == "__main__":
    main()
