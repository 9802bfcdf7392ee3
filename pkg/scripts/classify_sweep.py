"""Classify the seed of each class-V family over a range of s values."""
import argparse
from fractions import Fraction

from gradedlca.catalog import build_family
from gradedlca.classifier import Impossible, VSeed, classify_v

FAMILIES = [("CL2", {"b": 0}), ("CL3", {}), ("ECL", {}), ("SCL2", {"b": 0})]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--values", default="0,1,-2,3/5,free")
    ap.add_argument("-N", type=int, default=4, help="extend the seed to degrees -N..N")
    args = ap.parse_args(argv)
    values = [v if v == "free" else Fraction(v) for v in args.values.split(",")]
    print(f"{'family':<10}{'s':>6}  {'tag':<10}{'found s':<10}checks")
    for tag, fixed in FAMILIES:
        for s in values:
            A = build_family(tag, {**fixed, "s": s}, (-args.N, args.N), check=False)
            st = classify_v(VSeed.from_algebra(A), args.N)
            if isinstance(st, Impossible):
                print(f"{tag:<10}{str(s):>6}  Impossible at {st.step}")
                continue
            print(f"{tag:<10}{str(s):>6}  {st.tag:<10}{str(st.s):<10}{'ok' if st.ok else 'FAILED'}")
    for tag in ("CurG", "M1", "M2"):
        st = classify_v(VSeed.from_algebra(build_family(tag, {}, check=False)), args.N)
        print(f"{tag:<10}{'-':>6}  {st.tag:<10}{'-':<10}{'ok' if st.ok else 'FAILED'}")


if __name__ == "__main__":
    main()
