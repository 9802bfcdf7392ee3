"""Regenerate the JSON documents under fixtures/."""
import argparse
from pathlib import Path

from gradedlca.fixtures import ecl_witness_doc, mutations
from gradedlca.serialize import algebra_to_json, dumps

SYMBOLIC = {k: "free" for k in ("a", "b", "c", "e", "f", "g", "h")}

DOCS = {
    "degsum1_dm.json": {"params": SYMBOLIC, "p_neg1_1": "a*d + c", "p01": "e",
                        "p11": "f*(d+2*x)", "p_neg1_neg1": "g*(d+2*x)", "p0_neg1": "h"},
    "degsum1_d0.json": {"params": SYMBOLIC, "p_neg1_1": "a", "p01": "b*x + c",
                        "p11": "f*(d+2*x)", "p_neg1_neg1": "g*(d+2*x)", "p0_neg1": "e*x + h"},
    "degsum1_seed.json": {"p_neg1_1": "1", "p01": "x", "p11": "d+2*x", "p_neg1_neg1": "d+2*x",
                          "p0_neg1": "-x"},
    "cl2_seed.json": {"params": {"s": "free"}, "p_neg1_1": "-d - 2*s", "p01": "x - s",
                      "p11": "d + 2*x", "p_neg1_neg1": "-d - 2*x", "p0_neg1": "-x + s"},
    "malformed_seed.json": {"p_neg1_1": "d +", "p01": "x", "p11": "0", "p_neg1_neg1": "0",
                            "p0_neg1": "-x"},
    "scl2_submodule_b0.json": {"parts": {**{str(n): "1" for n in range(-5, 6)}, "0": "d+2*s"}},
    "ecl_witness.json": ecl_witness_doc((-5, 5)),
    "vir.json": {"name": "Vir", "support": {"window": [0, 0]}, "brackets": [{"i": 0, "j": 0, "poly": "d + 2*x"}]},
}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    docs = dict(DOCS)
    for n, A in enumerate(mutations((-3, 3))):
        docs[f"mutation_{n:02d}.json"] = algebra_to_json(A)
    for name, doc in sorted(docs.items()):
        (out / name).write_text(dumps(doc) + "\n")
        print(out / name)


if __name__ == "__main__":
    main()
