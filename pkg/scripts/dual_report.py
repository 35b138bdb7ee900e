"""Write the dual-presentation report for A(n,2,mu,-1), or a datum file, as JSON."""

import argparse
import json

from dhopf.hopf_core import cyclic_datum, datum_from_json, validate_group_datum, verify_dual_presentation


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[2, 4, 6])
    ap.add_argument("--datum", help="group datum JSON file instead of the cyclic family")
    ap.add_argument("--out")
    a = ap.parse_args(argv)
    if a.datum:
        with open(a.datum) as fh:
            data = {a.datum: datum_from_json(json.load(fh))}
    else:
        data = {f"n={n},mu={mu}": cyclic_datum(n, (1, 2), mu) for n in a.ns for mu in (0, 1)}
    doc = {}
    for key, alpha in data.items():
        if not validate_group_datum(alpha).valid:
            continue
        doc[key] = verify_dual_presentation(alpha).to_dict()
    text = json.dumps(doc, indent=1, sort_keys=True)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    main()
