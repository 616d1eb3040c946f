"""Regenerate the standard fixture tables in src/leftq/data."""
from pathlib import Path

from leftq.extension import cyclic_affine
from leftq.table import dihedral, direct_product, projection, to_lq

OUT = Path(__file__).resolve().parents[1] / "src" / "leftq" / "data"


def standard():
    items = {f"projection_{n}": (projection(n), f"projection algebra P_{n}: x*y = y") for n in range(1, 5)}
    items["dihedral_3"] = (dihedral(3), "dihedral quandle over Z_3: x*y = 2x - y")
    items["dihedral_5"] = (dihedral(5), "dihedral quandle over Z_5: x*y = 2x - y")
    items["aff_z4_2_3_0"] = (cyclic_affine(4, 2, 3, 0), "Aff(Z_4, 2, 3, 0): x*y = 2x + 3y mod 4")
    items["aff_z3_2_2_0"] = (cyclic_affine(3, 2, 2, 0), "Aff(Z_3, 2, 2, 0): x*y = 2x + 2y mod 3")
    items["dihedral3_x_p2"] = (
        direct_product(dihedral(3), projection(2)),
        "dihedral-3 x P_2; the pair (a, b) is element 2a + b",
    )
    return items


def main():
    OUT.mkdir(exist_ok=True)
    for name, (Q, comment) in standard().items():
        (OUT / f"{name}.lq").write_text(to_lq(Q, comment))
        print("wrote", name)


if __name__ == "__main__":
    main()
