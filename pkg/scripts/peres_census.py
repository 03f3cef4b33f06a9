"""Orthogonality census of Peres-33 and the effect of deleting each ray.

Prints the pair/triad counts, the solver verdict with the external SAT
cross-check, then the coloring count of every 32-ray subset.
"""

from kslab import external
from kslab.catalog import gen_peres_33
from kslab.ks import build_structure, export_cnf, import_cnf_result, search_colorings


def main():
    d = gen_peres_33()
    st = build_structure(d)
    rep = search_colorings(st, count_all=True)
    check = import_cnf_result(st, external.solve_dimacs(export_cnf(st)), rep)
    print(f"rays={len(d)} pairs={len(st.pairs)} triads={len(st.triads)}")
    print(f"status={rep.status.value} count={rep.count} nodes={rep.nodes_explored} external_agrees={check.agree}")
    print("ray  components              triads  colorings-without")
    for i, r in enumerate(d):
        n = search_colorings(d.without(i), count_all=True).count
        print(f"{i:3d}  {r!r:24s}  {len(st.triads_of[i]):5d}  {n:8d}")


if __name__ == "__main__":
    main()
