"""Walk through the structure machinery on a handful of groups:
radical, socle, the layered series, and Frattini subgroups.
"""

from permlaw import corpus
from permlaw.structure import (
    frattini,
    nonabelian_socle,
    rs_series,
    solvable_radical,
)


def show_series(group):
    series = rs_series(group)
    print(f"\n{group.name}: order {group.order()}")
    for layer in series.layers:
        extra = ""
        if layer.kind == "S" and layer.component_orders:
            extra = f"  components={layer.component_count}x{layer.component_order}"
        print(f"  {layer.kind}{layer.index}  order={layer.subgroup.order()}{extra}")
    print(f"  nonsolvable length = {series.lamda}")


def main():
    print("== solvable radicals and socles ==")
    s5 = corpus.symmetric(5)
    print("radical of s5:", solvable_radical(s5).order())
    print("socle of s5:", nonabelian_socle(s5).order(), "(the alternating subgroup)")

    c6xa5 = corpus.direct_product(corpus.cyclic(6), corpus.alternating(5))
    print("radical of c6 x a5:", solvable_radical(c6xa5).order(), "(the cyclic factor)")

    print("\n== layered series ==")
    show_series(corpus.symmetric(4))
    show_series(s5)
    show_series(corpus.psl2(8))
    show_series(corpus.wreath(corpus.alternating(5), corpus.alternating(5)))

    print("\n== Frattini subgroups ==")
    print("frattini of c4:", frattini(corpus.cyclic(4)).order())
    print("frattini of s4:", frattini(corpus.symmetric(4)).order())


if __name__ == "__main__":
    main()
