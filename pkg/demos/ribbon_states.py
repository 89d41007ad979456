"""Stack and sum the elementary ribbons and compare their states.

    python3 demos/ribbon_states.py
"""

from twohol import ribbon as rb
from twohol import wilson as w
from twohol.group_core import builtin


def show(label, state):
    print("%s  %d x %d" % (label, *state.shape))
    for (b0, b1), v in sorted(state.table.items()):
        print("   %s -> %s : %s" % (b0, b1, v))


def main():
    cm = builtin("cm_02")
    cup, cap = rb.cup(), rb.cap()
    show("cup", w.evaluate(cm, cup))

    s = rb.connected_sum(cup, cap, ((0, 0),))
    tensor = w.tensor_with_collar(cm, w.evaluate(cm, cup), w.evaluate(cm, cap), w.collars(cup, cap, ((0, 0),)))
    print("\ncup # cap along one marking pair equals the collar-weighted product:", w.evaluate(cm, s) == tensor)

    closed = rb.stack(rb.connected_sum(cup, cap, ((0, 0), (1, 1))), rb.house())
    show("\ncup # cap closed by a cap-off disc", w.evaluate(cm, closed))

    x = rb.stack(rb.stack(rb.b_plus(), rb.crossing_change()), rb.b_times())
    print("\nB+ => Bx => Bx census:", x.polyhedron().census())

    family = [rb.cone_to_point(rb.circle_graph()), closed,
              rb.stack(rb.identity_cylinder(rb.circle_graph()), rb.house())]
    gram, ok = w.reflection_positivity_check(cm, family)
    print("\nGram matrix of three discs on the circle:")
    for row in gram:
        print("  ", [str(x) for x in row])
    print("positive semidefinite:", ok)


if __name__ == "__main__":
    main()
