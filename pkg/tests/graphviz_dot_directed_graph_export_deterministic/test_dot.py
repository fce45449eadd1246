from bdcluster.cluster import Quiver, export_dot, seed_quiver


def test_single_vertex():
    text = export_dot(Quiver(["f11"], {"f11": True}), "q")
    assert text.splitlines() == ["digraph q {", "  f11 [shape=circle];", "}"]


def test_weights_and_frozen_shapes():
    q = Quiver(["a", "b", "c"], {"a": True, "b": True, "c": False})
    q.add("b", "a", 2)
    q.add("a", "c")
    lines = export_dot(q).splitlines()
    assert "  c [shape=box];" in lines
    assert lines[4:6] == ["  a -> c;", '  b -> a [label="2"];']


def test_export_is_deterministic(pipelines):
    q = seed_quiver(pipelines(2).seed_mat5)
    a = export_dot(q, "case2")
    shuffled = Quiver(list(q.vertices), dict(q.mutable), dict(reversed(list(q.edges.items()))))
    assert export_dot(shuffled, "case2") == a
    assert "  f51 -> f12;" in a.splitlines()
    assert a.endswith("}\n")
