import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from locallab.viewtree import ViewTree, leaf, views_equal


def trees(max_depth=3, labeled=False):
    label = st.integers(0, 2) if labeled else st.none()
    base = st.builds(ViewTree, label)
    return st.recursive(
        base,
        lambda kids: st.builds(ViewTree, label, st.lists(st.tuples(kids, st.integers(1, 3)), max_size=3)),
        max_leaves=12,
    )


def test_merge_multiplicities():
    a = ViewTree(None, [leaf(), leaf(), (leaf(), 3)])
    assert a.children == ((leaf(), 5),)
    assert a.degree == 5
    assert a.size() == 6


def test_zero_multiplicity_dropped_and_negative_rejected():
    assert ViewTree(None, [(leaf(), 0)]) == leaf()
    with pytest.raises(ValueError):
        ViewTree(None, [(leaf(), -1)])


def test_order_independent():
    x = ViewTree(None, [leaf()])
    assert ViewTree(None, [x, leaf()]) == ViewTree(None, [leaf(), x])


def test_labels_matter():
    assert ViewTree(1) != ViewTree(2)
    assert ViewTree(1, [leaf(3)]).unlabeled() == ViewTree(None, [leaf()])


def test_truncate_and_views_equal():
    deep = ViewTree(None, [ViewTree(None, [leaf()])])
    shallow = ViewTree(None, [leaf()])
    assert deep.truncate(1) == shallow
    assert deep.truncate(0) == leaf()
    assert views_equal(deep, shallow, 1)
    assert not views_equal(deep, shallow, 2)
    assert views_equal(leaf(), deep, 0)
    with pytest.raises(ValueError):
        deep.truncate(-1)


@settings(max_examples=200, deadline=None)
@given(trees(labeled=True), st.integers(0, 4))
def test_truncation_is_valid_tree(t, r):
    cut = t.truncate(r)
    assert cut.height <= r
    assert cut.truncate(r) is cut
    assert views_equal(t, cut, r)


@settings(max_examples=200, deadline=None)
@given(trees(labeled=True), trees(labeled=True))
def test_equality_iff_key(a, b):
    assert (a == b) == (a.key == b.key)


@settings(max_examples=100, deadline=None)
@given(trees(), st.randoms(use_true_random=False))
def test_canonical_under_child_permutation(t, rnd):
    def shuffled(node):
        kids = [(shuffled(c), m) for c, m in node.children]
        rnd.shuffle(kids)
        # split multiplicities into single copies to exercise merging
        flat = [c for c, m in kids for _ in range(m)]
        rnd.shuffle(flat)
        return ViewTree(node.label, flat)

    assert shuffled(t) == t


def test_interning_is_thread_safe():
    out = []

    def build():
        out.append(ViewTree(7, [(ViewTree(8, [leaf(9)]), 2)]))

    threads = [threading.Thread(target=build) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert len({t.uid for t in out}) == 1
