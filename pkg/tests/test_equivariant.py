import random
from dataclasses import replace

from p2bott.equivariant import (
    V_STANDARD,
    V_WEDGE,
    VirtualTable,
    ext1_table,
    fixed_modules,
    hom,
    normal_table,
    tensor_fixed,
    zero_part_roots,
)
from p2bott.fixed_loci import DecoratedTable, assemble_components
from p2bott.lattice import Character, coord


def _table(n, roots):
    t = DecoratedTable(n)
    for ch, cls, m in roots:
        t.add(ch, cls, m)
    return t


def _random_table(rng, n, max_roots=5):
    t = DecoratedTable(n)
    for _ in range(rng.randint(1, max_roots)):
        ch = Character(rng.randint(-4, 4), rng.randint(-4, 4))
        cls = tuple(rng.choice((0, 0, 1)) for _ in range(n))
        t.add(ch, cls, rng.randint(1, 3))
    return t


def test_hom_end_of_line():
    zero = ()
    t = _table(0, [(Character(2, -1), zero, 1)])
    h = hom(t, t)
    assert h.entries == {Character(0, 0): {(): 1}}


def test_hom_dual_decoration():
    a = _table(2, [(Character(1, 0), (1, 0), 1)])
    b = _table(2, [(Character(0, 2), (0, 0), 1)])
    h = hom(a, b)
    assert h.entries == {Character(-1, 2): {(-1, 0): 1}}


def test_hom_rank_multiplicative():
    rng = random.Random(41)
    for _ in range(50):
        n = rng.randint(0, 3)
        a, b = _random_table(rng, n), _random_table(rng, n)
        assert hom(a, b).rank() == a.rank() * b.rank()


def test_hom_self_contains_identity_block():
    rng = random.Random(43)
    for _ in range(50):
        n = rng.randint(0, 2)
        a = _random_table(rng, n)
        h = hom(a, a)
        diag = sum(m * m for _, _, m in a.roots())
        assert h.entries.get(Character(0, 0), {}).get((0,) * n, 0) >= diag


def test_tensor_fixed_examples():
    assert tensor_fixed(V_STANDARD, VirtualTable(0)).entries == {}
    t = VirtualTable(0)
    t.add(Character(0, 0), (), 1)
    out = tensor_fixed(V_STANDARD, t)
    assert out.entries == {
        Character(0, 0): {(): 1},
        Character(1, 0): {(): 1},
        Character(0, 1): {(): 1},
    }
    rng = random.Random(47)
    a = _random_table(rng, 2)
    assert tensor_fixed(V_WEDGE, a).rank() == 3 * a.rank()


def test_fixed_module_weights():
    std, wedge = fixed_modules()
    assert set(std) == {Character(0, 0), Character(1, 0), Character(0, 1)}
    assert set(wedge) == {Character(1, 1), Character(1, 0), Character(0, 1)}
    rstd, rwedge = fixed_modules(reflect=True)
    assert set(rstd) == {-w for w in std}
    assert set(rwedge) == {-w for w in wedge}


def test_ext1_k1_empty():
    comp = assemble_components(1)[0]
    assert ext1_table(comp).entries == {}
    assert normal_table(comp).entries == {}


def test_ext1_k2_rank4():
    for comp in assemble_components(2):
        t = ext1_table(comp)
        assert t.rank() == 4
        assert all(r >= 0 for r in t.char_ranks().values())


def test_ext1_k2_first_component_frozen():
    # hand-computed table for d=0, a=(1,2,2), normalized s=(1,-2,-2)
    comp = assemble_components(2)[0]
    assert comp.a == (1, 2, 2) and comp.s == (1, -2, -2)
    t = ext1_table(comp)
    assert t.char_ranks() == {
        Character(1, -1): 1,
        Character(-1, 1): 1,
        Character(-1, 0): 1,
        Character(0, -1): 1,
    }


def test_ext1_translation_invariance():
    rng = random.Random(53)
    for comp in assemble_components(3):
        w = Character(rng.randint(-5, 5), rng.randint(-5, 5))
        s = tuple(comp.s[i] + coord(w, i) for i in range(3))
        assert ext1_table(replace(comp, s=s)) == ext1_table(comp)


def test_normal_rank_and_zero_part():
    for k in (2, 3, 4):
        for comp in assemble_components(k):
            nt = normal_table(comp)
            assert nt.rank() == 4 * (k - 1) - comp.n_factors
            assert Character(0, 0) not in nt.entries


def test_zero_part_chern_is_product_of_tangent_lines():
    from p2bott.chow import TruncPoly

    seen_positive = 0
    for k in (2, 3, 4):
        for comp in assemble_components(k):
            n = comp.n_factors
            seen_positive += n > 0
            chern = TruncPoly.one(n)
            for cls, m in zero_part_roots(comp):
                chern = chern * (TruncPoly.linear(n, 1, cls) ** m)
            want = TruncPoly.one(n)
            for f in range(n):
                want = want * TruncPoly.linear(n, 1, tuple(2 * (i == f) for i in range(n)))
            assert chern == want, comp.label()
    assert seen_positive > 0
