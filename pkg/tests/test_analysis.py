from fractions import Fraction

import numpy as np
import pytest

from symbiotes.analysis import (Benefit, Interaction, PartClassification, Role, Species,
                                analyze, benefit_from_growth, build_species, classify_benefit,
                                classify_interaction, classify_part, classify_role,
                                count_matrix, diff_matrix, fisher_tests, growth_summary,
                                interaction_from_deltas, prolific_pairs, recolour_focal,
                                role_from_census, role_matrix, solo_growth, weighted_growth)
from symbiotes.ca import CellState, ColourCensus
from symbiotes.evolution import EvolutionConfig, LineageRecord, Provenance, RunArchive
from symbiotes.genome import Genome

P = 5
ONE = Genome(np.ones((1, 1), np.uint8))
TWO = Genome(np.array([[1, P, 1]], np.uint8))
THREE = Genome(np.array([[1, P, 1, P, 1]], np.uint8))


# Table 9 rows: (deltas, weighted, alone)
TABLE9 = [((-10, -15, 7, 29), "4.33", 3),
          ((-5, -20, 0, 36), "7.00", 50),
          ((-10, -8, 29, 0), "9.33", 79)]


def delta_census(d):
    start = ColourCensus(red=20, blue=30)
    end = ColourCensus(20 + d[0], 30 + d[1], d[2], d[3])
    return start, end


@pytest.mark.parametrize("deltas,shown,alone", TABLE9)
def test_weighted_growth_table9(deltas, shown, alone):
    w = weighted_growth(*delta_census(deltas))
    assert isinstance(w, Fraction)
    assert f"{float(w):.2f}" == shown


def test_table9_labels():
    labels = []
    for deltas, _, alone in TABLE9:
        start, end = delta_census(deltas)
        labels.append((role_from_census(end).value,
                       benefit_from_growth(weighted_growth(start, end), alone).value,
                       interaction_from_deltas(end - start).value))
    assert [l[0] for l in labels] == ["Worker", "Worker", "Manager"]
    assert [l[1] for l in labels] == ["Insider", "Outsider", "Outsider"]
    assert [l[2] for l in labels] == ["Ensemblist"] * 3


def test_decision_edges():
    assert role_from_census(ColourCensus(orange=4, green=4)) is Role.WORKER
    assert benefit_from_growth(Fraction(3), 3) is Benefit.OUTSIDER
    assert interaction_from_deltas(ColourCensus(red=10, orange=3, green=3)) is Interaction.SOLOIST
    assert interaction_from_deltas(ColourCensus()) is Interaction.SOLOIST
    assert weighted_growth(ColourCensus(1, 2, 3, 4), ColourCensus(1, 2, 3, 4)) == 0


def test_weighted_growth_is_linear(rng):
    for _ in range(100):
        a = ColourCensus(*map(int, rng.integers(0, 50, 4)))
        b = ColourCensus(*map(int, rng.integers(0, 50, 4)))
        c = ColourCensus(*map(int, rng.integers(0, 50, 4)))
        assert weighted_growth(a, c) == weighted_growth(a, b) + weighted_growth(b, c)


def test_recolour_focal():
    g = recolour_focal(TWO, 0)
    assert g.cells == {(0, 0): CellState.RED, (1, 0): CellState.PURPLE, (2, 0): CellState.BLUE}
    assert recolour_focal(TWO, 1).cells[(2, 0)] == CellState.RED
    with pytest.raises(IndexError):
        recolour_focal(TWO, 2)
    keys = {frozenset(recolour_focal(THREE, i).cells) for i in range(3)}
    assert len(keys) == 1


def test_solo_growth():
    assert solo_growth(TWO, 0) == -1
    block = Genome(np.array([[1, 1, P, 0], [1, 1, P, 1]], np.uint8))
    assert solo_growth(block, 0) == 0


def separated(left, right, gap=40):
    h = max(left.shape[0], right.shape[0])
    pad = lambda m: np.vstack([m, np.zeros((h - m.shape[0], m.shape[1]), np.uint8)])
    mid = np.zeros((h, gap), np.uint8)
    return Genome(np.hstack([pad(left), np.full((h, 1), P, np.uint8), mid, pad(right)]))


def test_non_interacting_parts():
    block = np.ones((2, 2), np.uint8)
    blinker = np.array([[0, 0, 0], [1, 1, 1], [0, 0, 0]], np.uint8)
    g = separated(block, blinker)
    for i in range(2):
        c = classify_part(g, i)
        assert c.colour_deltas[2:] == (0, 0)
        assert c.role is Role.WORKER
        assert c.interaction is Interaction.SOLOIST
        assert c.benefit is Benefit.OUTSIDER   # 0 inside, 0 alone


def test_wrappers_agree_with_classify_part(rng):
    from symbiotes.evolution import fuse_layer4, random_seed
    g = fuse_layer4(random_seed(rng), random_seed(rng))
    for i in range(2):
        c = classify_part(g, i)
        assert classify_role(g, i) is c.role
        assert classify_benefit(g, i) is c.benefit
        assert classify_interaction(g, i) is c.interaction


def test_translation_invariance(rng):
    from symbiotes.evolution import fuse_layer4, random_seed
    a, b = random_seed(rng), random_seed(rng)
    g = fuse_layer4(a, b)
    # extra dead rows above and below shift everything without changing it
    cells = np.vstack([np.where(g.cells[:1] == P, P, 0), g.cells,
                       np.where(g.cells[:1] == P, P, 0)])
    shifted = Genome(cells)
    assert [classify_part(g, i) for i in range(2)] == [classify_part(shifted, i)
                                                       for i in range(2)]


# -- species ----------------------------------------------------------------------

def record(i, parents, prov, g):
    return LineageRecord(i, tuple(parents), prov, g.part_count, g, i, 0.5)


def make_archive(specs):
    arch = RunArchive(EvolutionConfig(population_size=2, generations=0))
    for spec in specs:
        arch.append(record(*spec))
    return arch


BASE = [(0, (), Provenance.INITIAL_RANDOM, ONE), (1, (), Provenance.INITIAL_RANDOM, ONE)]


def test_no_fusion_no_species():
    assert build_species(make_archive(BASE + [(2, (0,), Provenance.MUTATION, ONE)])) == []


def test_singleton_species():
    arch = make_archive(BASE + [(2, (0, 1), Provenance.FUSION, TWO)])
    assert build_species(arch) == [Species(2, [2], 2)]
    assert prolific_pairs(build_species(arch), arch.children_counts()) == []


def test_nested_fusion_starts_new_species():
    arch = make_archive(BASE + [
        (2, (0, 1), Provenance.FUSION, TWO),
        (3, (2,), Provenance.MUTATION, TWO),
        (4, (3, 0), Provenance.FUSION, THREE),
        (5, (4,), Provenance.RESIZE, THREE),
        (6, (3, 2), Provenance.CROSSOVER, TWO),
    ])
    species = build_species(arch)
    assert species == [Species(2, [2, 3, 6], 2), Species(4, [4, 5], 3)]
    children = arch.children_counts()
    pairs = prolific_pairs(species, children)
    # 2 has children {3, 6}; 3 has {4, 6}: tie -> lower birth index
    assert (pairs[0].most_prolific, pairs[0].least_prolific) == (2, 6)
    assert (pairs[1].most_prolific, pairs[1].least_prolific) == (4, 5)


def test_pair_tie_rule():
    sp = [Species(10, [10, 11, 12], 2)]
    pairs = prolific_pairs(sp, {10: 1, 11: 1, 12: 1})
    assert (pairs[0].most_prolific, pairs[0].least_prolific) == (10, 10)
    pairs = prolific_pairs(sp, {10: 0, 11: 5, 12: 0})
    assert (pairs[0].most_prolific, pairs[0].least_prolific) == (11, 10)


# -- matrices and tests -------------------------------------------------------------

def pc(role=Role.WORKER, benefit=Benefit.OUTSIDER, interaction=Interaction.SOLOIST):
    return PartClassification(role, benefit, interaction, Fraction(0), 0, (0, 0, 0, 0))


def test_role_matrix():
    assert role_matrix([]).sum() == 0
    seed = [pc(Role.MANAGER), pc()]
    m = role_matrix([seed])
    assert m[1, 1] == 1 and m.sum() == 1
    assert (diff_matrix(m, m) == 0).all()
    with pytest.raises(ValueError):
        role_matrix([[pc()]])


def test_fisher_tables():
    most = [[pc(Role.MANAGER), pc()]] * 3 + [[pc(), pc()]]
    least = [[pc(), pc()]] * 4
    res = {f.name: f for f in fisher_tests(most, least)}
    t = res["one_manager"].table
    assert (t.a, t.b, t.c, t.d) == (3, 1, 0, 4)
    t = res["two_outsiders"].table
    assert (t.a, t.b, t.c, t.d) == (4, 0, 4, 0)
    assert res["two_outsiders"].p_value == 1.0


def test_growth_summary():
    assert growth_summary([], {}) == []
    from symbiotes.analysis import SpeciesPair
    rows = growth_summary([SpeciesPair(0, 0, 0, 2)], {0: TWO})
    assert rows[-1].part_count == "all"
    assert rows[0].least_mean == rows[0].most_mean == -2.0


def test_analyze_small_run():
    from symbiotes.evolution import evolve
    arch = evolve(EvolutionConfig(population_size=8, generations=3, fusion_probability=0.3,
                                  rng_seed=5))
    res = analyze(arch)
    n = len(res.pairs)
    assert all(m.sum() == n for k, m in res.matrices.items() if not k.endswith("diff"))
    assert all(m.sum() == 0 for k, m in res.matrices.items() if k.endswith("diff"))
    for p in res.pairs:
        assert res.children[p.most_prolific] >= res.children[p.least_prolific]
        for sid in (p.most_prolific, p.least_prolific):
            assert len(res.classifications[sid]) == p.part_count
    if n:
        assert res.growth[-1].most_count == n
