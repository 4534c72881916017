from itertools import product

import numpy as np
import pytest

from cabdm import (
    MIXED_NEIGHBORHOODS,
    collision_experiment,
    collision_initial_state,
    collision_lattice,
    evolve_eca,
    evolve_interacting,
    random_config,
    rule_table,
    sample_interaction_rule,
)


class TestInteractionRule:
    def test_mixed_neighborhood_count_by_enumeration(self):
        mixed = [n for n in product((-1, 0, 1), repeat=3) if 1 in n and -1 in n]
        assert len(mixed) == 12
        assert set(MIXED_NEIGHBORHOODS) == set(mixed)

    def test_pure_positive_delegates_to_rule_a(self):
        interaction = sample_interaction_rule(30, 22, seed=0)
        rule = rule_table(30)
        for nbhd in product((0, 1), repeat=3):
            if nbhd == (0, 0, 0):
                continue
            row = np.array(nbhd, dtype=np.int8)
            stepped = interaction.step(row)
            assert stepped[1] == rule.table[nbhd]

    def test_pure_negative_delegates_to_relabeled_rule_b(self):
        interaction = sample_interaction_rule(30, 22, seed=0)
        rule = rule_table(22)
        for nbhd in product((0, -1), repeat=3):
            if nbhd == (0, 0, 0):
                continue
            row = np.array(nbhd, dtype=np.int8)
            stepped = interaction.step(row)
            assert stepped[1] == -rule.table[tuple(-v for v in nbhd)]

    def test_mixed_outcomes_cover_exactly_the_12(self):
        interaction = sample_interaction_rule(30, 22, seed=5)
        assert set(interaction.mixed_outcomes) == set(MIXED_NEIGHBORHOODS)
        assert all(v in (-1, 0, 1) for v in interaction.mixed_outcomes.values())

    def test_same_seed_same_rule(self):
        a = sample_interaction_rule(30, 22, seed=9)
        b = sample_interaction_rule(30, 22, seed=9)
        assert a.mixed_outcomes == b.mixed_outcomes

    def test_seeds_vary_outcomes(self):
        outcomes = {tuple(sorted(sample_interaction_rule(30, 22, seed=s).mixed_outcomes.items())) for s in range(8)}
        assert len(outcomes) > 1

    def test_zero_neighborhood_agreement(self):
        # Rules 30 and 22 both map 000 -> 0: no conflict, outcome 0.
        interaction = sample_interaction_rule(30, 22, seed=0)
        assert not interaction.zero_conflict
        assert interaction.step(np.zeros(3, dtype=np.int8))[1] == 0

    def test_zero_neighborhood_conflict_flagged(self):
        # Rule 1 maps 000 -> 1 while relabeled rule 1 maps it to -1.
        conflicted = [sample_interaction_rule(1, 1, seed=s) for s in range(30)]
        assert all(ir.zero_conflict for ir in conflicted)
        outcomes = {int(ir.step(np.zeros(3, dtype=np.int8))[1]) for ir in conflicted}
        assert len(outcomes) > 1  # sampled, not delegated


class TestEvolveInteracting:
    def test_binary_init_reduces_to_rule_a(self):
        interaction = sample_interaction_rule(30, 22, seed=4)
        init = random_config(2, 40, 0.5)
        mixed = evolve_interacting(interaction, init, 25)
        pure = evolve_eca(30, init, 25)
        assert np.array_equal(mixed.cells, pure.cells)

    def test_negative_init_reduces_to_relabeled_rule_b(self):
        interaction = sample_interaction_rule(30, 22, seed=4)
        init = random_config(2, 40, 0.5)
        mixed = evolve_interacting(interaction, -init, 25)
        pure = evolve_eca(22, init, 25)
        assert np.array_equal(mixed.cells, -pure.cells)

    def test_shape(self):
        interaction = sample_interaction_rule(30, 22, seed=0)
        st = evolve_interacting(interaction, collision_initial_state(10, 20), 20)
        assert st.cells.shape == (21, collision_lattice(10, 20)[0])

    def test_alphabet_violation(self):
        interaction = sample_interaction_rule(30, 22, seed=0)
        with pytest.raises(ValueError):
            evolve_interacting(interaction, np.array([0, 2, 0]), 3)

    def test_verify_recomputes(self):
        interaction = sample_interaction_rule(110, 30, seed=1)
        st = evolve_interacting(interaction, collision_initial_state(6, 12), 12)
        assert st.verify()


class TestLightCones:
    def test_lattice_sizing(self):
        width, pos_plus, pos_minus = collision_lattice(40, 100)
        assert width == 40 + 2 + 2 * 100
        assert pos_minus - pos_plus == 41
        init = collision_initial_state(40, 100)
        assert init[pos_plus] == 1 and init[pos_minus] == -1 and init.sum() == 0

    def test_non_interaction_union(self):
        # Light cones spread one cell per step; with steps < gap/2 the two
        # automata cannot meet, so the collision is the cellwise union.
        gap, steps = 40, 15
        interaction = sample_interaction_rule(30, 22, seed=3)
        init = collision_initial_state(gap, steps)
        width, pos_plus, pos_minus = collision_lattice(gap, steps)
        joint = evolve_interacting(interaction, init, steps)

        iso_a = np.zeros(width, dtype=np.int8)
        iso_a[pos_plus] = 1
        iso_b = np.zeros(width, dtype=np.int8)
        iso_b[pos_minus] = 1
        union = evolve_eca(30, iso_a, steps).cells - evolve_eca(22, iso_b, steps).cells
        assert np.array_equal(joint.cells, union)


class TestCollisionExperiment:
    def test_report_count_and_determinism(self, table32):
        a = collision_experiment(30, 22, 12, 20, 5, table32)
        b = collision_experiment(30, 22, 12, 20, 5, table32)
        assert len(a) == 5
        assert a == b

    def test_deltas_recomputable_from_absolutes(self, table32):
        for report in collision_experiment(30, 22, 10, 18, 4, table32):
            assert report.delta_bdm_a == report.bdm_collision - report.bdm_a_iso
            assert report.delta_bdm_b == report.bdm_collision - report.bdm_b_iso
            assert report.delta_lzw_a == report.lzw_collision - report.lzw_a_iso
            assert report.delta_lzw_b == report.lzw_collision - report.lzw_b_iso

    def test_isolated_values_constant_across_seeds(self, table32):
        reports = collision_experiment(30, 22, 10, 18, 6, table32)
        assert len({r.bdm_a_iso for r in reports}) == 1
        assert len({r.lzw_b_iso for r in reports}) == 1

    def test_sampled_rules_spread_bdm(self, table32):
        reports = collision_experiment(30, 22, 14, 30, 12, table32)
        assert len({r.bdm_collision for r in reports}) > 1

    def test_bad_parameters(self, table32):
        with pytest.raises(ValueError):
            collision_experiment(30, 22, -1, 10, 2, table32)
        with pytest.raises(ValueError):
            collision_experiment(30, 22, 10, 10, 0, table32)
