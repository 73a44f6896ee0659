import numpy as np
import pytest

from fieldsynth.plants import (grow_broadleaf_weed, grow_grassy_weed,
                               leaf_count_for_age)


def alternation_holds(azimuths, tol_deg=40.0):
    """Adjacent leaves sit on opposite sides of the stem."""
    for a, b in zip(azimuths, azimuths[1:]):
        diff = (b - a + 180.0) % 360.0 - 180.0
        if abs(abs(diff) - 180.0) > tol_deg and abs(diff) < 180.0 - tol_deg:
            return False
    return True


class TestGrassyWeed:
    def test_three_leaves_alternate_sides(self):
        # age chosen so the emergence formula yields exactly 3 leaves
        a = grow_grassy_weed(2.0 + 2.6 * 2 + 0.5, seed=12)
        assert a.leaf_count == 3
        az = a.meta["leaf_azimuths_deg"]
        assert len(az) == 3
        assert alternation_holds(az)

    def test_one_leaf_before_first_plastochron(self):
        a = grow_grassy_weed(2.5, seed=0)
        assert a.leaf_count == 1

    def test_age_below_emergence_rejected(self):
        with pytest.raises(ValueError, match="emergence"):
            grow_grassy_weed(1.0, seed=0)

    def test_doubling_plastochron_halves_leaf_count(self):
        # evaluate the emergence formula directly
        age, emergence = 20.0, 2.0
        n1 = leaf_count_for_age(age, emergence, 1.5, cap=99)
        n2 = leaf_count_for_age(age, emergence, 3.0, cap=99)
        assert n1 - 1 == 2 * (n2 - 1)
        assert grow_grassy_weed(age, 0, {"plastochron_days": 1.5,
                                         "max_leaves": 99}).leaf_count == n1

    def test_deterministic(self):
        a = grow_grassy_weed(11.0, seed=5)
        b = grow_grassy_weed(11.0, seed=5)
        assert a.digest() == b.digest()

    def test_blades_blend_sheath_to_open(self):
        a = grow_grassy_weed(9.0, seed=2)
        blades = [m for m in a.meshes if m.organ_label == "leaf"]
        assert blades
        for blade in blades:
            blade.validate()
            assert not blade.is_watertight()  # open at the tip


class TestBroadleafWeed:
    def test_branch_origins_coincide_with_leaf_nodes(self):
        # one branching order: every node bears a leaf and an axillary branch
        a = grow_broadleaf_weed(2.0 + 2.2 * 3 + 0.5, seed=3)
        assert a.meta["main_nodes"] == 4
        origins = np.asarray(a.meta["branch_origins"])
        assert len(origins) == 4
        nodes = np.asarray(a.meta["leaf_nodes"])
        for origin in origins:
            dist = np.linalg.norm(nodes - origin, axis=1).min()
            assert dist < 1e-6

    def test_zero_vigour_keeps_branches_at_bud_length(self):
        a = grow_broadleaf_weed(14.0, seed=1,
                                params={"vigour_curve": [[0, 0.0], [20, 0.0]]})
        bud = 0.004  # grammar's minimum bud length
        branches = [m for m in a.meshes if m.organ_label == "branch"]
        assert branches
        for m in branches:
            v = m.vertices.astype(np.float64)
            extent = np.linalg.norm(v.max(axis=0) - v.min(axis=0))
            # bud length plus the branch diameter, nothing more
            assert extent <= bud + 0.006

    def test_age_below_emergence_rejected(self):
        with pytest.raises(ValueError, match="emergence"):
            grow_broadleaf_weed(0.5, seed=0)

    def test_deterministic(self):
        a = grow_broadleaf_weed(13.0, seed=8)
        b = grow_broadleaf_weed(13.0, seed=8)
        assert a.digest() == b.digest()

    def test_cylindrical_stems_watertight(self):
        a = grow_broadleaf_weed(10.0, seed=4)
        stems = [m for m in a.meshes
                 if m.organ_label in ("stem", "branch")]
        assert stems
        # petioles and internodes are capped cylinder sweeps
        watertight = [m.is_watertight() for m in stems]
        assert all(watertight)
