import unittest
from fractions import Fraction

from freeaut import boundary_rays as BR
from freeaut import index_report as IR
from freeaut.errors import InputError, UncertifiedInventoryError


def fabricated_inventory(n, extra=2, depth=20):
    """An inventory with 2n-1+extra attracting rays, past both index bounds."""
    base = BR.build_inventory(n, depth)
    padding = [BR.Ray(f"{ray.name}'", ray.auto, ray.seed) for ray in base.attracting[:extra]]
    return base.with_rays(list(base.attracting) + padding, base.repelling)


class ContributionTest(unittest.TestCase):
    def test_contribution(self):
        self.assertEqual(IR.ClassContribution("c", 0, 5).contribution, Fraction(3, 2))
        self.assertEqual(IR.ClassContribution("c", 1, 2).contribution, Fraction(1))

    def test_clamped_at_zero(self):
        self.assertEqual(IR.ClassContribution("c", 0, 1).contribution, Fraction(0))
        self.assertEqual(IR.ClassContribution("c", 1, 0).contribution, Fraction(0))

    def test_negative_rejected(self):
        with self.assertRaises(InputError):
            IR.ClassContribution("c", -1, 2)

    def test_format_fraction(self):
        self.assertEqual(IR.format_fraction(Fraction(3, 2)), "3/2")
        self.assertEqual(IR.format_fraction(Fraction(2)), "2/1")


class IndexOfTest(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.inventory = BR.build_inventory(3, depth=40)

    def test_forward_index(self):
        report = IR.index_of(self.inventory, IR.Side.ATTRACTING, complete=True)
        self.assertEqual(report.total, Fraction(3, 2))
        self.assertTrue(report.exact)
        self.assertEqual(report.label(), "index")
        self.assertEqual(report.classes[0].label, "[alpha_3]")

    def test_forward_without_completeness_is_a_lower_bound(self):
        report = IR.index_of(self.inventory, IR.Side.ATTRACTING)
        self.assertFalse(report.exact)
        self.assertEqual(report.label(), "lower bound on index")

    def test_inverse_index_reaches_the_bound(self):
        report = IR.index_of(self.inventory, "repelling")
        self.assertEqual(report.total, Fraction(2))
        self.assertTrue(report.exact)
        self.assertEqual(report.classes[0].label, "[alpha_3^-1]")

    def test_index_values_for_the_family(self):
        for n in range(3, 7):
            inventory = BR.build_inventory(n, depth=40)
            self.assertEqual(IR.index_of(inventory, IR.Side.ATTRACTING).total, n - Fraction(3, 2))
            self.assertEqual(IR.index_of(inventory, IR.Side.REPELLING).total, n - 1)

    def test_square_keeps_the_index(self):
        square = BR.build_inventory(3, depth=40, power=2)
        report = IR.index_of(square)
        self.assertEqual(report.total, Fraction(3, 2))
        self.assertEqual(report.classes[0].label, "[alpha_3^2]")

    def test_uncertified_inventory(self):
        bare = BR.FixedPointInventory(n=3, depth=10, attracting=(), repelling=())
        with self.assertRaises(UncertifiedInventoryError):
            IR.index_of(bare)

    def test_contributions_table(self):
        report = IR.index_of(self.inventory, IR.Side.ATTRACTING)
        self.assertEqual(
            IR.contributions_table(report),
            [{"label": "[alpha_3]", "fix_rank": 0, "attracting": 5, "contribution": "3/2"}],
        )


class BoundCheckTest(unittest.TestCase):
    def test_family_satisfies_bounds(self):
        inventory = BR.build_inventory(3, depth=40)
        self.assertTrue(IR.check_gjll(IR.index_of(inventory)).ok)
        self.assertTrue(IR.check_gjll(IR.index_of(inventory, IR.Side.REPELLING)).ok)
        self.assertTrue(IR.check_4n_bound(inventory).ok)

    def test_library_ships_no_fabricated_inventories(self):
        self.assertFalse(hasattr(IR, "fabricated_inventory"))
        self.assertFalse(hasattr(BR, "fabricated_inventory"))

    def test_fabricated_inventory_is_flagged(self):
        inventory = fabricated_inventory(3, extra=2)
        self.assertEqual(len(inventory.attracting), 7)
        gjll = IR.check_gjll(IR.index_of(inventory))
        self.assertFalse(gjll.ok)
        self.assertTrue(all(m.startswith("internal inconsistency") for m in gjll.messages))
        four_n = IR.check_4n_bound(inventory)
        self.assertFalse(four_n.ok)
        self.assertIn("13 fixed points exceed 4n = 12", four_n.messages[0])


class ClassificationTest(unittest.TestCase):
    def test_completeness_n3(self):
        done = IR.completeness(3)
        self.assertTrue(done.certified)
        self.assertTrue(done.single_vertex)
        self.assertTrue(done.no_inps)
        self.assertTrue(done.fix_trivial)

    def test_inverse_is_parageometric(self):
        (first,) = IR.classify_parageometric(3, t_max=1, depth=40)
        self.assertEqual(first.index, Fraction(3, 2))
        self.assertEqual(first.index_inverse, Fraction(2))
        self.assertTrue(first.index_exact)
        self.assertFalse(first.geometric)
        self.assertFalse(first.parageometric)
        self.assertTrue(first.inverse_parageometric)


if __name__ == "__main__":
    unittest.main()
