import unittest

import pytest

from freeaut import automorphisms as A
from freeaut import boundary_rays as R
from freeaut import words as W
from freeaut.errors import InconclusiveError, InputError, NotAttractingError


class RayTest(unittest.TestCase):
    def setUp(self):
        self.alpha = A.make_alpha(3)
        self.basis = self.alpha.basis

    def test_expand_has_exact_depth(self):
        ray = R.Ray("X1", self.alpha, self.alpha.images[0])
        for depth in (1, 4, 37, 120):
            self.assertEqual(len(ray.expand(depth)), depth)

    def test_prefixes_are_consistent(self):
        ray = R.Ray("X2", self.alpha, self.alpha.images[1])
        long = ray.expand(90)
        self.assertTrue(long.startswith(ray.expand(30)))

    def test_x2_prefix(self):
        ray = R.Ray("X2", self.alpha, self.alpha.images[1])
        self.assertEqual(W.format_word(ray.expand(9)), "a2 a1 a2 a1 a2 a3 a2 a1 a2")
        x1 = R.Ray("X1", self.alpha, self.alpha.images[0])
        self.assertEqual(W.format_word(x1.expand(3)), "a1 a2 a3")

    def test_attracting_seed(self):
        self.assertTrue(R.is_attracting_seed(self.alpha, W.parse_word(self.basis, "a1")))
        self.assertTrue(R.is_attracting_seed(self.alpha, W.parse_word(self.basis, "a2 a1 a2")))
        self.assertFalse(R.is_attracting_seed(self.alpha, W.parse_word(self.basis, "a2 A1")))
        self.assertFalse(R.is_attracting_seed(self.alpha, W.parse_word(self.basis, "A1")))

    def test_identity_does_not_attract(self):
        ident = A.Automorphism.identity(self.basis)
        self.assertFalse(R.is_attracting_seed(ident, W.parse_word(self.basis, "a1")))

    def test_attraction_survives_a_sign_flip(self):
        change = A.BasisChange.flipping(self.basis, [0])
        moved = change.conjugate(self.alpha)
        for image in self.alpha.images:
            self.assertTrue(R.is_attracting_seed(moved, change.apply(image)))

    def test_empty_seed_rejected(self):
        with self.assertRaises(InputError):
            R.Ray("e", self.alpha, W.Word.identity(self.basis))

    def test_non_attracting_seed_fails_to_expand(self):
        ray = R.Ray("bad", self.alpha, W.parse_word(self.basis, "a2 A1"))
        with self.assertRaises(NotAttractingError):
            ray.expand(10)


class AttractingFamilyTest(unittest.TestCase):
    def test_family_size(self):
        for n in range(3, 8):
            rays = R.attracting_family(n)
            self.assertEqual(len(rays), 2 * n - 1)

    def test_names_and_seeds_at_n3(self):
        rays = R.attracting_family(3)
        self.assertEqual([r.name for r in rays], ["X1", "X2", "X3", "Y2", "Y3"])
        self.assertEqual(W.format_word(rays[3].seed), "A2 A1 A2")

    def test_seed_signs(self):
        rays = R.attracting_family(4)
        for ray in rays:
            if ray.name.startswith("X"):
                self.assertTrue(W.is_positive(ray.seed), ray.name)
            else:
                self.assertTrue(W.is_negative(ray.seed), ray.name)
        self.assertEqual(W.format_word(R.attracting_family(3)[4].seed), "A3 A2 A1 A3")

    def test_fixed_by_alpha(self):
        for ray in R.attracting_family(4):
            prefix = ray.expand(80)
            self.assertTrue(A.apply(ray.auto, prefix).startswith(prefix), ray.name)

    def test_fixed_by_powers(self):
        alpha = A.make_alpha(3)
        rays = R.attracting_family(3)
        for t in range(1, 6):
            f = A.power(alpha, t)
            for ray in rays:
                prefix = ray.expand(40)
                self.assertTrue(A.apply(f, prefix).startswith(prefix), (t, ray.name))

    def test_duplicate_is_not_distinct(self):
        rays = R.attracting_family(3)
        twin = R.Ray("X1'", rays[0].auto, rays[0].seed)
        report = R.pairwise_distinct([rays[0], twin], 30)
        self.assertFalse(report.distinct)
        self.assertEqual(report.divergences, {("X1", "X1'"): None})
        self.assertFalse(report.absolute)
        with self.assertRaises(InconclusiveError):
            R.require_distinct([rays[0], twin], 30)

    def test_no_small_translates(self):
        rays = R.attracting_family(3)
        x1, y2 = rays[0], rays[3]
        self.assertEqual(R.translate_matches(x1, y2, 60), [])
        self.assertIn((0, 0), R.translate_matches(x1, x1, 60))

    def test_no_pair_is_a_small_translate(self):
        for n in (3, 4):
            rays = R.attracting_family(n)
            for i, x in enumerate(rays):
                for y in rays[i + 1:]:
                    with self.subTest(n=n, pair=(x.name, y.name)):
                        self.assertEqual(R.translate_matches(x, y, 60), [])
                        self.assertEqual(R.translate_matches(y, x, 60), [])

    def test_first_letters_already_differ(self):
        report = R.require_distinct(R.attracting_family(3), 50)
        self.assertTrue(report.distinct)
        self.assertEqual(len(report.first_letter_pairs()), 10)
        self.assertEqual(report.max_divergence(), 0)
        self.assertTrue(report.absolute)

    def test_powers_keep_the_family(self):
        rays = R.attracting_family(3, t=2)
        self.assertEqual(rays[0].auto.name, "alpha_3^2")
        self.assertEqual(rays[0].expand(60), R.attracting_family(3)[0].expand(60))

    def test_powers_keep_the_family_at_n4(self):
        base = R.attracting_family(4)
        for t in (2, 3):
            with self.subTest(t=t):
                rays = R.attracting_family(4, t=t)
                self.assertEqual([r.name for r in rays], [r.name for r in base])
                for ray, plain in zip(rays, base):
                    self.assertEqual(ray.expand(60), plain.expand(60), ray.name)


class RepellingFamilyTest(unittest.TestCase):
    def test_family_size_and_names(self):
        rays = R.repelling_family(3)
        self.assertEqual([r.name for r in rays], ["Xk0", "Xk1", "Yk0", "Yk1", "Y", "Z"])
        for n in range(3, 7):
            self.assertEqual(len(R.repelling_family(n)), 2 * n)

    def test_over_the_x0_basis(self):
        rays = R.repelling_family(3)
        self.assertEqual(rays[0].auto.basis.names, ("x0", "a2", "a3"))
        self.assertEqual(W.format_word(rays[0].seed), "a3 x0")

    def test_rendered_in_original_basis(self):
        setup = R.RepellingSetup.build(3)
        ray = R.repelling_family(3)[0]
        self.assertEqual(W.format_word(ray.rendered(setup.change, 2)), "a3 A1")

    def test_z_identity(self):
        for n in range(2, 8):
            self.assertTrue(R.RepellingSetup.build(n).z_identity(), n)

    def test_distinct(self):
        report = R.require_distinct(R.repelling_family(4), 120)
        self.assertTrue(report.distinct)
        self.assertEqual(len(report.divergences), 28)

    def test_fixed_by_powers(self):
        rays = R.repelling_family(3)
        for t in range(1, 5):
            f = A.power(rays[0].auto, t)
            for ray in rays:
                with self.subTest(t=t, ray=ray.name):
                    prefix = ray.expand(40)
                    self.assertTrue(A.apply(f, prefix).startswith(prefix))

    def test_powers_keep_the_family(self):
        base = R.repelling_family(4)
        for t in (2, 3):
            rays = R.repelling_family(4, t=t)
            for ray, plain in zip(rays, base):
                with self.subTest(t=t, ray=ray.name):
                    self.assertEqual(ray.expand(60), plain.expand(60))


class InventoryTest(unittest.TestCase):
    def test_n3_inventory(self):
        inventory = R.build_inventory(3, depth=60)
        self.assertTrue(inventory.certified)
        self.assertEqual(inventory.counts, (5, 6))
        self.assertEqual(inventory.total, 11)

    def test_total_is_4n_minus_1(self):
        for n in range(3, 7):
            self.assertEqual(R.build_inventory(n, depth=40).total, 4 * n - 1)

    def test_power_three_inventory(self):
        for n in (3, 4):
            with self.subTest(n=n):
                inventory = R.build_inventory(n, depth=60, power=3)
                self.assertEqual(inventory.power, 3)
                self.assertEqual(inventory.total, 4 * n - 1)
                self.assertTrue(inventory.certified)

    @pytest.mark.slow
    def test_total_up_to_rank_eight(self):
        for n in range(7, 9):
            with self.subTest(n=n):
                inventory = R.build_inventory(n)
                self.assertTrue(inventory.certified)
                self.assertEqual(inventory.counts, (2 * n - 1, 2 * n))
                self.assertTrue(inventory.attracting_report.distinct)
                self.assertTrue(inventory.repelling_report.distinct)

    def test_degenerate_rank(self):
        with self.assertRaises(InputError) as ctx:
            R.build_inventory(2)
        self.assertIn("degenerate", str(ctx.exception))

    def test_to_json(self):
        payload = R.build_inventory(3, depth=30).to_json(prefix_length=12)
        self.assertEqual(payload["total"], 11)
        self.assertEqual(payload["attracting"][0]["name"], "X1")
        self.assertEqual(len(payload["attracting"][0]["prefix"].split()), 12)

    def test_with_rays_drops_nothing_else(self):
        inventory = R.build_inventory(3, depth=30)
        smaller = inventory.with_rays(inventory.attracting[:2], inventory.repelling)
        self.assertEqual(smaller.counts, (2, 6))
        self.assertTrue(smaller.certified)


class OrbitCountTest(unittest.TestCase):
    def test_diagonal_count_is_2n_minus_1(self):
        for n in range(2, 10):
            alpha = A.make_alpha(n)
            counts = R.orbit_counts(alpha)
            self.assertEqual(counts["diagonal"], 2 * n - 1)
            self.assertEqual(counts["total"], alpha.total_length())

    def test_identity_counts_each_generator_once(self):
        ident = A.Automorphism.identity(W.Basis.standard(4))
        self.assertEqual(R.attracting_orbit_bound(ident), 4)
        self.assertEqual(R.attracting_orbit_bound(ident, R.OrbitCountConvention.TOTAL), 4)

    def test_bound_matches_attracting_family(self):
        for n in range(3, 7):
            bound = R.attracting_orbit_bound(A.make_alpha(n))
            self.assertEqual(bound, len(R.attracting_family(n)))


class DegenerateRankTest(unittest.TestCase):
    def test_commutator_relation(self):
        relation = R.n2_degenerate_relation()
        self.assertEqual(W.format_word(relation.commutator), "a2 a1 A2 A1")
        self.assertEqual(W.format_word(relation.commutator_new_basis), "a2 X0 A2 x0")
        self.assertTrue(relation.fixed_by_alpha)
        self.assertTrue(relation.fixed_by_inverse)
        self.assertFalse(relation.fixed_by_alpha3)
        self.assertTrue(relation.prefix_consistent)
        self.assertTrue(relation.holds)

    def test_relation_shows_up_as_a_translate(self):
        setup = R.RepellingSetup.build(2)
        seeds = setup.seeds()
        self.assertEqual(W.format_word(seeds["Yk0"]), "a2 X0 A2")
        y0 = R.Ray("Yk0", setup.inverse, seeds["Yk0"])
        y = R.Ray("Y", setup.inverse, seeds["Y"])
        self.assertIn((1, 3), R.translate_matches(y, y0, 60))


if __name__ == "__main__":
    unittest.main()
