import random
import unittest

from freeaut import automorphisms as A
from freeaut import words as W
from freeaut.automorphisms import Automorphism, BasisChange
from freeaut.errors import InputError, ResourceBudgetError
from freeaut.words import Basis


def images(f):
    return [W.format_word(image) for image in f.images]


class FamilyTest(unittest.TestCase):
    def test_alpha_3_table(self):
        self.assertEqual(images(A.make_alpha(3)), ["a1 a2 a3", "a2 a1 a2", "a3 a1 a2 a3"])

    def test_alpha_images_positive_and_long(self):
        for n in range(2, 11):
            alpha = A.make_alpha(n)
            self.assertTrue(alpha.is_positive())
            self.assertEqual([len(image) for image in alpha.images], [n] + list(range(3, n + 2)))

    def test_rank_too_small(self):
        with self.assertRaises(InputError):
            A.make_alpha(1)
        with self.assertRaises(InputError):
            A.make_alpha_inverse(1)

    def test_inverse_3_table(self):
        inverse, _ = A.make_alpha_inverse(3)
        self.assertEqual(images(inverse), ["a1 a1 A3 a1 a1 A3 A2", "a2 a3 A1 A1", "a3 A1"])

    def test_verify_inverse_for_many_ranks(self):
        for n in range(2, 11):
            inverse, _ = A.make_alpha_inverse(n)
            self.assertTrue(A.verify_inverse(A.make_alpha(n), inverse), n)
            self.assertTrue(A.make_alpha(n).has_verified_inverse())

    def test_alpha_is_not_an_involution(self):
        alpha = A.make_alpha(3)
        self.assertFalse(A.verify_inverse(alpha, alpha))

    def test_identity_inverts_identity(self):
        ident = Automorphism.identity(Basis.standard(3))
        self.assertTrue(A.verify_inverse(ident, ident))

    def test_scaffold_identities(self):
        for n in range(2, 9):
            _, scaffold = A.make_alpha_inverse(n)
            checks = scaffold.identities(A.make_alpha(n))
            self.assertEqual(len(checks), 2 * n - 1)
            self.assertTrue(all(checks.values()), checks)

    def test_displayed_identities_at_n3(self):
        alpha = A.make_alpha(3)
        _, scaffold = A.make_alpha_inverse(3)
        b = alpha.basis
        x0, x2 = scaffold.x_words[0], scaffold.x_words[2]
        self.assertEqual(A.apply(alpha, x0), W.parse_word(b, "A3 A2 A1"))
        self.assertEqual(A.apply(alpha, W.concat(b.generator(2), x0)), b.generator(2))
        self.assertEqual(A.apply(alpha, x2), W.parse_word(b, "A1"))

    def test_scaffold_positive_in_new_basis(self):
        for n in range(2, 8):
            _, scaffold = A.make_alpha_inverse(n)
            moved = scaffold.in_basis(A.inverse_family_basis(n))
            for name, word in moved.all_words().items():
                if name == "x0":
                    continue
                self.assertTrue(W.is_positive(word), (n, name, W.format_word(word)))


class ArithmeticTest(unittest.TestCase):
    def test_homomorphism_law(self):
        rng = random.Random(7)
        alpha = A.make_alpha(3)
        for _ in range(1000):
            u = W.random_word(alpha.basis, rng.randrange(0, 9), rng)
            v = W.random_word(alpha.basis, rng.randrange(0, 9), rng)
            self.assertEqual(
                A.apply(alpha, W.concat(u, v)),
                W.concat(A.apply(alpha, u), A.apply(alpha, v)),
            )

    def test_power_law(self):
        alpha = A.make_alpha(3)
        powers = {t: A.power(alpha, t) for t in range(1, 7)}
        for s in range(1, 6):
            for t in range(1, 7 - s):
                for gen in alpha.basis.generators():
                    self.assertEqual(
                        A.apply(powers[s + t], gen),
                        A.apply(powers[s], A.apply(powers[t], gen)),
                    )

    def test_apply_examples(self):
        alpha = A.make_alpha(3)
        b = alpha.basis
        self.assertEqual(W.format_word(A.apply(alpha, b.generator(1))), "a2 a1 a2")
        self.assertTrue(A.apply(alpha, W.Word.identity(b)).is_identity())
        x2_inverse = W.parse_word(b, "a1 a1 A3 a1 a1 A3 A2")
        self.assertEqual(W.format_word(A.apply(alpha, x2_inverse)), "a1")

    def test_compose_with_inverse_is_identity(self):
        alpha = A.make_alpha(3)
        inverse, _ = A.make_alpha_inverse(3)
        self.assertEqual(A.compose(alpha, inverse), Automorphism.identity(alpha.basis))
        self.assertEqual(A.compose(inverse, alpha), Automorphism.identity(alpha.basis))

    def test_power_one(self):
        alpha = A.make_alpha(3)
        self.assertEqual(A.power(alpha, 1), alpha)

    def test_cube_two_ways(self):
        alpha = A.make_alpha(3)
        a1 = alpha.basis.generator(0)
        by_apply = A.apply(alpha, A.apply(alpha, A.apply(alpha, a1)))
        self.assertEqual(A.apply(A.power(alpha, 3), a1), by_apply)
        square = A.power(alpha, 2)
        # positive images never cancel, so lengths add up letter by letter
        expected = sum(len(square.images[letter.index]) for letter in alpha.images[0].letters)
        self.assertEqual(len(by_apply), expected)

    def test_power_keeps_inverse_witness(self):
        square = A.power(A.make_alpha(3), 2)
        self.assertEqual(square.name, "alpha_3^2")
        self.assertTrue(square.has_verified_inverse())

    def test_power_budget(self):
        with self.assertRaises(ResourceBudgetError):
            A.power(A.make_alpha(4), 10, budget=1000)

    def test_power_exponent(self):
        with self.assertRaises(InputError):
            A.power(A.make_alpha(3), 0)

    def test_identity_image_rejected(self):
        b = Basis.standard(2)
        with self.assertRaises(InputError):
            Automorphism(b, (b.generator(0), W.Word.identity(b)))


class PositivityTest(unittest.TestCase):
    def test_alpha_already_positive(self):
        change = A.positivity_basis(A.make_alpha(3))
        self.assertTrue(change.is_identity())

    def test_inverse_needs_x0(self):
        inverse, _ = A.make_alpha_inverse(3)
        change = A.positivity_basis(inverse)
        self.assertEqual(change.flipped, (0,))
        self.assertEqual(change.new.names, ("x0", "a2", "a3"))
        rep = change.conjugate(inverse)
        self.assertEqual(images(rep), ["a2 a3 x0 x0 a3 x0 x0", "a2 a3 x0 x0", "a3 x0"])
        self.assertTrue(rep.has_verified_inverse())

    def test_no_sign_flip_works(self):
        b = Basis.standard(2)
        f = Automorphism(b, (W.parse_word(b, "a2"), W.parse_word(b, "a1 A2")))
        self.assertIsNone(A.positivity_basis(f))
        with self.assertRaises(InputError):
            A.positive_representative(f)

    def test_change_round_trip(self):
        change = BasisChange.flipping(Basis.standard(3), [0])
        word = W.parse_word(change.old, "a1 a2 A1 a3")
        self.assertEqual(change.revert(change.apply(word)), word)
        self.assertEqual(change.describe(), "a1 -> x0^-1")


class TextFormatTest(unittest.TestCase):
    def test_parse_format(self):
        alpha = A.make_alpha(3)
        parsed = A.parse_automorphism(A.format_automorphism(alpha) + "\n# comment\n")
        self.assertEqual(parsed, alpha)

    def test_parse_custom_labels(self):
        f = A.parse_automorphism("x -> x y\ny -> y x y\n", name="pair")
        self.assertEqual(f.basis.names, ("x", "y"))
        self.assertEqual(f.name, "pair")

    def test_parse_errors(self):
        with self.assertRaises(InputError):
            A.parse_automorphism("a1 a2\n")
        with self.assertRaises(InputError):
            A.parse_automorphism("# nothing\n")

    def test_to_json(self):
        payload = A.to_json(A.make_alpha(2))
        self.assertEqual(payload, {"basis": ["a1", "a2"], "images": [["a1", "a2"], ["a2", "a1", "a2"]]})


if __name__ == "__main__":
    unittest.main()
