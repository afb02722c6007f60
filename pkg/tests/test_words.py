import random
import unittest

from freeaut import words as W
from freeaut.errors import BasisMismatchError, InputError, InvalidBasisChangeError
from freeaut.words import Basis, Letter, Word

B3 = Basis.standard(3)


def w(text, basis=B3):
    return W.parse_word(basis, text)


class BasisTest(unittest.TestCase):
    def test_standard_labels(self):
        self.assertEqual(B3.names, ("a1", "a2", "a3"))
        self.assertEqual(B3.rank, 3)

    def test_rank_one_rejected(self):
        with self.assertRaises(InputError):
            Basis(("a1",))

    def test_duplicate_labels_rejected(self):
        with self.assertRaises(InputError):
            Basis(("a1", "a1"))

    def test_upper_case_label_rejected(self):
        with self.assertRaises(InputError):
            Basis(("A1", "a2"))

    def test_inverse_label(self):
        self.assertEqual(B3.label(Letter(0, -1)), "A1")
        self.assertEqual(B3.parse_token("A3"), Letter(2, -1))

    def test_unknown_token(self):
        with self.assertRaises(InputError):
            B3.parse_token("b7")


class ReduceTest(unittest.TestCase):
    def test_adjacent_cancellation(self):
        self.assertEqual(w("a1 a2 A2 a3"), w("a1 a3"))

    def test_identity(self):
        self.assertTrue(w("a1 A1").is_identity())
        self.assertEqual(W.format_word(w("a1 A1")), "1")

    def test_nested_cancellation(self):
        self.assertEqual(w("a1 a2 a3 A3 A2 A1 a2"), w("a2"))

    def test_idempotent(self):
        word = w("a1 a2 A2 a3 a3")
        self.assertEqual(W.reduce(B3, word.letters), word)

    def test_index_out_of_range(self):
        with self.assertRaises(InputError):
            W.reduce(B3, [Letter(5, 1)])

    def test_unreduced_word_rejected(self):
        with self.assertRaises(InputError):
            Word(B3, (Letter(0, 1), Letter(0, -1)))

    def test_parse_skips_identity_token(self):
        self.assertEqual(w("1"), Word.identity(B3))
        self.assertEqual(w("a1 A1 a2"), w("a2"))


class ConcatTest(unittest.TestCase):
    def test_word_times_inverse(self):
        self.assertTrue(W.concat(w("a1 a2"), w("A2 A1")).is_identity())

    def test_positive_words_do_not_cancel(self):
        self.assertEqual(W.concat(w("a1 a2 a3"), w("a1 a2 a3")), w("a1 a2 a3 a1 a2 a3"))

    def test_partial_cancellation(self):
        result = W.concat(w("a1 a2 a3 a1 a2 a3"), w("A3 A2 A1 A3"))
        self.assertEqual(result, w("a1 a2"))

    def test_basis_mismatch(self):
        with self.assertRaises(BasisMismatchError):
            W.concat(w("a1"), W.parse_word(Basis.standard(4), "a1"))

    def test_basis_mismatch_is_an_input_error(self):
        self.assertTrue(issubclass(BasisMismatchError, InputError))


class WordLawsTest(unittest.TestCase):
    def setUp(self):
        self.rng = random.Random(20240611)

    def _random(self):
        return W.random_word(B3, self.rng.randrange(0, 12), self.rng)

    def test_associativity(self):
        for _ in range(1000):
            u, v, x = self._random(), self._random(), self._random()
            self.assertEqual(W.concat(W.concat(u, v), x), W.concat(u, W.concat(v, x)))

    def test_inversion_is_an_involution(self):
        for _ in range(1000):
            u = self._random()
            self.assertEqual(W.invert(W.invert(u)), u)
            self.assertTrue(W.concat(u, W.invert(u)).is_identity())

    def test_length_bounds_and_parity(self):
        for _ in range(1000):
            u, v = self._random(), self._random()
            r = W.concat(u, v)
            self.assertGreaterEqual(len(r), abs(len(u) - len(v)))
            self.assertLessEqual(len(r), len(u) + len(v))
            self.assertEqual(len(r) % 2, (len(u) + len(v)) % 2)

    def test_inversion_is_an_anti_homomorphism(self):
        for _ in range(1000):
            u, v = self._random(), self._random()
            self.assertEqual(W.invert(W.concat(u, v)), W.concat(W.invert(v), W.invert(u)))

    def test_positive_words_closed_under_concat(self):
        for _ in range(200):
            u = W.word(B3, *[(self.rng.randrange(3), 1) for _ in range(self.rng.randrange(1, 10))])
            v = W.word(B3, *[(self.rng.randrange(3), 1) for _ in range(self.rng.randrange(1, 10))])
            product = W.concat(u, v)
            self.assertTrue(W.is_positive(product))
            self.assertEqual(len(product), len(u) + len(v))

    def test_random_word_is_reduced_with_exact_length(self):
        for length in range(20):
            u = W.random_word(B3, length, self.rng)
            self.assertEqual(len(u), length)
            self.assertEqual(W.reduce(B3, u.letters), u)


class SubstituteTest(unittest.TestCase):
    def test_substitute_reduces(self):
        images = [w("a1 a2"), w("A1"), w("a3")]
        self.assertEqual(W.substitute(w("a1 a2"), images, B3), w("a1 a2 A1"))
        self.assertEqual(W.substitute(w("a2 a1"), images, B3), w("a2"))

    def test_change_basis_sign_flip(self):
        new = Basis(("x0", "a2", "a3"))
        old_in_new = [W.parse_word(new, "X0"), W.parse_word(new, "a2"), W.parse_word(new, "a3")]
        new_in_old = [w("A1"), w("a2"), w("a3")]
        self.assertEqual(W.format_word(W.change_basis(w("a2 A1 A1"), old_in_new, new_in_old)), "a2 x0 x0")

    def test_change_basis_bad_witness(self):
        new = Basis(("x0", "a2", "a3"))
        old_in_new = [W.parse_word(new, "X0"), W.parse_word(new, "a2"), W.parse_word(new, "a3")]
        wrong = [w("a1"), w("a2"), w("a3")]
        with self.assertRaises(InvalidBasisChangeError):
            W.change_basis(w("a1"), old_in_new, wrong)

    def test_change_basis_direct_substitution(self):
        new = Basis(("x0", "a2", "a3"))
        old_in_new = [W.parse_word(new, "X0"), W.parse_word(new, "a2"), W.parse_word(new, "a3")]
        new_in_old = [w("A1"), w("a2"), w("a3")]
        self.assertEqual(W.format_word(W.change_basis(w("A1"), old_in_new, new_in_old)), "x0")
        self.assertEqual(W.format_word(W.change_basis(w("a1 a2"), old_in_new, new_in_old)), "X0 a2")

    def test_change_basis_round_trip(self):
        new = Basis(("x0", "a2", "a3"))
        old_in_new = [W.parse_word(new, "X0"), W.parse_word(new, "a2"), W.parse_word(new, "a3")]
        new_in_old = [w("A1"), w("a2"), w("a3")]
        rng = random.Random(11)
        for _ in range(200):
            u = W.random_word(B3, rng.randrange(0, 20), rng)
            moved = W.change_basis(u, old_in_new, new_in_old)
            self.assertEqual(W.change_basis(moved, new_in_old, old_in_new), u)

    def test_invert_examples(self):
        self.assertEqual(W.format_word(W.invert(w("a2 a1 a2"))), "A2 A1 A2")
        self.assertEqual(W.format_word(W.invert(w("a1 A2 a3"))), "A3 a2 A1")
        self.assertTrue(W.invert(Word.identity(B3)).is_identity())

    def test_positive_and_negative(self):
        self.assertTrue(W.is_positive(w("a1 a2")))
        self.assertFalse(W.is_positive(w("a1 A2")))
        self.assertFalse(W.is_negative(w("a1 A2")))
        self.assertTrue(W.is_negative(w("A1 A2")))
        empty = Word.identity(B3)
        self.assertTrue(W.is_positive(empty) and W.is_negative(empty))


if __name__ == "__main__":
    unittest.main()
