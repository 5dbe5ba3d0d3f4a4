"""Assignment words and the composition transforms that drive the face recursion.

An assignment word records, for each interior terminal corner of a ladder
diagram, which of its two incoming edges a face uses: the horizontal one,
the vertical one, or both.  Words of length s-1 index the branches of the
face recursion for a composition with s parts; the transforms below map a
parent composition to the child composition of each branch.
"""

from itertools import product

# One letter per interior terminal: (horizontal flag, vertical flag).
RIGHT = (1, 0)
UP = (0, 1)
BOTH = (1, 1)

# Canonical branch enumeration order.
LETTERS = (RIGHT, UP, BOTH)


def reduce_composition(k):
    """Strip zero parts, keeping order.  Rejects negative parts."""
    parts = tuple(int(p) for p in k)
    if any(p < 0 for p in parts):
        raise ValueError(f"composition parts must be non-negative, got {parts}")
    return tuple(p for p in parts if p > 0)


def all_words(length):
    """All assignment words of the given length, in canonical order."""
    return product(LETTERS, repeat=length)


def word_weight(w):
    """Number of BOTH letters; each one contributes a cycle."""
    return sum(a * b for a, b in w)


def word_tilde(w):
    """0/1 vector marking the BOTH positions of the word."""
    return tuple(a * b for a, b in w)


def _padded_flags(w, s):
    # alphas[i-1] = horizontal flag at terminal i (1..s), with the far corner
    # fixed to horizontal; betas[i] = vertical flag at terminal i (0..s-1),
    # with the near corner fixed to vertical.
    alphas = tuple(e[0] for e in w) + (1,)
    betas = (1,) + tuple(e[1] for e in w)
    if len(alphas) != s or len(betas) != s:
        raise ValueError(f"word length {len(w)} does not fit composition length {s}")
    return alphas, betas


def r_transform(k, w):
    """Child part sizes: k_i + 1 - alpha_i - beta_{i-1} (may contain zeros)."""
    alphas, betas = _padded_flags(w, len(k))
    return tuple(k[i] + 1 - alphas[i] - betas[i] for i in range(len(k)))


def d_transform(k, w):
    """Inverse-direction transform: k_i - 2 + alpha_i + beta_{i-1}.

    Negative entries are meaningful (they mark vanishing terms downstream),
    not errors.
    """
    alphas, betas = _padded_flags(w, len(k))
    return tuple(k[i] - 2 + alphas[i] + betas[i] for i in range(len(k)))


def interleave(x, y):
    """(x_1, y_1, x_2, y_2, ..., y_{s-1}, x_s) for len(y) == len(x) - 1."""
    if len(y) != len(x) - 1:
        raise ValueError(f"cannot interleave lengths {len(x)} and {len(y)}")
    out = []
    for i in range(len(y)):
        out.append(x[i])
        out.append(y[i])
    out.append(x[-1])
    return tuple(out)


def word_transforms(k, w):
    """Bundle (d, r, tilde, weight) for a composition/word pair."""
    return d_transform(k, w), r_transform(k, w), word_tilde(w), word_weight(w)
