import pytest

from qfam import MagicUnitary, functions_algebra


@pytest.fixture
def translation_magic():
    """Magic unitary of the translation action of a cyclic group on itself.

    Entry (k, l) is the indicator of the group element k - l, so column l
    permutes the points by adding l."""

    def build(n: int) -> MagicUnitary:
        alg = functions_algebra(n)
        entries = [
            [alg.basis_element((k - l) % n) for l in range(n)] for k in range(n)
        ]
        return MagicUnitary(alg, tuple(tuple(row) for row in entries))

    return build
