import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from arf_engine.config import Settings
from arf_engine.errors import DimensionMismatchError, NotOrthogonalError, PreconditionError, ResourceGuardError
from arf_engine.gf2 import BitMatrix, BitVector, multiply
from arf_engine.oracle import random_orthogonal
from arf_engine.orthogroup import (
    Decomposition,
    OrthogonalMap,
    canonical_order,
    canonical_u0,
    decompose,
    enumerate_group,
    expected_closure_order,
    fixed_space,
    image_space,
    is_orthogonal,
    is_symplectic,
    is_u_map,
    predicted_fixed_dim,
    psi,
    rank_parity,
    rank_parity_row_words,
    recompose,
    split_components,
    transvection,
    transvection_closure,
    transvection_matrix,
    umap_partition,
    word_map,
)
from arf_engine.quadform import QuadraticForm, orthogonal_complement, vectors_with_value

V = BitVector.from_string
SWAP = BitMatrix.from_strings(["01", "10"])

SMALL_FORMS = {
    "dim2-arf0": QuadraticForm.standard(1, "00"),
    "dim2-arf1": QuadraticForm.standard(1, "11"),
    "dim4-arf0": QuadraticForm.standard(2, "0000"),
    "dim4-arf1": QuadraticForm.standard(2, "1100"),
}


@pytest.fixture(scope="module")
def groups():
    """每个小型二次型的完整正交群 (规范顺序)"""
    return {name: canonical_order(enumerate_group(f, Settings())) for name, f in SMALL_FORMS.items()}


def _all_sums(dim, basis):
    out = {BitVector.zeros(dim)}
    for v in basis:
        out |= {w + v for w in out}
    return out


# ========== 判定与平延 ==========

class TestMembership:
    def test_identity(self, plus4):
        assert is_orthogonal(plus4, BitMatrix.identity(4))

    def test_transvection_membership(self, plus4):
        assert is_orthogonal(plus4, transvection_matrix(plus4, V("1100")))
        assert not is_orthogonal(plus4, transvection_matrix(plus4, V("1000")))
        assert is_symplectic(plus4, transvection_matrix(plus4, V("1000")))

    def test_dimension_mismatch(self, plus4):
        with pytest.raises(DimensionMismatchError):
            is_orthogonal(plus4, BitMatrix.identity(2))

    def test_checked_constructor(self, torus0):
        with pytest.raises(NotOrthogonalError):
            OrthogonalMap(torus0, BitMatrix.from_strings(["11", "01"]))


class TestTransvection:
    def test_zero_vector_is_identity(self, plus4):
        assert transvection(plus4, plus4.zero()).matrix == BitMatrix.identity(4)

    def test_swap_in_dim_two(self, torus1):
        assert transvection(torus1, V("11")).matrix == SWAP

    def test_rejects_g_zero(self, plus4):
        with pytest.raises(NotOrthogonalError):
            transvection(plus4, V("1000"))

    @pytest.mark.parametrize("name", sorted(SMALL_FORMS))
    def test_involution_and_psi(self, name):
        f = SMALL_FORMS[name]
        for a in vectors_with_value(f, 1):
            T = transvection(f, a)
            assert (T @ T).matrix == BitMatrix.identity(f.dim)
            assert psi(T) == 1
            fixed = fixed_space(T)
            assert len(fixed) == f.dim - 1
            assert all(f.bilinear(v, a) == 0 for v in fixed)


class TestPsi:
    def test_identity(self, plus4):
        assert psi(OrthogonalMap.identity(plus4)) == 0

    def test_fixed_space_of_swap(self, torus0):
        assert fixed_space(OrthogonalMap(torus0, SWAP)) == [V("11")]

    def test_word_parity(self, minus4):
        word = vectors_with_value(minus4, 1)[:5]
        assert psi(word_map(minus4, word)) == 1

    def test_rank_parity_on_any_square_matrix(self):
        assert rank_parity(BitMatrix.from_strings(["11", "01"])) == 1
        with pytest.raises(DimensionMismatchError):
            rank_parity(BitMatrix.zeros(2, 3))

    @pytest.mark.parametrize("name", sorted(SMALL_FORMS))
    def test_homomorphism_exhaustive(self, groups, name):
        f = SMALL_FORMS[name]
        elements = groups[name]
        parities = [rank_parity(M) for M in elements]
        assert any(parities)
        for S, ps in zip(elements, parities):
            for T, pt in zip(elements, parities):
                assert rank_parity(multiply(S, T)) == ps ^ pt

    @settings(max_examples=60, deadline=None)
    @given(st.integers(3, 8), st.integers(0, 1), st.integers(0, 2 ** 32 - 1), st.integers(0, 2 ** 32 - 1))
    def test_homomorphism_random(self, genus, arf_value, seed1, seed2):
        _check_random_pair(genus, arf_value, seed1, seed2)

    @pytest.mark.slow
    @settings(max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(st.integers(3, 8), st.integers(0, 1), st.integers(0, 2 ** 32 - 1), st.integers(0, 2 ** 32 - 1))
    def test_homomorphism_random_many_pairs(self, genus, arf_value, seed1, seed2):
        _check_random_pair(genus, arf_value, seed1, seed2)

    @pytest.mark.parametrize("name", sorted(SMALL_FORMS))
    def test_row_word_parity_agrees(self, groups, name):
        for M in groups[name]:
            assert rank_parity_row_words(M.row_words()) == rank_parity(M)


def _check_random_pair(genus, arf_value, seed1, seed2):
    f = QuadraticForm.standard(genus, "11" * arf_value + "0" * (2 * genus - 2 * arf_value))
    S = random_orthogonal(f, seed1, 7)
    T = random_orthogonal(f, seed2, 4)
    assert psi(S @ T) == psi(S) ^ psi(T)
    assert psi(S) == 1 and psi(T) == 0


# ========== 不动点空间 ==========

@pytest.mark.parametrize("name", sorted(SMALL_FORMS))
def test_image_is_complement_of_fixed_space(groups, name):
    f = SMALL_FORMS[name]
    for M in groups[name]:
        T = OrthogonalMap(f, M, check=False)
        image = _all_sums(f.dim, image_space(T))
        complement = _all_sums(f.dim, orthogonal_complement(f, fixed_space(T)))
        assert image == complement


@pytest.mark.parametrize("name", sorted(SMALL_FORMS))
def test_fixed_dimension_prediction(groups, name):
    f = SMALL_FORMS[name]
    ones = vectors_with_value(f, 1)
    for M in groups[name]:
        T = OrthogonalMap(f, M, check=False)
        for a in ones:
            assert len(fixed_space(T @ transvection(f, a))) == predicted_fixed_dim(T, a)


# ========== U-map ==========

class TestUMap:
    def test_partition(self, plus4):
        part = umap_partition(plus4)
        assert len(part.v1) == 3 and len(part.v2) == 3
        assert set(part.v1) | set(part.v2) == set(vectors_with_value(plus4, 1))
        for group in (part.v1, part.v2):
            for x in group:
                for y in group:
                    assert plus4.bilinear(x, y) == (0 if x == y else 1)
        assert all(plus4.bilinear(x, y) == 0 for x in part.v1 for y in part.v2)
        assert part.v1[0] == vectors_with_value(plus4, 1)[0]

    @pytest.mark.parametrize("values", ["1100", "00"])
    def test_partition_preconditions(self, values):
        f = QuadraticForm.standard(len(values) // 2, values)
        with pytest.raises(PreconditionError):
            umap_partition(f)

    def test_canonical_u0(self, plus4):
        U0 = canonical_u0(plus4)
        assert is_u_map(U0)
        assert (U0 @ U0).matrix == BitMatrix.identity(4)
        assert psi(U0) == 0
        assert split_components(U0) == (1, BitMatrix.identity(2), BitMatrix.identity(2))

    def test_transvections_are_not_u_maps(self, plus4):
        assert not is_u_map(OrthogonalMap.identity(plus4))
        for a in vectors_with_value(plus4, 1):
            assert not is_u_map(transvection(plus4, a))

    def test_involutive_u_maps_have_even_psi(self, groups, plus4):
        identity = BitMatrix.identity(4)
        umaps = [M for M in groups["dim4-arf0"] if is_u_map(OrthogonalMap(plus4, M, check=False))]
        assert len(umaps) == 36
        for M in umaps:
            if multiply(M, M) == identity:
                assert rank_parity(M) == 0

    def test_split_components_of_transvection(self, plus4):
        a = umap_partition(plus4).v1[0]
        u, T1, T2 = split_components(transvection(plus4, a))
        assert u == 0
        assert T2 == BitMatrix.identity(2)
        assert T1 != BitMatrix.identity(2)


# ========== 分解 ==========

def _check_decomposition(f, M):
    T = OrthogonalMap(f, M, check=False)
    d = decompose(T)
    assert recompose(f, d) == M
    assert len(d) % 2 == psi(T)
    assert all(f.evaluate(c) == 1 for c in d.word)
    if d.u_flag:
        assert f.dim == 4 and is_u_map(T)
    return d


class TestDecompose:
    def test_identity(self, plus4):
        assert decompose(OrthogonalMap.identity(plus4)) == Decomposition(0, ())

    def test_swap_in_dim_two(self, torus0):
        assert decompose(OrthogonalMap(torus0, SWAP)) == Decomposition(0, (V("11"),))

    def test_canonical_u0(self, plus4):
        assert decompose(canonical_u0(plus4)) == Decomposition(1, ())

    def test_word_is_in_application_order(self, minus4):
        word = (V("1000"), V("1110"))
        assert word_map(minus4, word).matrix == multiply(
            transvection_matrix(minus4, word[1]), transvection_matrix(minus4, word[0]))

    @pytest.mark.parametrize("name", sorted(SMALL_FORMS))
    def test_round_trip_exhaustive(self, groups, name):
        f = SMALL_FORMS[name]
        for M in groups[name]:
            _check_decomposition(f, M)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(3, 8), st.integers(0, 1), st.integers(0, 2 ** 32 - 1), st.integers(0, 40))
    def test_round_trip_random(self, genus, arf_value, seed, length):
        f = QuadraticForm.standard(genus, "11" * arf_value + "0" * (2 * genus - 2 * arf_value))
        _check_decomposition(f, random_orthogonal(f, seed, length).matrix)

    @pytest.mark.slow
    @settings(max_examples=1000, deadline=None)
    @given(st.integers(4, 8), st.integers(0, 2 ** 32 - 1))
    def test_round_trip_random_large(self, genus, seed):
        f = QuadraticForm.standard(genus, "10" * genus)
        _check_decomposition(f, random_orthogonal(f, seed, 3 * genus).matrix)


# ========== 枚举 ==========

class TestEnumerate:
    @pytest.mark.parametrize("name,order", [
        ("dim2-arf0", 2), ("dim2-arf1", 6), ("dim4-arf0", 72), ("dim4-arf1", 120)])
    def test_orders(self, groups, name, order):
        assert len(groups[name]) == order
        f = SMALL_FORMS[name]
        assert all(is_orthogonal(f, M) for M in groups[name])

    def test_transvections_have_index_two_in_special_case(self, plus4):
        closure = transvection_closure(plus4, Settings())
        full = enumerate_group(plus4, Settings())
        assert len(closure) == 36
        assert closure < full

    def test_canonical_order(self, groups):
        keys = [M.sort_key() for M in groups["dim2-arf1"]]
        assert keys == sorted(keys)
        assert keys[0] == "0110"

    def test_dimension_guard(self):
        f = QuadraticForm.standard(3)
        with pytest.raises(ResourceGuardError):
            enumerate_group(f, Settings(enumerate_max_dim=4))

    def test_order_guard(self, minus4):
        with pytest.raises(ResourceGuardError):
            enumerate_group(minus4, Settings(enumerate_max_order=50))

    def test_order_guard_before_search(self):
        # |O| = 348364800 在 dim 8, 不必先做广度优先搜索
        f = QuadraticForm.standard(4)
        with pytest.raises(ResourceGuardError, match="348364800"):
            enumerate_group(f, Settings())

    def test_expected_closure_order(self, plus4, minus4, torus0):
        assert expected_closure_order(plus4, include_umap=False) == 36
        assert expected_closure_order(plus4) == 72
        assert expected_closure_order(minus4, include_umap=False) == 120
        assert expected_closure_order(torus0) == 2

    @pytest.mark.slow
    @pytest.mark.parametrize("values,order", [("000000", 40320), ("110000", 51840)])
    def test_dim_six_closure(self, values, order):
        f = QuadraticForm.standard(3, values)
        assert len(transvection_closure(f, Settings())) == order
