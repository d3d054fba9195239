"""Condensation steps, the pivot-power determinant identities, the
Dodgson minor identity, and the condensation determinant driver."""

import random
from fractions import Fraction

import pytest

from condet import (
    FLOAT,
    INTEGER,
    RATIONAL,
    CondensationStep,
    Matrix,
    OpCounts,
    PivotSpec,
    PivotStrategy,
    ZeroRowExit,
    condense_at,
    condense_at_11,
    det_bareiss,
    det_cofactor,
    det_condensation,
    dodgson_identity_residual,
    pivot_block,
    select_pivot,
    trace_document,
    trace_from_document,
)
from conftest import GOLDEN_CONDENSED, GOLDEN_FACTOR, golden_matrix


def random_rat_matrix(rng, n):
    return Matrix(
        [
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
            for _ in range(n)
        ],
        RATIONAL,
    )


def random_int_matrix(rng, n, bound=9):
    return Matrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)], INTEGER)


# --- the 2x2 block layout ------------------------------------------------

def test_pivot_block_literal_case_table():
    # positional entries a(i,j) = 100*i + j make each case table row
    # checkable by eye
    n = 5
    m = Matrix([[100 * i + j for j in range(1, n + 1)] for i in range(1, n + 1)], INTEGER)
    k, l = 3, 3
    a = lambda i, j: 100 * i + j
    # j < l, i < k
    assert tuple(pivot_block(m, k, l, 2, 1)) == (a(2, 1), a(2, 3), a(3, 1), a(3, 3))
    # j >= l, i < k   (j skips over the pivot column)
    assert tuple(pivot_block(m, k, l, 2, 3)) == (a(2, 3), a(2, 4), a(3, 3), a(3, 4))
    # j < l, i >= k   (i skips over the pivot row)
    assert tuple(pivot_block(m, k, l, 3, 2)) == (a(3, 2), a(3, 3), a(4, 2), a(4, 3))
    # j >= l, i >= k
    assert tuple(pivot_block(m, k, l, 4, 4)) == (a(3, 3), a(3, 5), a(5, 3), a(5, 5))


def test_pivot_block_det_orientation():
    b = pivot_block(Matrix([[1, 2], [3, 4]], INTEGER), 1, 1, 1, 1)
    assert b.top_left == 1 and b.top_right == 2
    assert b.bottom_left == 3 and b.bottom_right == 4
    assert b.det() == 1 * 4 - 2 * 3


# --- corner condensation -------------------------------------------------

def test_condense_at_11_worked_example():
    m = Matrix([[2, 1, 3], [4, 5, 6], [7, 8, 10]], INTEGER)
    step = condense_at_11(m)
    assert step.condensed.to_rows() == [[6, 0], [9, -1]]
    assert step.pivot == PivotSpec(1, 1)
    assert step.pivot_value == 2
    assert step.sign == 1
    # 2**(3-2) * det(m) = det(condensed):  2 * -3 = -6
    assert det_cofactor(step.condensed) == 2 * det_cofactor(m)


def test_condense_at_11_golden_spot_values():
    step = condense_at_11(golden_matrix())
    c = step.condensed
    assert (c.rows, c.cols) == (6, 6)
    for j in range(1, 7):
        assert abs(c.get(1, j) - GOLDEN_CONDENSED[0][j - 1]) < 1e-12
    assert abs(c.get(3, 3) - GOLDEN_CONDENSED[2][2]) < 1e-12
    assert abs(c.get(6, 6) - GOLDEN_CONDENSED[5][5]) < 1e-12
    assert step.pivot_value ** 5 == GOLDEN_FACTOR


def test_condense_identity_at_corner_exact():
    # a(1,1)**(n-2) * det(A) = det(condensed), exactly over rationals
    rng = random.Random(400)
    for _ in range(80):
        n = rng.randint(3, 8)
        m = random_rat_matrix(rng, n)
        step = condense_at_11(m)
        assert step.pivot_value ** (n - 2) * det_bareiss(m) == det_bareiss(step.condensed)


def test_zero_corner_gives_singular_condensed():
    rng = random.Random(401)
    for _ in range(40):
        n = rng.randint(3, 7)
        rows = random_rat_matrix(rng, n).to_rows()
        rows[0][0] = Fraction(0)
        m = Matrix(rows, RATIONAL)
        step = condense_at_11(m)
        assert det_bareiss(step.condensed) == 0


def test_condense_at_11_minimum_size():
    step = condense_at_11(Matrix([[2, 5], [0, 1]], INTEGER))
    assert step.condensed.to_rows() == [[2]]
    with pytest.raises(ValueError):
        condense_at_11(Matrix([[3]], INTEGER))


def test_condensation_is_bilinear_in_scaling():
    # scaling the source by c scales every condensed entry by c**2
    rng = random.Random(402)
    for _ in range(30):
        n = rng.randint(3, 6)
        m = random_rat_matrix(rng, n)
        c = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1))
        scaled = Matrix([[c * v for v in row] for row in m.to_rows()], RATIONAL)
        lhs = condense_at_11(scaled).condensed
        rhs = condense_at_11(m).condensed
        assert lhs.to_rows() == [[c * c * v for v in row] for row in rhs.to_rows()]


# --- general-pivot condensation ------------------------------------------

def test_condense_at_corner_matches_condense_at_11():
    rng = random.Random(403)
    for _ in range(25):
        n = rng.randint(2, 6)
        m = random_rat_matrix(rng, n)
        assert condense_at(m, PivotSpec(1, 1)).condensed == condense_at_11(m).condensed


def test_condense_at_identity_all_pivots():
    # a(k,l)**(n-2) * det(A) = det(condensed at (k,l)) for every pivot
    rng = random.Random(404)
    for _ in range(25):
        n = rng.randint(3, 5)
        m = random_rat_matrix(rng, n)
        det = det_bareiss(m)
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                step = condense_at(m, PivotSpec(k, l))
                assert (step.condensed.rows, step.condensed.cols) == (n - 1, n - 1)
                assert step.pivot_value ** (n - 2) * det == det_bareiss(step.condensed), (
                    f"pivot ({k},{l})"
                )


def test_condense_at_records_rotation_sign():
    m = random_rat_matrix(random.Random(405), 4)
    assert condense_at(m, PivotSpec(1, 1)).sign == 1
    assert condense_at(m, PivotSpec(2, 1)).sign == -1
    assert condense_at(m, PivotSpec(2, 2)).sign == 1
    assert condense_at(m, PivotSpec(3, 4)).sign == -1


def test_condense_at_zero_pivot_vanishes():
    # With a zero pivot the identity degenerates: the condensed matrix
    # must be singular.  Exploratory extension of the pivot identity;
    # not wired into any gate.
    rng = random.Random(406)
    for _ in range(40):
        n = rng.randint(3, 5)
        rows = random_rat_matrix(rng, n).to_rows()
        k = rng.randint(1, n)
        l = rng.randint(1, n)
        rows[k - 1][l - 1] = Fraction(0)
        m = Matrix(rows, RATIONAL)
        step = condense_at(m, PivotSpec(k, l))
        assert det_bareiss(step.condensed) == 0


def test_condense_at_rejects_bad_pivot():
    m = Matrix([[1, 2], [3, 4]], INTEGER)
    with pytest.raises(IndexError):
        condense_at(m, PivotSpec(3, 1))
    with pytest.raises(ValueError):
        condense_at(Matrix([[1]], INTEGER), PivotSpec(1, 1))


# --- Dodgson minor identity ----------------------------------------------

def test_dodgson_residual_two_by_two():
    m = Matrix([[3, 7], [2, 5]], INTEGER)
    assert dodgson_identity_residual(m, 1, 2) == 0


def test_dodgson_residual_zero_on_exact_kinds():
    rng = random.Random(407)
    for _ in range(40):
        n = rng.randint(3, 6)
        m = random_rat_matrix(rng, n)
        for k in range(1, n + 1):
            for l in range(k + 1, n + 1):
                assert dodgson_identity_residual(m, k, l) == 0, f"(k,l)=({k},{l})"


def test_dodgson_residual_float_golden():
    from condet import remove_rows_cols

    m = golden_matrix()
    residual = dodgson_identity_residual(m, 6, 7)
    lhs = det_bareiss(m) * det_bareiss(remove_rows_cols(m, (6, 7), (6, 7)))
    assert abs(residual) <= 1e-9 * max(1.0, abs(lhs))


def test_dodgson_rejects_bad_pairs():
    m = Matrix([[1, 2], [3, 4]], INTEGER)
    with pytest.raises(ValueError):
        dodgson_identity_residual(m, 2, 1)
    with pytest.raises(ValueError):
        dodgson_identity_residual(m, 1, 3)


# --- pivot selection -------------------------------------------------------

def test_select_pivot_first_nonzero():
    assert select_pivot((0, 0, 3, 1), PivotStrategy.FIRST_NONZERO) == 3
    assert select_pivot((7,), PivotStrategy.FIRST_NONZERO) == 1
    assert select_pivot((0, 0), PivotStrategy.FIRST_NONZERO) is None


def test_select_pivot_max_magnitude():
    assert select_pivot((1, -5, 2), PivotStrategy.MAX_MAGNITUDE) == 2
    assert select_pivot((Fraction(1, 2), Fraction(-1, 2)), PivotStrategy.MAX_MAGNITUDE) == 1
    assert select_pivot((0, 0.0), PivotStrategy.MAX_MAGNITUDE) is None
    # ties keep the lowest column
    assert select_pivot((3, -3, 1), PivotStrategy.MAX_MAGNITUDE) == 1


# --- the condensation determinant driver -----------------------------------

def test_det_condensation_trivial_sizes():
    assert det_condensation(Matrix([], INTEGER)).value == 1
    assert det_condensation(Matrix([[9]], INTEGER)).value == 9
    result = det_condensation(Matrix([[2, 5], [0, 1]], INTEGER))
    assert result.value == 2
    assert result.trace == ()
    assert result.op_counts == OpCounts(multiplications=2, subtractions=1, divisions=0)


def test_det_condensation_worked_example():
    result = det_condensation(Matrix([[2, 1, 3], [4, 5, 6], [7, 8, 10]], INTEGER))
    assert result.value == -3
    assert len(result.trace) == 1
    step = result.trace[0]
    assert isinstance(step, CondensationStep)
    assert step.condensed.to_rows() == [[6, 0], [9, -1]]
    assert step.sign == 1


def test_det_condensation_matches_cofactor_on_integers():
    rng = random.Random(408)
    for _ in range(60):
        n = rng.randint(3, 8)
        m = random_int_matrix(rng, n)
        result = det_condensation(m)
        assert result.value == det_cofactor(m)
        assert len(result.trace) <= n - 2


def test_det_condensation_matches_bareiss_on_rationals():
    rng = random.Random(409)
    for _ in range(20):
        n = rng.randint(3, 9)
        m = random_rat_matrix(rng, n)
        assert det_condensation(m).value == det_bareiss(m)


def test_det_condensation_zero_first_row():
    rng = random.Random(410)
    rows = random_int_matrix(rng, 5).to_rows()
    rows[0] = [0, 0, 0, 0, 0]
    m = Matrix(rows, INTEGER)
    result = det_condensation(m)
    assert result.value == 0
    assert result.trace == (ZeroRowExit(5),)
    assert det_cofactor(m) == 0


def test_det_condensation_zero_row_surfacing_mid_recursion():
    # two proportional leading rows zero out the first condensed row
    # one level down
    m = Matrix(
        [
            [1, 2, 3, 4],
            [2, 4, 6, 8],
            [5, 1, 0, 2],
            [3, 3, 3, 3],
        ],
        INTEGER,
    )
    result = det_condensation(m)
    assert result.value == 0
    assert any(isinstance(s, ZeroRowExit) for s in result.trace)
    assert det_cofactor(m) == 0


def test_det_condensation_float_golden_first_step():
    m = golden_matrix()
    result = det_condensation(m)
    step = result.trace[0]
    for i in range(1, 7):
        for j in range(1, 7):
            assert abs(step.condensed.get(i, j) - GOLDEN_CONDENSED[i - 1][j - 1]) <= 1e-9
    reference = det_bareiss(m)
    assert abs(result.value - reference) <= 1e-9 * max(1.0, abs(reference))


def test_det_condensation_pivot_skips_leading_zero():
    # a(1,1) = 0 forces the pivot to a later column; the value must
    # still be exact
    rng = random.Random(411)
    for _ in range(30):
        n = rng.randint(3, 6)
        rows = random_int_matrix(rng, n).to_rows()
        rows[0][0] = 0
        m = Matrix(rows, INTEGER)
        result = det_condensation(m)
        assert result.value == det_cofactor(m)
        first = result.trace[0]
        if isinstance(first, CondensationStep):
            assert first.pivot.k == 1
            assert first.pivot.l >= 2


def test_det_condensation_strategies_agree():
    rng = random.Random(412)
    for _ in range(30):
        n = rng.randint(3, 7)
        m = random_rat_matrix(rng, n)
        a = det_condensation(m, PivotStrategy.FIRST_NONZERO)
        b = det_condensation(m, PivotStrategy.MAX_MAGNITUDE)
        assert a.value == b.value


def test_det_condensation_trace_off_keeps_value_and_counts():
    rng = random.Random(413)
    m = random_int_matrix(rng, 6)
    on = det_condensation(m, record_trace=True)
    off = det_condensation(m, record_trace=False)
    assert off.trace == ()
    assert off.value == on.value
    assert off.op_counts == on.op_counts


def test_det_condensation_op_counts_integer():
    # over an exact kind: per level of size s, 2*(s-1)**2 block
    # multiplications, plus s-3 pivot-power multiplications and one
    # division; plus the closed-form 2x2 base (2 mults, 1 sub)
    rng = random.Random(414)
    for n in range(3, 9):
        m = random_int_matrix(rng, n)
        result = det_condensation(m)
        if any(isinstance(s, ZeroRowExit) for s in result.trace):
            continue
        expected_mults = sum(2 * (s - 1) ** 2 for s in range(3, n + 1)) + 2
        expected_mults += sum(s - 3 for s in range(3, n + 1))
        expected_subs = sum((s - 1) ** 2 for s in range(3, n + 1)) + 1
        assert result.op_counts.multiplications == expected_mults
        assert result.op_counts.subtractions == expected_subs
        assert result.op_counts.divisions == n - 2


def test_det_condensation_op_counts_float_divides_per_level():
    # floats divide repeatedly instead of building pivot powers
    rng = random.Random(415)
    n = 6
    m = Matrix([[float(rng.randint(-9, 9)) for _ in range(n)] for _ in range(n)], FLOAT)
    result = det_condensation(m)
    assert not any(isinstance(s, ZeroRowExit) for s in result.trace)
    assert result.op_counts.divisions == sum(s - 2 for s in range(3, n + 1))
    expected_mults = sum(2 * (s - 1) ** 2 for s in range(3, n + 1)) + 2
    assert result.op_counts.multiplications == expected_mults


def test_det_condensation_levels_divide_at_return():
    # each recorded condensed matrix carries undivided entries: its
    # determinant equals pivot**(s-2) times the determinant one level up
    rng = random.Random(416)
    m = random_rat_matrix(rng, 6)
    result = det_condensation(m)
    level_value = det_bareiss(m)
    size = 6
    for step in result.trace:
        assert isinstance(step, CondensationStep)
        below = det_bareiss(step.condensed)
        assert below == step.pivot_value ** (size - 2) * level_value
        level_value = below
        size -= 1


def test_det_condensation_rejects_non_square():
    with pytest.raises(ValueError):
        det_condensation(Matrix([[1, 2, 3], [4, 5, 6]], INTEGER))


# --- trace serialization ---------------------------------------------------

def test_trace_document_round_trip():
    rng = random.Random(417)
    for kind_name, make in (
        ("rational", lambda: random_rat_matrix(rng, 5)),
        ("integer", lambda: random_int_matrix(rng, 5)),
    ):
        m = make()
        result = det_condensation(m)
        doc = trace_document(m, result)
        assert doc["scalar_kind"] == kind_name
        m2, value2, steps2 = trace_from_document(doc)
        assert m2 == m
        assert value2 == result.value
        assert steps2 == result.trace


def test_trace_document_zero_row_marker():
    m = Matrix([[0, 0, 0], [1, 2, 3], [4, 5, 6]], INTEGER)
    result = det_condensation(m)
    doc = trace_document(m, result)
    assert doc["steps"] == [{"kind": "zero-row", "size": 3}]
    _, value, steps = trace_from_document(doc)
    assert value == 0
    assert steps == (ZeroRowExit(3),)


def test_trace_document_rejects_foreign_format():
    with pytest.raises(ValueError):
        trace_from_document({"format": "something-else"})
