from fractions import Fraction

import pytest

import masc_toolchain as mt


def test_run_bundled_imul():
    assert mt.run_bundled("imul", "Imul", (3, 5)) == 15
    assert mt.run_bundled("imul", "Imul", (2**32 - 1, 2**32 - 1)) == (2**32 - 1) ** 2


def test_run_divide_tuple_and_assert():
    assert mt.run_bundled("divide", "Divide", (23, 5)) == (4, 3)
    with pytest.raises(mt.MascAssertionError):
        mt.run_bundled("divide", "Divide", (23, 0))


def test_check_rejects_bad_source():
    with pytest.raises(ValueError):
        mt.check("uint f() { return g; }")


def test_emit_ast_contains_assignment():
    ast = mt.emit_ast(mt.bundled_source("sf8i2"))
    assert "(ASSIGN Z" in ast
    assert "(INTVAL 8 X)" in ast


def test_translate_then_eval_ir_agrees_with_run():
    src = mt.bundled_source("foo")
    ir = mt.translate(src)
    assert "(DEFUN FOO" in ir.replace("\n  ", " ")
    for args in [(1, 2, 3), (9, 9, 9), (50, 0, 7)]:
        assert mt.eval_ir(ir, "FOO", args) == mt.run(src, "foo", args)


def test_fraction_arguments():
    src = "uint f(uint x) { uint y = x; return y; }"
    assert mt.run(src, "f", (Fraction(7, 2),)) == 3  # truncation on assignment


def test_array_arguments():
    src = mt.bundled_source("sum8")
    a = [1, 2, 3, 4, 5, 6, 7, 8]
    b = [10, 20, 30, 40, 50, 60, 70, 80]
    out = mt.run(src, "Sum8", (a, b))
    assert out == {i: a[i] + b[i] for i in range(8)}


def test_verify_quick_passes():
    rows = mt.verify(seed=1, quick=True)
    assert rows and all(ok for _, ok, _ in rows)
