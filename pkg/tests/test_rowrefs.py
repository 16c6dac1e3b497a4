import pytest

from homlie.algebra import Window, builtin
from homlie.rowrefs import COMPOSITES, REFS, check_all, check_composite, check_reference

WIN = Window(-12, 12)
S_VALUES = (0, 1, -2)

_ALGS = {}


def _alg(name):
    if name not in _ALGS:
        _ALGS[name] = builtin(name)
    return _ALGS[name]


@pytest.mark.parametrize("ref", REFS, ids=lambda r: r.name)
def test_reference_rows(ref):
    for sample, s in zip(ref.samples, S_VALUES):
        check_reference(_alg(ref.algebra), ref, sample, s, WIN)


@pytest.mark.parametrize("comp", COMPOSITES, ids=lambda c: c.name)
def test_composite_references(comp):
    for sample, s in zip(comp.samples, S_VALUES):
        check_composite(_alg(comp.algebra), comp, sample, s, WIN)


def test_every_reference_has_three_samples():
    for ref in REFS:
        assert len(ref.samples) >= 3
    for comp in COMPOSITES:
        assert len(comp.samples) >= 3


def test_check_all_counts():
    n = check_all()
    assert n == 3 * (len(REFS) + len(COMPOSITES))


def test_reference_detects_a_wrong_formula():
    # flipping a coefficient sign must break the comparison
    from dataclasses import replace

    ref = REFS[0]
    broken = replace(
        ref,
        entries=lambda m, n, p, s: [
            (key, -c if i == 0 else c)
            for i, (key, c) in enumerate(ref.entries(m, n, p, s))
        ],
    )
    with pytest.raises(AssertionError):
        check_reference(_alg(ref.algebra), broken, ref.samples[0], 0, WIN)
