import pytest

from src.bucket import sopcount_bucket
from src.circuit_parser import parse_circuit
from src.errors import InconsistentInstanceError, ResourceCapError, ValidationError
from src.oracles import sopcount_brute
from src.sop import SopInstance, VarId, extract_sop

EXAMPLE_COUNTS = (4, 2, 0, 0, 0, 2, 0, 0)


def _complete(n, b=None):
    return SopInstance(
        r=8,
        vars=tuple(VarId(i, 1) for i in range(n)),
        edges=frozenset((u, v) for u in range(n) for v in range(u + 1, n)),
        b=tuple(b or [0] * n),
        c=0,
        hadamard_count=2 * n,
    )


def test_reference_instance_with_named_order(example_instance):
    counts = sopcount_bucket(example_instance, ["q0s1", "q2s1", "q1s1"])

    assert counts.counts == EXAMPLE_COUNTS


def test_reference_instance_with_minfill_order(example_instance):
    assert sopcount_bucket(example_instance).counts == EXAMPLE_COUNTS
    assert sopcount_bucket(example_instance, [1, 0, 2]).counts == EXAMPLE_COUNTS


def test_single_variable_and_constant_only():
    single = extract_sop(parse_circuit("qubits 1\nh 0\nh 0"), "0", "0")
    pinned = extract_sop(parse_circuit("qubits 2\nh 0\nt 1"), "01", "11")

    assert sopcount_bucket(single).counts == (2, 0, 0, 0, 0, 0, 0, 0)
    assert sopcount_bucket(pinned).counts == (0, 1, 0, 0, 0, 0, 0, 0)


def test_agrees_with_brute_force(random_cases):
    for _, _, _, instance in random_cases(61, 150, max_qubits=5, max_gates=16):
        if instance.n_vars > 14:
            continue
        assert sopcount_bucket(instance) == sopcount_brute(instance)


def test_separator_cap_is_enforced():
    instance = _complete(6, [1, 0, 3, 0, 0, 2])

    with pytest.raises(ResourceCapError, match="separador") as excinfo:
        sopcount_bucket(instance, max_separator=4)
    assert excinfo.value.limit == 4
    assert excinfo.value.actual == 5
    assert sopcount_bucket(instance, max_separator=5) == sopcount_brute(instance)


def test_order_must_be_a_permutation(example_instance):
    with pytest.raises(ValidationError, match="permutación"):
        sopcount_bucket(example_instance, [0, 1])
    with pytest.raises(ValidationError, match="no es libre"):
        sopcount_bucket(example_instance, ["q0s1", "q1s1", "q2s2"])


def test_inconsistent_instance_is_rejected():
    instance = extract_sop(parse_circuit("qubits 1"), "0", "1")

    with pytest.raises(InconsistentInstanceError):
        sopcount_bucket(instance)
