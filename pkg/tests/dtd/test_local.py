from hypothesis import given
from hypothesis import strategies as st

from patternpype.dtd import (
    CLOCK_MODULUS,
    DtdLocal,
    is_newer,
    newest,
    next_wave_id,
    tree_children,
    tree_parent,
)

clocks = st.integers(0, CLOCK_MODULUS - 1)


class TestClocks:
    """Test wrap-around clock comparison."""

    def test_plain_order(self):
        assert is_newer(2, 1)
        assert not is_newer(1, 2)
        assert not is_newer(3, 3)

    def test_wrap(self):
        assert is_newer(1, CLOCK_MODULUS - 1)
        assert not is_newer(CLOCK_MODULUS - 1, 1)
        assert newest(CLOCK_MODULUS - 2, 3) == 3

    @given(a=clocks, step=st.integers(1, 1000))
    def test_antisymmetric(self, a, step):
        b = (a + step) % CLOCK_MODULUS
        assert is_newer(b, a)
        assert not is_newer(a, b)

    def test_next_wave_id_skips_zero(self):
        assert next_wave_id(0) == 1
        assert next_wave_id(41) == 42
        assert next_wave_id(CLOCK_MODULUS - 1) == 1
        assert is_newer(next_wave_id(CLOCK_MODULUS - 1), CLOCK_MODULUS - 1)


class TestTree:
    def test_ternary_shape(self):
        assert tree_parent(0) is None
        assert [tree_parent(i) for i in range(1, 8)] == [0, 0, 0, 1, 1, 1, 2]
        assert tree_children(0, 8) == (1, 2, 3)
        assert tree_children(2, 8) == (7,)
        assert tree_children(3, 8) == ()

    @given(workers=st.integers(1, 200))
    def test_parent_and_children_agree(self, workers):
        for worker_id in range(workers):
            for child in tree_children(worker_id, workers):
                assert tree_parent(child) == worker_id
        assert sum(len(tree_children(i, workers)) for i in range(workers)) == workers - 1


class TestDtdLocal:
    """Test the balance, timestamps and taint of one worker."""

    def test_balance(self):
        local = DtdLocal()

        assert local.on_basic_send() == 0
        local.on_basic_send()
        local.on_basic_receive(0)

        assert local.balance == 1
        assert not local.tainted

    def test_first_visit_is_valid(self):
        local = DtdLocal()

        assert local.visit(1) is False
        assert local.clock == 1

    def test_message_from_the_future_taints(self):
        local = DtdLocal()
        local.visit(1)

        local.on_basic_receive(2)

        assert local.tainted
        assert local.clock == 2
        assert local.visit(2) is True
        assert not local.tainted
        assert local.visit(3) is False

    def test_old_message_does_not_taint(self):
        local = DtdLocal()
        local.visit(5)

        local.on_basic_receive(4)

        assert not local.tainted
        assert local.clock == 5

    def test_stale_wave_is_invalid(self):
        local = DtdLocal()
        local.visit(5)

        assert local.visit(5) is True
