import pytest

from aibeir.errors import EncodingError, MalformedLengthError, NotInSubgroupError
from aibeir.pairing import GtElement, deserialize_gt, fixed_base, pairing, serialize_gt


@pytest.fixture
def gt_pair(desk_params):
    g = fixed_base(desk_params)
    return pairing(g, g), pairing(g * 5, g * 11)


def test_inverse_and_division(desk_params):
    q = desk_params.q
    x = GtElement(3, 7, q)
    assert (x * x.inverse()).is_one()
    assert ((x * x) / x) == x


def test_conjugate_is_frobenius(desk_params):
    x = GtElement(12345, 678, desk_params.q)
    assert x**desk_params.q == x.conjugate()


def test_negative_power(gt_pair):
    a, _ = gt_pair
    assert a**-3 == (a**3).inverse()
    assert (a**0).is_one()


def test_zero_has_no_inverse(desk_params):
    with pytest.raises(ZeroDivisionError):
        GtElement(0, 0, desk_params.q).inverse()


def test_pairing_values_have_order_p(desk_params, gt_pair):
    for value in gt_pair:
        assert value.has_order_dividing(desk_params.p)
        assert not value.is_one()


def test_serialize_round_trip(desk_params, gt_pair):
    for value in gt_pair:
        data = serialize_gt(value, desk_params)
        assert len(data) == 2 * desk_params.field_width
        assert deserialize_gt(data, desk_params) == value


def test_wrong_length_rejected(desk_params, gt_pair):
    data = serialize_gt(gt_pair[0], desk_params)
    with pytest.raises(MalformedLengthError):
        deserialize_gt(data[:-1], desk_params)


def test_unreduced_coordinate_rejected(desk_params):
    width = desk_params.field_width
    data = desk_params.q.to_bytes(width, "big") + (0).to_bytes(width, "big")
    with pytest.raises(EncodingError):
        deserialize_gt(data, desk_params)


def test_zero_rejected(desk_params):
    with pytest.raises(NotInSubgroupError):
        deserialize_gt(bytes(2 * desk_params.field_width), desk_params)


def test_element_outside_subgroup_rejected(desk_params):
    width = desk_params.field_width
    # 2 lies in F_q, whose multiplicative order divides q - 1 and so shares no factor p
    data = (2).to_bytes(width, "big") + (0).to_bytes(width, "big")
    with pytest.raises(NotInSubgroupError):
        deserialize_gt(data, desk_params)
