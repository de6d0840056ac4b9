import pytest

from quasikit.errors import BottomNotPushout, InvalidMorphism, NoMatch, NotCommutative
from quasikit.presheaf import FuzzyMorphism, identity
from quasikit.rewrite import (
    KEY,
    LETTER,
    apply_right_step,
    build_transmission_demo,
    build_transmission_rule,
    holds,
    make_state,
    transmission_host,
    transmit,
    validate_host,
    validate_rule,
)
from quasikit.serialize import Workspace, load_fixture
from conftest import DATA


def three(p=(LETTER,), q=(), r=(KEY,), ends=("p", "q", "r")):
    return make_state({"p": set(p), "q": set(q), "r": set(r)}, {"c": ends})


@pytest.mark.parametrize(
    "state,args,msg",
    [
        (three(), ("p", "p", "r", "c"), "distinct"),
        (three(), ("p", "q", "z", "c"), "unknown process"),
        (three(), ("p", "q", "r", "d"), "no connection"),
        (three(p=()), ("p", "q", "r", "c"), "letter"),
        (three(q=(LETTER,)), ("p", "q", "r", "c"), "already holds"),
        (three(r=()), ("p", "q", "r", "c"), "key"),
        (three(ends=("q", "p", "r")), ("p", "q", "r", "c"), "does not link"),
    ],
)
def test_no_match(state, args, msg):
    with pytest.raises(NoMatch, match=msg):
        transmit(state, *args)


def test_demo_post_state():
    demo = build_transmission_demo()
    res = apply_right_step(demo["rule"], demo["host"])
    assert res.G_R == demo["expected_post"]
    assert res.report.vk_verdict is not False
    assert holds(res.G_R, "q") == {LETTER}


def test_other_resources_stay_put():
    # p holds both resources; only the letter moves and the key at r is spent
    s = three(p=(LETTER, KEY), q=(KEY,))
    post = transmit(s, "p", "q", "r", "c").G_R
    assert {z: holds(post, z) for z in "pqr"} == {"p": {KEY}, "q": {KEY, LETTER}, "r": set()}
    assert list(post.carrier("C")) == []


def test_bystanders_and_their_links_survive():
    s = make_state(
        {"p": {LETTER}, "q": set(), "r": {KEY}, "z": {LETTER}},
        {"c": ("p", "q", "r"), "d": ("z", "p", "q")},
    )
    post = transmit(s, "p", "q", "r", "c").G_R
    assert holds(post, "z") == {LETTER}
    assert list(post.carrier("C")) == ["d"]
    assert tuple(post.act(leg, "d") for leg in ("s", "m", "t")) == ("z", "p", "q")


def test_identity_rule_leaves_host_alone():
    rule = load_fixture("identity-rule.json")
    host = load_fixture("identity-host.json")
    res = apply_right_step(rule, host)
    assert res.G_R == host.G_K


def test_bad_bottom_square():
    with pytest.raises(BottomNotPushout):
        Workspace().load(DATA / "bad-bottom-rule.json")


def test_rule_validation_catches_wiring():
    rule = build_transmission_rule(set(), set(), set())
    with pytest.raises(InvalidMorphism):
        validate_rule(rule.K, rule.R, rule.Kp, rule.Rp, rule.t_K, rule.t_K, rule.t_R, rule.r_p)


def test_host_validation():
    rule, host = transmission_host(three(), "p", "q", "r", "c")
    assert validate_host(rule, host.G_K, host.u, host.u_p) is not None
    with pytest.raises(InvalidMorphism):
        validate_host(rule, host.G_K, host.u_p, host.u)
    # send q to p: commutes nowhere with t_K
    bent = FuzzyMorphism(rule.K, host.G_K, {"P": {"p": "p", "q": "p", "r": "r"}, "C": {}})
    with pytest.raises((NotCommutative, InvalidMorphism)):
        validate_host(rule, host.G_K, bent, host.u_p)
    with pytest.raises(InvalidMorphism):
        validate_host(rule, host.G_K, host.u, identity(host.G_K))
