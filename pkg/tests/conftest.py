import pytest

from flra.params import SystemParams


def make_params(
    n_fl=30,
    t_round=60.0,
    lambda_fresh=1e4,
    s_fl=1e8,
    q_min=0.178,
    t_cpu=38.0,
    gain=0.1,
    **overrides,
):
    kwargs = dict(
        n_fl=n_fl,
        lambda_fresh=lambda_fresh,
        t_cpu=t_cpu,
        t_round=t_round,
        q_min=q_min,
        eps_retx=100.0,
        bandwidth=60e6,
        s_fl=s_fl,
        s_ra=1500.0,
        gains_fl=(gain,) * n_fl,
        gain_ra=gain,
        p_tx_fl=0.4,
        p_tx_ra=0.4,
        n0=1e-17,
    )
    kwargs.update(overrides)
    return SystemParams(**kwargs)


# the five showcase configurations: (n_fl, t_round, lambda_fresh),
# all with the 36.72 Mbit model
SHOWCASE = {
    "C1": (10, 45.0, 1e4),
    "C2": (10, 45.0, 1e5),
    "C3": (30, 40.0, 1e5),
    "C4": (30, 60.0, 1e5),
    "C5": (30, 120.0, 5e5),
}


def showcase_params(name):
    n, t_round, lam = SHOWCASE[name]
    return make_params(n_fl=n, t_round=t_round, lambda_fresh=lam, s_fl=36.72e6)


@pytest.fixture
def default_params():
    return make_params()


@pytest.fixture
def c1_params():
    return showcase_params("C1")
