"""Published reference values for the four built-in families."""

from .exact import RatFunc


def _rf(num, den):
    return RatFunc(num, den)


# eps_1..eps_4 as functions of z
TABLE2 = {
    5: [
        _rf([1], [-625, 625]),
        _rf([-3], [-25, 25]),
        _rf([1], [-1, 1]),
        _rf([-2], [-1, 1]),
    ],
    6: [
        _rf([1], [-1296, 324]),
        _rf([-5], [-72, 18]),
        _rf([50, -1], [-72, 18]),
        _rf([-20, -1], [-12, 3]),
    ],
    8: [
        _rf([1], [-4096, 16]),
        _rf([-3840, -15], [-131072, 512]),
        _rf([6400, -15], [-16384, 64]),
        _rf([-1280, -3], [-1024, 4]),
    ],
    10: [
        _rf([5], [-50000, 4]),
        _rf([-37500, -7], [-2500000, 200]),
        _rf([62500, -7], [-250000, 20]),
        _rf([-12500, -1], [-12500, 1]),
    ],
}

SINGULAR_POINT = {5: 1, 6: 4, 8: 256, 10: 12500}

# n_0..n_4
TABLE3 = {
    5: [5, 2875, 609250, 317206375, 242467530000],
    6: [3, 7884, 6028452, 11900417220, 34600752005688],
    8: [2, 29504, 128834912, 1423720546880, 23193056024793312],
    10: [2, 462400, 24431571200, 3401788732948800, 700309317702649312000],
}
