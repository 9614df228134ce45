"""Frozen example fixtures.

Each preset pins concrete low-degree polynomial data for one worked example
(ambient dimension, base-space dimension, array entries), together with the
rank profile the construction must reproduce and, where the example states
one, the matching rank-profile pair.  Presets are verified at build time:
constructing one asserts its expected ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import F0Array, UnitonChain
from .errors import BadArguments
from .pairs import AdaptedPair
from .ratfun import MeroVector, RatFun


def _mv(n: int, coords: dict) -> MeroVector:
    """Vector with 1-based coordinate -> ascending coefficient list."""
    out = [RatFun.zero()] * n
    for idx, coeffs in coords.items():
        out[idx - 1] = RatFun.from_coeffs(coeffs)
    return MeroVector(out)


@dataclass
class Preset:
    name: str
    description: str
    n: int
    k: int
    r: int
    q_sign: int
    array_rows: list
    expected_alpha_ranks: tuple
    expected_f_ranks: tuple
    pair: AdaptedPair | None = None
    validate: bool = True
    expect_valid: bool = True

    def build_array(self) -> F0Array:
        return F0Array(self.n, self.k, self.array_rows, validate=self.validate)

    def build_chain(self, seed: int = 0, sample_count: int = 8) -> UnitonChain:
        chain = UnitonChain(self.build_array(), q_sign=self.q_sign, seed=seed,
                           sample_count=sample_count)
        if self.expect_valid:
            if tuple(chain.generic_alpha_ranks) != self.expected_alpha_ranks:
                raise AssertionError(
                    f"{self.name}: alpha ranks {chain.generic_alpha_ranks} "
                    f"!= expected {self.expected_alpha_ranks}"
                )
            if tuple(chain.generic_f_ranks) != self.expected_f_ranks:
                raise AssertionError(
                    f"{self.name}: F ranks {chain.generic_f_ranks} "
                    f"!= expected {self.expected_f_ranks}"
                )
        return chain


def _u3_example() -> Preset:
    # Rank-one and rank-two flag factors in ambient dimension three.
    n = 3
    rows = [
        [_mv(n, {1: [1], 2: [0, 1]}), None, None],
        [_mv(n, {3: [1]}), None, None],
    ]
    return Preset(
        name="u3-example",
        description="uniton number two in U(3): flag factors of rank one and two",
        n=n, k=2, r=2, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(1, 2),
        expected_f_ranks=(2, 2, 1),
        pair=AdaptedPair(r=2, k=2, n=3, L=((1, 1), (0,)), S=((0, 0), (0,))),
    )


def _c10_example() -> Preset:
    # The 3 x 10 array with five active columns; block columns in canonical
    # order (base-valued block first in each row).
    n = 10
    rows = [
        [
            _mv(n, {1: [1], 2: [0, 1], 3: [0, 0, 1], 4: [0, 0, 0, 1], 5: [0, 0, 0, 0, 1]}),
            _mv(n, {6: [1], 7: [0, 1], 8: [2, 3], 10: [1, 1]}),
            None, None, None, None, None, None, None, None,
        ],
        [
            _mv(n, {6: [1], 7: [0, 1], 9: [2]}),
            _mv(n, {1: [1], 3: [0, 1], 5: [2]}),
            _mv(n, {2: [1], 4: [2], 5: [1]}),
            _mv(n, {6: [1, 1], 7: [2], 9: [0, 1], 10: [1]}),
            None, None, None, None, None, None,
        ],
        [
            _mv(n, {1: [0, 1], 2: [1], 4: [1]}),
            _mv(n, {6: [0, 1], 7: [1], 8: [1, 1]}),
            _mv(n, {6: [1], 8: [0, 1], 9: [1]}),
            _mv(n, {2: [0, 1], 3: [1], 5: [1]}),
            _mv(n, {1: [1], 2: [1], 5: [0, 0, 2]}),
            None, None, None, None, None,
        ],
    ]
    return Preset(
        name="c10-example",
        description="three-step chain in C^10 with flag factor ranks 2, 6, 9",
        n=n, k=5, r=3, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(2, 6, 9),
        expected_f_ranks=(5, 5, 5, 6),
        pair=AdaptedPair(
            r=3, k=5, n=10,
            L=((1, 1, 1), (1, 0), (1,)),
            S=((1, 1, 0), (1, 1), (0,)),
        ),
    )


def _dim2_example() -> Preset:
    # Two-dimensional base space, two active columns, instantiated at n = 10;
    # the tautological bundles have ranks n-2, 2, n-3.
    n = 10
    rows = [
        [
            _mv(n, {1: [1], 2: [0, 1]}),
            _mv(n, {3: [1], 4: [0, 1], 5: [0, 0, 1], 6: [0, 0, 0, 1], 7: [0, 0, 0, 0, 1]}),
            None, None, None, None, None, None, None, None,
        ],
        [
            _mv(n, {3: [1], 5: [0, 1], 8: [2]}),
            _mv(n, {1: [1], 2: [0, 1]}),
            None, None, None, None, None, None, None, None,
        ],
        [
            _mv(n, {1: [0, 1], 2: [1]}),
            _mv(n, {4: [1], 5: [0, 1], 6: [1], 9: [1]}),
            None, None, None, None, None, None, None, None,
        ],
    ]
    return Preset(
        name="dim2-example",
        description="rank-2 base space at n = 10: bundle ranks 8, 2, 7",
        n=n, k=2, r=3, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(2, 4, 5),
        expected_f_ranks=(2, 8, 2, 7),
        pair=AdaptedPair(
            r=3, k=2, n=10,
            L=((1, 1, 0), (0, 0), (0,)),
            S=((1, 1, 1), (0, 0), (0,)),
        ),
    )


def _g2c5_case_a() -> Preset:
    n = 5
    rows = [
        [_mv(n, {1: [1], 2: [0, 1], 3: [0, 0, 1], 4: [0, 0, 0, 1], 5: [0, 0, 0, 0, 1]}),
         None, None, None, None],
        [None] * 5,
        [None] * 5,
    ]
    return Preset(
        name="g2c5-case-a",
        description="G_2(C^5), uniton number 3, full base space (k = 5)",
        n=n, k=5, r=3, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(1, 2, 3),
        expected_f_ranks=(5, 1, 4, 2),
        pair=AdaptedPair(r=3, k=5, n=5, L=((1, 1, 1), (0, 0), (0,)),
                         S=((0, 0, 0), (0, 0), (0,))),
    )


def _g2c5_case_b() -> Preset:
    n = 5
    rows = [
        [
            _mv(n, {1: [1], 2: [0, 1], 3: [0, 0, 1], 4: [0, 0, 0, 1]}),
            _mv(n, {5: [1]}),
            None, None, None,
        ],
        [
            None,
            _mv(n, {1: [2], 2: [1], 4: [3]}),
            None, None, None,
        ],
        [
            _mv(n, {1: [0, 1], 2: [1], 3: [1]}),
            None, None, None, None,
        ],
    ]
    return Preset(
        name="g2c5-case-b",
        description="G_2(C^5), uniton number 3, k = 4",
        n=n, k=4, r=3, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(2, 3, 4),
        expected_f_ranks=(4, 1, 3, 2),
        pair=AdaptedPair(r=3, k=4, n=5, L=((1, 1, 1), (0, 0), (0,)),
                         S=((1, 0, 0), (0, 0), (0,))),
    )


def _g2c5_case_c() -> Preset:
    n = 5
    rows = [
        [_mv(n, {1: [1], 2: [0, 1], 3: [0, 0, 1], 4: [0, 0, 0, 1], 5: [0, 0, 0, 0, 1]}),
         None, None, None, None],
        [None] * 5,
        [
            _mv(n, {2: [1], 4: [0, 1], 5: [1]}),
            _mv(n, {1: [1], 3: [2], 5: [0, 1]}),
            None, None, None,
        ],
    ]
    return Preset(
        name="g2c5-case-c",
        description="G_2(C^5), uniton number 3, trivial base space (k = 0)",
        n=n, k=0, r=3, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(1, 2, 4),
        expected_f_ranks=(0, 4, 1, 2),
        pair=AdaptedPair(r=3, k=0, n=5, L=((0, 0, 0), (0, 0), (0,)),
                         S=((1, 1, 1), (0, 0), (1,))),
    )


def _g4c8_stay() -> Preset:
    n = 8
    rows = [
        [
            _mv(n, {1: [1], 2: [0, 1], 3: [0, 0, 1], 4: [0, 0, 0, 1]}),
            _mv(n, {5: [1], 6: [0, 1], 7: [0, 0, 1], 8: [0, 0, 0, 1]}),
            None, None, None, None, None, None,
        ],
        [None] * 8,
        [None] * 8,
    ]
    return Preset(
        name="g4c8-stay",
        description="G_4(C^8): every partial map stays in the same Grassmannian",
        n=n, k=4, r=3, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(2, 4, 6),
        expected_f_ranks=(4, 4, 4, 4),
        pair=AdaptedPair(r=3, k=4, n=8, L=((1, 1, 1), (0, 0), (0,)),
                         S=((1, 1, 1), (0, 0), (0,))),
    )


def _g3c8_max() -> Preset:
    n = 8
    rows = [
        [
            _mv(n, {1: [1], 2: [0, 1], 3: [0, 0, 1], 4: [0, 0, 0, 1]}),
            _mv(n, {5: [1], 6: [0, 1], 7: [0, 0, 1], 8: [0, 0, 0, 1]}),
            None, None, None, None, None, None,
        ],
        [
            _mv(n, {5: [1], 7: [0, 1], 8: [2]}),
            _mv(n, {2: [1], 3: [0, 1]}),
            None, None, None, None, None, None,
        ],
        [
            _mv(n, {1: [0, 1], 3: [1], 4: [1]}),
            _mv(n, {5: [2], 6: [0, 1], 8: [1]}),
            _mv(n, {6: [1], 7: [0, 1], 8: [1]}),
            None, None, None, None, None,
        ],
    ]
    return Preset(
        name="g3c8-max",
        description="G_3(C^8), k = 4, maximal uniton number 3",
        n=n, k=4, r=3, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(2, 4, 7),
        expected_f_ranks=(4, 4, 4, 3),
        pair=AdaptedPair(r=3, k=4, n=8, L=((1, 1, 1), (0, 0), (0,)),
                         S=((1, 1, 1), (0, 0), (1,))),
    )


def _broken_pattern() -> Preset:
    # A column mixing base and complement components: the constant factor no
    # longer commutes with the flag, so the product leaves the Grassmannian.
    n = 3
    rows = [
        [_mv(n, {1: [1], 3: [0, 1]}), None, None],
    ]
    return Preset(
        name="broken-pattern",
        description="violator: mixed column, involution and splitting fail",
        n=n, k=2, r=1, q_sign=1, array_rows=rows,
        expected_alpha_ranks=(1,),
        expected_f_ranks=(2, 2),
        validate=False,
        expect_valid=False,
    )


_FACTORIES = {
    "u3-example": _u3_example,
    "c10-example": _c10_example,
    "dim2-example": _dim2_example,
    "g2c5-case-a": _g2c5_case_a,
    "g2c5-case-b": _g2c5_case_b,
    "g2c5-case-c": _g2c5_case_c,
    "g4c8-stay": _g4c8_stay,
    "g3c8-max": _g3c8_max,
    "broken-pattern": _broken_pattern,
}

PRESET_NAMES = tuple(_FACTORIES)
VALID_PRESET_NAMES = tuple(name for name in PRESET_NAMES if name != "broken-pattern")


def get_preset(name: str) -> Preset:
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise BadArguments(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None
