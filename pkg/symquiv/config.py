import enum
import logging
import sys


class SymQuivConfig:
    SCHEMA = "symquiv/1"
    DEFAULT_SEED = 0
    MAX_REDUCTION_STATES = 20000
    MONOMIAL_BUDGET = 3000
    DEFAULT_MAX_DEGREE = 4
    DEFAULT_TRIALS = 100
    # entries of random skew/symmetric matrices fed to the Cayley transform
    CAYLEY_ENTRY_RANGE = (-3, 3)
    # elementary factors per SL block
    ELEMENTARY_STEPS = 6
    SAMPLE_ENTRY_RANGE = (-5, 5)
    LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class Flavor(enum.Enum):
    PLAIN = "plain"
    SYMPLECTIC = "symplectic"
    ORTHOGONAL = "orthogonal"

    @classmethod
    def parse(cls, text):
        if isinstance(text, Flavor):
            return text
        for flavor in cls:
            if flavor.value == text:
                return flavor
        raise ValueError(f"unknown flavor {text!r}")


class Region(enum.Enum):
    PREPROJECTIVE = "preprojective"
    REGULAR = "regular"
    PREINJECTIVE = "preinjective"


class Direction(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


class TameKind(enum.Enum):
    A201 = "A201"
    A202 = "A202"
    A02 = "A02"
    A11 = "A11"
    A00 = "A00"
    D10 = "D10"
    D01 = "D01"

    @property
    def is_a(self):
        return self.value.startswith("A")

    @property
    def label(self):
        return {
            "A201": "Ã^{2,0,1}",
            "A202": "Ã^{2,0,2}",
            "A02": "Ã^{0,2}",
            "A11": "Ã^{1,1}",
            "A00": "Ã^{0,0}",
            "D10": "D̃^{1,0}",
            "D01": "D̃^{0,1}",
        }[self.value]


class MiddleTerm(enum.Enum):
    OP = "Op"
    SPP = "Spp"
    NEITHER = "neither"


class GeneratorKind(enum.Enum):
    DET_ARC = "det_arc"
    PF_ARC = "pf_arc"
    DET_PENCIL_COEFF = "det_pencil_coeff"
    PF_PENCIL_COEFF = "pf_pencil_coeff"
    DET_ARROW = "det_arrow"

    @property
    def is_pf(self):
        return self in (GeneratorKind.PF_ARC, GeneratorKind.PF_PENCIL_COEFF)


def configure_logging(verbose=0):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format=SymQuivConfig.LOG_FORMAT)
    logging.getLogger("symquiv").setLevel(level)
