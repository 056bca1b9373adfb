name = "symquiv"

from .catalog import GeneratorDescriptor, check_op_spp, corrupted_descriptor, evaluate_generator, list_generators, transport, weights_table
from .config import Direction, Flavor, GeneratorKind, MiddleTerm, Region, SymQuivConfig, TameKind
from .decomposition import decompose, generic_decompose, orthogonal_generic, regular_decompose, symplectic_generic
from .errors import SymQuivError
from .quiver_core import DimensionVector, Quiver, SymmetricQuiver, Weight, build_canonical, classify
from .reflections import coxeter_dim, reduce_to_canonical, tube_data
from .representations import Representation, TubeCoord
