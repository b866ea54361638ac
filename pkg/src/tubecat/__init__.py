"""tubecat: fusion-category diagram engine, tube algebras, center extraction."""

from .catalog import available, find
from .catspec import FusionCategorySpec, load_spec, serialize
from .center import (BlockDecomposition, CenterSimple, center_report,
                     compute_twists, decompose_blocks, extract_center_simples)
from .errors import (ConsistencyError, DegenerateSpectrum, EmptySpace,
                     NotInCommutant, SchemaError, ShapeError, ToleranceError,
                     TubecatError)
from .morphism import Engine, Morphism, engine_for
from .relations import SUITES, run_suite
from .ring import FusionRing, QuantumDimensions, compute_fp_dims
from .tube import (DeltaObject, LambdaObject, TubeAlgebra, TubeElement,
                   build_delta, build_tube_algebra, f_map, t_map,
                   tube_product, tube_star)

__version__ = "0.1.0"
