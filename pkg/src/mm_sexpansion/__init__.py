"""S-expansions of Lie algebras by finite abelian semigroups."""

from .catalog import Catalog as Catalog
from .catalog import CatalogMatch as CatalogMatch
from .catalog import Equivalence as Equivalence
from .catalog import enumerate_catalog as enumerate_catalog
from .catalog import filter_commutative as filter_commutative
from .catalog import lookup as lookup
from .cayley import CayleyTable as CayleyTable
from .cayley import MetricMatrix as MetricMatrix
from .cayley import Selector as Selector
from .cayley import find_zero as find_zero
from .cayley import get_selector as get_selector
from .cayley import is_associative as is_associative
from .cayley import is_commutative as is_commutative
from .cayley import semigroup_metric as semigroup_metric
from .errors import SExpansionError as SExpansionError
from .expansion import ExpandedAlgebra as ExpandedAlgebra
from .expansion import Mode as Mode
from .expansion import expand as expand
from .expansion import kc_metric as kc_metric
from .expansion import resonant_subalgebra as resonant_subalgebra
from .expansion import zero_reduce as zero_reduce
from .isomorphism import Permutation as Permutation
from .isomorphism import canonical_form as canonical_form
from .isomorphism import find_anti_isomorphism as find_anti_isomorphism
from .isomorphism import find_isomorphism as find_isomorphism
from .liealg import EigenSignature as EigenSignature
from .liealg import StructureConstants as StructureConstants
from .liealg import SubspaceDecomposition as SubspaceDecomposition
from .liealg import determinant as determinant
from .liealg import eigen_signature as eigen_signature
from .liealg import killing_metric as killing_metric
from .resonance import ResonantPair as ResonantPair
from .resonance import Subset as Subset
from .resonance import find_all_resonances as find_all_resonances
from .resonance import find_resonances as find_resonances
from .resonance import is_resonant as is_resonant
from .survey import SurveyReport as SurveyReport
from .survey import census as census
