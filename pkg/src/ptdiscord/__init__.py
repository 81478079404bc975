"""Discord and entanglement diagnostics from partial transposition."""

__version__ = "0.1.0"

from .bounds import (DiscordBounds, EntanglementBounds, discord_bounds,
                     entanglement_bounds, l_ppt, l_ppt_prime, l_sipt)
from .criteria import CriterionVerdict, Verdict, ppt_test, sipt_moment_test, sipt_test
from .qmat import (BipartiteDims, DensityMatrix, HermitianMatrix, Measurement,
                   partial_transpose, pinch, spectrum, validate_density)
from .spectra import NegativityStats, SimplexProjection, Spectrum, negativity_stats, simplex_project
from .tolerances import Tolerances, default_tolerances
