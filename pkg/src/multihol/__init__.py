"""Special p-groups G_pi of class two and their multiple holomorphs."""

from .autc import check_no_equivariant_hom, enumerate_autc, generator_catalog, is_autc
from .errors import MultiHolError
from .forms import (BilinearForm, FormSpace, delta_lambda, delta_sigma, delta_star, solve_S,
                    solve_Sprime, split)
from .fp import FpMatrix, FpScalar, det, fp_inv, inverse, nullspace
from .holo import (ResPair, TGReport, admissible_taus, commutant, coset_equal, criterion_solve,
                   res_sprime_group, sprime_compose, t_g_report)
from .pigroup import GElement, PiSpec, catalog, g_comm, g_inv, g_mul, g_pow, verify_presentation
from .wedge import induced_hat, wedge

__version__ = "0.1.0"
