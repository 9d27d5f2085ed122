"""qmoments: exact-arithmetic moments of discrete q-Hermite and
q-Laguerre orthogonal polynomial ensembles, computed by independent
routes and cross-verified, with q -> 1 degeneration to the classical
GUE/LUE results."""

from .qarith import (Rational, format_rational, parse_rational,
                     pochhammer_classical, q_double_factorial_odd,
                     q_factorial, q_integer, q_pochhammer,
                     q_pochhammer_bilateral, q_pochhammer_qpow)
from .qcalc import (ApproxValue, TruncationPolicy, default_policy,
                    infinite_qpoch, jackson_integral_0a,
                    jackson_integral_improper, jackson_integral_symmetric,
                    q_derivative)
from .hyper import (HyperSeries, classical_F, eval_F, eval_phi,
                    heine_transform_residual, jackson_transform_residual,
                    phi_terminating, phi_truncated)
from .partitions import (CellStat, Partition, b_stat, hook_character,
                         hook_partition, hooks, principal_spec_finite,
                         principal_spec_infinite, schur_expectation_classical,
                         schur_expectation_qlag)
from .ensembles import (GaussianQMeasure, LaguerreQMeasure, big_q_jacobi,
                        classical_poly, measure_mass, monic_q_hermite,
                        onepoint_moment_oracle, orthonormality_sum, q_hahn,
                        q_hermite_sq, q_laguerre_sq)
from .qhermite import (m_qh_genfunc_coeffs, m_qh_hyper, m_qh_randomized,
                       m_qh_randomized_qhahn, m_qh_residue,
                       qhahn_recurrence_residual, saalschutz_residual)
from .qlaguerre import (bigqjacobi_recurrence_residual, m_ql_hooksum,
                        m_ql_hyper, m_ql_randomized_bigqjacobi,
                        m_ql_randomized_hyper, m_ql_schur,
                        randomized_series_residual)
from .classical import (gue_moment, gue_randomized_residual,
                        hahn_representation_residuals, ht_recurrence_residual,
                        hz_genfunc_residual, hz_recurrence_residual,
                        lue_moment, lue_moment_schur, lue_randomized_residual)

__version__ = "0.1.0"
