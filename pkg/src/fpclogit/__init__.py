"""Functional principal component logit regression.

Smooths discretely observed curves into basis-coefficient form, extracts
ordinary or filtered functional principal components, fits a binary logit
model on selected components plus scalar covariates, and reconstructs the
functional coefficient curves with classification diagnostics.
"""

from .basis import (
    BasisSystem,
    GramMatrix,
    basis_from_dict,
    basis_to_dict,
    create_bspline,
    create_fourier,
    eval_basis,
    gram_matrix,
)
from .fdata import FunctionalDataSet, center_fd, eval_fd, mean_fd, smooth_data
from .fit import (
    FPCLogitFit,
    assemble_design,
    fit_fpc,
    fit_fpc_step,
    fit_pc,
    fit_pc_step,
    reconstruct_beta,
    reconstruct_intercept,
)
from .fpca import (
    FPCAResult,
    VarianceTable,
    fpca_filtered,
    fpca_ordinary,
    variance_table,
)
from .linalg import (
    QuadratureRule,
    SymEigen,
    gauss_legendre,
    lstsq,
    matrix_inv_sqrt_sym,
    matrix_sqrt_sym,
    sym_eigen,
)
from .logit import (
    DesignMatrix,
    LogitFit,
    LogitSummary,
    fit_logit,
    logit_summary,
    predict_logit,
)
from .metrics import RocCurve, confusion_ccr, roc_curve
from .stepwise import StepRecord, StepTrace, stepwise_select

__version__ = "0.1.0"

__all__ = [
    "BasisSystem",
    "DesignMatrix",
    "FPCAResult",
    "FPCLogitFit",
    "FunctionalDataSet",
    "GramMatrix",
    "LogitFit",
    "LogitSummary",
    "QuadratureRule",
    "RocCurve",
    "StepRecord",
    "StepTrace",
    "SymEigen",
    "VarianceTable",
    "assemble_design",
    "basis_from_dict",
    "basis_to_dict",
    "center_fd",
    "confusion_ccr",
    "create_bspline",
    "create_fourier",
    "eval_basis",
    "eval_fd",
    "fit_fpc",
    "fit_fpc_step",
    "fit_logit",
    "fit_pc",
    "fit_pc_step",
    "fpca_filtered",
    "fpca_ordinary",
    "gauss_legendre",
    "gram_matrix",
    "logit_summary",
    "lstsq",
    "matrix_inv_sqrt_sym",
    "matrix_sqrt_sym",
    "mean_fd",
    "predict_logit",
    "reconstruct_beta",
    "reconstruct_intercept",
    "roc_curve",
    "smooth_data",
    "stepwise_select",
    "sym_eigen",
    "variance_table",
]
