from .experiment import (ConcentrationReport, ExperimentConfig, SampleRecord, derive_seed, emit_plot_data,
                         run_concentration, write_report)
from .verify import VerifyReport, run_verify

__all__ = [
    "ConcentrationReport", "ExperimentConfig", "SampleRecord", "VerifyReport", "derive_seed",
    "emit_plot_data", "run_concentration", "run_verify", "write_report",
]
