class Config:
    # Input validation
    HERMITIAN_TOL = 1e-12
    TRACE_TOL = 1e-12
    PSD_FLOOR = 1e-10
    BASIS_TOL = 1e-10

    # Spectral thresholds
    EIGEN_ZERO_TOL = 1e-10  # |lambda| below this counts as zero
    VIOLATION_TOL = 1e-10

    # Measurement-basis optimizer
    OPTIMIZER_STARTS = 20
    OPTIMIZER_MAX_SWEEPS = 500
    OPTIMIZER_TOL = 1e-10

    # The trace-norm search needs a full eigendecomposition per step
    TRACE_NORM_OPTIMIZER_STARTS = 4
    TRACE_NORM_OPTIMIZER_MAX_DIM = 16

    # Scans
    DEFAULT_SEED = 0
    SCAN_WORKERS = 1

    # Output
    DEFAULT_FORMAT = 'text'

    @classmethod
    def init_app(cls, args):
        """Apply the global command-line flags"""
        if getattr(args, 'seed', None) is not None:
            cls.DEFAULT_SEED = args.seed
        if getattr(args, 'tolerance', None) is not None:
            cls.EIGEN_ZERO_TOL = args.tolerance
        if getattr(args, 'workers', None) is not None:
            cls.SCAN_WORKERS = max(1, args.workers)
        if getattr(args, 'format', None) is not None:
            cls.DEFAULT_FORMAT = args.format
