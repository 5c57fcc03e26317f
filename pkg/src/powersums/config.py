class Config:
    INITIAL_PRECISION_BITS = 256
    PRECISION_CAP_BITS = 16384
    BOUND_PRECISION_BITS = 192  # transcendental constants in the bound chain
    SIGNIFICANT_DIGITS = 4  # outward rounding of every ledger constant
    CONVERGENT_RETRIES = 25  # successive convergents tried once q > 6M
    CF_MAX_TERMS = 4000
    CF_REPORT_TERMS = 20
    DEFAULT_BRUTE_LIMIT = 100
    MIN_BOUND_FLOOR = 10  # smallest n1 floor fed to the analytic bound
    MAX_T = 5
    BRUTE_GUARD_T = 3
    BRUTE_GUARD_N = 500
    U_MIN_SCAN_LIMIT = 10000  # terms scanned when certifying min u_n
    SHIFT_POWER_RANGE = 3  # |j| tried when matching a stage value to alpha^k p^j
    GAMMA_CACHE_SIZE = 64  # (spec, p, bits) entries kept for gamma and its expansion
    REPORT_DIGITS = 30  # decimal digits written for certified reals
    LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
